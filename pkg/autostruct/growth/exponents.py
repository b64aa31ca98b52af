import typing

from autostruct.automata.automaton import Automaton, determinize, minimize
from autostruct.growth.pattern import BoundedPattern
from autostruct.semilinear.semilinear import LinearSet, SemilinearSet


def _run(d: Automaton, q: int, ids: typing.Sequence[int]) -> int:
    for a in ids:
        q = d.step(q, a)
    return q


def _orbit(d: Automaton, q: int, loop: typing.Sequence[int]) -> typing.List[typing.Tuple[int, int, int]]:
    """
    States reached from q by powers of the loop word, as (state, first exponent, period): the orbit
    q, f(q), f²(q), … is a tail followed by a cycle; states on the tail are reached once (period 0).
    """
    first = {}
    sequence = []
    while q not in first:
        first[q] = len(sequence)
        sequence.append(q)
        q = _run(d, q, loop)
    tail, period = first[q], len(sequence) - first[q]
    return [(p, i, period if i >= tail else 0) for i, p in enumerate(sequence)]


def pattern_exponents(a: Automaton, pattern: BoundedPattern) -> SemilinearSet:
    """
    {(i₀,…,i_{k-1}) : u₀v₀^{i₀}…u_k ∈ L(a)}. Every path of boundary states through the complete
    minimal DFA contributes one linear set whose coordinates are fixed or run through a residue class,
    so the pieces are disjoint and simple.
    """
    d = minimize(determinize(a))
    alphabet = d.alphabet
    prefixes = [alphabet.ids(u) for u in pattern.prefixes]
    loops = [alphabet.ids(v) for v in pattern.loops]
    k = pattern.loop_count
    pieces = []

    def extend(q: int, j: int, offset: typing.List[int], periods: typing.List[typing.Tuple[int, ...]]):
        q = _run(d, q, prefixes[j])
        if j == k:
            if q in d.accepting:
                pieces.append(LinearSet(offset, periods))
            return
        for p, first, period in _orbit(d, q, loops[j]):
            unit = tuple(period if i == j else 0 for i in range(k))
            extend(p, j + 1, offset[:j] + [first] + offset[j + 1:], periods + ([unit] if period else []))

    extend(next(iter(d.initial)), 0, [0] * k, [])
    return SemilinearSet(k, pieces, disjoint_simple=True)
