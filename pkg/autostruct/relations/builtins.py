"""
Standard synchronous relations over an arbitrary base alphabet: equality, the length-lexicographic
and lexicographic orders, equal length, prefix order and appending a letter.
"""
import typing

from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import Automaton, intersect
from autostruct.common.constants import PAD
from autostruct.relations.padded import padded
from autostruct.relations.relation import RegularRelation, validity_automaton

# state -> column of tokens (PAD for □) -> next state, or None to reject
ColumnRule = typing.Callable[[int, typing.Tuple], typing.Optional[int]]

EQ, LT, GT, SHORT = range(4)


def from_rule(base: Alphabet, arity: int, state_count: int, accepting: typing.Iterable[int],
              rule: ColumnRule) -> RegularRelation:
    """Deterministic relation from a column rule, started in state 0 and restricted to valid convolutions."""
    pa = padded(base, arity)
    transitions = []
    for p in range(state_count):
        for sym, column in enumerate(pa.alphabet):
            q = rule(p, column)
            if q is not None:
                transitions.append((p, sym, q))
    a = Automaton(pa.alphabet, state_count, [0], accepting, transitions, deterministic=True)
    return RegularRelation(arity, base, intersect(a, validity_automaton(base, arity))).minimized()


def equality(base: Alphabet) -> RegularRelation:
    return from_rule(base, 2, 1, [0], lambda p, c: 0 if c[0] == c[1] else None)


def equal_length(base: Alphabet) -> RegularRelation:
    return from_rule(base, 2, 1, [0], lambda p, c: 0 if PAD not in c else None)


def prefix_order(base: Alphabet) -> RegularRelation:
    """u ≤_pf v: u is a prefix of v."""

    def rule(p, c):
        u, v = c
        if p == 0 and u == v:
            return 0
        if u == PAD:
            return 1
        return None

    return from_rule(base, 2, 2, [0, 1], rule)


def llex_order(base: Alphabet, strict: bool = False) -> RegularRelation:
    """u ≤_llex v (or < when strict): shorter words first, equal lengths by symbol order."""

    def rule(p, c):
        u, v = c
        if p == SHORT or u == PAD:
            return SHORT if u == PAD and v != PAD else None
        if v == PAD:
            return None
        if p != EQ:
            return p
        iu, iv = base.index(u), base.index(v)
        return EQ if iu == iv else (LT if iu < iv else GT)

    return from_rule(base, 2, 4, [LT, SHORT] if strict else [EQ, LT, SHORT], rule)


def lex_order(base: Alphabet, strict: bool = False) -> RegularRelation:
    """Lexicographic order in which a proper prefix precedes its extensions."""

    def rule(p, c):
        if p != EQ:
            return p
        u, v = c
        if u == PAD:
            return LT
        if v == PAD:
            return GT
        iu, iv = base.index(u), base.index(v)
        return EQ if iu == iv else (LT if iu < iv else GT)

    return from_rule(base, 2, 3, [LT] if strict else [EQ, LT], rule)


def append_symbol(base: Alphabet, token) -> RegularRelation:
    """{(u, u·token)}."""

    def rule(p, c):
        u, v = c
        if p == 0 and u == v:
            return 0
        if p == 0 and u == PAD and v == token:
            return 1
        return None

    return from_rule(base, 2, 2, [1], rule)
