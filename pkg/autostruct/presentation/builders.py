"""
Automatic presentations of the standard structures: ⟨ω,≤⟩, Presburger arithmetic in base p (with or
without p-divisibility), the p-ary tree, the integer grid, the triangular-number order and the
equivalence structures with infinite classes.
"""
import logging
import typing

from autostruct.automata import regex
from autostruct.automata.alphabet import Alphabet, Word
from autostruct.automata.automaton import Automaton
from autostruct.common.constants import PAD
from autostruct.common.exceptions import ArityMismatch, InvalidBase
from autostruct.common.log import log
from autostruct.presentation.presentation import Presentation
from autostruct.relations.builtins import from_rule, prefix_order, lex_order, append_symbol, equal_length
from autostruct.relations.padded import padded
from autostruct.relations.relation import RegularRelation, from_language, to_language
from autostruct.relations.transducer import AsyncTransducer

LE = "le"
PLUS = "plus"
DIVP = "divp"
PREFIX = "pf"
EQLEN = "eqlen"
LEX = "lex"
EQUIV = "~"
GRID_STEPS = ("E0", "E1")
LEFT_MARKER, RIGHT_MARKER = "<", ">"


def _restricted(domain: Automaton, relations: typing.Mapping[str, RegularRelation]) -> Presentation:
    """Presentation whose relations are cut down to the domain."""
    bare = Presentation(domain.alphabet, domain)
    cut = {name: r.intersection(bare.domain_power(r.arity)) for name, r in relations.items()}
    return Presentation(domain.alphabet, domain, cut)


def omega_le() -> Presentation:
    """⟨ω,≤⟩ with n coded as 0^n; ≤ is the prefix order on 0*."""
    base = Alphabet(["0"])
    return Presentation(base, regex.parse(base, "0*"), {LE: prefix_order(base)})


def _check_base(p: int):
    if type(p) is not int or p < 2:
        raise InvalidBase(f"base must be an integer >= 2, got {p!r}")


def digits_alphabet(p: int) -> Alphabet:
    _check_base(p)
    return Alphabet([str(i) for i in range(p)])


def encode_number(n: int, p: int = 2) -> Word:
    """Least significant digit first, no trailing zeros; 0 is the empty word."""
    _check_base(p)
    if n < 0:
        raise ValueError("only natural numbers have a base-p code")
    word = []
    while n:
        n, digit = divmod(n, p)
        word.append(str(digit))
    return tuple(word)


def decode_number(word, p: int = 2) -> int:
    tokens = digits_alphabet(p).as_word(word)
    return sum(int(t) * p ** i for i, t in enumerate(tokens))


def _digit(token) -> int:
    return 0 if token == PAD else int(token)


def _canonical_numbers(base: Alphabet) -> Automaton:
    nonzero = [t for t in base if t != "0"]
    return regex.union(regex.epsilon(base),
                       regex.concat(regex.star(regex.any_symbol(base)), regex.symbols(base, nonzero)))


def _addition(base: Alphabet, p: int) -> RegularRelation:
    """x + y = z with a carry state; □ reads as digit 0."""

    def rule(carry, c):
        total = _digit(c[0]) + _digit(c[1]) + carry
        if total % p != _digit(c[2]):
            return None
        return total // p

    return from_rule(base, 3, 2, [0], rule)


def linear_relation(p: int, coefficients: typing.Sequence[int], shift: int = 0) -> RegularRelation:
    """
    Base-p relation on (x, y₁, …, y_m) holding when Σ aⱼ·yⱼ = x + shift. The state is the signed carry,
    started at −shift; every column must leave a multiple of p.
    """
    base = digits_alphabet(p)
    if any(type(a) is not int or a < 0 for a in coefficients):
        raise ValueError("coefficients are natural numbers")
    bound = max(abs(shift), sum(coefficients)) + 1
    carries = [-shift] + [c for c in range(-bound, bound + 1) if c != -shift]
    state = {c: i for i, c in enumerate(carries)}

    def rule(s, column):
        total = carries[s] + sum(a * _digit(d) for a, d in zip(coefficients, column[1:])) - _digit(column[0])
        if total % p:
            return None
        return state[total // p]

    return from_rule(base, len(coefficients) + 1, len(carries), [state[0]], rule)


def presburger(p: int = 2) -> Presentation:
    """⟨ℕ,+⟩ in base p, with the ternary relation plus(x, y, z) meaning x + y = z."""
    base = digits_alphabet(p)
    log(logging.DEBUG, f"building base-{p} Presburger presentation")
    return _restricted(_canonical_numbers(base), {PLUS: _addition(base, p)})


def _power_divides(base: Alphabet) -> RegularRelation:
    """x |_p y: x is a power of p that divides y."""

    def rule(state, c):
        x, y = c
        if state == 0 and x == "0" and y in ("0", PAD):
            return 0
        if state == 0 and x == "1":
            return 1
        if state == 1 and x == PAD:
            return 1
        return None

    return from_rule(base, 2, 2, [1], rule)


def presburger_div(p: int = 2) -> Presentation:
    """⟨ℕ,+,|_p⟩."""
    base = digits_alphabet(p)
    return _restricted(_canonical_numbers(base), {PLUS: _addition(base, p), DIVP: _power_divides(base)})


def successor_name(k: int) -> str:
    return f"suc{k}"


def pary_tree(p: int = 2) -> Presentation:
    """The p-ary tree on {0..p-1}* with prefix order, the p successor maps and equal length."""
    base = digits_alphabet(p)
    relations = {PREFIX: prefix_order(base), EQLEN: equal_length(base)}
    for k in range(p):
        relations[successor_name(k)] = append_symbol(base, str(k))
    return Presentation(base, regex.star(regex.any_symbol(base)), relations)


GRID_BASE = Alphabet(["+", "-", "a", "b"])


def _signed_block(letter: str) -> Automaton:
    base = GRID_BASE
    block = regex.symbols(base, [letter])
    return regex.union(regex.concat(regex.literal(base, "+"), regex.star(block)),
                       regex.concat(regex.literal(base, "-"), regex.plus(block)))


def encode_grid(i: int, k: int) -> Word:
    """(i, k) ∈ ℤ² as sign a^|i| sign b^|k|, zero carrying the + sign."""
    return (("+" if i >= 0 else "-"),) + ("a",) * abs(i) + (("+" if k >= 0 else "-"),) + ("b",) * abs(k)



def _increment(letter: str, start: int, after: int, up: int, down: int, drop: int, shrink: int) -> typing.List:
    """Moves adding 1 to a signed block of `letter` read from `start`; every branch continues in `after`."""
    return [
        (start, "+", "+", up), (up, letter, letter, up), (up, "", letter, after),
        (start, "-", "-", down), (down, letter, "", drop), (drop, letter, letter, shrink),
        (shrink, letter, letter, shrink), (shrink, "", "", after),
        (start, "-" + letter, "+", after),
    ]


def grid_step(track: int) -> RegularRelation:
    """E₀ adds 1 to the first coordinate of a grid point, E₁ to the second."""
    if track == 0:
        moves = _increment("a", 0, 5, 1, 2, 3, 4)
        moves += [(5, "+", "+", 6), (5, "-", "-", 6), (6, "b", "b", 6)]
    elif track == 1:
        moves = [(0, "+", "+", 1), (0, "-", "-", 1), (1, "a", "a", 1)]
        moves += _increment("b", 1, 6, 2, 3, 4, 5)
    else:
        raise ValueError("the grid has two coordinates")
    return AsyncTransducer(GRID_BASE, 7, 0, [6], moves).to_relation(max_lag=1)


def grid_example() -> Presentation:
    """⟨ℤ², E₀, E₁⟩ on (+a* | -a⁺)(+b* | -b⁺)."""
    domain = regex.concat(_signed_block("a"), _signed_block("b"))
    return _restricted(domain, {name: grid_step(i) for i, name in enumerate(GRID_STEPS)})


def triangular_example() -> Presentation:
    """⟨a*b*, ≤_lex, a*⟩: the lexicographic order on a*b* with the unary predicate a*."""
    base = Alphabet(["a", "b"])
    domain = regex.parse(base, "a*b*")
    return _restricted(domain, {LEX: lex_order(base), "A": from_language(regex.parse(base, "a*"))})


def one_infinite_class() -> Presentation:
    """⟨0*, 0* × 0*⟩: a single infinite equivalence class."""
    base = Alphabet(["0"])
    domain = regex.parse(base, "0*")
    bare = Presentation(base, domain)
    return bare.with_relations({EQUIV: bare.domain_power(2)})


def omega_infinite_classes() -> Presentation:
    """⟨0*1*, {(0ⁿ1ᵏ, 0ⁿ1ˡ)}⟩: infinitely many classes, all infinite."""
    base = Alphabet(["0", "1"])

    def rule(state, c):
        if state == 0 and c == ("0", "0"):
            return 0
        if all(t in ("1", PAD) for t in c):
            return 1
        return None

    return _restricted(regex.parse(base, "0*1*"), {EQUIV: from_rule(base, 2, 2, [0, 1], rule)})


def _marked(r: RegularRelation, base: Alphabet, marker) -> RegularRelation:
    """{(marker·u₁, ..., marker·uₙ) : ū ∈ r} over the larger base."""
    source, target = r.padded, padded(base, r.arity)
    renamed = [target.pad_digit if d == source.pad_digit else base.index(r.base[d]) for d in range(source.radix)]
    mapping = [target.encode([renamed[d] for d in source.digits(sym)]) for sym in range(len(source))]
    a = r.acceptor
    start = a.state_count
    marker_column = target.encode([base.index(marker)] * r.arity)
    transitions = [(p, mapping[s], q) for p, s, q in a.transitions]
    transitions += [(start, marker_column, q) for q in a.initial]
    acceptor = Automaton(target.alphabet, a.state_count + 1, [start], a.accepting, transitions)
    return RegularRelation(r.arity, base, acceptor).minimized()


def disjoint_union(p: Presentation, q: Presentation) -> Presentation:
    """
    Elements of p get the prefix '<', elements of q the prefix '>'. A relation named in only one
    summand stays empty on the other.
    """
    for marker in (LEFT_MARKER, RIGHT_MARKER):
        if marker in p.base or marker in q.base:
            raise ValueError(f"'{marker}' marks the summands and cannot be a base token")
    tokens = list(p.base) + [t for t in q.base if t not in p.base] + [LEFT_MARKER, RIGHT_MARKER]
    base = Alphabet(tokens)
    left = _marked(from_language(p.domain), base, LEFT_MARKER)
    right = _marked(from_language(q.domain), base, RIGHT_MARKER)
    domain = regex.union(to_language(left), to_language(right))
    relations = {}
    for name in sorted(set(p.relation_names()) | set(q.relation_names())):
        parts = [_marked(s.relation(name), base, marker) for s, marker in ((p, LEFT_MARKER), (q, RIGHT_MARKER))
                 if name in s.relations]
        if len(parts) == 2 and parts[0].arity != parts[1].arity:
            raise ArityMismatch(f"relation {name} has different arities in the summands")
        relations[name] = parts[0] if len(parts) == 1 else parts[0].union(parts[1])
    return Presentation(base, domain, relations)
