"""
Formula helpers for constants and linear terms. Constants are not part of the formula language, so
they are defined from the signature: over ⟨ℕ,+⟩ from plus, over ⟨ω,≤⟩ from le.
"""
import typing

from autostruct.presentation.formula import *

PLUS = "plus"
LE = "le"


def zero(v: str, plus: str = PLUS) -> Formula:
    """v = 0, as v + v = v."""
    return Atom(plus, [v, v, v])


def one(v: str, plus: str = PLUS) -> Formula:
    """v = 1: v ≠ 0 and v is not a sum of two non-zero numbers."""
    return conj(Not(zero(v, plus)),
                forall(["_a", "_b"], implies(Atom(plus, ["_a", "_b", v]), disj(zero("_a", plus), zero("_b", plus)))))


def successor(u: str, v: str, plus: str = PLUS) -> Formula:
    return exists("_w", conj(one("_w", plus), Atom(plus, [u, "_w", v])))


def numeral(v: str, n: int, plus: str = PLUS) -> Formula:
    """v = n, built by binary doubling so the formula has O(log n) quantifiers."""
    if n < 0:
        raise ValueError("numerals are natural numbers")
    if n == 0:
        return zero(v, plus)
    if n == 1:
        return one(v, plus)
    u = f"_n{n // 2 if n % 2 == 0 else n - 1}"
    if n % 2 == 0:
        return exists(u, conj(numeral(u, n // 2, plus), Atom(plus, [u, u, v])))
    return exists(u, conj(numeral(u, n - 1, plus), successor(u, v, plus)))


def multiple(x: str, c: int, out: str, fresh: Fresh, plus: str = PLUS) -> Formula:
    """out = c·x."""
    if c < 0:
        raise ValueError("coefficients are natural numbers")
    if c == 0:
        return zero(out, plus)
    if c == 1:
        return Equal(out, x)
    u = fresh()
    if c % 2 == 0:
        return exists(u, conj(multiple(x, c // 2, u, fresh, plus), Atom(plus, [u, u, out])))
    return exists(u, conj(multiple(x, c - 1, u, fresh, plus), Atom(plus, [u, x, out])))


Summand = typing.Union[int, typing.Tuple[int, str]]


def linear_equals(target: str, summands: typing.Sequence[Summand], fresh: Fresh = None, plus: str = PLUS) -> Formula:
    """
    target = Σ summands, where a summand is a constant n or a pair (c, x) standing for c·x.
    Partial sums are nested, so each subformula has at most a few tracks beyond the summed variables.
    """
    fresh = fresh or Fresh("_t")
    if not summands:
        return zero(target, plus)
    first = summands[0]
    if len(summands) == 1:
        if isinstance(first, int):
            return numeral(target, first, plus)
        return multiple(first[1], first[0], target, fresh, plus)
    a, b = fresh(), fresh()
    return exists([a, b], conj(linear_equals(a, [first], fresh, plus),
                               linear_equals(b, summands[1:], fresh, plus),
                               Atom(plus, [a, b, target])))


def sum_equals(x: str, y: str, z: str, plus: str = PLUS) -> Formula:
    return Atom(plus, [x, y, z])


# ⟨ω,≤⟩

def least(v: str, le: str = LE) -> Formula:
    return forall("_z", Atom(le, [v, "_z"]))


def strictly_below(x: str, y: str, le: str = LE) -> Formula:
    return conj(Atom(le, [x, y]), Not(Equal(x, y)))


def order_successor(x: str, y: str, le: str = LE) -> Formula:
    """y is the immediate successor of x."""
    between = conj(Atom(le, [x, "_m"]), Atom(le, ["_m", y]))
    return conj(strictly_below(x, y, le), forall("_m", implies(between, disj(Equal("_m", x), Equal("_m", y)))))


def equals_constant(v: str, n: int, le: str = LE) -> Formula:
    """v is the n-th element of the order."""
    if n < 0:
        raise ValueError("constants are natural numbers")
    if n == 0:
        return least(v, le)
    u = f"_c{n - 1}"
    return exists(u, conj(equals_constant(u, n - 1, le), order_successor(u, v, le)))


def at_least_constant(v: str, n: int, le: str = LE) -> Formula:
    return exists("_g", conj(equals_constant("_g", n, le), Atom(le, ["_g", v])))
