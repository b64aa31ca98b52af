import functools
import itertools
import logging
import typing

import sympy

from autostruct.common.constants import ARITY, MONOMIALS, COEFF, EXPONENTS
from autostruct.common.exceptions import PositivityFailure, SerializationError
from autostruct.common.log import log
from autostruct.common.settings import settings

Exponents = typing.Tuple[int, ...]


def default_symbols(n: int) -> typing.List[sympy.Symbol]:
    return [sympy.Symbol(f"x{i}") for i in range(n)]


class Polynomial:
    """Σ coeff·x̄^exps over ℕ^arity with integer coefficients. Arity 0 is a constant."""

    def __init__(self, arity: int, monomials: typing.Union[typing.Mapping[Exponents, int],
                                                           typing.Iterable[typing.Tuple[Exponents, int]]] = ()):
        if type(arity) is not int or arity < 0:
            raise ValueError("arity must be a natural number")
        items = monomials.items() if isinstance(monomials, dict) else monomials
        collected = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != arity or any(type(e) is not int or e < 0 for e in exps):
                raise ValueError(f"exponents {list(exps)} do not fit arity {arity}")
            if type(coeff) is not int:
                raise ValueError(f"coefficient {coeff!r} is not an integer")
            collected[exps] = collected.get(exps, 0) + coeff
        self._arity = arity
        self._monomials = {e: c for e, c in sorted(collected.items()) if c}

    @staticmethod
    def constant(arity: int, value: int) -> "Polynomial":
        return Polynomial(arity, {(0,) * arity: value})

    @staticmethod
    def from_sympy(expr, symbols: typing.Sequence[sympy.Symbol] = None, arity: int = None) -> "Polynomial":
        symbols = list(default_symbols(arity) if symbols is None else symbols)
        expr = sympy.expand(expr)
        if not symbols:
            if not expr.is_integer:
                raise ValueError(f"{expr} is not an integer constant")
            return Polynomial.constant(0, int(expr))
        monomials = {}
        for exps, coeff in sympy.Poly(expr, *symbols).terms():
            if not coeff.is_integer:
                raise ValueError(f"{expr} has the non-integer coefficient {coeff}")
            monomials[tuple(int(e) for e in exps)] = int(coeff)
        return Polynomial(len(symbols), monomials)

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def monomials(self) -> typing.Dict[Exponents, int]:
        return dict(self._monomials)

    def is_zero(self) -> bool:
        return not self._monomials

    def is_natural(self) -> bool:
        return all(c > 0 for c in self._monomials.values())

    def max_exponents(self) -> typing.List[int]:
        return [max((e[i] for e in self._monomials), default=0) for i in range(self._arity)]

    def used_variables(self, restrict: typing.Iterable[int] = None) -> typing.Set[int]:
        """Variables with a positive exponent, among monomials supported inside `restrict` if given."""
        allowed = None if restrict is None else set(restrict)
        used = set()
        for exps in self._monomials:
            support = {i for i, e in enumerate(exps) if e}
            if allowed is None or support <= allowed:
                used |= support
        return used

    def evaluate(self, x: typing.Sequence[int]) -> int:
        if len(x) != self._arity:
            raise ValueError(f"polynomial of arity {self._arity} evaluated at {len(x)} values")
        total = 0
        for exps, coeff in self._monomials.items():
            term = coeff
            for v, e in zip(x, exps):
                term *= v ** e
            total += term
        return total

    def __call__(self, x: typing.Sequence[int]) -> int:
        return self.evaluate(x)

    def to_sympy(self, symbols: typing.Sequence[sympy.Symbol] = None) -> sympy.Expr:
        symbols = list(symbols or default_symbols(self._arity))
        return sum((c * sympy.Mul(*[s ** e for s, e in zip(symbols, exps)]) for exps, c in self._monomials.items()),
                   sympy.Integer(0))

    def __eq__(self, other):
        return isinstance(other, Polynomial) and (self._arity, self._monomials) == (other._arity, other._monomials)

    def __hash__(self):
        return hash((self._arity, tuple(self._monomials.items())))

    def __str__(self):
        return str(self.to_sympy())

    def __repr__(self):
        return f"Polynomial(arity={self._arity}, {self})"

    def to_json(self) -> dict:
        return {ARITY: self._arity,
                MONOMIALS: [{COEFF: c, EXPONENTS: list(e)} for e, c in self._monomials.items()]}

    @staticmethod
    def from_json(data: dict) -> "Polynomial":
        try:
            return Polynomial(data[ARITY], [(m[EXPONENTS], m[COEFF]) for m in data[MONOMIALS]])
        except (KeyError, TypeError) as e:
            raise SerializationError(f"malformed polynomial JSON: {e}")


def _natural_poly(poly: sympy.Poly) -> bool:
    return all(c.is_integer and c >= 0 for c in poly.coeffs())


def _finish(expr, symbols) -> typing.List[Polynomial]:
    p = Polynomial.from_sympy(expr, symbols)
    return [] if p.is_zero() else [p]


def natural_parts(expr, symbols: typing.Sequence[sympy.Symbol]) -> typing.List[Polynomial]:
    """
    Split ℕ^k into finitely many regions, each reindexed bijectively by ℕ^j, so that an integer-valued
    polynomial becomes a polynomial with natural coefficients on every region. Non-integer coefficients
    are cleared by the residue split x ↦ μx + r over all residues r; negative ones by the regions
    {x_i = e_i for i ∈ S, x_i = c + u_i otherwise} with e_i < c. The multiset of values is preserved.
    """
    symbols = list(symbols)
    expr = sympy.expand(expr)
    if not symbols:
        if not expr.is_integer or expr < 0:
            raise PositivityFailure(f"{expr} is not a natural number")
        return _finish(expr, symbols)
    poly = sympy.Poly(expr, *symbols)
    if _natural_poly(poly):
        return _finish(expr, symbols)
    mu = functools.reduce(sympy.ilcm, [sympy.Rational(c).q for c in poly.coeffs()], 1)
    if mu > 1:
        log(logging.DEBUG, f"residue split of {expr} modulo {mu}")
        parts = []
        for residues in itertools.product(range(mu), repeat=len(symbols)):
            split = {x: mu * x + r for x, r in zip(symbols, residues)}
            parts.extend(natural_parts(expr.subs(split, simultaneous=True), symbols))
        return parts
    for c in range(1, settings.positivity_max_shift + 1):
        shifted = sympy.expand(expr.subs({x: x + c for x in symbols}, simultaneous=True))
        if not _natural_poly(sympy.Poly(shifted, *symbols)):
            continue
        log(logging.DEBUG, f"{expr} has natural coefficients beyond the shift {c}")
        parts = _finish(shifted, symbols)
        for size in range(1, len(symbols) + 1):
            for fixed in itertools.combinations(range(len(symbols)), size):
                rest = [x for i, x in enumerate(symbols) if i not in fixed]
                for values in itertools.product(range(c), repeat=size):
                    region = {x: x + c for x in rest}
                    region.update({symbols[i]: v for i, v in zip(fixed, values)})
                    parts.extend(natural_parts(expr.subs(region, simultaneous=True), rest))
        return parts
    raise PositivityFailure(f"no shift up to {settings.positivity_max_shift} gives {expr} natural coefficients")
