import math
import typing

import sympy

from autostruct.cells.cell import INF, SCell
from autostruct.common.constants import (OMEGA, GUARD, VALUE, COEFF, ATOMS, ATOM_COEFFS, ATOM_SHIFT, ATOM_CHOOSE,
                                         INFINITY_MARKER)
from autostruct.common.exceptions import (ArityMismatch, DimensionMismatch, InfiniteValue, RangeNotInGuard,
                                          SerializationError)
from autostruct.presentation.formula import CompareOp, Comparison, Formula, Term, conj
from autostruct.semilinear.semilinear import AffineMap


def binom(t: int, c: int) -> int:
    """binom(t, c), and 0 whenever t < c (negative t included)."""
    return math.comb(t, c) if t >= c else 0


class BinomialAtom:
    """binom(a₀x₀ + … + a_{n-1}x_{n-1} + b, c)."""

    def __init__(self, a: typing.Sequence[int], b: int, c: int):
        self.a = tuple(a)
        if any(type(v) is not int for v in self.a) or type(b) is not int:
            raise ValueError("binomial atom coefficients must be integers")
        if type(c) is not int or c < 0:
            raise ValueError("binomial atom lower index must be a natural number")
        self.b = b
        self.c = c

    def argument(self, x: typing.Sequence[int]) -> int:
        return sum(a * v for a, v in zip(self.a, x)) + self.b

    def evaluate(self, x: typing.Sequence[int]) -> int:
        return binom(self.argument(x), self.c)

    def is_natural(self) -> bool:
        return self.b >= 0 and all(a >= 0 for a in self.a)

    def compose(self, phi: AffineMap) -> "BinomialAtom":
        a = [sum(ai * v[i] for i, ai in enumerate(self.a)) for v in phi.columns]
        return BinomialAtom(a, self.b + sum(ai * u for ai, u in zip(self.a, phi.offset)), self.c)

    def to_sympy(self, symbols: typing.Sequence[sympy.Symbol]) -> sympy.Expr:
        argument = sum((a * x for a, x in zip(self.a, symbols)), sympy.Integer(self.b))
        return sympy.expand_func(sympy.binomial(argument, self.c))

    def __eq__(self, other):
        return isinstance(other, BinomialAtom) and (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return f"binom({list(self.a)}·x + {self.b}, {self.c})"

    def to_json(self) -> dict:
        return {ATOM_COEFFS: list(self.a), ATOM_SHIFT: self.b, ATOM_CHOOSE: self.c}


class BasicPolynomial:
    """Σ coeff · Π binomial atoms over ℕⁿ; a term without atoms is a constant."""

    def __init__(self, n: int, terms: typing.Iterable[typing.Tuple[int, typing.Sequence[BinomialAtom]]] = ()):
        self._n = n
        self._terms = []
        for coeff, atoms in terms:
            atoms = tuple(atoms)
            if any(len(atom.a) != n for atom in atoms):
                raise DimensionMismatch(f"binomial atom does not have {n} coefficients")
            if coeff:
                self._terms.append((coeff, atoms))

    @staticmethod
    def constant(n: int, value: int) -> "BasicPolynomial":
        return BasicPolynomial(n, [(value, ())])

    @property
    def dimension(self) -> int:
        return self._n

    @property
    def terms(self) -> typing.List[typing.Tuple[int, typing.Tuple[BinomialAtom, ...]]]:
        return list(self._terms)

    def evaluate(self, x: typing.Sequence[int]) -> int:
        if len(x) != self._n:
            raise DimensionMismatch(f"polynomial in {self._n} variables evaluated at {len(x)} values")
        return sum(coeff * math.prod(atom.evaluate(x) for atom in atoms) for coeff, atoms in self._terms)

    def __call__(self, x: typing.Sequence[int]) -> int:
        return self.evaluate(x)

    def __add__(self, other: "BasicPolynomial") -> "BasicPolynomial":
        if other.dimension != self._n:
            raise DimensionMismatch("cannot add polynomials in different numbers of variables")
        return BasicPolynomial(self._n, self._terms + other._terms)

    def is_natural(self) -> bool:
        return all(coeff > 0 and all(atom.is_natural() for atom in atoms) for coeff, atoms in self._terms)

    def compose(self, phi: AffineMap) -> "BasicPolynomial":
        if phi.dim_out != self._n:
            raise DimensionMismatch(f"affine map lands in ℕ^{phi.dim_out}, polynomial lives on ℕ^{self._n}")
        return BasicPolynomial(phi.dim_in, [(coeff, [atom.compose(phi) for atom in atoms])
                                            for coeff, atoms in self._terms])

    def to_sympy(self, symbols: typing.Sequence[sympy.Symbol] = None) -> sympy.Expr:
        symbols = list(symbols or [sympy.Symbol(f"x{i}") for i in range(self._n)])
        total = sympy.Integer(0)
        for coeff, atoms in self._terms:
            product = sympy.Integer(coeff)
            for atom in atoms:
                product *= atom.to_sympy(symbols)
            total += product
        return sympy.expand(total)

    def __repr__(self):
        return f"BasicPolynomial({self.to_json()})"

    def to_json(self) -> list:
        return [{COEFF: coeff, ATOMS: [atom.to_json() for atom in atoms]} for coeff, atoms in self._terms]

    @staticmethod
    def from_json(n: int, data: list) -> "BasicPolynomial":
        try:
            return BasicPolynomial(n, [(t[COEFF], [BinomialAtom(a[ATOM_COEFFS], a[ATOM_SHIFT], a[ATOM_CHOOSE])
                                                   for a in t[ATOMS]]) for t in data])
        except (KeyError, TypeError) as e:
            raise SerializationError(f"malformed basic polynomial JSON: {e}")


class GuardConstraint:
    """x_upper = x_lower + constant, or x_upper >= x_lower + constant; lower None stands for 0."""

    def __init__(self, upper: int, lower: typing.Optional[int], constant: int, equality: bool):
        self.upper = upper
        self.lower = lower
        self.constant = constant
        self.equality = equality

    def slack(self, x: typing.Sequence[int]) -> int:
        return x[self.upper] - (0 if self.lower is None else x[self.lower]) - self.constant

    def holds(self, x: typing.Sequence[int]) -> bool:
        slack = self.slack(x)
        return slack == 0 if self.equality else slack >= 0

    def formula(self, variables: typing.Sequence[str]) -> Formula:
        lower = None if self.lower is None else variables[self.lower]
        op = CompareOp.EQ if self.equality else CompareOp.GE
        return Comparison(Term(variables[self.upper]), op, Term(lower, self.constant))

    def __eq__(self, other):
        return isinstance(other, GuardConstraint) and \
            (self.upper, self.lower, self.constant, self.equality) == \
            (other.upper, other.lower, other.constant, other.equality)

    def __repr__(self):
        return str(self.formula([f"x{i}" for i in range(max(self.upper, self.lower or 0) + 1)]))


class FiberData:
    """Guard θ on the base coordinates and the fiber size on θ: a basic polynomial, or INF."""

    def __init__(self, n: int, guard: typing.Sequence[GuardConstraint], value: typing.Union[BasicPolynomial, float]):
        self._n = n
        self._guard = list(guard)
        self._value = value

    @property
    def dimension(self) -> int:
        return self._n

    @property
    def guard(self) -> typing.List[GuardConstraint]:
        return list(self._guard)

    @property
    def value(self) -> typing.Union[BasicPolynomial, float]:
        return self._value

    @property
    def is_infinite(self) -> bool:
        return not isinstance(self._value, BasicPolynomial)

    def guard_holds(self, b: typing.Sequence[int]) -> bool:
        return all(g.holds(b) for g in self._guard)

    def guard_formula(self, variables: typing.Sequence[str] = None) -> Formula:
        variables = list(variables or [f"x{i}" for i in range(self._n)])
        return conj(*[g.formula(variables) for g in self._guard])

    def __repr__(self):
        return f"FiberData(guard={self.guard_formula()}, value={self._value})"

    def to_json(self) -> dict:
        return {GUARD: str(self.guard_formula()),
                VALUE: INFINITY_MARKER if self.is_infinite else self._value.to_json()}


def fiber_data(c: SCell, m: int) -> FiberData:
    """
    Fibers of a cell over ℕ^{m+n} along the split m|n (fiber coordinates first). The base coordinates
    cut the cell order into segments; a segment ending at a base coordinate with k infinite gaps and
    finite gaps summing to F admits binom(Δ − F − ks + k − 1, k − 1) fillings for a rise Δ ≥ F + ks, and
    exactly one for Δ = F when k = 0. A segment above every base coordinate is infinite iff it has an
    infinite gap.
    """
    if not 0 <= m <= c.n:
        raise ArityMismatch(f"split {m}|{c.n - m} does not fit a cell of arity {c.n}")
    n = c.n - m
    guard = []
    atoms = []
    lower = None
    k = 0
    finite = 0
    for coordinate, gap in zip(c.sigma, c.d):
        if gap == INF:
            k += 1
        else:
            finite += gap
        if coordinate < m:
            continue
        j = coordinate - m
        if k == 0:
            guard.append(GuardConstraint(j, lower, finite, equality=True))
        else:
            guard.append(GuardConstraint(j, lower, finite + k * c.s, equality=False))
            a = [0] * n
            a[j] += 1
            if lower is not None:
                a[lower] -= 1
            atoms.append(BinomialAtom(a, -(finite + k * c.s - (k - 1)), k - 1))
        lower = j
        k = 0
        finite = 0
    value = INF if k > 0 else BasicPolynomial(n, [(1, atoms)])
    return FiberData(n, guard, value)


def fiber_count(c: SCell, m: int, b: typing.Sequence[int]):
    """|{ā : (ā, b̄) ∈ C}| as a natural number or OMEGA."""
    if len(b) != c.n - m:
        raise ArityMismatch(f"base tuple needs {c.n - m} values, got {len(b)}")
    data = fiber_data(c, m)
    if not data.guard_holds(b):
        return 0
    if data.is_infinite:
        return OMEGA
    return data.value.evaluate(b)


def compose_fiber_affine(f: FiberData, phi: AffineMap) -> BasicPolynomial:
    """
    value ∘ φ for an affine φ whose range lies in the guard. Each guard slack L is affine in the
    parameters, so the range lies in the guard iff L(offset) and every column's linear part are ≥ 0
    (= 0 for equalities).
    """
    if f.is_infinite:
        raise InfiniteValue("the fibers are infinite on this cell")
    if phi.dim_out != f.dimension:
        raise DimensionMismatch(f"affine map lands in ℕ^{phi.dim_out}, fibers live over ℕ^{f.dimension}")
    for g in f.guard:
        at_offset = g.slack(phi.offset)
        slopes = [v[g.upper] - (0 if g.lower is None else v[g.lower]) for v in phi.columns]
        if g.equality:
            inside = at_offset == 0 and not any(slopes)
        else:
            inside = at_offset >= 0 and all(t >= 0 for t in slopes)
        if not inside:
            raise RangeNotInGuard(f"the range of {phi!r} leaves the guard {g!r}")
    return f.value.compose(phi)
