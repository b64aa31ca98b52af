import functools
import itertools
import json
import logging
import typing

import sympy

from autostruct.common.constants import DIMENSION_KEY, MATRIX, SHIFT, TERMS
from autostruct.common.exceptions import (DimensionMismatch, InfiniteOutdegree, SerializationError, ValidationFailure,
                                          ZeroColumn)
from autostruct.common.log import log
from autostruct.common.settings import settings
from autostruct.semilinear.semilinear import SemilinearSet, Vector, _require_disjoint_simple


class VectorPartitionFn:
    """ψ_A(x̄) = |{ȳ ∈ ℕ^m : x̄ = Aȳ}| for an n×m matrix A of naturals without zero columns."""

    def __init__(self, matrix: typing.Sequence[typing.Sequence[int]]):
        rows = tuple(tuple(r) for r in matrix)
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("matrix rows must have equal length")
        if any(type(a) is not int or a < 0 for r in rows for a in r):
            raise ValueError("matrix entries must be natural numbers")
        self._rows = rows
        self._columns = tuple(zip(*rows)) if rows else ()
        for j, column in enumerate(self._columns):
            if not any(column):
                raise ZeroColumn(f"column {j} is zero, so ψ would be infinite")

    @property
    def rows(self) -> typing.Tuple[Vector, ...]:
        return self._rows

    @property
    def columns(self) -> typing.Tuple[Vector, ...]:
        return self._columns

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def __call__(self, x: typing.Sequence[int]) -> int:
        return vpf_eval(self, x)

    def __eq__(self, other):
        return isinstance(other, VectorPartitionFn) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"VectorPartitionFn({[list(r) for r in self._rows]})"


@functools.lru_cache(maxsize=8192)
def _solutions(columns: typing.Tuple[Vector, ...], rest: Vector) -> int:
    if not columns:
        return 0 if any(rest) else 1
    first, others = columns[0], columns[1:]
    most = min(r // a for r, a in zip(rest, first) if a > 0)
    return sum(_solutions(others, tuple(r - a * y for r, a in zip(rest, first))) for y in range(most + 1))


def vpf_eval(psi: VectorPartitionFn, x: typing.Sequence[int]) -> int:
    """Exact count; each yⱼ is bounded by min over rows i with A[i][j] > 0 of ⌊xᵢ/A[i][j]⌋."""
    x = tuple(x)
    if len(x) != psi.dimension:
        raise DimensionMismatch(f"ψ takes vectors of dimension {psi.dimension}, got {len(x)}")
    if any(c < 0 for c in x):
        return 0
    return _solutions(psi.columns, x)


class GeneralizedVpf:
    """g(x̄) = Σ ψ_{Aᵢ}(x̄ + c̄ᵢ) with integer shifts c̄ᵢ; ψ of a vector with a negative entry is 0."""

    def __init__(self, dimension: int, terms: typing.Iterable[typing.Tuple[VectorPartitionFn, typing.Sequence[int]]] = ()):
        if type(dimension) is not int or dimension < 0:
            raise ValueError("dimension must be a natural number")
        self._dimension = dimension
        self._terms = []
        for psi, shift in terms:
            if not isinstance(psi, VectorPartitionFn):
                psi = VectorPartitionFn(psi)
            shift = tuple(shift)
            if psi.dimension != dimension or len(shift) != dimension:
                raise DimensionMismatch(f"every term must act on vectors of dimension {dimension}")
            if any(type(c) is not int for c in shift):
                raise ValueError("shifts must be integer vectors")
            self._terms.append((psi, shift))

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def terms(self) -> typing.List[typing.Tuple[VectorPartitionFn, Vector]]:
        return list(self._terms)

    def __call__(self, x: typing.Sequence[int]) -> int:
        return gvpf_eval(self, x)

    def __repr__(self):
        return f"GeneralizedVpf(n={self._dimension}, terms={self._terms})"

    def to_json(self) -> dict:
        return {DIMENSION_KEY: self._dimension,
                TERMS: [{MATRIX: [list(r) for r in psi.rows], SHIFT: list(shift)} for psi, shift in self._terms]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @staticmethod
    def from_json(data: dict) -> "GeneralizedVpf":
        try:
            n = data[DIMENSION_KEY]
            terms = []
            for t in data[TERMS]:
                matrix = t[MATRIX] or [[] for _ in range(n)]
                terms.append((VectorPartitionFn(matrix), t.get(SHIFT, [0] * n)))
            return GeneralizedVpf(n, terms)
        except (KeyError, TypeError, AttributeError, IndexError) as e:
            raise SerializationError(f"malformed vector partition function JSON: {e}")

    @staticmethod
    def loads(text: str) -> "GeneralizedVpf":
        try:
            return GeneralizedVpf.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise SerializationError(f"malformed vector partition function JSON: {e}")


def gvpf_eval(g: GeneralizedVpf, x: typing.Sequence[int]) -> int:
    if len(x) != g.dimension:
        raise DimensionMismatch(f"g takes vectors of dimension {g.dimension}, got {len(x)}")
    return sum(vpf_eval(psi, [a + c for a, c in zip(x, shift)]) for psi, shift in g.terms)


def outdegree_gvpf(s: SemilinearSet, k: int) -> GeneralizedVpf:
    """
    The out-degree d(c̄) = |{d̄ : (c̄, d̄) ∈ S}| for the split k|l of a disjoint simple set, as a
    generalised vector partition function. A piece with offset (ū, ū′) and periods (v̄ⱼ, v̄′ⱼ)
    contributes ψ_A(c̄ − ū) with A the matrix of the first-k parts of its periods: simple periods make
    multiplier tuples and points correspond one to one.
    """
    if not 0 <= k <= s.dimension:
        raise DimensionMismatch(f"split {k}|{s.dimension - k} does not fit")
    _require_disjoint_simple(s)
    terms = []
    for i, piece in enumerate(s.pieces):
        for v in piece.periods:
            if not any(v[:k]):
                raise InfiniteOutdegree(f"piece {i} has the period {list(v)} that moves only the output part")
        rows = [[v[r] for v in piece.periods] for r in range(k)]
        terms.append((VectorPartitionFn(rows), [-u for u in piece.offset[:k]]))
    log(logging.DEBUG, f"out-degree as {len(terms)} shifted partition functions")
    return GeneralizedVpf(k, terms)


def default_symbols(n: int) -> typing.List[sympy.Symbol]:
    return [sympy.Symbol(f"x{i}") for i in range(n)]


def check_piecewise(g: GeneralizedVpf, chambers: typing.Sequence[typing.Tuple[SemilinearSet, sympy.Expr]],
                    bound: int = None, symbols: typing.Sequence[sympy.Symbol] = None) -> bool:
    """g agrees with each chamber's polynomial on every chamber point in [0..bound]^n."""
    bound = settings.chamber_check_bound if bound is None else bound
    symbols = list(symbols or default_symbols(g.dimension))
    for chamber, polynomial in chambers:
        if chamber.dimension != g.dimension:
            raise DimensionMismatch("chamber and function dimensions differ")
        for x in itertools.product(range(bound + 1), repeat=g.dimension):
            if chamber.member(x) and sympy.sympify(polynomial).subs(dict(zip(symbols, x))) != gvpf_eval(g, x):
                raise ValidationFailure(f"chamber polynomial {polynomial} disagrees with g at {list(x)}")
    return True
