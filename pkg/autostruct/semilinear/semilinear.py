import functools
import itertools
import json
import logging
import typing

import sympy

from autostruct.common.constants import DIMENSION_KEY, OFFSET, PERIODS, PIECES, DISJOINT_SIMPLE
from autostruct.common.exceptions import DimensionMismatch, SerializationError, ValidationFailure
from autostruct.common.log import log
from autostruct.common.settings import settings
from autostruct.presentation.builders import presburger
from autostruct.presentation.evaluator import eval
from autostruct.presentation.formula import FALSE, Formula, conj, disj, exists
from autostruct.presentation.presentation import Presentation
from autostruct.presentation.terms import PLUS, linear_equals
from autostruct.relations.relation import RegularRelation

Vector = typing.Tuple[int, ...]


def _natural_vector(values, what: str) -> Vector:
    values = tuple(values)
    if any(type(v) is not int or v < 0 for v in values):
        raise ValueError(f"{what} must be a vector of natural numbers")
    return values


class AffineMap:
    """φ(x̄) = u + Σ vᵢxᵢ from ℕ^m to ℕⁿ."""

    def __init__(self, offset: typing.Sequence[int], columns: typing.Sequence[typing.Sequence[int]] = ()):
        self._offset = _natural_vector(offset, "offset")
        self._columns = tuple(_natural_vector(c, "column") for c in columns)
        if any(len(c) != len(self._offset) for c in self._columns):
            raise DimensionMismatch("every column must have the dimension of the offset")

    @property
    def offset(self) -> Vector:
        return self._offset

    @property
    def columns(self) -> typing.Tuple[Vector, ...]:
        return self._columns

    @property
    def dim_in(self) -> int:
        return len(self._columns)

    @property
    def dim_out(self) -> int:
        return len(self._offset)

    def __call__(self, x: typing.Sequence[int]) -> Vector:
        if len(x) != self.dim_in:
            raise DimensionMismatch(f"affine map takes {self.dim_in} arguments, got {len(x)}")
        return tuple(u + sum(c[i] * xi for c, xi in zip(self._columns, x)) for i, u in enumerate(self._offset))

    def __eq__(self, other):
        return isinstance(other, AffineMap) and (self._offset, self._columns) == (other._offset, other._columns)

    def __hash__(self):
        return hash((self._offset, self._columns))

    def __repr__(self):
        return f"AffineMap(offset={list(self._offset)}, columns={[list(c) for c in self._columns]})"

    def to_json(self) -> dict:
        return {OFFSET: list(self._offset), PERIODS: [list(c) for c in self._columns]}


class LinearSet:
    """rng φ for one affine map; the columns are called periods."""

    def __init__(self, offset: typing.Sequence[int], periods: typing.Sequence[typing.Sequence[int]] = ()):
        self._map = AffineMap(offset, periods)
        self._simple = None

    @staticmethod
    def of(affine: AffineMap) -> "LinearSet":
        return LinearSet(affine.offset, affine.columns)

    @property
    def affine(self) -> AffineMap:
        return self._map

    @property
    def offset(self) -> Vector:
        return self._map.offset

    @property
    def periods(self) -> typing.Tuple[Vector, ...]:
        return self._map.columns

    @property
    def dimension(self) -> int:
        return self._map.dim_out

    def is_simple(self) -> bool:
        if self._simple is None:
            self._simple = is_simple(self)
        return self._simple

    def member(self, x: typing.Sequence[int]) -> bool:
        x = tuple(x)
        if len(x) != self.dimension:
            raise DimensionMismatch(f"point of dimension {len(x)} tested against a set of dimension {self.dimension}")
        rest = tuple(a - u for a, u in zip(x, self.offset))
        if any(r < 0 for r in rest):
            return False
        return _solvable(tuple(p for p in self.periods if any(p)), rest)

    def points(self, bound: int) -> typing.Iterator[Vector]:
        """Images of all multiplier tuples in [0..bound]^m."""
        for y in itertools.product(range(bound + 1), repeat=len(self.periods)):
            yield self._map(y)

    def __eq__(self, other):
        return isinstance(other, LinearSet) and self._map == other._map

    def __hash__(self):
        return hash(self._map)

    def __repr__(self):
        return f"LinearSet(offset={list(self.offset)}, periods={[list(p) for p in self.periods]})"

    def to_json(self) -> dict:
        return self._map.to_json()


@functools.lru_cache(maxsize=4096)
def _solvable(periods: typing.Tuple[Vector, ...], rest: Vector) -> bool:
    if not periods:
        return not any(rest)
    first, others = periods[0], periods[1:]
    most = min(r // v for r, v in zip(rest, first) if v > 0)
    for y in range(most + 1):
        if _solvable(others, tuple(r - v * y for r, v in zip(rest, first))):
            return True
    return False


def is_simple(piece: LinearSet) -> bool:
    """The periods are linearly independent over ℚ (exact rank)."""
    if not piece.periods:
        return True
    return sympy.Matrix([list(p) for p in piece.periods]).rank() == len(piece.periods)


class SemilinearSet:
    """
    A finite union of linear sets in ℕⁿ. `disjoint_simple` is a claim made by whoever built the set:
    it is trusted until `validate_disjoint_simple` checks it.
    """

    def __init__(self, dimension: int, pieces: typing.Iterable[LinearSet] = (), disjoint_simple: bool = False):
        if type(dimension) is not int or dimension < 0:
            raise ValueError("dimension must be a natural number")
        self._dimension = dimension
        self._pieces = tuple(pieces)
        for piece in self._pieces:
            if piece.dimension != dimension:
                raise DimensionMismatch(f"piece {piece!r} does not have dimension {dimension}")
        self.disjoint_simple = disjoint_simple
        self._validated = False

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def pieces(self) -> typing.Tuple[LinearSet, ...]:
        return self._pieces

    @property
    def disjoint_simple(self) -> bool:
        return self._disjoint_simple

    @disjoint_simple.setter
    def disjoint_simple(self, value: bool):
        if type(value) is not bool:
            raise ValueError("disjoint_simple must be boolean")
        self._disjoint_simple = value

    def member(self, x: typing.Sequence[int]) -> bool:
        return member(self, x)

    def __repr__(self):
        return f"SemilinearSet(n={self._dimension}, pieces={list(self._pieces)})"

    def to_json(self) -> dict:
        return {DIMENSION_KEY: self._dimension, PIECES: [p.to_json() for p in self._pieces],
                DISJOINT_SIMPLE: self._disjoint_simple}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @staticmethod
    def from_json(data: dict) -> "SemilinearSet":
        try:
            pieces = [LinearSet(p[OFFSET], p.get(PERIODS, [])) for p in data[PIECES]]
            return SemilinearSet(data[DIMENSION_KEY], pieces, bool(data.get(DISJOINT_SIMPLE, False)))
        except (KeyError, TypeError, AttributeError) as e:
            raise SerializationError(f"malformed semilinear set JSON: {e}")

    @staticmethod
    def loads(text: str) -> "SemilinearSet":
        try:
            return SemilinearSet.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise SerializationError(f"malformed semilinear set JSON: {e}")


def linear(offset: typing.Sequence[int], periods: typing.Sequence[typing.Sequence[int]] = ()) -> SemilinearSet:
    piece = LinearSet(offset, periods)
    return SemilinearSet(piece.dimension, [piece], disjoint_simple=piece.is_simple())


def member(s: SemilinearSet, x: typing.Sequence[int]) -> bool:
    if len(x) != s.dimension:
        raise DimensionMismatch(f"point of dimension {len(x)} tested against a set of dimension {s.dimension}")
    return any(piece.member(x) for piece in s.pieces)


def validate_disjoint_simple(s: SemilinearSet, certify: bool = False) -> bool:
    """
    Check the disjoint-simple claim: every piece has independent periods, and no two pieces share a
    point reachable with multipliers up to `settings.disjointness_multiplier_bound`. With `certify`,
    pairwise disjointness is also decided exactly through the automata of the pieces over ⟨ℕ,+⟩.
    """
    for piece in s.pieces:
        if not piece.is_simple():
            raise ValidationFailure(f"piece {piece!r} has linearly dependent periods")
    bound = settings.disjointness_multiplier_bound
    for i, j in itertools.combinations(range(len(s.pieces)), 2):
        a, b = s.pieces[i], s.pieces[j]
        if len(a.periods) > len(b.periods):
            a, b = b, a
        for x in a.points(bound):
            if b.member(x):
                raise ValidationFailure(f"pieces {i} and {j} share the point {list(x)}")
    if certify and len(s.pieces) > 1:
        p = _presburger()
        relations = [to_relation(SemilinearSet(s.dimension, [piece]), p) for piece in s.pieces]
        for i, j in itertools.combinations(range(len(relations)), 2):
            if not relations[i].intersection(relations[j]).is_empty():
                raise ValidationFailure(f"pieces {i} and {j} intersect")
    s._validated = True
    log(logging.DEBUG, f"validated {len(s.pieces)} disjoint simple pieces")
    return True


def _require_disjoint_simple(s: SemilinearSet):
    if not s.disjoint_simple:
        raise ValidationFailure("the semilinear set is not declared disjoint simple")
    if not s._validated:
        validate_disjoint_simple(s)


def series_coeffs(s: SemilinearSet, bound: int) -> typing.Dict[Vector, int]:
    """
    Coefficients of the generating series Σ_piece x̄^u / Π(1 − x̄^v) on the box [0..bound]^n.
    Each factor 1/(1 − x̄^v) is a geometric series, so a piece is expanded by repeated shifting.
    """
    _require_disjoint_simple(s)
    box = list(itertools.product(range(bound + 1), repeat=s.dimension))
    coefficients = {x: 0 for x in box}

    def inside(x):
        return all(c <= bound for c in x)

    for piece in s.pieces:
        series = {piece.offset: 1} if inside(piece.offset) else {}
        for v in piece.periods:
            expanded = {}
            for x, c in series.items():
                y = x
                while inside(y):
                    expanded[y] = expanded.get(y, 0) + c
                    y = tuple(a + b for a, b in zip(y, v))
            series = expanded
        for x, c in series.items():
            coefficients[x] += c
    return coefficients


def default_variables(n: int) -> typing.List[str]:
    return [f"x{i}" for i in range(n)]


def to_formula(s: SemilinearSet, variables: typing.Sequence[str] = None, plus: str = PLUS) -> Formula:
    """
    ∃μ̄ x̄ = u + Σ vⱼμⱼ for some piece, over the signature of ⟨ℕ,+⟩. Scalar multiples are unrolled
    into additions, so the formula only uses the ternary relation `plus`.
    """
    variables = list(variables or default_variables(s.dimension))
    if len(variables) != s.dimension:
        raise DimensionMismatch(f"need {s.dimension} variable names")
    alternatives = []
    for piece in s.pieces:
        multipliers = [f"_mu{j}" for j in range(len(piece.periods))]
        equations = []
        for i, x in enumerate(variables):
            summands = [(v[i], mu) for v, mu in zip(piece.periods, multipliers) if v[i] > 0]
            if piece.offset[i] > 0:
                summands.append(piece.offset[i])
            equations.append(linear_equals(x, summands, plus=plus))
        alternatives.append(exists(multipliers, conj(*equations)) if multipliers else conj(*equations))
    return disj(*alternatives) if alternatives else FALSE


def _presburger() -> Presentation:
    return presburger(2)


def to_relation(s: SemilinearSet, p: Presentation = None, variables: typing.Sequence[str] = None) -> RegularRelation:
    """The set as a regular relation over a presentation of ⟨ℕ,+⟩ (binary by default)."""
    p = p or _presburger()
    variables = list(variables or default_variables(s.dimension))
    return eval(p, to_formula(s, variables), variables)
