import itertools
import json
import math
import typing

from autostruct.common.constants import DIMENSION_KEY, GAP_BOUND, SIGMA, GAPS, CELLS, INFINITY_MARKER
from autostruct.common.exceptions import ArityMismatch, CellMismatch, SerializationError
from autostruct.semilinear.semilinear import AffineMap

INF = math.inf

Gap = typing.Union[int, float]
Signature = typing.Tuple[typing.Tuple[typing.Tuple[int, ...], Gap], ...]


def gap_to_json(gap: Gap):
    return INFINITY_MARKER if gap == INF else gap


def gap_from_json(value) -> Gap:
    return INF if value == INFINITY_MARKER else value


class SCell:
    """
    C(σ, d) over ℕⁿ: coordinates visited in the order σ(0), σ(1), …; each sits exactly d(i) above its
    predecessor (above 0 for i = 0), or at least s above it when d(i) is infinite.
    """

    def __init__(self, n: int, s: int, sigma: typing.Sequence[int], d: typing.Sequence[Gap]):
        if type(n) is not int or n < 0:
            raise ValueError("arity must be a natural number")
        if type(s) is not int or s < 1:
            raise ValueError("gap bound s must be a positive integer")
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(n)):
            raise ValueError(f"sigma {list(sigma)} is not a permutation of 0..{n - 1}")
        d = tuple(gap_from_json(g) for g in d)
        if len(d) != n:
            raise ValueError(f"need {n} gaps, got {len(d)}")
        for g in d:
            if g != INF and (type(g) is not int or not 0 <= g < s):
                raise ValueError(f"gap {g} is neither infinite nor in 0..{s - 1}")
        self._n = n
        self._s = s
        self._sigma = sigma
        self._d = d

    @property
    def n(self) -> int:
        return self._n

    @property
    def s(self) -> int:
        return self._s

    @property
    def sigma(self) -> typing.Tuple[int, ...]:
        return self._sigma

    @property
    def d(self) -> typing.Tuple[Gap, ...]:
        return self._d

    def member(self, a: typing.Sequence[int]) -> bool:
        return cell_member(self, a)

    def signature(self) -> Signature:
        """Blocks of equal coordinates in increasing order, each with the gap below it."""
        blocks = []
        for i, (coordinate, gap) in enumerate(zip(self._sigma, self._d)):
            if i > 0 and gap == 0:
                blocks[-1][0].append(coordinate)
            else:
                blocks.append(([coordinate], gap))
        return tuple((tuple(sorted(block)), gap) for block, gap in blocks)

    def canonical(self) -> "SCell":
        return from_signature(self._n, self._s, self.signature())

    def witness(self) -> typing.Tuple[int, ...]:
        """The least member: every infinite gap is taken as s."""
        values = [0] * self._n
        level = 0
        for coordinate, gap in zip(self._sigma, self._d):
            level += self._s if gap == INF else gap
            values[coordinate] = level
        return tuple(values)

    def infinite_gaps(self) -> typing.List[int]:
        return [i for i, g in enumerate(self._d) if g == INF]

    def __eq__(self, other):
        return isinstance(other, SCell) and (self._n, self._s, self._sigma, self._d) == \
            (other._n, other._s, other._sigma, other._d)

    def __hash__(self):
        return hash((self._n, self._s, self._sigma, self._d))

    def __repr__(self):
        return f"SCell(n={self._n}, s={self._s}, sigma={list(self._sigma)}, d={[gap_to_json(g) for g in self._d]})"

    def to_json(self) -> dict:
        return {DIMENSION_KEY: self._n, GAP_BOUND: self._s, SIGMA: list(self._sigma),
                GAPS: [gap_to_json(g) for g in self._d]}

    @staticmethod
    def from_json(data: dict) -> "SCell":
        try:
            return SCell(data[DIMENSION_KEY], data[GAP_BOUND], data[SIGMA], data[GAPS])
        except (KeyError, TypeError) as e:
            raise SerializationError(f"malformed cell JSON: {e}")


def cell_member(c: SCell, a: typing.Sequence[int]) -> bool:
    if len(a) != c.n:
        raise ArityMismatch(f"cell of arity {c.n} tested with {len(a)} values")
    below = 0
    for coordinate, gap in zip(c.sigma, c.d):
        value = a[coordinate]
        if gap == INF:
            if value < below + c.s:
                return False
        elif value != below + gap:
            return False
        below = value
    return True


def from_signature(n: int, s: int, signature: Signature) -> SCell:
    sigma, d = [], []
    for block, gap in signature:
        sigma.extend(block)
        d.extend([gap] + [0] * (len(block) - 1))
    return SCell(n, s, sigma, d)


def cell_of(a: typing.Sequence[int], s: int) -> SCell:
    """The unique canonical s-cell containing the point a."""
    order = sorted(range(len(a)), key=lambda i: (a[i], i))
    blocks = []
    below = 0
    for i in order:
        if blocks and a[i] == below:
            blocks[-1][0].append(i)
            continue
        difference = a[i] - below
        blocks.append(([i], INF if difference >= s else difference))
        below = a[i]
    signature = tuple((tuple(block), gap) for block, gap in blocks)
    return from_signature(len(a), s, signature)


def _check_comparable(c1: SCell, c2: SCell):
    if (c1.n, c1.s) != (c2.n, c2.s):
        raise CellMismatch(f"cells over ({c1.n}, s={c1.s}) and ({c2.n}, s={c2.s}) cannot be compared")


def cells_equal_or_disjoint(c1: SCell, c2: SCell, certify: bool = False) -> str:
    """
    Two s-cells over the same ℕⁿ are equal or disjoint; the canonical signatures tell which.
    With `certify` the answer is confirmed on the least members and, for n ≤ 3, on the box [0..3sn]ⁿ.
    """
    _check_comparable(c1, c2)
    answer = "equal" if c1.signature() == c2.signature() else "disjoint"
    if certify:
        joint = c2.member(c1.witness()) and c1.member(c2.witness())
        if joint != (answer == "equal"):
            raise CellMismatch(f"least members contradict the signature comparison of {c1!r} and {c2!r}")
        if c1.n <= 3:
            for a in itertools.product(range(3 * c1.s * c1.n + 1), repeat=c1.n):
                if c1.member(a) and c2.member(a) and answer == "disjoint":
                    raise CellMismatch(f"{list(a)} lies in both cells")
                if c1.member(a) != c2.member(a) and answer == "equal":
                    raise CellMismatch(f"{list(a)} separates the cells")
    return answer


def _ordered_partitions(items: typing.Tuple[int, ...]) -> typing.Iterator[typing.List[typing.Tuple[int, ...]]]:
    if not items:
        yield []
        return
    for size in range(1, len(items) + 1):
        for first in itertools.combinations(items, size):
            rest = tuple(i for i in items if i not in first)
            for tail in _ordered_partitions(rest):
                yield [first] + tail


def all_cells(n: int, s: int) -> typing.List[SCell]:
    """Every nonempty s-cell of ℕⁿ once, in canonical form; together they partition ℕⁿ."""
    first_gaps = list(range(s)) + [INF]
    later_gaps = list(range(1, s)) + [INF]
    cells = []
    for blocks in _ordered_partitions(tuple(range(n))):
        options = [first_gaps] + [later_gaps] * (len(blocks) - 1) if blocks else []
        for gaps in itertools.product(*options):
            cells.append(from_signature(n, s, tuple(zip(blocks, gaps))))
    return cells


def cell_param(c: SCell) -> AffineMap:
    """
    Injective affine g: ℕ^m → ℕⁿ onto C(σ, d), one parameter per infinite gap: coordinate σ(i) is the
    sum of the gaps up to i, an infinite gap counting as s plus its parameter.
    """
    offset = [0] * c.n
    infinite = c.infinite_gaps()
    columns = [[0] * c.n for _ in infinite]
    level = 0
    opened = 0
    for coordinate, gap in zip(c.sigma, c.d):
        if gap == INF:
            level += c.s
            opened += 1
        else:
            level += gap
        offset[coordinate] = level
        for t in range(opened):
            columns[t][coordinate] = 1
    return AffineMap(offset, columns)


class CellUnion:
    """A union of pairwise disjoint s-cells of ℕⁿ at one common s."""

    def __init__(self, n: int, s: int, cells: typing.Iterable[SCell] = ()):
        self._n = n
        self._s = s
        self._cells = []
        seen = set()
        for c in cells:
            if (c.n, c.s) != (n, s):
                raise CellMismatch(f"cell {c!r} does not live in ℕ^{n} at s={s}")
            signature = c.signature()
            if signature in seen:
                raise CellMismatch(f"cell {c!r} occurs twice")
            seen.add(signature)
            self._cells.append(c)

    @property
    def n(self) -> int:
        return self._n

    @property
    def s(self) -> int:
        return self._s

    @property
    def cells(self) -> typing.List[SCell]:
        return list(self._cells)

    def __len__(self):
        return len(self._cells)

    def __iter__(self):
        return iter(self._cells)

    def member(self, a: typing.Sequence[int]) -> bool:
        return any(c.member(a) for c in self._cells)

    def __repr__(self):
        return f"CellUnion(n={self._n}, s={self._s}, cells={len(self._cells)})"

    def to_json(self) -> dict:
        return {DIMENSION_KEY: self._n, GAP_BOUND: self._s, CELLS: [c.to_json() for c in self._cells]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @staticmethod
    def from_json(data: dict) -> "CellUnion":
        try:
            return CellUnion(data[DIMENSION_KEY], data[GAP_BOUND], [SCell.from_json(c) for c in data[CELLS]])
        except (KeyError, TypeError) as e:
            raise SerializationError(f"malformed cell union JSON: {e}")
