import itertools
import json
import typing

from autostruct.common.constants import (OMEGA, POLYS, INFINITE_CLASSES, COUNTS, TRUNCATED, count_to_json,
                                         count_from_json)
from autostruct.common.exceptions import PositivityFailure, SerializationError
from autostruct.eqstruct.polynomial import Polynomial

Count = typing.Union[int, type(OMEGA)]


class EqDescriptor:
    """
    Σ_p E(p) plus `infinite_classes` infinite classes. E(p) has one class of size p(x̄) for every
    index point x̄ with p(x̄) > 0.
    """

    def __init__(self, polys: typing.Iterable[Polynomial] = (), infinite_classes: Count = 0):
        self._polys = [p for p in polys if not p.is_zero()]
        for p in self._polys:
            if not p.is_natural():
                raise PositivityFailure(f"descriptor polynomial {p} has a negative coefficient")
        self.infinite_classes = infinite_classes

    @property
    def polys(self) -> typing.List[Polynomial]:
        return list(self._polys)

    @property
    def infinite_classes(self) -> Count:
        return self._infinite_classes

    @infinite_classes.setter
    def infinite_classes(self, value: Count):
        if value is not OMEGA and (type(value) is not int or value < 0):
            raise ValueError("the number of infinite classes must be a natural number or OMEGA")
        self._infinite_classes = value

    def class_count(self, k: int) -> Count:
        return class_count(self, k)

    def multiset(self, max_size: int) -> "ClassMultiset":
        """Predicted class counts for the sizes 1..max_size."""
        counts = {k: class_count(self, k) for k in range(1, max_size + 1)}
        return ClassMultiset({k: c for k, c in counts.items() if c}, self._infinite_classes)

    def __repr__(self):
        return f"EqDescriptor(polys={[str(p) for p in self._polys]}, infinite_classes={self._infinite_classes})"

    def to_json(self) -> dict:
        return {POLYS: [p.to_json() for p in self._polys], INFINITE_CLASSES: count_to_json(self._infinite_classes)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @staticmethod
    def from_json(data: dict) -> "EqDescriptor":
        try:
            return EqDescriptor([Polynomial.from_json(p) for p in data[POLYS]],
                                count_from_json(data.get(INFINITE_CLASSES, 0)))
        except (KeyError, TypeError, ValueError) as e:
            raise SerializationError(f"malformed descriptor JSON: {e}")

    @staticmethod
    def loads(text: str) -> "EqDescriptor":
        try:
            return EqDescriptor.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise SerializationError(f"malformed descriptor JSON: {e}")


class ClassMultiset:
    """Class sizes with their multiplicities, the number of infinite classes, and how many classes reach past the bound."""

    def __init__(self, counts: typing.Mapping[int, Count] = None, infinite_class_count: Count = 0,
                 truncated: int = 0):
        self._counts = {}
        for size, count in sorted((counts or {}).items()):
            if type(size) is not int or size < 1:
                raise ValueError("class sizes are positive integers")
            if count:
                self._counts[size] = count
        self.infinite_class_count = infinite_class_count
        self.truncated = truncated

    @property
    def counts(self) -> typing.Dict[int, Count]:
        return dict(self._counts)

    def __eq__(self, other):
        return isinstance(other, ClassMultiset) and \
            (self._counts, self.infinite_class_count, self.truncated) == \
            (other._counts, other.infinite_class_count, other.truncated)

    def __repr__(self):
        return f"ClassMultiset({self._counts}, infinite={self.infinite_class_count}, truncated={self.truncated})"

    def to_json(self) -> dict:
        return {COUNTS: {str(k): count_to_json(c) for k, c in self._counts.items()},
                INFINITE_CLASSES: count_to_json(self.infinite_class_count),
                TRUNCATED: self.truncated}

    @staticmethod
    def from_json(data: dict) -> "ClassMultiset":
        try:
            return ClassMultiset({int(k): count_from_json(c) for k, c in data[COUNTS].items()},
                                 count_from_json(data.get(INFINITE_CLASSES, 0)), data.get(TRUNCATED, 0))
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise SerializationError(f"malformed class multiset JSON: {e}")


def level_count(p: Polynomial, k: int) -> Count:
    """
    |{x̄ : p(x̄) = k}| for p with natural coefficients and k ≥ 1. The points are split by their
    support S. On S every variable is at least 1, so a variable that occurs in a monomial supported
    in S is at most k; a variable of S that occurs in none leaves p unchanged along its axis, so a
    single solution there means infinitely many.
    """
    if k < 1:
        raise ValueError("class sizes start at 1")
    n = p.arity
    total = 0
    for size in range(n + 1):
        for support in itertools.combinations(range(n), size):
            used = p.used_variables(support)
            free = [i for i in support if i not in used]
            bounded = [i for i in support if i in used]
            for values in itertools.product(range(1, k + 1), repeat=len(bounded)):
                x = [0] * n
                for i in free:
                    x[i] = 1
                for i, v in zip(bounded, values):
                    x[i] = v
                if p(x) == k:
                    if free:
                        return OMEGA
                    total += 1
    return total


def class_count(d: EqDescriptor, k: int) -> Count:
    """Number of classes of size k described by d."""
    total = 0
    for p in d.polys:
        count = level_count(p, k)
        if count is OMEGA:
            return OMEGA
        total += count
    return total
