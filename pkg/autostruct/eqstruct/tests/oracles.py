import collections
import itertools

from autostruct.cells.qe import holds
from autostruct.eqstruct import FiberSpec


def brute_fiber(spec: FiberSpec, b, reach: int) -> int:
    """Arguments up to `reach` that the graph sends to b."""
    count = 0
    for a in itertools.product(range(reach + 1), repeat=spec.m):
        if holds(spec.graph, dict(zip(spec.variables, tuple(a) + tuple(b)))):
            count += 1
    return count


def fiber_sizes(spec: FiberSpec, bound: int, reach: int) -> collections.Counter:
    """Multiset of the nonzero fibers over values with every coordinate at most `bound`."""
    sizes = collections.Counter()
    for b in itertools.product(range(bound + 1), repeat=spec.n):
        size = brute_fiber(spec, b, reach)
        if size:
            sizes[size] += 1
    return sizes


def level_sizes(values, limit: int) -> collections.Counter:
    return collections.Counter(v for v in values if 0 < v <= limit)
