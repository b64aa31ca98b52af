import functools
import itertools
import json
import logging
import operator
import typing

import sympy

from autostruct.cells.cell import all_cells, cell_param
from autostruct.cells.decompose import qf_to_cells
from autostruct.cells.fiber import FiberData, compose_fiber_affine, fiber_data
from autostruct.cells.qe import qe, quantifier_depth
from autostruct.common.exceptions import (ArityMismatch, InfiniteFiber, NonFunctionalGraph, SerializationError,
                                          ValidationFailure)
from autostruct.common.log import log
from autostruct.common.settings import settings
from autostruct.eqstruct.descriptor import EqDescriptor
from autostruct.eqstruct.polynomial import default_symbols, natural_parts
from autostruct.presentation.formula import FALSE, Equal, Formula, Fresh, Not, conj, disj, exists, parse
from autostruct.semilinear.semilinear import SemilinearSet, validate_disjoint_simple
from autostruct.semilinear.vpf import GeneralizedVpf, check_piecewise, gvpf_eval

M_KEY = "m"
N_KEY = "n"
VARIABLES_KEY = "variables"
GRAPH_KEY = "graph"


class FiberSpec:
    """
    A partial function f: ω^m → ω^n given by its graph over ⟨ω, ≤, suc, 0⟩. The first m variables are
    the arguments, the last n the values.
    """

    def __init__(self, m: int, n: int, graph: Formula, variables: typing.Sequence[str] = None):
        if type(m) is not int or type(n) is not int or m < 0 or n < 0 or m + n == 0:
            raise ValueError("arities must be natural numbers, not both zero")
        variables = list(variables or [f"x{i}" for i in range(m)] + [f"y{j}" for j in range(n)])
        if len(variables) != m + n or len(set(variables)) != len(variables):
            raise ArityMismatch(f"need {m + n} distinct variable names, got {variables}")
        unknown = [v for v in graph.free_variables() if v not in variables]
        if unknown:
            raise ArityMismatch(f"graph mentions {unknown} outside {variables}")
        self._m = m
        self._n = n
        self._graph = graph
        self._variables = variables

    @property
    def m(self) -> int:
        return self._m

    @property
    def n(self) -> int:
        return self._n

    @property
    def graph(self) -> Formula:
        return self._graph

    @property
    def variables(self) -> typing.List[str]:
        return list(self._variables)

    @property
    def arguments(self) -> typing.List[str]:
        return self._variables[:self._m]

    @property
    def values(self) -> typing.List[str]:
        return self._variables[self._m:]

    def __repr__(self):
        return f"FiberSpec({self.arguments} -> {self.values}: {self._graph})"

    def to_json(self) -> dict:
        return {M_KEY: self._m, N_KEY: self._n, VARIABLES_KEY: self.variables, GRAPH_KEY: str(self._graph)}

    @staticmethod
    def from_json(data: dict) -> "FiberSpec":
        try:
            return FiberSpec(data[M_KEY], data[N_KEY], parse(data[GRAPH_KEY]), data.get(VARIABLES_KEY))
        except (KeyError, TypeError) as e:
            raise SerializationError(f"malformed fiber spec JSON: {e}")

    @staticmethod
    def loads(text: str) -> "FiberSpec":
        try:
            return FiberSpec.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise SerializationError(f"malformed fiber spec JSON: {e}")


def check_functional(spec: FiberSpec):
    """Decide ∃x̄ȳȳ′ (graph(x̄,ȳ) ∧ graph(x̄,ȳ′) ∧ ȳ ≠ ȳ′) by quantifier elimination."""
    fresh = Fresh("_v")
    primed = {y: fresh(y) for y in spec.values}
    other = spec.graph.substitute(primed, Fresh("_b"))
    differ = disj(*[Not(Equal(y, primed[y])) for y in spec.values])
    sentence = exists(spec.variables + list(primed.values()), conj(spec.graph, other, differ))
    if qe(sentence, certify=False) != FALSE:
        raise NonFunctionalGraph(f"{spec.graph} relates some argument to two different values")


def classify(spec: FiberSpec) -> EqDescriptor:
    """
    Class sizes of the kernel of f as an ℕ[x̄] descriptor: the graph is cut into cells, each cell
    contributes its fiber polynomial under a guard, the value space is refined into cells on which
    every guard is constant, and on each refined cell the summed fibers are pulled back along its
    parametrization and split into parts with natural coefficients.
    """
    check_functional(spec)
    m, n = spec.m, spec.n
    psi = qe(spec.graph) if quantifier_depth(spec.graph) else spec.graph
    union = qf_to_cells(psi, m + n, spec.variables)
    fibers: typing.List[FiberData] = []
    for c in union:
        data = fiber_data(c, m)
        if data.is_infinite:
            raise InfiniteFiber(f"{c!r} has infinite fibers over {data.guard_formula(spec.values)}")
        fibers.append(data)
    t = max((g.constant for f in fibers for g in f.guard), default=0) + 1
    polys = []
    regions = all_cells(n, t)
    for region in regions:
        point = region.witness()
        active = [f for f in fibers if f.guard_holds(point)]
        if not active:
            continue
        phi = cell_param(region)
        total = functools.reduce(operator.add, [compose_fiber_affine(f, phi) for f in active])
        symbols = default_symbols(phi.dim_in)
        polys.extend(natural_parts(total.to_sympy(symbols), symbols))
    log(logging.INFO, f"classified {spec}: {len(union)} cells, {len(regions)} value regions, {len(polys)} polynomials")
    return EqDescriptor(polys)


Chamber = typing.Tuple[SemilinearSet, sympy.Expr]


def _check_chambers(g: GeneralizedVpf, chambers: typing.Sequence[Chamber], bound: int):
    for x in itertools.product(range(bound + 1), repeat=g.dimension):
        holders = [i for i, (chamber, _) in enumerate(chambers) if chamber.member(x)]
        if len(holders) > 1:
            raise ValidationFailure(f"chambers {holders} overlap at {list(x)}")
        if not holders and gvpf_eval(g, x) > 0:
            raise ValidationFailure(f"g({list(x)}) = {gvpf_eval(g, x)} but no chamber contains the point")


def gvpf_to_descriptor(g: GeneralizedVpf, chambers: typing.Sequence[Chamber], bound: int = None) -> EqDescriptor:
    """
    E(g) from the piecewise form of g: every chamber is a disjoint simple semilinear set carrying the
    polynomial g agrees with there. Each simple piece is parametrized bijectively by its multipliers,
    so composing and splitting into natural parts keeps the class multiset.
    """
    bound = settings.chamber_check_bound if bound is None else bound
    check_piecewise(g, chambers, bound)
    _check_chambers(g, chambers, bound)
    source = default_symbols(g.dimension)
    polys = []
    for chamber, polynomial in chambers:
        validate_disjoint_simple(chamber)
        for piece in chamber.pieces:
            targets = default_symbols(len(piece.periods))
            pullback = {x: u + sum(v[i] * y for v, y in zip(piece.periods, targets))
                        for i, (x, u) in enumerate(zip(source, piece.offset))}
            expr = sympy.sympify(polynomial).subs(pullback, simultaneous=True)
            polys.extend(natural_parts(expr, targets))
    log(logging.INFO, f"{len(chambers)} chambers gave {len(polys)} polynomials")
    return EqDescriptor(polys)
