import logging
import typing

import networkx as nx

from autostruct.automata import regex
from autostruct.automata.alphabet import Word
from autostruct.automata.automaton import Automaton, determinize, minimize, equivalent, empty_automaton
from autostruct.automata.counting import count_words_upto
from autostruct.common.constants import POLYNOMIAL, DEGREE, PATTERNS
from autostruct.common.exceptions import GrowthCheckFailed, NotPolynomialGrowth
from autostruct.common.log import log
from autostruct.growth.pattern import BoundedPattern, exponent_count

CHECK_LENGTH = 16


class GrowthReport:

    def __init__(self, polynomial: bool, degree: typing.Optional[int] = None,
                 patterns: typing.Sequence[BoundedPattern] = ()):
        self._polynomial = polynomial
        self._degree = degree if polynomial else None
        self._patterns = list(patterns) if polynomial else []

    @property
    def polynomial(self) -> bool:
        return self._polynomial

    @property
    def degree(self) -> typing.Optional[int]:
        """Exponent d with count_words_upto(n) = Θ(n^d); None for exponential growth."""
        return self._degree

    @property
    def patterns(self) -> typing.List[BoundedPattern]:
        return list(self._patterns)

    def __repr__(self):
        return f"GrowthReport(polynomial={self._polynomial}, degree={self._degree}, patterns={self._patterns})"

    def to_json(self) -> dict:
        return {POLYNOMIAL: self._polynomial, DEGREE: self._degree,
                PATTERNS: [p.to_json() for p in self._patterns]}


class _CycleStructure:
    """Strongly connected components of a trim DFA, each cyclic one checked to be a single simple cycle."""

    def __init__(self, d: Automaton):
        self.dfa = d
        self.graph = d.graph()
        self.component = {}
        self.cyclic = {}
        # state -> (symbol, next state) along its cycle
        self.cycle_step = {}
        self.polynomial = True
        for i, members in enumerate(nx.strongly_connected_components(self.graph)):
            for q in members:
                self.component[q] = i
            inside = [(p, key, q) for p in members for _, q, key in self.graph.out_edges(p, keys=True)
                      if q in members]
            self.cyclic[i] = bool(inside)
            for p, key, q in inside:
                if p in self.cycle_step:
                    self.polynomial = False
                self.cycle_step[p] = (key, q)

    def is_cyclic(self, q: int) -> bool:
        return self.cyclic[self.component[q]]

    def path(self, source: int, target: int) -> typing.Tuple[int, ...]:
        """Symbol ids along the cycle from source to target."""
        symbols = []
        q = source
        while q != target:
            symbol, q = self.cycle_step[q]
            symbols.append(symbol)
        return tuple(symbols)

    def cycle(self, q: int) -> typing.Tuple[int, ...]:
        symbol, following = self.cycle_step[q]
        return (symbol,) + self.path(following, q)

    def members(self, q: int) -> typing.List[int]:
        c = self.component[q]
        return sorted(p for p, i in self.component.items() if i == c)

    def structural_degree(self) -> int:
        """Largest number of cyclic components on a path of the condensation from the initial state."""
        condensed = nx.condensation(nx.DiGraph(self.graph))
        mapping = condensed.graph["mapping"]
        weight = {}
        for node in condensed.nodes:
            q = next(iter(condensed.nodes[node]["members"]))
            weight[node] = 1 if self.is_cyclic(q) else 0
        best = {}
        for node in reversed(list(nx.topological_sort(condensed))):
            best[node] = weight[node] + max((best[s] for s in condensed.successors(node)), default=0)
        start = next(iter(self.dfa.initial))
        return best[mapping[start]]


def _trim_dfa(a: Automaton) -> Automaton:
    return minimize(determinize(a)).trim()


def _patterns(structure: _CycleStructure) -> typing.List[BoundedPattern]:
    """
    One pattern per choice of components, entry and exit states along runs of the trim DFA. A run
    determines its choices, so the patterns are pairwise disjoint and each is unambiguous.
    """
    d = structure.dfa
    tokens = d.alphabet.tokens
    patterns = []

    def walk(entry: int, prefixes: typing.List[Word], loops: typing.List[Word]):
        if structure.is_cyclic(entry):
            for x in structure.members(entry):
                here = prefixes[:-1] + [prefixes[-1] + tokens(structure.path(entry, x))]
                leave(x, here + [()], loops + [tokens(structure.cycle(x))])
        else:
            leave(entry, prefixes, loops)

    def leave(x: int, prefixes: typing.List[Word], loops: typing.List[Word]):
        if x in d.accepting:
            patterns.append(BoundedPattern(prefixes, loops))
        for symbol, targets in sorted(d.moves(x).items()):
            for y in targets:
                if structure.component[y] != structure.component[x]:
                    walk(y, prefixes[:-1] + [prefixes[-1] + tokens((symbol,))], loops)

    if d.accepting:
        walk(next(iter(d.initial)), [()], [])
    return patterns


def _certify(d: Automaton, patterns: typing.List[BoundedPattern]):
    union = regex.union(*[p.language(d.alphabet) for p in patterns]) if patterns else empty_automaton(d.alphabet)
    if not equivalent(union, d):
        raise GrowthCheckFailed("bounded patterns do not cover the language")


def _check_counts(d: Automaton, patterns: typing.List[BoundedPattern]):
    counts = count_words_upto(d, CHECK_LENGTH)
    for n in range(CHECK_LENGTH + 1):
        predicted = sum(exponent_count(p, n) for p in patterns)
        if predicted != counts[n]:
            raise GrowthCheckFailed(f"{counts[n]} words of length at most {n}, patterns predict {predicted}")


def classify_growth(a: Automaton) -> GrowthReport:
    """
    Polynomial iff every strongly connected component of the trim minimal DFA is a single simple cycle.
    The degree is the largest number of cyclic components on a run; it is checked against the exact
    word counts up to length 16.
    """
    d = _trim_dfa(a)
    if not d.accepting:
        return GrowthReport(True, 0, [])
    structure = _CycleStructure(d)
    if not structure.polynomial:
        log(logging.INFO, f"exponential growth: {d.state_count} states, a state lies on two cycles")
        return GrowthReport(False)
    degree = structure.structural_degree()
    patterns = _patterns(structure)
    if max((p.loop_count for p in patterns), default=0) != degree:
        raise GrowthCheckFailed(f"structural degree {degree} does not match the bounded patterns")
    _check_counts(d, patterns)
    log(logging.INFO, f"polynomial growth of degree {degree} with {len(patterns)} patterns")
    return GrowthReport(True, degree, patterns)


def bounded_decomposition(a: Automaton) -> typing.List[BoundedPattern]:
    d = _trim_dfa(a)
    if not d.accepting:
        return []
    structure = _CycleStructure(d)
    if not structure.polynomial:
        raise NotPolynomialGrowth("the language has exponential growth")
    patterns = _patterns(structure)
    _certify(d, patterns)
    return patterns
