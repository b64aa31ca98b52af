import logging
import math
import typing

import networkx as nx

from autostruct.automata.automaton import Automaton, determinize, minimize, intersect, is_empty, is_finite
from autostruct.automata.counting import count_words
from autostruct.common.constants import OMEGA, EQ_RELATION
from autostruct.common.exceptions import ArityMismatch, CountingBudgetExceeded, InfiniteSection
from autostruct.common.log import log
from autostruct.common.settings import settings
from autostruct.presentation.formula import *
from autostruct.presentation.presentation import Presentation
from autostruct.relations.padded import padded
from autostruct.relations.relation import (RegularRelation, lift, project, image, from_language, to_language,
                                           validity_automaton, empty_relation, full_relation)

Value = typing.Union[bool, RegularRelation]


class Section:
    """Result of a subformula: the relation over `variables` (in that track order), or a truth value."""

    def __init__(self, variables: typing.Tuple[str, ...], value: Value):
        self.variables = tuple(variables)
        self.value = value

    def is_false(self) -> bool:
        if isinstance(self.value, bool):
            return not self.value
        return self.value.is_empty()


class PresentationEvaluator:
    """
    Evaluates FOC formulas over one presentation. Subformula results are memoised, so repeated
    subformulas (numerals, shared definitions) are built once.
    """

    def __init__(self, presentation: Presentation):
        self._p = presentation
        self._memo = {}
        self._rank = {}

    @property
    def presentation(self) -> Presentation:
        return self._p

    def _ordered(self, names) -> typing.Tuple[str, ...]:
        return tuple(sorted(set(names), key=lambda v: (self._rank.get(v, math.inf), v)))

    def _learn_ranks(self, formula: Formula):
        for v in formula.occurrences():
            self._rank.setdefault(v, len(self._rank))

    def _align(self, section: Section, variables: typing.Tuple[str, ...]) -> RegularRelation:
        """The section as a relation over `variables`, free tracks ranging over the domain."""
        if isinstance(section.value, bool):
            return self._p.domain_power(len(variables)) if section.value else _empty(self._p, len(variables))
        if section.variables == variables:
            return section.value
        track_map = [variables.index(v) for v in section.variables]
        lifted = lift(section.value, len(variables), track_map)
        added = [i for i, v in enumerate(variables) if v not in section.variables]
        return self._p.restrict(lifted, added)

    def cylinder(self, formula: Formula, variables: typing.Sequence[str]) -> RegularRelation:
        """The relation of `formula` over `variables` with the tracks it does not mention left free."""
        variables = tuple(variables)
        section = self.evaluate(formula)
        if isinstance(section.value, bool):
            return full_relation(self._p.base, len(variables)) if section.value else _empty(self._p, len(variables))
        if section.variables == variables:
            return section.value
        return lift(section.value, len(variables), [variables.index(v) for v in section.variables])

    def evaluate(self, formula: Formula) -> Section:
        self._learn_ranks(formula)
        cached = self._memo.get(formula)
        if cached is not None:
            return cached
        result = self._evaluate(formula)
        if not isinstance(result.value, bool):
            log(logging.DEBUG, f"eval {formula}: {result.value.acceptor.state_count} states")
        self._memo[formula] = result
        return result

    def _evaluate(self, formula: Formula) -> Section:
        if isinstance(formula, Truth):
            return Section((), formula.value)
        if isinstance(formula, Atom):
            return self._atom(formula)
        if isinstance(formula, Equal):
            if formula.left == formula.right:
                return Section((formula.left,), self._p.domain_relation())
            return self._atom(Atom(EQ_RELATION, [formula.left, formula.right]))
        if isinstance(formula, Comparison):
            raise MalformedTerm(f"order comparisons are not atoms of an automatic presentation: {formula}")
        if isinstance(formula, Not):
            return self._negate(self.evaluate(formula.body))
        if isinstance(formula, Binary):
            left, right = self.evaluate(formula.left), self.evaluate(formula.right)
            if formula.connective == Connective.AND:
                return self._combine(left, right, conjunction=True)
            if formula.connective == Connective.OR:
                return self._combine(left, right, conjunction=False)
            return self._combine(self._negate(left), right, conjunction=False)
        if isinstance(formula, Quantified):
            body = self.evaluate(formula.body)
            if formula.quantifier == Quantifier.EXISTS:
                return self._exists(formula.variable, body)
            if formula.quantifier == Quantifier.FORALL:
                return self._negate(self._exists(formula.variable, self._negate(body)))
            if formula.quantifier == Quantifier.INFINITELY_MANY:
                return self._infinitely_many(formula.variable, body)
            return self._modulo(formula.variable, body, formula.k, formula.m)
        raise ValueError(f"unsupported formula node {formula!r}")

    def _atom(self, atom: Atom) -> Section:
        self._p.check_arity(atom.relation, len(atom.arguments))
        relation = self._p.relation(atom.relation)
        variables = self._ordered(atom.arguments)
        if tuple(atom.arguments) == variables:
            return Section(variables, relation)
        return Section(variables, lift(relation, len(variables), [variables.index(a) for a in atom.arguments]))

    def _negate(self, section: Section) -> Section:
        if isinstance(section.value, bool):
            return Section((), not section.value)
        return Section(section.variables, self._p.restrict(section.value.complement()))

    def _combine(self, left: Section, right: Section, conjunction: bool) -> Section:
        if isinstance(left.value, bool) and isinstance(right.value, bool):
            return Section((), left.value and right.value if conjunction else left.value or right.value)
        for a, b in ((left, right), (right, left)):
            if isinstance(a.value, bool):
                if a.value == conjunction:
                    return b
                variables = b.variables
                return Section(variables, self._p.domain_power(len(variables)) if a.value else
                               _empty(self._p, len(variables)))
        variables = self._ordered(left.variables + right.variables)
        l, r = self._align(left, variables), self._align(right, variables)
        return Section(variables, l.intersection(r) if conjunction else l.union(r))

    def _exists(self, variable: str, body: Section) -> Section:
        if variable not in body.variables:
            return body
        if len(body.variables) == 1:
            return Section((), not body.value.is_empty())
        remaining = tuple(v for v in body.variables if v != variable)
        return Section(remaining, project(body.value, body.variables.index(variable)))

    def _move_last(self, variable: str, body: Section) -> typing.Tuple[typing.Tuple[str, ...], RegularRelation]:
        others = tuple(v for v in body.variables if v != variable)
        order = others + (variable,)
        return others, self._align(body, order)

    def _infinitely_many(self, variable: str, body: Section) -> Section:
        if variable not in body.variables:
            if is_finite(self._p.domain):
                return Section((), False)
            return body
        if len(body.variables) == 1:
            return Section((), not is_finite(body.value.acceptor))
        others, relation = self._move_last(variable, body)
        witnesses = relation.acceptor.trim()
        bound = witnesses.state_count
        longer = _long_witness(relation, bound)
        log(logging.DEBUG, f"Einf {variable}: long witnesses beyond {bound} columns")
        return self._exists(variable, Section(others + (variable,), longer))

    def _modulo(self, variable: str, body: Section, k: int, m: int) -> Section:
        if variable not in body.variables:
            # every element witnesses a true body, none a false one
            size = count_words(self._p.domain)
            if size is None:
                if not body.is_false():
                    _report_infinite(f"Emod {k},{m} {variable}: the whole infinite domain is counted")
                when_true = False
            else:
                when_true = size % m == k
            holds = self._combine(body, Section((), when_true), conjunction=True)
            fails = self._combine(self._negate(body), Section((), k == 0), conjunction=True)
            return self._combine(holds, fails, conjunction=False)
        if len(body.variables) == 1:
            size = count_words(body.value.acceptor)
            if size is None:
                _report_infinite(f"Emod {k},{m} {variable}: the section is infinite")
                return Section((), False)
            return Section((), size % m == k)
        others, relation = self._move_last(variable, body)
        log(logging.INFO, f"Emod {k},{m} {variable}: exact counting construction")
        counted, infinite = _count_modulo(relation, k, m)
        counted = self._p.restrict(counted)
        if not self._p.restrict(infinite).is_empty():
            _report_infinite(f"Emod {k},{m} {variable}: assignments with infinitely many witnesses are excluded")
        return Section(others, counted)


def _empty(p: Presentation, n: int) -> RegularRelation:
    return empty_relation(p.base, n)


def _report_infinite(msg: str):
    if settings.strict_counting:
        raise InfiniteSection(msg)
    log(logging.WARNING, msg)


def _long_witness(relation: RegularRelation, bound: int) -> RegularRelation:
    """Tuples of `relation` whose last track runs more than `bound` columns past all other tracks."""
    pa = relation.padded
    n = relation.arity
    alone = [all(d == pa.pad_digit for d in pa.digits(sym)[:n - 1]) for sym in range(len(pa))]
    transitions = []
    for count in range(bound + 2):
        for sym, is_alone in enumerate(alone):
            if is_alone:
                transitions.append((count, sym, min(count + 1, bound + 1)))
            elif count == 0:
                transitions.append((0, sym, 0))
    counter = Automaton(pa.alphabet, bound + 2, [0], [bound + 1], transitions)
    return RegularRelation(n, relation.base, intersect(relation.acceptor, counter)).minimized()


def _tails(a: Automaton, tail_symbols: typing.Sequence[int]) -> typing.Dict[int, object]:
    """
    For every state q of the DFA `a`: the number of words readable from q through `tail_symbols`
    alone that end in an accepting state, or OMEGA when there are infinitely many.
    """
    g = nx.DiGraph()
    g.add_nodes_from(range(a.state_count))
    for q in range(a.state_count):
        for sym in tail_symbols:
            t = a.step(q, sym)
            if t != -1:
                g.add_edge(q, t)
    productive = set(a.accepting)
    for f in a.accepting:
        productive |= nx.ancestors(g, f)
    cyclic = set()
    sub = g.subgraph(productive)
    for component in nx.strongly_connected_components(sub):
        if len(component) > 1 or any(sub.has_edge(q, q) for q in component):
            cyclic |= component
    infinite = set(cyclic)
    for q in cyclic:
        infinite |= nx.ancestors(sub, q)
    counts = {}
    for q in reversed(list(nx.topological_sort(sub.subgraph(productive - infinite)))):
        total = 1 if q in a.accepting else 0
        for sym in tail_symbols:
            t = a.step(q, sym)
            if t != -1 and t in productive:
                total += counts[t]
        counts[q] = total
    for q in range(a.state_count):
        if q in infinite:
            counts[q] = OMEGA
        elif q not in productive:
            counts[q] = 0
    return counts


def _count_vectors(relation: RegularRelation, reduce: typing.Callable[[int], int], budget_hint: str):
    """
    Count-vector automaton over the first n−1 tracks of `relation`: each state maps (witness state,
    witness padded) pairs to a number of witness prefixes, kept small by `reduce` (a homomorphism of
    + and ·). Returns the alphabet of the first n−1 tracks, the state count, the transitions and, per
    state, the reduced witness count or None when it is infinite.
    """
    n = relation.arity
    a = minimize(determinize(relation.acceptor)).trim()
    pa, xa = relation.padded, padded(relation.base, n - 1)
    pad = pa.pad_digit
    letters = range(len(relation.base))
    tail_symbols = [pa.encode((pad,) * (n - 1) + (b,)) for b in letters]
    tails = _tails(a, tail_symbols)

    def advance(vector, x_sym):
        column = xa.digits(x_sym)
        following = {}
        for (q, padded_y), count in vector:
            choices = [pad] if padded_y else list(letters) + [pad]
            for b in choices:
                sym = pa.encode(column + (b,))
                t = a.step(q, sym)
                if t == -1:
                    continue
                key = (t, padded_y or b == pad)
                following[key] = reduce(following.get(key, 0) + count)
        return tuple(sorted(following.items()))

    def total(vector):
        result = 0
        for (q, padded_y), count in vector:
            if padded_y:
                result += count if q in a.accepting else 0
            elif tails[q] is OMEGA:
                return None
            else:
                result += count * tails[q]
        return reduce(result)

    start = (((next(iter(a.initial)), False), reduce(1)),)
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        for x_sym in range(len(xa)):
            target = advance(order[i], x_sym)
            j = index.get(target)
            if j is None:
                if len(order) >= settings.counting_state_budget:
                    raise CountingBudgetExceeded(
                        f"witness counting exceeded {settings.counting_state_budget} states; {budget_hint}")
                j = index[target] = len(order)
                order.append(target)
            transitions.append((i, x_sym, j))
        i += 1
    log(logging.INFO, f"witness counting: {len(order)} count vectors")
    return xa, len(order), transitions, [total(v) for v in order]


def _accepting(relation: RegularRelation, vectors, accepting) -> RegularRelation:
    xa, state_count, transitions, _ = vectors
    n = relation.arity - 1
    a = Automaton(xa.alphabet, state_count, [0], accepting, transitions, deterministic=True)
    return RegularRelation(n, relation.base, intersect(a, validity_automaton(relation.base, n))).minimized()


def _count_modulo(relation: RegularRelation, k: int, m: int) -> typing.Tuple[RegularRelation, RegularRelation]:
    """
    Exact automaton for {x̄ : |{y : (x̄, y) ∈ relation}| ≡ k mod m}, the counted track being the last one.
    The second result holds the assignments whose witness set is infinite.
    """
    n = relation.arity
    if relation.is_empty():
        nothing = empty_relation(relation.base, n - 1)
        return (full_relation(relation.base, n - 1) if k == 0 else nothing), nothing
    vectors = _count_vectors(relation, lambda c: c % m, "count single assignments with count_section instead")
    totals = vectors[-1]
    counted = [j for j, t in enumerate(totals) if t is not None and t == k]
    infinite = [j for j, t in enumerate(totals) if t is None]
    return _accepting(relation, vectors, counted), _accepting(relation, vectors, infinite)


def count_witnesses(relation: RegularRelation, cap: int) -> typing.Tuple[typing.Dict[int, RegularRelation],
                                                                          RegularRelation]:
    """
    Splits the first n−1 tracks by the number of witnesses on the last track: entry c < cap of the
    first result holds the x̄ with exactly c witnesses, entry cap those with at least cap finitely
    many; the second result holds the x̄ with infinitely many.
    """
    if type(cap) is not int or cap < 1:
        raise ValueError("the witness cap must be a positive integer")
    if relation.arity < 2:
        raise ArityMismatch("witnesses are counted on the last of at least two tracks")
    n = relation.arity
    if relation.is_empty():
        nothing = empty_relation(relation.base, n - 1)
        return {c: full_relation(relation.base, n - 1) if c == 0 else nothing for c in range(cap + 1)}, nothing
    vectors = _count_vectors(relation, lambda c: min(c, cap), "lower the cap")
    totals = vectors[-1]
    exact = {c: _accepting(relation, vectors, [j for j, t in enumerate(totals) if t == c]) for c in range(cap + 1)}
    return exact, _accepting(relation, vectors, [j for j, t in enumerate(totals) if t is None])


def eval(p: Presentation, formula: Formula, variables: typing.Sequence[str] = None,
         evaluator: PresentationEvaluator = None) -> Value:
    """
    The relation defined by `formula` in `p`, with tracks in the order of `variables`
    (default: free variables by first occurrence). Sentences evaluate to a bool.
    """
    evaluator = evaluator or PresentationEvaluator(p)
    free = formula.free_variables()
    variables = tuple(free if variables is None else variables)
    missing = set(free) - set(variables)
    if missing:
        raise ArityMismatch(f"free variables {sorted(missing)} are not among the requested tracks")
    if len(set(variables)) != len(variables):
        raise ArityMismatch("requested tracks repeat a variable")
    section = evaluator.evaluate(formula)
    if not variables:
        return bool(section.value) if isinstance(section.value, bool) else not section.value.is_empty()
    return evaluator._align(section, variables)


def decide(p: Presentation, sentence: Formula, evaluator: PresentationEvaluator = None) -> bool:
    free = sentence.free_variables()
    if free:
        raise ArityMismatch(f"a sentence has no free variables, found {free}")
    return eval(p, sentence, (), evaluator)


def count_section(p: Presentation, formula: Formula, variable: str, assignment: typing.Mapping[str, typing.Any],
                  evaluator: PresentationEvaluator = None):
    """
    |{y : p ⊨ formula(ā, y)}| for a single assignment ā of the other free variables, or OMEGA.
    This is the pointwise way to evaluate a modulo quantifier when the exact construction is too large.
    """
    others = [v for v in formula.free_variables() if v != variable]
    if set(others) != set(assignment):
        raise ArityMismatch(f"assignment must fix exactly {others}")
    relation = eval(p, formula, others + [variable], evaluator)
    if not others:
        size = count_words(to_language(relation))
    else:
        point = tuple_relation(p, [assignment[v] for v in others])
        size = count_words(image(relation, point, len(others)))
    return OMEGA if size is None else size


def tuple_relation(p: Presentation, words: typing.Sequence) -> RegularRelation:
    """The single tuple (w₀, ..., wₖ₋₁) as a k-ary relation."""
    pa = padded(p.base, len(words))
    ids = pa.convolve_ids(words)
    a = Automaton(pa.alphabet, len(ids) + 1, [0], [len(ids)], [(i, s, i + 1) for i, s in enumerate(ids)])
    return RegularRelation(len(words), p.base, a)
