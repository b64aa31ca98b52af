import logging
import typing

from autostruct.automata import regex
from autostruct.automata.automaton import Automaton, minimize, determinize, union, empty_automaton
from autostruct.automata.counting import count_words
from autostruct.common.constants import OMEGA, count_to_json
from autostruct.common.exceptions import ArityMismatch
from autostruct.common.log import log
from autostruct.presentation.evaluator import PresentationEvaluator, eval
from autostruct.presentation.formula import Formula
from autostruct.presentation.presentation import Presentation
from autostruct.relations.relation import RegularRelation, from_language, image, lift


class ReachSet:
    """N_φ(U, 0) ⊆ N_φ(U, 1) ⊆ ... ⊆ N_φ(U, steps): the final set and the size after every step."""

    def __init__(self, steps: int, acceptor: Automaton, sizes: typing.Sequence):
        self.steps = steps
        self.acceptor = acceptor
        self.sizes = list(sizes)

    def to_json(self) -> dict:
        return {"steps": self.steps, "sizes": [count_to_json(s) for s in self.sizes]}

    def __repr__(self):
        return f"ReachSet(steps={self.steps}, sizes={self.sizes})"


def _size(a: Automaton):
    n = count_words(a)
    return OMEGA if n is None else n


def _tuples(current: Automaton, k: int) -> typing.Union[Automaton, RegularRelation]:
    if k == 1:
        return current
    unary = from_language(current)
    result = lift(unary, k, [0])
    for i in range(1, k):
        result = result.intersection(lift(unary, k, [i]))
    return result


def reach(p: Presentation, formula: Formula, inputs: typing.Sequence[str], output: str,
          start: typing.Iterable, steps: int) -> ReachSet:
    """
    Elements reachable from `start` in at most `steps` applications of formula(x̄; y): each step adds
    every y with formula(ā, y) for a tuple ā of already reached elements.
    """
    if steps < 0:
        raise ValueError("number of steps must be a natural number")
    inputs = list(inputs)
    if not inputs or output in inputs:
        raise ArityMismatch("reach needs at least one input variable and a distinct output variable")
    relation = eval(p, formula, inputs + [output], PresentationEvaluator(p))
    words = [p.base.as_word(w) for w in start]
    for w in words:
        if not p.contains(w):
            raise ValueError(f"start element {w!r} is not in the domain")
    if words:
        current = minimize(determinize(regex.union(*[regex.literal(p.base, w) for w in words])))
    else:
        current = empty_automaton(p.base)
    sizes = [_size(current)]
    for i in range(steps):
        if sizes[-1] == 0:
            sizes.append(0)
            continue
        found = image(relation, _tuples(current, len(inputs)), len(inputs))
        current = minimize(determinize(union(current, found)))
        sizes.append(_size(current))
        log(logging.DEBUG, f"reach step {i + 1}: {sizes[-1]} elements")
    return ReachSet(steps, current, sizes)


def is_poly_growth(p: Presentation) -> "GrowthReport":
    from autostruct.growth.growth import classify_growth
    return classify_growth(p.domain)
