import collections
import itertools
import logging
import typing

from autostruct.automata import regex
from autostruct.automata.automaton import Automaton, difference, intersect
from autostruct.automata.counting import count_words, enumerate_upto
from autostruct.common.constants import OMEGA, count_to_json
from autostruct.common.exceptions import ArityMismatch, NotEquivalence
from autostruct.common.log import log
from autostruct.eqstruct.descriptor import ClassMultiset, Count, EqDescriptor, class_count
from autostruct.presentation.builders import EQUIV
from autostruct.presentation.evaluator import count_witnesses
from autostruct.presentation.presentation import Presentation
from autostruct.relations.builtins import llex_order
from autostruct.relations.relation import RegularRelation, image, lift, project, to_language

PASS = "pass"
MISMATCHES = "mismatches"
OBSERVED = "observed"
SIZE = "size"
PREDICTED = "predicted"


def _equivalence(p: Presentation, relation: str) -> RegularRelation:
    r = p.relation(relation)
    if r.arity != 2:
        raise ArityMismatch(f"{relation} has arity {r.arity}, an equivalence is binary")
    return r


def empirical_multiset(p: Presentation, bound: int, relation: str = EQUIV) -> ClassMultiset:
    """
    Classes of the domain words of length ≤ bound. Each class is the exact image of its first word
    under the relation, so sizes are exact; a class with members longer than the bound is counted
    as truncated. Reflexivity and disjointness of the classes are checked on every word up to the bound.
    """
    r = _equivalence(p, relation)
    seen = set()
    sizes = collections.Counter()
    infinite = 0
    truncated = 0
    for word in enumerate_upto(p.domain, bound):
        if word in seen:
            continue
        members = image(r, regex.literal(p.base, word), 1)
        if not members.accepts(word):
            raise NotEquivalence(f"{relation} is not reflexive at {list(word)}")
        listed = enumerate_upto(members, bound)
        for other in listed:
            if other in seen:
                raise NotEquivalence(f"{list(other)} lies in two different classes")
        seen.update(listed)
        size = count_words(members)
        if size is None:
            infinite += 1
            continue
        sizes[size] += 1
        if size > len(listed):
            truncated += 1
    log(logging.INFO, f"{len(seen)} words up to length {bound}: {sum(sizes.values())} finite and {infinite} infinite classes")
    return ClassMultiset(dict(sizes), infinite, truncated)


def _representatives(p: Presentation, r: RegularRelation) -> Automaton:
    """Domain words that come first in their class in length-lexicographic order."""
    earlier = r.intersection(lift(llex_order(p.base, strict=True), 2, [1, 0]))
    return difference(p.domain, to_language(project(earlier, 1)))


def class_sizes(p: Presentation, sizes: typing.Iterable[int], relation: str = EQUIV) \
        -> typing.Tuple[typing.Dict[int, Count], Count]:
    """
    The exact number of classes of each given size, and the number of infinite classes, counted on
    the llex-least member of every class.
    """
    sizes = sorted(set(sizes))
    if any(type(k) is not int or k < 1 for k in sizes):
        raise ValueError("class sizes are positive integers")
    r = _equivalence(p, relation)
    representatives = _representatives(p, r)
    exact, infinite = count_witnesses(r, max(sizes, default=0) + 1)

    def classes(witnesses: RegularRelation) -> Count:
        total = count_words(intersect(representatives, to_language(witnesses)))
        return OMEGA if total is None else total

    return {k: classes(exact[k]) for k in sizes}, classes(infinite)


def predicted_sizes(d: EqDescriptor, bound: int) -> typing.Set[int]:
    """Class sizes d assigns to the index points with every coordinate ≤ bound."""
    values = set()
    for poly in d.polys:
        for x in itertools.product(range(bound + 1), repeat=poly.arity):
            value = poly(x)
            if value > 0:
                values.add(value)
    return values


class CheckReport:

    def __init__(self, observed: ClassMultiset, mismatches: typing.List[dict]):
        self.observed = observed
        self.mismatches = mismatches

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {PASS: self.passed, MISMATCHES: self.mismatches, OBSERVED: self.observed.to_json()}


def check(p: Presentation, d: EqDescriptor, bound: int, relation: str = EQUIV) -> CheckReport:
    """
    Compare p with d in both directions. The sizes compared are those of the classes met up to
    `bound` and those d assigns to index points up to `bound`; for each, the exact number of classes
    of p must equal d's count, and so must the number of infinite classes.
    """
    observed = empirical_multiset(p, bound, relation)
    sizes = set(observed.counts) | predicted_sizes(d, bound)
    counts, infinite = class_sizes(p, sizes, relation)
    mismatches = []
    for size, actual in counts.items():
        predicted = class_count(d, size)
        if actual != predicted:
            mismatches.append({SIZE: size, OBSERVED: count_to_json(actual), PREDICTED: count_to_json(predicted)})
    if infinite != d.infinite_classes:
        mismatches.append({SIZE: count_to_json(OMEGA), OBSERVED: count_to_json(infinite),
                           PREDICTED: count_to_json(d.infinite_classes)})
    return CheckReport(observed, mismatches)
