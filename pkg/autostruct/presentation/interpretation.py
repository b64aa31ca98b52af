import json
import logging
import typing

from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import relabel
from autostruct.common.constants import DOMAIN, RELATIONS
from autostruct.common.exceptions import AlphabetMismatch, ArityMismatch, EmptyDomain, SerializationError, \
    UnknownRelation
from autostruct.common.log import log
from autostruct.presentation.evaluator import PresentationEvaluator, eval
from autostruct.presentation.formula import *
from autostruct.presentation.presentation import Presentation
from autostruct.relations.padded import padded
from autostruct.relations.relation import RegularRelation, lift, to_language

DIMENSION = "dimension"
VARIABLES = "variables"
FORMULA = "formula"
DEFINITIONS = "definitions"


class Interpretation:
    """
    A k-dimensional interpretation: δ defines the domain on k-tuples, and each target relation R of
    arity n is defined by a formula whose variables, in order, are the k coordinates of each of the n
    arguments. Definitions name regular relations over the source base, definable in the source
    structure, that the formulas may use as extra atoms.
    """

    def __init__(self, dimension: int, domain_variables: typing.Sequence[str], domain: Formula,
                 relations: typing.Mapping[str, typing.Tuple[typing.Sequence[str], Formula]],
                 definitions: typing.Mapping[str, RegularRelation] = None):
        self.dimension = dimension
        self._definitions = dict(definitions or {})
        self._domain_variables = tuple(domain_variables)
        self._domain = domain
        self._relations = {name: (tuple(vs), f) for name, (vs, f) in relations.items()}
        if len(self._domain_variables) != dimension:
            raise ArityMismatch(f"domain formula needs {dimension} variables")
        if not set(domain.free_variables()) <= set(self._domain_variables):
            raise ArityMismatch("domain formula has free variables outside its variable list")
        for name, (vs, f) in self._relations.items():
            if not vs or len(vs) % dimension:
                raise ArityMismatch(f"relation {name} needs a multiple of {dimension} variables")
            if not set(f.free_variables()) <= set(vs):
                raise ArityMismatch(f"formula of {name} has free variables outside its variable list")

    @property
    def dimension(self) -> int:
        return self._dimension

    @dimension.setter
    def dimension(self, value: int):
        if type(value) is not int or value < 1:
            raise ValueError("dimension must be a positive integer")
        self._dimension = value

    @property
    def domain_variables(self) -> typing.Tuple[str, ...]:
        return self._domain_variables

    @property
    def domain(self) -> Formula:
        return self._domain

    @property
    def relations(self) -> typing.Dict[str, typing.Tuple[typing.Tuple[str, ...], Formula]]:
        return dict(self._relations)

    @property
    def definitions(self) -> typing.Dict[str, RegularRelation]:
        return dict(self._definitions)

    def arity(self, name: str) -> int:
        return len(self._relations[name][0]) // self._dimension

    def relativize(self, sentence: Formula) -> Formula:
        """
        Translate a formula over the target signature into one over the source signature: each target
        variable x becomes x_0..x_{k-1}, quantifiers are relativised to δ, atoms are replaced by their
        defining formulas.
        """
        fresh = Fresh("_r")
        return self._relativize(sentence, fresh)

    def _coordinates(self, variable: str) -> typing.List[str]:
        if self._dimension == 1:
            return [variable]
        return [f"{variable}_{i}" for i in range(self._dimension)]

    def _instantiate(self, variables, formula: Formula, arguments, fresh: Fresh) -> Formula:
        mapping = {}
        for i, argument in enumerate(arguments):
            for j, coordinate in enumerate(self._coordinates(argument)):
                mapping[variables[i * self._dimension + j]] = coordinate
        return formula.substitute(mapping, fresh)

    def _relativize(self, formula: Formula, fresh: Fresh) -> Formula:
        if isinstance(formula, Truth):
            return formula
        if isinstance(formula, Atom):
            if formula.relation not in self._relations:
                raise UnknownRelation(f"relation {formula.relation!r} is not interpreted")
            variables, definition = self._relations[formula.relation]
            if len(formula.arguments) * self._dimension != len(variables):
                raise ArityMismatch(f"relation {formula.relation} used with {len(formula.arguments)} arguments")
            return self._instantiate(variables, definition, formula.arguments, fresh)
        if isinstance(formula, Equal):
            return conj(*[Equal(a, b) for a, b in zip(self._coordinates(formula.left),
                                                      self._coordinates(formula.right))])
        if isinstance(formula, Not):
            return Not(self._relativize(formula.body, fresh))
        if isinstance(formula, Binary):
            return Binary(formula.connective, self._relativize(formula.left, fresh),
                          self._relativize(formula.right, fresh))
        if isinstance(formula, Quantified):
            coordinates = self._coordinates(formula.variable)
            guard = self._instantiate(self._domain_variables, self._domain, [formula.variable], fresh)
            body = self._relativize(formula.body, fresh)
            if formula.quantifier == Quantifier.EXISTS:
                return exists(coordinates, conj(guard, body))
            if formula.quantifier == Quantifier.FORALL:
                return forall(coordinates, implies(guard, body))
            if self._dimension > 1:
                raise ValueError("counting quantifiers relativise only through one-dimensional interpretations")
            return Quantified(formula.quantifier, formula.variable, conj(guard, body), formula.k, formula.m)
        raise MalformedTerm(f"cannot relativise {formula!r}")

    def to_json(self) -> dict:
        data = {
            DIMENSION: self._dimension,
            DOMAIN: {VARIABLES: list(self._domain_variables), FORMULA: str(self._domain)},
            RELATIONS: {name: {VARIABLES: list(vs), FORMULA: str(f)} for name, (vs, f) in sorted(self._relations.items())},
        }
        if self._definitions:
            data[DEFINITIONS] = {name: r.to_json() for name, r in sorted(self._definitions.items())}
        return data

    @staticmethod
    def from_json(data: dict) -> "Interpretation":
        try:
            relations = {name: (entry[VARIABLES], parse(entry[FORMULA])) for name, entry in data[RELATIONS].items()}
            definitions = {name: RegularRelation.from_json(entry) for name, entry in data.get(DEFINITIONS, {}).items()}
            return Interpretation(data[DIMENSION], data[DOMAIN][VARIABLES], parse(data[DOMAIN][FORMULA]), relations,
                                  definitions)
        except (KeyError, TypeError) as e:
            raise SerializationError(f"malformed interpretation JSON: {e}")

    @staticmethod
    def loads(text: str) -> "Interpretation":
        try:
            return Interpretation.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise SerializationError(f"malformed interpretation JSON: {e}")


def _regroup(relation: RegularRelation, k: int, base: Alphabet) -> RegularRelation:
    """Read a k·n-track relation as an n-track relation over the alphabet of k-track columns."""
    n = relation.arity // k
    source, target, coordinates = relation.padded, padded(base, n), padded(relation.base, k)
    mapping = []
    for sym in range(len(source)):
        digits = source.digits(sym)
        column = []
        for i in range(n):
            group = digits[i * k:(i + 1) * k]
            column.append(target.pad_digit if coordinates.is_pad_column(group) else coordinates.encode(group))
        mapping.append(target.encode(column))
    return RegularRelation(n, base, relabel(relation.acceptor, target.alphabet, lambda s: mapping[s]))


def _expanded(p: Presentation, definitions: typing.Mapping[str, RegularRelation]) -> Presentation:
    """p with the definitions added as relations, cut down to its domain."""
    if not definitions:
        return p
    for name, r in definitions.items():
        if r.base != p.base:
            raise AlphabetMismatch(f"definition {name} is not over the base alphabet of the presentation")
        if name in p.relations:
            raise ArityMismatch(f"definition {name} clashes with a relation of the presentation")
    return p.with_relations({name: p.restrict(r) for name, r in definitions.items()})


def apply_interpretation(p: Presentation, interpretation: Interpretation) -> Presentation:
    k = interpretation.dimension
    p = _expanded(p, interpretation.definitions)
    evaluator = PresentationEvaluator(p)
    domain = eval(p, interpretation.domain, interpretation.domain_variables, evaluator)
    if domain.is_empty():
        raise EmptyDomain("the interpretation's domain formula defines the empty set")
    base = p.base if k == 1 else Alphabet(padded(p.base, k).alphabet.symbols)
    new_domain = _regroup(domain, k, base)
    relations = {}
    for name, (variables, formula) in sorted(interpretation.relations.items()):
        n = len(variables) // k
        # every track lies in some argument's block, so the domain blocks also confine the free tracks
        defined = evaluator.cylinder(formula, variables)
        for i in range(n):
            defined = defined.intersection(lift(domain, k * n, list(range(i * k, (i + 1) * k))))
        relations[name] = _regroup(defined, k, base).minimized()
        log(logging.INFO, f"interpreted {name}: {relations[name].acceptor.state_count} states")
    return Presentation(base, to_language(new_domain), relations)
