import json
import typing

from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import Automaton, is_empty, includes, canonical
from autostruct.common.constants import *
from autostruct.common.exceptions import ArityMismatch, EmptyDomain, SerializationError, UnknownRelation, \
    ValidationFailure
from autostruct.relations.builtins import equality, llex_order, equal_length
from autostruct.relations.relation import RegularRelation, from_language, lift


class Presentation:
    """
    An automatic presentation: a regular domain over `base` and named regular relations on it.
    The builtin relations eq, llex and lenEq are available on every presentation without being stored.
    """

    def __init__(self, base: Alphabet, domain: Automaton, relations: typing.Mapping[str, RegularRelation] = None,
                 validate: bool = True):
        if domain.alphabet != base:
            raise ValidationFailure("domain automaton is not over the presentation base")
        if is_empty(domain):
            raise EmptyDomain("the domain of a presentation must not be empty")
        self._base = base
        self._domain = domain
        self._relations = dict(relations or {})
        self._cylinders = {}
        self._tracks = {}
        self._builtins = {}
        for name, r in self._relations.items():
            if r.base != base:
                raise ValidationFailure(f"relation {name} is over a different base alphabet")
            if validate and not includes(self.domain_power(r.arity).acceptor, r.acceptor):
                raise ValidationFailure(f"relation {name} relates words outside the domain")

    @property
    def base(self) -> Alphabet:
        return self._base

    @property
    def domain(self) -> Automaton:
        return self._domain

    @property
    def relations(self) -> typing.Dict[str, RegularRelation]:
        return dict(self._relations)

    def relation_names(self) -> typing.List[str]:
        return sorted(self._relations)

    def __repr__(self):
        return f"Presentation(base={list(self._base)!r}, relations={self.relation_names()})"

    def domain_relation(self) -> RegularRelation:
        return self.domain_power(1)

    def domain_power(self, n: int) -> RegularRelation:
        """D^n as an n-track relation."""
        if n not in self._cylinders:
            result = self.domain_track(n, 0)
            for i in range(1, n):
                result = result.intersection(self.domain_track(n, i))
            self._cylinders[n] = result
        return self._cylinders[n]

    def domain_track(self, n: int, i: int) -> RegularRelation:
        """The n-track relation whose track i lies in the domain; the other tracks are free."""
        if (n, i) not in self._tracks:
            unary = from_language(self._domain).minimized()
            self._tracks[(n, i)] = unary if n == 1 else lift(unary, n, [i])
        return self._tracks[(n, i)]

    def restrict(self, r: RegularRelation, tracks: typing.Iterable[int] = None) -> RegularRelation:
        """r with the given tracks (all by default) cut down to the domain, one track at a time."""
        for i in range(r.arity) if tracks is None else tracks:
            r = r.intersection(self.domain_track(r.arity, i))
        return r

    def relation(self, name: str) -> RegularRelation:
        if name in self._relations:
            return self._relations[name]
        if name in (EQ_RELATION, LLEX_RELATION, LEN_EQ_RELATION):
            if name not in self._builtins:
                builder = {EQ_RELATION: equality, LLEX_RELATION: llex_order, LEN_EQ_RELATION: equal_length}[name]
                self._builtins[name] = builder(self._base).intersection(self.domain_power(2))
            return self._builtins[name]
        raise UnknownRelation(f"relation {name!r} is not part of the presentation")

    def arity(self, name: str) -> int:
        return self.relation(name).arity

    def check_arity(self, name: str, arity: int):
        if self.arity(name) != arity:
            raise ArityMismatch(f"relation {name} has arity {self.arity(name)}, used with {arity} arguments")

    def contains(self, word) -> bool:
        return self._domain.accepts(word)

    def with_relations(self, relations: typing.Mapping[str, RegularRelation]) -> "Presentation":
        merged = dict(self._relations)
        merged.update(relations)
        return Presentation(self._base, self._domain, merged)

    def to_json(self) -> dict:
        return {
            BASE: self._base.to_json(),
            DOMAIN: canonical(self._domain).trim().to_json(),
            RELATIONS: {name: {ARITY: r.arity, ACCEPTOR: r.acceptor.to_json()}
                        for name, r in sorted(self._relations.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), ensure_ascii=False)

    @staticmethod
    def from_json(data: dict) -> "Presentation":
        try:
            base = Alphabet.from_json(data[BASE])
            relations = {name: RegularRelation(entry[ARITY], base, Automaton.from_json(entry[ACCEPTOR]))
                         for name, entry in data[RELATIONS].items()}
            return Presentation(base, Automaton.from_json(data[DOMAIN]), relations)
        except (KeyError, TypeError, AttributeError) as e:
            raise SerializationError(f"malformed presentation JSON: {e}")

    @staticmethod
    def loads(text: str) -> "Presentation":
        try:
            return Presentation.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise SerializationError(f"malformed presentation JSON: {e}")
