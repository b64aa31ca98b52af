import json
import logging
import typing
from collections import deque

import networkx as nx

from autostruct.automata.alphabet import Alphabet, Word
from autostruct.common.constants import *
from autostruct.common.exceptions import AlphabetMismatch, NotDeterministic, SerializationError
from autostruct.common.log import log

Transition = typing.Tuple[int, int, int]


class Automaton:
    """
    Finite word acceptor over an indexed alphabet. Immutable: every operation returns a fresh value.
    States are 0..state_count-1, symbols are alphabet indices.
    """

    def __init__(self, alphabet: Alphabet, state_count: int, initial: typing.Iterable[int],
                 accepting: typing.Iterable[int], transitions: typing.Iterable[Transition],
                 deterministic: bool = False):
        if type(alphabet) is not Alphabet:
            raise ValueError("alphabet must be of type Alphabet")
        if type(state_count) is not int or state_count < 0:
            raise ValueError("state count must be a natural number")
        self._alphabet = alphabet
        self._state_count = state_count
        self._initial = frozenset(initial)
        self._accepting = frozenset(accepting)
        for q in self._initial | self._accepting:
            if not 0 <= q < state_count:
                raise ValueError(f"state {q} out of range")
        delta = [dict() for _ in range(state_count)]
        k = len(alphabet)
        for p, a, q in transitions:
            if not (0 <= p < state_count and 0 <= q < state_count):
                raise ValueError(f"transition ({p},{a},{q}) uses an unknown state")
            if not 0 <= a < k:
                raise ValueError(f"transition ({p},{a},{q}) uses an unknown symbol")
            delta[p].setdefault(a, set()).add(q)
        self._delta = tuple({a: frozenset(t) for a, t in d.items()} for d in delta)
        if deterministic:
            if len(self._initial) != 1:
                raise NotDeterministic("a deterministic automaton needs exactly one initial state")
            if any(len(t) > 1 for d in self._delta for t in d.values()):
                raise NotDeterministic("a deterministic automaton has at most one transition per state and symbol")
        self._deterministic = deterministic

    @property
    def alphabet(self) -> Alphabet:
        return self._alphabet

    @property
    def state_count(self) -> int:
        return self._state_count

    @property
    def initial(self) -> typing.FrozenSet[int]:
        return self._initial

    @property
    def accepting(self) -> typing.FrozenSet[int]:
        return self._accepting

    @property
    def deterministic(self) -> bool:
        return self._deterministic

    @property
    def transitions(self) -> typing.List[Transition]:
        return sorted((p, a, q) for p, d in enumerate(self._delta) for a, t in d.items() for q in t)

    def moves(self, state: int) -> typing.Dict[int, typing.FrozenSet[int]]:
        return self._delta[state]

    def successors(self, state: int, symbol: int) -> typing.FrozenSet[int]:
        return self._delta[state].get(symbol, frozenset())

    def step(self, state: int, symbol: int) -> int:
        """Deterministic successor, or -1 when the transition is missing."""
        targets = self._delta[state].get(symbol)
        if not targets:
            return -1
        return next(iter(targets))

    def is_complete(self) -> bool:
        k = len(self._alphabet)
        return all(len(d) == k for d in self._delta)

    def __repr__(self):
        return (f"Automaton(states={self._state_count}, symbols={len(self._alphabet)}, "
                f"deterministic={self._deterministic})")

    def __eq__(self, other):
        return (isinstance(other, Automaton) and self._alphabet == other._alphabet
                and self._state_count == other._state_count and self._initial == other._initial
                and self._accepting == other._accepting and self._deterministic == other._deterministic
                and self._delta == other._delta)

    def __hash__(self):
        return hash((self._alphabet, self._state_count, self._initial, self._accepting))

    def reachable(self) -> typing.Set[int]:
        seen = set(self._initial)
        queue = deque(self._initial)
        while queue:
            p = queue.popleft()
            for targets in self._delta[p].values():
                for q in targets:
                    if q not in seen:
                        seen.add(q)
                        queue.append(q)
        return seen

    def coreachable(self) -> typing.Set[int]:
        back = [set() for _ in range(self._state_count)]
        for p, d in enumerate(self._delta):
            for targets in d.values():
                for q in targets:
                    back[q].add(p)
        seen = set(self._accepting)
        queue = deque(self._accepting)
        while queue:
            q = queue.popleft()
            for p in back[q]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return seen

    def useful(self) -> typing.Set[int]:
        return self.reachable() & self.coreachable()

    def trim(self) -> "Automaton":
        """Restrict to reachable and co-reachable states; the empty language keeps one dead initial state."""
        keep = sorted(self.useful())
        if not keep:
            return empty_automaton(self._alphabet)
        rename = {q: i for i, q in enumerate(keep)}
        transitions = [(rename[p], a, rename[q]) for p in keep for a, t in self._delta[p].items()
                       for q in t if q in rename]
        return Automaton(self._alphabet, len(keep), [rename[q] for q in self._initial if q in rename],
                         [rename[q] for q in self._accepting if q in rename], transitions,
                         deterministic=self._deterministic)

    def accepts(self, word) -> bool:
        current = set(self._initial)
        for a in self._alphabet.ids(word):
            current = {q for p in current for q in self._delta[p].get(a, ())}
            if not current:
                return False
        return bool(current & self._accepting)

    def accepts_ids(self, ids: typing.Iterable[int]) -> bool:
        current = set(self._initial)
        for a in ids:
            current = {q for p in current for q in self._delta[p].get(a, ())}
            if not current:
                return False
        return bool(current & self._accepting)

    def graph(self, states: typing.Iterable[int] = None) -> nx.MultiDiGraph:
        """Transition graph restricted to `states`; parallel edges carry distinct symbols."""
        states = set(range(self._state_count)) if states is None else set(states)
        g = nx.MultiDiGraph()
        g.add_nodes_from(states)
        for p in states:
            for a, targets in self._delta[p].items():
                for q in targets:
                    if q in states:
                        g.add_edge(p, q, key=a)
        return g

    def to_json(self) -> dict:
        return {
            ALPHABET: self._alphabet.to_json(),
            STATES: self._state_count,
            INITIAL: sorted(self._initial),
            ACCEPTING: sorted(self._accepting),
            TRANSITIONS: [list(t) for t in self.transitions],
            DETERMINISTIC: self._deterministic,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), ensure_ascii=False)

    @staticmethod
    def from_json(data: dict) -> "Automaton":
        try:
            return Automaton(Alphabet.from_json(data[ALPHABET]), data[STATES], data[INITIAL], data[ACCEPTING],
                             [tuple(t) for t in data[TRANSITIONS]], deterministic=bool(data[DETERMINISTIC]))
        except (KeyError, TypeError) as e:
            raise SerializationError(f"malformed automaton JSON: {e}")

    @staticmethod
    def loads(text: str) -> "Automaton":
        try:
            return Automaton.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise SerializationError(f"malformed automaton JSON: {e}")


def empty_automaton(alphabet: Alphabet) -> Automaton:
    return Automaton(alphabet, 1, [0], [], [], deterministic=True)


def universal_automaton(alphabet: Alphabet) -> Automaton:
    return Automaton(alphabet, 1, [0], [0], [(0, a, 0) for a in range(len(alphabet))], deterministic=True)


def _check_alphabets(a: Automaton, b: Automaton):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {a.alphabet!r} vs {b.alphabet!r}")


def determinize(a: Automaton) -> Automaton:
    """Subset construction over reachable subsets; the result is complete (the empty subset is the sink)."""
    k = len(a.alphabet)
    start = frozenset(a.initial)
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        subset = order[i]
        moves = {}
        for p in subset:
            for sym, targets in a.moves(p).items():
                moves.setdefault(sym, set()).update(targets)
        for sym in range(k):
            target = frozenset(moves.get(sym, ()))
            j = index.get(target)
            if j is None:
                j = index[target] = len(order)
                order.append(target)
            transitions.append((i, sym, j))
        i += 1
    accepting = [j for j, subset in enumerate(order) if subset & a.accepting]
    log(logging.DEBUG, f"determinize: {a.state_count} -> {len(order)} states")
    return Automaton(a.alphabet, len(order), [0], accepting, transitions, deterministic=True)


def complete(a: Automaton) -> Automaton:
    """Deterministic and complete automaton for L(a); used internally before complementation."""
    if a.deterministic and a.is_complete():
        return a
    return determinize(a)


def minimize(a: Automaton) -> Automaton:
    """
    Moore partition refinement on the reachable, completed DFA.
    States of the result are numbered in breadth-first order from the initial state (symbols in index
    order), so isomorphic minimal automata are equal values.
    """
    if not a.deterministic:
        raise NotDeterministic("minimize requires a deterministic automaton")
    a = complete(a)
    k = len(a.alphabet)
    states = sorted(a.reachable())
    rename = {q: i for i, q in enumerate(states)}
    n = len(states)
    succ = [[rename[a.step(q, sym)] for sym in range(k)] for q in states]
    block = [1 if q in a.accepting else 0 for q in states]
    block_count = len(set(block))
    while True:
        signatures = {}
        refined = []
        for i in range(n):
            sig = (block[i],) + tuple(block[j] for j in succ[i])
            refined.append(signatures.setdefault(sig, len(signatures)))
        block = refined
        if len(signatures) == block_count:
            break
        block_count = len(signatures)
    start = block[rename[next(iter(a.initial))]]
    representative = {}
    for i in range(n):
        representative.setdefault(block[i], i)
    number = {start: 0}
    queue = deque([start])
    transitions = []
    while queue:
        b = queue.popleft()
        i = representative[b]
        for sym in range(k):
            c = block[succ[i][sym]]
            if c not in number:
                number[c] = len(number)
                queue.append(c)
            transitions.append((number[b], sym, number[c]))
    accepting = [number[block[i]] for i in range(n) if states[i] in a.accepting]
    return Automaton(a.alphabet, len(number), [0], accepting, transitions, deterministic=True)


def canonical(a: Automaton) -> Automaton:
    return minimize(determinize(a))


def intersect(a: Automaton, b: Automaton) -> Automaton:
    _check_alphabets(a, b)
    index = {}
    order = []
    for p in sorted(a.initial):
        for q in sorted(b.initial):
            index[(p, q)] = len(order)
            order.append((p, q))
    transitions = []
    i = 0
    while i < len(order):
        p, q = order[i]
        moves_b = b.moves(q)
        for sym, targets_a in a.moves(p).items():
            targets_b = moves_b.get(sym)
            if not targets_b:
                continue
            for s in targets_a:
                for t in targets_b:
                    j = index.get((s, t))
                    if j is None:
                        j = index[(s, t)] = len(order)
                        order.append((s, t))
                    transitions.append((i, sym, j))
        i += 1
    if not order:
        return empty_automaton(a.alphabet)
    accepting = [i for i, (p, q) in enumerate(order) if p in a.accepting and q in b.accepting]
    deterministic = a.deterministic and b.deterministic
    return Automaton(a.alphabet, len(order), range(len(a.initial) * len(b.initial)), accepting, transitions,
                     deterministic=deterministic)


def union(a: Automaton, b: Automaton) -> Automaton:
    _check_alphabets(a, b)
    shift = a.state_count
    transitions = a.transitions + [(p + shift, s, q + shift) for p, s, q in b.transitions]
    return Automaton(a.alphabet, a.state_count + b.state_count,
                     list(a.initial) + [q + shift for q in b.initial],
                     list(a.accepting) + [q + shift for q in b.accepting], transitions)


def complement(a: Automaton) -> Automaton:
    d = complete(a)
    return Automaton(d.alphabet, d.state_count, d.initial, set(range(d.state_count)) - d.accepting,
                     d.transitions, deterministic=True)


def difference(a: Automaton, b: Automaton) -> Automaton:
    _check_alphabets(a, b)
    return intersect(a, complement(b))


def is_empty(a: Automaton) -> bool:
    return not (a.reachable() & a.accepting)


def is_finite(a: Automaton) -> bool:
    useful = a.useful()
    return nx.is_directed_acyclic_graph(a.graph(useful))


def includes(a: Automaton, b: Automaton) -> bool:
    """True iff L(b) ⊆ L(a)."""
    _check_alphabets(a, b)
    return is_empty(difference(b, a))


def equivalent(a: Automaton, b: Automaton) -> bool:
    return includes(a, b) and includes(b, a)


def accepts(a: Automaton, word) -> bool:
    return a.accepts(word)


def relabel(a: Automaton, alphabet: Alphabet, symbol_map: typing.Callable[[int], typing.Optional[int]]) -> Automaton:
    """Rename symbols through `symbol_map`; transitions mapped to None are dropped."""
    transitions = []
    for p, s, q in a.transitions:
        t = symbol_map(s)
        if t is not None:
            transitions.append((p, t, q))
    return Automaton(alphabet, a.state_count, a.initial, a.accepting, transitions)
