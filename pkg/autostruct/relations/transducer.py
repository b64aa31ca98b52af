import logging
import typing
from collections import deque

from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import Automaton, intersect
from autostruct.common.log import log
from autostruct.common.settings import settings
from autostruct.relations.padded import padded
from autostruct.relations.relation import RegularRelation, validity_automaton

# (from state, input word, output word, to state)
Move = typing.Tuple[int, tuple, tuple, int]


class AsyncTransducer:
    """
    A finite transducer whose moves read and write whole words. Only transducers of bounded lag
    (the output never runs more than `max_lag` letters ahead of or behind the input) are convertible
    into synchronous relations; runs exceeding the lag are cut off.
    """

    def __init__(self, base: Alphabet, state_count: int, start: int, finals: typing.Iterable[int],
                 moves: typing.Iterable[Move]):
        self._base = base
        self._state_count = state_count
        self._start = start
        self._finals = frozenset(finals)
        self._moves = [[] for _ in range(state_count)]
        for p, xs, ys, q in moves:
            xs, ys = base.as_word(xs), base.as_word(ys)
            self._moves[p].append((xs, ys, q))

    @property
    def base(self) -> Alphabet:
        return self._base

    def _live(self, config, cache) -> bool:
        """Some run from the state consumes both buffers completely."""
        if config in cache:
            return cache[config]
        seen = {config}
        stack = [config]
        live = False
        while stack and not live:
            q, bu, bv = stack.pop()
            if not bu and not bv:
                live = True
                break
            for xs, ys, r in self._moves[q]:
                if xs[:len(bu)] != bu[:len(xs)] or ys[:len(bv)] != bv[:len(ys)]:
                    continue
                following = (r, bu[len(xs):], bv[len(ys):])
                if following not in seen:
                    seen.add(following)
                    stack.append(following)
        cache[config] = live
        return live

    def _closure(self, config, lag, cache):
        seen = {config}
        queue = deque([config])
        while queue:
            q, bu, bv = queue.popleft()
            for xs, ys, r in self._moves[q]:
                if bu[:len(xs)] == xs and bv[:len(ys)] == ys:
                    following = (r, bu[len(xs):], bv[len(ys):])
                    if following not in seen and self._live(following, cache):
                        seen.add(following)
                        queue.append(following)
        return [c for c in seen if len(c[1]) <= lag and len(c[2]) <= lag and self._live(c, cache)]

    def to_relation(self, max_lag: int = None) -> RegularRelation:
        """
        Synchronous acceptor of {(u, v)}: configurations are (state, unread input, unread output);
        each column appends its letters to the buffers, then moves consume buffered prefixes.
        Configurations whose buffers no run can consume are dropped.
        """
        lag = settings.transducer_max_lag if max_lag is None else max_lag
        pa = padded(self._base, 2)
        columns = [tuple(() if d == pa.pad_digit else (self._base[d],) for d in pa.digits(sym))
                   for sym in range(len(pa))]
        cache = {}
        start = (self._start, (), ())
        index = {}
        order = []
        for c in self._closure(start, lag, cache):
            index[c] = len(order)
            order.append(c)
        initial = list(range(len(order)))
        transitions = []
        i = 0
        while i < len(order):
            q, bu, bv = order[i]
            for sym, (x, y) in enumerate(columns):
                stepped = (q, bu + x, bv + y)
                if len(stepped[1]) > lag + 1 or len(stepped[2]) > lag + 1 or not self._live(stepped, cache):
                    continue
                for c in self._closure(stepped, lag, cache):
                    j = index.get(c)
                    if j is None:
                        j = index[c] = len(order)
                        order.append(c)
                    transitions.append((i, sym, j))
            i += 1
        accepting = [j for j, (q, bu, bv) in enumerate(order) if q in self._finals and not bu and not bv]
        log(logging.DEBUG, f"transducer: {len(order)} buffered configurations at lag {lag}")
        acceptor = Automaton(pa.alphabet, len(order), initial, accepting, transitions)
        return RegularRelation(2, self._base, intersect(acceptor, validity_automaton(self._base, 2))).minimized()
