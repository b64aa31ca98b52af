import typing

import networkx as nx

from autostruct.automata.alphabet import Word
from autostruct.automata.automaton import Automaton, determinize


class GrowthCount:
    """values[n] = number of accepted words of length at most n."""

    def __init__(self, values: typing.Iterable[int]):
        self._values = tuple(values)
        if any(x > y for x, y in zip(self._values, self._values[1:])):
            raise ValueError("growth counts must be non-decreasing")

    @property
    def values(self) -> typing.Tuple[int, ...]:
        return self._values

    def __getitem__(self, n):
        return self._values[n]

    def __len__(self):
        return len(self._values)

    def __iter__(self):
        return iter(self._values)

    def __eq__(self, other):
        if isinstance(other, GrowthCount):
            return self._values == other._values
        if isinstance(other, (list, tuple)):
            return list(self._values) == list(other)
        return NotImplemented

    def __repr__(self):
        return f"GrowthCount({list(self._values)})"

    def exact(self) -> typing.List[int]:
        """Number of accepted words of each exact length."""
        return [v - (self._values[i - 1] if i else 0) for i, v in enumerate(self._values)]


def _live_dfa(a: Automaton) -> Automaton:
    return determinize(a).trim()


def count_words_upto(a: Automaton, n: int) -> GrowthCount:
    d = _live_dfa(a)
    layer = {q: 1 for q in d.initial}
    total = 0
    values = []
    for length in range(n + 1):
        total += sum(c for q, c in layer.items() if q in d.accepting)
        values.append(total)
        following = {}
        for p, c in layer.items():
            for targets in d.moves(p).values():
                for q in targets:
                    following[q] = following.get(q, 0) + c
        layer = following
    return GrowthCount(values)


def count_words(a: Automaton) -> typing.Optional[int]:
    """Size of a finite language, or None when L(a) is infinite."""
    d = _live_dfa(a)
    if not nx.is_directed_acyclic_graph(d.graph()):
        return None
    return count_words_upto(d, d.state_count)[-1]


def enumerate_upto(a: Automaton, n: int) -> typing.List[Word]:
    """All accepted words of length at most n in length-lexicographic order."""
    d = _live_dfa(a)
    alphabet = d.alphabet
    words = []
    layer = [((), q) for q in d.initial]
    for length in range(n + 1):
        words.extend(alphabet.tokens(w) for w, q in layer if q in d.accepting)
        if length == n:
            break
        following = []
        for w, p in layer:
            moves = d.moves(p)
            for sym in sorted(moves):
                for q in moves[sym]:
                    following.append((w + (sym,), q))
        layer = following
    return words
