import typing

from autostruct.automata import regex
from autostruct.automata.alphabet import Alphabet, Word, freeze_token, thaw_token
from autostruct.automata.automaton import Automaton
from autostruct.common.constants import PREFIXES, LOOPS
from autostruct.common.exceptions import SerializationError


def _word(value) -> Word:
    if isinstance(value, str):
        return tuple(value)
    return tuple(freeze_token(t) for t in value)


def _word_json(word: Word):
    if all(isinstance(t, str) and len(t) == 1 for t in word):
        return "".join(word)
    return [thaw_token(t) for t in word]


class BoundedPattern:
    """
    The language u₀v₀*u₁v₁*…u_{k-1}v_{k-1}*u_k. Words are token tuples; a str is split into characters.
    """

    def __init__(self, prefixes: typing.Sequence, loops: typing.Sequence = ()):
        prefixes = tuple(_word(u) for u in prefixes)
        loops = tuple(_word(v) for v in loops)
        if len(prefixes) != len(loops) + 1:
            raise ValueError(f"{len(loops)} loops need {len(loops) + 1} prefixes, got {len(prefixes)}")
        if any(not v for v in loops):
            raise ValueError("loops must be nonempty words")
        self._prefixes = prefixes
        self._loops = loops

    @property
    def prefixes(self) -> typing.Tuple[Word, ...]:
        return self._prefixes

    @property
    def loops(self) -> typing.Tuple[Word, ...]:
        return self._loops

    @property
    def loop_count(self) -> int:
        return len(self._loops)

    @property
    def tokens(self) -> typing.List:
        """Tokens in order of first appearance."""
        seen = {}
        for u, v in zip(self._prefixes, self._loops + ((),)):
            for t in u + v:
                seen.setdefault(t, None)
        return list(seen)

    def word(self, exponents: typing.Sequence[int]) -> Word:
        if len(exponents) != len(self._loops):
            raise ValueError(f"pattern has {len(self._loops)} loops, got {len(exponents)} exponents")
        result = self._prefixes[0]
        for v, i, u in zip(self._loops, exponents, self._prefixes[1:]):
            result += v * i + u
        return result

    def minimal_length(self) -> int:
        return sum(len(u) for u in self._prefixes)

    def language(self, alphabet: Alphabet) -> Automaton:
        parts = [regex.literal(alphabet, self._prefixes[0])]
        for v, u in zip(self._loops, self._prefixes[1:]):
            parts.append(regex.star(regex.literal(alphabet, v)))
            parts.append(regex.literal(alphabet, u))
        return regex.concat(*parts)

    def __eq__(self, other):
        return (isinstance(other, BoundedPattern) and self._prefixes == other._prefixes
                and self._loops == other._loops)

    def __hash__(self):
        return hash((self._prefixes, self._loops))

    def __repr__(self):
        def show(w):
            return "".join(str(t) for t in w) or "ε"
        parts = [show(self._prefixes[0])]
        for v, u in zip(self._loops, self._prefixes[1:]):
            parts.append(f"({show(v)})*")
            parts.append(show(u))
        return "·".join(parts)

    def to_json(self) -> dict:
        return {PREFIXES: [_word_json(u) for u in self._prefixes], LOOPS: [_word_json(v) for v in self._loops]}

    @staticmethod
    def from_json(data: dict) -> "BoundedPattern":
        try:
            return BoundedPattern(data[PREFIXES], data.get(LOOPS, []))
        except (KeyError, TypeError, AttributeError) as e:
            raise SerializationError(f"malformed bounded pattern JSON: {e}")


def exponent_count(pattern: BoundedPattern, n: int) -> int:
    """Number of exponent tuples whose word has length at most n."""
    budget = n - pattern.minimal_length()
    if budget < 0:
        return 0
    layer = [0] * (budget + 1)
    layer[0] = 1
    for v in pattern.loops:
        # unbounded knapsack over one more loop length
        following = list(layer)
        for used in range(len(v), budget + 1):
            following[used] += following[used - len(v)]
        layer = following
    return sum(layer)
