import functools
import typing

from autostruct.automata.alphabet import Alphabet, Word
from autostruct.common.constants import PAD
from autostruct.common.exceptions import InvalidConvolution


class PaddedAlphabet:
    """
    The product alphabet (Σ + {□})^n without the all-□ column.
    Symbol ids are mixed-radix numbers over the tracks (track 0 most significant, □ the largest digit),
    so the all-□ column would be the last id and is simply left out.
    """

    def __init__(self, base: Alphabet, arity: int):
        if type(arity) is not int or arity < 1:
            raise ValueError("arity must be a positive integer")
        if PAD in base:
            raise ValueError(f"'{PAD}' is reserved for padding and cannot be a base token")
        self._base = base
        self._arity = arity
        self._radix = len(base) + 1
        self._pad_digit = len(base)
        size = self._radix ** arity - 1
        digits = []
        for sym in range(size):
            column = []
            value = sym
            for _ in range(arity):
                column.append(value % self._radix)
                value //= self._radix
            digits.append(tuple(reversed(column)))
        self._digits = tuple(digits)
        tokens = [tuple(PAD if d == self._pad_digit else base[d] for d in column) for column in digits]
        self._alphabet = Alphabet(tokens)

    @property
    def base(self) -> Alphabet:
        return self._base

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def alphabet(self) -> Alphabet:
        return self._alphabet

    @property
    def pad_digit(self) -> int:
        return self._pad_digit

    @property
    def radix(self) -> int:
        return self._radix

    def __len__(self):
        return len(self._digits)

    def digits(self, symbol: int) -> typing.Tuple[int, ...]:
        """Per-track base ids of a symbol; the pad digit marks □."""
        return self._digits[symbol]

    def encode(self, column: typing.Sequence[int]) -> int:
        """Symbol id of a column of digits, or -1 for the all-□ column."""
        value = 0
        for d in column:
            value = value * self._radix + d
        return -1 if value == len(self._digits) else value

    def is_pad_column(self, column: typing.Sequence[int]) -> bool:
        return all(d == self._pad_digit for d in column)

    def convolve(self, words: typing.Sequence) -> Word:
        if len(words) != self._arity:
            raise ValueError(f"expected {self._arity} words, got {len(words)}")
        ids = [self._base.ids(w) for w in words]
        length = max((len(w) for w in ids), default=0)
        result = []
        for j in range(length):
            column = tuple(w[j] if j < len(w) else self._pad_digit for w in ids)
            result.append(self._alphabet[self.encode(column)])
        return tuple(result)

    def convolve_ids(self, words: typing.Sequence) -> typing.Tuple[int, ...]:
        ids = [self._base.ids(w) for w in words]
        length = max((len(w) for w in ids), default=0)
        return tuple(self.encode(tuple(w[j] if j < len(w) else self._pad_digit for w in ids))
                     for j in range(length))

    def deconvolve(self, word) -> typing.Tuple[Word, ...]:
        ids = self._alphabet.ids(word)
        tracks = [[] for _ in range(self._arity)]
        ended = [False] * self._arity
        for sym in ids:
            for i, d in enumerate(self._digits[sym]):
                if d == self._pad_digit:
                    ended[i] = True
                elif ended[i]:
                    raise InvalidConvolution(f"track {i} continues after padding")
                else:
                    tracks[i].append(self._base[d])
        return tuple(tuple(t) for t in tracks)


@functools.lru_cache(maxsize=256)
def padded(base: Alphabet, arity: int) -> PaddedAlphabet:
    return PaddedAlphabet(base, arity)


def convolve(words: typing.Sequence, base: Alphabet) -> Word:
    """conv(w_0, ..., w_{n-1}): column j holds the j-th letter of every word, □ past its end."""
    return padded(base, len(words)).convolve(words)


def deconvolve(word, base: Alphabet, arity: int) -> typing.Tuple[Word, ...]:
    return padded(base, arity).deconvolve(word)
