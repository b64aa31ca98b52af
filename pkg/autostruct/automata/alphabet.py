import typing

from autostruct.common.exceptions import UnknownSymbol

Token = typing.Hashable
Word = typing.Tuple[Token, ...]


def freeze_token(token):
    """JSON arrays become tuples so that padded symbols are hashable tokens."""
    if isinstance(token, list):
        return tuple(freeze_token(t) for t in token)
    return token


def thaw_token(token):
    if isinstance(token, tuple):
        return [thaw_token(t) for t in token]
    return token


class Alphabet:
    """
    An ordered list of distinct tokens. The index of a token is its symbol id.
    Two alphabets are equal iff their token lists are equal.
    """

    def __init__(self, symbols: typing.Iterable[Token]):
        symbols = tuple(freeze_token(s) for s in symbols)
        if not symbols:
            raise ValueError("alphabet must not be empty")
        if len(set(symbols)) != len(symbols):
            raise ValueError("alphabet symbols must be pairwise distinct")
        self._symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}

    @property
    def symbols(self) -> typing.Tuple[Token, ...]:
        return self._symbols

    def __len__(self):
        return len(self._symbols)

    def __iter__(self):
        return iter(self._symbols)

    def __getitem__(self, symbol_id: int) -> Token:
        return self._symbols[symbol_id]

    def __contains__(self, token) -> bool:
        return token in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self._symbols == other._symbols

    def __hash__(self):
        return hash(self._symbols)

    def __repr__(self):
        return f"Alphabet({list(self._symbols)!r})"

    def index(self, token: Token) -> int:
        try:
            return self._index[freeze_token(token)]
        except KeyError:
            raise UnknownSymbol(f"symbol {token!r} is not in the alphabet")

    def single_characters(self) -> bool:
        return all(isinstance(s, str) and len(s) == 1 for s in self._symbols)

    def as_word(self, word) -> Word:
        """
        Normalise a word given as a token sequence or, for single-character alphabets, as a string.
        :param word: tuple/list of tokens or str
        :return: tuple of tokens, each checked against the alphabet
        """
        if isinstance(word, str):
            if word == "":
                tokens = ()
            elif word in self._index:
                tokens = (word,)
            elif self.single_characters():
                tokens = tuple(word)
            else:
                raise UnknownSymbol(f"cannot split {word!r} into symbols of a multi-character alphabet")
        else:
            tokens = tuple(freeze_token(t) for t in word)
        for t in tokens:
            if t not in self._index:
                raise UnknownSymbol(f"symbol {t!r} is not in the alphabet")
        return tokens

    def ids(self, word) -> typing.Tuple[int, ...]:
        return tuple(self._index[t] for t in self.as_word(word))

    def tokens(self, ids: typing.Iterable[int]) -> Word:
        return tuple(self._symbols[i] for i in ids)

    def to_json(self) -> list:
        return [thaw_token(s) for s in self._symbols]

    @staticmethod
    def from_json(data: list) -> "Alphabet":
        if type(data) is not list:
            raise ValueError("alphabet must be a JSON array")
        return Alphabet(data)


def word_to_str(word: Word) -> str:
    return "".join(str(t) for t in word)


def llex_compare(u, v, alphabet: Alphabet = None) -> int:
    """
    Length-lexicographic comparison: shorter words first, equal lengths by symbol order.
    :return: -1, 0 or 1
    """
    if alphabet is not None:
        u, v = alphabet.ids(u), alphabet.ids(v)
    else:
        u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    if u == v:
        return 0
    return -1 if u < v else 1
