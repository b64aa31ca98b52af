import logging
import typing

from autostruct.automata import regex
from autostruct.automata.alphabet import Alphabet, Word
from autostruct.automata.automaton import Automaton
from autostruct.automata.counting import enumerate_upto
from autostruct.common.log import log
from autostruct.growth.pattern import BoundedPattern
from autostruct.relations.padded import padded
from autostruct.relations.relation import RegularRelation, image, lift


def prefix_letter(pattern: int, j: int) -> str:
    return f"p{pattern}_a{j}"


def loop_letter(pattern: int, j: int) -> str:
    return f"p{pattern}_b{j}"


class Recode:
    """
    A length-preserving binary relation E between source words and their distinct-letter normal forms,
    stored over the joint alphabet of source and fresh tokens.
    """

    def __init__(self, relation: RegularRelation, source: Alphabet, target: Alphabet):
        self._relation = relation
        self._inverse = lift(relation, 2, [1, 0])
        self._source = source
        self._target = target

    @property
    def relation(self) -> RegularRelation:
        return self._relation

    @property
    def source(self) -> Alphabet:
        return self._source

    @property
    def target(self) -> Alphabet:
        return self._target

    def _apply(self, r: RegularRelation, tokens: Word) -> typing.Optional[Word]:
        outputs = enumerate_upto(image(r, regex.literal(r.base, tokens), 1), len(tokens))
        return outputs[0] if outputs else None

    def translate(self, word) -> typing.Optional[Word]:
        """Normal form of a source word, None when the word is in no pattern."""
        return self._apply(self._relation, self._source.as_word(word))

    def restore(self, word) -> typing.Optional[Word]:
        return self._apply(self._inverse, self._target.as_word(word))


def normalize_letters(patterns: typing.Sequence[BoundedPattern], alphabet: Alphabet = None) \
        -> typing.Tuple[typing.List[BoundedPattern], Recode]:
    """
    Pattern i becomes a₀^{m₀}(b₀^{k₀})*…a_k^{m_k} with m_j = |u_j| and k_j = |v_j|, over the fresh
    letters p{i}_a{j}, p{i}_b{j}; distinct patterns share no letters. E is the union over patterns of
    the convolutions [u₀ ⊗ a₀^{m₀}][v₀ ⊗ b₀^{k₀}]*…[u_k ⊗ a_k^{m_k}].
    """
    if not patterns:
        raise ValueError("nothing to normalize: the pattern list is empty")
    if alphabet is None:
        seen = {}
        for p in patterns:
            for t in p.tokens:
                seen.setdefault(t, None)
        alphabet = Alphabet(seen)
    fresh = []
    for i, p in enumerate(patterns):
        for j in range(len(p.prefixes)):
            fresh.append(prefix_letter(i, j))
            if j < p.loop_count:
                fresh.append(loop_letter(i, j))
    clash = [t for t in fresh if t in alphabet]
    if clash:
        raise ValueError(f"fresh letters {clash} already occur in the source alphabet")
    target = Alphabet(fresh)
    base = Alphabet(list(alphabet) + fresh)
    pairs = padded(base, 2).alphabet

    def block(word: Word, letter: str) -> Automaton:
        return regex.literal(pairs, [(t, letter) for t in word])

    normalized = []
    alternatives = []
    for i, p in enumerate(patterns):
        prefixes = [(prefix_letter(i, j),) * len(u) for j, u in enumerate(p.prefixes)]
        loops = [(loop_letter(i, j),) * len(v) for j, v in enumerate(p.loops)]
        normalized.append(BoundedPattern(prefixes, loops))
        parts = [block(p.prefixes[0], prefix_letter(i, 0))]
        for j, v in enumerate(p.loops):
            parts.append(regex.star(block(v, loop_letter(i, j))))
            parts.append(block(p.prefixes[j + 1], prefix_letter(i, j + 1)))
        alternatives.append(regex.concat(*parts))
    relation = RegularRelation(2, base, regex.union(*alternatives)).minimized()
    log(logging.DEBUG, f"recoding relation over {len(fresh)} fresh letters: {relation!r}")
    return normalized, Recode(relation, alphabet, target)
