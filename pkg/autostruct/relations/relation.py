import json
import logging
import typing
from collections import deque

import networkx as nx

from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import (Automaton, determinize, minimize, intersect, union, complement,
                                           is_empty, includes, equivalent, empty_automaton, relabel)
from autostruct.common.constants import ARITY, BASE, ACCEPTOR
from autostruct.common.exceptions import AlphabetMismatch, ArityMismatch, InfiniteOutdegree, SerializationError
from autostruct.common.log import log
from autostruct.relations.padded import PaddedAlphabet, padded


class RegularRelation:
    """
    An n-ary relation over base-alphabet words, stored as an acceptor of the convolutions of its tuples.
    The acceptor only ever accepts valid convolutions; `validate` checks this against `validity_automaton`.
    """

    def __init__(self, arity: int, base: Alphabet, acceptor: Automaton):
        self._padded = padded(base, arity)
        if acceptor.alphabet != self._padded.alphabet:
            raise AlphabetMismatch(f"acceptor alphabet does not match the {arity}-track padded alphabet")
        self._arity = arity
        self._base = base
        self._acceptor = acceptor

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def base(self) -> Alphabet:
        return self._base

    @property
    def acceptor(self) -> Automaton:
        return self._acceptor

    @property
    def padded(self) -> PaddedAlphabet:
        return self._padded

    def __repr__(self):
        return f"RegularRelation(arity={self._arity}, states={self._acceptor.state_count})"

    def contains(self, words: typing.Sequence) -> bool:
        if len(words) != self._arity:
            raise ArityMismatch(f"expected a {self._arity}-tuple, got {len(words)} words")
        return self._acceptor.accepts_ids(self._padded.convolve_ids(words))

    def validate(self) -> bool:
        return includes(validity_automaton(self._base, self._arity), self._acceptor)

    def is_empty(self) -> bool:
        return is_empty(self._acceptor)

    def minimized(self) -> "RegularRelation":
        """Trimmed minimal DFA acceptor; the normal form every derived relation is stored in."""
        return RegularRelation(self._arity, self._base, minimize(determinize(self._acceptor)).trim())

    def intersection(self, other: "RegularRelation") -> "RegularRelation":
        _check_compatible(self, other)
        return RegularRelation(self._arity, self._base, intersect(self._acceptor, other._acceptor)).minimized()

    def union(self, other: "RegularRelation") -> "RegularRelation":
        _check_compatible(self, other)
        return RegularRelation(self._arity, self._base, union(self._acceptor, other._acceptor)).minimized()

    def complement(self) -> "RegularRelation":
        """All valid convolutions outside the relation."""
        acceptor = intersect(complement(self._acceptor), validity_automaton(self._base, self._arity))
        return RegularRelation(self._arity, self._base, acceptor).minimized()

    def equivalent(self, other: "RegularRelation") -> bool:
        _check_compatible(self, other)
        return equivalent(self._acceptor, other._acceptor)

    def to_json(self) -> dict:
        return {ARITY: self._arity, BASE: self._base.to_json(), ACCEPTOR: self._acceptor.to_json()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), ensure_ascii=False)

    @staticmethod
    def from_json(data: dict) -> "RegularRelation":
        try:
            return RegularRelation(data[ARITY], Alphabet.from_json(data[BASE]), Automaton.from_json(data[ACCEPTOR]))
        except (KeyError, TypeError) as e:
            raise SerializationError(f"malformed relation JSON: {e}")


def _check_compatible(r: RegularRelation, s: RegularRelation):
    if r.base != s.base:
        raise AlphabetMismatch("relations are over different base alphabets")
    if r.arity != s.arity:
        raise ArityMismatch(f"arities differ: {r.arity} vs {s.arity}")


def validity_automaton(base: Alphabet, n: int) -> Automaton:
    """States are the sets of already padded tracks, encoded as bit masks reachable from 0."""
    pa = padded(base, n)
    masks = [_pad_mask(pa, sym) for sym in range(len(pa))]
    index = {0: 0}
    order = [0]
    transitions = []
    i = 0
    while i < len(order):
        mask = order[i]
        for sym, pads in enumerate(masks):
            if pads & mask != mask:
                continue
            j = index.get(pads)
            if j is None:
                j = index[pads] = len(order)
                order.append(pads)
            transitions.append((i, sym, j))
        i += 1
    return Automaton(pa.alphabet, len(order), [0], range(len(order)), transitions, deterministic=True)


def _pad_mask(pa: PaddedAlphabet, symbol: int) -> int:
    mask = 0
    for i, d in enumerate(pa.digits(symbol)):
        if d == pa.pad_digit:
            mask |= 1 << i
    return mask


def full_relation(base: Alphabet, n: int) -> RegularRelation:
    return RegularRelation(n, base, validity_automaton(base, n))


def empty_relation(base: Alphabet, n: int) -> RegularRelation:
    return RegularRelation(n, base, empty_automaton(padded(base, n).alphabet))


def from_language(language: Automaton) -> RegularRelation:
    """View a language over the base alphabet as a unary relation (1-tuple symbols)."""
    pa = padded(language.alphabet, 1)
    return RegularRelation(1, language.alphabet, relabel(language, pa.alphabet, lambda s: s))


def to_language(r: RegularRelation) -> Automaton:
    if r.arity != 1:
        raise ArityMismatch("only unary relations are languages")
    return relabel(r.acceptor, r.base, lambda s: s)


def lift(r: RegularRelation, target_arity: int, track_map: typing.Sequence[int]) -> RegularRelation:
    """
    Cylindrification along a track map: the result holds every target tuple t̄ with
    (t[track_map[0]], ..., t[track_map[n-1]]) ∈ r. Target tracks outside the map are free;
    repeated targets force equal components.
    """
    if len(track_map) != r.arity:
        raise ArityMismatch(f"track map has {len(track_map)} entries for a relation of arity {r.arity}")
    if any(not 0 <= t < target_arity for t in track_map):
        raise ArityMismatch("track map points outside the target arity")
    source, target = r.padded, padded(r.base, target_arity)
    projected = []
    for sym in range(len(target)):
        digits = target.digits(sym)
        projected.append(source.encode(tuple(digits[t] for t in track_map)))
    a = r.acceptor
    done = a.state_count
    transitions = []
    for p in range(a.state_count):
        moves = a.moves(p)
        for sym, s in enumerate(projected):
            if s == -1:
                if p in a.accepting:
                    transitions.append((p, sym, done))
            else:
                transitions.extend((p, sym, q) for q in moves.get(s, ()))
    for sym, s in enumerate(projected):
        if s == -1:
            transitions.append((done, sym, done))
    accepting = set(a.accepting) | {done}
    lifted = Automaton(target.alphabet, a.state_count + 1, a.initial, accepting, transitions)
    result = intersect(lifted, validity_automaton(r.base, target_arity))
    return RegularRelation(target_arity, r.base, result).minimized()


def project(r: RegularRelation, track: int) -> RegularRelation:
    """
    Existential projection of one track. Columns that become all-□ form a suffix of every valid
    convolution; states that reach acceptance through such columns alone become accepting.
    """
    if r.arity < 2:
        raise ArityMismatch("projection needs at least two tracks")
    if not 0 <= track < r.arity:
        raise ArityMismatch(f"track {track} out of range")
    source, target = r.padded, padded(r.base, r.arity - 1)
    reduced = []
    for sym in range(len(source)):
        digits = source.digits(sym)
        reduced.append(target.encode(digits[:track] + digits[track + 1:]))
    a = r.acceptor
    transitions = []
    back = [set() for _ in range(a.state_count)]
    for p, sym, q in a.transitions:
        if reduced[sym] == -1:
            back[q].add(p)
        else:
            transitions.append((p, reduced[sym], q))
    accepting = set(a.accepting)
    queue = deque(accepting)
    while queue:
        q = queue.popleft()
        for p in back[q]:
            if p not in accepting:
                accepting.add(p)
                queue.append(p)
    result = Automaton(target.alphabet, a.state_count, a.initial, accepting, transitions)
    return RegularRelation(r.arity - 1, r.base, result).minimized()


def compose(r: RegularRelation, s: RegularRelation, k: int, m: int, l: int) -> RegularRelation:
    """{(x̄, z̄) : ∃ȳ (x̄, ȳ) ∈ r ∧ (ȳ, z̄) ∈ s} for splits r = k|m and s = m|l."""
    if r.base != s.base:
        raise AlphabetMismatch("relations are over different base alphabets")
    if r.arity != k + m or s.arity != m + l:
        raise ArityMismatch(f"split {k}|{m}|{l} does not fit arities {r.arity} and {s.arity}")
    if m == 0 or k + l == 0:
        raise ArityMismatch("composition needs a shared track and at least one kept track")
    total = k + m + l
    left = lift(r, total, list(range(k + m)))
    right = lift(s, total, list(range(k, total)))
    result = left.intersection(right)
    for _ in range(m):
        result = project(result, k)
    log(logging.DEBUG, f"compose: {r.acceptor.state_count} x {s.acceptor.state_count} -> "
                       f"{result.acceptor.state_count} states")
    return result


def image(r: RegularRelation, language: typing.Union[Automaton, RegularRelation], k: int) -> Automaton:
    """
    {ȳ : ∃x̄ ∈ L, (x̄, ȳ) ∈ r} for the split k|m. L is a k-ary relation, or a plain language when k = 1.
    The result is a language over the base alphabet when m = 1, otherwise over m-track convolutions.
    """
    if isinstance(language, Automaton):
        if k == 1 and language.alphabet == r.base:
            language = from_language(language)
        else:
            language = RegularRelation(k, r.base, language)
    if language.base != r.base:
        raise AlphabetMismatch("language and relation are over different base alphabets")
    if language.arity != k or not 0 < k < r.arity:
        raise ArityMismatch(f"split {k}|{r.arity - k} does not fit")
    result = r.intersection(lift(language, r.arity, list(range(k))))
    for _ in range(k):
        result = project(result, 0)
    if result.arity == 1:
        return to_language(result)
    return result.acceptor


def _input_padded_symbols(r: RegularRelation, k: int) -> typing.Set[int]:
    pa = r.padded
    return {sym for sym in range(len(pa)) if all(d == pa.pad_digit for d in pa.digits(sym)[:k])}


def _padding_region(r: RegularRelation, k: int) -> nx.DiGraph:
    """Useful states of the acceptor joined by columns whose first k tracks are padded."""
    a = r.acceptor
    useful = a.useful()
    tail = _input_padded_symbols(r, k)
    g = nx.DiGraph()
    g.add_nodes_from(useful)
    for p in useful:
        for sym, targets in a.moves(p).items():
            if sym in tail:
                g.add_edges_from((p, q) for q in targets if q in useful)
    return g


def is_finite_outdegree(r: RegularRelation, k: int) -> bool:
    """
    True iff every input tuple (first k tracks) has finitely many outputs (remaining tracks).
    Outputs grow without bound exactly when an accepting run can loop while all inputs are padded.
    """
    if not 0 < k < r.arity:
        raise ArityMismatch(f"split {k}|{r.arity - k} does not fit")
    g = _padding_region(r, k)
    accepting = set(r.acceptor.accepting) & set(g.nodes)
    closing = set(accepting)
    for q in accepting:
        closing |= nx.ancestors(g, q)
    return nx.is_directed_acyclic_graph(g.subgraph(closing))


def length_increase_constant(r: RegularRelation, k: int) -> int:
    """
    A constant κ with |outputs| <= |inputs| + κ for every tuple of r, where lengths are the maxima over
    the first k tracks and over the rest. Returns the trim state count, which bounds any loop-free stretch
    of input padding.
    """
    if not is_finite_outdegree(r, k):
        raise InfiniteOutdegree("the relation has infinite out-degree; no length bound exists")
    return r.acceptor.trim().state_count
