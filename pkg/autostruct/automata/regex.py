"""
Minimal regular-expression constructors: symbol classes, concatenation, union, star.
The combinators build epsilon-free NFAs directly; `parse` reads a small text syntax
(`|`, juxtaposition, `*`, `+`, parentheses, `()` for the empty word) over single-character tokens.
"""
import typing

from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import Automaton, empty_automaton
from autostruct.common.exceptions import FormulaSyntaxError, UnknownSymbol


def epsilon(alphabet: Alphabet) -> Automaton:
    return Automaton(alphabet, 1, [0], [0], [])


def empty(alphabet: Alphabet) -> Automaton:
    return empty_automaton(alphabet)


def symbols(alphabet: Alphabet, tokens: typing.Iterable) -> Automaton:
    """One letter out of `tokens`."""
    ids = sorted({alphabet.index(t) for t in tokens})
    return Automaton(alphabet, 2, [0], [1], [(0, a, 1) for a in ids])


def symbol_ids(alphabet: Alphabet, ids: typing.Iterable[int]) -> Automaton:
    return Automaton(alphabet, 2, [0], [1], [(0, a, 1) for a in sorted(set(ids))])


def any_symbol(alphabet: Alphabet) -> Automaton:
    return symbol_ids(alphabet, range(len(alphabet)))


def literal(alphabet: Alphabet, word) -> Automaton:
    ids = alphabet.ids(word)
    return Automaton(alphabet, len(ids) + 1, [0], [len(ids)], [(i, a, i + 1) for i, a in enumerate(ids)])


def _concat2(a: Automaton, b: Automaton) -> Automaton:
    shift = a.state_count
    transitions = a.transitions + [(p + shift, s, q + shift) for p, s, q in b.transitions]
    b_initial = {q + shift for q in b.initial}
    for p, s, q in b.transitions:
        if p + shift in b_initial:
            transitions.extend((f, s, q + shift) for f in a.accepting)
    initial = set(a.initial)
    if a.initial & a.accepting:
        initial |= b_initial
    accepting = {q + shift for q in b.accepting}
    if b.initial & b.accepting:
        accepting |= a.accepting
    return Automaton(a.alphabet, a.state_count + b.state_count, initial, accepting, transitions)


def concat(*parts: Automaton) -> Automaton:
    result = parts[0]
    for part in parts[1:]:
        result = _concat2(result, part)
    return result


def union(*parts: Automaton) -> Automaton:
    transitions, initial, accepting = [], [], []
    shift = 0
    for part in parts:
        transitions.extend((p + shift, s, q + shift) for p, s, q in part.transitions)
        initial.extend(q + shift for q in part.initial)
        accepting.extend(q + shift for q in part.accepting)
        shift += part.state_count
    return Automaton(parts[0].alphabet, shift, initial, accepting, transitions)


def star(a: Automaton) -> Automaton:
    start = a.state_count
    transitions = list(a.transitions)
    for p, s, q in a.transitions:
        if p in a.initial:
            transitions.append((start, s, q))
            transitions.extend((f, s, q) for f in a.accepting)
    return Automaton(a.alphabet, a.state_count + 1, [start], set(a.accepting) | {start}, transitions)


def plus(a: Automaton) -> Automaton:
    return concat(a, star(a))


def power(a: Automaton, k: int) -> Automaton:
    if k == 0:
        return epsilon(a.alphabet)
    return concat(*([a] * k))


class _Parser:

    def __init__(self, alphabet: Alphabet, text: str):
        self.alphabet = alphabet
        self.text = text.replace(" ", "")
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expect(self, char):
        if self.peek() != char:
            raise FormulaSyntaxError(f"expected {char!r} at position {self.pos} of {self.text!r}")
        self.pos += 1

    def expression(self) -> Automaton:
        branches = [self.term()]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.term())
        return union(*branches) if len(branches) > 1 else branches[0]

    def term(self) -> Automaton:
        factors = []
        while self.peek() is not None and self.peek() not in "|)":
            factors.append(self.factor())
        if not factors:
            return epsilon(self.alphabet)
        return concat(*factors)

    def factor(self) -> Automaton:
        result = self.atom()
        while self.peek() in ("*", "+"):
            result = star(result) if self.peek() == "*" else plus(result)
            self.pos += 1
        return result

    def atom(self) -> Automaton:
        char = self.peek()
        if char == "(":
            self.pos += 1
            inner = self.expression()
            self.expect(")")
            return inner
        if char == "∅":
            self.pos += 1
            return empty(self.alphabet)
        if char == "ε":
            self.pos += 1
            return epsilon(self.alphabet)
        if char is None or char in "*+":
            raise FormulaSyntaxError(f"unexpected {char!r} at position {self.pos} of {self.text!r}")
        if char not in self.alphabet:
            raise UnknownSymbol(f"symbol {char!r} is not in the alphabet")
        self.pos += 1
        return symbols(self.alphabet, [char])


def parse(alphabet: Alphabet, text: str) -> Automaton:
    parser = _Parser(alphabet, text)
    result = parser.expression()
    if parser.peek() is not None:
        raise FormulaSyntaxError(f"unexpected {parser.peek()!r} at position {parser.pos} of {text!r}")
    return result
