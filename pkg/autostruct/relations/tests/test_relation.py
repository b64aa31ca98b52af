import itertools
import unittest

from hypothesis import given, settings, strategies as st

from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import Automaton, intersect, includes, equivalent
from autostruct.automata.counting import enumerate_upto
from autostruct.automata import regex
from autostruct.common.exceptions import *
from autostruct.relations import *

ABC = Alphabet(["a", "b", "c"])
AB = Alphabet(["a", "b"])
UNARY = Alphabet(["0"])


def successor(base=UNARY):
    return append_symbol(base, "0")


def at_most_as_long():
    return from_rule(AB, 2, 1, [0], lambda p, c: None if c[0] == "_" else 0)


def length_plus_two():
    """{(u, v) : |u| = |v| + 2} over a*."""
    one = Alphabet(["a"])

    def rule(p, c):
        if p == 0 and "_" not in c:
            return 0
        if c[1] == "_" and p < 2:
            return p + 1
        return None

    return from_rule(one, 2, 3, [2], rule)


@st.composite
def random_relations(draw, base=UNARY, states=5):
    pa = padded(base, 2)
    state = st.integers(min_value=0, max_value=states - 1)
    symbol = st.integers(min_value=0, max_value=len(pa) - 1)
    transitions = draw(st.lists(st.tuples(state, symbol, state), max_size=12))
    accepting = draw(st.sets(state, max_size=states))
    a = Automaton(pa.alphabet, states, [0], accepting, transitions)
    return RegularRelation(2, base, intersect(a, validity_automaton(base, 2)))


class TestConvolution(unittest.TestCase):

    def test_convolve(self):
        self.assertEqual((("a", "c"), ("b", "_")), convolve(["ab", "c"], ABC))
        self.assertEqual((), convolve(["", ""], ABC))

    def test_deconvolve(self):
        self.assertEqual((("a", "a"), ("b",), ("c", "c", "c")), deconvolve(convolve(["aa", "b", "ccc"], ABC), ABC, 3))

    def test_deconvolve_rejects_resumed_track(self):
        try:
            deconvolve([("a", "_"), ("_", "a")], ABC, 2)
            self.fail()
        except InvalidConvolution:
            pass

    def test_pad_token_reserved(self):
        try:
            PaddedAlphabet(Alphabet(["a", "_"]), 2)
            self.fail()
        except ValueError:
            pass

    def test_mixed_radix_order(self):
        pa = padded(AB, 2)
        self.assertEqual(8, len(pa))
        self.assertEqual(("a", "a"), pa.alphabet[0])
        self.assertEqual(("a", "_"), pa.alphabet[2])
        self.assertEqual(("_", "b"), pa.alphabet[7])

    @given(st.integers(min_value=1, max_value=3).flatmap(
        lambda n: st.lists(st.text(alphabet="abc", max_size=6), min_size=n, max_size=n)))
    @settings(max_examples=200, deadline=None)
    def test_convolution_law(self, words):
        w = convolve(words, ABC)
        self.assertEqual(max(len(u) for u in words), len(w))
        self.assertEqual(tuple(tuple(u) for u in words), deconvolve(w, ABC, len(words)))


class TestValidity(unittest.TestCase):

    def test_unary_tracks(self):
        v = validity_automaton(AB, 1)
        self.assertEqual(1, v.state_count)
        self.assertEqual(2, len(v.transitions))

    def test_padding_persists(self):
        v = validity_automaton(UNARY, 2)
        self.assertFalse(v.accepts([("0", "_"), ("_", "0")]))
        self.assertTrue(v.accepts([("0", "0"), ("_", "0")]))

    def test_exhaustive(self):
        pa = padded(UNARY, 2)
        v = validity_automaton(UNARY, 2)
        expected = {convolve(["0" * i, "0" * j], UNARY) for i in range(4) for j in range(4)}
        for n in range(4):
            for w in itertools.product(pa.alphabet.symbols, repeat=n):
                self.assertEqual(w in expected, v.accepts(w), w)


class TestRegularRelation(unittest.TestCase):

    def get_instance(self):
        return llex_order(AB)

    def test_contains(self):
        i = self.get_instance()
        self.assertTrue(i.contains(["b", "aa"]))
        self.assertFalse(i.contains(["ab", "aa"]))

    def test_contains_arity(self):
        try:
            self.get_instance().contains(["a"])
            self.fail()
        except ArityMismatch:
            pass

    def test_constructors_are_valid(self):
        for r in (equality(AB), equal_length(AB), prefix_order(AB), llex_order(AB), lex_order(AB),
                  append_symbol(AB, "b"), at_most_as_long(), length_plus_two()):
            self.assertTrue(r.validate())

    def test_alphabet_checked(self):
        try:
            RegularRelation(2, AB, regex.parse(AB, "a*"))
            self.fail()
        except AlphabetMismatch:
            pass

    def test_complement(self):
        r = equality(AB).complement()
        self.assertTrue(r.contains(["a", "ab"]))
        self.assertFalse(r.contains(["ab", "ab"]))
        self.assertTrue(r.validate())

    def test_json_round_trip(self):
        r = self.get_instance()
        again = RegularRelation.from_json(r.to_json())
        self.assertEqual(r.dumps(), again.dumps())
        self.assertTrue(r.equivalent(again))


class TestBuiltins(unittest.TestCase):

    def words(self, n=3):
        for length in range(n + 1):
            for w in itertools.product("ab", repeat=length):
                yield "".join(w)

    def test_orders_agree_with_definitions(self):
        llex, strict, lex, pf = llex_order(AB), llex_order(AB, strict=True), lex_order(AB), prefix_order(AB)
        for u in self.words():
            for v in self.words():
                self.assertEqual((len(u), u) <= (len(v), v), llex.contains([u, v]))
                self.assertEqual((len(u), u) < (len(v), v), strict.contains([u, v]))
                self.assertEqual(u <= v, lex.contains([u, v]))
                self.assertEqual(v.startswith(u), pf.contains([u, v]))

    def test_equal_length_and_append(self):
        eq_len, app = equal_length(AB), append_symbol(AB, "b")
        for u in self.words():
            for v in self.words():
                self.assertEqual(len(u) == len(v), eq_len.contains([u, v]))
                self.assertEqual(v == u + "b", app.contains([u, v]))


class TestRelationAlgebra(unittest.TestCase):

    def test_compose_identity(self):
        r = llex_order(AB)
        self.assertTrue(compose(equality(AB), r, 1, 1, 1).equivalent(r))

    def test_compose_successor(self):
        r = compose(successor(), successor(), 1, 1, 1)
        for i in range(7):
            for j in range(9):
                self.assertEqual(j == i + 2, r.contains(["0" * i, "0" * j]))

    def test_compose_empty(self):
        self.assertTrue(compose(successor(), empty_relation(UNARY, 2), 1, 1, 1).is_empty())

    def test_compose_arity_mismatch(self):
        try:
            compose(successor(), successor(), 1, 2, 1)
            self.fail()
        except ArityMismatch:
            pass

    def test_project_equality(self):
        self.assertTrue(equivalent(to_language(project(equality(AB), 1)), regex.parse(AB, "(a|b)*")))

    def test_project_empty(self):
        self.assertTrue(project(empty_relation(AB, 2), 0).is_empty())

    def test_project_longer_witness(self):
        language = to_language(project(successor(), 0))
        self.assertEqual(["0" * j for j in range(1, 7)], ["".join(w) for w in enumerate_upto(language, 6)])
        self.assertTrue(to_language(project(successor(), 1)).accepts("0000"))

    def test_lift_repeated_track(self):
        diagonal = lift(from_language(regex.parse(AB, "a*")), 2, [0])
        self.assertTrue(diagonal.contains(["aa", "bab"]))
        self.assertFalse(diagonal.contains(["ab", "a"]))
        same = lift(llex_order(AB, strict=True), 2, [1, 1])
        self.assertTrue(same.is_empty())

    def test_image(self):
        self.assertTrue(equivalent(image(equality(AB), regex.parse(AB, "a*b"), 1), regex.parse(AB, "a*b")))
        self.assertEqual([("0",)], enumerate_upto(image(successor(), regex.parse(UNARY, "()"), 1), 5))
        grown = image(append_symbol(Alphabet(["a"]), "a"), regex.parse(Alphabet(["a"]), "a*"), 1)
        self.assertTrue(equivalent(grown, regex.parse(Alphabet(["a"]), "a+")))

    def test_finite_outdegree(self):
        self.assertTrue(is_finite_outdegree(successor(), 1))
        self.assertFalse(is_finite_outdegree(prefix_order(Alphabet(["a"])), 1))
        self.assertTrue(is_finite_outdegree(at_most_as_long(), 1))

    def test_length_increase_constant(self):
        kappa = length_increase_constant(successor(), 1)
        self.assertGreaterEqual(kappa, 1)
        for n in range(11):
            self.assertLessEqual(n + 1, n + kappa)
        kappa = length_increase_constant(equality(AB), 1)
        self.assertGreaterEqual(kappa, 0)
        shifted = length_plus_two()
        flipped = lift(shifted, 2, [1, 0])
        kappa = length_increase_constant(flipped, 1)
        self.assertGreaterEqual(kappa, 2)
        for n in range(10):
            self.assertTrue(flipped.contains(["a" * n, "a" * (n + 2)]))
            self.assertLessEqual(n + 2, n + kappa)

    def test_length_increase_rejects_infinite(self):
        try:
            length_increase_constant(prefix_order(AB), 1)
            self.fail()
        except InfiniteOutdegree:
            pass

    @given(random_relations(), random_relations())
    @settings(max_examples=30, deadline=None)
    def test_compose_brute_force(self, r, s):
        c = compose(r, s, 1, 1, 1)
        witness_bound = 4 + (r.acceptor.state_count + 1) * (s.acceptor.state_count + 1)
        for i in range(5):
            for j in range(5):
                expected = any(r.contains(["0" * i, "0" * k]) and s.contains(["0" * k, "0" * j])
                               for k in range(witness_bound + 1))
                self.assertEqual(expected, c.contains(["0" * i, "0" * j]))

    @given(random_relations())
    @settings(max_examples=40, deadline=None)
    def test_length_bound_holds(self, r):
        if not is_finite_outdegree(r, 1):
            return
        kappa = length_increase_constant(r, 1)
        for i in range(10):
            for j in range(10 + kappa + 3):
                if r.contains(["0" * i, "0" * j]):
                    self.assertLessEqual(j, i + kappa)


class TestTransducer(unittest.TestCase):

    def test_append_two_letters(self):
        t = AsyncTransducer(AB, 2, 0, [1], [(0, "a", "a", 0), (0, "b", "b", 0), (0, "", "aa", 1)])
        r = t.to_relation()
        self.assertTrue(r.validate())
        for length in range(4):
            for w in itertools.product("ab", repeat=length):
                u = "".join(w)
                self.assertTrue(r.contains([u, u + "aa"]))
                self.assertFalse(r.contains([u, u + "a"]))
                self.assertFalse(r.contains([u, u]))

    def test_delayed_copy(self):
        # v = u shifted by one letter: u = x w, v = w x
        moves = [(0, "a", "", 1), (0, "b", "", 2), (0, "", "", 3)]
        for state, letter in ((1, "a"), (2, "b")):
            moves += [(state, "a", "a", state), (state, "b", "b", state), (state, "", letter, 3)]
        r = AsyncTransducer(AB, 4, 0, [3], moves).to_relation()
        self.assertTrue(r.contains(["abb", "bba"]))
        self.assertTrue(r.contains(["", ""]))
        self.assertFalse(r.contains(["abb", "abb"]))

    def test_lag_cutoff(self):
        t = AsyncTransducer(AB, 2, 0, [1], [(0, "a", "a", 0), (0, "b", "b", 0), (0, "", "aaa", 1)])
        self.assertFalse(t.to_relation(max_lag=1).contains(["ab", "abaaa"]))
        self.assertTrue(t.to_relation(max_lag=2).contains(["ab", "abaaa"]))

    def test_lag_does_not_change_bounded_relation(self):
        moves = [(0, "a", "", 1), (0, "b", "", 2), (0, "", "", 3)]
        for state, letter in ((1, "a"), (2, "b")):
            moves += [(state, "a", "a", state), (state, "b", "b", state), (state, "", letter, 3)]
        t = AsyncTransducer(AB, 4, 0, [3], moves)
        self.assertTrue(t.to_relation(max_lag=1).equivalent(t.to_relation(max_lag=6)))
