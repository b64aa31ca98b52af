import itertools
import unittest

from hypothesis import given, settings

from autostruct.automata import regex
from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import empty_automaton, equivalent
from autostruct.automata.counting import count_words_upto, enumerate_upto
from autostruct.automata.tests.test_automaton import AB, small_automata
from autostruct.common.exceptions import *
from autostruct.growth import *


def a_star_b_star():
    return [BoundedPattern(["", ""], ["a"]), BoundedPattern(["", "b", ""], ["a", "b"])]


class TestBoundedPattern(unittest.TestCase):

    def get_instance(self):
        return BoundedPattern(["", "b"], ["aa"])

    def test_word(self):
        self.assertEqual(tuple("aaaab"), self.get_instance().word([2]))
        self.assertEqual(("b",), self.get_instance().word([0]))

    def test_language(self):
        language = self.get_instance().language(AB)
        self.assertTrue(equivalent(regex.parse(AB, "(aa)*b"), language))

    def test_invalid(self):
        for prefixes, loops in ((["", "b"], [""]), (["a"], ["b"])):
            try:
                BoundedPattern(prefixes, loops)
                self.fail()
            except ValueError:
                pass

    def test_json(self):
        p = self.get_instance()
        self.assertEqual({"prefixes": ["", "b"], "loops": ["aa"]}, p.to_json())
        self.assertEqual(p, BoundedPattern.from_json(p.to_json()))
        self.assertEqual("ε·(aa)*·b", repr(p))
        q = BoundedPattern([("p0_a0", "p0_a0")])
        self.assertEqual(q, BoundedPattern.from_json(q.to_json()))

    def test_malformed_json(self):
        try:
            BoundedPattern.from_json({"loops": []})
            self.fail()
        except SerializationError:
            pass

    def test_exponent_count(self):
        self.assertEqual(6, exponent_count(a_star_b_star()[1], 3))
        self.assertEqual(0, exponent_count(BoundedPattern(["abc"]), 2))


class TestClassify(unittest.TestCase):

    def get_instance(self, text="a*b*"):
        return regex.parse(AB, text)

    def test_exponential(self):
        report = classify_growth(self.get_instance("(a|b)*"))
        self.assertFalse(report.polynomial)
        self.assertIsNone(report.degree)
        self.assertEqual({"polynomial": False, "degree": None, "patterns": []}, report.to_json())

    def test_exponential_witness(self):
        counts = count_words_upto(self.get_instance("(a|b)*"), 8)
        for n in range(9):
            self.assertGreaterEqual(counts[n], 2 ** n)

    def test_a_star_b_star(self):
        report = classify_growth(self.get_instance())
        self.assertTrue(report.polynomial)
        self.assertEqual(2, report.degree)
        self.assertEqual(a_star_b_star(), report.patterns)
        self.assertEqual([1, 3, 6, 10, 15], count_words_upto(self.get_instance(), 4))

    def test_ab_star(self):
        report = classify_growth(self.get_instance("(ab)*"))
        self.assertEqual(1, report.degree)
        self.assertEqual([n // 2 + 1 for n in range(10)], count_words_upto(self.get_instance("(ab)*"), 9))

    def test_finite(self):
        report = classify_growth(self.get_instance("()|ab"))
        self.assertTrue(report.polynomial)
        self.assertEqual(0, report.degree)

    def test_empty(self):
        report = classify_growth(empty_automaton(AB))
        self.assertEqual((True, 0, []), (report.polynomial, report.degree, report.patterns))

    def test_union_of_orders(self):
        self.assertEqual(2, classify_growth(self.get_instance("a*b*|b*a*")).degree)
        self.assertEqual(3, classify_growth(self.get_instance("a*ba*ba*")).degree)

    def test_one_cycle_with_chord_is_exponential(self):
        self.assertFalse(classify_growth(self.get_instance("(ab|b)*")).polynomial)

    @given(small_automata())
    @settings(max_examples=60, deadline=None)
    def test_patterns_cover_language(self, a):
        report = classify_growth(a)
        if report.polynomial:
            union = regex.union(*[p.language(AB) for p in report.patterns]) if report.patterns \
                else empty_automaton(AB)
            self.assertTrue(equivalent(union, a))
            self.assertEqual(report.degree, max((p.loop_count for p in report.patterns), default=0))


class TestDecomposition(unittest.TestCase):

    def get_instance(self, text):
        return regex.parse(AB, text)

    def test_finite(self):
        self.assertEqual([BoundedPattern([""]), BoundedPattern(["ab"])], bounded_decomposition(self.get_instance("()|ab")))

    def test_even_then_b(self):
        self.assertEqual([BoundedPattern(["", "b"], ["aa"])], bounded_decomposition(self.get_instance("(aa)*b")))

    def test_a_star_b_star(self):
        self.assertEqual(a_star_b_star(), bounded_decomposition(self.get_instance("a*b*")))

    def test_empty(self):
        self.assertEqual([], bounded_decomposition(empty_automaton(AB)))

    def test_rejects_exponential(self):
        try:
            bounded_decomposition(self.get_instance("(a|b)*"))
            self.fail()
        except NotPolynomialGrowth:
            pass

    def test_patterns_are_disjoint(self):
        patterns = bounded_decomposition(self.get_instance("a*b*|b*a*"))
        for p, q in itertools.combinations(patterns, 2):
            self.assertEqual([], [w for w in enumerate_upto(p.language(AB), 6) if q.language(AB).accepts(w)])


class TestRecode(unittest.TestCase):

    def test_single_word(self):
        normalized, recode = normalize_letters([BoundedPattern(["ab"])], AB)
        self.assertEqual([BoundedPattern([("p0_a0", "p0_a0")])], normalized)
        self.assertEqual(("p0_a0", "p0_a0"), recode.translate("ab"))
        self.assertIsNone(recode.translate("ba"))
        self.assertEqual(("a", "b"), recode.restore(("p0_a0", "p0_a0")))

    def test_loop(self):
        normalized, recode = normalize_letters([BoundedPattern(["", ""], ["ab"])], AB)
        self.assertEqual([BoundedPattern([(), ()], [("p0_b0", "p0_b0")])], normalized)
        for i in range(6):
            self.assertEqual(("p0_b0",) * (2 * i), recode.translate("ab" * i))

    def test_disjoint_alphabets(self):
        normalized, _ = normalize_letters(a_star_b_star(), AB)
        self.assertFalse(set(normalized[0].tokens) & set(normalized[1].tokens))

    def test_bijection(self):
        language = regex.parse(AB, "a*b*")
        normalized, recode = normalize_letters(bounded_decomposition(language), AB)
        sources = enumerate_upto(language, 8)
        images = [recode.translate(w) for w in sources]
        for w, image in zip(sources, images):
            self.assertEqual(len(w), len(image))
        self.assertEqual(len(sources), len(set(images)))
        target = regex.union(*[p.language(recode.target) for p in normalized])
        self.assertEqual(set(images), set(enumerate_upto(target, 8)))

    def test_invalid(self):
        for patterns in ([], [BoundedPattern([("p0_a0",)])]):
            try:
                normalize_letters(patterns)
                self.fail()
            except ValueError:
                pass


class TestExponents(unittest.TestCase):

    def test_even(self):
        a = Alphabet(["a"])
        s = pattern_exponents(regex.parse(a, "(aa)*"), BoundedPattern(["", ""], ["a"]))
        for i in range(11):
            self.assertEqual(i % 2 == 0, s.member((i,)), i)
        self.assertTrue(s.disjoint_simple)

    def test_a_star_b_star(self):
        s = pattern_exponents(regex.parse(AB, "a*b*"), a_star_b_star()[1])
        s0 = pattern_exponents(regex.parse(AB, "a*b*"), BoundedPattern(["", "", ""], ["a", "b"]))
        for i, j in itertools.product(range(9), repeat=2):
            self.assertTrue(s0.member((i, j)))
            self.assertTrue(s.member((i, j)))

    def test_a_star_b(self):
        s = pattern_exponents(regex.parse(AB, "a*b"), BoundedPattern(["", "b"], ["a"]))
        for i in range(9):
            self.assertTrue(s.member((i,)))
        self.assertFalse(pattern_exponents(regex.parse(AB, "a*b"), BoundedPattern(["", ""], ["a"])).member((3,)))

    def test_no_loops(self):
        self.assertTrue(pattern_exponents(regex.parse(AB, "ab"), BoundedPattern(["ab"])).member(()))
        self.assertFalse(pattern_exponents(regex.parse(AB, "ab"), BoundedPattern(["ba"])).member(()))

    @given(small_automata())
    @settings(max_examples=40, deadline=None)
    def test_agrees_with_membership(self, a):
        pattern = BoundedPattern(["a", "b", ""], ["ab", "b"])
        s = pattern_exponents(a, pattern)
        for i, j in itertools.product(range(6), repeat=2):
            self.assertEqual(a.accepts(pattern.word((i, j))), s.member((i, j)), (i, j))
