import unittest

from hypothesis import given, settings

from autostruct.automata.alphabet import Alphabet
from autostruct.automata.automaton import empty_automaton, universal_automaton
from autostruct.automata.counting import *
from autostruct.automata import regex
from autostruct.automata.tests.test_automaton import AB, small_automata


class TestCounting(unittest.TestCase):

    def get_instance(self, text="a*b*"):
        return regex.parse(AB, text)

    def test_counts_a_star_b_star(self):
        self.assertEqual([1, 3, 6, 10, 15], count_words_upto(self.get_instance(), 4))

    def test_counts_full(self):
        self.assertEqual([1, 3, 7, 15], count_words_upto(universal_automaton(AB), 3))

    def test_counts_empty(self):
        self.assertEqual([0] * 6, count_words_upto(empty_automaton(AB), 5))

    def test_counts_are_exact_for_large_n(self):
        counts = count_words_upto(universal_automaton(AB), 80)
        self.assertEqual(2 ** 81 - 1, counts[80])

    def test_exact_lengths(self):
        self.assertEqual([1, 2, 3, 4], count_words_upto(self.get_instance(), 3).exact())

    def test_growth_count_monotone(self):
        try:
            GrowthCount([1, 0])
            self.fail()
        except ValueError:
            pass

    def test_enumerate(self):
        words = enumerate_upto(self.get_instance(), 2)
        self.assertEqual(["", "a", "b", "aa", "ab", "bb"], ["".join(w) for w in words])
        self.assertEqual([], enumerate_upto(empty_automaton(AB), 2))
        self.assertEqual(["", "ab", "abab"], ["".join(w) for w in enumerate_upto(self.get_instance("(ab)*"), 4)])

    def test_count_words(self):
        self.assertIsNone(count_words(self.get_instance()))
        self.assertEqual(3, count_words(regex.parse(Alphabet(["a"]), "()|a|aa")))

    @given(small_automata())
    @settings(max_examples=60, deadline=None)
    def test_counting_matches_enumeration(self, a):
        for n in range(9):
            self.assertEqual(count_words_upto(a, n)[n], len(enumerate_upto(a, n)))
