import unittest

from hypothesis import given, settings, strategies as st

from autostruct.cells import holds, max_constant, qe
from autostruct.cells.qe import quantifier_depth
from autostruct.cells.tests.oracles import box
from autostruct.common.exceptions import MalformedTerm
from autostruct.presentation.formula import (TRUE, FALSE, Comparison, CompareOp, Not, Quantified, Quantifier, Term,
                                             conj, disj, parse)

VARIABLES = ["x", "y", "z"]

terms = st.builds(Term, st.sampled_from(VARIABLES + [None]), st.integers(min_value=0, max_value=1))
comparisons = st.builds(Comparison, terms, st.sampled_from(list(CompareOp)), terms)


def _extend(inner):
    quantified = st.sampled_from([Quantifier.EXISTS, Quantifier.FORALL])
    return st.one_of(st.builds(Not, inner),
                     st.builds(conj, inner, inner),
                     st.builds(disj, inner, inner),
                     st.builds(Quantified, quantified, st.sampled_from(["y", "z"]), inner))


order_formulas = st.recursive(comparisons, _extend, max_leaves=4).filter(lambda f: quantifier_depth(f) <= 2)


class TestQe(unittest.TestCase):

    def check(self, text, expected):
        self.assertEqual(expected, str(qe(parse(text))))

    def test_trivial(self):
        self.assertEqual(TRUE, qe(parse("E y . y = x")))

    def test_interval(self):
        self.check("E y . (suc(x) <= y & y <= z)", "z >= x+1")
        self.check("E y . (x < y & y < z)", "z >= x+2")

    def test_lower_bounds(self):
        self.check("E y . (y <= x & y >= 3)", "x >= 3")
        self.check("E y . y < x", "x >= 1")

    def test_upper_bound(self):
        self.check("E y . (x + 2 <= y & y <= 5)", "!(x >= 4)")

    def test_equalities(self):
        self.check("E y . (y = x+2 & y = 5)", "x = 3")
        self.check("E y . (y = x+2 & z = y+1)", "z = x+3")

    def test_universal(self):
        self.check("A y . (y <= x -> y <= z)", "z >= x")

    def test_sentences(self):
        self.assertEqual(TRUE, qe(parse("A x . E y . y > x")))
        self.assertEqual(FALSE, qe(parse("E x . A y . y <= x")))
        self.assertEqual(FALSE, qe(parse("E x . (x < 2 & x > 1)")))

    def test_outside_the_order_language(self):
        for text in ("Einf y . y > x", "E y . le(x, y)"):
            try:
                qe(parse(text))
                self.fail()
            except MalformedTerm:
                pass

    @given(order_formulas)
    @settings(max_examples=40, deadline=None)
    def test_equivalent_on_a_box(self, formula):
        result = qe(formula, certify=False)
        self.assertEqual(0, quantifier_depth(result))
        free = sorted(set(formula.free_variables()) | set(result.free_variables()))
        for values in box(len(free), 4):
            env = dict(zip(free, values))
            self.assertEqual(holds(formula, env), holds(result, env), env)


class TestHolds(unittest.TestCase):

    def test_max_constant(self):
        self.assertEqual(5, max_constant(parse("E y . (x + 2 <= y & y <= 5)")))
        self.assertEqual(0, max_constant(parse("x = y")))

    def test_values(self):
        self.assertTrue(holds(parse("E y . (x < y & y < z)"), {"x": 1, "z": 3}))
        self.assertFalse(holds(parse("E y . (x < y & y < z)"), {"x": 1, "z": 2}))
        self.assertTrue(holds(parse("A y . y >= x"), {"x": 0}))

    def test_explicit_bound(self):
        self.assertFalse(holds(parse("E y . y > 10"), {}, witness_bound=10))
        self.assertTrue(holds(parse("E y . y > 10"), {}))
