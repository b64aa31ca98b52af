import collections
import unittest

import sympy

from autostruct.common.exceptions import *
from autostruct.eqstruct import *
from autostruct.presentation import (Interpretation, apply_interpretation, omega_infinite_classes, omega_le,
                                     one_infinite_class, presburger)
from autostruct.semilinear import GeneralizedVpf, VectorPartitionFn

x0, x1 = sympy.symbols("x0 x1")


def poly(expr, arity=1) -> Polynomial:
    return Polynomial.from_sympy(expr, arity=arity)


class TestBuildEp(unittest.TestCase):

    def get_instance(self):
        return build_Ep(poly(x0 + 1))

    def test_successor(self):
        observed = empirical_multiset(self.get_instance(), 5)
        self.assertEqual({k: 1 for k in range(1, 7)}, observed.counts)
        self.assertEqual(0, observed.infinite_class_count)
        self.assertEqual(0, observed.truncated)

    def test_check(self):
        p = self.get_instance()
        self.assertTrue(check(p, EqDescriptor([poly(x0 + 1)]), 4).passed)
        report = check(p, EqDescriptor([poly(x0 + 2)]), 4)
        self.assertFalse(report.passed)
        self.assertEqual({"size": 1, "observed": 1, "predicted": 0}, report.to_json()["mismatches"][0])

    def test_check_too_many_predicted(self):
        report = check(self.get_instance(), EqDescriptor([poly(x0 + 1), poly(x0 + 1)]), 4)
        self.assertFalse(report.passed)
        self.assertEqual({"size": 1, "observed": 1, "predicted": 2}, report.to_json()["mismatches"][0])

    def test_check_unseen_sizes(self):
        # the one class of size 40 has no word of length <= 4
        report = check(self.get_instance(), EqDescriptor([poly(x0 + 1), Polynomial.constant(1, 40)]), 4)
        self.assertFalse(report.passed)
        self.assertIn({"size": 40, "observed": 1, "predicted": "omega"}, report.to_json()["mismatches"])

    def test_class_sizes(self):
        counts, infinite = class_sizes(self.get_instance(), [1, 3, 50])
        self.assertEqual({1: 1, 3: 1, 50: 1}, counts)
        self.assertEqual(0, infinite)

    def test_constant(self):
        p = build_Ep(Polynomial.constant(1, 2))
        observed = empirical_multiset(p, 3)
        self.assertEqual({2: 4}, observed.counts)
        self.assertTrue(check(p, EqDescriptor([Polynomial.constant(1, 2)]), 3).passed)

    def test_product(self):
        p = build_Ep(poly(x0 * x1, 2))
        observed = empirical_multiset(p, 4)
        expected = collections.Counter(x * y for x in range(1, 5) for y in range(1, 5))
        self.assertEqual(dict(expected), observed.counts)
        self.assertTrue(check(p, EqDescriptor([poly(x0 * x1, 2)]), 4).passed)

    def test_coefficients(self):
        p = build_Ep(poly(2 * x0 + 1))
        observed = empirical_multiset(p, 4)
        self.assertEqual({1: 1, 3: 1, 5: 1, 7: 1, 9: 1}, observed.counts)
        self.assertTrue(check(p, EqDescriptor([poly(2 * x0 + 1)]), 4).passed)

    def test_square(self):
        p = build_Ep(poly(x0 ** 2))
        observed = empirical_multiset(p, 3)
        self.assertEqual({1: 1, 4: 1, 9: 1}, observed.counts)
        self.assertTrue(check(p, EqDescriptor([poly(x0 ** 2)]), 3).passed)

    def test_denominator(self):
        p = build_Ep(poly(x0 ** 2 + x0), 2)
        observed = empirical_multiset(p, 3)
        self.assertEqual({1: 1, 3: 1, 6: 1}, observed.counts)
        # even and odd x of (x^2 + x)/2, reindexed by x = 2t and x = 2t + 1
        triangular = EqDescriptor([poly(2 * x0 ** 2 + x0), poly(2 * x0 ** 2 + 3 * x0 + 1)])
        self.assertTrue(check(p, triangular, 3).passed)

    def test_invalid(self):
        for p, denominator, error in ((poly(x0 + 1), 2, ValidationFailure), (poly(x0 + 1), 0, ValueError),
                                      (poly(x0 - 1), 1, PositivityFailure),
                                      (Polynomial.constant(1, 0), 1, ValidationFailure)):
            try:
                build_Ep(p, denominator)
                self.fail()
            except error:
                pass


class TestBuildEg(unittest.TestCase):

    def get_instance(self, *matrices) -> Interpretation:
        return build_Eg_presburger(GeneralizedVpf(1, [(VectorPartitionFn(m), [0]) for m in matrices]))

    def build(self, *matrices):
        return apply_interpretation(presburger(2), self.get_instance(*matrices))

    def test_halves(self):
        p = self.build([[1, 2]])
        observed = empirical_multiset(p, 3)
        self.assertEqual({1: 2, 2: 2, 3: 2, 4: 2}, observed.counts)
        # g(x) = x // 2 + 1: two classes of every size
        self.assertTrue(check(p, EqDescriptor([poly(x0 + 1), poly(x0 + 1)]), 3).passed)
        self.assertFalse(check(p, EqDescriptor([poly(x0 + 1)]), 3).passed)

    def test_identity(self):
        p = self.build([[1]])
        observed = empirical_multiset(p, 2)
        self.assertEqual({1: 4}, observed.counts)
        self.assertTrue(check(p, EqDescriptor([Polynomial.constant(1, 1)]), 2).passed)

    def test_shift(self):
        g = GeneralizedVpf(1, [(VectorPartitionFn([[1]]), [-1])])
        observed = empirical_multiset(apply_interpretation(presburger(2), build_Eg_presburger(g)), 2)
        # y = x - 1 has a solution for x >= 1 only
        self.assertEqual({1: 3}, observed.counts)

    def test_two_terms(self):
        observed = empirical_multiset(self.build([[1]], [[1]]), 2)
        self.assertEqual({2: 4}, observed.counts)

    def test_definitions(self):
        i = self.get_instance([[1, 2]])
        self.assertEqual(["lin0_0"], sorted(i.definitions))
        again = Interpretation.from_json(i.to_json())
        self.assertTrue(again.definitions["lin0_0"].equivalent(i.definitions["lin0_0"]))

    def test_base_mismatch(self):
        try:
            apply_interpretation(presburger(3), self.get_instance([[1, 2]]))
            self.fail()
        except AlphabetMismatch:
            pass

    def test_no_terms(self):
        try:
            self.build()
            self.fail()
        except EmptyDomain:
            pass


class TestEmpirical(unittest.TestCase):

    def test_infinite_classes(self):
        observed = empirical_multiset(omega_infinite_classes(), 4)
        self.assertEqual({}, observed.counts)
        self.assertEqual(5, observed.infinite_class_count)

    def test_one_class(self):
        p = one_infinite_class()
        self.assertEqual(1, empirical_multiset(p, 3).infinite_class_count)
        self.assertTrue(check(p, EqDescriptor([], 1), 3).passed)
        self.assertFalse(check(p, EqDescriptor([], 0), 3).passed)

    def test_not_equivalence(self):
        order = omega_le()
        p = order.with_relations({"~": order.relation("le")})
        try:
            empirical_multiset(p, 3)
            self.fail()
        except NotEquivalence:
            pass

    def test_arity(self):
        try:
            empirical_multiset(presburger(2), 2, "plus")
            self.fail()
        except ArityMismatch:
            pass
