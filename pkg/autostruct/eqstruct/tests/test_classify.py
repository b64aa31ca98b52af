import collections
import unittest

import sympy

from autostruct.common.constants import OMEGA
from autostruct.common.exceptions import *
from autostruct.eqstruct import *
from autostruct.eqstruct.tests.oracles import fiber_sizes
from autostruct.presentation.formula import parse
from autostruct.semilinear import GeneralizedVpf, VectorPartitionFn, linear

x0 = sympy.Symbol("x0")


def predicted(d: EqDescriptor, limit: int) -> collections.Counter:
    return collections.Counter({k: class_count(d, k) for k in range(1, limit + 1) if class_count(d, k)})


class TestFiberSpec(unittest.TestCase):

    def get_instance(self):
        return FiberSpec(2, 1, parse("z = x & y <= x"), ["x", "y", "z"])

    def test_parts(self):
        spec = self.get_instance()
        self.assertEqual(["x", "y"], spec.arguments)
        self.assertEqual(["z"], spec.values)

    def test_json(self):
        spec = FiberSpec.loads('{"m": 2, "n": 1, "variables": ["x", "y", "z"], "graph": "z = x & y <= x"}')
        self.assertEqual(self.get_instance().to_json(), spec.to_json())
        try:
            FiberSpec.from_json({"m": 1})
            self.fail()
        except SerializationError:
            pass

    def test_invalid(self):
        for m, n, text, variables in ((1, 1, "y = x", ["x"]), (1, 1, "y = u", ["x", "y"]),
                                      (1, 1, "y = x", ["x", "x"])):
            try:
                FiberSpec(m, n, parse(text), variables)
                self.fail()
            except ArityMismatch:
                pass


class TestClassify(unittest.TestCase):

    def test_projection_below_diagonal(self):
        spec = TestFiberSpec().get_instance()
        d = classify(spec)
        self.assertTrue(all(p.is_natural() for p in d.polys))
        self.assertEqual([1] * 16, [class_count(d, k) for k in range(1, 17)])
        self.assertEqual(fiber_sizes(spec, 15, 16), predicted(d, 16))

    def test_identity(self):
        d = classify(FiberSpec(1, 1, parse("y = x"), ["x", "y"]))
        self.assertEqual(OMEGA, class_count(d, 1))
        self.assertEqual(0, class_count(d, 2))

    def test_pairs_below(self):
        spec = FiberSpec(3, 1, parse("w = x & y < z & z < x"), ["y", "z", "x", "w"])
        d = classify(spec)
        self.assertTrue(all(p.is_natural() for p in d.polys))
        self.assertEqual(collections.Counter({1: 1, 3: 1, 6: 1, 10: 1, 15: 1}), predicted(d, 16))
        self.assertEqual(fiber_sizes(spec, 6, 6), predicted(d, 16))

    def test_two_values(self):
        spec = FiberSpec(1, 2, parse("y0 = x & y1 = x + 1"), ["x", "y0", "y1"])
        d = classify(spec)
        self.assertEqual(OMEGA, class_count(d, 1))

    def test_not_a_function(self):
        try:
            classify(FiberSpec(1, 1, parse("y <= x"), ["x", "y"]))
            self.fail()
        except NonFunctionalGraph:
            pass

    def test_infinite_fiber(self):
        try:
            classify(FiberSpec(1, 1, parse("y = 0"), ["x", "y"]))
            self.fail()
        except InfiniteFiber:
            pass


class TestGvpfDescriptor(unittest.TestCase):

    def get_instance(self):
        g = GeneralizedVpf(1, [(VectorPartitionFn([[1, 2]]), [0])])
        chambers = [(linear([0], [[2]]), x0 / 2 + 1), (linear([1], [[2]]), (x0 + 1) / 2)]
        return g, chambers

    def test_half_plus_one(self):
        d = gvpf_to_descriptor(*self.get_instance())
        p = Polynomial.from_sympy(x0 + 1, [x0])
        self.assertEqual([p, p], d.polys)
        self.assertEqual([2] * 10, [class_count(d, k) for k in range(1, 11)])

    def test_constant(self):
        identity = VectorPartitionFn([[1]])
        g = GeneralizedVpf(1, [(identity, [0])] * 3)
        d = gvpf_to_descriptor(g, [(linear([0], [[1]]), sympy.Integer(3))])
        self.assertEqual([Polynomial.constant(1, 3)], d.polys)
        self.assertEqual(OMEGA, class_count(d, 3))

    def test_identity(self):
        g = GeneralizedVpf(1, [(VectorPartitionFn([[1]]), [0])])
        d = gvpf_to_descriptor(g, [(linear([0], [[1]]), sympy.Integer(1))])
        self.assertEqual(OMEGA, class_count(d, 1))
        self.assertEqual(0, class_count(d, 2))

    def test_wrong_polynomial(self):
        g, chambers = self.get_instance()
        try:
            gvpf_to_descriptor(g, [chambers[0], (chambers[1][0], x0)])
            self.fail()
        except ValidationFailure:
            pass

    def test_uncovered_points(self):
        g, chambers = self.get_instance()
        try:
            gvpf_to_descriptor(g, chambers[:1])
            self.fail()
        except ValidationFailure:
            pass
