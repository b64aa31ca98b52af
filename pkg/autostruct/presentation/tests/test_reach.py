import unittest

from autostruct.common.exceptions import *
from autostruct.presentation import *
from autostruct.presentation.terms import order_successor

NEIGHBOURS = parse("E0(x, y) | E0(y, x) | E1(x, y) | E1(y, x)")


def ball(n: int) -> int:
    """Points of ℤ² at L1 distance at most n from the origin, by breadth-first search."""
    seen = {(0, 0)}
    frontier = [(0, 0)]
    for _ in range(n):
        following = []
        for (i, k) in frontier:
            for point in ((i + 1, k), (i - 1, k), (i, k + 1), (i, k - 1)):
                if point not in seen:
                    seen.add(point)
                    following.append(point)
        frontier = following
    return len(seen)


class TestReach(unittest.TestCase):

    def get_instance(self):
        return grid_example()

    def test_grid_balls(self):
        result = reach(self.get_instance(), NEIGHBOURS, ["x"], "y", [encode_grid(0, 0)], 4)
        self.assertEqual([ball(n) for n in range(5)], result.sizes)
        self.assertEqual([1, 5, 13, 25, 41], result.sizes)
        self.assertTrue(result.acceptor.accepts(encode_grid(-2, 2)))
        self.assertFalse(result.acceptor.accepts(encode_grid(3, 2)))

    def test_omega_successor(self):
        result = reach(omega_le(), order_successor("x", "y"), ["x"], "y", [""], 5)
        self.assertEqual([1, 2, 3, 4, 5, 6], result.sizes)
        self.assertEqual({"steps": 5, "sizes": [1, 2, 3, 4, 5, 6]}, result.to_json())

    def test_sizes_stay_polynomial(self):
        p = self.get_instance()
        degree = is_poly_growth(p).degree
        result = reach(p, NEIGHBOURS, ["x"], "y", [encode_grid(0, 0), encode_grid(2, -1)], 5)
        for n, size in enumerate(result.sizes):
            self.assertLessEqual(size, 64 * (n + 1) ** (degree + 1))
        self.assertEqual(sorted(result.sizes), result.sizes)

    def test_binary_step(self):
        # sums of reached numbers: from {1} the reached set doubles its maximum every step
        p = presburger(2)
        result = reach(p, parse("plus(x, z, y)"), ["x", "z"], "y", [encode_number(1)], 3)
        self.assertEqual([1, 2, 4, 8], result.sizes)

    def test_empty_start(self):
        result = reach(omega_le(), order_successor("x", "y"), ["x"], "y", [], 3)
        self.assertEqual([0, 0, 0, 0], result.sizes)

    def test_start_outside_domain(self):
        try:
            reach(presburger(2), parse("plus(x, x, y)"), ["x"], "y", ["10"], 2)
            self.fail()
        except ValueError:
            pass

    def test_output_must_be_distinct(self):
        try:
            reach(omega_le(), parse("le(x, y)"), ["x"], "x", [""], 2)
            self.fail()
        except ArityMismatch:
            pass

    def test_growth_of_builders(self):
        self.assertEqual(1, is_poly_growth(omega_le()).degree)
        self.assertEqual(2, is_poly_growth(self.get_instance()).degree)
        self.assertFalse(is_poly_growth(presburger(2)).polynomial)
