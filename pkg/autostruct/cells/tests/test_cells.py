import itertools
import unittest

from hypothesis import given, settings

from autostruct.cells import *
from autostruct.cells.tests.oracles import box, small_cells
from autostruct.common.exceptions import *
from autostruct.presentation.formula import FALSE, parse
from autostruct.semilinear import AffineMap


class TestCell(unittest.TestCase):

    def get_instance(self):
        return SCell(7, 4, range(7), [INF, 2, 0, INF, 1, INF, 0])

    def test_members(self):
        c = self.get_instance()
        for a in ((4, 6, 6, 10, 11, 15, 15), (5, 7, 7, 11, 12, 16, 16), (4, 6, 6, 12, 13, 20, 20)):
            self.assertTrue(cell_member(c, a), a)

    def test_non_members(self):
        c = self.get_instance()
        for a in ((3, 5, 5, 9, 10, 14, 14), (4, 6, 7, 10, 11, 15, 15), (4, 6, 6, 9, 10, 14, 14)):
            self.assertFalse(c.member(a), a)

    def test_singleton(self):
        c = SCell(1, 2, [0], [1])
        self.assertTrue(c.member((1,)))
        self.assertFalse(c.member((2,)))

    def test_arity_mismatch(self):
        try:
            self.get_instance().member((1, 2))
            self.fail()
        except ArityMismatch:
            pass

    def test_invalid(self):
        for sigma, d in (([0, 0], [1, 1]), ([0, 1], [2, 1]), ([0, 1], [1])):
            try:
                SCell(2, 2, sigma, d)
                self.fail()
            except ValueError:
                pass

    def test_witness(self):
        self.assertEqual((4, 6, 6, 10, 11, 15, 15), self.get_instance().witness())

    def test_json(self):
        c = self.get_instance()
        self.assertEqual({"n": 7, "s": 4, "sigma": [0, 1, 2, 3, 4, 5, 6], "d": ["inf", 2, 0, "inf", 1, "inf", 0]},
                         c.to_json())
        self.assertEqual(c, SCell.from_json(c.to_json()))
        try:
            SCell.from_json({"n": 1})
            self.fail()
        except SerializationError:
            pass


class TestEqualOrDisjoint(unittest.TestCase):

    def test_itself(self):
        c = SCell(3, 2, [2, 0, 1], [INF, 1, 0])
        self.assertEqual("equal", cells_equal_or_disjoint(c, c, certify=True))

    def test_swapped_points(self):
        c1, c2 = SCell(2, 2, [0, 1], [0, 1]), SCell(2, 2, [1, 0], [0, 1])
        self.assertEqual("disjoint", cells_equal_or_disjoint(c1, c2, certify=True))

    def test_origin_in_both_orders(self):
        c1, c2 = SCell(2, 2, [0, 1], [0, 0]), SCell(2, 2, [1, 0], [0, 0])
        self.assertEqual("equal", cells_equal_or_disjoint(c1, c2, certify=True))
        for a in box(2, 6):
            self.assertEqual(a == (0, 0), c1.member(a))

    def test_mismatch(self):
        try:
            cells_equal_or_disjoint(SCell(1, 2, [0], [1]), SCell(1, 3, [0], [1]))
            self.fail()
        except CellMismatch:
            pass

    @given(small_cells(), small_cells())
    @settings(max_examples=60, deadline=None)
    def test_certified_answers(self, c1, c2):
        if (c1.n, c1.s) == (c2.n, c2.s):
            cells_equal_or_disjoint(c1, c2, certify=True)


class TestAllCells(unittest.TestCase):

    def test_counts(self):
        self.assertEqual(2, len(all_cells(1, 1)))
        self.assertEqual(6, len(all_cells(2, 1)))
        self.assertEqual(3, len(all_cells(1, 2)))

    def test_partition(self):
        cells = all_cells(2, 2)
        for a in box(2, 8):
            holders = [c for c in cells if c.member(a)]
            self.assertEqual(1, len(holders), a)
            self.assertEqual(holders[0], cell_of(a, 2))

    def test_pairwise_disjoint(self):
        for c1, c2 in itertools.combinations(all_cells(2, 2), 2):
            self.assertEqual("disjoint", cells_equal_or_disjoint(c1, c2))


class TestParam(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(AffineMap((2,), [(1,)]), cell_param(SCell(1, 2, [0], [INF])))
        self.assertEqual(AffineMap((1,)), cell_param(SCell(1, 2, [0], [1])))
        g = cell_param(SCell(2, 1, [0, 1], [INF, 0]))
        self.assertEqual([(x + 1, x + 1) for x in range(7)], [g((x,)) for x in range(7)])

    @given(small_cells())
    @settings(max_examples=40, deadline=None)
    def test_range_is_the_cell(self, c):
        g = cell_param(c)
        images = {g(y): y for y in box(g.dim_in, 8)}
        self.assertEqual(9 ** g.dim_in, len(images))
        for point in images:
            self.assertTrue(c.member(point))
        for a in box(c.n, 8):
            if c.member(a):
                self.assertIn(a, images)


class TestQfToCells(unittest.TestCase):

    def test_all_naturals(self):
        union = qf_to_cells(parse("x0 >= 0"), 1)
        self.assertEqual((1, 2), (union.s, len(union)))

    def test_diagonal(self):
        union = qf_to_cells(parse("x0 = x1"), 2)
        for a in box(2, 9):
            self.assertEqual(a[0] == a[1], union.member(a))
        self.assertTrue(all(len(c.signature()) == 1 for c in union))

    def test_false(self):
        self.assertEqual(0, len(qf_to_cells(FALSE, 2)))

    def test_cells_disjoint(self):
        union = qf_to_cells(parse("x0 <= x1 + 1 & x1 >= 2 | x0 = 3"), 2)
        self.assertEqual(4, union.s)
        for c1, c2 in itertools.combinations(union.cells, 2):
            self.assertEqual("disjoint", cells_equal_or_disjoint(c1, c2, certify=True))

    def test_named_variables(self):
        union = qf_to_cells(parse("b > a + 1"), 2, ["a", "b"])
        self.assertTrue(union.member((0, 2)))
        self.assertFalse(union.member((2, 3)))

    def test_json(self):
        union = qf_to_cells(parse("x0 < x1"), 2)
        again = CellUnion.from_json(union.to_json())
        self.assertEqual(union.cells, again.cells)

    def test_errors(self):
        for text, error in (("x0 < y", ArityMismatch), ("E y . x0 < y", ValueError)):
            try:
                qf_to_cells(parse(text), 1)
                self.fail()
            except error:
                pass
