import json
import unittest

from autostruct.common.exceptions import *
from autostruct.presentation import *
from autostruct.presentation.terms import equals_constant, least
from autostruct.relations.padded import convolve

# φ_le on pairs (x0, x1) with x1 < 3: the lexicographic order, i.e. the order of 3·x0 + x1
PAIR_ORDER = parse("(le(x0, y0) & !(x0 = y0)) | (x0 = y0 & le(x1, y1))")

SENTENCES = [
    ("A u . E v . le(u, v) & !(u = v)", True),
    ("E u . A v . le(u, v)", True),
    ("A u . E v . le(u, v) & div3(v)", True),
    ("E u . E v . le(u, v) & le(v, u) & !(u = v)", False),
    ("A u . div3(u) -> E v . le(v, u) & !(v = u) & div3(v)", False),
]


def pairs_below_three() -> Interpretation:
    """ω as ω·3: elements are (x0, x1) with x1 < 3, so div3 picks the multiples of three."""
    domain = exists("_k", conj(equals_constant("_k", 2), Atom("le", ["x1", "_k"])))
    return Interpretation(2, ["x0", "x1"], domain, {
        "le": (["x0", "x1", "y0", "y1"], PAIR_ORDER),
        "div3": (["x0", "x1"], least("x1")),
    })


def pair(x0: int, x1: int):
    return convolve(["0" * x0, "0" * x1], omega_le().base)


class TestInterpretation(unittest.TestCase):

    def get_instance(self):
        return pairs_below_three()

    def test_identity(self):
        p = triangular_example()
        identity = Interpretation(1, ["x"], TRUE, {
            "lex": (["x", "y"], Atom("lex", ["x", "y"])),
            "A": (["x"], Atom("A", ["x"])),
        })
        q = apply_interpretation(p, identity)
        self.assertEqual(p.base, q.base)
        self.assertTrue(p.relation("lex").equivalent(q.relation("lex")))
        self.assertTrue(p.relation("A").equivalent(q.relation("A")))

    def test_domain_and_relations(self):
        q = apply_interpretation(omega_le(), self.get_instance())
        self.assertTrue(q.contains(pair(4, 2)))
        self.assertFalse(q.contains(pair(4, 3)))
        self.assertTrue(q.relation("div3").contains([pair(2, 0)]))
        self.assertFalse(q.relation("div3").contains([pair(2, 1)]))
        self.assertTrue(q.relation("le").contains([pair(1, 2), pair(2, 0)]))
        self.assertFalse(q.relation("le").contains([pair(2, 0), pair(1, 2)]))

    def test_three_divides_six(self):
        q = apply_interpretation(omega_le(), self.get_instance())
        evaluator = PresentationEvaluator(q)

        def divisible(n: int) -> bool:
            return decide(q, exists("v", conj(equals_constant("v", n), Atom("div3", ["v"]))), evaluator)

        self.assertTrue(divisible(6))
        self.assertFalse(divisible(7))

    def test_relativize_commutes_with_apply(self):
        source = omega_le()
        interpretation = self.get_instance()
        target = apply_interpretation(source, interpretation)
        source_evaluator, target_evaluator = PresentationEvaluator(source), PresentationEvaluator(target)
        for text, expected in SENTENCES:
            sentence = parse(text)
            self.assertEqual(expected, decide(target, sentence, target_evaluator), text)
            self.assertEqual(expected, decide(source, interpretation.relativize(sentence), source_evaluator), text)

    def test_relativize_replaces_atoms(self):
        f = self.get_instance().relativize(parse("div3(u)"))
        self.assertEqual(["u_1"], f.free_variables())
        self.assertEqual({"le"}, f.relation_names())

    def test_unknown_relation(self):
        try:
            self.get_instance().relativize(parse("lt(u, v)"))
            self.fail()
        except UnknownRelation:
            pass

    def test_empty_domain(self):
        empty = Interpretation(1, ["x"], parse("!(x = x)"), {})
        try:
            apply_interpretation(omega_le(), empty)
            self.fail()
        except EmptyDomain:
            pass

    def test_arity_mismatch(self):
        try:
            Interpretation(2, ["x0", "x1"], TRUE, {"le": (["x0", "x1", "y0"], TRUE)})
            self.fail()
        except ArityMismatch:
            pass
        try:
            Interpretation(1, ["x"], parse("le(x, y)"), {})
            self.fail()
        except ArityMismatch:
            pass

    def test_dimension(self):
        try:
            Interpretation(0, [], TRUE, {})
            self.fail()
        except ValueError:
            pass

    def test_definitions(self):
        halves = Interpretation(1, ["x"], parse("E y . half(x, y)"), {"same": (["x", "y"], parse("x = y"))},
                                {"half": linear_relation(2, [2])})
        p = apply_interpretation(presburger(2), halves)
        for n in range(12):
            self.assertEqual(n % 2 == 0, p.contains(encode_number(n)), n)
        again = Interpretation.loads(json.dumps(halves.to_json()))
        self.assertTrue(again.definitions["half"].equivalent(halves.definitions["half"]))

    def test_definition_clash(self):
        clash = Interpretation(1, ["x"], TRUE, {}, {"plus": linear_relation(2, [1])})
        try:
            apply_interpretation(presburger(2), clash)
            self.fail()
        except ArityMismatch:
            pass

    def test_json_round_trip(self):
        i = self.get_instance()
        again = Interpretation.loads(json.dumps(i.to_json()))
        self.assertEqual(i.dimension, again.dimension)
        self.assertEqual(i.domain, again.domain)
        self.assertEqual(i.relations, again.relations)

    def test_malformed_json(self):
        for text in ("[", "{}", '{"dimension": 1}'):
            try:
                Interpretation.loads(text)
                self.fail()
            except SerializationError:
                pass
