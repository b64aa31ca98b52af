import json
import logging
import pickle
import unittest

from autostruct.common.constants import *
from autostruct.common.exceptions import *
from autostruct.common.log import enable_logging, is_enabled, log
from autostruct.common.settings import Settings


class TestSettings(unittest.TestCase):

    def get_instance(self):
        return Settings()

    def test_defaults(self):
        i = self.get_instance()
        self.assertEqual(20000, i.counting_state_budget)
        self.assertFalse(i.strict_counting)
        self.assertEqual(2, i.transducer_max_lag)
        self.assertEqual(25, i.chamber_check_bound)

    def test_set(self):
        i = self.get_instance()
        i.counting_state_budget = 100
        i.strict_counting = True
        i.positivity_max_shift = 0
        self.assertEqual(100, i.counting_state_budget)
        self.assertTrue(i.strict_counting)

    def test_set_bad_value(self):
        for name, value in (("counting_state_budget", 99), ("counting_state_budget", "big"), ("strict_counting", 1),
                            ("transducer_max_lag", 0), ("transducer_max_lag", 17),
                            ("disjointness_multiplier_bound", 0), ("qe_certify_limit", -1),
                            ("positivity_max_shift", 65), ("chamber_check_bound", 2.5)):
            i = self.get_instance()
            try:
                setattr(i, name, value)
                self.fail()
            except ValueError:
                pass


class TestExceptions(unittest.TestCase):

    def test_to_json(self):
        e = NotEquivalence("classes of 0 and 1 differ")
        self.assertEqual({"error": "NotEquivalence: classes of 0 and 1 differ"}, json.loads(e.to_json()))
        self.assertEqual("classes of 0 and 1 differ", str(e))

    def test_exit_codes(self):
        self.assertEqual(EXIT_DOMAIN_ERROR, exit_code_for(InfiniteFiber("x")))
        self.assertEqual(EXIT_DOMAIN_ERROR, exit_code_for(ValueError("x")))
        self.assertEqual(EXIT_DOMAIN_ERROR, exit_code_for(json.JSONDecodeError("x", "", 0)))


class TestConstants(unittest.TestCase):

    def test_omega(self):
        self.assertIs(OMEGA, Omega())
        self.assertIs(OMEGA, pickle.loads(pickle.dumps(OMEGA)))
        self.assertEqual("omega", count_to_json(OMEGA))
        self.assertEqual(3, count_to_json(3))
        self.assertIs(OMEGA, count_from_json("omega"))

    def test_count_bad_value(self):
        for value in (-1, "inf", 2.0):
            try:
                count_from_json(value)
                self.fail()
            except ValueError:
                pass

    def test_builders(self):
        self.assertIs(Builder.Tree, Builder("tree"))
        self.assertTrue(Builder.Presburger.parametrized)
        self.assertFalse(Builder.Grid.parametrized)
        self.assertEqual(["omega", "presburger", "divp", "tree", "grid", "triangular", "one-infinite",
                          "omega-infinite"], [b.value for b in Builder])


class TestLog(unittest.TestCase):

    def tearDown(self):
        enable_logging(False)

    def test_gate(self):
        enable_logging(True)
        self.assertTrue(is_enabled())
        with self.assertLogs("autostruct", level=logging.INFO) as captured:
            log(logging.INFO, "3 states")
        self.assertEqual(["INFO:autostruct:3 states"], captured.output)
        enable_logging(False)
        self.assertFalse(is_enabled())
