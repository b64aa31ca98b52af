from .formula import (Formula, Truth, TRUE, FALSE, Atom, Equal, Term, Comparison, Not, Binary, Quantified, Connective,
                      Quantifier, CompareOp, Fresh, conj, disj, implies, exists, forall, parse, is_well_named)
from .presentation import Presentation
from .evaluator import Section, PresentationEvaluator, eval, decide, count_section, count_witnesses, tuple_relation
from .interpretation import Interpretation, apply_interpretation
from .builders import (omega_le, presburger, presburger_div, pary_tree, grid_example, triangular_example,
                       one_infinite_class, omega_infinite_classes, disjoint_union, encode_number, decode_number,
                       encode_grid, grid_step, linear_relation)
from .reach import ReachSet, reach, is_poly_growth
from . import terms
