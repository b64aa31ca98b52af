from .padded import PaddedAlphabet, padded, convolve, deconvolve
from .relation import (RegularRelation, validity_automaton, full_relation, empty_relation, from_language, to_language,
                       lift, project, compose, image, is_finite_outdegree, length_increase_constant)
from .builtins import equality, equal_length, prefix_order, llex_order, lex_order, append_symbol, from_rule
from .transducer import AsyncTransducer
