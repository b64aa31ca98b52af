from .alphabet import Alphabet, Word, llex_compare, word_to_str
from .automaton import (Automaton, determinize, minimize, canonical, intersect, union, complement, difference,
                        is_empty, is_finite, includes, equivalent, accepts, empty_automaton, universal_automaton)
from .counting import GrowthCount, count_words_upto, count_words, enumerate_upto
from . import regex
