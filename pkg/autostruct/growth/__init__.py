from .pattern import BoundedPattern, exponent_count
from .growth import GrowthReport, classify_growth, bounded_decomposition
from .recode import Recode, normalize_letters
from .exponents import pattern_exponents
