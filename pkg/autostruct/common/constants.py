from enum import Enum

# Convolution padding
PAD = "_"

# JSON markers
OMEGA_MARKER = "omega"
INFINITY_MARKER = "inf"

# Automaton JSON keys
ALPHABET = "alphabet"
STATES = "states"
INITIAL = "initial"
ACCEPTING = "accepting"
TRANSITIONS = "transitions"
DETERMINISTIC = "deterministic"

# Relation / presentation JSON keys
ARITY = "arity"
BASE = "base"
ACCEPTOR = "acceptor"
DOMAIN = "domain"
RELATIONS = "relations"

# Builtin relation names of every presentation
EQ_RELATION = "eq"
LLEX_RELATION = "llex"
LEN_EQ_RELATION = "lenEq"

# Exit codes
EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2


class Omega:
    """The cardinal ω, used for infinite counts."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return OMEGA_MARKER

    def __reduce__(self):
        return Omega, ()


OMEGA = Omega()


def count_to_json(value):
    return OMEGA_MARKER if value is OMEGA else value


def count_from_json(value):
    if value == OMEGA_MARKER:
        return OMEGA
    if type(value) is not int or value < 0:
        raise ValueError("count must be a natural number or 'omega'")
    return value


# Builders exposed by `build`
class Builder(str, Enum):

    def __new__(cls, value, parametrized: bool = False):
        builder = str.__new__(cls, value)
        builder._value_ = value
        builder.parametrized = parametrized
        return builder

    Omega           = "omega", False
    Presburger      = "presburger", True
    PresburgerDiv   = "divp", True
    Tree            = "tree", True
    Grid            = "grid", False
    Triangular      = "triangular", False
    OneInfinite     = "one-infinite", False
    OmegaInfinite   = "omega-infinite", False

# Bounded pattern / growth JSON keys
PREFIXES = "prefixes"
LOOPS = "loops"
POLYNOMIAL = "polynomial"
DEGREE = "degree"
PATTERNS = "patterns"

# Semilinear JSON keys
DIMENSION_KEY = "n"
OFFSET = "offset"
PERIODS = "periods"
PIECES = "pieces"
DISJOINT_SIMPLE = "disjointSimple"
MATRIX = "matrix"
SHIFT = "shift"
TERMS = "terms"

# Cell JSON keys
GAP_BOUND = "s"
SIGMA = "sigma"
GAPS = "d"
CELLS = "cells"
GUARD = "guard"
VALUE = "value"
COEFF = "coeff"
ATOMS = "atoms"
ATOM_COEFFS = "a"
ATOM_SHIFT = "b"
ATOM_CHOOSE = "c"

# Equivalence structure JSON keys
POLYS = "polys"
MONOMIALS = "monomials"
EXPONENTS = "exps"
INFINITE_CLASSES = "infiniteClasses"
COUNTS = "counts"
TRUNCATED = "truncated"
