from .semilinear import (AffineMap, LinearSet, SemilinearSet, linear, member, is_simple, validate_disjoint_simple,
                         series_coeffs, to_formula, to_relation, default_variables)
from .vpf import (VectorPartitionFn, GeneralizedVpf, vpf_eval, gvpf_eval, outdegree_gvpf, check_piecewise,
                  default_symbols)
