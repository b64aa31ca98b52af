from .polynomial import Polynomial, natural_parts
from .descriptor import EqDescriptor, ClassMultiset, class_count, level_count
from .classify import FiberSpec, check_functional, classify, gvpf_to_descriptor
from .build import ep_interpretation, build_Ep, build_Eg_presburger
from .empirical import CheckReport, empirical_multiset, check, class_sizes, predicted_sizes
