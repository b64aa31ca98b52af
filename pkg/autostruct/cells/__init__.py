from .cell import INF, SCell, CellUnion, cell_member, cell_of, cells_equal_or_disjoint, all_cells, cell_param
from .qe import qe, holds, max_constant
from .decompose import qf_to_cells
from .fiber import (BinomialAtom, BasicPolynomial, GuardConstraint, FiberData, binom, fiber_data, fiber_count,
                    compose_fiber_affine)
