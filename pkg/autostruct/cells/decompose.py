import itertools
import logging
import typing

from autostruct.cells.cell import CellUnion, all_cells
from autostruct.cells.qe import holds, max_constant, quantifier_depth
from autostruct.common.exceptions import ArityMismatch, ValidationFailure
from autostruct.common.log import log
from autostruct.common.settings import settings
from autostruct.presentation.formula import Formula


def default_variables(n: int) -> typing.List[str]:
    return [f"x{i}" for i in range(n)]


def qf_to_cells(psi: Formula, n: int, variables: typing.Sequence[str] = None) -> CellUnion:
    """
    The set defined by a quantifier-free ψ as a union of s-cells, s = (largest constant in ψ) + 1.
    At that s every atom has one truth value on a whole cell, so one witness per cell decides it.
    """
    variables = list(variables or default_variables(n))
    if len(variables) != n:
        raise ArityMismatch(f"need {n} variable names, got {len(variables)}")
    unknown = [v for v in psi.free_variables() if v not in variables]
    if unknown:
        raise ArityMismatch(f"free variables {unknown} are not among {variables}")
    if quantifier_depth(psi) > 0:
        raise ValueError("qf_to_cells needs a quantifier-free formula; eliminate quantifiers with qe first")
    s = max_constant(psi) + 1
    cells = [c for c in all_cells(n, s) if holds(psi, dict(zip(variables, c.witness())))]
    union = CellUnion(n, s, cells)
    log(logging.INFO, f"{psi}: {len(cells)} cells at s={s}")
    box = 3 * s * n
    if n <= 3 and (box + 1) ** n <= settings.qe_certify_limit:
        for a in itertools.product(range(box + 1), repeat=n):
            if union.member(a) != holds(psi, dict(zip(variables, a))):
                raise ValidationFailure(f"cell union and {psi} disagree at {list(a)}")
    return union
