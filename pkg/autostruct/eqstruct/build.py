"""
Presentations of E(p) over ⟨ω,≤⟩ and interpretations of E(g) in ⟨ℕ,+⟩.

An element of E(p) is a tuple ⟨x̄, ȳ, z, w⟩: z picks a monomial of p, w one of its coefficient copies,
and for each variable xᵢ the entries yᵢ,ⱼ below the monomial's exponent range over 0..xᵢ−1 while the
rest are 0. The class of x̄ thus has exactly p(x̄) elements.
"""
import itertools
import logging
import typing

from autostruct.common.constants import LLEX_RELATION
from autostruct.common.exceptions import PositivityFailure, ValidationFailure
from autostruct.common.log import log
from autostruct.eqstruct.polynomial import Polynomial
from autostruct.presentation import terms
from autostruct.presentation.builders import EQUIV, linear_relation, omega_le
from autostruct.presentation.formula import FALSE, TRUE, Atom, Equal, Formula, Not, Quantified, Quantifier, conj, disj
from autostruct.presentation.interpretation import Interpretation, apply_interpretation
from autostruct.presentation.presentation import Presentation
from autostruct.semilinear.vpf import GeneralizedVpf

DIVISIBILITY_CHECK_BOUND = 6


def _primed(variables: typing.Sequence[str]) -> typing.List[str]:
    return [f"{v}p" for v in variables]


def _same_index(indices: typing.Sequence[str]) -> Formula:
    return conj(*[Equal(v, w) for v, w in zip(indices, _primed(indices))])


def ep_interpretation(p: Polynomial) -> Interpretation:
    """The interpretation of E(p) in ⟨ω,≤⟩ for p with natural coefficients."""
    if not p.is_natural():
        raise PositivityFailure(f"{p} has a negative coefficient")
    if p.is_zero():
        raise ValidationFailure("the zero polynomial describes no classes")
    n = p.arity
    indices = [f"x{i}" for i in range(n)]
    exponents = p.max_exponents()
    witnesses = [[f"y{i}_{j}" for j in range(exponents[i])] for i in range(n)]
    monomials = list(p.monomials.items())
    selector = ["z"] if len(monomials) > 1 else []
    widest = max(c for _, c in monomials)
    copies = ["w"] if widest > 1 or not indices + sum(witnesses, []) + selector else []
    coordinates = indices + sum(witnesses, []) + selector + copies
    cases = []
    for z, (exps, coeff) in enumerate(monomials):
        parts = [terms.equals_constant("z", z)] if selector else []
        if copies:
            parts.append(Not(terms.at_least_constant("w", coeff)))
        for i in range(n):
            for j, y in enumerate(witnesses[i]):
                parts.append(terms.strictly_below(y, indices[i]) if j < exps[i] else terms.least(y))
        cases.append(conj(*parts))
    domain = disj(*cases)
    log(logging.DEBUG, f"E({p}) on {len(coordinates)}-tuples")
    return Interpretation(len(coordinates), coordinates, domain,
                         {EQUIV: (coordinates + _primed(coordinates), _same_index(indices))})


def build_Ep(p: Polynomial, denominator: int = 1) -> Presentation:
    """
    Automatic presentation of E(p/denominator) with the single relation '~'. For a denominator μ > 1
    every class of E(p) is thinned to the elements whose rank within the class, in length-lexicographic
    order, is a multiple of μ; p must then be divisible by μ.
    """
    if type(denominator) is not int or denominator < 1:
        raise ValueError("denominator must be a positive integer")
    presentation = apply_interpretation(omega_le(), ep_interpretation(p))
    if denominator == 1:
        return presentation
    for x in itertools.product(range(DIVISIBILITY_CHECK_BOUND + 1), repeat=p.arity):
        if p(x) % denominator:
            raise ValidationFailure(f"{p} at {list(x)} is not divisible by {denominator}")
    rank = conj(Atom(EQUIV, ["y", "x"]), Atom(LLEX_RELATION, ["y", "x"]))
    thinning = Interpretation(1, ["x"], Quantified(Quantifier.MODULO, "y", rank, 0, denominator),
                              {EQUIV: (["x", "xp"], Atom(EQUIV, ["x", "xp"]))})
    return apply_interpretation(presentation, thinning)


def build_Eg_presburger(g: GeneralizedVpf, base: int = 2) -> Interpretation:
    """
    E(g) inside ⟨ℕ,+⟩ in base `base`: the elements are ⟨x̄, ȳ, k⟩ with k below the number of terms,
    A_k ȳ = x̄ + c̄_k and yᵢ = 0 beyond the columns of A_k; '~' compares the x̄ parts. Each row of
    A_k ȳ = x̄ + c̄_k is one atom over a linear relation supplied as a definition; k is left out when
    g has a single term.
    """
    n = g.dimension
    width = max((len(psi.columns) for psi, _ in g.terms), default=0)
    indices = [f"x{i}" for i in range(n)]
    witnesses = [f"y{j}" for j in range(width)]
    selector = ["k"] if len(g.terms) > 1 or not indices + witnesses else []
    coordinates = indices + witnesses + selector
    definitions = {}
    cases = []
    for k, (psi, shift) in enumerate(g.terms):
        parts = [terms.numeral("k", k)] if selector else []
        for i, (x, row, c) in enumerate(zip(indices, psi.rows, shift)):
            used = [(a, y) for a, y in zip(row, witnesses) if a]
            name = f"lin{k}_{i}"
            definitions[name] = linear_relation(base, [a for a, _ in used], c)
            parts.append(Atom(name, [x] + [y for _, y in used]))
        parts.extend(terms.zero(y) for y in witnesses[len(psi.columns):])
        cases.append(conj(*parts))
    domain = disj(*cases) if cases else FALSE
    relation = _same_index(indices) if indices else TRUE
    log(logging.DEBUG, f"E(g) on {len(coordinates)}-tuples from {len(cases)} terms")
    return Interpretation(len(coordinates), coordinates, domain,
                          {EQUIV: (coordinates + _primed(coordinates), relation)}, definitions)
