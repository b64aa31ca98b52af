"""
Quantifier elimination for ⟨ω, ≤, suc, 0⟩. Formulas are brought into disjunctive normal form over
difference constraints x − y ≥ c (y may be the constant 0); a conjunct is a difference-bound matrix,
closed by Floyd-Warshall, and ∃v drops v from the closed matrix. ∀ is handled as ¬∃¬.
"""
import itertools
import logging
import typing

from autostruct.common.exceptions import MalformedTerm, QeCertificationFailed
from autostruct.common.log import log
from autostruct.common.settings import settings
from autostruct.presentation.formula import (TRUE, FALSE, Binary, Comparison, CompareOp, Connective, Equal, Formula,
                                             Fresh, Not, Quantified, Quantifier, Term, Truth, conj, disj)

ZERO = None
NEG = float("-inf")

Name = typing.Optional[str]
Constraint = typing.Tuple[Name, Name, int]
Conjunct = typing.Dict[typing.Tuple[Name, Name], int]


def _key(name: Name) -> str:
    return "" if name is None else name


def _atom(formula: Formula) -> typing.List[Constraint]:
    if isinstance(formula, Equal):
        return [(formula.left, formula.right, 0), (formula.right, formula.left, 0)]
    x, a = formula.left.variable, formula.left.offset
    y, b = formula.right.variable, formula.right.offset
    op = formula.op
    if op == CompareOp.GE:
        return [(x, y, b - a)]
    if op == CompareOp.GT:
        return [(x, y, b - a + 1)]
    if op == CompareOp.LE:
        return [(y, x, a - b)]
    if op == CompareOp.LT:
        return [(y, x, a - b + 1)]
    return [(x, y, b - a), (y, x, a - b)]


def _negate(c: Constraint) -> Constraint:
    x, y, k = c
    return y, x, 1 - k


def _conjunct(constraints: typing.Iterable[Constraint]) -> Conjunct:
    result = {}
    for x, y, c in constraints:
        if result.get((x, y), NEG) < c:
            result[(x, y)] = c
    return result


def _close(conjunct: Conjunct, extra: typing.Iterable[str] = ()):
    """Closed matrix over the mentioned names plus 0, or None when unsatisfiable over ℕ."""
    names = {ZERO} | set(extra)
    for x, y in conjunct:
        names.update((x, y))
    names = sorted(names, key=_key)
    d = {i: {j: (0 if i == j else NEG) for j in names} for i in names}
    for i in names:
        if i is not ZERO:
            d[i][ZERO] = max(d[i][ZERO], 0)
    for (x, y), c in conjunct.items():
        d[x][y] = max(d[x][y], c)
    for k in names:
        for i in names:
            if d[i][k] == NEG:
                continue
            for j in names:
                if d[k][j] != NEG and d[i][k] + d[k][j] > d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    if any(d[i][i] > 0 for i in names):
        return None
    return names, d


class _Normal:
    """A satisfiable conjunct reduced to equalities with class representatives and non-redundant bounds."""

    def __init__(self, names: typing.List[Name], d):
        classes = {}
        for i in names:
            for r in classes:
                if d[i][r] != NEG and d[r][i] != NEG and d[i][r] + d[r][i] == 0:
                    classes[r].append(i)
                    break
            else:
                classes[i] = [i]
        self.equalities = []
        for r, members in classes.items():
            rep = ZERO if ZERO in members else r
            for x in members:
                if x is not rep:
                    self.equalities.append((x, rep, d[x][rep]))
        reps = [ZERO if ZERO in members else r for r, members in classes.items()]
        self.bounds = []
        for i, j in itertools.permutations(reps, 2):
            c = d[i][j]
            if c == NEG or (j is ZERO and c <= 0):
                continue
            if any(d[i][k] != NEG and d[k][j] != NEG and d[i][k] + d[k][j] >= c for k in reps if k not in (i, j)):
                continue
            self.bounds.append((i, j, c))
        self.equalities.sort(key=lambda e: (_key(e[0]), _key(e[1])))
        self.bounds.sort(key=lambda b: (_key(b[0]), _key(b[1])))

    def is_trivial(self) -> bool:
        return not self.equalities and not self.bounds

    def key(self) -> tuple:
        return tuple(self.equalities), tuple(self.bounds)

    def constraints(self) -> typing.List[Constraint]:
        result = list(self.bounds)
        for x, r, e in self.equalities:
            result.extend([(x, r, e), (r, x, -e)])
        return result

    def formula(self) -> Formula:
        return conj(*([_render_equality(*e) for e in self.equalities] + [_render_bound(*b) for b in self.bounds]))


def _render_equality(x: str, r: Name, e: int) -> Formula:
    if r is ZERO:
        return Comparison(Term(x), CompareOp.EQ, Term(None, e))
    if e == 0:
        return Equal(x, r)
    if e > 0:
        return Comparison(Term(x), CompareOp.EQ, Term(r, e))
    return Comparison(Term(r), CompareOp.EQ, Term(x, -e))


def _render_bound(x: Name, y: Name, c: int) -> Formula:
    if y is ZERO:
        return Comparison(Term(x), CompareOp.GE, Term(None, c))
    if x is ZERO:
        # y <= -c
        return Not(Comparison(Term(y), CompareOp.GE, Term(None, 1 - c)))
    if c >= 0:
        return Comparison(Term(x), CompareOp.GE, Term(y, c))
    return Comparison(Term(x, -c), CompareOp.GE, Term(y))


def _normalize(conjunct: Conjunct) -> typing.Optional[_Normal]:
    closed = _close(conjunct)
    return None if closed is None else _Normal(*closed)


def _product(left: typing.List[Conjunct], right: typing.List[Conjunct]) -> typing.List[Conjunct]:
    result = []
    for a in left:
        for b in right:
            merged = _conjunct(list((x, y, c) for (x, y), c in a.items()) + [(x, y, c) for (x, y), c in b.items()])
            if _close(merged) is not None:
                result.append(merged)
    return result


def _eliminate(dnf: typing.List[Conjunct], v: str) -> typing.List[Conjunct]:
    result = {}
    for conjunct in dnf:
        closed = _close(conjunct, [v])
        if closed is None:
            continue
        names, d = closed
        kept = [n for n in names if n != v]
        projected = {n: {m: d[n][m] for m in kept} for n in kept}
        normal = _Normal(kept, projected)
        result.setdefault(normal.key(), _conjunct(normal.constraints()))
    return list(result.values())


def _negate_dnf(dnf: typing.List[Conjunct]) -> typing.List[Conjunct]:
    result = [{}]
    for conjunct in dnf:
        normal = _normalize(conjunct)
        if normal is None:
            continue
        result = _product(result, [_conjunct([_negate(c)]) for c in normal.constraints()])
        if not result:
            break
    return result


def _dnf(formula: Formula, positive: bool, fresh: Fresh) -> typing.List[Conjunct]:
    if isinstance(formula, Truth):
        return [{}] if formula.value == positive else []
    if isinstance(formula, (Comparison, Equal)):
        constraints = _atom(formula)
        if positive:
            return [_conjunct(constraints)] if _close(_conjunct(constraints)) is not None else []
        return [_conjunct([_negate(c)]) for c in constraints]
    if isinstance(formula, Not):
        return _dnf(formula.body, not positive, fresh)
    if isinstance(formula, Binary):
        left_positive = positive != (formula.connective == Connective.IMPLIES)
        left = _dnf(formula.left, left_positive, fresh)
        right = _dnf(formula.right, positive, fresh)
        if (formula.connective == Connective.AND) == positive:
            return _product(left, right)
        return left + right
    if isinstance(formula, Quantified):
        if formula.quantifier not in (Quantifier.EXISTS, Quantifier.FORALL):
            raise MalformedTerm(f"quantifier {formula.quantifier.value} is outside the order language")
        name = fresh()
        body = formula.body.substitute({formula.variable: name})
        existential = formula.quantifier == Quantifier.EXISTS
        eliminated = _eliminate(_dnf(body, existential, fresh), name)
        return eliminated if existential == positive else _negate_dnf(eliminated)
    raise MalformedTerm(f"{formula} is not a formula over ⟨ω, ≤, suc, 0⟩")


def max_constant(formula: Formula) -> int:
    if isinstance(formula, Comparison):
        return max(formula.left.offset, formula.right.offset)
    return max((max_constant(c) for c in formula.children()), default=0)


def quantifier_depth(formula: Formula) -> int:
    inner = max((quantifier_depth(c) for c in formula.children()), default=0)
    return inner + 1 if isinstance(formula, Quantified) else inner


def holds(formula: Formula, env: typing.Mapping[str, int], witness_bound: int = None) -> bool:
    """
    Brute-force truth over ℕ. Quantifiers range over 0..witness_bound; by default the range is
    max(env) + (C + 1)·2^r for the largest constant C and the quantifier depth r of the subformula.
    """
    if isinstance(formula, Truth):
        return formula.value
    if isinstance(formula, Comparison):
        return formula.holds(env)
    if isinstance(formula, Equal):
        return env[formula.left] == env[formula.right]
    if isinstance(formula, Not):
        return not holds(formula.body, env, witness_bound)
    if isinstance(formula, Binary):
        left = holds(formula.left, env, witness_bound)
        if formula.connective == Connective.AND:
            return left and holds(formula.right, env, witness_bound)
        if formula.connective == Connective.OR:
            return left or holds(formula.right, env, witness_bound)
        return not left or holds(formula.right, env, witness_bound)
    if isinstance(formula, Quantified):
        if formula.quantifier not in (Quantifier.EXISTS, Quantifier.FORALL):
            raise MalformedTerm(f"quantifier {formula.quantifier.value} is outside the order language")
        bound = witness_bound
        if bound is None:
            bound = max(env.values(), default=0) + (max_constant(formula) + 1) * 2 ** quantifier_depth(formula)
        values = (holds(formula.body, {**env, formula.variable: x}, witness_bound) for x in range(bound + 1))
        return any(values) if formula.quantifier == Quantifier.EXISTS else all(values)
    raise MalformedTerm(f"{formula} is not a formula over ⟨ω, ≤, suc, 0⟩")


def _certify(formula: Formula, result: Formula):
    free = sorted(set(formula.free_variables()) | set(result.free_variables()))
    c = max(max_constant(formula), max_constant(result))
    bound = 2 * c + 4
    depth = quantifier_depth(formula)
    cost = (bound + 1) ** len(free) * (bound + (c + 1) * 2 ** depth + 1) ** depth
    if cost > settings.qe_certify_limit:
        log(logging.WARNING, f"skipping certification of quantifier elimination: about {cost} evaluations")
        return
    for values in itertools.product(range(bound + 1), repeat=len(free)):
        env = dict(zip(free, values))
        if holds(formula, env) != holds(result, env):
            raise QeCertificationFailed(f"{formula} and {result} differ at {env}")


def qe(formula: Formula, certify: bool = True) -> Formula:
    """
    Equivalent quantifier-free formula over atoms x = y+c, x >= y+c, x = c, x >= c and negated bounds.
    With `certify` both formulas are compared on {0..B}^free, B = 2·(largest constant) + 4.
    """
    normals = {}
    for conjunct in _dnf(formula, True, Fresh("_e")):
        normal = _normalize(conjunct)
        if normal is not None:
            normals.setdefault(normal.key(), normal)
    if any(n.is_trivial() for n in normals.values()):
        result = TRUE
    elif not normals:
        result = FALSE
    else:
        result = disj(*[n.formula() for n in normals.values()])
    log(logging.DEBUG, f"qe: {formula} -> {result}")
    if certify:
        _certify(formula, result)
    return result
