import typing
from enum import Enum

from autostruct.common.exceptions import FormulaSyntaxError, MalformedTerm


class Connective(str, Enum):

    def __new__(cls, value, template=None):
        connective = str.__new__(cls, value)
        connective._value_ = value
        connective.template = template
        return connective

    AND = "&", "({left} & {right})"
    OR = "|", "({left} | {right})"
    IMPLIES = "->", "({left} -> {right})"


class Quantifier(str, Enum):

    def __new__(cls, value, template=None):
        quantifier = str.__new__(cls, value)
        quantifier._value_ = value
        quantifier.template = template
        return quantifier

    EXISTS = "E", "E {variable} . {body}"
    FORALL = "A", "A {variable} . {body}"
    INFINITELY_MANY = "Einf", "Einf {variable} . {body}"
    MODULO = "Emod", "Emod {k},{m} {variable} . {body}"


class CompareOp(str, Enum):

    def __new__(cls, value, template=None):
        op = str.__new__(cls, value)
        op._value_ = value
        op.template = template
        return op

    EQ = "=", "{left} = {right}"
    LE = "<=", "{left} <= {right}"
    LT = "<", "{left} < {right}"
    GE = ">=", "{left} >= {right}"
    GT = ">", "{left} > {right}"


class Formula:
    """
    Base of the formula tree. Nodes are immutable and hashable, so evaluation results can be memoised
    per subformula. `str(formula)` renders text the parser reads back.
    """

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__,) + self._key())

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def children(self) -> typing.Tuple["Formula", ...]:
        return ()

    def occurrences(self) -> typing.Iterator[str]:
        """Variable names in textual order, bound ones included."""
        for child in self.children():
            yield from child.occurrences()

    def free_variables(self) -> typing.List[str]:
        """Free variables in order of first occurrence."""
        result = []
        self._collect_free(set(), result)
        return result

    def _collect_free(self, bound: set, result: list):
        for child in self.children():
            child._collect_free(bound, result)

    def relation_names(self) -> typing.Set[str]:
        names = set()
        for child in self.children():
            names |= child.relation_names()
        return names

    def substitute(self, mapping: typing.Dict[str, str], fresh: "Fresh" = None) -> "Formula":
        """Rename free variables; bound variables are renamed apart when `fresh` is given."""
        raise NotImplementedError


class Fresh:
    """Deterministic supply of variable names that cannot clash with parsed identifiers."""

    def __init__(self, prefix: str = "_v"):
        self._prefix = prefix
        self._next = 0

    def __call__(self, hint: str = "") -> str:
        name = f"{self._prefix}{self._next}{hint}"
        self._next += 1
        return name


class Truth(Formula):

    def __init__(self, value: bool):
        if type(value) is not bool:
            raise ValueError("truth value must be bool")
        self._value = value

    @property
    def value(self) -> bool:
        return self._value

    def _key(self):
        return (self._value,)

    def __str__(self):
        return "true" if self._value else "false"

    def substitute(self, mapping, fresh=None):
        return self


TRUE = Truth(True)
FALSE = Truth(False)


class Atom(Formula):
    """Relation atom R(x₁, ..., xₙ)."""

    def __init__(self, relation: str, arguments: typing.Sequence[str]):
        if type(relation) is not str or not relation:
            raise ValueError("relation name must be a non-empty string")
        arguments = tuple(arguments)
        if not arguments or any(type(a) is not str for a in arguments):
            raise ValueError("atom arguments must be variable names")
        self._relation = relation
        self._arguments = arguments

    @property
    def relation(self) -> str:
        return self._relation

    @property
    def arguments(self) -> typing.Tuple[str, ...]:
        return self._arguments

    def _key(self):
        return (self._relation, self._arguments)

    def __str__(self):
        return f"{self._relation}({', '.join(self._arguments)})"

    def occurrences(self):
        yield from self._arguments

    def _collect_free(self, bound, result):
        for a in self._arguments:
            if a not in bound and a not in result:
                result.append(a)

    def relation_names(self):
        return {self._relation}

    def substitute(self, mapping, fresh=None):
        return Atom(self._relation, [mapping.get(a, a) for a in self._arguments])


class Equal(Formula):

    def __init__(self, left: str, right: str):
        if type(left) is not str or type(right) is not str:
            raise ValueError("equality compares variable names")
        self._left = left
        self._right = right

    @property
    def left(self) -> str:
        return self._left

    @property
    def right(self) -> str:
        return self._right

    def _key(self):
        return (self._left, self._right)

    def __str__(self):
        return f"{self._left} = {self._right}"

    def occurrences(self):
        yield self._left
        yield self._right

    def _collect_free(self, bound, result):
        for a in (self._left, self._right):
            if a not in bound and a not in result:
                result.append(a)

    def substitute(self, mapping, fresh=None):
        return Equal(mapping.get(self._left, self._left), mapping.get(self._right, self._right))


class Term:
    """suc^offset(variable), or the constant `offset` when variable is None."""

    def __init__(self, variable: typing.Optional[str], offset: int = 0):
        if variable is not None and type(variable) is not str:
            raise MalformedTerm("term variable must be a name")
        if type(offset) is not int or offset < 0:
            raise MalformedTerm("term offset must be a natural number")
        self.variable = variable
        self.offset = offset

    def __eq__(self, other):
        return isinstance(other, Term) and (self.variable, self.offset) == (other.variable, other.offset)

    def __hash__(self):
        return hash((self.variable, self.offset))

    def __str__(self):
        if self.variable is None:
            return str(self.offset)
        return self.variable if self.offset == 0 else f"{self.variable}+{self.offset}"

    def evaluate(self, env: typing.Mapping[str, int]) -> int:
        return self.offset if self.variable is None else env[self.variable] + self.offset


class Comparison(Formula):
    """Order atom over ⟨ω, ≤, suc, 0⟩ terms."""

    def __init__(self, left: Term, op: CompareOp, right: Term):
        if type(left) is not Term or type(right) is not Term:
            raise MalformedTerm("comparison sides must be terms")
        if type(op) is not CompareOp:
            raise ValueError("op must be of type CompareOp")
        self._left = left
        self._op = op
        self._right = right

    @property
    def left(self) -> Term:
        return self._left

    @property
    def op(self) -> CompareOp:
        return self._op

    @property
    def right(self) -> Term:
        return self._right

    def _key(self):
        return (self._left.variable, self._left.offset, self._op.value, self._right.variable, self._right.offset)

    def __str__(self):
        return self._op.template.format(left=self._left, right=self._right)

    def occurrences(self):
        for t in (self._left, self._right):
            if t.variable is not None:
                yield t.variable

    def _collect_free(self, bound, result):
        for a in self.occurrences():
            if a not in bound and a not in result:
                result.append(a)

    def substitute(self, mapping, fresh=None):
        def rename(t):
            return t if t.variable is None else Term(mapping.get(t.variable, t.variable), t.offset)

        return Comparison(rename(self._left), self._op, rename(self._right))

    def holds(self, env: typing.Mapping[str, int]) -> bool:
        a, b = self._left.evaluate(env), self._right.evaluate(env)
        return {CompareOp.EQ: a == b, CompareOp.LE: a <= b, CompareOp.LT: a < b,
                CompareOp.GE: a >= b, CompareOp.GT: a > b}[self._op]


class Not(Formula):

    def __init__(self, body: Formula):
        if not isinstance(body, Formula):
            raise ValueError("negation body must be a Formula")
        self._body = body

    @property
    def body(self) -> Formula:
        return self._body

    def _key(self):
        return (self._body,)

    def __str__(self):
        return f"!{_wrap(self._body)}"

    def children(self):
        return (self._body,)

    def substitute(self, mapping, fresh=None):
        return Not(self._body.substitute(mapping, fresh))


class Binary(Formula):

    def __init__(self, connective: Connective, left: Formula, right: Formula):
        if type(connective) is not Connective:
            raise ValueError("connective must be of type Connective")
        if not isinstance(left, Formula) or not isinstance(right, Formula):
            raise ValueError("operands must be formulas")
        self._connective = connective
        self._left = left
        self._right = right

    @property
    def connective(self) -> Connective:
        return self._connective

    @property
    def left(self) -> Formula:
        return self._left

    @property
    def right(self) -> Formula:
        return self._right

    def _key(self):
        return (self._connective.value, self._left, self._right)

    def __str__(self):
        left = f"({self._left})" if isinstance(self._left, Quantified) else self._left
        return self._connective.template.format(left=left, right=self._right)

    def children(self):
        return (self._left, self._right)

    def substitute(self, mapping, fresh=None):
        return Binary(self._connective, self._left.substitute(mapping, fresh), self._right.substitute(mapping, fresh))


class Quantified(Formula):

    def __init__(self, quantifier: Quantifier, variable: str, body: Formula, k: int = None, m: int = None):
        if type(quantifier) is not Quantifier:
            raise ValueError("quantifier must be of type Quantifier")
        if type(variable) is not str:
            raise ValueError("quantified variable must be a name")
        if not isinstance(body, Formula):
            raise ValueError("quantifier body must be a Formula")
        if quantifier == Quantifier.MODULO:
            if type(k) is not int or type(m) is not int or m < 1 or not 0 <= k < m:
                raise ValueError("modulo quantifier needs 0 <= k < m")
        elif k is not None or m is not None:
            raise ValueError("only the modulo quantifier takes k and m")
        self._quantifier = quantifier
        self._variable = variable
        self._body = body
        self._k = k
        self._m = m

    @property
    def quantifier(self) -> Quantifier:
        return self._quantifier

    @property
    def variable(self) -> str:
        return self._variable

    @property
    def body(self) -> Formula:
        return self._body

    @property
    def k(self) -> typing.Optional[int]:
        return self._k

    @property
    def m(self) -> typing.Optional[int]:
        return self._m

    def _key(self):
        return (self._quantifier.value, self._variable, self._body, self._k, self._m)

    def __str__(self):
        return self._quantifier.template.format(variable=self._variable, body=self._body, k=self._k, m=self._m)

    def children(self):
        return (self._body,)

    def occurrences(self):
        yield self._variable
        yield from self._body.occurrences()

    def _collect_free(self, bound, result):
        self._body._collect_free(bound | {self._variable}, result)

    def substitute(self, mapping, fresh=None):
        inner = {k: v for k, v in mapping.items() if k != self._variable}
        variable = self._variable
        if fresh is not None:
            variable = fresh(self._variable)
            inner[self._variable] = variable
        return Quantified(self._quantifier, variable, self._body.substitute(inner, fresh), self._k, self._m)


def _wrap(formula: Formula) -> str:
    text = str(formula)
    if isinstance(formula, (Quantified, Equal, Comparison)):
        return f"({text})"
    return text


# builders

def conj(*parts: Formula) -> Formula:
    if not parts:
        return TRUE
    result = parts[0]
    for part in parts[1:]:
        result = Binary(Connective.AND, result, part)
    return result


def disj(*parts: Formula) -> Formula:
    if not parts:
        return FALSE
    result = parts[0]
    for part in parts[1:]:
        result = Binary(Connective.OR, result, part)
    return result


def implies(left: Formula, right: Formula) -> Formula:
    return Binary(Connective.IMPLIES, left, right)


def exists(variables: typing.Union[str, typing.Sequence[str]], body: Formula) -> Formula:
    for v in reversed([variables] if isinstance(variables, str) else list(variables)):
        body = Quantified(Quantifier.EXISTS, v, body)
    return body


def forall(variables: typing.Union[str, typing.Sequence[str]], body: Formula) -> Formula:
    for v in reversed([variables] if isinstance(variables, str) else list(variables)):
        body = Quantified(Quantifier.FORALL, v, body)
    return body


def is_well_named(formula: Formula, bound: typing.FrozenSet[str] = frozenset()) -> bool:
    """No variable is bound twice on one path, and no bound variable shadows a free one."""
    if isinstance(formula, Quantified):
        if formula.variable in bound:
            return False
        return is_well_named(formula.body, bound | {formula.variable})
    return all(is_well_named(c, bound) for c in formula.children())


# text syntax

_SYMBOLS = ("->", "<=", ">=", "(", ")", ",", ".", "&", "|", "!", "=", "<", ">", "+")


def _tokenize(text: str) -> typing.List[typing.Tuple[str, str]]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        symbol = next((s for s in _SYMBOLS if text.startswith(s, i)), None)
        if symbol is not None:
            tokens.append(("sym", symbol))
            i += len(symbol)
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("nat", text[i:j]))
            i = j
        elif c.isalpha() or c in "_~":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_~"):
                j += 1
            tokens.append(("ident", text[i:j]))
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r} at position {i}")
    return tokens


class _Parser:

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, offset=0):
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else (None, None)

    def accept(self, value) -> bool:
        if self.peek()[1] == value and self.peek()[0] == "sym":
            self.pos += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            raise FormulaSyntaxError(f"expected {value!r} but found {self.peek()[1]!r} in {self.text!r}")

    def ident(self) -> str:
        kind, value = self.peek()
        if kind != "ident":
            raise FormulaSyntaxError(f"expected an identifier but found {value!r} in {self.text!r}")
        self.pos += 1
        return value

    def nat(self) -> int:
        kind, value = self.peek()
        if kind != "nat":
            raise FormulaSyntaxError(f"expected a number but found {value!r} in {self.text!r}")
        self.pos += 1
        return int(value)

    def at_quantifier(self) -> bool:
        kind, value = self.peek()
        if kind != "ident":
            return False
        if value in ("E", "A", "Einf"):
            return self.peek(1)[0] == "ident" and self.peek(2)[1] == "."
        return value == "Emod" and self.peek(1)[0] == "nat"

    def formula(self) -> Formula:
        if self.at_quantifier():
            return self.quantified()
        return self.implication()

    def quantified(self) -> Formula:
        word = self.ident()
        k = m = None
        if word == "Emod":
            k = self.nat()
            self.expect(",")
            m = self.nat()
        variable = self.ident()
        self.expect(".")
        return Quantified(Quantifier(word), variable, self.formula(), k, m)

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Binary(Connective.IMPLIES, left, self.operand_or_quantifier(self.implication))
        return left

    def operand_or_quantifier(self, parse):
        return self.quantified() if self.at_quantifier() else parse()

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.accept("|"):
            left = Binary(Connective.OR, left, self.operand_or_quantifier(self.conjunction))
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = Binary(Connective.AND, left, self.operand_or_quantifier(self.unary))
        return left

    def unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.operand_or_quantifier(self.unary))
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        if self.at_quantifier():
            return self.quantified()
        return self.atom()

    def term(self) -> Term:
        kind, value = self.peek()
        if kind == "nat":
            return Term(None, self.nat())
        name = self.ident()
        if name == "suc" and self.accept("("):
            inner = self.term()
            self.expect(")")
            return Term(inner.variable, inner.offset + 1)
        offset = 0
        if self.accept("+"):
            offset = self.nat()
        return Term(name, offset)

    def atom(self) -> Formula:
        kind, value = self.peek()
        if kind == "ident" and value in ("true", "false"):
            self.pos += 1
            return TRUE if value == "true" else FALSE
        if kind == "ident" and value != "suc" and self.peek(1)[1] == "(" and self.peek(1)[0] == "sym":
            name = self.ident()
            self.expect("(")
            arguments = [self.ident()]
            while self.accept(","):
                arguments.append(self.ident())
            self.expect(")")
            return Atom(name, arguments)
        left = self.term()
        kind, value = self.peek()
        if kind != "sym" or value not in ("=", "<=", "<", ">=", ">"):
            raise FormulaSyntaxError(f"expected a comparison after {left} in {self.text!r}")
        self.pos += 1
        right = self.term()
        op = CompareOp(value)
        if op == CompareOp.EQ and left.variable and right.variable and left.offset == right.offset == 0:
            return Equal(left.variable, right.variable)
        return Comparison(left, op, right)


def parse(text: str) -> Formula:
    parser = _Parser(text)
    if not parser.tokens:
        raise FormulaSyntaxError("empty formula")
    result = parser.formula()
    if parser.pos != len(parser.tokens):
        raise FormulaSyntaxError(f"unexpected {parser.peek()[1]!r} in {text!r}")
    return result
