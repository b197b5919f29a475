"""Two-sorted formula language: problems and propositions.

Problem atoms are lowercase identifiers, proposition atoms are uppercase.
``!`` turns a proposition into the problem of proving it, ``?`` turns a
problem into the proposition that it has a solution.  The binary
connectives are shared between the sorts; both children must agree and the
node inherits their sort.  Negation is sugar for ``x -> bottom``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

from .errors import ParseError, SchemeError, SortError

__all__ = [
    "Sort", "Formula", "Atom", "Bottom", "And", "Or", "Implies", "Bang", "Query",
    "Meta", "Not", "parse", "parse_scheme", "to_text", "instantiate", "match",
    "metavariables", "atoms", "is_pure", "is_negation", "size", "depth", "nodes",
    "replace_at", "FALSE_H", "FALSE_P",
]


class Sort(str, Enum):
    PROBLEM = "problem"
    PROPOSITION = "proposition"

    @property
    def bottom_name(self) -> str:
        return "falseH" if self is Sort.PROBLEM else "falseP"


class Formula:
    """Base class of all formula nodes. Nodes are immutable and hashable."""

    __slots__ = ()

    @property
    def sort(self) -> Sort:
        raise NotImplementedError

    def children(self) -> tuple[Formula, ...]:
        return ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str
    atom_sort: Sort

    def __post_init__(self):
        expected = _sort_of_identifier(self.name)
        if expected is None or self.name in _KEYWORDS:
            raise SortError(self.name, None, None, f"{self.name!r} is not a valid atom name")
        if expected is not self.atom_sort:
            raise SortError(self.name, expected, self.atom_sort)

    @property
    def sort(self) -> Sort:
        return self.atom_sort

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    bottom_sort: Sort

    @property
    def sort(self) -> Sort:
        return self.bottom_sort

    def __repr__(self):
        return f"Bottom({self.bottom_sort.name})"


@dataclass(frozen=True, repr=False)
class Meta(Formula):
    """Scheme metavariable standing for any formula of ``meta_sort``."""

    name: str
    meta_sort: Sort

    @property
    def sort(self) -> Sort:
        return self.meta_sort

    def __repr__(self):
        return f"Meta({self.name!r}, {self.meta_sort.name})"


class _Binary(Formula):
    __slots__ = ()
    symbol = ""

    def __post_init__(self):
        if self.left.sort is not self.right.sort:
            raise SortError(to_text(self.right), self.left.sort, self.right.sort,
                            f"operands of {self.symbol!r} disagree: "
                            f"{to_text(self.left)!r} is a {self.left.sort.value}, "
                            f"{to_text(self.right)!r} is a {self.right.sort.value}")

    @property
    def sort(self) -> Sort:
        return self.left.sort

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class And(_Binary):
    left: Formula
    right: Formula
    symbol = "&"


@dataclass(frozen=True, repr=False)
class Or(_Binary):
    left: Formula
    right: Formula
    symbol = "|"


@dataclass(frozen=True, repr=False)
class Implies(_Binary):
    left: Formula
    right: Formula
    symbol = "->"


@dataclass(frozen=True, repr=False)
class Bang(Formula):
    """``!p``: the problem of proving proposition ``p``."""

    inner: Formula

    def __post_init__(self):
        if self.inner.sort is not Sort.PROPOSITION:
            raise SortError(to_text(self.inner), Sort.PROPOSITION, self.inner.sort,
                            f"'!' needs a proposition, got problem {to_text(self.inner)!r}")

    @property
    def sort(self) -> Sort:
        return Sort.PROBLEM

    def children(self):
        return (self.inner,)

    def __repr__(self):
        return f"Bang({self.inner!r})"


@dataclass(frozen=True, repr=False)
class Query(Formula):
    """``?a``: the proposition that problem ``a`` has a solution."""

    inner: Formula

    def __post_init__(self):
        if self.inner.sort is not Sort.PROBLEM:
            raise SortError(to_text(self.inner), Sort.PROBLEM, self.inner.sort,
                            f"'?' needs a problem, got proposition {to_text(self.inner)!r}")

    @property
    def sort(self) -> Sort:
        return Sort.PROPOSITION

    def children(self):
        return (self.inner,)

    def __repr__(self):
        return f"Query({self.inner!r})"


FALSE_H = Bottom(Sort.PROBLEM)
FALSE_P = Bottom(Sort.PROPOSITION)


def Not(x: Formula) -> Implies:
    return Implies(x, Bottom(x.sort))


def is_negation(f: Formula) -> bool:
    return isinstance(f, Implies) and isinstance(f.right, Bottom)


# ---------------------------------------------------------------- lexing

_KEYWORDS = {"falseH": Sort.PROBLEM, "falseP": Sort.PROPOSITION}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op>->|→|&|∧|\||∨|~|¬|!|\?|\(|\)|\[\]|□)|(?P<ident>[^\W\d_]\w*)|(?P<bad>\S))"
)

_CANONICAL_OP = {"→": "->", "∧": "&", "∨": "|", "¬": "~", "□": "[]"}


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "ident" or "end"
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group("bad") is not None:
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"), [])
        if m.group("op") is not None:
            op = m.group("op")
            tokens.append(Token("op", _CANONICAL_OP.get(op, op), m.start("op")))
        else:
            tokens.append(Token("ident", m.group("ident"), m.start("ident")))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _sort_of_identifier(name: str) -> Sort | None:
    if not name:
        return None
    if name[0].islower():
        return Sort.PROBLEM
    if name[0].isupper():
        return Sort.PROPOSITION
    return None


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.peek.kind == "op" and self.peek.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            self.fail([value])

    def fail(self, expected: list[str]):
        tok = self.peek
        found = "end of input" if tok.kind == "end" else repr(tok.value)
        raise ParseError(f"expected {' or '.join(expected)} but found {found}", tok.pos, expected)


# ---------------------------------------------------------------- parsing

_UNARY_EXPECTED = ["'~'", "'!'", "'?'", "'('", "atom"]


class _Parser:
    def __init__(self, text: str, metas: Mapping[str, Sort] | None):
        self.ts = TokenStream(text)
        self.metas = dict(metas or {})

    def parse(self) -> Formula:
        f = self.implish()
        if self.ts.peek.kind != "end":
            self.ts.fail(["'->'", "'|'", "'&'", "end of input"])
        return f

    def implish(self) -> Formula:
        left = self.orish()
        pos = self.ts.peek.pos
        if self.ts.accept("->"):
            right = self.implish()
            return self._build(Implies, pos, left, right)
        return left

    def orish(self) -> Formula:
        f = self.andish()
        while True:
            pos = self.ts.peek.pos
            if not self.ts.accept("|"):
                return f
            f = self._build(Or, pos, f, self.andish())

    def andish(self) -> Formula:
        f = self.unary()
        while True:
            pos = self.ts.peek.pos
            if not self.ts.accept("&"):
                return f
            f = self._build(And, pos, f, self.unary())

    def unary(self) -> Formula:
        tok = self.ts.peek
        if tok.kind == "op" and tok.value in ("~", "!", "?"):
            self.ts.next()
            inner = self.unary()
            ctor = {"~": Not, "!": Bang, "?": Query}[tok.value]
            return self._build(ctor, tok.pos, inner)
        if self.ts.accept("("):
            f = self.implish()
            self.ts.expect(")")
            return f
        if tok.kind == "ident":
            self.ts.next()
            if tok.value in self.metas:
                return Meta(tok.value, self.metas[tok.value])
            if tok.value in _KEYWORDS:
                return Bottom(_KEYWORDS[tok.value])
            return self._build(Atom, tok.pos, tok.value, _sort_of_identifier(tok.value))
        self.ts.fail(_UNARY_EXPECTED)

    def _build(self, ctor, pos, *args):
        try:
            return ctor(*args)
        except SortError as e:
            e.position = pos
            raise


def parse(text: str) -> Formula:
    """Parse a formula. Raises ParseError or SortError."""
    return _Parser(text, None).parse()


def parse_scheme(text: str, metas: Mapping[str, Sort]) -> Formula:
    """Parse a scheme; identifiers listed in ``metas`` become metavariables."""
    return _Parser(text, metas).parse()


# ---------------------------------------------------------------- printing

_IMPL, _OR, _AND, _UNARY, _ATOM = range(1, 6)

_ASCII = {"not": "~", "and": " & ", "or": " | ", "imp": " -> "}
_UNICODE = {"not": "¬", "and": " ∧ ", "or": " ∨ ", "imp": " → "}


def _prec(f: Formula) -> int:
    if isinstance(f, Implies):
        return _UNARY if is_negation(f) else _IMPL
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    if isinstance(f, (Bang, Query)):
        return _UNARY
    return _ATOM


def to_text(f: Formula, unicode: bool = False) -> str:
    """Print with the fewest parentheses that still parse back to ``f``."""
    sym = _UNICODE if unicode else _ASCII

    def wrap(g: Formula, at_least: int) -> str:
        s = go(g)
        return s if _prec(g) >= at_least else f"({s})"

    def go(g: Formula) -> str:
        if isinstance(g, (Atom, Meta)):
            return g.name
        if isinstance(g, Bottom):
            return g.bottom_sort.bottom_name
        if isinstance(g, Bang):
            return "!" + wrap(g.inner, _UNARY)
        if isinstance(g, Query):
            return "?" + wrap(g.inner, _UNARY)
        if isinstance(g, Implies):
            if is_negation(g):
                return sym["not"] + wrap(g.left, _UNARY)
            return wrap(g.left, _OR) + sym["imp"] + wrap(g.right, _IMPL)
        if isinstance(g, Or):
            return wrap(g.left, _OR) + sym["or"] + wrap(g.right, _AND)
        if isinstance(g, And):
            return wrap(g.left, _AND) + sym["and"] + wrap(g.right, _UNARY)
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


# ---------------------------------------------------------------- traversal

def nodes(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def replace_at(f: Formula, index: int, new: Formula) -> Formula:
    """Return ``f`` with its ``index``-th pre-order node replaced by ``new``."""
    counter = [index]

    def go(g: Formula) -> Formula:
        if counter[0] == 0:
            counter[0] = -1
            return new
        counter[0] -= 1
        if isinstance(g, _Binary):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, (Bang, Query)):
            return type(g)(go(g.inner))
        return g

    out = go(f)
    if counter[0] >= 0:
        raise IndexError(index)
    return out


def size(f: Formula) -> int:
    return sum(1 for _ in nodes(f))


def depth(f: Formula) -> int:
    """Number of tree levels; an atom has depth 1."""
    kids = f.children()
    return 1 + (max(depth(k) for k in kids) if kids else 0)


def atoms(f: Formula) -> list[str]:
    return sorted({g.name for g in nodes(f) if isinstance(g, Atom)})


def is_pure(f: Formula) -> bool:
    return not any(isinstance(g, (Bang, Query)) for g in nodes(f))


def metavariables(f: Formula) -> dict[str, Sort]:
    return {g.name: g.meta_sort for g in nodes(f) if isinstance(g, Meta)}


# ---------------------------------------------------------------- schemes

def instantiate(scheme: Formula, assignment: Mapping[str, Formula]) -> Formula:
    """Substitute every metavariable of ``scheme``; the result is well-sorted."""

    def go(g: Formula) -> Formula:
        if isinstance(g, Meta):
            if g.name not in assignment:
                raise SchemeError(f"metavariable {g.name!r} is unassigned")
            value = assignment[g.name]
            if value.sort is not g.meta_sort:
                raise SchemeError(
                    f"metavariable {g.name!r} needs a {g.meta_sort.value}, "
                    f"got {value.sort.value} {to_text(value)!r}")
            return value
        if isinstance(g, _Binary):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, (Bang, Query)):
            return type(g)(go(g.inner))
        return g

    return go(scheme)


def match(pattern: Formula, f: Formula, binding: dict[str, Formula] | None = None
          ) -> dict[str, Formula] | None:
    """First-order matching of a scheme against a formula."""
    binding = {} if binding is None else binding
    if isinstance(pattern, Meta):
        if f.sort is not pattern.meta_sort:
            return None
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = f
            return binding
        return binding if bound == f else None
    if type(pattern) is not type(f):
        return None
    if isinstance(pattern, (Atom, Bottom)):
        return binding if pattern == f else None
    for p, g in zip(pattern.children(), f.children()):
        if match(p, g, binding) is None:
            return None
    return binding
