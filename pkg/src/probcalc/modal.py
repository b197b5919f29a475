"""Single-sorted modal formulas for the S4 decider.

Syntax: atoms are identifiers, ``false`` is bottom, ``Box``/``[]``/``□`` is
the necessity operator and binds like ``~``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .formula import TokenStream


class ModalFormula:
    __slots__ = ()

    def children(self) -> tuple[ModalFormula, ...]:
        return ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class MAtom(ModalFormula):
    name: str


@dataclass(frozen=True)
class MBottom(ModalFormula):
    pass


@dataclass(frozen=True)
class MAnd(ModalFormula):
    left: ModalFormula
    right: ModalFormula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class MOr(ModalFormula):
    left: ModalFormula
    right: ModalFormula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class MImplies(ModalFormula):
    left: ModalFormula
    right: ModalFormula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Box(ModalFormula):
    inner: ModalFormula

    def children(self):
        return (self.inner,)


BOTTOM = MBottom()
_BOTTOM_WORDS = {"false", "falseH", "falseP"}


def MNot(x: ModalFormula) -> MImplies:
    return MImplies(x, BOTTOM)


def parse_modal(text: str) -> ModalFormula:
    ts = TokenStream(text)

    def implish():
        left = orish()
        if ts.accept("->"):
            return MImplies(left, implish())
        return left

    def orish():
        f = andish()
        while ts.accept("|"):
            f = MOr(f, andish())
        return f

    def andish():
        f = unary()
        while ts.accept("&"):
            f = MAnd(f, unary())
        return f

    def unary():
        tok = ts.peek
        if ts.accept("~"):
            return MNot(unary())
        if ts.accept("[]"):
            return Box(unary())
        if tok.kind == "ident" and tok.value == "Box":
            ts.next()
            return Box(unary())
        if tok.kind == "op" and tok.value in ("!", "?"):
            raise ParseError(f"{tok.value!r} has no meaning in a modal formula", tok.pos, [])
        if ts.accept("("):
            f = implish()
            ts.expect(")")
            return f
        if tok.kind == "ident":
            ts.next()
            return BOTTOM if tok.value in _BOTTOM_WORDS else MAtom(tok.value)
        ts.fail(["'~'", "'Box'", "'('", "atom"])

    f = implish()
    if ts.peek.kind != "end":
        ts.fail(["'->'", "'|'", "'&'", "end of input"])
    return f


def _prec(f) -> int:
    if isinstance(f, MImplies):
        return 4 if f.right == BOTTOM else 1
    if isinstance(f, MOr):
        return 2
    if isinstance(f, MAnd):
        return 3
    if isinstance(f, Box):
        return 4
    return 5


def to_text(f: ModalFormula) -> str:
    def wrap(g, at_least):
        s = to_text(g)
        return s if _prec(g) >= at_least else f"({s})"

    if isinstance(f, MAtom):
        return f.name
    if isinstance(f, MBottom):
        return "false"
    if isinstance(f, Box):
        inner = wrap(f.inner, 4)
        return "Box" + (inner if inner.startswith("(") else " " + inner)
    if isinstance(f, MImplies):
        if f.right == BOTTOM:
            return "~" + wrap(f.left, 4)
        return wrap(f.left, 2) + " -> " + wrap(f.right, 1)
    if isinstance(f, MOr):
        return wrap(f.left, 2) + " | " + wrap(f.right, 3)
    if isinstance(f, MAnd):
        return wrap(f.left, 3) + " & " + wrap(f.right, 4)
    raise TypeError(f"not a modal formula: {f!r}")


def modal_atoms(f: ModalFormula) -> list[str]:
    out, stack = set(), [f]
    while stack:
        g = stack.pop()
        if isinstance(g, MAtom):
            out.add(g.name)
        stack.extend(g.children())
    return sorted(out)


def modal_size(f: ModalFormula) -> int:
    return 1 + sum(modal_size(c) for c in f.children())
