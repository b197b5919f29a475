"""Proof construction on top of the kernel.

Nothing here is trusted: every proof produced is an ordinary step list that
:func:`probcalc.kernel.check_proof` re-validates.  Derived rules such as
hypothetical syllogism are expanded into explicit A1/A2/MP steps.
"""

from __future__ import annotations

from .errors import ShapeError
from .formula import (
    FALSE_H, FALSE_P, Bang, Formula, Implies, Query, Sort, instantiate, parse, to_text,
)
from .kernel import CH, HC, MP, Axiom, Proof, Step, System, axiom_scheme, check_proof


def _f(x: Formula | str) -> Formula:
    return parse(x) if isinstance(x, str) else x


class ProofBuilder:
    """Accumulates steps; re-deriving a formula already on the list is a no-op."""

    def __init__(self, proof: Proof | None = None):
        self.steps: list[Step] = []
        self._seen: dict[Formula, int] = {}
        if proof is not None:
            # copied verbatim: later steps refer to these indices
            for step in proof.steps:
                self._seen.setdefault(step.formula, len(self.steps))
                self.steps.append(step)

    def _push(self, step: Step) -> int:
        if step.formula in self._seen:
            return self._seen[step.formula]
        self.steps.append(step)
        self._seen[step.formula] = len(self.steps) - 1
        return len(self.steps) - 1

    def formula(self, i: int) -> Formula:
        return self.steps[i].formula

    def axiom(self, name: str, sort: Sort = Sort.PROBLEM, **assign: Formula | str) -> int:
        values = {k: _f(v) for k, v in assign.items()}
        if values and name.startswith("A"):
            sort = next(iter(values.values())).sort
        scheme = axiom_scheme(name, sort)
        return self._push(Step(instantiate(scheme.pattern, values), Axiom(name, values)))

    def mp(self, minor: int, major: int) -> int:
        imp = self.formula(major)
        assert isinstance(imp, Implies) and imp.left == self.formula(minor), "bad modus ponens"
        return self._push(Step(imp.right, MP(minor, major)))

    def ch(self, i: int) -> int:
        return self._push(Step(Bang(self.formula(i)), CH(i)))

    def hc(self, i: int) -> int:
        return self._push(Step(Query(self.formula(i)), HC(i)))

    def weaken(self, i: int, x: Formula | str) -> int:
        """From Y derive X -> Y."""
        y = self.formula(i)
        return self.mp(i, self.axiom("A1", x=y, y=_f(x)))

    def syllogism(self, i: int, j: int) -> int:
        """From X -> Y (step i) and Y -> Z (step j) derive X -> Z."""
        xy, yz = self.formula(i), self.formula(j)
        assert isinstance(xy, Implies) and isinstance(yz, Implies) and xy.right == yz.left
        x, y, z = xy.left, xy.right, yz.right
        x_yz = self.weaken(j, x)
        dist = self.axiom("A2", x=x, y=y, z=z)
        return self.mp(i, self.mp(x_yz, dist))

    def identity(self, x: Formula | str) -> int:
        """Derive X -> X."""
        x = _f(x)
        xx = Implies(x, x)
        a2 = self.axiom("A2", x=x, y=xx, z=x)
        a1 = self.axiom("A1", x=x, y=xx)
        step = self.mp(a1, a2)
        return self.mp(self.axiom("A1", x=x, y=x), step)

    def build(self, target: int | None = None) -> Proof:
        """Freeze the steps; the proof ends with step ``target`` (default: last)."""
        steps = list(self.steps)
        if target is not None and target != len(steps) - 1:
            steps.append(steps[target])
        return Proof(tuple(steps))


# ---------------------------------------------------------------- Galois

def _require_accepted(p: Proof) -> None:
    report = check_proof(p, System.HC)
    if not report.accepted:
        raise ShapeError(f"input proof rejected at step {report.failed_step}: {report.reason}")


def galois_forward(p: Proof) -> Proof:
    """From an HC proof of ``?a -> p`` build an HC proof of ``a -> !p``."""
    t = p.target
    if not (isinstance(t, Implies) and isinstance(t.left, Query)):
        raise ShapeError(f"expected a target of shape ?a -> p, got {to_text(t)!r}")
    _require_accepted(p)
    alpha, prop = t.left.inner, t.right
    b = ProofBuilder(p)
    last = b._seen[t]
    bang = b.ch(last)                                            # !(?a -> p)
    b3 = b.axiom("B3", p=Query(alpha), q=prop)                   # !(?a -> p) -> (!?a -> !p)
    reduce_ = b.mp(bang, b3)                                     # !?a -> !p
    b2 = b.axiom("B2", alpha=alpha)                              # a -> !?a
    return b.build(b.syllogism(b2, reduce_))


def galois_backward(p: Proof) -> Proof:
    """From an HC proof of ``a -> !p`` build an HC proof of ``?a -> p``."""
    t = p.target
    if not (isinstance(t, Implies) and isinstance(t.right, Bang)):
        raise ShapeError(f"expected a target of shape a -> !p, got {to_text(t)!r}")
    _require_accepted(p)
    alpha, prop = t.left, t.right.inner
    b = ProofBuilder(p)
    last = b._seen[t]
    q = b.hc(last)                                               # ?(a -> !p)
    b4 = b.axiom("B4", alpha=alpha, beta=Bang(prop))             # ?(a -> !p) -> (?a -> ?!p)
    solv = b.mp(q, b4)                                           # ?a -> ?!p
    b1 = b.axiom("B1", p=prop)                                   # ?!p -> p
    return b.build(b.syllogism(solv, b1))


# ---------------------------------------------------------------- modal theorems

def _s4_t() -> Proof:
    b = ProofBuilder()
    return b.build(b.axiom("B1", p="P"))


def _s4_4() -> Proof:
    b = ProofBuilder()
    b2 = b.axiom("B2", alpha="!P")                               # !P -> !?!P
    q = b.hc(b2)
    b4 = b.axiom("B4", alpha="!P", beta="!?!P")
    return b.build(b.mp(q, b4))                                  # ?!P -> ?!?!P


def _s4_k() -> Proof:
    b = ProofBuilder()
    b3 = b.axiom("B3", p="P", q="Q")                             # !(P->Q) -> (!P -> !Q)
    q = b.hc(b3)
    b4 = b.axiom("B4", alpha="!(P -> Q)", beta="!P -> !Q")
    first = b.mp(q, b4)                                          # ?!(P->Q) -> ?(!P -> !Q)
    second = b.axiom("B4", alpha="!P", beta="!Q")                # ?(!P->!Q) -> (?!P -> ?!Q)
    return b.build(b.syllogism(first, second))


def _s4_nec() -> Proof:
    b = ProofBuilder()
    thm = b.identity("P")                                        # P -> P
    return b.build(b.hc(b.ch(thm)))                              # ?!(P -> P)


def _iel_coreflection() -> Proof:
    b = ProofBuilder()
    return b.build(b.axiom("B2", alpha="a"))


def _iel_k() -> Proof:
    b = ProofBuilder()
    b4 = b.axiom("B4", alpha="a", beta="b")                      # ?(a->b) -> (?a -> ?b)
    lifted = b.ch(b4)
    b3 = b.axiom("B3", p="?(a -> b)", q="?a -> ?b")
    first = b.mp(lifted, b3)                                     # !?(a->b) -> !(?a -> ?b)
    second = b.axiom("B3", p="?a", q="?b")                       # !(?a->?b) -> (!?a -> !?b)
    return b.build(b.syllogism(first, second))


def _iel_consistency() -> Proof:
    b = ProofBuilder()
    # ?falseH -> falseP, by sending falseH -> !falseP across the Galois connection
    a9 = b.axiom("A9", x=Bang(FALSE_P))                          # falseH -> !falseP
    b4 = b.axiom("B4", alpha=FALSE_H, beta=Bang(FALSE_P))
    solv = b.mp(b.hc(a9), b4)                                    # ?falseH -> ?!falseP
    unsolvable = b.syllogism(solv, b.axiom("B1", p=FALSE_P))     # ?falseH -> falseP
    b3 = b.axiom("B3", p=Query(FALSE_H), q=FALSE_P)
    lifted = b.mp(b.ch(unsolvable), b3)                          # !?falseH -> !falseP
    return b.build(b.syllogism(lifted, b.axiom("B5")))           # !?falseH -> falseH


DERIVED_THEOREMS = {
    "S4-T": _s4_t,
    "S4-K": _s4_k,
    "S4-4": _s4_4,
    "S4-Nec-demo": _s4_nec,
    "IEL-coreflection": _iel_coreflection,
    "IEL-K": _iel_k,
    "IEL-consistency": _iel_consistency,
}


def derived_theorems(tag: str) -> Proof:
    try:
        return DERIVED_THEOREMS[tag]()
    except KeyError:
        raise KeyError(f"unknown tag {tag!r}; known: {', '.join(DERIVED_THEOREMS)}") from None
