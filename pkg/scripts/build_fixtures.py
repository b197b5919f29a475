"""Regenerate src/probcalc/fixtures from the constructions below.

Every proof is kernel-checked and every expectation recomputed before
anything is written, so a bad construction aborts the build.
"""

import json
from pathlib import Path

from probcalc.decision import cpc_valid, ipc_derivable, s4_valid
from probcalc.derivations import ProofBuilder, derived_theorems
from probcalc.formula import Implies, Sort, parse, to_text
from probcalc.groupoid import (
    action_groupoid, cyclic_group, delooping, discrete, disjoint_union, empty, h_level,
    indiscrete, point, relabel, symmetric_group,
)
from probcalc.kernel import System, check_proof, proof_to_json
from probcalc.kripke import countermodel_search
from probcalc.modal import parse_modal

OUT = Path(__file__).resolve().parent.parent / "src" / "probcalc" / "fixtures"
P = Sort.PROPOSITION
index = {}


def write(kind, name, data, **meta):
    rel = f"{kind}/{name}.json"
    with open(OUT / rel, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, ensure_ascii=False)
        fh.write("\n")
    index[name] = {"kind": kind, "path": rel, **meta}


def proof(name, p, system, **meta):
    report = check_proof(p, system)
    assert report.accepted, (name, report)
    write("proofs", name, proof_to_json(p), system=system.value, target=to_text(p.target), **meta)


# ---------------------------------------------------------------- proofs

def single(name, **assign):
    b = ProofBuilder()
    return b.build(b.axiom(name, P if name in ("B1", "B3") else Sort.PROBLEM, **assign))


proof("axiom-b1", single("B1", p="P"), System.HC)
proof("axiom-b2", single("B2", alpha="a"), System.HC)
proof("axiom-b3", single("B3", p="P", q="Q"), System.HC)
proof("axiom-b4", single("B4", alpha="a", beta="b"), System.HC)
proof("axiom-b5", single("B5"), System.HC)

for tag, name in [("S4-T", "s4-t"), ("S4-K", "s4-k"), ("S4-4", "s4-4-derivation"),
                  ("S4-Nec-demo", "s4-nec-demo"), ("IEL-coreflection", "iel-coreflection"),
                  ("IEL-K", "iel-k"), ("IEL-consistency", "iel-consistency")]:
    proof(name, derived_theorems(tag), System.HC, tag=tag)

b = ProofBuilder()
proof("ipc-a1", b.build(b.axiom("A1", x="a", y="b")), System.IPC)
b = ProofBuilder()
proof("ipc-identity", b.build(b.identity("a")), System.IPC)


def and_comm(b, x, y):
    """x & y -> y & x at the sort of x."""
    xy = parse(f"({x}) & ({y})")
    right = b.axiom("A7", x=x, y=y)                               # x&y -> y
    pair = b.axiom("A8", x=y, y=x)                                # y -> (x -> y&x)
    curried = b.syllogism(right, pair)                            # x&y -> (x -> y&x)
    dist = b.axiom("A2", x=xy, y=x, z=parse(f"({y}) & ({x})"))
    return b.mp(b.axiom("A6", x=x, y=y), b.mp(curried, dist))


b = ProofBuilder()
proof("ipc-and-comm", b.build(and_comm(b, "a", "b")), System.IPC)
b = ProofBuilder()
proof("ipc-syllogism", b.build(b.syllogism(b.axiom("A6", x="a", y="b"),
                                           b.axiom("A3", x="a", y="c"))), System.IPC)
b = ProofBuilder()
proof("cpc-dne", b.build(b.axiom("A10", x="P")), System.CPC)
b = ProofBuilder()
proof("cpc-and-comm", b.build(and_comm(b, "P", "Q")), System.CPC)
b = ProofBuilder()
proof("cpc-identity", b.build(b.identity("P")), System.CPC)

b = ProofBuilder()
proof("hc-ch-rule", b.build(b.ch(b.identity("P"))), System.HC)
b = ProofBuilder()
proof("hc-hc-rule", b.build(b.hc(b.identity("a"))), System.HC)


# Galois family: HC proofs of ?alpha -> p

def lift(b, i):
    """From alpha -> beta (step i) derive ?alpha -> ?beta."""
    f = b.formula(i)
    return b.mp(b.hc(i), b.axiom("B4", alpha=f.left, beta=f.right))


def galois(name, p):
    t = p.target
    assert isinstance(t, Implies) and t.left.__class__.__name__ == "Query", name
    proof(name, p, System.HC, family="galois")


b = ProofBuilder()
galois("galois-query-identity", b.build(b.identity("?a")))
galois("galois-b1", single("B1", p="P"))
b = ProofBuilder()
solv = lift(b, b.axiom("A9", x="!P"))                             # ?falseH -> ?!P
galois("galois-falsum", b.build(b.syllogism(solv, b.axiom("B1", p="P"))))
b = ProofBuilder()
galois("galois-and-left", b.build(lift(b, b.axiom("A6", x="a", y="b"))))
b = ProofBuilder()
galois("galois-and-right", b.build(lift(b, b.axiom("A7", x="a", y="b"))))
b = ProofBuilder()
galois("galois-or-intro", b.build(lift(b, b.axiom("A3", x="a", y="b"))))
b = ProofBuilder()
galois("galois-and-comm", b.build(lift(b, and_comm(b, "a", "b"))))
galois("galois-s4-4", derived_theorems("S4-4"))
galois("galois-s4-k", derived_theorems("S4-K"))
b = ProofBuilder()
galois("galois-bang-and", b.build(b.syllogism(b.axiom("B1", p="P & Q"),
                                              b.axiom("A6", x="P", y="Q"))))

# ---------------------------------------------------------------- models

for name, text in [("lem-countermodel", "a | ~a"),
                   ("kp-countermodel", "(~a -> b | c) -> (~a -> b) | (~a -> c)"),
                   ("dne-countermodel", "~~a -> a")]:
    cm = countermodel_search(parse(text), 5)
    write("models", name, cm.model.to_json(), refutes=text, world=cm.world)

# ---------------------------------------------------------------- groupoids

S3, C3, C6 = symmetric_group(3), cyclic_group(3), cyclic_group(6)
V4 = [[a ^ b for b in range(4)] for a in range(4)]
# V4 = {id, reflection in the side's line, reflection in its bisector, half turn}
# acting on the two regular triangles erected on a fixed side
EUCLID_ACTION = [[0, 1], [1, 0], [0, 1], [1, 0]]
bs3 = delooping(S3)
groupoids = {
    "point": point(),
    "empty": empty(),
    "discrete-2": discrete(2),
    "discrete-3": discrete(3),
    "indiscrete-3": indiscrete(3),
    "bc3": delooping(C3),
    "bs3": bs3,
    "bs3-relabeled": relabel(bs3, [0], [3, 5, 0, 1, 4, 2]),
    "bc6": delooping(C6),
    "bc3-twice": disjoint_union(delooping(C3), delooping(C3)),
    # C6 acting on two points by parity: one component, vertex group C3
    "bc3-fattened": action_groupoid(C6, [[g % 2 ^ x for x in range(2)] for g in range(6)]),
    "euclid": action_groupoid(V4, EUCLID_ACTION),
}
for name, g in groupoids.items():
    write("groupoids", name, g.to_json(), level=h_level(g), components=len(g.components()))

# ---------------------------------------------------------------- formulas

for name, text, logic in [
    ("lem-proposition", "P | ~P", "cpc"),
    ("lem-problem", "a | ~a", "ipc"),
    ("lem-double-negated", "~~(a | ~a)", "ipc"),
    ("decidable-dne", "(a | ~a) -> (~~a -> a)", "ipc"),
    ("goldbach-dne", "(P | ~P) -> (~~P -> P)", "cpc"),
    ("fermat-problem", "a", "ipc"),
    ("fermat-double-negated", "~~a -> a", "ipc"),
    ("kreisel-putnam", "(~a -> b | c) -> (~a -> b) | (~a -> c)", "ipc"),
    ("peirce", "((P -> Q) -> P) -> P", "cpc"),
    ("s4-axiom-4", "Box a -> Box Box a", "s4"),
    ("s4-axiom-5", "~Box a -> Box ~Box a", "s4"),
    ("s4-grz", "Box(Box(a -> Box a) -> a) -> a", "s4"),
]:
    if logic == "s4":
        valid = s4_valid(parse_modal(text)).valid
    elif logic == "cpc":
        valid = cpc_valid(parse(text)).valid
    else:
        valid = ipc_derivable(parse(text)).valid
    write("formulas", name, {"formula": text, "logic": logic}, logic=logic, valid=valid)

with open(OUT / "index.json", "w", encoding="utf-8") as fh:
    json.dump(dict(sorted(index.items())), fh, indent=1)
    fh.write("\n")
print(f"wrote {len(index)} fixtures to {OUT}")
