"""Batch command line: ``probcalc <command> ... [--json]``.

Exit codes: 0 accepted/valid, 1 rejected/invalid (with a witness where one
exists), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .decision import (
    DEFAULT_MAX_WORLDS, ENUM_ATOMS, ENUM_DEPTH, cpc_valid, crosscheck, ipc_derivable, s4_valid,
)
from .derivations import galois_backward, galois_forward
from .errors import ProbcalcError
from .formula import atoms, depth, is_pure, parse, size, to_text
from .groupoid import (
    FiniteGroupoid, action_groupoid, cyclic_group, delooping, equivalent, h_level, hom_type,
    load_groupoid, point, symmetric_group, truncate,
)
from .kernel import System, check_proof, load_proof, proof_to_json
from .kripke import countermodel_search
from .medvedev import MAX_BASE, medvedev_valid_upto
from .modal import modal_atoms, modal_size, parse_modal
from .modal import to_text as modal_text
from .translations import double_negation_translate, godel_translate

OK, FAIL, USAGE = 0, 1, 2


def default_max_worlds() -> int:
    return int(os.environ.get("PROBCALC_MAX_WORLDS", DEFAULT_MAX_WORLDS))


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; route its complaints through our reporting
    def error(self, message):
        raise _Usage(message)


# ---------------------------------------------------------------- report schemas

_MODEL = {
    "type": "object",
    "required": ["worlds", "le", "val"],
    "properties": {
        "worlds": {"type": "integer", "minimum": 1},
        "le": {"type": "array", "items": {"type": "array", "items": {"type": "integer"},
                                          "minItems": 2, "maxItems": 2}},
        "val": {"type": "object", "additionalProperties": {"type": "array",
                                                           "items": {"type": "integer"}}},
    },
}
_GROUPOID = {
    "type": "object",
    "required": ["objects", "morphisms", "compose", "id"],
    "properties": {
        "objects": {"type": "integer", "minimum": 0},
        "morphisms": {"type": "array", "items": {"type": "object", "required": ["src", "dst"]}},
        "compose": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
        "id": {"type": "array", "items": {"type": "integer"}},
    },
}


def _report(command: str, statuses: list[str], required: list[str], props: dict) -> dict:
    return {
        "type": "object",
        "required": ["command", "status", "exit_code", *required],
        "properties": {
            "command": {"const": command},
            "status": {"enum": statuses},
            "exit_code": {"enum": [OK, FAIL]},
            **props,
        },
    }


_STR, _INT, _BOOL = {"type": "string"}, {"type": "integer"}, {"type": "boolean"}
_NULLABLE_INT = {"type": ["integer", "null"]}

REPORT_SCHEMAS: dict[str, dict] = {
    "parse": _report("parse", ["ok"], ["formula", "sort", "pure", "size", "depth", "atoms"], {
        "formula": _STR, "sort": {"enum": ["problem", "proposition", "modal"]}, "pure": _BOOL,
        "size": _INT, "depth": _INT, "atoms": {"type": "array", "items": _STR}}),
    "check": _report("check", ["accepted", "rejected"],
                     ["system", "target", "steps", "failed_step", "reason"], {
        "system": {"enum": ["cpc", "ipc", "hc"]}, "target": _STR, "steps": _INT,
        "failed_step": _NULLABLE_INT, "reason": {"type": ["string", "null"]}}),
    "decide": _report("decide", ["valid", "invalid"], ["logic", "formula", "witness"], {
        "logic": {"enum": ["cpc", "ipc", "s4"]}, "formula": _STR,
        "witness": {"type": ["object", "null"]}}),
    "countermodel": _report("countermodel", ["found", "none"],
                            ["formula", "max_worlds", "model", "world"], {
        "formula": _STR, "max_worlds": _INT, "model": {"oneOf": [_MODEL, {"type": "null"}]},
        "world": _NULLABLE_INT}),
    "medvedev": _report("medvedev", ["valid", "invalid"],
                        ["formula", "max_base", "valuations_checked", "refutation"], {
        "formula": _STR, "max_base": _INT, "valuations_checked": _INT,
        "refutation": {"oneOf": [{"type": "null"}, {
            "type": "object", "required": ["base_size", "world", "valuation"],
            "properties": {"base_size": _INT, "world": {"type": "array"},
                           "valuation": {"type": "object"}}}]}}),
    "translate": _report("translate", ["ok"], ["via", "input", "output"], {
        "via": {"enum": ["dneg", "godel"]}, "input": _STR, "output": _STR}),
    "galois": _report("galois", ["ok"], ["dir", "input_target", "output_target", "proof"], {
        "dir": {"enum": ["fwd", "bwd"]}, "input_target": _STR, "output_target": _STR,
        "proof": {"type": "array", "minItems": 1}}),
    "hlevel": _report("hlevel", ["ok"], ["level", "objects", "morphisms", "components"], {
        "level": {"type": "integer", "minimum": -2, "maximum": 1}, "objects": _INT,
        "morphisms": _INT, "components": _INT}),
    "truncate": _report("truncate", ["ok"], ["level", "result", "result_level"], {
        "level": {"type": "integer", "minimum": -2}, "result": _GROUPOID,
        "result_level": {"type": "integer", "minimum": -2, "maximum": 1}}),
    "demo": _report("demo", ["ok"], ["demo", "lines", "facts"], {
        "demo": {"enum": ["fermat", "goldbach", "triangle", "euclid"]},
        "lines": {"type": "array", "items": _STR}, "facts": {"type": "object"}}),
    "crosscheck": _report("crosscheck", ["agree", "disagree"],
                          ["atoms", "depth", "max_worlds", "formulas", "discrepancies"], {
        "atoms": _INT, "depth": _INT, "max_worlds": _INT, "formulas": _INT,
        "discrepancies": {"type": "array", "items": _STR}}),
}
ERROR_SCHEMA = {
    "type": "object",
    "required": ["command", "status", "exit_code", "error"],
    "properties": {"command": {"type": ["string", "null"]}, "status": {"const": "error"},
                   "exit_code": {"const": USAGE}, "error": _STR},
}


# ---------------------------------------------------------------- commands

def _model_lines(model: dict, world: int | None = None) -> list[str]:
    lines = [f"  worlds: {model['worlds']}"
             + (f" (refuted at world {world})" if world is not None else "")]
    lines.append("  order: " + (", ".join(f"{i}<={j}" for i, j in model["le"]) or "discrete"))
    for a, ws in model["val"].items():
        lines.append(f"  {a} true at: {ws if ws else 'nowhere'}")
    return lines


def cmd_parse(args) -> tuple[dict, list[str]]:
    if args.modal:
        f = parse_modal(args.formula)
        rep = {"formula": modal_text(f), "sort": "modal", "pure": True,
               "size": modal_size(f), "depth": _modal_depth(f), "atoms": modal_atoms(f)}
    else:
        f = parse(args.formula)
        rep = {"formula": to_text(f), "sort": f.sort.value, "pure": is_pure(f),
               "size": size(f), "depth": depth(f), "atoms": atoms(f)}
    lines = [rep["formula"], f"sort {rep['sort']}, size {rep['size']}, depth {rep['depth']}"]
    return {"status": "ok", **rep}, lines


def _modal_depth(f) -> int:
    return 1 + max((_modal_depth(c) for c in f.children()), default=0)


def cmd_check(args):
    proof = load_proof(args.proof)
    r = check_proof(proof, System(args.system))
    rep = {"status": r.verdict, "system": args.system, "target": to_text(proof.target),
           "steps": len(proof), "failed_step": r.failed_step, "reason": r.reason}
    line = f"{r.verdict}: {to_text(proof.target)} ({len(proof)} steps, {args.system})"
    lines = [line] if r.accepted else [line, f"  step {r.failed_step}: {r.reason}"]
    return rep, lines


def cmd_decide(args):
    if args.logic == "s4":
        f = parse_modal(args.formula)
        v, text = s4_valid(f), modal_text(f)
        witness = v.witness
    else:
        f = parse(args.formula)
        text = to_text(f)
        if args.logic == "cpc":
            v = cpc_valid(f)
            witness = None if v.valid else {"assignment": v.witness}
        else:
            v = ipc_derivable(f, args.max_worlds)
            witness = None
            if v.witness is not None:
                witness = {**v.witness.model.to_json(), "root": v.witness.world}
    status = "valid" if v.valid else "invalid"
    lines = [f"{status} in {args.logic.upper()}: {text}"]
    if witness and "assignment" in witness:
        lines.append("  falsified by " + ", ".join(
            f"{a}={'T' if b else 'F'}" for a, b in witness["assignment"].items()))
    elif witness:
        lines.append("  countermodel:")
        lines += _model_lines(witness, witness.get("root"))
    elif not v.valid:
        lines.append(f"  no countermodel within {args.max_worlds} worlds")
    return {"status": status, "logic": args.logic, "formula": text, "witness": witness}, lines


def cmd_countermodel(args):
    f = parse(args.formula)
    cm = countermodel_search(f, args.max_worlds)
    if cm is None:
        rep = {"status": "none", "formula": to_text(f), "max_worlds": args.max_worlds,
               "model": None, "world": None}
        return rep, [f"no countermodel with at most {args.max_worlds} worlds"]
    model = cm.model.to_json()
    rep = {"status": "found", "formula": to_text(f), "max_worlds": args.max_worlds,
           "model": model, "world": cm.world}
    return rep, ["countermodel found:"] + _model_lines(model, cm.world)


def cmd_medvedev(args):
    f = parse(args.formula)
    r = medvedev_valid_upto(f, args.max_base)
    ref = None
    if r.refutation is not None:
        ref = {"base_size": r.refutation.base_size, "world": sorted(r.refutation.world),
               "valuation": {a: [sorted(s) for s in ws]
                             for a, ws in r.refutation.valuation.items()}}
    status = "valid" if r.valid else "invalid"
    lines = [f"{status} on Medvedev frames with base <= {args.max_base} "
             f"({r.valuations_checked} valuations)"]
    if ref:
        lines.append(f"  refuted at {ref['world']} (base {ref['base_size']})")
        lines += [f"  {a} true at: {ws}" for a, ws in ref["valuation"].items()]
    return {"status": status, "formula": to_text(f), "max_base": args.max_base,
            "valuations_checked": r.valuations_checked, "refutation": ref}, lines


def cmd_translate(args):
    f = parse(args.formula)
    if args.via == "dneg":
        out = to_text(double_negation_translate(f))
    else:
        out = modal_text(godel_translate(f))
    return {"status": "ok", "via": args.via, "input": to_text(f), "output": out}, [out]


def cmd_galois(args):
    proof = load_proof(args.proof)
    out = galois_forward(proof) if args.dir == "fwd" else galois_backward(proof)
    data = proof_to_json(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=1, ensure_ascii=False)
            fh.write("\n")
    rep = {"status": "ok", "dir": args.dir, "input_target": to_text(proof.target),
           "output_target": to_text(out.target), "proof": data}
    return rep, [f"{to_text(proof.target)}  =>  {to_text(out.target)} ({len(out)} steps)"]


def _groupoid_summary(g: FiniteGroupoid) -> dict:
    return {"level": h_level(g), "objects": g.objects, "morphisms": g.morphisms,
            "components": len(g.components())}


def cmd_hlevel(args):
    s = _groupoid_summary(load_groupoid(args.groupoid))
    return {"status": "ok", **s}, [
        f"h-level {s['level']} ({s['objects']} objects, {s['morphisms']} morphisms, "
        f"{s['components']} components)"]


def cmd_truncate(args):
    t = truncate(load_groupoid(args.groupoid), args.level)
    lvl = h_level(t)
    rep = {"status": "ok", "level": args.level, "result": t.to_json(), "result_level": lvl}
    return rep, [f"{args.level}-truncation: {t.objects} objects, {t.morphisms} morphisms, "
                 f"h-level {lvl}"]


# ---------------------------------------------------------------- demos

def _demo_fermat():
    lem_h = ipc_derivable(parse("a | ~a"), default_max_worlds())
    dn = ipc_derivable(parse("~~(a | ~a)"))
    lem_p = cpc_valid(parse("P | ~P"))
    model = lem_h.witness.model.to_json()
    lines = [
        "a : find whole numbers x, y, z and n > 2 with x^n + y^n = z^n",
        "~a: show that such numbers cannot exist",
        f"a | ~a as a problem: {'solvable' if lem_h.valid else 'no general method'}"
        " (intuitionistically " + ("derivable" if lem_h.valid else "underivable") + ")",
        "  countermodel:", *_model_lines(model, lem_h.witness.world),
        f"~~(a | ~a): {'derivable' if dn.valid else 'underivable'}",
        f"P | ~P as a proposition: {'classically valid' if lem_p.valid else 'invalid'}",
    ]
    facts = {"lem_problem": lem_h.valid, "lem_double_negated": dn.valid,
             "lem_proposition": lem_p.valid, "countermodel": model}
    return lines, facts


def _demo_goldbach():
    dec = ipc_derivable(parse("(a | ~a) -> (~~a -> a)"))
    bare = ipc_derivable(parse("~~a -> a"), default_max_worlds())
    prop = cpc_valid(parse("(P | ~P) -> (~~P -> P)"))
    lines = [
        "a: verify the conjecture for a given even number (a decidable problem)",
        f"(a | ~a) -> (~~a -> a): {'derivable' if dec.valid else 'underivable'}",
        f"~~a -> a without decidability: {'derivable' if bare.valid else 'underivable'}",
        f"(P | ~P) -> (~~P -> P) as a proposition: "
        f"{'classically valid' if prop.valid else 'invalid'}",
    ]
    facts = {"decidable_dne": dec.valid, "bare_dne": bare.valid, "propositional": prop.valid}
    return lines, facts


def _demo_triangle():
    bs3, bc3, triv = delooping(symmetric_group(3)), delooping(cyclic_group(3)), point()
    facts = {
        "bs3_level": h_level(bs3), "trivial_level": h_level(triv), "bc3_level": h_level(bc3),
        "bs3_self_identifications": hom_type(bs3, 0, 0).objects,
        "bc3_self_identifications": hom_type(bc3, 0, 0).objects,
        "bs3_equivalent_trivial": equivalent(bs3, triv),
        "bs3_equivalent_bc3": equivalent(bs3, bc3),
    }
    lines = [
        "a regular triangle as a figure: its symmetries form S3",
        f"  B(S3): {facts['bs3_self_identifications']} self-identifications, "
        f"h-level {facts['bs3_level']}",
        f"  trivial group: h-level {facts['trivial_level']}",
        f"  equivalent: {facts['bs3_equivalent_trivial']}",
        f"rotations only, C3: {facts['bc3_self_identifications']} self-identifications, "
        f"h-level {facts['bc3_level']}, equivalent to B(S3): {facts['bs3_equivalent_bc3']}",
    ]
    return lines, facts


# the isometries fixing a segment: identity, reflection in its line,
# reflection in its bisector, half turn; they act on the two triangles
EUCLID_GROUP = [[a ^ b for b in range(4)] for a in range(4)]
EUCLID_ACTION = [[0, 1], [1, 0], [0, 1], [1, 0]]


def _demo_euclid():
    e = action_groupoid(EUCLID_GROUP, EUCLID_ACTION)
    h = truncate(e, -1)
    facts = {"problem_level": h_level(e), "solutions": e.objects, "morphisms": e.morphisms,
             "components": len(e.components()), "proposition_level": h_level(h),
             "inhabited": h.objects > 0}
    lines = [
        "(E) construct a regular triangle on a given side",
        f"  solutions: {e.objects} triangles, {e.morphisms} symmetries between them, "
        f"h-level {facts['problem_level']}",
        "(H) a regular triangle on a given side exists",
        f"  (-1)-truncation of (E): h-level {facts['proposition_level']}, "
        f"{'inhabited' if facts['inhabited'] else 'empty'}",
    ]
    return lines, facts


DEMOS = {"fermat": _demo_fermat, "goldbach": _demo_goldbach,
         "triangle": _demo_triangle, "euclid": _demo_euclid}


def cmd_demo(args):
    lines, facts = DEMOS[args.name]()
    return {"status": "ok", "demo": args.name, "lines": lines, "facts": facts}, lines


def cmd_crosscheck(args):
    n, bad = crosscheck(args.atoms, args.depth, args.max_worlds)
    rep = {"status": "disagree" if bad else "agree", "atoms": args.atoms, "depth": args.depth,
           "max_worlds": args.max_worlds, "formulas": n,
           "discrepancies": [to_text(f) for f in bad]}
    lines = [f"{n} formulas, {len(bad)} discrepancies"] + [f"  {to_text(f)}" for f in bad]
    return rep, lines


# ---------------------------------------------------------------- wiring

def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="probcalc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.set_defaults(func=func)
        return sp

    sp = add("parse", cmd_parse, "parse and pretty-print a formula")
    sp.add_argument("formula")
    sp.add_argument("--modal", action="store_true", help="parse as a single-sorted modal formula")

    sp = add("check", cmd_check, "check a Hilbert proof file")
    sp.add_argument("proof")
    sp.add_argument("--system", choices=["cpc", "ipc", "hc"], default="hc")

    sp = add("decide", cmd_decide, "decide validity")
    sp.add_argument("formula")
    sp.add_argument("--logic", choices=["cpc", "ipc", "s4"], required=True)
    sp.add_argument("--max-worlds", type=_positive, default=default_max_worlds())

    sp = add("countermodel", cmd_countermodel, "search for a Kripke countermodel")
    sp.add_argument("formula")
    sp.add_argument("--max-worlds", type=_positive, default=default_max_worlds())

    sp = add("medvedev", cmd_medvedev, "validity on small Medvedev frames")
    sp.add_argument("formula")
    sp.add_argument("--max-base", type=int, choices=range(1, MAX_BASE + 1), default=3,
                    metavar=f"{{1..{MAX_BASE}}}")

    sp = add("translate", cmd_translate, "double-negation or modal translation")
    sp.add_argument("formula")
    sp.add_argument("--via", choices=["dneg", "godel"], required=True)

    sp = add("galois", cmd_galois, "transport a proof across the Galois connection")
    sp.add_argument("proof")
    sp.add_argument("--dir", choices=["fwd", "bwd"], required=True)
    sp.add_argument("--output", "-o", help="also write the new proof here")

    sp = add("hlevel", cmd_hlevel, "h-level of a finite groupoid")
    sp.add_argument("groupoid")

    sp = add("truncate", cmd_truncate, "truncate a finite groupoid")
    sp.add_argument("groupoid")
    sp.add_argument("--level", type=int, required=True)

    sp = add("demo", cmd_demo, "worked examples")
    sp.add_argument("name", choices=sorted(DEMOS))

    sp = add("crosscheck", cmd_crosscheck, "sequent search vs countermodel search")
    sp.add_argument("--atoms", type=int, default=ENUM_ATOMS)
    sp.add_argument("--depth", type=_positive, default=ENUM_DEPTH)
    sp.add_argument("--max-worlds", type=_positive, default=default_max_worlds())
    return p


def _emit(report: dict, lines: list[str], as_json: bool, out) -> None:
    if as_json:
        json.dump(report, out, ensure_ascii=False)
        out.write("\n")
    else:
        out.write("\n".join(lines) + "\n")


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    command = next((a for a in argv if not a.startswith("-")), None)
    try:
        args = build_parser().parse_args(argv)
        report, lines = args.func(args)
    except (_Usage, ProbcalcError, OSError, ValueError) as e:
        msg = str(e) or type(e).__name__
        if isinstance(e, OSError) and e.filename:
            msg = f"{e.filename}: {e.strerror}"
        err.write(f"probcalc: error: {msg}\n")
        if want_json:
            _emit({"command": command, "status": "error", "exit_code": USAGE, "error": msg},
                  [], True, out)
        return USAGE
    code = OK if report["status"] in ("ok", "accepted", "valid", "none", "agree") else FAIL
    report = {"command": args.command, **report, "exit_code": code}
    _emit(report, lines, args.json, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
