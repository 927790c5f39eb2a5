"""Command-line front end: ``modcat <command> ...``.

Exit codes: 0 pass, 1 a mathematical check failed, 2 bad input.
Reports are JSON on stdout with sorted keys; exact values appear as Cyc JSON
together with an ``approx`` string.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import constructors, modular_data as mdmod, sl2z, witt
from .cyclotomic import Cyc
from .fusion import DEFAULT_MAX_RANK, fp_dims, grading_group, invertibles
from .groups import (GroupError, BoundExceededError, PreMetricGroup, builtin_group,
                     group_from_json, validate_form)
from .modular_data import ModularData


class InputError(Exception):
    """Malformed input or violated precondition; exit code 2."""


# ---------------------------------------------------------------------------
# JSON helpers

def _approx_str(z: complex) -> str:
    re_, im = round(z.real, 10) + 0.0, round(z.imag, 10) + 0.0
    if im == 0:
        return f"{re_:.10g}"
    return f"{re_:.10g}{im:+.10g}i"


def cyc_out(x: Cyc) -> dict:
    x = x.compress()
    out = x.to_json()
    out["approx"] = _approx_str(x.approx())
    return out


def _fmt(x: Cyc) -> str:
    return x.compress().format()


def _frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from None


def load_datum(path: str) -> ModularData:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "ring" not in obj:
        raise InputError(f"{path}: not a modular data document (missing 'ring')")
    try:
        return ModularData.from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_form(path: str) -> PreMetricGroup:
    """A form document, or pointed modular data from which the form is recovered."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "ring" in obj:
        try:
            return witt.form_from_pointed(load_datum(path))
        except witt.WittError as exc:
            raise InputError(f"{path}: {exc}") from None
    try:
        M = PreMetricGroup.from_json(obj)
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"{path}: not a form document ({exc})") from None
    rep = validate_form(M)
    if not rep.ok:
        raise InputError(f"{path}: invalid quadratic form: {rep.summary()}")
    return M


def _orders(text: str) -> list[int]:
    try:
        orders = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"--abelian expects comma-separated integers, got {text!r}") from None
    if any(n < 1 for n in orders):
        raise InputError("cyclic orders must be positive")
    return orders


def _subgroup_gens(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(v) for v in g.split(",")) for g in text.split(";") if g.strip()]
    except ValueError:
        raise InputError(f"--subgroup expects 'a,b;c,d' generator tuples, got {text!r}") from None


def form_out(M: PreMetricGroup) -> dict:
    return M.to_json()


# ---------------------------------------------------------------------------
# commands; each returns (ok, findings, text lines, optional extra document)

def cmd_build(args) -> tuple[bool, dict, list[str], Any]:
    kind = args.kind
    if kind == "pointed":
        if args.q:
            M = load_form(args.q)
        elif args.abelian:
            M = PreMetricGroup(_orders(args.abelian))
        else:
            raise InputError("build pointed needs --q or --abelian")
        md = constructors.pointed(M)
    elif kind == "double":
        if not args.abelian:
            raise InputError("build double needs --abelian")
        md = constructors.double_abelian(_orders(args.abelian))
    elif kind == "dn":
        if args.n is None:
            raise InputError("build dn needs --n")
        try:
            md = constructors.diagonal_DN(args.n)
        except constructors.ConstructionError as exc:
            raise InputError(str(exc)) from None
    elif kind == "dg":
        if not args.group:
            raise InputError("build dg needs --group (a JSON file or a built-in name)")
        if Path(args.group).is_file():
            G = group_from_json(_load_json(args.group))
        else:
            G = builtin_group(args.group)
        md = constructors.drinfeld_double(G)
    elif kind == "product":
        if not (args.left and args.right):
            raise InputError("build product needs --left and --right")
        md = constructors.deligne_product(load_datum(args.left), load_datum(args.right))
    elif kind == "reverse":
        if not args.left:
            raise InputError("build reverse needs --left")
        md = constructors.reverse(load_datum(args.left))
    elif kind == "trivial":
        md = constructors.trivial()
    else:  # argparse restricts choices
        raise InputError(f"unknown build kind {kind}")
    doc = md.to_json()
    if args.output:
        Path(args.output).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n", encoding="utf-8")
    plus, minus = mdmod.gauss_sums(md)
    findings = {"rank": md.rank, "dim": cyc_out(mdmod.global_dim(md)),
                "omega_plus": cyc_out(plus), "omega_minus": cyc_out(minus),
                "output": args.output}
    text = [f"built {kind} datum of rank {md.rank}",
            f"dim = {_fmt(mdmod.global_dim(md))}"]
    return True, findings, text, None if args.output else doc


def cmd_verify(args):
    md = load_datum(args.file)
    pre = mdmod.validate_premodular(md, args.max_rank)
    findings: dict = {"rank": md.rank, "premodular": pre.ok,
                      "checks": pre.checks, "violations": [[c, list(map(str, w))] for c, w in pre.violations],
                      "notes": pre.notes}
    ok = pre.ok
    text = [f"premodular checks: {pre.summary()}"] + pre.notes
    if pre.ok:
        mod = mdmod.is_modular(md)
        plus, minus = mdmod.gauss_sums(md)
        findings.update({"modular": mod.modular, "dim": cyc_out(mdmod.global_dim(md)),
                         "omega_plus": cyc_out(plus), "omega_minus": cyc_out(minus)})
        text.append(f"modular: {mod.modular}")
        text.append(f"dim = {_fmt(mdmod.global_dim(md))}, "
                    f"Omega+ = {_fmt(plus)}, Omega- = {_fmt(minus)}")
        if mod.modular:
            rel = mdmod.verify_modular_relations(md)
            ver = mdmod.verlinde_check(md)
            findings["relations"] = rel.checks
            findings["verlinde"] = ver.ok
            ok = rel.ok and ver.ok
            text.append(f"modular relations: {rel.summary()}")
            text.append(f"Verlinde formula: {'pass' if ver.ok else 'fail'}")
    return ok, findings, text, None


def cmd_analyze(args):
    md = load_datum(args.file)
    ring_ok = mdmod.validate_premodular(md, 0)
    if not ring_ok.ok:
        raise InputError(f"{args.file}: not premodular data: {ring_ok.summary()}")
    Z2 = mdmod.transparent_objects(md)
    plus, minus = mdmod.gauss_sums(md)
    grading = grading_group(md.ring)
    inv = invertibles(md.ring)
    fp = fp_dims(md.ring)
    modular = Z2 == (0,)
    findings = {
        "rank": md.rank,
        "dims": [cyc_out(d) for d in md.dims],
        "fp_dims_approx": [round(x, 9) for x in fp.dims],
        "dim": cyc_out(mdmod.global_dim(md)),
        "transparent": list(Z2),
        "modular": modular,
        "omega_plus": cyc_out(plus),
        "omega_minus": cyc_out(minus),
        "anomaly_free": plus == minus,
        "grading_group": grading.orders,
        "grading": [list(g) for g in grading.degree],
        "invertibles": inv.members,
    }
    ok = True
    text = [f"transparent objects: {list(Z2)}", f"modular: {modular}",
            f"Omega+ = {_fmt(plus)}, Omega- = {_fmt(minus)}",
            f"anomaly-free: {str(plus == minus).lower()}",
            f"grading group: {grading.orders or 'trivial'}", f"invertibles: {inv.members}"]
    if modular:
        gn = mdmod.gn_pairing(md)
        findings["gn_pairing"] = {"ok": gn.ok, "problems": gn.problems}
        ok = gn.ok
        text.append(f"grading/invertibles pairing non-degenerate: {gn.ok}")
    return ok, findings, text, None


def cmd_factorize(args):
    md = load_datum(args.file)
    if md.rank > args.max_rank:
        raise InputError(f"rank {md.rank} exceeds --max-rank {args.max_rank}")
    if not mdmod.is_modular(md):
        raise InputError("factorize needs modular data")
    f = mdmod.prime_factorize(md, args.max_rank)
    findings = {
        "prime": f.is_prime,
        "modular_subrings": [list(K) for K in f.modular_subrings],
        "splittings": [{"D": list(s.D), "centralizer": list(s.D_prime)} for s in f.splittings],
        "primes": [list(K) for K in f.primes],
        "factorizations": [[list(K) for K in fac] for fac in f.factorizations],
    }
    text = [f.summary()] + [" x ".join(str(list(K)) for K in fac) for fac in f.factorizations]
    return True, findings, text, None


def cmd_congruence(args):
    md = load_datum(args.file)
    if not mdmod.is_modular(md):
        raise InputError("congruence needs modular data")
    N = sl2z.t_order(md)
    if N > sl2z.MAX_LEVEL:
        raise InputError(f"ord(T) = {N} exceeds {sl2z.MAX_LEVEL}")
    rep = sl2z.congruence_check(md)
    distinct = sorted({s for s in rep.scalars}, key=lambda c: (c.n, c.num, c.den))
    findings = {"level": rep.level, "t_order": rep.t_order, "cosets": rep.cosets,
                "generators": rep.generators, "attempts": rep.attempts,
                "canonical_rep": rep.canonical, "all_scalars_one": rep.all_scalars_one,
                "distinct_scalars": [cyc_out(c) for c in distinct], "failure": rep.failure}
    text = [f"N = ord(T) = {rep.t_order}; checked at level {rep.level}",
            f"{rep.cosets} cosets, {rep.generators} Schreier generators",
            "all generators act by scalars" if rep.ok else f"FAILED: {rep.failure}"]
    if rep.canonical:
        text.append(f"canonical representation, all scalars 1: {rep.all_scalars_one}")
    return rep.ok and rep.all_scalars_one is not False, findings, text, None


def cmd_condense(args):
    M = load_form(args.file)
    gens = _subgroup_gens(args.subgroup) if args.subgroup else []
    if any(len(g) != len(M.orders) for g in gens):
        raise InputError(f"generators must have {len(M.orders)} coordinates")
    try:
        H = witt.subgroup(M, gens)
    except witt.WittError as exc:
        raise InputError(str(exc)) from None
    result = witt.condense(M, H)
    findings = {"subgroup_order": H.order, "condensed": form_out(result), "size": result.size}
    text = [f"|H| = {H.order}, |H^perp / H| = {result.size}"]
    if len(witt.radical(M)) == 1:
        mod_dim, local_dim = witt.module_dims(M, H)
        findings["module_dims"] = [mod_dim, local_dim]
        text.append(f"module dims: {mod_dim}, dyslectic: {local_dim}")
    return True, findings, text, None


def cmd_modularize(args):
    M = load_form(args.file)
    ct = witt.center_type(M)
    findings = {"center_type": ct.kind, "radical": [list(x) for x in ct.radical],
                "q_on_radical": {str(list(x)): _frac(v) for x, v in ct.q_on_radical.items()}}
    text = [f"center type: {ct.kind}"]
    if ct.kind not in ("modular", "modularizable"):
        text.append("no modularization exists")
        return False, findings, text, None
    result = witt.modularize(M)
    findings["modularization"] = form_out(result)
    text.append(f"modularization has order {result.size}")
    return True, findings, text, None


def cmd_witt(args):
    M1, M2 = load_form(args.a), load_form(args.b)
    for path, M in ((args.a, M1), (args.b, M2)):
        if len(witt.radical(M)) != 1:
            raise InputError(f"{path}: form is degenerate")
    res = witt.witt_equivalent(M1, M2)
    c1, c2 = witt.central_charge(M1), witt.central_charge(M2)
    findings = {"equivalent": res.equivalent,
                "anisotropic": [form_out(a) for a in res.anisotropic],
                "witness": [list(y) for y in res.witness] if res.witness is not None else None,
                "central_charges": [cyc_out(c1), cyc_out(c2)]}
    text = [f"equivalent: {str(res.equivalent).lower()}",
            f"anisotropic orders: {res.anisotropic[0].size}, {res.anisotropic[1].size}"]
    return True, findings, text, None


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "analyze": cmd_analyze,
            "factorize": cmd_factorize, "congruence": cmd_congruence, "condense": cmd_condense,
            "modularize": cmd_modularize, "witt": cmd_witt}


def _default_max_rank() -> int:
    env = os.environ.get("MODCAT_MAX_RANK")
    return int(env) if env and env.isdigit() else DEFAULT_MAX_RANK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modcat", description="Exact modular data toolkit.")
    p.add_argument("--max-rank", type=int, default=_default_max_rank(),
                   help="bound for subring and factorization searches (default 24)")
    p.add_argument("--text", action="store_true", help="print the human-readable summary only")
    # the same options after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-rank", type=int, default=argparse.SUPPRESS)
    common.add_argument("--text", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="construct modular data")
    b.add_argument("kind", choices=["pointed", "double", "dn", "dg", "product", "reverse", "trivial"])
    b.add_argument("--abelian", help="invariant factors, e.g. '2,2' (double; pointed with q = 0)")
    b.add_argument("--q", help="form JSON file for pointed")
    b.add_argument("--group", help="built-in name S3, D4, Q8 or a group JSON file (dg)")
    b.add_argument("--n", type=int, help="odd N for dn")
    b.add_argument("--left", help="first datum file (product), input for reverse")
    b.add_argument("--right", help="second datum file (product)")
    b.add_argument("-o", "--output", help="also write the datum JSON here")

    helps = {"verify": "check premodular axioms, SL(2,Z) relations and Verlinde",
             "analyze": "transparent objects, subrings, grading and pairing",
             "factorize": "prime factorizations into modular subcategories",
             "congruence": "check that Gamma(N) acts by scalars"}
    for name, text in helps.items():
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("file", help="modular data JSON")
    c = sub.add_parser("condense", parents=[common], help="condense a form by an isotropic subgroup")
    c.add_argument("file", help="form JSON or pointed modular data JSON")
    c.add_argument("--subgroup", help="generators as 'a,b;c,d'")
    m = sub.add_parser("modularize", parents=[common], help="quotient a form by its radical")
    m.add_argument("file", help="form JSON or pointed modular data JSON")
    w = sub.add_parser("witt", parents=[common], help="compare the Witt classes of two forms")
    w.add_argument("a", help="form JSON or pointed modular data JSON")
    w.add_argument("b", help="form JSON or pointed modular data JSON")
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    echo = ["modcat"] + list(argv if argv is not None else sys.argv[1:])
    try:
        ok, findings, text, doc = COMMANDS[args.command](args)
        status = "pass" if ok else "fail"
        code = 0 if ok else 1
    except (InputError, GroupError, BoundExceededError, mdmod.ModularDataError,
            constructors.ConstructionError, witt.WittError, sl2z.RootError) as exc:
        findings, text, doc = {"error": str(exc)}, [f"error: {exc}"], None
        status, code = "error", 2
    except mdmod.InconsistentDataError as exc:
        findings, text, doc = {"error": str(exc)}, [f"inconsistent data: {exc}"], None
        status, code = "fail", 1
    report = {"command": echo, "status": status, "findings": findings,
              "summary": "\n".join(text)}
    if doc is not None:
        report["datum"] = doc
    if args.text:
        out.write(f"{status}\n" + "\n".join(text) + "\n")
    else:
        out.write(json.dumps(report, sort_keys=True, indent=1) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
