"""Command line front end: ``genpos <command> FILE... [options]``.

FILE may be a path or ``corpus:NAME`` for a bundled ideal.  Exit codes:
0 = holds / success, 1 = the checked position fails, 2 = error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .algebra import term_str
from .generic import (
    NotQuasiStable,
    annihilator_numbers,
    beta_vector,
    generic_annihilator_numbers,
    gin,
    is_beta_maximal,
)
from .io import IdealSyntaxError, load_corpus, parse_ideal, read_ideal, serialize_ideal
from .parametric import CapacityError
from .pommaret import invariants_from_basis, pommaret_basis
from .stability import (
    DQS,
    NOETHER,
    QUASI_STABLE,
    STABLE,
    STRONGLY_STABLE,
    PositionError,
    PositionKind,
    borel,
    kind,
    position_holds,
)
from .transform import TransformConfig, TransformError, transform_to_position

HOLDS, FAILS, ERROR = 0, 1, 2

POSITIONS = (
    "qs", "ell-qs", "weak-ell-qs",
    "stable", "ell-stable", "weak-ell-stable",
    "ss", "ell-ss", "weak-ell-ss",
    "dqs", "noether", "borel", "p-stable", "strong-p-stable",
    "componentwise-qs", "componentwise-stable", "componentwise-ss",
    "beta-max", "gin-position",
)

_BASE = {"qs": QUASI_STABLE, "stable": STABLE, "ss": STRONGLY_STABLE}


class UsageError(ValueError):
    pass


def position_kind(name: str, ell=None, char: int = 0, reaching: bool = False):
    """PositionKind for a CLI name; beta-max and gin-position come back as strings."""
    if name in ("beta-max", "gin-position"):
        return name
    if name in _BASE:
        if char and reaching and name != "qs":
            hint = "strong-p-stable" if name == "ss" else "p-stable"
            raise UsageError("'%s' is a characteristic-0 notion; use '%s' over GF(%d)" % (name, hint, char))
        return kind(_BASE[name])
    if name.startswith("weak-ell-") or name.startswith("ell-"):
        weak = name.startswith("weak-")
        base = _BASE[name.split("-")[-1]]
        if ell is None:
            raise UsageError("'%s' needs --ell" % name)
        if char and reaching and base != QUASI_STABLE:
            raise UsageError("stable notions over GF(%d) need the p-variants" % char)
        return kind(base, ell, weak)
    if name.startswith("componentwise-"):
        return PositionKind(_BASE[name.split("-")[-1]], componentwise=True)
    if name == "dqs":
        return DQS
    if name == "noether":
        return NOETHER
    if name == "borel":
        return borel(ell)
    if name in ("p-stable", "strong-p-stable"):
        if not char:
            raise UsageError("'%s' needs a GF(p) ideal" % name)
        return kind(STRONGLY_STABLE if name.startswith("strong") else STABLE, ell, p=True)
    raise UsageError("unknown position %r; choose from %s" % (name, ", ".join(POSITIONS)))


# ---------------------------------------------------------------------------
# JSON helpers


def term_json(t, names):
    return {"exponents": list(t), "text": term_str(t, names)}


def monomial_ideal_json(J, names):
    return [term_json(t, names) for t in sorted(J.gens, key=lambda t: (sum(t), t), reverse=True)]


def poly_json(f, names):
    return {
        "text": f.to_str(names),
        "terms": [{"exponents": list(t), "coefficient": str(f.terms[t])} for t in f.support()],
    }


def ideal_str(J, names):
    return "<" + ", ".join(term_str(t, names) for t in sorted(J.gens, key=lambda t: (sum(t), t), reverse=True)) + ">"


# ---------------------------------------------------------------------------
# commands; each returns (exit code, json-able dict, text lines)


def _load(spec: str, char_override=None):
    if spec.startswith("corpus:"):
        doc = load_corpus(spec[len("corpus:"):])
    else:
        doc = read_ideal(spec)
    if char_override is not None:
        doc = parse_ideal(serialize_ideal(doc).replace("field: %r" % doc.field, "field: GF(%d)" % char_override, 1))
    return doc


def cmd_check(doc, args):
    I = doc.ideal()
    names = doc.variables
    char = I.field.characteristic
    k = position_kind(args.position, args.ell, char)
    out = {"command": "check", "position": args.position, "ell": args.ell}
    if k == "beta-max":
        r = is_beta_maximal(I)
        out.update(holds=r.holds, failing_degree=r.failing_q, reason=r.reason or None)
    elif k == "gin-position":
        g = gin(I).gin
        out.update(holds=g == I.leading_ideal(), gin=monomial_ideal_json(g, names))
    else:
        v = position_holds(I, k, char)
        out.update(holds=v.holds, failing_degree=v.failing_degree)
        if v.obstruction is not None:
            ob = v.obstruction
            out["obstruction"] = {
                "generator": term_json(ob.generator, names),
                "witness": term_json(ob.witness, names),
                "removed": ob.j,
                "replacing": ob.i,
                "power": ob.power,
            }
    lines = ["%s: %s" % (args.position, "holds" if out["holds"] else "fails")]
    if "obstruction" in out:
        lines.append("  witness %s" % out["obstruction"]["witness"]["text"])
    if out.get("failing_degree") is not None:
        lines.append("  failing degree %d" % out["failing_degree"])
    if out.get("reason"):
        lines.append("  " + out["reason"])
    return (HOLDS if out["holds"] else FAILS), out, lines


def cmd_transform(doc, args):
    I = doc.ideal()
    names = doc.variables
    char = I.field.characteristic
    k = position_kind(args.position, args.ell, char, reaching=True)
    if isinstance(k, str):
        raise UsageError("%s position cannot be reached by a deterministic transformation" % k)
    cfg = TransformConfig(k, args.max_outer, args.max_inner, None, args.random_a, args.seed or 0)
    r = transform_to_position(I, cfg)
    verified = position_holds(r.ideal(), k, char).holds
    out = {
        "command": "transform",
        "position": args.position,
        "already_in_position": not r.moves,
        "moves": [{"j": j, "i": i, "a": str(a), "text": "%s -> %s + %s*%s" % (names[j - 1], names[j - 1], a, names[i - 1])} for j, i, a in r.moves],
        "matrix": [[str(v) for v in row] for row in r.change.matrix],
        "final_basis": [poly_json(g, names) for g in r.final_basis],
        "final_lt": monomial_ideal_json(r.final_lt, names),
        "ls_trace": [[term_json(t, names) for t in tup] for tup in r.ls_trace],
        "iterations": r.iterations,
        "verified": verified,
        "notes": list(r.notes),
    }
    lines = ["already in position" if not r.moves else "moves:"]
    lines += ["  " + m["text"] for m in out["moves"]]
    lines.append("matrix: " + "; ".join(" ".join(row) for row in out["matrix"]))
    lines.append("final lt: " + ideal_str(r.final_lt, names))
    lines.append("final basis:")
    lines += ["  " + g.to_str(names) for g in r.final_basis]
    lines.append("target %s: %s" % (args.position, "verified" if verified else "NOT verified"))
    return (HOLDS if verified else ERROR), out, lines


def cmd_invariants(doc, args):
    I = doc.ideal()
    names = doc.variables
    H = pommaret_basis(I)
    out = {"command": "invariants", "finite_pommaret_basis": H.finite}
    if not H.finite:
        out["hint"] = "not in quasi-stable position; run 'transform --position qs' first"
        return ERROR, out, ["no finite Pommaret basis: " + out["hint"]]
    inv = invariants_from_basis(H)
    out.update(inv)
    out["pommaret_basis"] = [poly_json(h, names) for h in (H.polys or ())]
    lines = ["dim %(dim)d  depth %(depth)d  reg %(reg)d" % inv, "Pommaret basis:"]
    lines += ["  " + h.to_str(names) for h in (H.polys or ())]
    return HOLDS, out, lines


def cmd_gin(doc, args):
    I = doc.ideal()
    r = gin(I, method=args.method)
    out = {
        "command": "gin",
        "gin": monomial_ideal_json(r.gin, doc.variables),
        "method": r.method,
        "ledger_size": len(r.ledger),
        "ledger": r.ledger_strings(),
    }
    lines = ["gin = " + ideal_str(r.gin, doc.variables), "method %s, ledger size %d" % (r.method, len(r.ledger))]
    return HOLDS, out, lines


def cmd_beta(doc, args):
    I = doc.ideal()
    J = I.leading_ideal()
    if args.degree is not None:
        degrees = [args.degree]
    else:
        H = pommaret_basis(J)
        top = H.degree if H.finite else J.max_degree
        degrees = [q for q in range(J.min_degree, top + 1)] if not J.is_zero() else []
    vecs = [beta_vector(J, q) for q in degrees]
    out = {"command": "beta", "vectors": [{"q": b.q, "beta": list(b.counts)} for b in vecs]}
    lines = ["beta_%d = (%s)" % (b.q, ", ".join(map(str, b.counts))) for b in vecs]
    return HOLDS, out, lines


def cmd_annihilators(doc, args):
    I = doc.ideal()
    try:
        table = generic_annihilator_numbers(I) if args.generic else annihilator_numbers(I)
    except NotQuasiStable as e:
        return ERROR, {"command": "annihilators", "error": str(e)}, ["error: %s" % e]
    entries = table.nonzero()
    out = {"command": "annihilators", "generic": bool(args.generic), "alpha": [{"i": i, "j": j, "value": v} for (i, j), v in entries.items()]}
    lines = ["alpha_%d,%d = %d" % (i, j, v) for (i, j), v in entries.items()] or ["all zero"]
    return HOLDS, out, lines


COMMANDS = {
    "check": cmd_check,
    "transform": cmd_transform,
    "invariants": cmd_invariants,
    "gin": cmd_gin,
    "beta": cmd_beta,
    "annihilators": cmd_annihilators,
}


def _run_one(task):
    spec, args = task
    try:
        doc = _load(spec, args.char_override)
        code, out, lines = COMMANDS[args.command](doc, args)
    except (UsageError, IdealSyntaxError, PositionError, TransformError, CapacityError, NotQuasiStable, OSError, KeyError) as e:
        msg = str(e) if not isinstance(e, KeyError) else "unknown corpus entry %s" % e
        return ERROR, {"file": spec, "error": msg}, ["%s: error: %s" % (spec, msg)]
    out = dict(out, file=spec)
    return code, out, lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("files", nargs="+", metavar="FILE", help="ideal file or corpus:NAME")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, help="process several files in parallel")
    common.add_argument("--char-override", type=int, default=None, metavar="P", help="read the coefficients in GF(P)")
    common.add_argument("--max-outer", type=int, default=500)
    common.add_argument("--max-inner", type=int, default=200)
    common.add_argument("--random-a", action="store_true", help="random move coefficients instead of the schedule")
    common.add_argument("--seed", type=int, default=None, help="seed for --random-a")

    p = argparse.ArgumentParser(prog="genpos", description="Generic positions of polynomial ideals.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("check", "transform"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--position", required=True, choices=POSITIONS)
        s.add_argument("--ell", type=int, default=None)
    sub.add_parser("invariants", parents=[common])
    s = sub.add_parser("gin", parents=[common])
    s.add_argument("--method", choices=("auto", "certificate", "generic-branch"), default="auto")
    s = sub.add_parser("beta", parents=[common])
    g = s.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int, default=None)
    g.add_argument("--all", action="store_true", help="every degree up to the regularity (default)")
    s = sub.add_parser("annihilators", parents=[common])
    s.add_argument("--generic", action="store_true", help="annihilator numbers of the gin")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None and not args.random_a:
        parser.error("--seed only makes sense with --random-a")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    tasks = [(f, args) for f in args.files]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    if args.json:
        payload = [r[1] for r in results]
        json.dump(payload[0] if len(payload) == 1 else payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for spec, (code, _, lines) in zip(args.files, results):
            if len(results) > 1:
                print("== %s" % spec)
            for line in lines:
                print(line, file=sys.stderr if code == ERROR and line.startswith(spec + ": error") else sys.stdout)
    return max(r[0] for r in results)


if __name__ == "__main__":
    sys.exit(main())
