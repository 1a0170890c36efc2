"""``crk`` command line front end.

Exit status: 0 success, 1 violated precondition or failed verification,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Optional, Sequence

from . import catalog, dsl, engine, verify
from .errors import CapacityError, CharrankError, HypothesisError

USER_INPUT = "user input"


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    citations: dict[str, str] = field(default_factory=dict)
    status: str = "ok"
    text: list[str] = field(default_factory=list)
    as_json: bool = False

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "citations": self.citations,
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------------


def _load(path: str) -> dsl.Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return dsl.load(text)


@lru_cache(maxsize=None)
def _catalog_index() -> dict[str, catalog.SpaceRecord]:
    return {rec.name: rec for rec in catalog.records()}


def _cite(alg, label: str) -> str:
    """Catalog justification when the space is a catalog space, else ``user input``."""
    rec = _catalog_index().get(alg.name)
    if rec is not None and rec.alg.same_structure(alg):
        cite = rec.citation(label)
        if cite:
            return cite
    return USER_INPUT


def _bundle(doc: dsl.Document, space: str, name: str) -> engine.SWProfile:
    doc.space(space)
    return doc.bundle(space, name)


def _limit(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("CRK_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CRK_LIMIT is not an integer: {env!r}") from None
    return engine.DEFAULT_LIMIT


def _profile_terms(p: engine.SWProfile) -> dict[str, str]:
    return {f"w{i}": dsl.render_element(x) for i, x in p.w.items() if x}


# -- commands ------------------------------------------------------------------------


def cmd_parse(args, rep: Report) -> int:
    doc = _load(args.file)
    rep.inputs = {"file": args.file}
    rep.results = {
        "spaces": {n: {"dim": a.dim, "betti": list(a.betti)} for n, a in doc.spaces.items()},
        "bundles": sorted(f"{s}/{b}" for s, b in doc.bundles),
        "maps": sorted(doc.maps),
        "canonical": dsl.emit(doc.items),
    }
    rep.text.append(rep.results["canonical"].rstrip("\n"))
    return 0


def cmd_charrank(args, rep: Report) -> int:
    doc = _load(args.file)
    rep.inputs = {"file": args.file, "space": args.space, "bundle": args.bundle}
    p = _bundle(doc, args.space, args.bundle)
    c = engine.charrank(p)
    cov = engine.coverage(p)
    an = engine.analyze(p.alg)
    lints = engine.realizability_lints(p)
    rep.results = {
        "charrank": c,
        "r_X": an.r_X,
        "profile": _profile_terms(p),
        "coverage": [{"degree": j, "dim": b, "rank": r, "covered": ok} for j, b, r, ok in cov],
        "lints": lints,
    }
    rep.citations = {"charrank": _cite(p.alg, f"charrank({args.bundle})")}
    rep.text.append(f"charrank = {c}")
    rep.text.append("degree  dim H^j  rank M_j  covered")
    for j, b, r, ok in cov:
        rep.text.append(f"{j:>6}  {b:>7}  {r:>8}  {'yes' if ok else 'no'}")
    rep.text.extend(f"lint: {ln}" for ln in lints)
    return 0


def cmd_cup(args, rep: Report) -> int:
    doc = _load(args.file)
    rep.inputs = {"file": args.file, "space": args.space}
    alg = doc.space(args.space)
    t, witness = engine.cup_length_witness(alg)
    degrees = [alg.degree_of(nm) for nm in witness]
    rep.results = {"cup_length": t, "witness": witness, "witness_degrees": degrees}
    rep.citations = {"cup_length": _cite(alg, "cup")}
    rep.text.append(f"cup-length = {t}")
    if witness:
        rep.text.append(f"witness: {' * '.join(witness)} (degrees {', '.join(map(str, degrees))})")
    return 0


def cmd_bound(args, rep: Report) -> int:
    if (args.z is None) == (args.k is None):
        raise UsageError("give exactly one of --z or --bundle/--k")
    if args.k is not None and not args.bundle:
        raise UsageError("--k needs --bundle")
    doc = _load(args.file)
    rep.inputs = {"file": args.file, "space": args.space}
    alg = doc.space(args.space)
    if args.k is not None:
        rep.inputs.update(bundle=args.bundle, k=args.k)
        label = f"bundle_bound({args.bundle}, k={args.k})"
        b = engine.bundle_cup_bound(_bundle(doc, args.space, args.bundle), args.k)
    else:
        rep.inputs["z"] = args.z
        label = f"boundary_bound(z={args.z})"
        tangent = doc.bundles.get((args.space, args.bundle or "tangent"))
        b = engine.boundary_cup_bound(alg, args.z, tangent)
    rep.results = {
        "bound": b.floor,
        "exact": f"{b.exact.numerator}/{b.exact.denominator}",
        "formula": b.formula,
    }
    rep.citations = {"bound": _cite(alg, label)}
    rep.text.append(f"bound = {b.floor} (exact {b.exact.numerator}/{b.exact.denominator})")
    return 0


def cmd_ucharrank(args, rep: Report) -> int:
    doc = _load(args.file)
    alg = doc.space(args.space)
    flags = alg.meta.constraints if args.constraints is None else args.constraints.split(",")
    try:
        cons = engine.constraints_from_flags(alg, flags)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    limit = _limit(args.limit)
    rep.inputs = {
        "file": args.file,
        "space": args.space,
        "constraints": [c.label() for c in cons],
        "limit": limit,
    }
    res = engine.ucharrank_formal(alg, cons, limit=limit, workers=args.workers)
    rep.results = {
        "ucharrank_formal": res.value,
        "witness": _profile_terms(res.witness),
        "profiles": res.count,
    }
    default = args.constraints is None
    rep.citations = {"ucharrank_formal": _cite(alg, "ucharrank") if default else USER_INPUT}
    applied = ", ".join(c.label() for c in cons) or "none"
    w = " + ".join(["1"] + list(_profile_terms(res.witness).values()))
    rep.text.append(f"ucharrank (formal) = {res.value}")
    rep.text.append(f"witness: w = {w}")
    rep.text.append(f"constraints: {applied}; {res.count} profiles")
    return 0


def cmd_catalog(args, rep: Report) -> int:
    if args.action == "list":
        if args.params:
            raise UsageError("catalog list takes no parameters")
        rep.inputs = {"action": "list"}
        rows = []
        for fam in catalog.FAMILIES:
            for params in catalog.DEFAULT_PARAMS[fam]:
                rows.append({"family": fam, "params": list(params)})
        rep.results = {"families": list(catalog.FAMILIES), "records": rows}
        for r in rows:
            rep.text.append(f"{r['family']} {' '.join(map(str, r['params']))}")
        return 0
    if not args.params:
        raise UsageError("catalog emit needs FAMILY PARAMS...")
    fam, *raw = args.params
    try:
        params = [int(x) for x in raw]
    except ValueError:
        raise UsageError(f"parameters must be integers: {' '.join(raw)}") from None
    rec = catalog.build(fam, *params)
    src = catalog.emit(rec)
    rep.inputs = {"action": "emit", "family": rec.family, "params": params}
    rep.results = {"name": rec.name, "source": src}
    rep.citations = {c.label: c.citation for c in rec.claims}
    rep.text.append(src.rstrip("\n"))
    return 0


def cmd_verify(args, rep: Report) -> int:
    rep.inputs = {"family": args.family}
    results = verify.verify(args.family)
    failed = [r for r in results if not r.ok]
    rep.results = {
        "checks": [
            {
                "space": r.space,
                "claim": r.label,
                "expected": list(r.expected) if isinstance(r.expected, tuple) else r.expected,
                "computed": list(r.computed) if isinstance(r.computed, tuple) else r.computed,
                "ok": r.ok,
                **({"error": r.error} if r.error else {}),
            }
            for r in results
        ],
        "passed": len(results) - len(failed),
        "failed": len(failed),
    }
    rep.citations = {f"{r.space}: {r.label}": r.citation for r in results}
    rep.text.extend(r.line() for r in results)
    rep.text.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        rep.status = "mismatch"
        return 1
    return 0


# -- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS on the subcommand copy so `crk --json cmd` is not reset by the subparser default
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="crk", description="Characteristic rank calculator")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="validate a file and print its canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("charrank", parents=[common], help="characteristic rank of a bundle")
    p.add_argument("file")
    p.add_argument("--space", required=True)
    p.add_argument("--bundle", required=True)
    p.set_defaults(func=cmd_charrank)

    p = sub.add_parser("cup", parents=[common], help="cup-length with a witness product")
    p.add_argument("file")
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_cup)

    p = sub.add_parser("bound", parents=[common], help="cup-length upper bound")
    p.add_argument("file")
    p.add_argument("--space", required=True)
    p.add_argument("--bundle", help="bundle for --k; tangent bundle for --z (default: 'tangent' if present)")
    p.add_argument("--k", type=int)
    p.add_argument("--z", type=int)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("ucharrank", parents=[common], help="formal upper characteristic rank")
    p.add_argument("file")
    p.add_argument("--space", required=True)
    p.add_argument("--constraints", help="comma list of power2,spherical,trivial-only,wu-sq1,forced-zero,none")
    p.add_argument("--limit", type=int, help="enumeration limit (default $CRK_LIMIT or 2^20)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_ucharrank)

    p = sub.add_parser("catalog", parents=[common], help="list or emit catalog spaces")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("params", nargs="*", help="FAMILY PARAMS... for emit")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="replay catalog expected values")
    p.add_argument("--family", choices=catalog.FAMILIES)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, Report]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        rep = Report(command="", status="usage")
        return int(exc.code or 0), rep
    rep = Report(command=args.command)
    try:
        code = args.func(args, rep)
    except HypothesisError as exc:
        rep.status = "violated"
        rep.results = {"error": str(exc), "precondition": exc.precondition}
        rep.text = [f"hypothesis violated ({exc.precondition}): {exc}"]
        code = 1
    except CapacityError as exc:
        rep.status = "violated"
        rep.results = {"error": str(exc), "precondition": "capacity"}
        rep.text = [f"capacity exceeded: {exc}"]
        code = 1
    except (UsageError, CharrankError) as exc:
        rep.status = "error"
        rep.results = {"error": str(exc)}
        rep.text = [f"error: {exc}"]
        code = 2
    rep.as_json = args.json
    return code, rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, rep = run(argv)
    if rep.command:
        out = rep.to_json() if rep.as_json else "\n".join(rep.text)
        stream = sys.stdout if code == 0 or rep.status in ("mismatch", "violated") else sys.stderr
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
