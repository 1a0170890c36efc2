"""Replay catalog expected values against the engine."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import engine
from .catalog import MANIFOLD_FAMILIES, Claim, SpaceRecord, records
from .errors import CharrankError

Value = Union[int, bool, tuple[int, ...], None]


@dataclass(frozen=True)
class CheckResult:
    space: str
    label: str
    expected: Value
    computed: Value
    citation: str
    ok: bool
    error: str = ""

    def line(self) -> str:
        mark = "ok  " if self.ok else "FAIL"
        got = self.error or _fmt(self.computed)
        return f"{mark} {self.space:<14} {self.label:<28} expected {_fmt(self.expected):<10} computed {got:<10} [{self.citation}]"


def _fmt(v: Value) -> str:
    if isinstance(v, tuple):
        return "{" + ",".join(map(str, v)) + "}"
    return str(v)


def _compute(record: SpaceRecord, claim: Claim) -> Value:
    alg = record.alg
    k = claim.kind
    if k == "ucharrank":
        return engine.ucharrank_formal(alg, record.constraints).value
    if k == "charrank":
        return engine.charrank(record.bundles[claim.bundle])
    if k == "charrank_values":
        return tuple(sorted({c for _, c in engine.charrank_universe(alg, record.constraints)}))
    if k == "cup":
        return engine.cup_length(alg)
    if k == "bundle_bound":
        return engine.bundle_cup_bound(record.bundles[claim.bundle], claim.param).floor
    if k == "boundary_bound":
        return engine.boundary_cup_bound(alg, claim.param, record.tangent).floor
    if k == "betti_sum":
        return sum(alg.betti)
    raise ValueError(f"unknown claim kind {k!r}")


def check_claim(record: SpaceRecord, claim: Claim) -> CheckResult:
    try:
        got = _compute(record, claim)
    except CharrankError as exc:
        return CheckResult(record.name, claim.label, claim.expected, None, claim.citation, False, str(exc))
    if claim.kind == "charrank_values":
        ok = set(got) <= set(claim.expected)
    else:
        ok = got == claim.expected
    return CheckResult(record.name, claim.label, claim.expected, got, claim.citation, ok)


def verify_record(record: SpaceRecord) -> list[CheckResult]:
    out = [check_claim(record, c) for c in record.claims]
    if record.family in MANIFOLD_FAMILIES:
        ok = engine.poincare_pairing_check(record.alg)
        out.append(CheckResult(record.name, "poincare_pairing", True, ok, "closed manifolds satisfy duality", ok))
    for name, surj in record.maps.items():
        got = record.document.maps[name].is_surjective()
        out.append(CheckResult(record.name, f"surjective({name})", surj, got, "induced map on cohomology", got == surj))
    return out


def verify(family: Optional[str] = None) -> list[CheckResult]:
    out = []
    for rec in records(family):
        out.extend(verify_record(rec))
    return out
