"""Command-line front end.

Subcommands: `invariants`, `cohomology`, `clifford`, `fields`, `accept`.
Exit codes: 0 = all checks passed, 1 = a verification check failed,
2 = usage error (bad flags or parameter ranges).  The seed defaults to the
WALLSPAN_SEED environment variable when set, else 42; identical
configurations produce byte-identical JSON reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .acceptance import run_acceptance
from .clifford import build_family, verify_family
from .f2cohomology import VirtualSwSearch, total_sw_wall
from .harness import (
    DEFAULT_SEED,
    SCHEMA_VERSION,
    CampaignConfig,
    Tolerances,
    render_campaign_text,
    report_to_json,
    run_campaign,
)
from .invariants import WallParams, pspan_wall, sspan_cpn, upper_bound_fibration

USAGE_ERROR = 2
CHECK_FAILED = 1


def parse_int_spec(spec: str) -> tuple[int, ...]:
    """Parse '3', '1:4' (inclusive) or '0,2,4' into a tuple of ints."""
    values: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if ":" in part:
            lo_s, hi_s = part.split(":", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(int(part))
    if not values:
        raise ValueError(f"empty spec {spec!r}")
    return tuple(values)


def default_seed() -> int:
    env = os.environ.get("WALLSPAN_SEED")
    return int(env) if env else DEFAULT_SEED


def emit(obj: dict[str, Any], fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2, allow_nan=False) + "\n")
    else:
        sys.stdout.write(text)


def cmd_invariants(args: argparse.Namespace) -> int:
    p = WallParams(args.m, args.n)
    pspan = pspan_wall(p)
    fib = upper_bound_fibration(p)
    sspan = sspan_cpn(p.n)
    consistent = pspan == fib and p.delta == pspan and pspan <= p.dim
    note = None
    if p.m % 2 == 0 and p.n % 2 == 0 and p.n > 0:
        note = f"m, n both even: span(Q) = 1 < pspan(Q) = {pspan} = m+1"
    obj: dict[str, Any] = {
        "schemaVersion": SCHEMA_VERSION,
        "tool": "wallspan",
        "kind": "invariants",
        "m": p.m,
        "n": p.n,
        "nu": p.nu,
        "delta": p.delta,
        "dim": p.dim,
        "pspan": pspan,
        "fibrationUpperBound": fib,
        "sspanCpn": sspan,
        "consistent": consistent,
        "note": note,
    }
    lines = [
        f"Q(m={p.m}, n={p.n}):  dim = {p.dim}",
        f"nu(n+1)                  {p.nu}",
        f"delta = 2 nu + m + 1     {p.delta}",
        f"pspan (closed form)      {pspan}",
        f"fibration upper bound    {fib}",
        f"sspan(CP^n)              {sspan}",
        f"consistency              {'PASS' if consistent else 'FAIL'}",
    ]
    if note:
        lines.append(f"note: {note}")
    emit(obj, args.format, "\n".join(lines) + "\n")
    return 0 if consistent else CHECK_FAILED


def cmd_cohomology(args: argparse.Namespace) -> int:
    p = WallParams(args.m, args.n)
    k_max = args.k_max if args.k_max is not None else p.dim
    if not 1 <= k_max <= p.dim:
        raise ValueError(f"--k-max must lie in 1..dim = {p.dim}, got {k_max}")
    w = total_sw_wall(p)
    search = VirtualSwSearch(p)
    pspan = pspan_wall(p)

    rule_outs = []
    first_ruled_out = None
    for k in range(1, k_max + 1):
        result = search.rule_out(k)
        entry: dict[str, Any] = {
            "k": k,
            "ruledOut": result.ruled_out,
            "maxAllowedDegree": result.max_allowed_degree,
        }
        if result.ruled_out and first_ruled_out is None:
            first_ruled_out = k
            entry["witnesses"] = [
                {
                    "multiset": x.describe(),
                    "counts": list(x.counts),
                    "failureDegree": x.failure_degree,
                }
                for x in result.witnesses
            ]
        elif result.ruled_out:
            entry["witnessCount"] = len(result.witnesses)
        else:
            admissible = result.witnesses[-1]
            entry["admissibleMultiset"] = admissible.describe()
        rule_outs.append(entry)
    upper = (first_ruled_out - 1) if first_ruled_out is not None else p.dim
    bound_ok = upper >= pspan

    obj: dict[str, Any] = {
        "schemaVersion": SCHEMA_VERSION,
        "tool": "wallspan",
        "kind": "cohomology",
        "m": p.m,
        "n": p.n,
        "dim": p.dim,
        "pspan": pspan,
        "totalSw": w.render(),
        "totalSwByDegree": [
            {"degree": q, "value": w.component(q).render()} for q in w.degrees()
        ],
        "kMax": k_max,
        "ruleOuts": rule_outs,
        "swUpperBound": upper,
        "boundNotBelowPspan": bound_ok,
    }
    lines = [f"w(Q({p.m},{p.n})) = {w.render()}"]
    for piece in obj["totalSwByDegree"]:
        lines.append(f"  w_{piece['degree']} = {piece['value']}")
    for entry in rule_outs:
        if entry["ruledOut"]:
            lines.append(
                f"k = {entry['k']:2d}: ruled out (every degree-1 multiset fails above degree "
                f"{entry['maxAllowedDegree']})"
            )
        else:
            lines.append(
                f"k = {entry['k']:2d}: admissible, witness {entry['admissibleMultiset']}"
            )
    lines.append(f"sw upper bound = {upper} (pspan = {pspan})")
    emit(obj, args.format, "\n".join(lines) + "\n")
    return 0 if bound_ok else CHECK_FAILED


def cmd_clifford(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise ValueError(f"need n >= 0, got {args.n}")
    family = build_family(args.n)
    report = verify_family(family)
    obj: dict[str, Any] = {
        "schemaVersion": SCHEMA_VERSION,
        "tool": "wallspan",
        "kind": "clifford",
        "n": family.n,
        "nu": family.nu,
        "b": family.b,
        "matrixCount": family.count,
        "predictedSigns": list(family.predicted_signs),
        "identities": [{"name": c.name, "passed": c.passed} for c in report.checks],
        "allPassed": report.all_passed,
        "matrices": [
            {
                "index": j + 1,
                "sign": family.predicted_signs[j],
                "entries": [
                    [mat.entry_str(r, c) for c in range(mat.size)] for r in range(mat.size)
                ],
            }
            for j, mat in enumerate(family.matrices)
        ],
    }
    lines = [
        f"n = {family.n}: {family.count} automorphisms of C^{family.n + 1} "
        f"(nu = {family.nu}, b = {family.b})",
        f"predicted conjugation signs: {list(family.predicted_signs)}",
        f"identities: {sum(c.passed for c in report.checks)}/{len(report.checks)} passed",
    ]
    if not report.all_passed:
        lines.append(f"failures: {[c.name for c in report.failures()]}")
    if family.matrices[0].size <= 8:
        for j, mat in enumerate(family.matrices, start=1):
            lines.append(f"A_{j} =")
            lines.extend("  " + row for row in mat.pretty().splitlines())
    emit(obj, args.format, "\n".join(lines) + "\n")
    return 0 if report.all_passed else CHECK_FAILED


def config_from_args(args: argparse.Namespace) -> CampaignConfig:
    return CampaignConfig(
        m_values=parse_int_spec(args.m),
        n_values=parse_int_spec(args.n),
        samples_per_case=args.samples,
        seed=args.seed,
        tolerances=Tolerances(
            tangency=args.tol_tangency,
            invariance=args.tol_invariance,
            rank_rel=args.tol_rank,
        ),
    )


def cmd_fields(args: argparse.Namespace) -> int:
    result = run_campaign(config_from_args(args))
    if args.format == "json":
        sys.stdout.write(report_to_json(result.report))
    else:
        sys.stdout.write(render_campaign_text(result.report))
    return 0 if result.passed else CHECK_FAILED


def cmd_accept(args: argparse.Namespace) -> int:
    result = run_acceptance(config_from_args(args))
    if args.format == "json":
        obj = {
            "schemaVersion": SCHEMA_VERSION,
            "tool": "wallspan",
            "kind": "acceptance",
            "seed": args.seed,
            "configHash": result.campaign.report["configHash"],
            "criteria": [
                {
                    "id": c.cid,
                    "title": c.title,
                    "passed": c.passed,
                    "details": c.details,
                    "elapsedSeconds": round(c.elapsed, 3),
                }
                for c in result.criteria
            ],
            "allPassed": result.passed,
            "campaignSummary": result.campaign.report["summary"],
        }
        sys.stdout.write(json.dumps(obj, indent=2, allow_nan=False) + "\n")
    else:
        for c in result.criteria:
            sys.stdout.write(c.line() + "\n")
        sys.stdout.write("acceptance: " + ("PASS" if result.passed else "FAIL") + "\n")
    return 0 if result.passed else CHECK_FAILED


def _add_format(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text")


def _add_campaign_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--m", default="1:4", help="m values: '2', '1:4' or '1,3'")
    sub.add_argument("--n", default="0:8", help="n values: '2', '0:8' or '0,2,4'")
    sub.add_argument("--samples", type=int, default=100)
    sub.add_argument("--seed", type=int, default=default_seed())
    sub.add_argument("--tol-tangency", type=float, default=1e-10)
    sub.add_argument("--tol-invariance", type=float, default=1e-9)
    sub.add_argument("--tol-rank", type=float, default=1e-8)
    _add_format(sub)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallspan",
        description="Verification lab for the projective span of Wall manifolds Q(m, n).",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_inv = subparsers.add_parser("invariants", help="closed-form invariants for one (m, n)")
    p_inv.add_argument("--m", type=int, required=True)
    p_inv.add_argument("--n", type=int, required=True)
    _add_format(p_inv)
    p_inv.set_defaults(func=cmd_invariants)

    p_coh = subparsers.add_parser("cohomology", help="total SW class and obstruction bound")
    p_coh.add_argument("--m", type=int, required=True)
    p_coh.add_argument("--n", type=int, required=True)
    p_coh.add_argument("--k-max", type=int, default=None)
    _add_format(p_coh)
    p_coh.set_defaults(func=cmd_cohomology)

    p_cl = subparsers.add_parser("clifford", help="build and verify the Clifford family")
    p_cl.add_argument("--n", type=int, required=True)
    _add_format(p_cl)
    p_cl.set_defaults(func=cmd_clifford)

    p_f = subparsers.add_parser("fields", help="sampled verification campaign over a grid")
    _add_campaign_flags(p_f)
    p_f.set_defaults(func=cmd_fields)

    p_a = subparsers.add_parser("accept", help="run the acceptance suite")
    _add_campaign_flags(p_a)
    p_a.set_defaults(func=cmd_accept)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
