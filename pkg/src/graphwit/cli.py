"""Command-line interface.

Qubit and vertex indices are 1-based on the command line (matching the usual
convention in the literature); JSON files are 0-based.  Commands emit JSON on
stdout; human-readable notes go to stderr.  Exit codes: 0 success/pass,
1 verification failure, 2 usage error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import acceptance
from .diagops import (
    GraphDiagonalState,
    pt_positivity_sweep,
    pure_graph_state,
    white_noise_state,
)
from .errors import CapExceededError, UsageError, VerificationError
from .graphs import Graph, catalog_entries, catalog_entry, make_named
from .lp import certify_decomposable, detection_threshold, monotone_n, optimal_witness
from .witnesses import (
    WitnessRecord,
    bset_ppt_witness,
    bset_witness,
    catalog_witness,
    combine_min,
    projector_witness,
    record_certificate,
    torus_witness,
    two_setting_improved,
    two_setting_witness,
    white_noise_tolerance,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _note(msg: str):
    print(msg, file=sys.stderr)


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=1)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
        _note(f"wrote {out}")
    else:
        print(text)


def _parse_graph_spec(spec: str) -> Graph:
    if spec.endswith(".json") or os.path.exists(spec):
        with open(spec) as f:
            return Graph.from_json(json.load(f))
    parts = spec.split(":")
    family = parts[0].lower()
    if family == "catalog":
        return make_named("catalog", int(parts[1]))
    if family in ("linear", "ring", "star"):
        return make_named(family, int(parts[1]))
    if family == "grid":
        w, h = parts[1].lower().split("x")
        periodic = len(parts) > 2 and parts[2].startswith("p")
        return make_named("grid", int(w), int(h), periodic=periodic)
    raise UsageError(f"cannot parse graph spec {spec!r}")


def _load_state(args) -> GraphDiagonalState:
    if getattr(args, "state", None):
        with open(args.state) as f:
            return GraphDiagonalState.from_json(json.load(f))
    if getattr(args, "graph", None):
        g = _parse_graph_spec(args.graph)
        p = getattr(args, "noise", None)
        return white_noise_state(g, p) if p is not None else pure_graph_state(g)
    raise UsageError("need --state FILE or --graph SPEC")


def _parse_bset(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted(int(t) - 1 for t in text.replace(" ", "").split(",") if t))
    except ValueError as exc:
        raise UsageError(f"cannot parse qubit list {text!r}") from exc


def _tolerance_json(rec: WitnessRecord) -> dict:
    out = {"tolerance": rec.tolerance}
    out["tolerance_exact"] = str(rec.tolerance_exact) if rec.tolerance_exact else None
    return out


# -- commands ----------------------------------------------------------------


def cmd_catalog(args) -> int:
    entries = catalog_entries()
    if args.action == "list":
        rows = [
            {
                "id": e["id"],
                "name": e["name"],
                "n": e["n"],
                "reference_tolerance": e["reference_tolerance"],
                "provenance": e["provenance"],
            }
            for e in entries.values()
        ]
        if args.json:
            _emit(rows, args.out)
        else:
            for r in rows:
                name = r["name"] or "-"
                print(
                    f"{r['id']:2d}  {name:<6} n={r['n']}  "
                    f"p_tol={r['reference_tolerance']:<8} [{r['provenance']}]"
                )
        return EXIT_OK
    e = dict(catalog_entry(args.id))
    if args.json:
        _emit(e, args.out)
    else:
        name = e["name"] or "(unnamed)"
        print(f"catalog #{e['id']} {name}: n={e['n']}")
        print("edges (1-based):", [(i + 1, j + 1) for i, j in e["edges"]])
        print(f"reference tolerance: {e['reference_tolerance']}")
        print(f"provenance: {e['provenance']} ({e['provenance_note']})")
    return EXIT_OK


def _construct(args) -> WitnessRecord:
    g = _parse_graph_spec(args.graph)
    method = args.method
    if method == "projector":
        return projector_witness(g)
    if method in ("lemma3", "lemma5"):
        if not args.bset:
            raise UsageError(f"--method {method} needs --bset")
        b = _parse_bset(args.bset)
        return bset_witness(g, b) if method == "lemma3" else bset_ppt_witness(g, b)
    if method in ("lemma4", "lemma6"):
        if not args.bsets:
            raise UsageError(f"--method {method} needs --bsets \"1,4;2,4\"")
        groups = [_parse_bset(t) for t in args.bsets.split(";") if t]
        build = bset_witness if method == "lemma4" else bset_ppt_witness
        parts = [build(g, b) for b in groups]
        return combine_min(parts, method, force=args.force)
    if method == "torus":
        return torus_witness(g)
    if method == "two_setting":
        return two_setting_witness(g)
    if method == "two_setting_improved":
        b1 = _parse_bset(args.bset) if args.bset else None
        b2 = None
        if args.bsets:
            groups = [_parse_bset(t) for t in args.bsets.split(";") if t]
            if len(groups) != 2:
                raise UsageError("--bsets for the improved witness takes two groups")
            b1, b2 = groups
        return two_setting_improved(g, b1, b2)
    if method == "catalog":
        if not args.id:
            raise UsageError("--method catalog needs --id")
        return catalog_witness(args.id)
    raise UsageError(f"unknown construction method {method!r}")


def cmd_witness(args) -> int:
    if args.action == "construct":
        rec = _construct(args)
        _note(
            f"{rec.method} witness on n={rec.n}: tolerance "
            f"{rec.tolerance_exact or rec.tolerance}"
        )
        _emit(rec.to_json(), args.out)
        return EXIT_OK
    # optimize
    state = _load_state(args)
    if args.threshold:
        thr, rec = detection_threshold(state.graph, args.mode)
        value = float(rec.op.diag @ state.probs)
        out = rec.to_json()
        out["value"] = value
        out["threshold"] = thr
        _note(f"LP optimum on given state: {value:.9f}; white-noise threshold {thr:.7f}")
    else:
        rec, value = optimal_witness(state, args.mode)
        out = rec.to_json()
        out["value"] = value
        _note(f"LP optimum on given state: {value:.9f}")
    _emit(out, args.out)
    return EXIT_OK


def _load_witness(path: str) -> WitnessRecord:
    with open(path) as f:
        return WitnessRecord.from_json(json.load(f))


def cmd_verify(args) -> int:
    rec = _load_witness(args.witness)
    report: dict = {"mode": args.mode, "per_M": [], "pass": True}
    if args.mode == "ppt":
        sweep = pt_positivity_sweep(
            rec.op, sample=args.sample, seed=args.seed, jobs=args.jobs
        )
        report["per_M"] = [
            {"mask": m, "min_diag": v, "pass": ok} for m, v, ok in sweep
        ]
        report["pass"] = all(ok for _, _, ok in sweep)
        if args.dense:
            from .dense import verify_witness

            dense_rep = verify_witness(rec, "fully_ppt_dense")
            report["dense"] = dense_rep
            report["pass"] = report["pass"] and dense_rep["pass"]
    elif args.mode == "decomposable":
        try:
            if args.certificates == "analytic":
                from .graphs import enumerate_bipartitions
                from .witnesses import certificate_residuals

                res = certificate_residuals(rec)
                report["per_M"] = [
                    {"mask": m, "min_diag": v, "pass": v >= -1e-9} for m, v in res
                ]
                report["pass"] = all(r["pass"] for r in report["per_M"])
                certs = {
                    p.mask: record_certificate(rec, p).diag(rec.n)
                    for p in enumerate_bipartitions(rec.n)
                }
            else:
                certs = certify_decomposable(rec)
                report["per_M"] = [{"mask": m, "pass": True} for m in certs]
                certs = {m: p for m, (p, _) in certs.items()}
        except VerificationError as exc:
            report["pass"] = False
            report["error"] = str(exc)
            certs = None
        if args.dense and report["pass"] and certs is not None:
            from .dense import verify_witness

            dense_rep = verify_witness(rec, "decomposable_with_certs", certificates=certs)
            report["dense"] = dense_rep
            report["pass"] = report["pass"] and dense_rep["pass"]
    else:
        raise UsageError(f"unknown verify mode {args.mode!r}")
    _emit(report, args.out)
    if not report["pass"]:
        bad = [r["mask"] for r in report["per_M"] if not r.get("pass", True)]
        _note(f"verification FAILED; failing masks: {bad[:8]}{'...' if len(bad) > 8 else ''}")
        return EXIT_VERIFY
    _note("verification passed")
    return EXIT_OK


def cmd_tolerance(args) -> int:
    rec = _load_witness(args.witness)
    tol, exact = white_noise_tolerance(rec.op)
    _emit({"tolerance": tol, "tolerance_exact": str(exact) if exact else None}, args.out)
    return EXIT_OK


def cmd_monotone(args) -> int:
    state = _load_state(args)
    value, rec = monotone_n(state)
    out = {"value": value, "witness": rec.to_json()}
    _note(f"monotone value {value:.9f}")
    _emit(out, args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = acceptance.run_all(fast=args.fast, jobs=args.jobs, seed=args.seed)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="graphwit",
        description="Entanglement witnesses for graph states",
    )
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    ap.add_argument("--jobs", type=int, default=None, help="parallel sweep width")
    ap.add_argument("--out", help="write JSON output to this file")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or show the shipped graph catalog")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("--id", type=int, help="catalog id (1..19)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("witness", help="construct or optimize witnesses")
    p.add_argument("action", choices=["construct", "optimize"])
    p.add_argument("--graph", help="graph JSON file or spec like linear:7, catalog:4")
    p.add_argument(
        "--method",
        default="lemma3",
        choices=[
            "projector",
            "lemma3",
            "lemma4",
            "lemma5",
            "lemma6",
            "torus",
            "two_setting",
            "two_setting_improved",
            "catalog",
        ],
    )
    p.add_argument("--bset", help="comma-separated 1-based qubits, e.g. 1,4")
    p.add_argument("--bsets", help="semicolon-separated groups, e.g. \"1,5;3,7\"")
    p.add_argument("--id", type=int, help="catalog id for --method catalog")
    p.add_argument("--force", action="store_true", help="downgrade precondition failures")
    p.add_argument("--state", help="state JSON file (optimize)")
    p.add_argument("--noise", type=float, help="white-noise level for --graph states")
    p.add_argument(
        "--mode",
        default="fully_decomposable",
        choices=["fully_decomposable", "fully_ppt"],
    )
    p.add_argument(
        "--threshold",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="also compute the white-noise detection threshold (optimize)",
    )
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="verify a witness file")
    p.add_argument("--witness", required=True)
    p.add_argument("--mode", required=True, choices=["ppt", "decomposable"])
    p.add_argument("--dense", action="store_true", help="add dense eigenvalue checks")
    p.add_argument("--sample", type=int, help="verify a random subset of bipartitions")
    p.add_argument(
        "--certificates",
        default="lp",
        choices=["lp", "analytic"],
        help="certificate source for decomposable mode",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tolerance", help="white-noise tolerance of a witness file")
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_tolerance)

    p = sub.add_parser("monotone", help="entanglement monotone of a state")
    p.add_argument("--state", help="state JSON file")
    p.add_argument("--graph", help="graph spec for a pure/noisy graph state")
    p.add_argument("--noise", type=float)
    p.set_defaults(func=cmd_monotone)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--fast", action="store_true", help="sampled sweeps, fewer instances")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _note(f"usage error: {exc}")
        return EXIT_USAGE
    except CapExceededError as exc:
        _note(f"cap exceeded: {exc}")
        return EXIT_CAP
    except VerificationError as exc:
        _note(f"verification failure: {exc}")
        return EXIT_VERIFY
    except FileNotFoundError as exc:
        _note(f"usage error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
