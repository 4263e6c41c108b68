"""Command-line front end: sweeps, single points, frame dumps, cross-checks.

Verbs: ``sweep`` (grid -> CSV/JSON), ``point`` (one configuration),
``simulate`` (frame dump CSV), ``validate`` (fast cross-oracle checks).
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .bounds import classical_phc_bound
from .decision import (
    DecisionRule,
    decide_batch,
    error_probability_gaussian_approx,
    exact_error_probability,
    gaussian_surrogate,
)
from .dist_core import (
    joint_from_pair_marginal,
    poisson_pmf,
    signal_joint,
    tmsv_joint_pmf,
)
from .params import CellPair, DetectionModel, NoiseKind, SourceKind, SourceSpec
from .simulate import dump_frames_csv, sample_frames
from .sweep import (
    SweepConfig,
    config_from_dict,
    emit_results,
    load_config,
    run_sweep,
)


def _add_detector_args(p: argparse.ArgumentParser):
    p.add_argument("--eta-s", type=float, default=1.0, help="signal-arm efficiency")
    p.add_argument("--eta-i", type=float, default=1.0, help="idler-arm efficiency")
    p.add_argument("--nu-e", type=float, default=0.0, help="electronic-noise parameter")
    p.add_argument(
        "--noise",
        choices=[k.value for k in NoiseKind],
        default="none",
        help="electronic-noise model",
    )


def _add_source_args(p: argparse.ArgumentParser):
    p.add_argument("--source", choices=["tmsv", "classical_poisson"], default="tmsv")
    p.add_argument("--m", default="inf", help="TMSV copy count, integer or 'inf'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qread",
        description="Photon-counting readout of binary lossy memory cells",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="evaluate a (tau0, N) grid from a recipe")
    sp.add_argument("--config", required=True, help="YAML recipe path")
    sp.add_argument("--out", default=None, help="output path (stdout when omitted)")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--seed", type=int, default=None, help="override recipe seed")
    sp.add_argument("--mode", choices=["exact", "gaussian", "montecarlo"], default=None)
    sp.add_argument("--frames", type=int, default=None, help="override frames per batch")
    sp.add_argument("--threads", type=int, default=1, help="worker processes")
    sp.add_argument("--full", action="store_true", help="use the fine grid of the recipe")
    sp.add_argument(
        "--strict",
        action="store_true",
        help="exit nonzero if any grid point has status != ok",
    )

    pp = sub.add_parser("point", help="evaluate a single (tau0, N) configuration")
    pp.add_argument("--tau0", type=float, required=True)
    pp.add_argument("--tau1", type=float, default=1.0)
    pp.add_argument("--n", type=float, required=True, help="mean signal photons N")
    pp.add_argument("--mode", choices=["exact", "gaussian", "montecarlo"], default="exact")
    pp.add_argument("--frames", type=int, default=10000)
    pp.add_argument("--seed", type=int, default=0)
    pp.add_argument("--out", default=None)
    pp.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_source_args(pp)
    _add_detector_args(pp)

    mp = sub.add_parser("simulate", help="dump synthetic frames as CSV")
    mp.add_argument("--tau0", type=float, required=True)
    mp.add_argument("--tau1", type=float, default=1.0)
    mp.add_argument("--n", type=float, required=True)
    mp.add_argument("--frames", type=int, default=1000)
    mp.add_argument("--seed", type=int, default=0)
    mp.add_argument("--bit", choices=["0", "1", "both"], default="both")
    mp.add_argument("--out", required=True)
    _add_source_args(mp)
    _add_detector_args(mp)

    vp = sub.add_parser("validate", help="run the cross-oracle consistency checks")
    vp.add_argument("--seed", type=int, default=0)
    return parser


def _detect_from(args) -> DetectionModel:
    return DetectionModel(args.eta_s, args.eta_i, args.nu_e, NoiseKind(args.noise))


def _source_m(args) -> float:
    return math.inf if args.m == "inf" else float(args.m)


def _cmd_sweep(args) -> int:
    config = load_config(args.config, full=args.full)
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.mode is not None:
        updates["mode"] = args.mode
    if args.frames is not None:
        updates["n_frames"] = args.frames
    if updates:
        from dataclasses import replace

        config = replace(config, **updates)
    records = run_sweep(config, threads=args.threads)
    text = emit_results(records, fmt=args.format, path=args.out)
    if args.out is None:
        sys.stdout.write(text)
    bad = sum(1 for r in records if r.status != "ok")
    if bad:
        print(f"warning: {bad}/{len(records)} grid points failed", file=sys.stderr)
    return 1 if (args.strict and bad) else 0


def _cmd_point(args) -> int:
    config = SweepConfig(
        tau0_values=(args.tau0,),
        n_values=(args.n,),
        tau1=args.tau1,
        eta_s=args.eta_s,
        eta_i=args.eta_i,
        nu_e=args.nu_e,
        noise=NoiseKind(args.noise),
        source_kind=SourceKind(args.source),
        source_m=_source_m(args),
        mode=args.mode,
        n_frames=args.frames,
        seed=args.seed,
    )
    records = run_sweep(config)
    text = emit_results(records, fmt=args.format, path=args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0 if records[0].status == "ok" else 1


def _cmd_simulate(args) -> int:
    cell = CellPair(args.tau0, args.tau1)
    detect = _detect_from(args)
    if args.source == "tmsv":
        source = SourceSpec.tmsv(args.n, _source_m(args))
    else:
        source = SourceSpec.classical(args.n)
    bits = [0, 1] if args.bit == "both" else [int(args.bit)]
    batches = [
        sample_frames(source, cell, u, detect, args.frames, args.seed) for u in bits
    ]
    dump_frames_csv(args.out, batches)
    print(f"wrote {sum(b.count for b in batches)} frames to {args.out}")
    return 0


def _check(name: str, ok: bool, detail: str = "") -> bool:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
    return ok


def _cmd_validate(args) -> int:
    rng = np.random.default_rng(args.seed)
    all_ok = True

    # closed-form photon-counting bound vs direct min-sum on Poisson models
    worst = 0.0
    for _ in range(10):
        N = float(rng.uniform(1, 300))
        tau0 = float(rng.uniform(0.0, 0.9))
        tau1 = float(rng.uniform(tau0 + 0.05, 1.0))
        cell = CellPair(tau0, tau1)
        detect = DetectionModel(1.0, 1.0, 0.0, NoiseKind.NONE)
        closed = classical_phc_bound(N, cell, detect)
        m0 = signal_joint(poisson_pmf(N * tau0))
        m1 = signal_joint(poisson_pmf(N * tau1))
        brute = exact_error_probability(m0, m1)
        worst = max(worst, abs(closed - brute))
    all_ok &= _check("phc closed form vs min-sum", worst < 1e-9, f"worst {worst:.2e}")

    # Poisson-limit decomposition vs conditional-binomial sum
    marg = poisson_pmf(6.0)
    table, s_lo, s_hi, i_lo, i_hi = joint_from_pair_marginal(marg, 0.55, 0.8)
    joint = tmsv_joint_pmf(SourceSpec.tmsv(6.0), 0.55 / 0.8, DetectionModel(0.8, 0.8, 0.0))
    sl = slice(s_lo - joint.s_lo, s_hi - joint.s_lo + 1)
    il = slice(i_lo - joint.i_lo, i_hi - joint.i_lo + 1)
    diff = float(np.abs(joint.probs[sl, il] - table).max())
    all_ok &= _check("Poisson-limit decomposition vs conditional sum", diff < 1e-12, f"max {diff:.2e}")

    # normal surrogate vs exact path, classical N = 200
    cell = CellPair(0.5, 1.0)
    detect = DetectionModel(1.0, 1.0, 0.0, NoiseKind.NONE)
    source = SourceSpec.classical(200.0)
    exact = exact_error_probability(
        signal_joint(poisson_pmf(100.0)), signal_joint(poisson_pmf(200.0))
    )
    approx = error_probability_gaussian_approx(
        gaussian_surrogate(source, cell, detect, 0),
        gaussian_surrogate(source, cell, detect, 1),
    )
    rel = abs(approx - exact) / exact
    all_ok &= _check("normal surrogate vs exact (N=200)", rel < 0.02, f"rel {rel:.2%}")

    # threshold rules vs full likelihood on sampled outcomes
    cell = CellPair(0.4, 0.9)
    source = SourceSpec.tmsv(30.0)
    models = [tmsv_joint_pmf(source, cell.tau(u), detect) for u in (0, 1)]
    full = DecisionRule.full_likelihood(*models)
    thresh = DecisionRule.quantum_threshold(cell, detect)
    agree = True
    for u in (0, 1):
        batch = sample_frames(source, cell, u, detect, 2000, args.seed + u)
        agree &= bool(
            np.all(
                decide_batch(full, batch.ns, batch.ni)
                == decide_batch(thresh, batch.ns, batch.ni)
            )
        )
    all_ok &= _check("quantum threshold vs full likelihood", agree)

    print("all checks passed" if all_ok else "some checks FAILED")
    return 0 if all_ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "point": _cmd_point,
        "simulate": _cmd_simulate,
        "validate": _cmd_validate,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
