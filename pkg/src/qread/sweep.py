"""Parameter-grid evaluation and result emission.

A sweep walks the (tau0, N) grid in deterministic row-major order (N outer,
tau0 inner), evaluates one GainRecord per point, and never aborts on a
per-point failure: the row is emitted with an error token in ``status``.
Evaluation modes: ``exact`` (count tables; falls back to the normal
surrogate above ``exact_n_limit``), ``gaussian`` (always the surrogate),
``montecarlo`` (sampled frames decoded with the noise-convolved model).
"""

from __future__ import annotations

import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import yaml

from .bounds import (
    GainRecord,
    classical_optimal_bound,
    classical_phc_bound,
    gain,
    med_boundary,
)
from .channel_model import apply_noise, apply_noise_joint
from .decision import (
    DecisionRule,
    error_probability_gaussian_approx,
    exact_error_probability,
    gaussian_surrogate,
)
from .dist_core import DEFAULT_TRUNC_TOL, poisson_pmf, signal_joint, tmsv_joint_pmf
from .errors import InvalidParameterError, QReadError
from .params import CellPair, DetectionModel, NoiseKind, SourceKind, SourceSpec
from .simulate import estimate_error, gain_with_uncertainty, sample_frames

CSV_HEADER = (
    "tau0,tau1,N,eta_s,eta_i,nu_e,mode,p_err_q,p_err_c_opt,p_err_c_phc,"
    "gain_opt,gain_phc,med_tau0,uncertainty,status"
)
_FIELDS = CSV_HEADER.split(",")

MODES = ("exact", "gaussian", "montecarlo")


@dataclass(frozen=True)
class SweepConfig:
    tau0_values: tuple[float, ...]
    n_values: tuple[float, ...]
    tau1: float = 1.0
    eta_s: float = 1.0
    eta_i: float = 1.0
    nu_e: float = 0.0
    noise: NoiseKind = NoiseKind.NONE
    source_kind: SourceKind = SourceKind.TMSV
    source_m: float = math.inf
    mode: str = "exact"
    exact_n_limit: float = 1e4
    n_frames: int = 10000
    seed: int = 0
    trunc_tol: float = DEFAULT_TRUNC_TOL

    def __post_init__(self):
        if not self.tau0_values or not self.n_values:
            raise InvalidParameterError("tau0 and N grids must be non-empty")
        for t in self.tau0_values:
            if not (0.0 <= t < self.tau1):
                raise InvalidParameterError(
                    f"tau0 grid must lie strictly inside [0, tau1), got {t}"
                )
        for n in self.n_values:
            if n < 0 or not math.isfinite(n):
                raise InvalidParameterError(f"N values must be finite and >= 0, got {n}")
        if self.mode not in MODES:
            raise InvalidParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n_frames < 1:
            raise InvalidParameterError("n_frames must be >= 1")

    @property
    def detect(self) -> DetectionModel:
        return DetectionModel(self.eta_s, self.eta_i, self.nu_e, self.noise)

    def source(self, N: float) -> SourceSpec:
        if self.source_kind is SourceKind.CLASSICAL_POISSON:
            return SourceSpec.classical(N)
        return SourceSpec.tmsv(N, self.source_m)


def _expand_axis(spec) -> tuple[float, ...]:
    if isinstance(spec, (list, tuple)):
        return tuple(float(v) for v in spec)
    if isinstance(spec, dict):
        spacing = spec.get("spacing", "linear")
        num = int(spec["num"])
        start, stop = float(spec["start"]), float(spec["stop"])
        if spacing == "linear":
            vals = np.linspace(start, stop, num)
        elif spacing == "log":
            vals = np.geomspace(start, stop, num)
        elif spacing == "one_minus_geom":
            # start/stop are distances below 1; emitted ascending in tau0
            vals = 1.0 - np.geomspace(start, stop, num)
        else:
            raise InvalidParameterError(f"unknown axis spacing {spacing!r}")
        return tuple(float(v) for v in vals)
    raise InvalidParameterError(f"axis spec must be a list or mapping, got {spec!r}")


def _merge_full(base: dict, overrides: dict) -> dict:
    merged = dict(base)
    for key, val in overrides.items():
        if isinstance(val, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge_full(merged[key], val)
        else:
            merged[key] = val
    return merged


def config_from_dict(doc: dict, full: bool = False) -> SweepConfig:
    doc = dict(doc)
    overrides = doc.pop("full", None)
    doc.pop("description", None)
    if full and overrides:
        doc = _merge_full(doc, overrides)
    detect = doc.get("detect", {})
    source = doc.get("source", {})
    m_raw = source.get("m", "inf")
    source_m = math.inf if (isinstance(m_raw, str) and m_raw == "inf") else float(m_raw)
    return SweepConfig(
        tau0_values=_expand_axis(doc["tau0"]),
        n_values=_expand_axis(doc["n_values"]),
        tau1=float(doc.get("tau1", 1.0)),
        eta_s=float(detect.get("eta_s", 1.0)),
        eta_i=float(detect.get("eta_i", 1.0)),
        nu_e=float(detect.get("nu_e", 0.0)),
        noise=NoiseKind(detect.get("noise", "none")),
        source_kind=SourceKind(source.get("kind", "tmsv")),
        source_m=source_m,
        mode=str(doc.get("mode", "exact")),
        exact_n_limit=float(doc.get("exact_n_limit", 1e4)),
        n_frames=int(doc.get("n_frames", 10000)),
        seed=int(doc.get("seed", 0)),
        trunc_tol=float(doc.get("trunc_tol", DEFAULT_TRUNC_TOL)),
    )


def load_config(path, full: bool = False) -> SweepConfig:
    with open(path, "r", encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    return config_from_dict(doc, full=full)


# ---------------------------------------------------------------------------
# point evaluation
# ---------------------------------------------------------------------------


def _exact_models(config: SweepConfig, cell: CellPair, N: float):
    detect = config.detect
    source = config.source(N)
    models = []
    for u in (0, 1):
        if source.kind is SourceKind.CLASSICAL_POISSON:
            pmf = poisson_pmf(N * detect.eta_s * cell.tau(u), config.trunc_tol)
            models.append(signal_joint(apply_noise(pmf, detect)))
        else:
            joint = tmsv_joint_pmf(source, cell.tau(u), detect, config.trunc_tol)
            models.append(apply_noise_joint(joint, detect))
    return models


def _point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(entropy=(seed, index)).generate_state(1, np.uint64)[0])


def evaluate_point(config: SweepConfig, tau0: float, N: float, index: int) -> GainRecord:
    """One grid point; failures come back as a row with an error status."""
    cell = CellPair(tau0, config.tau1)
    detect = config.detect
    source = config.source(N)
    mode = config.mode
    if mode == "exact" and N > config.exact_n_limit:
        mode = "gaussian"
    try:
        med = med_boundary(N) if N > 0 else float("nan")
        if mode == "montecarlo":
            if N <= config.exact_n_limit:
                rule = DecisionRule.full_likelihood(*_exact_models(config, cell, N))
            else:
                rule = DecisionRule.full_likelihood(
                    gaussian_surrogate(source, cell, detect, 0),
                    gaussian_surrogate(source, cell, detect, 1),
                )
            pseed = _point_seed(config.seed, index)
            batch0 = sample_frames(source, cell, 0, detect, config.n_frames, pseed)
            batch1 = sample_frames(source, cell, 1, detect, config.n_frames, pseed)
            est = estimate_error(batch0, batch1, rule)
            return gain_with_uncertainty(est, cell, source, detect)
        if mode == "exact":
            p_q = exact_error_probability(*_exact_models(config, cell, N))
        else:
            p_q = error_probability_gaussian_approx(
                gaussian_surrogate(source, cell, detect, 0),
                gaussian_surrogate(source, cell, detect, 1),
            )
        p_q = min(max(p_q, 0.0), 0.5)
        p_opt = classical_optimal_bound(N, cell, detect)
        p_phc = classical_phc_bound(N, cell, detect)
        return GainRecord(
            cell=cell,
            source=source,
            detect=detect,
            p_err_quantum=p_q,
            p_err_classical_opt=p_opt,
            p_err_classical_phc=p_phc,
            gain_vs_opt=gain(p_q, p_opt),
            gain_vs_phc=gain(p_q, p_phc),
            uncertainty=0.0,
            med_tau0=med,
            mode=mode,
        )
    except QReadError as exc:
        nan = float("nan")
        return GainRecord(
            cell=cell,
            source=source,
            detect=detect,
            p_err_quantum=nan,
            p_err_classical_opt=nan,
            p_err_classical_phc=nan,
            gain_vs_opt=nan,
            gain_vs_phc=nan,
            uncertainty=nan,
            med_tau0=float("nan"),
            mode=mode,
            status=type(exc).__name__,
        )


def _evaluate_args(args) -> GainRecord:
    return evaluate_point(*args)


def run_sweep(config: SweepConfig, threads: int = 1) -> list[GainRecord]:
    """Evaluate every grid point in deterministic order (N outer, tau0 inner)."""
    points = [
        (config, tau0, N, idx)
        for idx, (N, tau0) in enumerate(
            (N, t) for N in config.n_values for t in config.tau0_values
        )
    ]
    if threads <= 1:
        return [_evaluate_args(p) for p in points]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        # map preserves input order, so output is independent of scheduling
        return list(pool.map(_evaluate_args, points, chunksize=4))


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def record_row(rec: GainRecord) -> dict:
    return {
        "tau0": rec.cell.tau0,
        "tau1": rec.cell.tau1,
        "N": rec.source.N,
        "eta_s": rec.detect.eta_s,
        "eta_i": rec.detect.eta_i,
        "nu_e": rec.detect.nu_e,
        "mode": rec.mode,
        "p_err_q": rec.p_err_quantum,
        "p_err_c_opt": rec.p_err_classical_opt,
        "p_err_c_phc": rec.p_err_classical_phc,
        "gain_opt": rec.gain_vs_opt,
        "gain_phc": rec.gain_vs_phc,
        "med_tau0": rec.med_tau0,
        "uncertainty": rec.uncertainty,
        "status": rec.status,
    }


def emit_results(records: list[GainRecord], fmt: str = "csv", path=None) -> str:
    """Serialize records; returns the emitted text and writes it to ``path``.

    CSV floats carry 17 significant digits so parsing the file reproduces
    the records bit-for-bit.
    """
    if not records:
        raise InvalidParameterError("no records to emit")
    if fmt == "csv":
        lines = [CSV_HEADER]
        for rec in records:
            row = record_row(rec)
            lines.append(
                ",".join(
                    row[f] if isinstance(row[f], str) else _fmt(row[f]) for f in _FIELDS
                )
            )
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        text = json.dumps([record_row(r) for r in records], indent=2) + "\n"
    else:
        raise InvalidParameterError(f"format must be csv or json, got {fmt!r}")
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write results to {path}: {exc}") from exc
    return text


def read_records_csv(path) -> list[dict]:
    """Parse an emitted CSV back into row dicts (floats restored exactly)."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise InvalidParameterError(f"unexpected CSV header: {header!r}")
        rows = []
        for line in fh:
            parts = line.strip().split(",")
            row = {}
            for key, val in zip(_FIELDS, parts):
                row[key] = val if key in ("mode", "status") else float(val)
            rows.append(row)
    return rows
