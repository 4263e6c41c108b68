"""Monte Carlo emulation of the counting experiment.

Frames are drawn from the physical sampling model (pair generation, two
independent thinnings, additive read noise rounded to integer counts),
decoded with a decision rule, and summarized into an empirical error rate
with a Wilson interval.  Streams are keyed by (seed, hypothesis bit)
through numpy's SeedSequence so batches are reproducible and independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    GainRecord,
    binary_entropy,
    classical_optimal_bound,
    classical_phc_bound,
    med_boundary,
)
from .decision import DecisionRule, Outcome, decide_batch
from .errors import InvalidParameterError
from .params import CellPair, DetectionModel, NoiseKind, SourceKind, SourceSpec

_WILSON_Z = 1.959963984540054  # 95% two-sided

# Entropy derivative blows up at p = 0 and vanishes at p = 1/2; inside these
# margins the delta method is replaced by a binomial bootstrap.
_BOOTSTRAP_LO = 0.01
_BOOTSTRAP_HI = 0.49
_BOOTSTRAP_RESAMPLES = 1000


@dataclass(frozen=True)
class FrameBatch:
    """Frames acquired under one known hypothesis bit."""

    true_bit: int
    seed: int
    ns: np.ndarray
    ni: np.ndarray

    def __post_init__(self):
        ns = np.asarray(self.ns, dtype=np.int64)
        ni = np.asarray(self.ni, dtype=np.int64)
        ns.setflags(write=False)
        ni.setflags(write=False)
        object.__setattr__(self, "ns", ns)
        object.__setattr__(self, "ni", ni)
        if len(ns) != len(ni) or len(ns) < 1:
            raise InvalidParameterError("batch needs matching ns/ni arrays with >= 1 frame")

    @property
    def count(self) -> int:
        return len(self.ns)

    @property
    def outcomes(self) -> list[Outcome]:
        return [Outcome(int(s), int(i)) for s, i in zip(self.ns, self.ni)]


@dataclass(frozen=True)
class ErrorEstimate:
    """Empirical error frequency with a 95% Wilson interval."""

    p_hat: float
    stderr: float
    n_frames: int
    ci_low: float
    ci_high: float
    err_rate_0: float = 0.0
    err_rate_1: float = 0.0
    frames_per_batch: int = 0

    def __post_init__(self):
        if not (0.0 <= self.ci_low <= self.p_hat <= self.ci_high <= 1.0):
            raise InvalidParameterError("interval must satisfy 0 <= lo <= p_hat <= hi <= 1")


def _rng_for(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(stream,)))


def _rounded_noise(rng: np.random.Generator, detect: DetectionModel, n: int) -> np.ndarray:
    if detect.noise_kind is NoiseKind.NONE or detect.nu_e == 0.0:
        return np.zeros(n, dtype=np.int64)
    if detect.noise_kind is NoiseKind.GAUSSIAN_ADDITIVE:
        return np.rint(rng.normal(0.0, math.sqrt(detect.nu_e), n)).astype(np.int64)
    return rng.poisson(detect.nu_e, n).astype(np.int64)


def sample_frames(
    source: SourceSpec,
    cell: CellPair,
    u: int,
    detect: DetectionModel,
    n_frames: int,
    seed: int,
) -> FrameBatch:
    """Draw counting frames under hypothesis ``u``; deterministic in seed."""
    if n_frames < 1:
        raise InvalidParameterError(f"n_frames must be >= 1, got {n_frames}")
    rng = _rng_for(seed, u)
    tau = cell.tau(u)
    if source.kind is SourceKind.CLASSICAL_POISSON:
        ns = rng.poisson(source.N * detect.eta_s * tau, n_frames).astype(np.int64)
        ns += _rounded_noise(rng, detect, n_frames)
        ni = np.zeros(n_frames, dtype=np.int64)
        return FrameBatch(u, seed, ns, ni)

    p = detect.eta_s * tau
    q = detect.eta_i
    N = source.N
    if source.poisson_limit:
        c = rng.poisson(N * p * q, n_frames)
        a = rng.poisson(N * p * (1.0 - q), n_frames)
        b = rng.poisson(N * q * (1.0 - p), n_frames)
        ns = (c + a).astype(np.int64)
        ni = (c + b).astype(np.int64)
    else:
        # pair number is negative binomial; both arms thin it independently
        m = rng.negative_binomial(source.M, source.M / (source.M + N), n_frames)
        ns = rng.binomial(m, p).astype(np.int64)
        ni = rng.binomial(m, q).astype(np.int64)
    ns += _rounded_noise(rng, detect, n_frames)
    ni += _rounded_noise(rng, detect, n_frames)
    return FrameBatch(u, seed, ns, ni)


def _wilson(err: float, n: int) -> tuple[float, float]:
    z2 = _WILSON_Z * _WILSON_Z
    denom = 1.0 + z2 / n
    center = (err + z2 / (2 * n)) / denom
    half = _WILSON_Z * math.sqrt(err * (1 - err) / n + z2 / (4 * n * n)) / denom
    # the interval must contain the sample proportion (1-ulp guard at err = 0, 1)
    return min(max(center - half, 0.0), err), max(min(center + half, 1.0), err)


def estimate_error(
    batch0: FrameBatch, batch1: FrameBatch, rule: DecisionRule
) -> ErrorEstimate:
    """Empirical mean error rate of ``rule`` on two known-bit frame sets."""
    if batch0.true_bit != 0 or batch1.true_bit != 1:
        raise InvalidParameterError("batches must carry true bits 0 and 1 respectively")
    err0 = float(np.mean(decide_batch(rule, batch0.ns, batch0.ni) != 0))
    err1 = float(np.mean(decide_batch(rule, batch1.ns, batch1.ni) != 1))
    n0, n1 = batch0.count, batch1.count
    p_hat = 0.5 * (err0 + err1)
    stderr = math.sqrt(0.25 * (err0 * (1 - err0) / n0 + err1 * (1 - err1) / n1))
    lo0, hi0 = _wilson(err0, n0)
    lo1, hi1 = _wilson(err1, n1)
    return ErrorEstimate(
        p_hat=p_hat,
        stderr=stderr,
        n_frames=n0 + n1,
        ci_low=0.5 * (lo0 + lo1),
        ci_high=0.5 * (hi0 + hi1),
        err_rate_0=err0,
        err_rate_1=err1,
        frames_per_batch=n0,
    )


def _gain_sigma_bootstrap(est: ErrorEstimate, p_ref: float) -> float:
    """Spread of the gain under binomial resampling of the error counts."""
    rng = np.random.default_rng(0)
    n = max(est.frames_per_batch, 1)
    e0 = rng.binomial(n, min(max(est.err_rate_0, 0.0), 1.0), _BOOTSTRAP_RESAMPLES) / n
    e1 = rng.binomial(n, min(max(est.err_rate_1, 0.0), 1.0), _BOOTSTRAP_RESAMPLES) / n
    p_star = np.clip(0.5 * (e0 + e1), 0.0, 0.5)
    h_ref = binary_entropy(p_ref)
    gains = np.array([h_ref - binary_entropy(float(p)) for p in p_star])
    return float(np.std(gains))


def gain_with_uncertainty(
    est: ErrorEstimate,
    cell: CellPair,
    source: SourceSpec,
    detect: DetectionModel,
) -> GainRecord:
    """Propagate an empirical error rate into an information-gain record.

    Uses the delta method |H'(p)| * stderr away from p in {0, 1/2} and a
    binomial bootstrap near those points, where the entropy derivative
    degenerates.
    """
    N = source.N
    p_c_opt = classical_optimal_bound(N, cell, detect)
    p_c_phc = classical_phc_bound(N, cell, detect)
    p_q = min(max(est.p_hat, 0.0), 0.5)

    if _BOOTSTRAP_LO < est.p_hat < _BOOTSTRAP_HI:
        dh = abs(math.log2((1.0 - p_q) / p_q))  # |dH/dp| in bits
        sigma = dh * est.stderr
    else:
        sigma = _gain_sigma_bootstrap(est, p_c_phc)

    return GainRecord(
        cell=cell,
        source=source,
        detect=detect,
        p_err_quantum=p_q,
        p_err_classical_opt=p_c_opt,
        p_err_classical_phc=p_c_phc,
        gain_vs_opt=binary_entropy(p_c_opt) - binary_entropy(p_q),
        gain_vs_phc=binary_entropy(p_c_phc) - binary_entropy(p_q),
        uncertainty=sigma,
        med_tau0=med_boundary(N) if N > 0 else float("nan"),
        mode="montecarlo",
    )


def dump_frames_csv(path, batches: list[FrameBatch]) -> None:
    """Write frames as ``frame_index,n_s,n_i,true_bit`` (interop format)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("frame_index,n_s,n_i,true_bit\n")
        idx = 0
        for batch in batches:
            for s, i in zip(batch.ns, batch.ni):
                fh.write(f"{idx},{s},{i},{batch.true_bit}\n")
                idx += 1
