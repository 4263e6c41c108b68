"""Photon-number distributions and thinning kernels.

All pmf values are evaluated in log space and exponentiated at the end, so
means up to ~5e5 photons never touch a linear-space factorial.  Truncation
windows are mean +/- k*sigma with k grown until a Chernoff tail bound falls
below the requested tolerance; the actually omitted mass is then recorded
as ``tail_mass`` so that window mass + tail_mass == 1 to machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import betainc, gammainc, gammaincc, gammaln, logsumexp

from .errors import InvalidParameterError, OverflowGuardError, TruncationFailure
from .params import DetectionModel, SourceKind, SourceSpec

DEFAULT_TRUNC_TOL = 1e-10

# Validation slack on "mass + tail == 1" and "tail <= tol".
_MASS_TOL = 1e-12
_TAIL_SLACK = 1e-13

# Above this many multiply-adds the Poisson-limit joint switches from the
# per-component summation to an FFT convolution (absolute error ~1e-15,
# plenty for sweep-scale error probabilities; precision-critical small
# tables stay on the summation path).
_FFT_FLOP_CUTOFF = 2.0e7
# Hard guard for the finite-M conditional joint.
_JOINT_FLOP_BUDGET = 4.0e9


# ---------------------------------------------------------------------------
# pmf containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhotonPmf:
    """Truncated pmf over the integer counts [support_lo, support_hi].

    ``tail_mass`` is the probability omitted by the truncation; it satisfies
    sum(probs) + tail_mass == 1 within 1e-12 and stays below ``trunc_tol``.
    Negative support values occur only for noise-convolved count pmfs.
    """

    support_lo: int
    support_hi: int
    probs: np.ndarray
    tail_mass: float
    trunc_tol: float = DEFAULT_TRUNC_TOL

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        if self.support_lo > self.support_hi:
            raise InvalidParameterError("support_lo must be <= support_hi")
        if probs.ndim != 1 or len(probs) != self.support_hi - self.support_lo + 1:
            raise InvalidParameterError("probs length must match the support window")
        if np.any(probs < 0):
            raise InvalidParameterError("pmf values must be nonnegative")
        total = float(np.sum(probs)) + self.tail_mass
        if abs(total - 1.0) > _MASS_TOL:
            raise InvalidParameterError(f"mass + tail_mass = {total!r}, expected 1")
        if self.tail_mass < 0 or self.tail_mass > self.trunc_tol * (1 + 1e-6) + _TAIL_SLACK:
            raise InvalidParameterError(
                f"tail_mass {self.tail_mass!r} exceeds the tolerance {self.trunc_tol!r}"
            )

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.support_lo, self.support_hi + 1)

    def prob_at(self, n: int) -> float:
        if self.support_lo <= n <= self.support_hi:
            return float(self.probs[n - self.support_lo])
        return 0.0

    def mean(self) -> float:
        return float(np.dot(self.support, self.probs))

    def variance(self) -> float:
        m = self.mean()
        return float(np.dot((self.support - m) ** 2, self.probs))


@dataclass(frozen=True)
class JointPmf:
    """Truncated joint pmf over (n_S, n_I), indexed probs[s - s_lo, i - i_lo]."""

    s_lo: int
    s_hi: int
    i_lo: int
    i_hi: int
    probs: np.ndarray
    tail_mass: float
    trunc_tol: float = DEFAULT_TRUNC_TOL

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        if self.s_lo > self.s_hi or self.i_lo > self.i_hi:
            raise InvalidParameterError("window bounds out of order")
        expected = (self.s_hi - self.s_lo + 1, self.i_hi - self.i_lo + 1)
        if probs.shape != expected:
            raise InvalidParameterError(f"probs shape {probs.shape} != window {expected}")
        if np.any(probs < 0):
            raise InvalidParameterError("pmf values must be nonnegative")
        total = float(np.sum(probs)) + self.tail_mass
        if abs(total - 1.0) > _MASS_TOL:
            raise InvalidParameterError(f"mass + tail_mass = {total!r}, expected 1")
        if self.tail_mass < 0 or self.tail_mass > self.trunc_tol * (1 + 1e-6) + _TAIL_SLACK:
            raise InvalidParameterError(
                f"tail_mass {self.tail_mass!r} exceeds the tolerance {self.trunc_tol!r}"
            )

    @property
    def s_window(self) -> tuple[int, int]:
        return (self.s_lo, self.s_hi)

    @property
    def i_window(self) -> tuple[int, int]:
        return (self.i_lo, self.i_hi)

    def prob_at(self, n_s: int, n_i: int) -> float:
        if self.s_lo <= n_s <= self.s_hi and self.i_lo <= n_i <= self.i_hi:
            return float(self.probs[n_s - self.s_lo, n_i - self.i_lo])
        return 0.0

    def signal_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def idler_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=0)


# ---------------------------------------------------------------------------
# log pmfs and Chernoff tail bounds
# ---------------------------------------------------------------------------


def _poisson_log_pmf(n: np.ndarray, lam: float) -> np.ndarray:
    n = np.asarray(n, dtype=np.float64)
    if lam == 0.0:
        return np.where(n == 0, 0.0, -np.inf)
    return n * math.log(lam) - lam - gammaln(n + 1.0)


def _poisson_chernoff(x: float, lam: float) -> float:
    """Upper bound on P(X >= x) for x > lam, on P(X <= x) for x < lam."""
    if x <= 0.0:
        return math.exp(-lam)
    # exp(x - lam - x log(x/lam)), tight enough for window sizing
    return math.exp(min(0.0, x - lam - x * math.log(x / lam)))


def _negbin_chernoff(x: float, r: float, q: float) -> float:
    """Chernoff tail bound for the negative binomial NB(r, q).

    pmf(n) = C(n+r-1, n) (1-q)^r q^n; valid on both tails like the Poisson
    form (exponential tilting, optimum at q e^t = x / (x + r)).
    """
    if x <= 0.0:
        return math.exp(r * math.log1p(-q))
    log_b = r * math.log((1 - q) * (x + r) / r) + x * math.log(q * (x + r) / x)
    return math.exp(min(0.0, log_b))


def _grow_window(mean, sigma, tail_bound, exact_tail, log_pmf, trunc_tol):
    """Pick [lo, hi] = mean +/- k*sigma with k grown until the Chernoff bound
    drops below trunc_tol, then normalize the window against the exact tail.

    Point values carry relative errors up to ~1e-9 at means ~5e5 (three
    ~1e6-sized log terms cancelling), so the raw window sum can miss 1 by
    far more than the true tail.  Rescaling to 1 - exact_tail(lo, hi) keeps
    "mass + tail_mass == 1" at machine precision for any mean.

    Returns (lo, hi, probs, tail_mass).
    """
    sigma = max(sigma, 1.0)
    for k in range(6, 600, 4):
        lo = max(0, math.floor(mean - k * sigma))
        hi = math.ceil(mean + k * sigma)
        bound = tail_bound(hi + 1)
        if lo > 0:
            bound += tail_bound(lo - 1)
        if bound > trunc_tol:
            continue
        tail = exact_tail(lo, hi)
        if not (0.0 <= tail <= trunc_tol * (1 + 1e-6)):
            continue
        raw = np.exp(log_pmf(np.arange(lo, hi + 1)))
        probs = raw * ((1.0 - tail) / math.fsum(raw))
        return lo, hi, probs, max(1.0 - math.fsum(probs), 0.0)
    raise TruncationFailure(
        f"cannot reach tail tolerance {trunc_tol} for mean={mean}, sigma={sigma}"
    )


def _validate_tol(trunc_tol: float):
    if not (0.0 < trunc_tol < 1.0):
        raise InvalidParameterError(f"trunc_tol must lie in (0, 1), got {trunc_tol}")


def _degenerate_pmf(trunc_tol: float) -> PhotonPmf:
    return PhotonPmf(0, 0, np.array([1.0]), 0.0, trunc_tol)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def poisson_pmf(mean: float, trunc_tol: float = DEFAULT_TRUNC_TOL) -> PhotonPmf:
    """Poisson count pmf, truncated to a mean +/- k*sigma window."""
    _validate_tol(trunc_tol)
    if mean < 0 or not math.isfinite(mean):
        raise InvalidParameterError(f"mean must be finite and >= 0, got {mean}")
    if mean == 0.0:
        return _degenerate_pmf(trunc_tol)

    def exact_tail(lo: int, hi: int) -> float:
        below = float(gammaincc(lo, mean)) if lo >= 1 else 0.0
        return below + float(gammainc(hi + 1.0, mean))

    lo, hi, probs, tail = _grow_window(
        mean,
        math.sqrt(mean),
        lambda x: _poisson_chernoff(x, mean),
        exact_tail,
        lambda n: _poisson_log_pmf(n, mean),
        trunc_tol,
    )
    return PhotonPmf(lo, hi, probs, tail, trunc_tol)


def thermal_pmf(nbar: float, trunc_tol: float = DEFAULT_TRUNC_TOL) -> PhotonPmf:
    """Single-mode thermal (geometric) pmf: P(n) = nbar^n / (nbar+1)^(n+1)."""
    _validate_tol(trunc_tol)
    if nbar < 0 or not math.isfinite(nbar):
        raise InvalidParameterError(f"nbar must be finite and >= 0, got {nbar}")
    if nbar == 0.0:
        return _degenerate_pmf(trunc_tol)
    return multithermal_pmf(nbar, 1, trunc_tol)


def multithermal_pmf(N: float, M: float, trunc_tol: float = DEFAULT_TRUNC_TOL) -> PhotonPmf:
    """Sum of M iid thermal modes with N mean photons in total.

    Negative binomial with M failures-parameter and per-mode mean N/M;
    equals thermal_pmf(N) at M = 1 and tends to poisson_pmf(N) as M grows.
    """
    _validate_tol(trunc_tol)
    if N < 0 or not math.isfinite(N):
        raise InvalidParameterError(f"N must be finite and >= 0, got {N}")
    if not math.isfinite(M) or M < 1:
        raise InvalidParameterError(f"M must be a finite number >= 1, got {M}")
    if N == 0.0:
        return _degenerate_pmf(trunc_tol)
    if N + M > 1e300:
        raise OverflowGuardError(f"N + M = {N + M} out of range for log-gamma forms")

    q = N / (N + M)
    log_q = math.log(N) - math.log(N + M)
    # M*log(1-q) written as -M*log1p(N/M): stable for huge M.
    m_log_1mq = -M * math.log1p(N / M)
    variance = N * (1.0 + N / M)

    def log_pmf(n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        n_max = int(n.max())
        # log C(n+M-1, n) via a cumulative sum of log(M+j); avoids the
        # catastrophic gammaln(M+n) - gammaln(M) cancellation at M ~ 1e13.
        j = np.arange(n_max, dtype=np.float64)
        coef = np.concatenate(([0.0], np.cumsum(np.log(M + j))))
        return coef[n] - gammaln(n + 1.0) + n * log_q + m_log_1mq

    def exact_tail(lo: int, hi: int) -> float:
        # NB(M, q) cdf: P(X <= k) = I_{1-q}(M, k+1)
        below = float(betainc(M, lo, 1.0 - q)) if lo >= 1 else 0.0
        return below + float(betainc(hi + 1.0, M, q))

    lo, hi, probs, tail = _grow_window(
        N,
        math.sqrt(variance),
        lambda x: _negbin_chernoff(x, M, q),
        exact_tail,
        log_pmf,
        trunc_tol,
    )
    return PhotonPmf(lo, hi, probs, tail, trunc_tol)


# ---------------------------------------------------------------------------
# binomial thinning
# ---------------------------------------------------------------------------


def binomial_thin(pmf: PhotonPmf, tau: float) -> PhotonPmf:
    """Pure-loss channel on a count pmf: each count survives with probability tau.

    q(n) = sum_m p(m) C(m, n) tau^n (1-tau)^(m-n), evaluated exactly over the
    retained window with log-sum-exp accumulation.
    """
    if not (0.0 <= tau <= 1.0):
        raise InvalidParameterError(f"tau must lie in [0, 1], got {tau}")
    if pmf.support_lo < 0:
        raise InvalidParameterError("cannot thin a pmf with negative support")
    if tau == 1.0:
        return pmf
    if tau == 0.0:
        return _degenerate_pmf(pmf.trunc_tol)

    mean_in = pmf.mean()
    var_in = pmf.variance()
    mean_out = tau * mean_in
    var_out = tau * tau * var_in + tau * (1.0 - tau) * mean_in
    sigma_out = max(math.sqrt(max(var_out, 0.0)), 1.0)

    in_lo, in_hi = pmf.support_lo, pmf.support_hi
    with np.errstate(divide="ignore"):
        log_p_in = np.log(pmf.probs)
    gl = gammaln(np.arange(in_hi + 2, dtype=np.float64))
    log_tau = math.log(tau)
    log_1mtau = math.log1p(-tau)
    mi = np.arange(in_lo, in_hi + 1)
    mf = mi.astype(np.float64)

    def window_leak(lo: int, hi: int) -> float:
        """Thinned mass of the windowed input landing outside [lo, hi]."""
        below = _binom_cdf_vec(lo - 1, mi, tau)
        above = _binom_sf_vec(hi, mi, tau)
        return float(np.dot(pmf.probs, below + above))

    # The input's own truncated mass lands somewhere in [0, in_hi], so the
    # reachable floor for the output tail is pmf.tail_mass.
    tol_eff = max(pmf.trunc_tol, pmf.tail_mass + 1e-13)
    for k in range(6, 600, 4):
        lo = max(0, math.floor(mean_out - k * sigma_out))
        hi = min(in_hi, math.ceil(mean_out + k * sigma_out))
        leak = window_leak(lo, hi)
        if pmf.tail_mass + leak <= tol_eff or (lo == 0 and hi == in_hi):
            break
    else:
        raise TruncationFailure("thinned pmf cannot meet the tail tolerance")

    def thinned_block(n_vals: np.ndarray) -> np.ndarray:
        n_col = n_vals[:, None].astype(np.float64)
        valid = mf[None, :] >= n_col
        # log C(m, n) = gl[m+1] - gl[n+1] - gl[m-n+1]
        with np.errstate(invalid="ignore"):
            terms = (
                log_p_in[None, :]
                + gl[mi[None, :] + 1]
                - gl[n_vals[:, None] + 1]
                - gl[np.maximum(mi[None, :] - n_vals[:, None], 0) + 1]
                + n_col * log_tau
                + (mf[None, :] - n_col) * log_1mtau
            )
        terms = np.where(valid, terms, -np.inf)
        return np.exp(logsumexp(terms, axis=1))

    raw = _chunked_eval(thinned_block, lo, hi)
    target = (1.0 - pmf.tail_mass) - leak
    probs = raw * (target / math.fsum(raw))
    tail = max(1.0 - math.fsum(probs), 0.0)
    return PhotonPmf(lo, hi, probs, tail, pmf.trunc_tol)


def _binom_cdf_vec(k: int, m: np.ndarray, p: float) -> np.ndarray:
    """P(Bin(m, p) <= k) for an array of trial counts m."""
    out = np.zeros(m.shape, dtype=np.float64)
    if k < 0:
        return out
    out[m <= k] = 1.0
    sel = m > k
    if np.any(sel):
        out[sel] = betainc(m[sel] - k, k + 1.0, 1.0 - p)
    return out


def _binom_sf_vec(k: int, m: np.ndarray, p: float) -> np.ndarray:
    """P(Bin(m, p) >= k + 1) for an array of trial counts m."""
    out = np.zeros(m.shape, dtype=np.float64)
    if k < 0:
        return np.ones(m.shape, dtype=np.float64)
    sel = m > k
    if np.any(sel):
        out[sel] = betainc(k + 1.0, m[sel] - k, p)
    return out


def _chunked_eval(block_fn, lo: int, hi: int, chunk: int = 2048) -> np.ndarray:
    out = np.empty(hi - lo + 1)
    for start in range(lo, hi + 1, chunk):
        stop = min(start + chunk, hi + 1)
        out[start - lo : stop - lo] = block_fn(np.arange(start, stop))
    return out


# ---------------------------------------------------------------------------
# joint signal/idler pmfs
# ---------------------------------------------------------------------------


def _binom_log_row(m: int, p: float, lo: int, hi: int, gl: np.ndarray) -> np.ndarray:
    """log B(k | m, p) for k in [lo, hi]; -inf outside [0, m]."""
    k = np.arange(lo, hi + 1, dtype=np.int64)
    out = np.full(k.shape, -np.inf)
    if p == 0.0:
        if lo <= 0 <= hi:
            out[-lo] = 0.0
        return out
    if p == 1.0:
        if lo <= m <= hi:
            out[m - lo] = 0.0
        return out
    sel = (k >= 0) & (k <= m)
    ks = k[sel].astype(np.float64)
    out[sel] = (
        gl[m + 1]
        - gl[k[sel] + 1]
        - gl[m - k[sel] + 1]
        + ks * math.log(p)
        + (m - ks) * math.log1p(-p)
    )
    return out


def joint_from_pair_marginal(
    marginal: PhotonPmf, p: float, q: float, trunc_tol: float = DEFAULT_TRUNC_TOL
) -> tuple[np.ndarray, int, int, int, int]:
    """Joint table of two independent binomial thinnings of a common count.

    The generated-pair number m follows ``marginal``; conditionally on m,
    n_S ~ B(m, p) and n_I ~ B(m, q) independently.  Returns
    (table, s_lo, s_hi, i_lo, i_hi); callers wrap it into a JointPmf.
    """
    mean_m = marginal.mean()
    var_m = marginal.variance()
    m_all = np.arange(marginal.support_lo, marginal.support_hi + 1)

    def thinned_window(prob):
        """Grow the thinned-axis window until the exact leaked mass is small."""
        if prob == 0.0:
            return 0, 0
        if prob == 1.0:
            return marginal.support_lo, marginal.support_hi
        mu = prob * mean_m
        var = prob * prob * var_m + prob * (1 - prob) * mean_m
        sig = max(math.sqrt(max(var, 0.0)), 1.0)
        for k in range(6, 600, 4):
            lo = max(0, math.floor(mu - k * sig))
            hi = min(marginal.support_hi, math.ceil(mu + k * sig))
            leak = float(
                np.dot(
                    marginal.probs,
                    _binom_cdf_vec(lo - 1, m_all, prob) + _binom_sf_vec(hi, m_all, prob),
                )
            )
            if leak <= trunc_tol / 3.0 or (lo == 0 and hi == marginal.support_hi):
                return lo, hi
        raise TruncationFailure("thinned window cannot meet the tail tolerance")

    s_lo, s_hi = thinned_window(p)
    i_lo, i_hi = thinned_window(q)
    w_m = marginal.support_hi - marginal.support_lo + 1
    flops = w_m * (s_hi - s_lo + 1) * (i_hi - i_lo + 1)
    if flops > _JOINT_FLOP_BUDGET:
        raise TruncationFailure(
            f"conditional joint needs ~{flops:.2e} multiply-adds "
            f"(~{flops * 8 / (1 << 30):.1f} GiB-equivalents); use the Poisson-limit route"
        )

    gl = gammaln(np.arange(marginal.support_hi + 2, dtype=np.float64))
    table = np.zeros((s_hi - s_lo + 1, i_hi - i_lo + 1))
    for m in range(marginal.support_lo, marginal.support_hi + 1):
        pm = marginal.prob_at(m)
        if pm == 0.0:
            continue
        row_s = np.exp(_binom_log_row(m, p, s_lo, s_hi, gl))
        row_i = np.exp(_binom_log_row(m, q, i_lo, i_hi, gl))
        if q == 1.0:
            if i_lo <= m <= i_hi:
                table[:, m - i_lo] += pm * row_s
        elif p == 1.0:
            if s_lo <= m <= s_hi:
                table[m - s_lo, :] += pm * row_i
        else:
            table += pm * np.outer(row_s, row_i)
    return table, s_lo, s_hi, i_lo, i_hi


def _poisson_limit_joint(
    N: float, p: float, q: float, trunc_tol: float
) -> tuple[np.ndarray, int, int, int, int]:
    """Poisson-limit joint via the correlated-Poisson decomposition.

    n_S = c + a, n_I = c + b with independent c ~ P(Npq), a ~ P(Np(1-q)),
    b ~ P(Nq(1-p)): the three-way split of a Poisson pair source counted by
    two detectors.  Verified against the conditional-binomial sum in tests.
    """
    c = poisson_pmf(N * p * q, trunc_tol / 3)
    a = poisson_pmf(N * p * (1.0 - q), trunc_tol / 3)
    b = poisson_pmf(N * q * (1.0 - p), trunc_tol / 3)

    s_lo, s_hi = c.support_lo + a.support_lo, c.support_hi + a.support_hi
    i_lo, i_hi = c.support_lo + b.support_lo, c.support_hi + b.support_hi
    w_c = len(c.probs)
    w_a, w_b = len(a.probs), len(b.probs)

    if w_c * w_a * w_b <= _FFT_FLOP_CUTOFF or w_a == 1 or w_b == 1:
        table = np.zeros((s_hi - s_lo + 1, i_hi - i_lo + 1))
        buf = np.empty((w_a, w_b))
        outer = np.multiply.outer(a.probs, b.probs)
        for ci in range(w_c):
            np.multiply(outer, c.probs[ci], out=buf)
            table[ci : ci + w_a, ci : ci + w_b] += buf
    else:
        # U[c, i] = P_c(c) P_b(i - c); then T[s, i] = sum_c P_a(s - c) U[c, i]
        # is a single convolution along the c axis.
        U = np.zeros((w_c, i_hi - i_lo + 1))
        for ci in range(w_c):
            U[ci, ci : ci + w_b] = c.probs[ci] * b.probs
        table = fftconvolve(U, a.probs[:, None], axes=0)
        np.clip(table, 0.0, None, out=table)
    return table, s_lo, s_hi, i_lo, i_hi


def tmsv_joint_pmf(
    source: SourceSpec,
    tau: float,
    detect: DetectionModel | None = None,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
) -> JointPmf:
    """Joint (n_S, n_I) counting distribution of a TMSV transmitter.

    The generated-pair number follows the source marginal (multi-thermal for
    finite M, Poisson in the M -> inf limit); the cell plus signal-arm
    efficiency thin the signal by eta_s * tau, the idler arm by eta_i.  In
    ideal detection this reduces to marginal(n_I) * B(n_S | n_I, tau).
    Electronic noise is applied separately (see channel_model.apply_noise_joint).
    """
    _validate_tol(trunc_tol)
    if detect is None:
        detect = DetectionModel(1.0, 1.0, 0.0)
    if source.kind is not SourceKind.TMSV:
        raise InvalidParameterError("tmsv_joint_pmf requires a TMSV source")
    if not (0.0 <= tau <= 1.0):
        raise InvalidParameterError(f"tau must lie in [0, 1], got {tau}")

    p = detect.eta_s * tau
    q = detect.eta_i
    if source.N == 0.0:
        return JointPmf(0, 0, 0, 0, np.array([[1.0]]), 0.0, trunc_tol)

    if source.poisson_limit:
        table, s_lo, s_hi, i_lo, i_hi = _poisson_limit_joint(source.N, p, q, trunc_tol)
    else:
        marginal = multithermal_pmf(source.N, source.M, trunc_tol / 3)
        table, s_lo, s_hi, i_lo, i_hi = joint_from_pair_marginal(marginal, p, q, trunc_tol)

    tail = 1.0 - float(np.sum(table))
    if tail > trunc_tol + _TAIL_SLACK:
        raise TruncationFailure(
            f"joint table tail mass {tail:.3e} exceeds tolerance {trunc_tol:.3e}"
        )
    return JointPmf(s_lo, s_hi, i_lo, i_hi, table, max(tail, 0.0), trunc_tol)


def signal_joint(pmf: PhotonPmf) -> JointPmf:
    """Embed a signal-only pmf as a joint with the idler pinned at 0.

    Classical single-mode transmitters carry no idler; this keeps the
    decision and error-probability machinery uniform across sources.
    """
    return JointPmf(
        pmf.support_lo,
        pmf.support_hi,
        0,
        0,
        pmf.probs[:, None],
        pmf.tail_mass,
        pmf.trunc_tol,
    )
