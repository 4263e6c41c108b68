"""Classical benchmarks, binary entropy, information gain, and the
mean-energy-discrimination boundary.

The two classical references are the optimal bound over all classical
transmitters (coherent-state mixtures) and the photon-counting bound for a
single Poisson mode with a floor-threshold decision.  Both are evaluated
with effective transmissivities eta_s * tau_u, and both are written in
forms that stay finite for exponents down to ~-1e6 and thresholds ~1e5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.special import gammainc, gammaincc, xlog1py, xlogy

from .errors import InvalidParameterError
from .params import CellPair, DetectionModel, SourceSpec

_LN2 = math.log(2.0)
_PROB_SLACK = 1e-9


@dataclass(frozen=True)
class GainRecord:
    """One evaluated configuration: error probabilities, benchmarks, gains.

    ``uncertainty`` is one standard deviation on the gains (zero for
    analytic entries).  ``mode`` records the evaluation path actually taken
    and ``status`` is "ok" or an error token for failed sweep points.
    """

    cell: CellPair
    source: SourceSpec
    detect: DetectionModel
    p_err_quantum: float
    p_err_classical_opt: float
    p_err_classical_phc: float
    gain_vs_opt: float
    gain_vs_phc: float
    uncertainty: float = 0.0
    med_tau0: float = float("nan")
    mode: str = "exact"
    status: str = "ok"

    def __post_init__(self):
        if self.status != "ok":
            return
        for name, p in (
            ("p_err_quantum", self.p_err_quantum),
            ("p_err_classical_opt", self.p_err_classical_opt),
            ("p_err_classical_phc", self.p_err_classical_phc),
        ):
            if not (-_PROB_SLACK <= p <= 0.5 + _PROB_SLACK):
                raise InvalidParameterError(
                    f"{name} = {p!r} outside [0, 1/2] (likelihood decisions cannot do worse)"
                )
        for name, g in (("gain_vs_opt", self.gain_vs_opt), ("gain_vs_phc", self.gain_vs_phc)):
            if not (-1.0 - _PROB_SLACK <= g <= 1.0 + _PROB_SLACK):
                raise InvalidParameterError(f"{name} = {g!r} outside [-1, 1]")


def binary_entropy(p: float) -> float:
    """Binary Shannon entropy in bits, with H(0) = H(1) = 0."""
    if not (0.0 <= p <= 1.0):
        raise InvalidParameterError(f"p must lie in [0, 1], got {p}")
    # xlog1py keeps the (1-p) term accurate for p near 0.
    return float(-(xlogy(p, p) + xlog1py(1.0 - p, -p)) / _LN2)


def _log1mexp(x: float) -> float:
    """log(1 - exp(x)) for x <= 0, stable at both ends."""
    if x >= 0.0:
        return -math.inf if x == 0.0 else math.nan
    if x < -_LN2:
        return math.log1p(-math.exp(x))
    return math.log(-math.expm1(x))


def _effective_pair(cell: CellPair, detect: DetectionModel) -> tuple[float, float]:
    return detect.eta_s * cell.tau0, detect.eta_s * cell.tau1


def classical_optimal_bound(N: float, cell: CellPair, detect: DetectionModel) -> float:
    """Minimum error probability over all classical transmitters.

    [1 - sqrt(1 - exp(-N (sqrt(t1) - sqrt(t0))^2))] / 2 at the effective
    transmissivities; evaluated through expm1/log1p so that values as small
    as exp(-1e6)/4 underflow gracefully to 0 instead of losing digits.
    """
    if N < 0 or not math.isfinite(N):
        raise InvalidParameterError(f"N must be finite and >= 0, got {N}")
    e0, e1 = _effective_pair(cell, detect)
    x = -N * (math.sqrt(e1) - math.sqrt(e0)) ** 2
    if x == 0.0:
        return 0.5
    return -0.5 * math.expm1(0.5 * _log1mexp(x))


def classical_phc_threshold(N: float, cell: CellPair, detect: DetectionModel) -> float:
    """Real-valued count threshold N(t1 - t0)/log(t1/t0) at effective taus.

    Counts at or below the floor of this value select hypothesis 0.  The
    t0 -> t1 limit is N*t1 (the formula is written through log1p so the
    limit is reached smoothly); t0 = 0 degenerates to 0.
    """
    if N < 0 or not math.isfinite(N):
        raise InvalidParameterError(f"N must be finite and >= 0, got {N}")
    e0, e1 = _effective_pair(cell, detect)
    if e0 == e1:
        raise InvalidParameterError("threshold undefined for tau0 == tau1")
    if e0 == 0.0:
        return 0.0
    delta = (e1 - e0) / e0
    return N * e0 * delta / math.log1p(delta)


def classical_phc_bound(N: float, cell: CellPair, detect: DetectionModel) -> float:
    """Error probability of the optimal classical photon-counting strategy.

    Closed form via regularized incomplete gammas:
    1/2 [P(K+1, N t0) + Q(K+1, N t1)] with K = floor(threshold), which is
    the cancellation-free rewrite of 1/2 [1 - (gamma(t0) - gamma(t1))/K!].
    """
    if N < 0 or not math.isfinite(N):
        raise InvalidParameterError(f"N must be finite and >= 0, got {N}")
    e0, e1 = _effective_pair(cell, detect)
    if N == 0.0 or e0 == e1:
        # indistinguishable channels (or no probes): coin flip
        return 0.5
    if e0 == 0.0:
        # only n = 0 selects hypothesis 0
        return 0.5 * math.exp(-N * e1)
    nth = classical_phc_threshold(N, cell, detect)
    a = math.floor(nth) + 1.0
    return 0.5 * (float(gammainc(a, N * e0)) + float(gammaincc(a, N * e1)))


def med_boundary(N: float) -> float:
    """Transmissivity above which mean-energy discrimination fails: 1 - 1/N."""
    if N <= 0 or not math.isfinite(N):
        raise InvalidParameterError(f"N must be finite and > 0, got {N}")
    return min(max(1.0 - 1.0 / N, 0.0), 1.0)


def gain(p_err_q: float, p_err_c: float) -> float:
    """Per-cell information gain H(p_err_c) - H(p_err_q) in bits."""
    vals = []
    for name, p in (("p_err_q", p_err_q), ("p_err_c", p_err_c)):
        if not (-_PROB_SLACK <= p <= 0.5 + _PROB_SLACK):
            raise InvalidParameterError(f"{name} must lie in [0, 1/2], got {p}")
        vals.append(min(max(p, 0.0), 0.5))
    return binary_entropy(vals[1]) - binary_entropy(vals[0])
