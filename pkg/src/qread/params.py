"""Parameter records for the memory cell, the transmitter and the detector.

These are plain frozen dataclasses consumed throughout the library; the
channel-model operations that act on them live in ``channel_model``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidParameterError


class SourceKind(Enum):
    CLASSICAL_POISSON = "classical_poisson"
    TMSV = "tmsv"


class NoiseKind(Enum):
    NONE = "none"
    GAUSSIAN_ADDITIVE = "gaussian_additive"
    POISSON_DARK = "poisson_dark"


@dataclass(frozen=True)
class CellPair:
    """Binary memory cell: bit u in {0, 1} selects transmissivity tau_u.

    The two channels are equiprobable (prior0 = 1/2).  The library operates
    under the ordering tau0 <= tau1; the degenerate tau0 == tau1 cell is
    admitted so that the identical-channel limits (p_err = 1/2) stay
    expressible.
    """

    tau0: float
    tau1: float = 1.0
    prior0: float = 0.5

    def __post_init__(self):
        if not (0.0 <= self.tau0 <= 1.0) or not math.isfinite(self.tau0):
            raise InvalidParameterError(f"tau0 must lie in [0, 1], got {self.tau0}")
        if not (0.0 <= self.tau1 <= 1.0) or not math.isfinite(self.tau1):
            raise InvalidParameterError(f"tau1 must lie in [0, 1], got {self.tau1}")
        if self.tau0 > self.tau1:
            raise InvalidParameterError(
                f"require tau0 <= tau1, got tau0={self.tau0} > tau1={self.tau1}"
            )
        if self.prior0 != 0.5:
            raise InvalidParameterError("the cell priors are fixed at 1/2")

    def tau(self, u: int) -> float:
        """Transmissivity selected by bit ``u``."""
        if u not in (0, 1):
            raise InvalidParameterError(f"bit must be 0 or 1, got {u}")
        return self.tau0 if u == 0 else self.tau1


@dataclass(frozen=True)
class DetectionModel:
    """Detection efficiencies per arm plus the electronic-noise model.

    ``nu_e`` is interpreted as a per-frame, per-arm variance in counts^2 for
    the additive-Gaussian model, or as a mean dark count for the Poisson
    model.  The distribution behind the published magnitude is not pinned
    down, so the kind is configuration.
    """

    eta_s: float = 1.0
    eta_i: float = 1.0
    nu_e: float = 0.0
    noise_kind: NoiseKind = NoiseKind.GAUSSIAN_ADDITIVE

    def __post_init__(self):
        for name, eta in (("eta_s", self.eta_s), ("eta_i", self.eta_i)):
            if not (0.0 <= eta <= 1.0) or not math.isfinite(eta):
                raise InvalidParameterError(f"{name} must lie in [0, 1], got {eta}")
        if self.nu_e < 0 or not math.isfinite(self.nu_e):
            raise InvalidParameterError(f"nu_e must be finite and >= 0, got {self.nu_e}")
        if not isinstance(self.noise_kind, NoiseKind):
            raise InvalidParameterError(f"unknown noise kind {self.noise_kind!r}")

    @property
    def ideal(self) -> bool:
        """True when both arms are lossless and noise-free."""
        return self.eta_s == 1.0 and self.eta_i == 1.0 and self.nu_e == 0.0


IDEAL_DETECTION = DetectionModel(1.0, 1.0, 0.0, NoiseKind.NONE)


@dataclass(frozen=True)
class SourceSpec:
    """Transmitter description.

    classical_poisson: single signal mode with Poisson statistics, no idler.
    tmsv: M signal/idler pairs carrying N mean photons in total; M = inf
    selects the Poisson-limit marginal (per-mode occupation -> 0).
    """

    kind: SourceKind
    N: float
    M: float = math.inf

    def __post_init__(self):
        if not isinstance(self.kind, SourceKind):
            raise InvalidParameterError(f"unknown source kind {self.kind!r}")
        if self.N < 0 or not math.isfinite(self.N):
            raise InvalidParameterError(f"N must be finite and >= 0, got {self.N}")
        if self.kind is SourceKind.TMSV:
            if math.isinf(self.M):
                return
            if self.M < 1 or self.M != int(self.M):
                raise InvalidParameterError(
                    f"M must be an integer >= 1 or inf, got {self.M}"
                )

    @classmethod
    def classical(cls, N: float) -> "SourceSpec":
        return cls(SourceKind.CLASSICAL_POISSON, N)

    @classmethod
    def tmsv(cls, N: float, M: float = math.inf) -> "SourceSpec":
        return cls(SourceKind.TMSV, N, M)

    @property
    def poisson_limit(self) -> bool:
        return self.kind is SourceKind.TMSV and math.isinf(self.M)
