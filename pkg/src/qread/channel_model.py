"""Memory-cell channels, detection efficiency, and electronic-noise modeling.

The cell and the detector are both pure-loss channels acting on counts, so
they commute and compose into a single thinning by eta_s * tau_u.  The
idler arm carries its own thinning by eta_i, which is what degrades the
signal-idler correlations (a mean rescale would not).  Electronic noise is
an additive convolution on the recorded counts.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import ndtr

from .dist_core import PhotonPmf, JointPmf, poisson_pmf
from .errors import InvalidParameterError, TruncationFailure
from .params import CellPair, DetectionModel, NoiseKind, SourceKind, SourceSpec

__all__ = [
    "CellPair",
    "DetectionModel",
    "NoiseKind",
    "SourceKind",
    "SourceSpec",
    "effective_transmissivity",
    "apply_noise",
    "apply_noise_joint",
]

# Noise kernels are cut far below the pmf tolerance so that convolution
# preserves the window mass to better than 1e-12.
_KERNEL_TOL_CAP = 1e-13


def effective_transmissivity(cell: CellPair, detect: DetectionModel, u: int) -> float:
    """Composite signal-arm transmissivity eta_s * tau_u seen by the counts."""
    return detect.eta_s * cell.tau(u)


def _gaussian_kernel(variance: float, target_tail: float) -> tuple[np.ndarray, int]:
    """Discretized zero-mean normal: w(j) = Phi((j+1/2)/s) - Phi((j-1/2)/s).

    Matches integer-rounded Gaussian samples exactly.  Returns (weights, lo).
    """
    sigma = math.sqrt(variance)
    half = 9
    while 2.0 * ndtr(-(half + 0.5) / sigma) > target_tail:
        half = int(half * 1.5) + 1
        if half > 10_000_000:
            raise TruncationFailure("gaussian noise kernel does not fit in memory budget")
    j = np.arange(-half, half + 1)
    w = ndtr((j + 0.5) / sigma) - ndtr((j - 0.5) / sigma)
    return w, -half


def _noise_kernel(detect: DetectionModel, trunc_tol: float) -> tuple[np.ndarray, int] | None:
    if detect.noise_kind is NoiseKind.NONE or detect.nu_e == 0.0:
        return None
    target = min(trunc_tol / 10.0, _KERNEL_TOL_CAP)
    if detect.noise_kind is NoiseKind.GAUSSIAN_ADDITIVE:
        return _gaussian_kernel(detect.nu_e, target)
    dark = poisson_pmf(detect.nu_e, target)
    return dark.probs, dark.support_lo


def apply_noise(pmf: PhotonPmf, detect: DetectionModel) -> PhotonPmf:
    """Convolve a count pmf with the detector's electronic-noise kernel.

    Gaussian read noise can push counts negative; the support extends
    accordingly and no clipping is applied (clipping would bias likelihoods).
    """
    kernel = _noise_kernel(detect, pmf.trunc_tol)
    if kernel is None:
        return pmf
    w, w_lo = kernel
    probs = np.convolve(pmf.probs, w)
    lo = pmf.support_lo + w_lo
    tail = 1.0 - math.fsum(probs)
    return PhotonPmf(lo, lo + len(probs) - 1, probs, max(tail, 0.0), pmf.trunc_tol)


def apply_noise_joint(joint: JointPmf, detect: DetectionModel) -> JointPmf:
    """Apply independent per-arm electronic noise to a joint count table."""
    kernel = _noise_kernel(detect, joint.trunc_tol)
    if kernel is None:
        return joint
    w, w_lo = kernel
    table = fftconvolve(joint.probs, w[:, None], axes=0)
    table = fftconvolve(table, w[None, :], axes=1)
    np.clip(table, 0.0, None, out=table)
    s_lo = joint.s_lo + w_lo
    i_lo = joint.i_lo + w_lo
    tail = 1.0 - float(np.sum(table))
    return JointPmf(
        s_lo,
        s_lo + table.shape[0] - 1,
        i_lo,
        i_lo + table.shape[1] - 1,
        table,
        max(tail, 0.0),
        joint.trunc_tol,
    )
