import logging
import math
from typing import Iterable, Tuple

import numpy as np

from .enums import Classification
from .exceptions import ConfigError, NonSymmetricError, ObservationError
from .model import SymMatrix4, hessian_A, hessian_total
from .quaternion import as_quaternion
from .resources import (
    BoundCheck,
    ConvexityReport,
    ObservationPair,
    ObservationSet,
    Spectrum,
)
from .utils import max_abs

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12
CONVERGENCE_TOLERANCE = 1e-13
MAX_SWEEPS = 60
SCALE_TOLERANCE = 1e-9
BOUND_TOLERANCE = 1e-9


def eig_sym4(matrix: SymMatrix4) -> Spectrum:
    """
    Cyclic Jacobi eigen decomposition of a symmetric 4x4 matrix.

    Sweeps rotate every (p, q) plane in row order until the off-diagonal
    Frobenius norm drops below 1e-13 ‖M‖_F, capped at 60 sweeps.

    :param matrix: Symmetric 4x4 array
    :raises: NonSymmetricError if |M - Mᵀ| > 1e-12 max(1, |M|)
    :returns: Spectrum with eigenvalues descending
    """
    a = np.array(matrix, dtype=float)
    if a.shape != (4, 4):
        raise ObservationError("eig_sym4 requires a 4x4 matrix, got %s" % (a.shape,))
    if not np.all(np.isfinite(a)):
        raise ObservationError("eig_sym4 requires finite entries")
    asymmetry = max_abs(a - a.T)
    if asymmetry > SYMMETRY_TOLERANCE * max(1.0, max_abs(a)):
        raise NonSymmetricError(asymmetry)
    a = 0.5 * (a + a.T)
    v = np.eye(4)
    threshold = CONVERGENCE_TOLERANCE * np.linalg.norm(a)

    sweeps = 0
    while _off_diagonal(a) > threshold:
        if sweeps == MAX_SWEEPS:
            logger.warning(
                "[Jacobi]: no convergence after %s sweeps, off diagonal %s",
                sweeps,
                _off_diagonal(a),
            )
            break
        sweeps += 1
        for p in range(3):
            for q in range(p + 1, 4):
                if a[p, q] == 0.0:
                    continue
                rotation = _rotation(a, p, q)
                a = rotation.T @ a @ rotation
                a[p, q] = a[q, p] = 0.0
                v = v @ rotation

    order = np.argsort(-np.diag(a), kind="stable")
    return Spectrum(
        eigenvalues=np.diag(a)[order], eigenvectors=v[:, order], sweeps=sweeps
    )


def _off_diagonal(a: np.ndarray) -> float:
    return float(np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2)))


def _rotation(a: np.ndarray, p: int, q: int) -> np.ndarray:
    """Givens rotation zeroing a[p, q]."""
    theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    rotation = np.eye(4)
    rotation[p, p] = rotation[q, q] = c
    rotation[p, q] = s
    rotation[q, p] = -s
    return rotation


def _threshold(spectrum: Spectrum, scale_tol: float) -> float:
    return scale_tol * max(1.0, spectrum.max_eig - spectrum.min_eig)


def classify(spectrum: Spectrum, scale_tol: float = SCALE_TOLERANCE) -> Classification:
    """
    Definiteness under τ = scale_tol max(1, λmax − λmin).

    :raises: ConfigError if scale_tol <= 0
    """
    if not scale_tol > 0:
        raise ConfigError("scale_tol must be positive, got %r" % scale_tol)
    tau = _threshold(spectrum, scale_tol)
    if spectrum.min_eig > tau:
        return Classification.POSITIVE_DEFINITE
    elif spectrum.min_eig >= -tau:
        return Classification.POSITIVE_SEMIDEFINITE
    elif spectrum.max_eig < -tau:
        return Classification.NEGATIVE_DEFINITE
    elif spectrum.max_eig <= tau:
        return Classification.NEGATIVE_SEMIDEFINITE
    return Classification.INDEFINITE


def rank_estimate(spectrum: Spectrum, scale_tol: float = SCALE_TOLERANCE) -> int:
    tau = _threshold(spectrum, scale_tol)
    return int(np.count_nonzero(np.abs(spectrum.eigenvalues) > tau))


def weyl_bounds(q: Iterable[float]) -> Tuple[float, float]:
    """
    Eigenvalue bounds of a Wahba Hessian at q. The spectrum of
    4‖q‖²I − 2H_A is {4‖q‖² ± 4} and 8qqᵀ has eigenvalues in [0, 8‖q‖²],
    so every eigenvalue lies in [4‖q‖² − 4, 12‖q‖² + 4]. A set Hessian is
    a convex combination of pair Hessians and shares the bounds.
    """
    q = as_quaternion(q)
    norm2 = float(q @ q)
    return 4.0 * norm2 - 4.0, 12.0 * norm2 + 4.0


def bound_check(
    q: Iterable[float],
    spectrum: Spectrum,
    n_pairs: int = 1,
    tolerance: float = BOUND_TOLERANCE,
) -> BoundCheck:
    """
    Checks the spectrum of a Wahba Hessian at q against weyl_bounds.

    :param q: Quaternion the Hessian was evaluated at
    :param Spectrum spectrum: Spectrum of the Hessian
    :param int n_pairs: Pairs in the set, the bounds hold for any n >= 1
    :param float tolerance: Absolute slack
    """
    if n_pairs < 1:
        raise ConfigError("n_pairs must be >= 1, got %r" % n_pairs)
    lower, upper = weyl_bounds(q)
    lower_margin = spectrum.min_eig - lower
    upper_margin = upper - spectrum.max_eig
    return BoundCheck(
        lower=lower,
        upper=upper,
        satisfied=lower_margin >= -tolerance and upper_margin >= -tolerance,
        lower_margin=lower_margin,
        upper_margin=upper_margin,
    )


def shifted_spectrum(pair: ObservationPair, q: Iterable[float]) -> Spectrum:
    """Spectrum of 4‖q‖²I − 2H_A, expected {4‖q‖² + 4 (x2), 4‖q‖² − 4 (x2)}."""
    q = as_quaternion(q)
    return eig_sym4(4.0 * float(q @ q) * np.eye(4) - 2.0 * hessian_A(pair))


def analyze(
    observations: ObservationSet,
    q: Iterable[float],
    scale_tol: float = SCALE_TOLERANCE,
) -> ConvexityReport:
    """
    Hessian of the set loss at q, its spectrum, definiteness
    and analytic bound check in one report.
    """
    q = as_quaternion(q)
    spectrum = eig_sym4(hessian_total(observations, q))
    classification = classify(spectrum, scale_tol)
    report = ConvexityReport(
        classification=classification,
        spectrum=spectrum,
        bounds=bound_check(q, spectrum, len(observations)),
        rank_estimate=rank_estimate(spectrum, scale_tol),
        quaternion=q,
    )
    logger.debug(
        "[Analyze: %s pairs]: ‖q‖=%s %s", len(observations), np.linalg.norm(q), report
    )
    return report
