import logging
from typing import Iterable

import numpy as np

from .baseoptimizer import BaseOptimizer
from ..enums import Method
from ..model import jacobian, residual_stack
from ..quaternion import as_quaternion
from ..resources import ObservationSet
from ..spectral import eig_sym4

logger = logging.getLogger(__name__)

SINGULAR_TOLERANCE = 1e-12


def step_gna(observations: ObservationSet, q: Iterable[float]) -> np.ndarray:
    """
    Undamped Gauss-Newton update q - (JᵀJ)⁻¹Jᵀe. When JᵀJ is singular
    (smallest eigenvalue <= 1e-12 max(1, largest)), as for a single pair
    whose rotation about the observed axis is unobservable, the
    Moore-Penrose pseudo-inverse is used instead.
    """
    q = as_quaternion(q)
    J = jacobian(observations, q)
    normal = J.T @ J
    rhs = J.T @ residual_stack(observations, q)
    spectrum = eig_sym4(normal)
    cutoff = SINGULAR_TOLERANCE * max(1.0, spectrum.max_eig)
    if spectrum.min_eig <= cutoff:
        logger.debug("[GNA]: JᵀJ singular (min eig %s), pseudo-inverse", spectrum.min_eig)
        pseudo_inverse = np.linalg.pinv(normal, rcond=SINGULAR_TOLERANCE, hermitian=True)
        return q - pseudo_inverse @ rhs
    return q - np.linalg.solve(normal, rhs)


class GaussNewton(BaseOptimizer):
    method = Method.GNA

    def step(self, observations: ObservationSet, q: np.ndarray) -> np.ndarray:
        return step_gna(observations, q)
