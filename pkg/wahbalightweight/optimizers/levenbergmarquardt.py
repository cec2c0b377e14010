from typing import Iterable

import numpy as np

from .baseoptimizer import BaseOptimizer
from ..enums import Method
from ..exceptions import ConfigError, FactorisationError
from ..model import jacobian, residual_stack
from ..quaternion import as_quaternion
from ..resources import ObservationSet


def step_lma(
    observations: ObservationSet, q: Iterable[float], kappa: float
) -> np.ndarray:
    """
    Damped Gauss-Newton update q - (JᵀJ + κI)⁻¹Jᵀe, the normal
    equations solved by Cholesky factorisation.

    :raises: ConfigError if kappa <= 0
    :raises: FactorisationError if JᵀJ + κI is not positive definite
    """
    if not kappa > 0:
        raise ConfigError("kappa must be positive, got %r" % kappa)
    q = as_quaternion(q)
    J = jacobian(observations, q)
    normal = J.T @ J + kappa * np.eye(4)
    try:
        lower = np.linalg.cholesky(normal)
    except np.linalg.LinAlgError as e:
        raise FactorisationError("JᵀJ + κI factorisation failed: %s" % e)
    y = np.linalg.solve(lower, J.T @ residual_stack(observations, q))
    return q - np.linalg.solve(lower.T, y)


class LevenbergMarquardt(BaseOptimizer):
    """Fixed damping, no adaptive schedule."""

    method = Method.LMA

    def step(self, observations: ObservationSet, q: np.ndarray) -> np.ndarray:
        return step_lma(observations, q, self.config.kappa)
