from typing import Iterable

import numpy as np

from .baseoptimizer import BaseOptimizer
from ..enums import Method
from ..exceptions import ConfigError
from ..model import gradient
from ..quaternion import as_quaternion
from ..resources import ObservationSet


def step_gda(
    observations: ObservationSet, q: Iterable[float], step_size: float
) -> np.ndarray:
    """
    Explicit gradient step q - μ∇F.

    :raises: ConfigError if step_size <= 0
    """
    if not step_size > 0:
        raise ConfigError("step_size must be positive, got %r" % step_size)
    q = as_quaternion(q)
    return q - step_size * gradient(observations, q)


class GradientDescent(BaseOptimizer):
    method = Method.GDA

    def step(self, observations: ObservationSet, q: np.ndarray) -> np.ndarray:
        return step_gda(observations, q, self.config.step_size)
