from typing import Optional, Sequence, Union

import numpy as np

from .baseresource import BaseResource
from ..compat import integer_types, numeric_types
from ..enums import WeightScheme
from ..exceptions import ConfigError
from ..utils import check_seed


class SimConfig(BaseResource):
    """
    Synthetic observation set settings.

    :type n_pairs: int
    :type noise_sigma: float per axis Gaussian noise before renormalisation
    :type weight_scheme: WeightScheme
    :type weights: list[float] or None, custom scheme only
    :type seed: int
    """

    def __init__(
        self,
        n_pairs: int = 3,
        noise_sigma: float = 0.0,
        weight_scheme: Union[WeightScheme, str] = WeightScheme.UNIFORM,
        weights: Optional[Sequence[float]] = None,
        seed: int = 0,
        **kwargs
    ):
        super(SimConfig, self).__init__(**kwargs)
        if (
            not isinstance(n_pairs, integer_types)
            or isinstance(n_pairs, bool)
            or n_pairs < 1
        ):
            raise ConfigError("n_pairs must be an integer >= 1, got %r" % n_pairs)
        if (
            not isinstance(noise_sigma, numeric_types)
            or not np.isfinite(noise_sigma)
            or noise_sigma < 0
        ):
            raise ConfigError("noise_sigma must be >= 0, got %r" % noise_sigma)
        check_seed(seed)
        try:
            self.weight_scheme = WeightScheme(weight_scheme)
        except ValueError:
            raise ConfigError("unknown weight scheme: %r" % (weight_scheme,))
        if self.weight_scheme is WeightScheme.CUSTOM:
            if weights is None or len(weights) != n_pairs:
                raise ConfigError("custom scheme requires %s weights" % n_pairs)
            if not all(np.isfinite(w) and w > 0 for w in weights):
                raise ConfigError("custom weights must be positive: %r" % (weights,))
            weights = [float(w) for w in weights]
        elif weights is not None:
            raise ConfigError("weights are only accepted with the custom scheme")
        self.n_pairs = n_pairs
        self.noise_sigma = float(noise_sigma)
        self.weights = weights
        self.seed = seed

    def normalised_weights(self) -> np.ndarray:
        if self.weight_scheme is WeightScheme.CUSTOM:
            weights = np.array(self.weights)
            return weights / weights.sum()
        return np.full(self.n_pairs, 1.0 / self.n_pairs)

    @property
    def serialise(self) -> dict:
        return {
            "n_pairs": self.n_pairs,
            "noise_sigma": self.noise_sigma,
            "weight_scheme": self.weight_scheme.value,
            "weights": self.weights,
            "seed": self.seed,
        }


class SimMetadata(BaseResource):
    """
    Ground truth of a generated set.

    :type truth: numpy.ndarray unit quaternion
    :type config: SimConfig
    :type noise: numpy.ndarray (n, 3) per pair noise draws
    """

    def __init__(self, truth: np.ndarray, config: SimConfig, noise: np.ndarray, **kwargs):
        super(SimMetadata, self).__init__(**kwargs)
        self.truth = truth
        self.config = config
        self.noise = noise

    @property
    def serialise(self) -> dict:
        return {
            "truth": self.truth.tolist(),
            "seed": self.config.seed,
            "config": self.config.serialise,
            "noise": self.noise.tolist(),
        }
