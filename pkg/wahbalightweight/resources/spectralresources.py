from typing import Tuple

import numpy as np

from .baseresource import BaseResource
from ..enums import Classification


class Spectrum(BaseResource):
    """
    Eigen decomposition of a symmetric 4x4 matrix.

    :type eigenvalues: numpy.ndarray sorted descending
    :type eigenvectors: numpy.ndarray, column i pairs with eigenvalues[i]
    :type sweeps: int
    """

    def __init__(self, eigenvalues: np.ndarray, eigenvectors: np.ndarray, **kwargs):
        super(Spectrum, self).__init__(**kwargs)
        self.eigenvalues = np.asarray(eigenvalues, dtype=float)
        self.eigenvectors = np.asarray(eigenvectors, dtype=float)
        self.sweeps = kwargs.get("sweeps")

    @property
    def min_eig(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def max_eig(self) -> float:
        return float(self.eigenvalues[0])

    def reconstruct(self) -> np.ndarray:
        return self.eigenvectors @ np.diag(self.eigenvalues) @ self.eigenvectors.T

    @property
    def serialise(self) -> dict:
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "eigenvectors": self.eigenvectors.T.tolist(),
        }


class BoundCheck:
    """
    Analytic eigenvalue bounds of a Wahba Hessian at q,
    4‖q‖² − 4 <= λ <= 12‖q‖² + 4.

    :type lower: float
    :type upper: float
    :type satisfied: bool
    :type lower_margin: float min eigenvalue minus lower bound
    :type upper_margin: float upper bound minus max eigenvalue
    """

    __slots__ = ["lower", "upper", "satisfied", "lower_margin", "upper_margin"]

    def __init__(
        self,
        lower: float,
        upper: float,
        satisfied: bool,
        lower_margin: float,
        upper_margin: float,
    ):
        self.lower = lower
        self.upper = upper
        self.satisfied = satisfied
        self.lower_margin = lower_margin
        self.upper_margin = upper_margin

    def __iter__(self):
        # unpacks as (lower, upper, satisfied)
        return iter((self.lower, self.upper, self.satisfied))

    @property
    def serialise(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "satisfied": self.satisfied,
            "lower_margin": self.lower_margin,
            "upper_margin": self.upper_margin,
        }


class ConvexityReport(BaseResource):
    """
    Pointwise definiteness of a Wahba Hessian.

    :type classification: Classification
    :type spectrum: Spectrum
    :type min_eig: float
    :type max_eig: float
    :type lower_bound: float
    :type upper_bound: float
    :type bound_satisfied: bool
    :type rank_estimate: int
    :type quaternion: numpy.ndarray
    """

    def __init__(
        self,
        classification: Classification,
        spectrum: Spectrum,
        bounds: BoundCheck,
        rank_estimate: int,
        quaternion: np.ndarray,
        **kwargs
    ):
        super(ConvexityReport, self).__init__(**kwargs)
        self.classification = classification
        self.spectrum = spectrum
        self.bounds = bounds
        self.rank_estimate = rank_estimate
        self.quaternion = quaternion
        self.min_eig = spectrum.min_eig
        self.max_eig = spectrum.max_eig
        self.lower_bound = bounds.lower
        self.upper_bound = bounds.upper
        self.bound_satisfied = bounds.satisfied

    @property
    def eigenvalues(self) -> Tuple[float, ...]:
        return tuple(self.spectrum.eigenvalues.tolist())

    @property
    def serialise(self) -> dict:
        return {
            "quaternion": self.quaternion.tolist(),
            "norm": float(np.linalg.norm(self.quaternion)),
            "eigenvalues": self.spectrum.eigenvalues.tolist(),
            "classification": self.classification.value,
            "rank_estimate": self.rank_estimate,
            "min_eig": self.min_eig,
            "max_eig": self.max_eig,
            "bounds": self.bounds.serialise,
        }

    def __repr__(self) -> str:
        return "<ConvexityReport [%s]>" % self.classification.value
