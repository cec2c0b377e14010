"""
Davenport q-method, the closed-form global solution used as ground
truth for the iterative optimizers.

For any unit quaternion, loss_total(q) = 2(1 − qᵀK̃q) where K̃ is the
scalar-first reordering of K, so the eigenvector of the largest
eigenvalue of K minimises the loss over unit quaternions.
"""

import logging

import numpy as np

from .quaternion import canonical_sign, normalize
from .resources import DavenportMatrix, DavenportSolution, ObservationSet
from .spectral import eig_sym4

logger = logging.getLogger(__name__)

MULTIPLICITY_TOLERANCE = 1e-9


def build_K(observations: ObservationSet) -> DavenportMatrix:
    """
    B = Σ a_i b_i r_iᵀ, z = Σ a_i b_i × r_i and
    K = [[B + Bᵀ − tr(B) I, z], [zᵀ, tr(B)]] (vector-first).
    """
    weights = observations.weights
    bodies, references = observations.bodies, observations.references
    B = np.einsum("n,na,nb->ab", weights, bodies, references)
    z = weights @ np.cross(bodies, references)
    sigma = np.trace(B)
    K = np.empty((4, 4))
    K[:3, :3] = B + B.T - sigma * np.eye(3)
    K[:3, 3] = z
    K[3, :3] = z
    K[3, 3] = sigma
    return DavenportMatrix(K=K, B=B, z=z)


def solve_davenport(observations: ObservationSet) -> DavenportSolution:
    """
    Eigenvector of the largest eigenvalue of K, returned as a unit
    scalar-first quaternion with canonical sign.

    multiplicity_flag is set when the top two eigenvalues are within
    1e-9 of each other, the attitude is then not unique (e.g. a single
    pair leaves the rotation about the observed direction free).
    """
    davenport = build_K(observations)
    spectrum = eig_sym4(davenport.K)
    eigenvalues = spectrum.eigenvalues
    vector_first = spectrum.eigenvectors[:, 0]
    q = canonical_sign(normalize(np.roll(vector_first, 1)))
    multiplicity_flag = bool(eigenvalues[0] - eigenvalues[1] < MULTIPLICITY_TOLERANCE)
    if multiplicity_flag:
        logger.warning(
            "[Davenport: %s pairs]: degenerate geometry, eigenvalue gap %s",
            len(observations),
            eigenvalues[0] - eigenvalues[1],
        )
    return DavenportSolution(
        q=q,
        lambda_max=float(eigenvalues[0]),
        multiplicity_flag=multiplicity_flag,
        eigenvalues=eigenvalues,
        davenport=davenport,
    )
