"""
Loss, residuals and analytic derivatives of the Wahba objective in
quaternion coordinates.

For one pair the loss simplifies to F_i(q) = 1 + ‖q‖⁴ − 2A_i(q) with
A_i = bᵀ C(q) r, a quadratic form in q whose (constant) Hessian is H_A.
The set loss is F = Σ a_i F_i with Σ a_i = 1, and its Hessian is

    H = 4‖q‖²I + 8qqᵀ − 2 Σ a_i H_A,i
"""

from typing import Iterable

import numpy as np

from .quaternion import (
    Quaternion,
    as_quaternion,
    dcm_from_quat,
    dcm_partials,
    dcm_second_partials,
)
from .resources import ObservationPair, ObservationSet

SymMatrix4 = np.ndarray


def residual(pair: ObservationPair, q: Iterable[float]) -> np.ndarray:
    """Unweighted error vector b − C(q) r."""
    return pair.body - dcm_from_quat(q) @ pair.reference


def residual_stack(observations: ObservationSet, q: Iterable[float]) -> np.ndarray:
    """
    Stacked √a_i (b_i − C r_i) in set order, shape (3n,).
    """
    dcm = dcm_from_quat(q)
    errors = observations.bodies - observations.references @ dcm.T
    return (np.sqrt(observations.weights)[:, None] * errors).reshape(-1)


def _attitude_term(body: np.ndarray, reference: np.ndarray, q: Quaternion) -> float:
    return float(body @ dcm_from_quat(q) @ reference)


def loss_single(pair: ObservationPair, q: Iterable[float]) -> float:
    """
    Simplified single pair loss 1 + ‖q‖⁴ − 2bᵀC(q)r, valid for any
    quaternion norm since CᵀC = ‖q‖⁴I.
    """
    q = as_quaternion(q)
    norm2 = float(q @ q)
    return 1.0 + norm2 * norm2 - 2.0 * _attitude_term(pair.body, pair.reference, q)


def loss_expanded(pair: ObservationPair, q: Iterable[float]) -> float:
    """
    General quadratic expansion bᵀb + rᵀCᵀCr − 2bᵀCr, which
    makes no use of the unit vector or CᵀC identities.
    """
    dcm = dcm_from_quat(q)
    body, reference = pair.body, pair.reference
    return float(
        body @ body
        + reference @ dcm.T @ dcm @ reference
        - 2.0 * body @ dcm @ reference
    )


def loss_total(observations: ObservationSet, q: Iterable[float]) -> float:
    """Weighted loss Σ a_i F_i(q)."""
    q = as_quaternion(q)
    return float(
        sum(pair.weight * loss_single(pair, q) for pair in observations.pairs)
    )


def jacobian(observations: ObservationSet, q: Iterable[float]) -> np.ndarray:
    """
    Jacobian of residual_stack, shape (3n, 4). Row block i is
    −√a_i [dC/dq_0 r_i | dC/dq_1 r_i | dC/dq_2 r_i | dC/dq_3 r_i].
    """
    partials = dcm_partials(q)
    blocks = np.einsum("kab,nb->nak", partials, observations.references)
    blocks *= -np.sqrt(observations.weights)[:, None, None]
    return blocks.reshape(-1, 4)


def gradient(observations: ObservationSet, q: Iterable[float]) -> np.ndarray:
    """
    Exact gradient ∇F = 4‖q‖²q − 2 Σ a_i ∇A_i, with
    dA_i/dq_k = b_iᵀ dC/dq_k r_i.
    """
    q = as_quaternion(q)
    partials = dcm_partials(q)
    grad_a = np.einsum(
        "na,kab,nb->nk", observations.bodies, partials, observations.references
    )
    return 4.0 * float(q @ q) * q - 2.0 * observations.weights @ grad_a


def hessian_A(pair: ObservationPair) -> SymMatrix4:
    """
    Constant Hessian of A = bᵀC(q)r, (H_A)_jk = bᵀ d²C/dq_j dq_k r.
    Symmetric and traceless, equal to twice the scalar-first Davenport
    matrix of the pair.
    """
    return np.einsum(
        "a,jkab,b->jk", pair.body, dcm_second_partials(), pair.reference
    )


def hessian_A_printed(pair: ObservationPair) -> SymMatrix4:
    """
    H_A from its published closed-form entry table. Several entries
    carry the opposite sign to the bilinear forms of the second partials
    (e.g. the (1, 2) and (2, 2) entries), so the matrix is not traceless.
    Only used by ``verify --printed-convention``; never use for analysis.
    """
    (bx, by, bz), (rx, ry, rz) = pair.body, pair.reference
    entries = {
        (0, 0): 2.0 * (bx * rx + by * ry + bz * rz),
        (0, 1): 2.0 * (bz * ry - by * rz),
        (0, 2): 2.0 * (bx * rz - bz * rx),
        (0, 3): 2.0 * (by * rx - bx * ry),
        (1, 1): 2.0 * (-bx * rx + by * ry + bz * rz),
        (1, 2): -2.0 * (by * rx + bx * ry),
        (1, 3): -2.0 * (bz * rx + bx * rz),
        (2, 2): 2.0 * (bx * rx - by * ry + bz * rz),
        (2, 3): -2.0 * (bz * ry + by * rz),
        (3, 3): 2.0 * (bx * rx + by * ry - bz * rz),
    }
    matrix = np.zeros((4, 4))
    for (j, k), value in entries.items():
        matrix[j, k] = matrix[k, j] = value
    return matrix


def hessian_norm4(q: Iterable[float]) -> SymMatrix4:
    """Hessian of ‖q‖⁴, 4‖q‖²I + 8qqᵀ."""
    q = as_quaternion(q)
    return 4.0 * float(q @ q) * np.eye(4) + 8.0 * np.outer(q, q)


def hessian_single(pair: ObservationPair, q: Iterable[float]) -> SymMatrix4:
    """Exact Hessian of loss_single, 4‖q‖²I + 8qqᵀ − 2H_A."""
    return hessian_norm4(q) - 2.0 * hessian_A(pair)


def hessian_total(observations: ObservationSet, q: Iterable[float]) -> SymMatrix4:
    """Exact Hessian of loss_total, Σ a_i H_F,i."""
    q = as_quaternion(q)
    return sum(
        pair.weight * hessian_single(pair, q) for pair in observations.pairs
    )
