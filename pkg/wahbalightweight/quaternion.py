"""
Quaternion and direction cosine matrix arithmetic.

Quaternions are scalar-first numpy arrays ``(q0, q1, q2, q3)`` and are not
required to have unit norm. The DCM is the homogeneous (degree two) map

    C11 = q0² + q1² − q2² − q3²   C12 = 2(q1q2 + q0q3)   C13 = 2(q1q3 − q0q2)
    C21 = 2(q1q2 − q0q3)   C22 = q0² − q1² + q2² − q3²   C23 = 2(q2q3 + q0q1)
    C31 = 2(q1q3 + q0q2)   C32 = 2(q2q3 − q0q1)   C33 = q0² − q1² − q2² + q3²

so that CᵀC = ‖q‖⁴·I, and for unit q it is the rotation taking
reference-frame vectors to body-frame vectors, ``D_b = C @ D_r``.
"""

from typing import Iterable

import numpy as np

from .exceptions import ComponentIndexError, DegenerateQuaternionError
from .utils import check_vector

Quaternion = np.ndarray
UnitQuaternion = np.ndarray
Dcm = np.ndarray

NORM_FLOOR = 1e-12

# d²C/dq_j dq_k, constant in q
_SECOND_PARTIALS = np.zeros((4, 4, 3, 3))
_SECOND_PARTIALS[0, 0] = np.diag([2.0, 2.0, 2.0])
_SECOND_PARTIALS[1, 1] = np.diag([2.0, -2.0, -2.0])
_SECOND_PARTIALS[2, 2] = np.diag([-2.0, 2.0, -2.0])
_SECOND_PARTIALS[3, 3] = np.diag([-2.0, -2.0, 2.0])
_SECOND_PARTIALS[0, 1] = [[0, 0, 0], [0, 0, 2], [0, -2, 0]]
_SECOND_PARTIALS[0, 2] = [[0, 0, -2], [0, 0, 0], [2, 0, 0]]
_SECOND_PARTIALS[0, 3] = [[0, 2, 0], [-2, 0, 0], [0, 0, 0]]
_SECOND_PARTIALS[1, 2] = [[0, 2, 0], [2, 0, 0], [0, 0, 0]]
_SECOND_PARTIALS[1, 3] = [[0, 0, 2], [0, 0, 0], [2, 0, 0]]
_SECOND_PARTIALS[2, 3] = [[0, 0, 0], [0, 0, 2], [0, 2, 0]]
for _j in range(4):
    for _k in range(_j):
        _SECOND_PARTIALS[_j, _k] = _SECOND_PARTIALS[_k, _j]
_SECOND_PARTIALS.setflags(write=False)


def as_quaternion(q: Iterable[float]) -> Quaternion:
    """
    Converts array like to a finite float quaternion.
    """
    return check_vector(q, 4, "quaternion")


def _check_index(index: int) -> int:
    if index not in (0, 1, 2, 3):
        raise ComponentIndexError(index)
    return index


def dcm_from_quat(q: Iterable[float]) -> Dcm:
    """
    Homogeneous quaternion DCM, see module docstring.

    :param q: Scalar-first quaternion, any norm
    :returns: 3x3 array
    """
    q0, q1, q2, q3 = as_quaternion(q)
    return np.array(
        [
            [
                q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3,
                2.0 * (q1 * q2 + q0 * q3),
                2.0 * (q1 * q3 - q0 * q2),
            ],
            [
                2.0 * (q1 * q2 - q0 * q3),
                q0 * q0 - q1 * q1 + q2 * q2 - q3 * q3,
                2.0 * (q2 * q3 + q0 * q1),
            ],
            [
                2.0 * (q1 * q3 + q0 * q2),
                2.0 * (q2 * q3 - q0 * q1),
                q0 * q0 - q1 * q1 - q2 * q2 + q3 * q3,
            ],
        ]
    )


def dcm_partial(q: Iterable[float], k: int) -> Dcm:
    """
    First partial derivative dC/dq_k.

    :param q: Scalar-first quaternion
    :param int k: Component index 0..3
    :raises: ComponentIndexError
    """
    _check_index(k)
    q0, q1, q2, q3 = as_quaternion(q)
    if k == 0:
        pattern = [[q0, q3, -q2], [-q3, q0, q1], [q2, -q1, q0]]
    elif k == 1:
        pattern = [[q1, q2, q3], [q2, -q1, q0], [q3, -q0, -q1]]
    elif k == 2:
        pattern = [[-q2, q1, -q0], [q1, q2, q3], [q0, q3, -q2]]
    else:
        pattern = [[-q3, q0, q1], [-q0, -q3, q2], [q1, q2, q3]]
    return 2.0 * np.array(pattern)


def dcm_partials(q: Iterable[float]) -> np.ndarray:
    """
    All four first partials stacked, shape (4, 3, 3).
    C is quadratic in q so dC/dq_k = sum_j q_j d²C/dq_j dq_k.
    """
    return np.einsum("j,jkab->kab", as_quaternion(q), _SECOND_PARTIALS)


def dcm_second_partial(j: int, k: int) -> Dcm:
    """
    Constant second partial derivative d²C/dq_j dq_k.

    :param int j: Component index 0..3
    :param int k: Component index 0..3
    :raises: ComponentIndexError
    """
    return _SECOND_PARTIALS[_check_index(j), _check_index(k)].copy()


def dcm_second_partials() -> np.ndarray:
    """All sixteen second partials, shape (4, 4, 3, 3), read only."""
    return _SECOND_PARTIALS


def normalize(q: Iterable[float]) -> UnitQuaternion:
    """
    Returns q / ‖q‖.

    :raises: DegenerateQuaternionError if ‖q‖ <= 1e-12
    """
    q = as_quaternion(q)
    q_norm = np.linalg.norm(q)
    if not q_norm > NORM_FLOOR:
        raise DegenerateQuaternionError(float(q_norm))
    return q / q_norm


def canonical_sign(q: Iterable[float]) -> Quaternion:
    """
    Resolves the q / -q double cover, the first nonzero
    component (in order q0..q3) is made positive.

    :raises: DegenerateQuaternionError for the zero quaternion
    """
    q = as_quaternion(q)
    nonzero = np.flatnonzero(q)
    if nonzero.size == 0:
        raise DegenerateQuaternionError(0.0)
    if q[nonzero[0]] < 0:
        return -q
    return q.copy()


def angular_distance(p: Iterable[float], q: Iterable[float]) -> float:
    """
    Rotation angle (rad) between the attitudes encoded by p and q,
    invariant to sign and scale.
    """
    p = normalize(p)
    q = normalize(q)
    if np.dot(p, q) < 0:
        q = -q
    # half-angle form keeps resolution for nearly identical attitudes
    return 4.0 * float(np.arctan2(np.linalg.norm(p - q), np.linalg.norm(p + q)))
