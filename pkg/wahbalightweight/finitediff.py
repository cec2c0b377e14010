from typing import Callable

import numpy as np

DEFAULT_STEP = 1e-6


def central_gradient(
    function: Callable[[np.ndarray], float], x: np.ndarray, h: float = DEFAULT_STEP
) -> np.ndarray:
    """
    Central difference gradient of a scalar function.
    """
    x = np.asarray(x, dtype=float)
    steps = np.eye(x.size) * h
    return np.array(
        [(function(x + step) - function(x - step)) / (2.0 * h) for step in steps]
    )


def central_jacobian(
    function: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    h: float = DEFAULT_STEP,
) -> np.ndarray:
    """
    Central difference Jacobian, column k is d function / d x_k.
    """
    x = np.asarray(x, dtype=float)
    steps = np.eye(x.size) * h
    return np.stack(
        [
            (np.asarray(function(x + step)) - np.asarray(function(x - step))) / (2.0 * h)
            for step in steps
        ],
        axis=-1,
    )


def relative_error(approx: np.ndarray, exact: np.ndarray) -> float:
    """‖approx − exact‖ / max(1, ‖exact‖)."""
    exact = np.asarray(exact, dtype=float)
    return float(
        np.linalg.norm(np.asarray(approx) - exact) / max(1.0, np.linalg.norm(exact))
    )
