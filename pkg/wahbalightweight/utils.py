from typing import Iterable, Union

import numpy as np

from .compat import integer_types
from .exceptions import ConfigError, ObservationError
from .__version__ import __title__, __version__

FLOAT_FORMAT = "%.17g"
UNIT_TOLERANCE = 1e-6
# norms this close to 1 are left untouched so renormalisation is idempotent
ROUNDOFF = 4.0 * float(np.finfo(float).eps)


def check_vector(values: Iterable[float], size: int, name: str) -> np.ndarray:
    """
    Converts values to a float array and checks
    its length and finiteness.

    :param values: Array like of floats
    :param int size: Expected length
    :param str name: Used in the error message
    :raises: ObservationError if shape or values invalid
    """
    try:
        vector = np.asarray(values, dtype=float).reshape(-1)
    except (TypeError, ValueError):
        raise ObservationError("%s is not numeric: %r" % (name, values))
    if vector.shape != (size,):
        raise ObservationError(
            "%s must have %s components, got %s" % (name, size, vector.size)
        )
    if not np.all(np.isfinite(vector)):
        raise ObservationError("%s has non-finite components: %s" % (name, vector))
    return vector


def check_unit_vector(
    values: Iterable[float], name: str, tolerance: float = UNIT_TOLERANCE
) -> np.ndarray:
    """
    Returns the renormalised 3-vector, vectors further
    than tolerance from unit norm are rejected.

    :param values: Array like of floats
    :param str name: Used in the error message
    :param float tolerance: Accepted deviation of the norm from 1
    :raises: ObservationError if not (close to) unit norm
    """
    vector = check_vector(values, 3, name)
    norm = np.linalg.norm(vector)
    if abs(norm - 1.0) > tolerance:
        raise ObservationError(
            "%s is not a unit vector, norm %s (tolerance %s)" % (name, norm, tolerance)
        )
    if abs(norm - 1.0) > ROUNDOFF:
        vector = vector / norm
    return vector


def check_seed(seed: int) -> int:
    """
    :param int seed: Root seed for numpy SeedSequence
    :raises: ConfigError unless a 64-bit unsigned integer
    """
    if not isinstance(seed, integer_types) or not 0 <= seed < 2**64:
        raise ConfigError("seed must be a 64-bit unsigned integer, got %r" % (seed,))
    return seed


def format_float(value: Union[float, np.floating]) -> str:
    """
    Formats float with 17 significant digits
    so text output round trips exactly.
    """
    return FLOAT_FORMAT % float(value)


def max_abs(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix))) if np.size(matrix) else 0.0


def default_header() -> str:
    return "{0}/{1}".format(__title__, __version__)
