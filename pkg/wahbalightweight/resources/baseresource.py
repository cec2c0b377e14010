from enum import Enum
from typing import Any

import numpy as np

from ..compat import dumps


class BaseResource:
    """Lightweight data structure for resources."""

    def __init__(self, **kwargs):
        self.elapsed_time = kwargs.pop("elapsed_time", None)
        self._data = kwargs

    @property
    def serialise(self) -> dict:
        return to_builtin(self._data)

    def json(self) -> str:
        return dumps(self.serialise)

    def __repr__(self) -> str:
        return "<%s>" % self.__class__.__name__

    def __str__(self) -> str:
        return self.__class__.__name__


def to_builtin(value: Any) -> Any:
    """
    Converts numpy arrays/scalars and enums in
    nested containers to plain python types.
    """
    if isinstance(value, dict):
        return {k: to_builtin(v) for k, v in value.items()}
    elif isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    elif isinstance(value, np.ndarray):
        return value.tolist()
    elif isinstance(value, np.generic):
        return value.item()
    elif isinstance(value, Enum):
        return value.value
    return value
