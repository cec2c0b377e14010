import logging
from typing import Iterator, List, Sequence, Union

import numpy as np

from .baseresource import BaseResource
from ..compat import numeric_types
from ..exceptions import ObservationError
from ..utils import ROUNDOFF, check_unit_vector

logger = logging.getLogger(__name__)


class ObservationPair:
    """
    Weighted pair of unit vectors, body = C @ reference
    when the attitude is exact.

    :type body: numpy.ndarray
    :type reference: numpy.ndarray
    :type weight: float
    """

    __slots__ = ["body", "reference", "weight"]

    def __init__(
        self,
        body: Sequence[float],
        reference: Sequence[float],
        weight: float = 1.0,
    ):
        self.body = check_unit_vector(body, "body")
        self.reference = check_unit_vector(reference, "reference")
        if (
            not isinstance(weight, numeric_types + (np.floating,))
            or isinstance(weight, bool)
            or not np.isfinite(weight)
            or weight <= 0
        ):
            raise ObservationError("weight must be a positive number, got %r" % weight)
        self.weight = float(weight)

    @property
    def serialise(self) -> dict:
        return {
            "body": self.body.tolist(),
            "reference": self.reference.tolist(),
            "weight": self.weight,
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, ObservationPair):
            return NotImplemented
        return (
            np.array_equal(self.body, other.body)
            and np.array_equal(self.reference, other.reference)
            and self.weight == other.weight
        )

    def __repr__(self) -> str:
        return "<ObservationPair body=%s reference=%s weight=%s>" % (
            self.body.tolist(),
            self.reference.tolist(),
            self.weight,
        )


class ObservationSet(BaseResource):
    """
    Ordered, non-empty set of observation pairs with
    weights normalised to sum 1.

    :type pairs: list[ObservationPair]
    :type bodies: numpy.ndarray (n, 3)
    :type references: numpy.ndarray (n, 3)
    :type weights: numpy.ndarray (n,)
    """

    def __init__(self, pairs: List[Union[ObservationPair, dict]], **kwargs):
        super(ObservationSet, self).__init__(**kwargs)
        if not isinstance(pairs, (list, tuple)) or len(pairs) == 0:
            raise ObservationError("observation set requires at least one pair")
        pairs = [
            pair if isinstance(pair, ObservationPair) else self._create_pair(i, pair)
            for i, pair in enumerate(pairs)
        ]
        weights = np.array([pair.weight for pair in pairs])
        total = weights.sum()
        if abs(total - 1.0) > ROUNDOFF:
            logger.debug("[ObservationSet]: weights sum to %s, normalising", total)
            weights = weights / total
            pairs = [
                ObservationPair(pair.body, pair.reference, float(weight))
                for pair, weight in zip(pairs, weights)
            ]
        self.pairs = pairs
        self.bodies = np.array([pair.body for pair in pairs])
        self.references = np.array([pair.reference for pair in pairs])
        self.weights = weights
        for array in (self.bodies, self.references, self.weights):
            array.setflags(write=False)

    @staticmethod
    def _create_pair(index: int, data: dict) -> ObservationPair:
        if not isinstance(data, dict):
            raise ObservationError("pair %s must be an object, got %r" % (index, data))
        unknown = set(data) - {"body", "reference", "weight"}
        if unknown or "body" not in data or "reference" not in data:
            raise ObservationError(
                "pair %s requires 'body', 'reference' and optional 'weight', got %s"
                % (index, sorted(data))
            )
        try:
            return ObservationPair(**data)
        except ObservationError as e:
            raise ObservationError("pair %s: %s" % (index, e))

    @classmethod
    def from_arrays(
        cls,
        bodies: np.ndarray,
        references: np.ndarray,
        weights: Sequence[float] = None,
    ) -> "ObservationSet":
        bodies = np.atleast_2d(np.asarray(bodies, dtype=float))
        references = np.atleast_2d(np.asarray(references, dtype=float))
        if bodies.shape != references.shape:
            raise ObservationError(
                "bodies %s and references %s differ in shape"
                % (bodies.shape, references.shape)
            )
        if weights is None:
            weights = np.full(len(bodies), 1.0 / len(bodies))
        if len(weights) != len(bodies):
            raise ObservationError(
                "%s weights given for %s pairs" % (len(weights), len(bodies))
            )
        return cls(
            pairs=[
                ObservationPair(b, r, float(w))
                for b, r, w in zip(bodies, references, weights)
            ]
        )

    @property
    def serialise(self) -> dict:
        return {"pairs": [pair.serialise for pair in self.pairs]}

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[ObservationPair]:
        return iter(self.pairs)

    def __getitem__(self, index: int) -> ObservationPair:
        return self.pairs[index]

    def __repr__(self) -> str:
        return "<ObservationSet [%s pairs]>" % len(self)
