import logging
import time
from typing import Iterable, Optional

import numpy as np

from ..enums import Method, TerminationReason
from ..exceptions import ConfigError, DegenerateQuaternionError, ObservationError
from ..model import gradient, hessian_total, loss_total
from ..quaternion import NORM_FLOOR, as_quaternion, normalize
from ..resources import IterationRecord, ObservationSet, OptimizerConfig, SolveResult
from ..spectral import eig_sym4

logger = logging.getLogger(__name__)


class BaseOptimizer:
    """
    Iterates a single-step update of the quaternion until the
    gradient, loss improvement or iteration limit stops it.
    """

    method: Optional[Method] = None

    def __init__(self, config: OptimizerConfig = None):
        """
        :param OptimizerConfig config: Solve settings, defaults used if None
        """
        self.config = config or OptimizerConfig(method=self.method)
        if self.config.method is not self.method:
            raise ConfigError(
                "%s cannot run method %s"
                % (self.__class__.__name__, self.config.method.value)
            )

    def step(self, observations: ObservationSet, q: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def solve(self, observations: ObservationSet, q0: Iterable[float]) -> SolveResult:
        """
        :param ObservationSet observations: Weighted observation pairs
        :param q0: Initial quaternion, normalised first if normalize_each_step
        :raises: DegenerateQuaternionError if q0 is (near) zero
        """
        config = self.config
        q = as_quaternion(q0)
        if config.normalize_each_step:
            q = normalize(q)
        elif not np.linalg.norm(q) > NORM_FLOOR:
            raise DegenerateQuaternionError(float(np.linalg.norm(q)))

        time_started = time.time()
        record = self._create_record(observations, 0, q)
        trace = [record]
        reason = TerminationReason.MAX_ITERS
        if not self._finite(record):
            reason = TerminationReason.DIVERGED
        elif record.grad_norm <= config.grad_tol:
            reason = TerminationReason.GRAD_TOL
        else:
            for index in range(1, config.max_iters + 1):
                previous = record
                try:
                    q = self.step(observations, q)
                    if config.normalize_each_step:
                        q = normalize(q)
                except (DegenerateQuaternionError, ObservationError):
                    # overflow or collapse to zero, reported as divergence
                    q = np.full(4, np.nan)
                record = self._create_record(observations, index, q)
                trace.append(record)
                logger.debug(
                    "[Solve: %s]: iteration %s loss %s grad_norm %s",
                    self.method.value,
                    index,
                    record.loss,
                    record.grad_norm,
                )
                if not self._finite(record):
                    reason = TerminationReason.DIVERGED
                    break
                elif record.grad_norm <= config.grad_tol:
                    reason = TerminationReason.GRAD_TOL
                    break
                elif abs(previous.loss - record.loss) <= config.loss_tol:
                    reason = TerminationReason.LOSS_TOL
                    break

        result = SolveResult(
            method=self.method,
            termination_reason=reason,
            trace=trace,
            elapsed_time=time.time() - time_started,
        )
        if reason is TerminationReason.DIVERGED:
            logger.warning(
                "[Solve: %s]: diverged at iteration %s", self.method.value, result.iterations
            )
        else:
            logger.info(
                "[Solve: %s]: %s after %s iterations, loss %s",
                self.method.value,
                reason.value,
                result.iterations,
                result.final_loss,
            )
        return result

    def _create_record(
        self, observations: ObservationSet, index: int, q: np.ndarray
    ) -> IterationRecord:
        if not np.all(np.isfinite(q)):
            return IterationRecord(index, q, float("nan"), float("nan"))
        with np.errstate(over="ignore", invalid="ignore"):
            loss = loss_total(observations, q)
            grad_norm = float(np.linalg.norm(gradient(observations, q)))
        min_eig = None
        if self.config.record_hessian and np.isfinite(loss) and np.isfinite(grad_norm):
            min_eig = eig_sym4(hessian_total(observations, q)).min_eig
        return IterationRecord(index, q, loss, grad_norm, min_eig)

    @staticmethod
    def _finite(record: IterationRecord) -> bool:
        return bool(np.isfinite(record.loss) and np.isfinite(record.grad_norm))

    def __repr__(self) -> str:
        return "<%s>" % self.__class__.__name__

    def __str__(self) -> str:
        return self.__class__.__name__
