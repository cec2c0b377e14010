from typing import List, Optional, Union

import numpy as np

from .baseresource import BaseResource
from ..compat import integer_types, numeric_types
from ..enums import Method, TerminationReason
from ..exceptions import ConfigError


class OptimizerConfig(BaseResource):
    """
    Settings for an iterative solve.

    :type method: Method
    :type step_size: float gradient descent step, gda only
    :type kappa: float Levenberg-Marquardt damping
    :type normalize_each_step: bool
    :type grad_tol: float
    :type loss_tol: float
    :type max_iters: int
    :type record_hessian: bool compute min_hessian_eig for each record
    """

    def __init__(
        self,
        method: Union[Method, str] = Method.LMA,
        step_size: float = 0.1,
        kappa: float = 1e-6,
        normalize_each_step: bool = True,
        grad_tol: float = 1e-10,
        loss_tol: float = 1e-14,
        max_iters: int = 200,
        record_hessian: bool = True,
        **kwargs
    ):
        super(OptimizerConfig, self).__init__(**kwargs)
        try:
            self.method = Method(method)
        except ValueError:
            raise ConfigError("unknown method: %r" % (method,))
        if self.method is Method.DAVENPORT:
            raise ConfigError("davenport is a closed-form solver, not iterative")
        for name, value in (
            ("step_size", step_size),
            ("kappa", kappa),
            ("grad_tol", grad_tol),
            ("loss_tol", loss_tol),
        ):
            if (
                not isinstance(value, numeric_types)
                or isinstance(value, bool)
                or not np.isfinite(value)
                or value <= 0
            ):
                raise ConfigError("%s must be positive, got %r" % (name, value))
        if (
            not isinstance(max_iters, integer_types)
            or isinstance(max_iters, bool)
            or max_iters < 1
        ):
            raise ConfigError("max_iters must be an integer >= 1, got %r" % max_iters)
        self.step_size = float(step_size)
        self.kappa = float(kappa)
        self.normalize_each_step = bool(normalize_each_step)
        self.grad_tol = float(grad_tol)
        self.loss_tol = float(loss_tol)
        self.max_iters = max_iters
        self.record_hessian = bool(record_hessian)

    @property
    def serialise(self) -> dict:
        return {
            "method": self.method.value,
            "step_size": self.step_size,
            "kappa": self.kappa,
            "normalize_each_step": self.normalize_each_step,
            "grad_tol": self.grad_tol,
            "loss_tol": self.loss_tol,
            "max_iters": self.max_iters,
        }


class IterationRecord:
    """
    :type index: int
    :type q: numpy.ndarray post step (and post normalisation)
    :type loss: float
    :type grad_norm: float
    :type min_hessian_eig: float or None
    """

    __slots__ = ["index", "q", "loss", "grad_norm", "min_hessian_eig"]

    def __init__(
        self,
        index: int,
        q: np.ndarray,
        loss: float,
        grad_norm: float,
        min_hessian_eig: Optional[float] = None,
    ):
        self.index = index
        self.q = q
        self.loss = loss
        self.grad_norm = grad_norm
        self.min_hessian_eig = min_hessian_eig

    @property
    def serialise(self) -> dict:
        return {
            "iter": self.index,
            "loss": self.loss,
            "grad_norm": self.grad_norm,
            "q": self.q.tolist(),
            "min_eig": self.min_hessian_eig,
        }

    def __repr__(self) -> str:
        return "<IterationRecord [%s] loss=%s>" % (self.index, self.loss)


class SolveResult(BaseResource):
    """
    :type method: Method
    :type final_q: numpy.ndarray
    :type final_loss: float
    :type converged: bool
    :type termination_reason: TerminationReason
    :type trace: list[IterationRecord]
    """

    def __init__(
        self,
        method: Method,
        termination_reason: TerminationReason,
        trace: List[IterationRecord],
        **kwargs
    ):
        super(SolveResult, self).__init__(**kwargs)
        self.method = method
        self.termination_reason = termination_reason
        self.trace = trace
        last = trace[-1]
        self.final_q = last.q
        self.final_loss = last.loss
        self.converged = termination_reason in (
            TerminationReason.GRAD_TOL,
            TerminationReason.LOSS_TOL,
        )

    @property
    def iterations(self) -> int:
        return self.trace[-1].index

    @property
    def serialise(self) -> dict:
        return {
            "method": self.method.value,
            "final_q": self.final_q.tolist(),
            "final_loss": self.final_loss,
            "converged": self.converged,
            "termination_reason": self.termination_reason.value,
            "iterations": self.iterations,
        }

    def __repr__(self) -> str:
        return "<SolveResult [%s: %s]>" % (
            self.method.value,
            self.termination_reason.value,
        )


class DavenportMatrix(BaseResource):
    """
    Davenport K matrix, vector-first ordering

        K = [[B + Bᵀ − tr(B) I, z], [zᵀ, tr(B)]]

    :type K: numpy.ndarray (4, 4)
    :type B: numpy.ndarray (3, 3) Σ a_i b_i r_iᵀ
    :type z: numpy.ndarray (3,) Σ a_i b_i × r_i
    """

    def __init__(self, K: np.ndarray, B: np.ndarray, z: np.ndarray, **kwargs):
        super(DavenportMatrix, self).__init__(**kwargs)
        self.K = K
        self.B = B
        self.z = z

    @property
    def scalar_first(self) -> np.ndarray:
        """K reordered so the scalar part is index 0."""
        order = [3, 0, 1, 2]
        return self.K[np.ix_(order, order)]

    @property
    def serialise(self) -> dict:
        return {"K": self.K.tolist(), "B": self.B.tolist(), "z": self.z.tolist()}


class DavenportSolution(BaseResource):
    """
    :type q: numpy.ndarray unit, scalar-first, sign canonical
    :type lambda_max: float
    :type multiplicity_flag: bool top two eigenvalues within 1e-9
    :type eigenvalues: numpy.ndarray descending
    :type davenport: DavenportMatrix
    """

    def __init__(
        self,
        q: np.ndarray,
        lambda_max: float,
        multiplicity_flag: bool,
        eigenvalues: np.ndarray,
        davenport: DavenportMatrix,
        **kwargs
    ):
        super(DavenportSolution, self).__init__(**kwargs)
        self.q = q
        self.lambda_max = lambda_max
        self.multiplicity_flag = multiplicity_flag
        self.eigenvalues = eigenvalues
        self.davenport = davenport

    @property
    def eigenvalue_gap(self) -> float:
        return float(self.eigenvalues[0] - self.eigenvalues[1])

    def __iter__(self):
        # unpacks as (q, lambda_max, multiplicity_flag)
        return iter((self.q, self.lambda_max, self.multiplicity_flag))

    @property
    def serialise(self) -> dict:
        return {
            "q": self.q.tolist(),
            "lambda_max": self.lambda_max,
            "multiplicity_flag": self.multiplicity_flag,
            "eigenvalues": self.eigenvalues.tolist(),
        }
