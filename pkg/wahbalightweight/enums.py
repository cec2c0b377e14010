from enum import Enum


class Method(Enum):
    GDA = "gda"
    GNA = "gna"
    LMA = "lma"
    DAVENPORT = "davenport"


class TerminationReason(Enum):
    GRAD_TOL = "grad_tol"
    LOSS_TOL = "loss_tol"
    MAX_ITERS = "max_iters"
    DIVERGED = "diverged"
    CLOSED_FORM = "closed_form"


class Classification(Enum):
    POSITIVE_DEFINITE = "positive-definite"
    POSITIVE_SEMIDEFINITE = "positive-semidefinite"
    INDEFINITE = "indefinite"
    NEGATIVE_SEMIDEFINITE = "negative-semidefinite"
    NEGATIVE_DEFINITE = "negative-definite"

    @property
    def is_convex(self) -> bool:
        return self in (
            Classification.POSITIVE_DEFINITE,
            Classification.POSITIVE_SEMIDEFINITE,
        )


class WeightScheme(Enum):
    UNIFORM = "uniform"
    CUSTOM = "custom"
