from typing import Iterable, Type, Union

from .baseoptimizer import BaseOptimizer
from .gradientdescent import GradientDescent, step_gda
from .gaussnewton import GaussNewton, step_gna
from .levenbergmarquardt import LevenbergMarquardt, step_lma
from ..enums import Method
from ..exceptions import ConfigError
from ..resources import ObservationSet, OptimizerConfig, SolveResult

OPTIMIZERS = {
    Method.GDA: GradientDescent,
    Method.GNA: GaussNewton,
    Method.LMA: LevenbergMarquardt,
}


def get_optimizer(method: Union[Method, str]) -> Type[BaseOptimizer]:
    """
    :param method: gda, gna or lma
    :raises: ConfigError if method has no iterative optimizer
    """
    try:
        return OPTIMIZERS[Method(method)]
    except (KeyError, ValueError):
        raise ConfigError("no iterative optimizer for method %r" % (method,))


def solve(
    observations: ObservationSet,
    q0: Iterable[float],
    config: OptimizerConfig = None,
) -> SolveResult:
    """
    Minimises loss_total from q0 with the configured method.

    :param ObservationSet observations: Weighted observation pairs
    :param q0: Initial quaternion
    :param OptimizerConfig config: Defaults to LMA with per-step normalisation
    """
    config = config or OptimizerConfig()
    return get_optimizer(config.method)(config).solve(observations, q0)
