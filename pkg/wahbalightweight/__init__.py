import logging

from .davenport import build_K, solve_davenport
from .exceptions import WahbaError
from .optimizers import get_optimizer, solve
from .resources import ObservationPair, ObservationSet, OptimizerConfig
from .spectral import analyze, eig_sym4
from . import model, quaternion
from .__version__ import __title__, __version__, __author__

# Set default logging handler to avoid "No handler found" warnings.
logging.getLogger(__name__).addHandler(logging.NullHandler())
