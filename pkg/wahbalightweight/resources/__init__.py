from .baseresource import BaseResource

from .observationresources import ObservationPair, ObservationSet

from .spectralresources import BoundCheck, ConvexityReport, Spectrum

from .solverresources import (
    DavenportMatrix,
    DavenportSolution,
    IterationRecord,
    OptimizerConfig,
    SolveResult,
)

from .simulatorresources import SimConfig, SimMetadata
