import logging
from typing import List, Tuple

import numpy as np

from .quaternion import dcm_from_quat, normalize
from .resources import ObservationPair, ObservationSet, SimConfig, SimMetadata

logger = logging.getLogger(__name__)

# single vector pair and the three quaternions of the published
# numerical example as printed, except the third component of the
# third quaternion, which repeats the second as a typo in print
PUBLISHED_BODY = (-0.712824827533344, -0.225772381096068, 0.664008732763561)
PUBLISHED_REFERENCE = (-0.037453665434217, 0.500499809534146, -0.864926102971707)
PUBLISHED_QUATERNIONS = (
    # unnormalised, ‖q‖ = 0.770268222031943
    (0.420683700201250, 0.400737998146962, 0.095142157864169, 0.496684391636530),
    # unit
    (0.118759061535262, -0.346543560044311, -0.817997262250335, 0.443491065576337),
    # ‖q‖ = 1.777657443309303
    (-0.353622599299341, 0.046434526687823, -0.7929475022018079, -1.550514474779561),
)
PUBLISHED_EIGENVALUES = (
    (9.761874553883407, 6.373252535488999, -0.268864411927401, -1.626747464510996),
    (14.677631236006699, 7.999999999999996, 1.322368763993306, 0.000000000000000),
    (39.127609299877825, 16.640263943011881, 11.433446472169676, 8.640263943011886),
)


def random_unit_quaternion(rng: np.random.Generator) -> np.ndarray:
    """
    Uniform on the 3-sphere, four standard normals normalised.
    """
    while True:
        draw = rng.standard_normal(4)
        if np.linalg.norm(draw) > 1e-12:
            return draw / np.linalg.norm(draw)


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    while True:
        draw = rng.standard_normal(3)
        if np.linalg.norm(draw) > 1e-12:
            return draw / np.linalg.norm(draw)


def substream(seed: int, index: int) -> np.random.Generator:
    """
    Independent generator for trial index of a seeded run, so
    parallel or reordered trials draw identical values.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def generate_set(
    truth: np.ndarray, config: SimConfig, rng: np.random.Generator = None
) -> Tuple[ObservationSet, SimMetadata]:
    """
    References uniform on the sphere, bodies
    normalize(C(truth) r + ε) with ε ~ N(0, σ²I).

    :param truth: Unit quaternion
    :param SimConfig config: Set size, noise, weights and seed
    :param rng: Generator, defaults to default_rng(config.seed)
    """
    rng = rng or np.random.default_rng(config.seed)
    truth = normalize(truth)
    dcm = dcm_from_quat(truth)
    weights = config.normalised_weights()
    pairs: List[ObservationPair] = []
    noise = np.zeros((config.n_pairs, 3))
    for i in range(config.n_pairs):
        reference = random_unit_vector(rng)
        if config.noise_sigma > 0:
            noise[i] = config.noise_sigma * rng.standard_normal(3)
        body = dcm @ reference + noise[i]
        pairs.append(
            ObservationPair(
                body / np.linalg.norm(body), reference, float(weights[i])
            )
        )
    logger.debug(
        "[Simulate: %s]: %s pairs, sigma %s", config.seed, config.n_pairs, config.noise_sigma
    )
    return ObservationSet(pairs=pairs), SimMetadata(truth=truth, config=config, noise=noise)


def published_case() -> Tuple[ObservationPair, List[np.ndarray]]:
    """
    The published single pair example and its three evaluation
    quaternions, with the printed typo in the third one corrected.
    """
    pair = ObservationPair(PUBLISHED_BODY, PUBLISHED_REFERENCE, 1.0)
    return pair, [np.array(q) for q in PUBLISHED_QUATERNIONS]


def random_observation_set(
    rng: np.random.Generator, n_pairs: int, random_weights: bool = True
) -> ObservationSet:
    """
    Unrelated random unit pairs, no common attitude, for
    property checks that must hold for any set.
    """
    if random_weights:
        weights = rng.uniform(0.05, 1.0, n_pairs)
    else:
        weights = np.ones(n_pairs)
    return ObservationSet(
        pairs=[
            ObservationPair(random_unit_vector(rng), random_unit_vector(rng), float(w))
            for w in weights
        ]
    )


def random_quaternion(
    rng: np.random.Generator, norm_low: float, norm_high: float
) -> np.ndarray:
    """Uniform direction with norm uniform in [norm_low, norm_high]."""
    return rng.uniform(norm_low, norm_high) * random_unit_quaternion(rng)
