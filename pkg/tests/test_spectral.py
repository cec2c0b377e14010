import unittest
from unittest import mock

import numpy as np

from wahbalightweight import spectral
from wahbalightweight.enums import Classification
from wahbalightweight.exceptions import ConfigError, NonSymmetricError, ObservationError
from wahbalightweight.model import hessian_total
from wahbalightweight.resources import ObservationSet, Spectrum
from wahbalightweight.simulator import (
    PUBLISHED_EIGENVALUES,
    published_case,
    random_observation_set,
    random_quaternion,
    random_unit_quaternion,
)
from tests.tools import assert_array_close


def characteristic_roots(matrix):
    """
    Roots of det(λI − M) from its explicitly expanded coefficients,
    c_k built from traces of powers (Newton identities).
    """
    p1 = np.trace(matrix)
    p2 = np.trace(matrix @ matrix)
    p3 = np.trace(matrix @ matrix @ matrix)
    p4 = np.trace(matrix @ matrix @ matrix @ matrix)
    e1 = p1
    e2 = (e1 * p1 - p2) / 2
    e3 = (e2 * p1 - e1 * p2 + p3) / 3
    e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4
    roots = np.roots([1.0, -e1, e2, -e3, e4])
    return np.sort(roots.real)[::-1]


class EigSym4Test(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(31)

    def random_symmetric(self):
        a = self.rng.uniform(-1, 1, (4, 4))
        return a + a.T

    def test_diagonal(self):
        spectrum = spectral.eig_sym4(np.diag([1.0, 3.0, 2.0, -1.0]))
        assert_array_close(self, spectrum.eigenvalues, [3, 2, 1, -1], 0)
        assert_array_close(self, np.abs(spectrum.eigenvectors), np.eye(4)[:, [1, 2, 0, 3]], 0)
        self.assertEqual(spectrum.sweeps, 0)

    def test_invariants(self):
        for _ in range(200):
            matrix = self.random_symmetric()
            spectrum = spectral.eig_sym4(matrix)
            scale = max(1.0, np.max(np.abs(matrix)))
            assert np.all(np.diff(spectrum.eigenvalues) <= 0)
            assert_array_close(self, spectrum.reconstruct(), matrix, 1e-10 * scale)
            assert_array_close(
                self, spectrum.eigenvectors.T @ spectrum.eigenvectors, np.eye(4), 1e-10
            )
            self.assertAlmostEqual(
                spectrum.eigenvalues.sum(), np.trace(matrix), delta=1e-10 * scale
            )

    def test_sweeps_to_full_convergence(self):
        for _ in range(200):
            matrix = self.random_symmetric()
            spectrum = spectral.eig_sym4(matrix)
            self.assertGreater(spectrum.sweeps, 0)
            self.assertLess(spectrum.sweeps, spectral.MAX_SWEEPS)
            rotated = spectrum.eigenvectors.T @ matrix @ spectrum.eigenvectors
            off_diagonal = np.sqrt(2.0 * np.sum(np.triu(rotated, 1) ** 2))
            self.assertLessEqual(off_diagonal, 1e-12 * np.linalg.norm(matrix))

    def test_off_diagonal_norm(self):
        matrix = np.diag([1e8, -1e8, 3.0, 2.0])
        matrix[0, 1] = matrix[1, 0] = 1e-9
        self.assertAlmostEqual(spectral._off_diagonal(matrix), 2 ** 0.5 * 1e-9, delta=1e-24)
        self.assertEqual(spectral._off_diagonal(np.diag([1.0, 2.0, 3.0, 4.0])), 0.0)

    def test_characteristic_polynomial_oracle(self):
        for _ in range(1000):
            matrix = self.random_symmetric()
            # well separated roots keep the polynomial oracle accurate
            roots = characteristic_roots(matrix)
            if np.min(np.diff(-roots)) < 1e-3:
                continue
            assert_array_close(
                self, spectral.eig_sym4(matrix).eigenvalues, roots, 1e-8
            )

    def test_repeated_eigenvalues(self):
        spectrum = spectral.eig_sym4(2.0 * np.eye(4))
        assert_array_close(self, spectrum.eigenvalues, [2, 2, 2, 2], 0)
        q = random_unit_quaternion(self.rng)
        matrix = np.eye(4) + 8 * np.outer(q, q)
        assert_array_close(
            self, spectral.eig_sym4(matrix).eigenvalues, [9, 1, 1, 1], 1e-12
        )

    def test_deterministic(self):
        matrix = self.random_symmetric()
        first, second = spectral.eig_sym4(matrix), spectral.eig_sym4(matrix)
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.eigenvectors, second.eigenvectors)

    def test_input_not_modified(self):
        matrix = self.random_symmetric()
        original = matrix.copy()
        spectral.eig_sym4(matrix)
        assert np.array_equal(matrix, original)

    def test_non_symmetric(self):
        matrix = self.random_symmetric()
        matrix[0, 1] += 1e-6
        with self.assertRaises(NonSymmetricError):
            spectral.eig_sym4(matrix)

    def test_rounding_asymmetry_accepted(self):
        matrix = self.random_symmetric()
        matrix[0, 1] += 1e-15
        spectral.eig_sym4(matrix)

    def test_invalid_shape(self):
        with self.assertRaises(ObservationError):
            spectral.eig_sym4(np.eye(3))
        with self.assertRaises(ObservationError):
            spectral.eig_sym4(np.full((4, 4), np.nan))

    @mock.patch("wahbalightweight.spectral.MAX_SWEEPS", 0)
    def test_sweep_cap_logs(self):
        with self.assertLogs("wahbalightweight.spectral", level="WARNING"):
            spectrum = spectral.eig_sym4(self.random_symmetric())
        self.assertEqual(spectrum.sweeps, 0)


def spectrum_of(values):
    return Spectrum(eigenvalues=np.array(values, dtype=float), eigenvectors=np.eye(4))


class ClassifyTest(unittest.TestCase):
    def test_classes(self):
        cases = [
            ([3, 2, 1, 0.5], Classification.POSITIVE_DEFINITE),
            ([8, 8, 8, 0], Classification.POSITIVE_SEMIDEFINITE),
            ([8, 8, 8, -1e-12], Classification.POSITIVE_SEMIDEFINITE),
            ([1, 0, -1, -2], Classification.INDEFINITE),
            ([0, -1, -2, -3], Classification.NEGATIVE_SEMIDEFINITE),
            ([-0.5, -1, -2, -3], Classification.NEGATIVE_DEFINITE),
            ([0, 0, 0, 0], Classification.POSITIVE_SEMIDEFINITE),
        ]
        for values, expected in cases:
            self.assertIs(spectral.classify(spectrum_of(values)), expected, values)

    def test_scaled_tolerance(self):
        # τ = 1e-9 · 1e4
        spectrum = spectrum_of([1e4, 1, 1, -5e-6])
        self.assertIs(spectral.classify(spectrum), Classification.POSITIVE_SEMIDEFINITE)
        self.assertIs(
            spectral.classify(spectrum, scale_tol=1e-12), Classification.INDEFINITE
        )

    def test_invalid_tolerance(self):
        with self.assertRaises(ConfigError):
            spectral.classify(spectrum_of([1, 1, 1, 1]), scale_tol=0)

    def test_rank_estimate(self):
        self.assertEqual(spectral.rank_estimate(spectrum_of([14.6, 8, 1.3, 1e-15])), 3)
        self.assertEqual(spectral.rank_estimate(spectrum_of([1, 1, -1, -1])), 4)
        self.assertEqual(spectral.rank_estimate(spectrum_of([0, 0, 0, 0])), 0)

    def test_published_classifications(self):
        expected = [
            Classification.INDEFINITE,
            Classification.POSITIVE_SEMIDEFINITE,
            Classification.POSITIVE_DEFINITE,
        ]
        for values, classification in zip(PUBLISHED_EIGENVALUES, expected):
            self.assertIs(spectral.classify(spectrum_of(values)), classification)
        self.assertEqual(spectral.rank_estimate(spectrum_of(PUBLISHED_EIGENVALUES[1])), 3)


class BoundTest(unittest.TestCase):
    def setUp(self):
        self.pair, self.quaternions = published_case()
        self.observations = ObservationSet(pairs=[self.pair])

    def spectrum_at(self, q):
        return spectral.eig_sym4(hessian_total(self.observations, q))

    def test_weyl_bounds(self):
        self.assertEqual(spectral.weyl_bounds([1, 0, 0, 0]), (0.0, 16.0))
        lower, upper = spectral.weyl_bounds([2, 0, 0, 0])
        self.assertEqual((lower, upper), (12.0, 52.0))

    def test_inside_unit_ball(self):
        q = self.quaternions[0]
        lower, upper, satisfied = spectral.bound_check(q, self.spectrum_at(q), 1)
        self.assertAlmostEqual(lower, -1.626747464510996, delta=1e-9)
        self.assertAlmostEqual(upper, 12 * float(q @ q) + 4, delta=1e-12)
        self.assertAlmostEqual(upper, 11.119757606467, delta=1e-9)
        assert satisfied
        check = spectral.bound_check(q, self.spectrum_at(q), 1)
        self.assertLess(abs(check.lower_margin), 1e-9)
        self.assertAlmostEqual(check.upper_margin, upper - 9.761874553883407, delta=1e-9)

    def test_unit(self):
        q = self.quaternions[1]
        lower, upper, satisfied = spectral.bound_check(q, self.spectrum_at(q))
        self.assertAlmostEqual(lower, 0.0, delta=1e-10)
        self.assertAlmostEqual(upper, 16.0, delta=1e-10)
        assert satisfied

    def test_outside_unit_ball(self):
        q = self.quaternions[2]
        check = spectral.bound_check(q, self.spectrum_at(q), 1)
        self.assertAlmostEqual(check.lower, 8.640263943011886, delta=1e-9)
        self.assertAlmostEqual(check.lower, self.spectrum_at(q).min_eig, delta=1e-9)
        assert check.satisfied

    def test_violation(self):
        check = spectral.bound_check([1, 0, 0, 0], spectrum_of([17, 1, 1, -0.5]))
        assert not check.satisfied
        self.assertAlmostEqual(check.lower_margin, -0.5)
        self.assertAlmostEqual(check.upper_margin, -1.0)

    def test_invalid_pairs(self):
        with self.assertRaises(ConfigError):
            spectral.bound_check([1, 0, 0, 0], spectrum_of([1, 1, 1, 1]), 0)

    def test_shifted_spectrum(self):
        rng = np.random.default_rng(32)
        for _ in range(100):
            pair = random_observation_set(rng, 1)[0]
            q = random_quaternion(rng, 0.3, 2.0)
            norm2 = float(q @ q)
            assert_array_close(
                self,
                spectral.shifted_spectrum(pair, q).eigenvalues,
                4 * norm2 + np.array([4, 4, -4, -4]),
                1e-9,
            )


class AnalyzeTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(33)

    def test_published_cases(self):
        pair, quaternions = published_case()
        observations = ObservationSet(pairs=[pair])
        classes = [
            spectral.analyze(observations, q).classification for q in quaternions
        ]
        self.assertEqual(
            classes,
            [
                Classification.INDEFINITE,
                Classification.POSITIVE_SEMIDEFINITE,
                Classification.POSITIVE_DEFINITE,
            ],
        )
        report = spectral.analyze(observations, quaternions[1])
        self.assertEqual(report.rank_estimate, 3)
        assert report.bound_satisfied
        self.assertLessEqual(report.min_eig, report.max_eig)
        serialised = report.serialise
        self.assertEqual(serialised["classification"], "positive-semidefinite")
        self.assertEqual(len(serialised["eigenvalues"]), 4)

    def test_unit_norm_convex(self):
        for _ in range(10000):
            observations = random_observation_set(self.rng, int(self.rng.integers(1, 7)))
            report = spectral.analyze(observations, random_unit_quaternion(self.rng))
            assert report.classification.is_convex
            self.assertGreaterEqual(report.min_eig, -1e-9)
            self.assertLessEqual(report.max_eig, 16 + 1e-9)

    def test_outside_ball_convex(self):
        for _ in range(200):
            pair = random_observation_set(self.rng, 1)
            report = spectral.analyze(pair, random_quaternion(self.rng, 1.0, 2.0))
            self.assertGreaterEqual(report.min_eig, -1e-9)

    def test_inside_ball_indefinite(self):
        indefinite = 0
        for _ in range(1000):
            pair = random_observation_set(self.rng, 1)
            report = spectral.analyze(pair, random_quaternion(self.rng, 0.3, 0.9))
            indefinite += report.classification is Classification.INDEFINITE
        self.assertGreater(indefinite, 0)

    def test_half_norm_single_pair(self):
        pair = random_observation_set(self.rng, 1)
        q = 0.5 * random_unit_quaternion(self.rng)
        report = spectral.analyze(pair, q)
        self.assertIs(report.classification, Classification.INDEFINITE)
        self.assertAlmostEqual(report.min_eig, -3.0, delta=1e-9)
