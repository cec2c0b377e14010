import unittest
from unittest import mock

import numpy as np

from wahbalightweight import optimizers
from wahbalightweight.davenport import solve_davenport
from wahbalightweight.enums import Method, TerminationReason
from wahbalightweight.exceptions import (
    ConfigError,
    DegenerateQuaternionError,
    FactorisationError,
)
from wahbalightweight.model import gradient, loss_total
from wahbalightweight.optimizers import (
    GaussNewton,
    GradientDescent,
    LevenbergMarquardt,
    get_optimizer,
    solve,
    step_gda,
    step_gna,
    step_lma,
)
from wahbalightweight.quaternion import angular_distance, normalize
from wahbalightweight.resources import (
    ObservationPair,
    ObservationSet,
    OptimizerConfig,
    SimConfig,
)
from wahbalightweight.simulator import (
    generate_set,
    published_case,
    random_unit_quaternion,
    substream,
)
from tests.tools import assert_array_close, triad_set

TRUTH = normalize([0.9, 0.1, -0.3, 0.2])


class OptimizerConfigTest(unittest.TestCase):
    def test_defaults(self):
        config = OptimizerConfig()
        self.assertIs(config.method, Method.LMA)
        self.assertEqual(config.step_size, 0.1)
        self.assertEqual(config.kappa, 1e-6)
        assert config.normalize_each_step
        self.assertEqual(config.grad_tol, 1e-10)
        self.assertEqual(config.loss_tol, 1e-14)
        self.assertEqual(config.max_iters, 200)

    def test_method_string(self):
        self.assertIs(OptimizerConfig(method="gda").method, Method.GDA)

    def test_invalid(self):
        for kwargs in (
            {"method": "newton"},
            {"method": "davenport"},
            {"step_size": 0},
            {"kappa": -1e-6},
            {"grad_tol": float("nan")},
            {"loss_tol": True},
            {"max_iters": 0},
            {"max_iters": 2.5},
        ):
            with self.assertRaises(ConfigError, msg=kwargs):
                OptimizerConfig(**kwargs)

    def test_serialise(self):
        serialised = OptimizerConfig(method=Method.GNA).serialise
        self.assertEqual(serialised["method"], "gna")
        self.assertEqual(serialised["max_iters"], 200)


class RegistryTest(unittest.TestCase):
    def test_get_optimizer(self):
        self.assertIs(get_optimizer("gda"), GradientDescent)
        self.assertIs(get_optimizer(Method.GNA), GaussNewton)
        self.assertIs(get_optimizer(Method.LMA), LevenbergMarquardt)
        with self.assertRaises(ConfigError):
            get_optimizer(Method.DAVENPORT)
        with self.assertRaises(ConfigError):
            get_optimizer("bfgs")

    def test_method_mismatch(self):
        with self.assertRaises(ConfigError):
            GaussNewton(OptimizerConfig(method=Method.LMA))

    def test_default_config(self):
        optimizer = GradientDescent()
        self.assertIs(optimizer.config.method, Method.GDA)
        self.assertEqual(str(optimizer), "GradientDescent")
        self.assertEqual(repr(optimizer), "<GradientDescent>")

    @mock.patch("wahbalightweight.optimizers.OPTIMIZERS")
    def test_solve_dispatch(self, mock_optimizers):
        observations = triad_set(TRUTH)
        config = OptimizerConfig(method=Method.GNA)
        solve(observations, [1, 0, 0, 0], config)
        mock_optimizers.__getitem__.assert_called_with(Method.GNA)
        mock_optimizers.__getitem__.return_value.assert_called_with(config)
        mock_optimizers.__getitem__.return_value.return_value.solve.assert_called_with(
            observations, [1, 0, 0, 0]
        )


class StepTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(51)
        self.observations = triad_set(TRUTH)

    def test_fixed_points(self):
        for step in (
            lambda q: step_lma(self.observations, q, 1e-6),
            lambda q: step_gna(self.observations, q),
            lambda q: step_gda(self.observations, q, 0.1),
        ):
            assert_array_close(self, step(TRUTH), TRUTH, 1e-12)

    def test_aligned_identity(self):
        observations = ObservationSet(pairs=[ObservationPair((0.0, 0.0, 1.0), (0.0, 0.0, 1.0))])
        identity = np.array([1.0, 0.0, 0.0, 0.0])
        assert_array_close(self, step_lma(observations, identity, 1e-6), identity, 1e-12)
        assert_array_close(self, step_gna(observations, identity), identity, 1e-12)

    def test_lma_invalid_kappa(self):
        with self.assertRaises(ConfigError):
            step_lma(self.observations, TRUTH, 0.0)

    @mock.patch("wahbalightweight.optimizers.levenbergmarquardt.np.linalg.cholesky")
    def test_lma_factorisation_error(self, mock_cholesky):
        mock_cholesky.side_effect = np.linalg.LinAlgError("not positive definite")
        with self.assertRaises(FactorisationError):
            step_lma(self.observations, TRUTH, 1e-6)

    def test_gda_invalid_step(self):
        with self.assertRaises(ConfigError):
            step_gda(self.observations, TRUTH, -0.1)

    def test_gda_descent(self):
        for _ in range(50):
            q = random_unit_quaternion(self.rng)
            if np.linalg.norm(gradient(self.observations, q)) < 1e-6:
                continue
            self.assertLess(
                loss_total(self.observations, step_gda(self.observations, q, 1e-3)),
                loss_total(self.observations, q),
            )

    def test_gna_local_convergence(self):
        for _ in range(10):
            direction = self.rng.standard_normal(4)
            q = normalize(TRUTH + 4e-4 * direction / np.linalg.norm(direction))
            before = loss_total(self.observations, q)
            after = loss_total(self.observations, normalize(step_gna(self.observations, q)))
            self.assertLessEqual(after, before / 10)

    def test_gna_singular_single_pair(self):
        pair, quaternions = published_case()
        observations = ObservationSet(pairs=[pair])
        with self.assertLogs("wahbalightweight.optimizers.gaussnewton", level="DEBUG"):
            q = step_gna(observations, quaternions[1])
        assert np.all(np.isfinite(q))


class SolveTest(unittest.TestCase):
    def setUp(self):
        self.observations = triad_set(TRUTH)

    def test_trace(self):
        result = LevenbergMarquardt().solve(self.observations, [1, 0, 0, 0])
        self.assertEqual([record.index for record in result.trace], list(range(len(result.trace))))
        assert_array_close(self, result.final_q, result.trace[-1].q, 0)
        self.assertEqual(result.final_loss, result.trace[-1].loss)
        self.assertEqual(result.iterations, len(result.trace) - 1)
        for record in result.trace:
            self.assertAlmostEqual(np.linalg.norm(record.q), 1.0, delta=1e-12)
            self.assertGreaterEqual(record.min_hessian_eig, -1e-9)
        assert result.converged
        self.assertIsNotNone(result.elapsed_time)

    def test_converges_at_start(self):
        result = solve(self.observations, TRUTH)
        self.assertIs(result.termination_reason, TerminationReason.GRAD_TOL)
        self.assertEqual(result.iterations, 0)

    def test_degenerate_start(self):
        with self.assertRaises(DegenerateQuaternionError):
            solve(self.observations, [0, 0, 0, 0])
        with self.assertRaises(DegenerateQuaternionError):
            solve(
                self.observations,
                [0, 0, 0, 0],
                OptimizerConfig(normalize_each_step=False),
            )

    def test_max_iters(self):
        config = OptimizerConfig(method=Method.GDA, step_size=1e-4, max_iters=3)
        result = solve(self.observations, [0, 1, 0, 0], config)
        self.assertIs(result.termination_reason, TerminationReason.MAX_ITERS)
        assert not result.converged
        self.assertEqual(len(result.trace), 4)

    def test_diverged(self):
        config = OptimizerConfig(
            method=Method.GDA, step_size=10.0, normalize_each_step=False
        )
        with self.assertLogs("wahbalightweight.optimizers.baseoptimizer", level="WARNING"):
            result = solve(self.observations, [2, 0, 0, 0], config)
        self.assertIs(result.termination_reason, TerminationReason.DIVERGED)
        assert not result.converged
        self.assertGreater(len(result.trace), 1)

    def test_record_hessian_off(self):
        config = OptimizerConfig(record_hessian=False)
        result = solve(self.observations, [1, 0, 0, 0], config)
        assert all(record.min_hessian_eig is None for record in result.trace)

    def test_gda_triad(self):
        config = OptimizerConfig(method=Method.GDA)
        result = solve(self.observations, [0.5, 0.5, 0.5, 0.5], config)
        assert result.converged
        self.assertLess(angular_distance(result.final_q, TRUTH), 1e-4)

    def test_all_methods_single_pair(self):
        pair, _ = published_case()
        observations = ObservationSet(pairs=[pair])
        for method in (Method.GDA, Method.GNA, Method.LMA):
            result = solve(observations, [0.5, 0.5, 0.5, 0.5], OptimizerConfig(method=method))
            self.assertLess(result.final_loss, 1e-10, method)

    def test_lma_agrees_with_davenport(self):
        for index in range(20):
            rng = substream(61, index)
            truth = random_unit_quaternion(rng)
            observations, _ = generate_set(truth, SimConfig(n_pairs=3), rng)
            oracle = solve_davenport(observations)
            for _ in range(100):
                result = solve(observations, random_unit_quaternion(rng))
                assert result.converged
                self.assertLess(angular_distance(result.final_q, oracle.q), 1e-6)
                self.assertGreaterEqual(
                    result.final_loss, 2 * (1 - oracle.lambda_max) - 1e-9
                )

    def test_lma_unnormalised(self):
        rng = substream(62, 0)
        observations, _ = generate_set(TRUTH, SimConfig(n_pairs=3, noise_sigma=0.01), rng)
        oracle = solve_davenport(observations)
        config = OptimizerConfig(normalize_each_step=False, max_iters=500)
        result = solve(observations, normalize(TRUTH + [0.05, -0.05, 0.02, 0.0]), config)
        assert result.converged
        self.assertAlmostEqual(float(result.final_q @ result.final_q), oracle.lambda_max, delta=1e-6)
        self.assertLess(angular_distance(result.final_q, oracle.q), 1e-6)

    def test_serialise(self):
        result = solve(self.observations, [1, 0, 0, 0])
        serialised = result.serialise
        self.assertEqual(serialised["method"], "lma")
        self.assertEqual(serialised["termination_reason"], result.termination_reason.value)
        self.assertEqual(len(serialised["final_q"]), 4)
        self.assertEqual(result.trace[0].serialise["iter"], 0)
