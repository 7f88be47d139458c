"""End-to-end checks of the reproduced results at desk scale."""
import math

import numpy as np
import pytest

from src.asymptotics import (
    fit_leading_order,
    fit_linear,
    fit_power_law,
    meeting_closed_form,
    meeting_elliptic,
    meeting_quadrature,
    peak_value,
    slow_envelope,
)
from src.classical import cl_meet_sum_exact, cl_meet_total, cl_meet_total_exact, cl_monte_carlo, cl_peak
from src.experiments import overall_sweep_tables
from src.meeting import (
    ExchangeClass,
    TwoWalkerSpec,
    decompose,
    joint_amplitudes,
    joint_evolve_oracle,
    meeting_series,
    meeting_series_indist,
    meeting_series_mq,
)
from src.walk import SYMMETRIC, evolve, init_localized, trajectory
from tests.base import Base


def window_means(state, t, centres, half_width):
    """Mean of P and of the symmetric envelope over the occupied sites around each centre."""
    probs = dict(zip(state.positions.tolist(), state.probabilities().tolist()))
    pairs = []
    for c in centres:
        sites = [m for m in range(c - half_width, c + half_width + 1) if (m + t) % 2 == 0]
        pairs.append((
            np.mean([probs[m] for m in sites]),
            np.mean([slow_envelope(m, t, "S") for m in sites]),
        ))
    return pairs


class TestSingleWalker(Base):

    def test_unitarity(self):
        state = evolve(init_localized(0, SYMMETRIC), 500)
        self.assertAlmostEqual(state.norm_squared(), 1.0, delta=1e-12)

    def test_distribution_shape(self):
        t = 100
        state = evolve(init_localized(0, SYMMETRIC), t)
        positions, probs = state.positions, state.probabilities()
        right = positions[positions > 0][np.argmax(probs[positions > 0])]
        left = positions[positions < 0][np.argmax(probs[positions < 0])]
        self.assertLessEqual(abs(right - 70), 3)
        self.assertLessEqual(abs(left + 70), 3)
        for simulated, envelope in window_means(state, t, range(-38, 39, 8), 4):
            self.assertRelClose(simulated, envelope, 0.10)

    def test_envelope_at_two_hundred_steps(self):
        t = 200
        state = evolve(init_localized(0, SYMMETRIC), t)
        limit = int(0.6 * t / math.sqrt(2))
        for simulated, envelope in window_means(state, t, range(-limit + 4, limit - 3, 8), 4):
            self.assertRelClose(simulated, envelope, 0.10)


class TestPeaks(Base):

    def test_symmetric_peak(self):
        t_peak, value = meeting_series_mq("S", 10, 40).peak()
        self.assertGreaterEqual(t_peak, 12)
        self.assertLessEqual(t_peak, 17)
        self.assertAlmostEqual(value, 0.063, delta=0.010)

    def test_biased_peaks(self):
        for kind in ("RL", "LR"):
            _, value = meeting_series_mq(kind, 10, 40).peak()
            self.assertRelClose(value, peak_value(kind, 10), 0.20, msg=kind)


class TestOracle(Base):

    def test_joint_state_equivalence(self):
        worst = 0.0
        for label in ("RL", "S", "LR", "psi-", "phi+"):
            for d in (0, 3, 5):
                spec = TwoWalkerSpec.from_label(label, d)
                dec = decompose(spec)
                for t in (0, 7, 20, 40):
                    gap = np.max(np.abs(joint_evolve_oracle(spec, t).amplitudes - joint_amplitudes(dec, t).amplitudes))
                    worst = max(worst, float(gap))
        self.assertLessEqual(worst, 1e-12)


@pytest.mark.slow
class TestBellStates(Base):

    def test_sign_pairing(self):
        for d in (0, 5, 10):
            series = {
                label: meeting_series(decompose(TwoWalkerSpec.from_label(label, d)), 200).values
                for label in ("psi+", "psi-", "phi+", "phi-")
            }
            symmetric = meeting_series_mq("S", d, 200).values
            self.assertArrayClose(series["psi-"] + series["phi+"], 2 * symmetric, atol=1e-10)
            self.assertArrayClose(series["psi+"] + series["phi-"], 2 * symmetric, atol=1e-10)


@pytest.mark.slow
class TestDecay(Base):

    def fit_window(self, values):
        times = np.arange(200, 2001)
        return times, values[200:2001]

    def test_antisymmetric_bell_decay(self):
        values = meeting_series(decompose(TwoWalkerSpec.from_label("psi-", 10)), 2000).values
        fit = fit_power_law(*self.fit_window(values), window=12)
        self.assertGreaterEqual(fit.slope, -1.1)
        self.assertLessEqual(fit.slope, -0.9)

    def test_fermion_decay(self):
        values = meeting_series_indist(ExchangeClass.FERMION, TwoWalkerSpec.from_label("RL", 10), 2000).values
        fit = fit_power_law(*self.fit_window(values), window=12)
        self.assertGreaterEqual(fit.slope, -1.1)
        self.assertLessEqual(fit.slope, -0.9)

    def test_leading_order_law(self):
        values = meeting_series_mq("RL", 20, 2000).values
        _, spread = fit_leading_order(*self.fit_window(values), 20, window=12)
        self.assertLessEqual(spread, 0.20)

    def test_leading_order_at_zero_separation(self):
        values = meeting_series_mq("S", 0, 2000).values
        prefactor, spread = fit_leading_order(*self.fit_window(values), 0, window=12)
        self.assertGreater(prefactor, 0)
        self.assertLessEqual(spread, 0.20)


class TestClosedForms(Base):

    def test_quadrature_and_elliptic(self):
        for kind in ("RL", "S", "LR"):
            for d in (5, 10, 20):
                for ratio in (2, 3, 5, 10, 25, 50):
                    t = float(ratio * d)
                    self.assertRelClose(meeting_elliptic(kind, t, d).value, meeting_quadrature(kind, t, d), 1e-6)
                self.assertRelClose(meeting_closed_form(kind, math.sqrt(2) * d, d), peak_value(kind, d), 1e-9)


@pytest.mark.slow
class TestClassical(Base):

    def test_sum_equals_closed_form(self):
        for t in range(31):
            for d in range(t + 1):
                self.assertEqual(cl_meet_sum_exact(t, d), cl_meet_total_exact(t, d))

    def test_peak_value(self):
        for d in range(5, 21):
            self.assertRelClose(cl_peak(d)[1], 1 / (math.sqrt(2 * math.pi * math.e) * d), 0.05)

    def test_monte_carlo(self):
        t, d, trials = 200, 10, 10 ** 6
        exact = cl_meet_total(t, d)
        sigma = math.sqrt(exact * (1 - exact) / trials)
        self.assertLessEqual(abs(cl_monte_carlo(t, d, trials, seed=12345) - exact), 3 * sigma)

    def test_monte_carlo_across_pairs(self):
        pairs = [(10, 0), (25, 4), (60, 8), (100, 5), (200, 10), (400, 15), (400, 20), (1000, 20)]
        trials = 200_000
        within = 0
        for i, (t, d) in enumerate(pairs):
            exact = cl_meet_total(t, d)
            sigma = math.sqrt(exact * (1 - exact) / trials)
            if abs(cl_monte_carlo(t, d, trials, seed=1000 + i) - exact) <= 4 * sigma:
                within += 1
        self.assertGreaterEqual(within / len(pairs), 0.99)


@pytest.mark.slow
class TestOverall(Base):

    def test_quantum_beats_classical(self):
        sweep, _ = overall_sweep_tables("S", 100)
        quantum, classical = sweep.column("quantum"), sweep.column("classical")
        for d in range(15, 64):
            self.assertGreater(quantum[d], classical[d], msg=f"d={d}")

    def test_crossover_at_small_separation(self):
        sweep, _ = overall_sweep_tables("S", 100)
        quantum, classical = sweep.column("quantum"), sweep.column("classical")
        self.assertAlmostEqual(quantum[5], 0.859, delta=0.01)
        self.assertAlmostEqual(classical[5], 0.984, delta=0.01)
        for d in (3, 5, 7):
            self.assertLess(quantum[d], classical[d], msg=f"d={d}")

    def test_width_scaling(self):
        _, width = overall_sweep_tables("S", 200)
        Ts = width.column("T")
        self.assertEqual(Ts, [50, 100, 150, 200])
        quantum = fit_linear(Ts, width.column("quantum_width"))
        classical = fit_linear(np.sqrt(Ts), width.column("classical_width"))
        self.assertGreaterEqual(quantum.r_squared, 0.98)
        self.assertGreaterEqual(classical.r_squared, 0.95)
        self.assertGreater(quantum.slope, 0)


class TestSameState(Base):

    def test_boson_and_fermion(self):
        spec = TwoWalkerSpec.from_label("S", 0)
        bosons = meeting_series_indist(ExchangeClass.BOSON, spec, 60).values
        fermions = meeting_series_indist(ExchangeClass.FERMION, spec, 60).values
        squares = [1.0] + [float(np.sum(s.probabilities() ** 2)) for s in trajectory(init_localized(0, SYMMETRIC), 60)]
        self.assertArrayClose(bosons, squares, atol=1e-12)
        self.assertTrue(np.all(fermions == 0.0))
