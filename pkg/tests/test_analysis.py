import math

import numpy as np
import pytest

from lambda_pt.models.params import SystemParams
from lambda_pt.services import analysis, evolve, figures
from tests.conftest import BROKEN_OMEGA


def test_peak_times_refine_between_samples():
    t = np.linspace(0.0, 20.0, 201)
    y = np.cos(t - 0.03) + 2
    times, values = analysis.peak_times(t, y)
    expected = [0.03 + 2 * math.pi * k for k in (1, 2, 3)]
    assert times == pytest.approx(expected, abs=1e-4)
    assert values == pytest.approx([3.0, 3.0, 3.0], abs=1e-5)


def test_decay_rate_of_damped_oscillation():
    t = np.linspace(0.0, 200.0, 4001)
    y = np.exp(-0.05 * t) * (1 + np.cos(t))
    assert analysis.envelope_decay_rate(t, y) == pytest.approx(0.05, rel=1e-3)
    assert analysis.oscillation_period(t, y) == pytest.approx(2 * math.pi, rel=1e-3)


def test_too_few_maxima():
    t = np.linspace(0.0, 1.0, 11)
    with pytest.raises(ValueError):
        analysis.oscillation_period(t, t**2)


def test_growth_rate_window():
    t = np.linspace(0.0, 10.0, 101)
    y = np.where(t < 5, 1.0, np.exp(0.3 * (t - 5)))
    assert analysis.growth_rate(t, y, window=(5.0, 10.0)) == pytest.approx(0.3)


@pytest.mark.parametrize(
    "panel, period, decay",
    [
        (figures.FIG2_PANELS[0], 177.7, 0.003),
        (figures.FIG2_PANELS[1], 17.77, 0.03),
    ],
)
def test_reference_runs_reproduce_period_and_decay(panel, period, decay):
    traj = figures.lab_trajectory(panel)
    pops = evolve.populations(traj)
    assert traj.times.size == 4096
    assert analysis.oscillation_period(traj.times, pops[:, 2]) == pytest.approx(period, rel=0.01)
    assert analysis.envelope_decay_rate(traj.times, pops[:, 0]) == pytest.approx(decay, rel=0.02)

    total = pops.sum(axis=1)
    assert np.all(total <= 1.0 + 1e-15)
    assert np.all(np.diff(total) <= 1e-15)


def test_broken_regime_growth_rate(broken_pt, ground):
    window = (10 / BROKEN_OMEGA, 30 / BROKEN_OMEGA)
    times = np.linspace(0.0, window[1], 3001)
    traj = evolve.evolve_b(broken_pt, ground, times)
    rate = analysis.growth_rate(times, np.sqrt(evolve.norm(traj)), window=window)
    assert rate == pytest.approx(BROKEN_OMEGA, rel=1e-3)


def test_broken_regime_lab_amplitudes_decay(ground):
    # gamma_pt = 0.05 and gamma2 = 0.06 > Omega.
    p = SystemParams(gamma1=0.11, gamma2=0.06, gamma3=0.01, v_p=0.01, v_c=0.01)
    q = p.effective().to_pt()
    assert q.gamma_pt == pytest.approx(0.05)
    times = np.linspace(0.0, 30 / BROKEN_OMEGA, 601)
    lab = evolve.to_lab_frame(evolve.evolve_b(q, ground, times), p)
    total = evolve.norm(lab)
    assert np.all(np.diff(total) <= 1e-15)
    late = np.abs(lab.amplitudes[300:])
    assert np.all(np.diff(late, axis=0)[100:] <= 0)
