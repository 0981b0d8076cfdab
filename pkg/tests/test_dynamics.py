import math

import numpy as np
import pytest

from hypermotifs.dynamics import (
    DAMPED_OSCILLATION,
    OFF,
    ON,
    SUSTAINED_OSCILLATION,
    CircuitError,
    ClassifyConfig,
    build_circuit,
    catalog_entry,
    catalog_ids,
    circuit_library,
    classify_steady_state,
    find_fixed_points,
    hill_value,
    integrate,
    phase_relation,
    pulse_metrics,
)
from hypermotifs.dynamics.integrate import Trajectory
from hypermotifs.dynamics.model import NumericError


# --- Hill factors and model template --------------------------------------------

def test_hill_values():
    assert hill_value(0.3, +1, 3, 0.3) == pytest.approx(0.5)
    assert hill_value(0.0, +1, 2, 0.3) == 0.0
    assert hill_value(0.0, -1, 2, 0.3) == 1.0
    assert hill_value(0.3, -1, 3, 0.3) == pytest.approx(0.5)


def test_build_circuit_validation():
    with pytest.raises(CircuitError, match="k must be positive"):
        build_circuit(["X", "Y"], [("X", "Y", 1, 1, 0.0)])
    with pytest.raises(CircuitError, match="n must be >= 1"):
        build_circuit(["X", "Y"], [("X", "Y", 1, 0.5, 0.1)])
    with pytest.raises(CircuitError, match="unknown variables"):
        build_circuit(["X"], [("X", "Q", 1, 1, 0.1)])


def test_constant_production_model():
    m = build_circuit(["X"], [], constants={"X": 1.0})
    assert m.rhs([0.0])[0] == 1.0
    assert m.rhs([1.0])[0] == 0.0


def test_m15_structure():
    m = circuit_library("M14-16")
    # Y' at X = k_xy should be 0.5 - Y
    state = np.array([0.01, 0.2, 0.0])
    assert m.rhs(state)[1] == pytest.approx(0.5 - 0.2)


def test_m19_structure():
    m = circuit_library("M17-19")
    # Z' = h+(X; 0.01) * h-(Y; 0.5) - Z
    state = np.array([0.01, 0.5, 0.1])
    expect = 0.5 * 0.5 - 0.1
    assert m.rhs(state)[2] == pytest.approx(expect)


def test_isolated_decay_jacobian():
    m = build_circuit(["X"], [], constants={"X": 0.0})
    assert m.rhs([0.3])[0] == pytest.approx(-0.3)
    assert m.jacobian([0.3]) == pytest.approx(np.array([[-1.0]]))


# --- integration -----------------------------------------------------------------

def test_exponential_closed_form():
    m = build_circuit(["X"], [], constants={"X": 1.0})
    traj = integrate(m, (0.0,), horizon=1.0, step=0.01)
    assert abs(traj.final_state[0] - (1.0 - math.exp(-1.0))) < 1e-6


def test_fixed_point_start_stays_constant():
    m = circuit_library("M3")  # origin is an exact fixed point
    traj = integrate(m, (0.0,), horizon=5.0, step=0.01)
    assert np.all(traj.states == 0.0)


def test_integrate_validates_arguments():
    m = circuit_library("M3")
    with pytest.raises(ValueError, match="step"):
        integrate(m, (0.1,), horizon=1.0, step=0.0)
    with pytest.raises(ValueError, match="horizon"):
        integrate(m, (0.1,), horizon=0.001, step=0.01)
    with pytest.raises(ValueError, match="shape"):
        integrate(m, (0.1, 0.2), horizon=1.0, step=0.01)


def test_forward_invariance_of_production_box():
    # Hill factors stay in [0, 1], so states never exceed the production cap
    for mid in ("M6-7", "M10-11", "M66-69", "M27-30-coherent"):
        entry = catalog_entry(mid)
        traj = integrate(entry.model, np.minimum(entry.model.max_production, 1.0),
                         horizon=50.0, step=0.01)
        cap = entry.model.max_production
        assert np.all(traj.states <= cap + 1e-9)
        assert np.all(traj.states >= 0.0)


def test_trajectory_series_lookup():
    entry = catalog_entry("M8-9")
    traj = integrate(entry.model, entry.default_init, horizon=1.0, step=0.01)
    assert traj.series("X").shape == traj.times.shape
    with pytest.raises(CircuitError, match="unknown variable"):
        traj.series("Q")


# --- jacobian vs finite differences ----------------------------------------------

@pytest.mark.parametrize("mid", ["M3", "M8-9", "M17-19-sl-y", "M62-65", "M47-51"])
def test_jacobian_matches_finite_differences(mid):
    model = circuit_library(mid)
    rng = np.random.default_rng(hash(mid) % 2**32)
    for _ in range(6):
        x = rng.uniform(0.05, 2.0, size=model.dim)
        jac = model.jacobian(x)
        fd = np.zeros_like(jac)
        h = 1e-6
        for j in range(model.dim):
            xp, xm = x.copy(), x.copy()
            xp[j] += h
            xm[j] -= h
            fd[:, j] = (model.rhs(xp) - model.rhs(xm)) / (2 * h)
        assert np.all(np.abs(jac - fd) <= 1e-6 * (1.0 + np.abs(jac)))


def test_ffl_template_jacobian_lower_triangular():
    model = circuit_library("M14-16")
    for state in ([0.5, 0.5, 0.5], [1.0, 0.9, 0.8], [0.2, 0.01, 0.7]):
        jac = model.jacobian(state)
        assert np.allclose(np.triu(jac, k=1), 0.0)
        assert np.allclose(np.diag(jac), -1.0)
        assert np.allclose(np.linalg.eigvals(jac), -1.0)


# --- fixed points ------------------------------------------------------------------

def test_m3_fixed_points_against_root_oracle():
    n, k = 3, 0.3
    fps = find_fixed_points(circuit_library("M3", n=n, k=k))
    # nonzero fixed points solve x^3 - x^2 + k^3 = 0 (plus the origin)
    roots = np.roots([1.0, -1.0, 0.0, k**3])
    expected = sorted({0.0} | {float(r.real) for r in roots if abs(r.imag) < 1e-9 and r.real >= 0})
    assert len(fps) == 3
    assert [p.point[0] for p in fps] == pytest.approx(expected, abs=1e-6)
    assert [p.stability for p in fps] == ["stable", "unstable", "stable"]
    for p in fps:
        assert p.residual < 1e-8


def test_m3_needs_cooperativity_for_bistability():
    fps = find_fixed_points(circuit_library("M3", n=1))
    stable = [p for p in fps if p.stability == "stable"]
    assert len(stable) == 1
    assert stable[0].point[0] == pytest.approx(0.7)


def test_toggle_fixed_points():
    fps = find_fixed_points(circuit_library("M4-5"))
    assert len(fps) == 3
    labels = sorted(p.stability for p in fps)
    assert labels == ["saddle", "stable", "stable"]


def test_toggle_with_self_loops_gains_off_state():
    fps_plain = find_fixed_points(circuit_library("M4-5"))
    fps_sl = find_fixed_points(circuit_library("M10-11"))
    def near_origin(fps):
        return [p for p in fps if max(abs(v) for v in p.point) < 1e-8]
    assert not near_origin(fps_plain)
    origin = near_origin(fps_sl)
    assert len(origin) == 1
    assert origin[0].stability == "stable"


def test_oscillator_spiral_fixed_point():
    fps = find_fixed_points(circuit_library("M8-9"))
    assert len(fps) == 1
    assert fps[0].stability == "spiral-stable"
    eigs = np.array(fps[0].eigenvalues)
    assert np.max(np.abs(eigs.imag)) > 0.1
    assert np.max(eigs.real) < 0


def test_m12_13_extra_states():
    # oscillator plus self-loops: besides the focus, an OFF state and an
    # activator-only state appear
    fps = find_fixed_points(circuit_library("M12-13"))
    pts = [p.point for p in fps]
    assert any(max(abs(v) for v in pt) < 1e-8 for pt in pts)  # OFF
    assert any(pt[0] < 1e-8 and pt[1] > 0.5 for pt in pts)  # only Y on
    assert not any(pt[0] > 0.5 and pt[1] < 1e-8 for pt in pts)  # X needs Y


def test_two_ffl_interaction_spiral():
    # interacting FFLs gain complex eigenvalues, impossible for a lone FFL
    fps = find_fixed_points(circuit_library("M52-57"), random_starts=200, seed=3)
    assert fps
    assert any(p.stability.startswith("spiral") for p in fps)


def test_fixed_points_are_genuine_zeros():
    for mid in ("M3", "M4-5", "M10-11", "S3-S4-sl-y"):
        model = circuit_library(mid)
        for p in find_fixed_points(model):
            assert np.max(np.abs(model.rhs(np.array(p.point)))) < 1e-8


# --- classification ---------------------------------------------------------------

def test_lock_on_off_state():
    entry = catalog_entry("M6-7")
    traj = integrate(entry.model, (0.0, 0.0), horizon=50.0, step=0.01)
    cls = classify_steady_state(traj)
    assert cls.label == OFF


def test_lock_on_on_state():
    entry = catalog_entry("M6-7")
    traj = integrate(entry.model, (0.9, 0.9), horizon=50.0, step=0.01)
    cls = classify_steady_state(traj)
    assert cls.label == ON


def test_oscillator_damped():
    entry = catalog_entry("M8-9")
    traj = integrate(entry.model, (0.1, 0.2), horizon=14.0, step=0.01)
    cls = classify_steady_state(traj)
    assert cls.per_variable["Y"].label == DAMPED_OSCILLATION


def test_m66_69_sustained_all_variables():
    entry = catalog_entry("M66-69")
    traj = integrate(entry.model, entry.default_init, horizon=200.0, step=0.01)
    cls = classify_steady_state(traj)
    for name in ("X", "Y", "Z", "W"):
        assert cls.per_variable[name].label == SUSTAINED_OSCILLATION


def test_classification_requires_enough_samples():
    entry = catalog_entry("M3")
    traj = integrate(entry.model, (0.5,), horizon=0.05, step=0.01)
    with pytest.raises(ValueError, match="too short"):
        classify_steady_state(traj)


def test_feedforward_models_never_sustain():
    rng = np.random.default_rng(123)
    for trial in range(25):
        model = _random_feedforward_model(rng)
        x0 = rng.uniform(0.0, 1.0, size=model.dim)
        traj = integrate(model, x0, horizon=100.0, step=0.01)
        cls = classify_steady_state(traj)
        assert cls.label != SUSTAINED_OSCILLATION
        # triangularizable by construction: variables are in topological order
        jac = model.jacobian(rng.uniform(0.1, 1.0, size=model.dim))
        assert np.allclose(np.triu(jac, k=1), 0.0)
        assert np.allclose(np.diag(jac), -1.0)


def _random_feedforward_model(rng):
    d = int(rng.integers(2, 6))
    names = [f"V{i}" for i in range(d)]
    edges = []
    for j in range(1, d):
        for i in range(j):
            if rng.random() < 0.6:
                sign = 1 if rng.random() < 0.7 else -1
                n = float(rng.integers(1, 4))
                k = float(rng.uniform(0.05, 1.0))
                edges.append((names[i], names[j], sign, n, k))
    return build_circuit(names, edges)


# --- pulse metrics -----------------------------------------------------------------

def _box_trajectory(width=5.0, step=0.01, total=20.0):
    model = build_circuit(["X"], [], constants={"X": 0.0})
    times = np.arange(0, total + step / 2, step)
    states = np.where((times >= 2.0) & (times < 2.0 + width), 1.0, 0.0)[:, None]
    return Trajectory(times=times, states=states, step=step, model=model)


def test_box_pulse_width():
    traj = _box_trajectory(width=5.0)
    pm = pulse_metrics(traj, "X")
    assert pm.pulse_width == pytest.approx(5.0, abs=0.02)
    assert pm.peak_value == 1.0


def test_rise_delay_closed_form():
    m = build_circuit(["X"], [], constants={"X": 1.0})
    traj = integrate(m, (0.0,), horizon=10.0, step=0.01)
    pm = pulse_metrics(traj, "X")
    assert pm.pulse_width is None
    assert pm.response_delay == pytest.approx(math.log(2.0), abs=0.02)


def test_monotone_decay_has_no_features():
    m = build_circuit(["X"], [], constants={"X": 0.0})
    traj = integrate(m, (1.0,), horizon=10.0, step=0.01)
    pm = pulse_metrics(traj, "X")
    assert pm.response_delay is None
    assert pm.pulse_width is not None  # decay from the peak counts as above-half time


# --- phase relations ----------------------------------------------------------------

def _sine_trajectory(phase, total=60.0, step=0.01, period=6.0):
    model = build_circuit(["A"], [], constants={"A": 0.0})
    times = np.arange(0, total + step / 2, step)
    states = (1.0 + np.sin(2 * np.pi * times / period + phase))[:, None]
    return Trajectory(times=times, states=states, step=step, model=model)


def test_identical_sinusoids_in_phase():
    a = _sine_trajectory(0.0)
    b = _sine_trajectory(0.0)
    rel = phase_relation(a, b, "A", "A")
    assert rel.relation == "in-phase"
    assert abs(rel.lag) < 0.1 * rel.period


def test_opposed_sinusoids_anti_phase():
    a = _sine_trajectory(0.0)
    b = _sine_trajectory(np.pi)
    rel = phase_relation(a, b, "A", "A")
    assert rel.relation == "anti-phase"


def test_phase_relation_needs_oscillation():
    m = build_circuit(["X"], [], constants={"X": 1.0})
    flat = integrate(m, (1.0,), horizon=30.0, step=0.01)
    osc = _sine_trajectory(0.0, step=0.01)
    with pytest.raises(ValueError, match="peaks"):
        phase_relation(flat, osc, "X", "A")


# --- catalog ------------------------------------------------------------------------

def test_catalog_lookup_and_errors():
    assert "M3" in catalog_ids()
    assert circuit_library("m14-16").variables == ("X", "Y", "Z")
    with pytest.raises(KeyError, match="unknown model"):
        circuit_library("M999")
    with pytest.raises(ValueError, match="accepts only"):
        circuit_library("M10-11", n=2)


def test_catalog_models_integrate_cleanly():
    for mid in catalog_ids():
        entry = catalog_entry(mid)
        traj = integrate(entry.model, entry.default_init, horizon=5.0, step=0.01)
        assert np.all(np.isfinite(traj.states))
