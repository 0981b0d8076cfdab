"""Fixed points, stability, trajectory classification and pulse/phase metrics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FixedPoint",
    "find_fixed_points",
    "ClassifyConfig",
    "VariableSummary",
    "SteadyStateClass",
    "classify_steady_state",
    "PulseMetrics",
    "pulse_metrics",
    "PhaseRelation",
    "phase_relation",
    "OFF",
    "ON",
    "INTERMEDIATE",
    "DAMPED_OSCILLATION",
    "SUSTAINED_OSCILLATION",
]

OFF = "OFF"
ON = "ON"
INTERMEDIATE = "INTERMEDIATE"
DAMPED_OSCILLATION = "DAMPED_OSCILLATION"
SUSTAINED_OSCILLATION = "SUSTAINED_OSCILLATION"


@dataclass(frozen=True)
class FixedPoint:
    point: tuple
    stability: str  # stable | unstable | saddle | spiral-stable | spiral-unstable
    eigenvalues: tuple
    residual: float  # ||rhs(point)||_inf


def _newton(model, x0, max_iter=60, tol=1e-12):
    x = np.maximum(np.asarray(x0, dtype=float), 0.0)
    f = model.rhs(x)
    fn = np.max(np.abs(f))
    for _ in range(max_iter):
        if fn < tol:
            return x
        jac = model.jacobian(x)
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            return None
        lam = 1.0
        while lam > 1e-4:
            cand = np.maximum(x + lam * step, 0.0)
            f_cand = model.rhs(cand)
            fn_cand = np.max(np.abs(f_cand))
            if fn_cand < fn:
                x, f, fn = cand, f_cand, fn_cand
                break
            lam *= 0.5
        else:
            return x if fn < 1e-10 else None
    return x if fn < 1e-10 else None


def _classify_eigenvalues(eigs, tol=1e-9):
    re = eigs.real
    im = eigs.imag
    if np.max(np.abs(im)) > tol:
        return "spiral-stable" if np.max(re) < 0 else "spiral-unstable"
    if np.max(re) < -tol:
        return "stable"
    if np.min(re) > tol:
        return "unstable"
    return "saddle"


def find_fixed_points(
    model,
    grid_points=5,
    random_starts=300,
    seed=0,
    dedupe_tol=1e-6,
    residual_tol=1e-8,
):
    """Fixed points of the model found by damped Newton from multiple starts.

    Uses a full grid over the forward-invariant production box for dimension
    <= 4 and seeded random starts above. Points are deduplicated at
    dedupe_tol; every returned point satisfies ||rhs|| < residual_tol.
    Stability comes from the eigenvalues of the analytic Jacobian.
    """
    d = model.dim
    upper = np.maximum(model.max_production, 0.0)
    starts = []
    if d <= 4:
        axes = [np.linspace(0.0, u, grid_points) if u > 0 else np.array([0.0]) for u in upper]
        starts.extend(np.array(p) for p in itertools.product(*axes))
    else:
        rng = np.random.default_rng(seed)
        starts.extend(rng.uniform(0.0, np.maximum(upper, 1e-6)) for _ in range(random_starts))
        starts.append(np.zeros(d))
    found = []
    for x0 in starts:
        x = _newton(model, x0)
        if x is None:
            continue
        if np.max(np.abs(model.rhs(x))) >= residual_tol:
            continue
        if any(np.max(np.abs(x - np.array(p.point))) < dedupe_tol for p in found):
            continue
        eigs = np.linalg.eigvals(model.jacobian(x))
        order = np.lexsort((eigs.imag, eigs.real))
        eigs = eigs[order]
        found.append(
            FixedPoint(
                point=tuple(float(v) for v in x),
                stability=_classify_eigenvalues(eigs),
                eigenvalues=tuple(complex(e) for e in eigs),
                residual=float(np.max(np.abs(model.rhs(x)))),
            )
        )
    found.sort(key=lambda p: p.point)
    return found


@dataclass(frozen=True)
class ClassifyConfig:
    off_threshold: float = 1e-3
    decay_ratio: float = 0.95
    min_peaks: int = 3
    transient_fraction: float = 0.5
    amplitude_floor: float = 1e-8
    on_fraction: float = 0.5  # ON when the final value reaches this share of max production


@dataclass(frozen=True)
class VariableSummary:
    label: str
    final_value: float
    n_peaks: int
    first_amplitude: float
    last_amplitude: float


@dataclass
class SteadyStateClass:
    label: str
    per_variable: dict = field(default_factory=dict)

    def variable_label(self, name):
        return self.per_variable[name].label


def _peak_amplitudes(w, floor):
    """Peak amplitudes (height over the mean of adjacent troughs) in order."""
    peaks = []
    troughs = []
    for i in range(1, len(w) - 1):
        if w[i] > w[i - 1] and w[i] >= w[i + 1]:
            peaks.append(i)
        elif w[i] < w[i - 1] and w[i] <= w[i + 1]:
            troughs.append(i)
    amps = []
    for p in peaks:
        before = [t for t in troughs if t < p]
        after = [t for t in troughs if t > p]
        ref = []
        if before:
            ref.append(w[before[-1]])
        if after:
            ref.append(w[after[0]])
        if not ref:
            continue
        amp = w[p] - sum(ref) / len(ref)
        if amp > floor:
            amps.append(amp)
    return amps


def classify_steady_state(traj, config=None):
    """Classify each variable's post-transient behavior and the whole run.

    Per variable: OFF when everything past the transient stays below
    off_threshold; SUSTAINED_OSCILLATION with >= min_peaks whose amplitude
    holds (last >= decay_ratio * first); DAMPED_OSCILLATION with >= min_peaks
    decaying; otherwise ON/INTERMEDIATE by where the final value sits relative
    to the variable's maximum attainable production. The overall label is the
    strongest oscillation found, else OFF/ON when unanimous, else
    INTERMEDIATE.
    """
    config = config or ClassifyConfig()
    n = len(traj.times)
    if n < 8:
        raise ValueError("trajectory too short to classify")
    start = int(n * config.transient_fraction)
    if n - start < 4:
        raise ValueError("horizon too short: nothing left after the transient window")
    per = {}
    for vi, name in enumerate(traj.model.variables):
        w = traj.states[start:, vi]
        final = float(w[-1])
        amps = _peak_amplitudes(w, config.amplitude_floor)
        if len(amps) >= config.min_peaks:
            if amps[-1] >= config.decay_ratio * amps[0]:
                label = SUSTAINED_OSCILLATION
            else:
                label = DAMPED_OSCILLATION
        elif float(np.max(w)) < config.off_threshold:
            label = OFF
        else:
            cap = float(traj.model.max_production[vi])
            label = ON if cap > 0 and final >= config.on_fraction * cap else INTERMEDIATE
        per[name] = VariableSummary(
            label=label,
            final_value=final,
            n_peaks=len(amps),
            first_amplitude=float(amps[0]) if amps else 0.0,
            last_amplitude=float(amps[-1]) if amps else 0.0,
        )
    labels = {s.label for s in per.values()}
    if SUSTAINED_OSCILLATION in labels:
        overall = SUSTAINED_OSCILLATION
    elif DAMPED_OSCILLATION in labels:
        overall = DAMPED_OSCILLATION
    elif labels == {OFF}:
        overall = OFF
    elif labels <= {ON, OFF}:
        overall = ON
    else:
        overall = INTERMEDIATE
    return SteadyStateClass(label=overall, per_variable=per)


@dataclass(frozen=True)
class PulseMetrics:
    pulse_width: float | None
    response_delay: float | None
    peak_value: float


def _crossing_times(times, w, level, rising):
    out = []
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        if rising and a < level <= b:
            out.append(times[i] + (times[i + 1] - times[i]) * (level - a) / (b - a))
        if not rising and a >= level > b:
            out.append(times[i] + (times[i + 1] - times[i]) * (level - a) / (b - a))
    return out


def pulse_metrics(traj, variable):
    """Pulse width (time above half-peak, when the signal ends below half-peak),
    response delay (time to half of the final value, when rising) and peak value."""
    w = traj.series(variable)
    times = traj.times
    peak = float(np.max(w))
    final = float(w[-1])
    pulse_width = None
    if peak > 0 and final < 0.5 * peak:
        level = 0.5 * peak
        above = w >= level
        width = 0.0
        i = 0
        n = len(w)
        while i < n:
            if above[i]:
                j = i
                while j + 1 < n and above[j + 1]:
                    j += 1
                t_start = times[i]
                if i > 0:
                    cross = _crossing_times(times[i - 1 : i + 1], w[i - 1 : i + 1], level, True)
                    if cross:
                        t_start = cross[0]
                t_end = times[j]
                if j + 1 < n:
                    cross = _crossing_times(times[j : j + 2], w[j : j + 2], level, False)
                    if cross:
                        t_end = cross[0]
                width += t_end - t_start
                i = j + 1
            else:
                i += 1
        pulse_width = float(width)
    response_delay = None
    if final > w[0] and final > 0:
        crossings = _crossing_times(times, w, 0.5 * final, True)
        if w[0] >= 0.5 * final:
            response_delay = 0.0
        elif crossings:
            response_delay = float(crossings[0])
    return PulseMetrics(
        pulse_width=pulse_width, response_delay=response_delay, peak_value=peak
    )


@dataclass(frozen=True)
class PhaseRelation:
    period: float
    lag: float  # wrapped into [-period/2, period/2)
    relation: str  # "in-phase" | "anti-phase" | "none"


def _mean_peak_spacing(times, w):
    idx = [
        i
        for i in range(1, len(w) - 1)
        if w[i] > w[i - 1] and w[i] >= w[i + 1]
    ]
    if len(idx) < 2:
        return None
    spacings = np.diff(times[idx])
    return float(np.mean(spacings))


def phase_relation(traj_a, traj_b, variable_a, variable_b, transient_fraction=0.5):
    """Oscillation period, cross-correlation lag, and in/anti-phase call.

    Requires both series to oscillate (>= 2 post-transient peaks each);
    anti-phase means the wrapped lag sits within 0.1 periods of half a period,
    in-phase within 0.1 periods of zero.
    """
    if traj_a.step != traj_b.step:
        raise ValueError("trajectories must share the sampling step")
    start_a = int(len(traj_a.times) * transient_fraction)
    start_b = int(len(traj_b.times) * transient_fraction)
    wa = traj_a.series(variable_a)[start_a:]
    wb = traj_b.series(variable_b)[start_b:]
    n = min(len(wa), len(wb))
    wa, wb = wa[:n], wb[:n]
    ta = traj_a.times[start_a : start_a + n]
    pa = _mean_peak_spacing(ta, wa)
    pb = _mean_peak_spacing(ta, wb)
    if pa is None or pb is None:
        raise ValueError("both series must show repeated oscillation peaks")
    period = 0.5 * (pa + pb)
    if abs(pa - pb) > 0.2 * period:
        return PhaseRelation(period=period, lag=0.0, relation="none")
    a = wa - np.mean(wa)
    b = wb - np.mean(wb)
    dt = traj_a.step
    max_shift = max(1, int(round(period / dt)))
    best_shift, best_val = 0, -np.inf
    for shift in range(-max_shift, max_shift + 1):
        if shift >= 0:
            seg_a, seg_b = a[: n - shift], b[shift:]
        else:
            seg_a, seg_b = a[-shift:], b[: n + shift]
        if len(seg_a) < max(8, n // 4):
            continue
        val = float(np.dot(seg_a, seg_b) / len(seg_a))
        if val > best_val:
            best_val, best_shift = val, shift
    lag = best_shift * dt
    lag_wrapped = (lag + 0.5 * period) % period - 0.5 * period
    if abs(lag_wrapped) < 0.1 * period:
        relation = "in-phase"
    elif abs(abs(lag_wrapped) - 0.5 * period) < 0.1 * period:
        relation = "anti-phase"
    else:
        relation = "none"
    return PhaseRelation(period=period, lag=float(lag_wrapped), relation=relation)
