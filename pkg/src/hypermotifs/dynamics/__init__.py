"""Hill-kinetics circuit dynamics: models, integration, fixed points,
classification, pulse/phase metrics and phase portraits."""

from .analysis import (
    DAMPED_OSCILLATION,
    INTERMEDIATE,
    OFF,
    ON,
    SUSTAINED_OSCILLATION,
    ClassifyConfig,
    FixedPoint,
    PhaseRelation,
    PulseMetrics,
    SteadyStateClass,
    classify_steady_state,
    find_fixed_points,
    phase_relation,
    pulse_metrics,
)
from .catalog import CatalogEntry, catalog_entry, catalog_ids, circuit_library
from .integrate import DEFAULT_HORIZON, DEFAULT_STEP, Trajectory, integrate
from .model import (
    CircuitError,
    CircuitModel,
    HillFactor,
    NumericError,
    build_circuit,
    hill_derivative,
    hill_value,
)
from .portrait import PhasePortrait, nullcline_intersections, phase_portrait

__all__ = [
    "CircuitError",
    "NumericError",
    "HillFactor",
    "CircuitModel",
    "build_circuit",
    "hill_value",
    "hill_derivative",
    "CatalogEntry",
    "catalog_ids",
    "catalog_entry",
    "circuit_library",
    "Trajectory",
    "integrate",
    "DEFAULT_STEP",
    "DEFAULT_HORIZON",
    "FixedPoint",
    "find_fixed_points",
    "ClassifyConfig",
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
    "PhasePortrait",
    "phase_portrait",
    "nullcline_intersections",
]
