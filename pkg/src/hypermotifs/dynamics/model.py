"""Hill-kinetics circuit models.

Every variable obeys  var' = const * (product of Hill factors) - var : each
directed edge s -> t contributes one multiplicative factor to t's production
(AND logic), an increasing Hill term x^n/(k^n + x^n) for activation or a
decreasing k^n/(k^n + x^n) for repression, and removal is linear with rate 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CircuitError",
    "NumericError",
    "HillFactor",
    "CircuitModel",
    "build_circuit",
    "hill_value",
    "hill_derivative",
]


class CircuitError(ValueError):
    pass


class NumericError(RuntimeError):
    pass


def hill_value(x, sign, n, k):
    """Hill factor at input level x: 0.5 at x = k; increasing factors vanish at
    0, decreasing ones start at 1."""
    x = max(float(x), 0.0)
    xn = x**n
    kn = k**n
    return xn / (kn + xn) if sign > 0 else kn / (kn + xn)


def hill_derivative(x, sign, n, k):
    x = max(float(x), 0.0)
    xn = x**n
    kn = k**n
    d = n * kn * x ** (n - 1.0) / (kn + xn) ** 2
    return d if sign > 0 else -d


@dataclass(frozen=True)
class HillFactor:
    target: int
    source: int
    sign: int  # +1 activation, -1 repression
    n: float
    k: float

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise CircuitError(f"sign must be +1 or -1, got {self.sign}")
        if self.k <= 0:
            raise CircuitError(f"half-max k must be positive, got {self.k}")
        if self.n < 1:
            raise CircuitError(f"cooperativity n must be >= 1, got {self.n}")


class CircuitModel:
    """Immutable ODE model: per-variable constant production times Hill factors,
    linear removal with rate 1."""

    def __init__(self, variables, factors, constants=None):
        self.variables = tuple(variables)
        d = len(self.variables)
        if d == 0:
            raise CircuitError("model needs at least one variable")
        if len(set(self.variables)) != d:
            raise CircuitError("duplicate variable names")
        self.factors = tuple(factors)
        for f in self.factors:
            if not (0 <= f.target < d and 0 <= f.source < d):
                raise CircuitError(f"factor {f} references an unknown variable index")
        const = np.ones(d)
        if constants is not None:
            for idx, value in constants.items():
                const[idx] = float(value)
        if np.any(const < 0):
            raise CircuitError("constant productions must be >= 0")
        self.constants = const
        self.constants.setflags(write=False)
        # packed arrays for the integrator kernel
        m = len(self.factors)
        self._tgt = np.array([f.target for f in self.factors], dtype=np.int64)
        self._src = np.array([f.source for f in self.factors], dtype=np.int64)
        self._sign = np.array([f.sign for f in self.factors], dtype=np.int64)
        self._n = np.array([f.n for f in self.factors], dtype=np.float64)
        self._kn = np.array([f.k**f.n for f in self.factors], dtype=np.float64)
        self._by_target = [
            [f for f in self.factors if f.target == i] for i in range(d)
        ]

    @property
    def dim(self):
        return len(self.variables)

    @property
    def max_production(self):
        """Per-variable production ceiling (Hill factors never exceed 1)."""
        return self.constants

    def index_of(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise CircuitError(f"unknown variable {name!r}; model has {self.variables}")

    def rhs(self, state):
        """Derivative vector; increasing factors are 0 at source 0 and 0.5 at
        source = k, decreasing factors 1 at 0 and 0.5 at k."""
        state = np.asarray(state, dtype=float)
        prod = self.constants.copy()
        for f in self.factors:
            prod[f.target] *= hill_value(state[f.source], f.sign, f.n, f.k)
        return prod - state

    def jacobian(self, state):
        """Analytic Jacobian of rhs at a (componentwise nonnegative) state."""
        state = np.asarray(state, dtype=float)
        d = self.dim
        jac = -np.eye(d)
        for i in range(d):
            facs = self._by_target[i]
            if not facs:
                continue
            values = [hill_value(state[f.source], f.sign, f.n, f.k) for f in facs]
            for fi, f in enumerate(facs):
                others = self.constants[i]
                for gi, g in enumerate(facs):
                    if gi != fi:
                        others *= values[gi]
                jac[i, f.source] += (
                    hill_derivative(state[f.source], f.sign, f.n, f.k) * others
                )
        return jac

    def packed(self):
        return self._tgt, self._src, self._sign, self._n, self._kn, self.constants

    def with_initial_names(self, init_map, default=0.0):
        """State vector from a {variable: value} mapping."""
        x0 = np.full(self.dim, float(default))
        for name, value in init_map.items():
            x0[self.index_of(name)] = float(value)
        return x0

    def __repr__(self):
        return f"CircuitModel(variables={self.variables}, factors={len(self.factors)})"


def build_circuit(variables, edges, constants=None):
    """Assemble a CircuitModel from a signed interaction list.

    variables: ordered names. edges: (source_name, target_name, sign, n, k)
    tuples with sign +1/-1. constants: {variable: base production}; variables
    with no explicit constant get 1 (the empty product), so nodes without
    inputs default to 'var' = 1 - var' unless a constant is given.
    """
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    factors = []
    for source, target, sign, n, k in edges:
        if source not in index or target not in index:
            raise CircuitError(f"edge ({source!r} -> {target!r}) uses unknown variables")
        factors.append(
            HillFactor(target=index[target], source=index[source], sign=sign, n=n, k=k)
        )
    const_idx = None
    if constants:
        const_idx = {}
        for name, value in constants.items():
            if name not in index:
                raise CircuitError(f"constant for unknown variable {name!r}")
            const_idx[index[name]] = value
    return CircuitModel(variables, factors, const_idx)
