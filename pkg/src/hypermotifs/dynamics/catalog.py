"""Catalog of the Hill-circuit models: self-loops, mutual feedback pairs,
feedforward loops, their combinations (shared nodes) and interactions
(linking edges), plus the separated sub-circuits used for comparison runs.

Ids group equation ranges ("M14-16"); duplicated equation labels in the
source material are disambiguated by context suffixes ("M27-30-coherent" /
"M27-30-incoherent", and the three two-oscillator combinations "M20-22",
"M22-24", "M25-27"). Combination variants carry suffixes like "-sl-y" (a
positive self-loop added on Y). A few template models (M3 through M8-9 and
the S-series) accept parameter overrides; printed parameter sets are fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import CircuitModel, build_circuit

__all__ = ["CatalogEntry", "catalog_ids", "catalog_entry", "circuit_library"]


@dataclass(frozen=True)
class CatalogEntry:
    model_id: str
    description: str
    model: CircuitModel
    default_init: tuple
    tunable: tuple = ()


def _sl(v, k=0.3, n=3):
    return (v, v, +1, n, k)


# --- builders ------------------------------------------------------------------

def _m3(n=3.0, k=0.3):
    return build_circuit(["X"], [_sl("X", k, n)]), (0.5,)


def _m4_5(n=3.0, k=0.3):
    edges = [("Y", "X", -1, n, k), ("X", "Y", -1, n, k)]
    return build_circuit(["X", "Y"], edges), (0.9, 0.1)


def _m6_7(n=3.0, k=0.3):
    edges = [("Y", "X", +1, n, k), ("X", "Y", +1, n, k)]
    return build_circuit(["X", "Y"], edges), (0.5, 0.5)


def _m8_9(n=3.0, k=0.3):
    edges = [("Y", "X", +1, n, k), ("X", "Y", -1, n, k)]
    return build_circuit(["X", "Y"], edges), (0.1, 0.2)


def _m10_11():
    edges = [_sl("X"), ("Y", "X", -1, 3, 0.3), _sl("Y"), ("X", "Y", -1, 3, 0.3)]
    return build_circuit(["X", "Y"], edges), (0.9, 0.1)


def _m12_13():
    edges = [
        _sl("X", 0.2),
        ("Y", "X", +1, 3, 0.3),
        _sl("Y", 0.2),
        ("X", "Y", -1, 3, 0.3),
    ]
    return build_circuit(["X", "Y"], edges), (0.3, 0.3)


def _ffl(coherent, sl_on=None):
    edges = [("X", "Y", +1, 1, 0.01), ("X", "Z", +1, 1, 0.01)]
    if coherent:
        edges.append(("Y", "Z", +1, 1, 0.01))
        sl_k = {"X": 0.3, "Y": 0.3, "Z": 0.3}
    else:
        edges.append(("Y", "Z", -1, 1, 0.5))
        sl_k = {"X": 0.3, "Y": 0.3, "Z": 0.15}
    if sl_on is not None:
        edges.append(_sl(sl_on, sl_k[sl_on]))
    model = build_circuit(["X", "Y", "Z"], edges, constants=None)
    return model, (0.1, 0.185, 0.19)


def _two_oscillators(variant):
    # two 2-node oscillators (all nodes positively autoregulated) sharing Y
    if variant == 1:  # Y -> X +, X -> Y -; Z -> Y +, Y -> Z -
        cross = [
            ("Y", "X", +1, 3, 0.3),
            ("X", "Y", -1, 3, 0.3),
            ("Z", "Y", +1, 3, 0.3),
            ("Y", "Z", -1, 3, 0.3),
        ]
    elif variant == 2:  # Y -> X +, X -> Y -; Y -> Z +, Z -> Y -
        cross = [
            ("Y", "X", +1, 3, 0.3),
            ("X", "Y", -1, 3, 0.3),
            ("Z", "Y", -1, 3, 0.3),
            ("Y", "Z", +1, 3, 0.3),
        ]
    else:  # X -> Y +, Y -> X -; Z -> Y +, Y -> Z -
        cross = [
            ("Y", "X", -1, 3, 0.3),
            ("X", "Y", +1, 3, 0.3),
            ("Z", "Y", +1, 3, 0.3),
            ("Y", "Z", -1, 3, 0.3),
        ]
    edges = [_sl(v, 0.2) for v in ("X", "Y", "Z")] + cross
    return build_circuit(["X", "Y", "Z"], edges), (0.2, 0.2, 0.2)


def _m27_30(coherent):
    # oscillator (Y, W) coupled into an FFL through its intermediate node Y
    edges = [
        ("X", "Y", +1, 1, 0.01),
        _sl("Y", 0.2),
        ("W", "Y", +1, 3, 0.3),
        ("X", "Z", +1, 1, 0.01),
        _sl("W", 0.2),
        ("Y", "W", -1, 3, 0.3),
    ]
    edges.append(("Y", "Z", +1, 1, 0.01) if coherent else ("Y", "Z", -1, 1, 0.5))
    return build_circuit(["X", "Y", "Z", "W"], edges), (0.01, 0.3, 0.01, 1.0)


def _m31_34():
    edges = [
        _sl("X", 0.2),
        ("Y", "X", -1, 3, 0.3),
        ("V", "X", -1, 1, 0.01),
        _sl("Y", 0.2),
        ("X", "Y", +1, 3, 0.3),
        _sl("U", 0.2),
        ("Y", "U", -1, 1, 0.01),
        ("V", "U", -1, 3, 0.3),
        _sl("V", 0.2),
        ("U", "V", +1, 3, 0.3),
    ]
    return build_circuit(["X", "Y", "U", "V"], edges), (0.1, 0.1, 0.1, 0.1)


def _m35_38():
    edges = [
        _sl("X", 0.2),
        ("Y", "X", -1, 3, 0.3),
        _sl("Y", 0.2),
        ("X", "Y", +1, 3, 0.3),
        ("U", "Y", -1, 1, 0.01),
        _sl("U", 0.2),
        ("V", "U", -1, 3, 0.3),
        _sl("V", 0.2),
        ("U", "V", +1, 3, 0.3),
        ("X", "V", -1, 1, 0.01),
    ]
    return build_circuit(["X", "Y", "U", "V"], edges), (0.1, 0.1, 0.1, 0.1)


def _m39_42():
    edges = [
        _sl("X", 0.2),
        ("Y", "X", -1, 3, 0.3),
        _sl("Y", 0.2),
        ("X", "Y", +1, 3, 0.3),
        ("U", "Y", +1, 1, 0.01),
        _sl("U", 0.2),
        ("V", "U", -1, 3, 0.3),
        _sl("V", 0.2),
        ("U", "V", +1, 3, 0.3),
        ("X", "V", +1, 1, 0.01),
    ]
    return build_circuit(["X", "Y", "U", "V"], edges), (0.1, 0.1, 0.1, 0.1)


def _m43_46():
    edges = [
        _sl("X", 0.2),
        ("Y", "X", -1, 3, 0.3),
        ("V", "X", +1, 1, 0.01),
        _sl("Y", 0.2),
        ("X", "Y", +1, 3, 0.3),
        _sl("U", 0.2),
        ("Y", "U", +1, 1, 0.01),
        ("V", "U", -1, 3, 0.3),
        _sl("V", 0.2),
        ("U", "V", +1, 3, 0.3),
    ]
    return build_circuit(["X", "Y", "U", "V"], edges), (0.1, 0.1, 0.1, 0.1)


def _m47_51():
    # coherent FFL (X, Y, Z) and toggle switch (U, V) activating each other
    edges = [
        ("V", "X", +1, 1, 0.01),
        ("X", "Y", +1, 1, 0.01),
        ("Y", "Z", +1, 1, 0.01),
        ("X", "Z", +1, 1, 0.01),
        _sl("U", 0.3, 1),
        ("Z", "U", +1, 1, 0.01),
        ("V", "U", -1, 3, 0.3),
        _sl("V", 0.3, 1),
        ("U", "V", -1, 3, 0.3),
    ]
    return build_circuit(["X", "Y", "Z", "U", "V"], edges), (0.1, 0.1, 0.1, 0.5, 0.1)


def _m52_57():
    # coherent FFL (V, W?, ...) -- activator FFL drives a repressor FFL in a loop
    edges = [
        ("U", "X", +1, 1, 0.01),
        ("X", "Y", +1, 1, 0.01),
        ("Y", "Z", -1, 1, 0.01),
        ("X", "Z", +1, 1, 0.01),
        ("Z", "W", -1, 1, 0.01),
        ("W", "V", +1, 1, 70.8),
        ("V", "U", +1, 1, 13.4),
        ("W", "U", +1, 1, 55.9),
    ]
    return build_circuit(["X", "Y", "Z", "W", "V", "U"], edges), (
        0.1,
        0.1,
        0.1,
        0.1,
        0.1,
        0.1,
    )


def _m58_61():
    edges = [
        ("W", "X", +1, 3, 0.01),
        ("Y", "X", +1, 3, 0.01),
        ("Z", "Y", +1, 3, 0.01),
        ("X", "Y", +1, 3, 0.01),
        ("X", "Z", +1, 3, 0.01),
        ("Y", "Z", +1, 3, 0.01),
        ("W", "Z", +1, 3, 3.38),
        ("X", "W", +1, 3, 0.01),
        ("Z", "W", +1, 3, 0.16),
    ]
    return build_circuit(["X", "Y", "Z", "W"], edges), (0.1, 0.1, 0.1, 0.1)


def _m58_61_sub():
    edges = [
        ("Y", "X", +1, 3, 0.01),
        ("Z", "Y", +1, 3, 0.01),
        ("X", "Y", +1, 3, 0.01),
        ("X", "Z", +1, 3, 0.01),
        ("Y", "Z", +1, 3, 0.01),
    ]
    return build_circuit(["X", "Y", "Z"], edges), (0.1, 0.1, 0.1)


def _m62_65():
    edges = [
        ("W", "X", +1, 3, 0.01),
        ("Y", "X", +1, 3, 1.87),
        ("Z", "Y", +1, 3, 0.01),
        ("X", "Y", +1, 3, 0.01),
        ("X", "Z", -1, 3, 0.01),
        ("Y", "Z", +1, 3, 0.01),
        ("W", "Z", +1, 3, 0.01),
        ("X", "W", +1, 3, 0.01),
        ("Z", "W", +1, 3, 0.01),
    ]
    return build_circuit(["X", "Y", "Z", "W"], edges), (0.1, 0.1, 0.1, 0.1)


def _m62_65_sub():
    edges = [
        ("Y", "X", +1, 3, 1.87),
        ("Z", "Y", +1, 3, 0.01),
        ("X", "Y", +1, 3, 0.01),
        ("X", "Z", -1, 3, 0.01),
        ("Y", "Z", +1, 3, 0.01),
    ]
    # default start sits in the decline-to-zero basin (the separated weak-link
    # circuit also owns a large-amplitude cycle reachable from bigger starts)
    return build_circuit(["X", "Y", "Z"], edges), (0.01, 0.01, 0.01)


def _m66_69():
    # two 3-node loops sharing the X -> Y edge; Y represses Z, all else positive
    edges = [
        ("W", "X", +1, 3, 0.01),
        ("Z", "X", +1, 3, 4.7),
        ("X", "Y", +1, 3, 0.01),
        ("Y", "Z", -1, 3, 0.01),
        ("Y", "W", +1, 3, 0.01),
    ]
    return build_circuit(["X", "Y", "Z", "W"], edges), (0.1, 0.1, 0.1, 0.1)


def _m66_69_sub():
    edges = [
        ("W", "X", +1, 3, 0.01),
        ("X", "Y", +1, 3, 0.01),
        ("Y", "W", +1, 3, 0.01),
    ]
    return build_circuit(["X", "Y", "W"], edges), (0.1, 0.1, 0.1)


def _s_coherent(sl_on=None, xf=1.0):
    # step-input reduction: X jumps to xf at t = 0, leaving variables Y and Z
    edges = [("Y", "Z", +1, 1, 0.01)]
    if sl_on == "Y":
        edges.append(_sl("Y", 0.3))
    elif sl_on == "Z":
        edges.append(_sl("Z", 0.3))
    model = build_circuit(["Y", "Z"], edges, constants={"Y": xf, "Z": xf})
    return model, (0.0, 0.0)


def _s_incoherent(sl_on=None, xf=1.0):
    edges = [("Y", "Z", -1, 1, 1.0)]
    if sl_on == "Y":
        edges.append(_sl("Y", 0.25))
    elif sl_on == "Z":
        edges.append(_sl("Z", 0.25))
    model = build_circuit(["Y", "Z"], edges, constants={"Y": xf, "Z": xf})
    return model, (0.0, 0.0)


_CATALOG = {}


def _register(model_id, description, builder, tunable=()):
    _CATALOG[model_id.lower()] = (model_id, description, builder, tuple(tunable))


_register("M3", "positive self-loop (bistable for n >= 2)", _m3, ("n", "k"))
_register("M4-5", "toggle-switch mutual feedback", _m4_5, ("n", "k"))
_register("M6-7", "lock-ON mutual feedback", _m6_7, ("n", "k"))
_register("M8-9", "oscillator mutual feedback (damped)", _m8_9, ("n", "k"))
_register("M10-11", "toggle switch with positive self-loops", _m10_11)
_register("M12-13", "oscillator with positive self-loops", _m12_13)
_register("M14-16", "coherent type-1 FFL", lambda: _ffl(True))
_register("M14-16-sl-x", "coherent FFL, self-loop on input X", lambda: _ffl(True, "X"))
_register("M14-16-sl-y", "coherent FFL, self-loop on intermediate Y", lambda: _ffl(True, "Y"))
_register("M14-16-sl-z", "coherent FFL, self-loop on output Z", lambda: _ffl(True, "Z"))
_register("M17-19", "incoherent type-1 FFL", lambda: _ffl(False))
_register("M17-19-sl-x", "incoherent FFL, self-loop on input X", lambda: _ffl(False, "X"))
_register("M17-19-sl-y", "incoherent FFL, self-loop on intermediate Y", lambda: _ffl(False, "Y"))
_register("M17-19-sl-z", "incoherent FFL, self-loop on output Z", lambda: _ffl(False, "Z"))
_register("M20-22", "two oscillators sharing Y (combination 1)", lambda: _two_oscillators(1))
_register("M22-24", "two oscillators sharing Y (combination 2)", lambda: _two_oscillators(2))
_register("M25-27", "two oscillators sharing Y (combination 3)", lambda: _two_oscillators(3))
_register("M27-30-coherent", "oscillator coupled to coherent FFL via Y", lambda: _m27_30(True))
_register(
    "M27-30-incoherent", "oscillator coupled to incoherent FFL via Y", lambda: _m27_30(False)
)
_register("M31-34", "two oscillators interacting as a toggle (option 1)", _m31_34)
_register("M35-38", "two oscillators interacting as a toggle (option 2)", _m35_38)
_register("M39-42", "two oscillators interacting as a lock-ON (option 1)", _m39_42)
_register("M43-46", "two oscillators interacting as a lock-ON (option 2)", _m43_46)
_register("M47-51", "coherent FFL and toggle switch, mutual activation", _m47_51)
_register("M52-57", "coherent FFL driving an incoherent FFL in a loop", _m52_57)
_register("M58-61", "two double mutual feedbacks sharing X->Z (all positive)", _m58_61)
_register("M58-61-xyz-sub", "separated X,Y,Z double mutual feedback (all positive)", _m58_61_sub)
_register("M62-65", "two double mutual feedbacks sharing X->Z (X inhibits Z)", _m62_65)
_register("M62-65-xyz-sub", "separated X,Y,Z double mutual feedback (X inhibits Z)", _m62_65_sub)
_register("M66-69", "two 3-node loops sharing X->Y (Y inhibits Z)", _m66_69)
_register("M66-69-xyw-sub", "separated all-positive 3-node loop X,Y,W", _m66_69_sub)
_register("S1-S2", "step-input coherent FFL (2-variable)", _s_coherent, ("xf",))
_register(
    "S1-S2-sl-y", "step-input coherent FFL, self-loop on Y",
    lambda xf=1.0: _s_coherent("Y", xf), ("xf",),
)
_register(
    "S1-S2-sl-z", "step-input coherent FFL, self-loop on Z",
    lambda xf=1.0: _s_coherent("Z", xf), ("xf",),
)
_register("S3-S4", "step-input incoherent FFL (2-variable)", _s_incoherent, ("xf",))
_register(
    "S3-S4-sl-y", "step-input incoherent FFL, self-loop on Y",
    lambda xf=1.0: _s_incoherent("Y", xf), ("xf",),
)
_register(
    "S3-S4-sl-z", "step-input incoherent FFL, self-loop on Z",
    lambda xf=1.0: _s_incoherent("Z", xf), ("xf",),
)


def catalog_ids():
    """Model ids in declaration order."""
    return [entry[0] for entry in _CATALOG.values()]


def catalog_entry(model_id, **params):
    """Catalog entry for a model id; params allowed only for template models."""
    key = model_id.strip().lower()
    if key not in _CATALOG:
        raise KeyError(
            f"unknown model id {model_id!r}; known ids: {', '.join(catalog_ids())}"
        )
    display, description, builder, tunable = _CATALOG[key]
    bad = set(params) - set(tunable)
    if bad:
        raise ValueError(
            f"{display} accepts only parameters {tunable or '()'}, got {sorted(bad)}"
        )
    model, default_init = builder(**params)
    return CatalogEntry(
        model_id=display,
        description=description,
        model=model,
        default_init=default_init,
        tunable=tunable,
    )


def circuit_library(model_id, **params):
    """The CircuitModel for a catalog id (exact printed equations and values)."""
    return catalog_entry(model_id, **params).model
