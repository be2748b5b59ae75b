"""Three-flavor vacuum oscillations: mixing matrix, amplitudes, probabilities.

Angles are taken in degrees, mass-squared splittings in eV^2, and the
kinematic variable is L/E in km/GeV throughout.  The phase constant 1.27 is
used exactly as conventionally printed, so plots line up with the standard
literature curves.
"""

import json
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

FLAVORS = ("e", "mu", "tau")

#: km/GeV/eV^2 oscillation phase constant (1.27 * dm2 * L/E enters the sines).
PHASE_CONST = 1.27

#: Tolerated inconsistency |dm2_31 - (dm2_21 + dm2_32)| before warning, eV^2.
SPLITTING_TOL = 1e-9

PARAM_FIELDS = (
    "theta12", "theta23", "theta13", "delta_cp", "dm2_21", "dm2_31", "dm2_32",
)


@dataclass(frozen=True)
class OscillationParams:
    """Physics inputs: mixing angles (degrees) and splittings (eV^2).

    Defaults are the standard normal-ordering fit values.
    """

    theta12: float = 33.48
    theta23: float = 42.3
    theta13: float = 8.50
    delta_cp: float = 0.0
    dm2_21: float = 7.50e-5
    dm2_31: float = 2.457e-3
    dm2_32: float = 2.382e-3
    ordering: str = "normal"

    def __post_init__(self):
        for name in ("theta12", "theta23", "theta13"):
            angle = getattr(self, name)
            if not math.isfinite(angle) or not 0.0 <= angle < 90.0:
                raise ValueError(f"{name} must lie in [0, 90) degrees, got {angle}")
        if not math.isfinite(self.delta_cp):
            raise ValueError("delta_cp must be finite")
        gap = abs(self.dm2_31 - (self.dm2_21 + self.dm2_32))
        if gap > SPLITTING_TOL:
            warnings.warn(
                f"mass splittings are inconsistent: |dm2_31 - (dm2_21 + dm2_32)|"
                f" = {gap:.3e} eV^2", stacklevel=2,
            )

    @classmethod
    def from_dict(cls, overrides):
        """Merge a (possibly partial) override mapping with the defaults."""
        unknown = set(overrides) - set(PARAM_FIELDS)
        if unknown:
            raise ValueError(f"unknown parameter fields: {sorted(unknown)}")
        params = cls()
        if overrides:
            params = replace(
                params, ordering="custom",
                **{k: float(v) for k, v in overrides.items()},
            )
        return params

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("parameter file must contain a JSON object")
        return cls.from_dict(data)


@dataclass(frozen=True)
class FlavorAmplitudes:
    """Flavor-basis amplitudes of an evolved neutrino at one L/E point."""

    initial: str
    le: float
    a_e: complex
    a_mu: complex
    a_tau: complex

    def as_tuple(self):
        return (self.a_e, self.a_mu, self.a_tau)

    def norm_sq(self):
        return abs(self.a_e) ** 2 + abs(self.a_mu) ** 2 + abs(self.a_tau) ** 2


@dataclass(frozen=True)
class ProbabilityTriple:
    """(P_e, P_mu, P_tau) at one L/E point; clamped to [0, 1]."""

    p_e: float
    p_mu: float
    p_tau: float

    def as_tuple(self):
        return (self.p_e, self.p_mu, self.p_tau)

    @classmethod
    def from_raw(cls, p_e, p_mu, p_tau, tol=1e-12):
        vals = []
        for p in (p_e, p_mu, p_tau):
            if p < -tol or p > 1.0 + tol:
                raise ValueError(f"probability {p!r} outside [0, 1] beyond tolerance")
            vals.append(min(max(p, 0.0), 1.0))
        total = sum(vals)
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        return cls(*vals)


def _flavor_index(flavor):
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    return FLAVORS.index(flavor)


def build_pmns(params):
    """3x3 complex mixing matrix; rows are flavors (e, mu, tau), columns mass states."""
    s12, c12 = np.sin(np.radians(params.theta12)), np.cos(np.radians(params.theta12))
    s23, c23 = np.sin(np.radians(params.theta23)), np.cos(np.radians(params.theta23))
    s13, c13 = np.sin(np.radians(params.theta13)), np.cos(np.radians(params.theta13))
    phase = np.exp(1j * np.radians(params.delta_cp))
    return np.array([
        [c12 * c13, s12 * c13, s13 * np.conj(phase)],
        [-s12 * c23 - c12 * s13 * s23 * phase,
         c12 * c23 - s12 * s13 * s23 * phase,
         c13 * s23],
        [s12 * s23 - c12 * s13 * c23 * phase,
         -c12 * s23 - s12 * s13 * c23 * phase,
         c13 * c23],
    ], dtype=np.complex128)


def _mass_phases(params, le):
    # phases relative to mass state 1; only splittings are observable
    return np.array([
        0.0,
        2.0 * PHASE_CONST * params.dm2_21 * le,
        2.0 * PHASE_CONST * params.dm2_31 * le,
    ])


def amplitudes(params, initial, le, u=None):
    """Evolved flavor amplitudes a_beta = sum_k U_ak exp(-i phi_k) U*_bk."""
    if le < 0:
        raise ValueError(f"le must be non-negative, got {le}")
    a = _flavor_index(initial)
    if u is None:
        u = build_pmns(params)
    phases = np.exp(-1j * _mass_phases(params, le))
    a_b = (u[a] * phases) @ u.conj().T
    return FlavorAmplitudes(initial, float(le), a_b[0], a_b[1], a_b[2])


_PAIRS = ((1, 0), (2, 0), (2, 1))  # (k, l) with k > l


def _splitting(params, k, l):
    table = {(1, 0): params.dm2_21, (2, 0): params.dm2_31, (2, 1): params.dm2_32}
    return table[(k, l)]


def probability_array(params, initial, le, u=None):
    """Transition probabilities to (e, mu, tau) over an array of L/E values.

    Evaluated through the interference-sum formula (delta term minus the
    real-part sin^2 series plus the imaginary-part sin series), not through
    |amplitudes|^2; the two must agree, which the tests exercise.
    """
    le = np.asarray(le, dtype=np.float64)
    if np.any(le < 0):
        raise ValueError("le must be non-negative")
    a = _flavor_index(initial)
    if u is None:
        u = build_pmns(params)
    out = np.empty(le.shape + (3,), dtype=np.float64)
    for b in range(3):
        p = np.full(le.shape, 1.0 if a == b else 0.0)
        for k, l in _PAIRS:
            quartic = np.conj(u[a, k]) * u[b, k] * u[a, l] * np.conj(u[b, l])
            arg = PHASE_CONST * _splitting(params, k, l) * le
            # the imaginary term's sign is fixed by the e^{-i phi_k} evolution
            # convention of amplitudes(); it vanishes at delta_cp = 0
            p = p - 4.0 * quartic.real * np.sin(arg) ** 2
            p = p - 2.0 * quartic.imag * np.sin(2.0 * arg)
        out[..., b] = p
    return out


def probabilities(params, initial, le, u=None):
    """ProbabilityTriple at a single L/E point (km/GeV)."""
    p = probability_array(params, initial, float(le), u=u)
    return ProbabilityTriple.from_raw(p[0], p[1], p[2])


def probability_matrix(params, le):
    """3x3 matrix P[a, b] of transition probabilities at one L/E point."""
    u = build_pmns(params)
    return np.stack(
        [probability_array(params, flavor, float(le), u=u) for flavor in FLAVORS]
    )
