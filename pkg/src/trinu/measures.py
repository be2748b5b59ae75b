"""Tripartite entanglement measures for W-class three-qubit states.

Every measure is available along two independent routes:

* a *generic* route that works on the 8x8 density matrix through partial
  traces, partial transposes and Hermitian eigensolves, and
* a *closed-form* route expressed directly in the three oscillation
  probabilities.

The two must agree to 1e-10, which is the main cross-check of the library.

Convention note: the negativity used here is the trace-norm deficit
N = ||rho^T||_1 - 1, i.e. twice the sum of the magnitudes of the negative
eigenvalues of the partial transpose.  This is the unique normalization for
which N_{A(BC)} equals the one-to-other concurrence sqrt(2[1 - Tr(rho_A^2)])
on pure states, and it reproduces the closed-form three-pi expression.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg, tristate
from .oscillation import ProbabilityTriple, amplitudes, probabilities

#: Probabilities below this are treated as exact zeros in the closed forms.
PROB_SNAP = 1e-15

#: Final measure values within this of zero are snapped to exactly zero.
VALUE_SNAP = 1e-14

MEASURE_NAMES = ("ggm", "three_pi", "gmc", "fill")


@dataclass(frozen=True)
class ConcurrenceTriangle:
    """Squared one-to-other concurrences as the edges of a triangle."""

    edge_a: float
    edge_b: float
    edge_c: float

    def __post_init__(self):
        edges = self.edges()
        for e in edges:
            if not -1e-10 <= e <= 1.0 + 1e-10:
                raise ValueError(f"triangle edge {e!r} outside [0, 1]")
        total = sum(edges)
        for e in edges:
            if e > total - e + 1e-10:
                raise ValueError(
                    f"edge {e!r} violates the triangle inequality against {edges}"
                )

    def edges(self):
        return (self.edge_a, self.edge_b, self.edge_c)

    @property
    def half_perimeter(self):
        return (self.edge_a + self.edge_b + self.edge_c) / 2.0

    @property
    def shortest_edge(self):
        return min(self.edges())

    @property
    def sqrt_area(self):
        """Fourth root of (16/3) times the Heron product of the edges."""
        return float(heron_fill(np.array(self.edges())))


@dataclass(frozen=True)
class MeasureReport:
    """All four measures plus the triangle geometry at one L/E point."""

    le: float
    probabilities: ProbabilityTriple
    ggm: float
    three_pi: float
    gmc: float
    fill: float
    triangle: ConcurrenceTriangle
    path: str

    def measures(self):
        return (self.ggm, self.three_pi, self.gmc, self.fill)


def _snap(x):
    x = np.where(np.abs(x) < VALUE_SNAP, 0.0, x)
    return np.maximum(x, 0.0)


# ---------------------------------------------------------------------------
# closed-form route: everything as a function of the probability triple.
# All functions broadcast over a trailing axis of length 3.
# ---------------------------------------------------------------------------

def _prepare_probs(p):
    p = np.asarray(p, dtype=np.float64)
    return np.where(p < PROB_SNAP, 0.0, p)


def triangle_edges_from_probs(p):
    """Edges 4 P_x (P_y + P_z) of the concurrence triangle, shape (..., 3)."""
    p = _prepare_probs(p)
    total = p.sum(axis=-1, keepdims=True)
    return _snap(4.0 * p * (total - p))


def ggm_from_probs(p):
    """1 minus the largest single-qubit Schmidt eigenvalue over all splits."""
    p = _prepare_probs(p)
    total = p.sum(axis=-1, keepdims=True)
    lam = np.maximum(p, total - p).max(axis=-1)
    return _snap(1.0 - lam)


def three_pi_from_probs(p):
    """Average residual negativity-squared of the three one-qubit focuses."""
    p = _prepare_probs(p)
    pe, pm, pt = p[..., 0], p[..., 1], p[..., 2]
    s = (
        -pe ** 2 - pm ** 2 - pt ** 2
        + pe * np.sqrt(pe ** 2 + 4.0 * pm * pt)
        + pm * np.sqrt(pm ** 2 + 4.0 * pe * pt)
        + pt * np.sqrt(pt ** 2 + 4.0 * pe * pm)
    )
    return _snap(4.0 / 3.0 * s)


def gmc_from_probs(p):
    """Shortest edge of the concurrence triangle (squared convention)."""
    return _snap(triangle_edges_from_probs(p).min(axis=-1))


def fill_from_probs(p):
    """Concurrence fill via the explicit W-class product formula.

    A triangle whose shortest edge snaps to zero is degenerate and fills
    nothing, so the fill is forced to 0 there; this keeps the closed form
    consistent with the Heron evaluation on snapped edges.
    """
    p = _prepare_probs(p)
    pe, pm, pt = p[..., 0], p[..., 1], p[..., 2]
    inner = (pe * pm * pt) ** 2 * (pm * pt + pe * (pm + pt)) / 3.0
    fill = _snap(8.0 * np.maximum(inner, 0.0) ** 0.25)
    return np.where(gmc_from_probs(p) > 0.0, fill, 0.0)


def heron_fill(edges):
    """Concurrence fill from triangle edges: [16/3 Q prod(Q - edge)]^(1/4).

    Evaluated through Kahan's rearrangement of Heron's formula (edges sorted,
    16 A^2 = (a+(b+c)) (c-(a-b)) (c+(a-b)) (a+(b-c)) with a >= b >= c), which
    keeps the relative error small even for needle-like triangles.  The one
    factor that can go negative is clamped at zero, so collinear (degenerate)
    and slightly inequality-violating triangles give 0 instead of a domain
    error.
    """
    s = np.sort(np.asarray(edges, dtype=np.float64), axis=-1)
    c, b, a = s[..., 0], s[..., 1], s[..., 2]
    prod = (
        (a + (b + c))
        * np.maximum(c - (a - b), 0.0)
        * (c + (a - b))
        * (a + (b - c))
    )
    return _snap((np.maximum(prod, 0.0) / 3.0) ** 0.25)


def measures_from_probs(p):
    """(ggm, three_pi, gmc, fill) stacked on the last axis, shape (..., 4)."""
    return np.stack(
        [ggm_from_probs(p), three_pi_from_probs(p), gmc_from_probs(p),
         fill_from_probs(p)], axis=-1,
    )


# ---------------------------------------------------------------------------
# generic route: density-matrix reductions and eigensolves.
# ---------------------------------------------------------------------------

def one_to_other_concurrences(state):
    """Concurrence triangle of a pure state via single-qubit reductions.

    The edge 2[1 - Tr(rho_X^2)] is evaluated as 4 det(rho_X), which is the
    same quantity for a unit-trace 2x2 matrix but free of the cancellation
    that 1 - Tr(rho^2) suffers near product states.
    """
    rho = tristate.density(state)
    edges = []
    for q in linalg.QUBITS:
        red = linalg.partial_trace(rho, q)
        det = (red[0, 0] * red[1, 1] - red[0, 1] * red[1, 0]).real
        edges.append(float(_snap(4.0 * det)))
    return ConcurrenceTriangle(*edges)


def ggm(state):
    """1 minus the largest eigenvalue among the three one-qubit reductions."""
    rho = tristate.density(state)
    lam = max(
        linalg.hermitian_eigenvalues(linalg.partial_trace(rho, q))[-1]
        for q in linalg.QUBITS
    )
    return float(_snap(1.0 - lam))


def negativity(rho, on=0):
    """Trace-norm deficit ||rho^T||_1 - 1 of a two-qubit partial transpose."""
    rho = np.asarray(rho, dtype=np.complex128)
    w = linalg.hermitian_eigenvalues(rho)
    if w[0] < -linalg.PSD_TOL:
        raise ValueError(f"negativity input is not PSD: min eigenvalue {w[0]:.3e}")
    wt = linalg.hermitian_eigenvalues(linalg.partial_transpose(rho, on))
    return float(_snap(-2.0 * wt[wt < 0.0].sum()))


def three_pi(state):
    """Average of the three residual entanglements pi_A, pi_B, pi_C."""
    rho = tristate.density(state)
    n_sq = {}
    for pair in ("AB", "AC", "BC"):
        n_sq[pair] = negativity(linalg.partial_trace(rho, pair)) ** 2
    tri = one_to_other_concurrences(state)
    pi_a = tri.edge_a - n_sq["AB"] - n_sq["AC"]
    pi_b = tri.edge_b - n_sq["AB"] - n_sq["BC"]
    pi_c = tri.edge_c - n_sq["AC"] - n_sq["BC"]
    return float(_snap((pi_a + pi_b + pi_c) / 3.0))


def gmc(state):
    """Shortest edge of the concurrence triangle (squared convention)."""
    return float(_snap(one_to_other_concurrences(state).shortest_edge))


def concurrence_fill(state):
    """Concurrence fill via Heron's formula on the generic triangle edges."""
    return one_to_other_concurrences(state).sqrt_area


# ---------------------------------------------------------------------------
# bundled evaluation.
# ---------------------------------------------------------------------------

PATHS = ("closed-form", "generic")


def report(params, initial, le, path="closed-form", u=None):
    """Probabilities plus all four measures at one L/E point (km/GeV)."""
    if path not in PATHS:
        raise ValueError(f"path must be one of {PATHS}, got {path!r}")
    probs = probabilities(params, initial, le, u=u)
    if path == "closed-form":
        p = np.array(probs.as_tuple())
        tri = ConcurrenceTriangle(*triangle_edges_from_probs(p))
        vals = (
            float(ggm_from_probs(p)), float(three_pi_from_probs(p)),
            float(gmc_from_probs(p)), float(fill_from_probs(p)),
        )
    else:
        state = tristate.make_state(amplitudes(params, initial, le, u=u))
        tri = one_to_other_concurrences(state)
        vals = (ggm(state), three_pi(state), gmc(state), concurrence_fill(state))
    return MeasureReport(float(le), probs, *vals, triangle=tri, path=path)
