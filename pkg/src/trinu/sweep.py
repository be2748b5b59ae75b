"""L/E sweeps, CSV serialization and extremum refinement.

The CSV schema is fixed: le_km_per_GeV, p_e, p_mu, p_tau, ggm, three_pi,
gmc, fill, edge_a, edge_b, edge_c.  Numbers are written with 12 significant
digits ('%.12g', lowercase scientific below 1e-4), so repeated runs with the
same configuration are byte-identical.
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import measures, oscillation
from .oscillation import OscillationParams

CSV_COLUMNS = (
    "le_km_per_GeV", "p_e", "p_mu", "p_tau",
    "ggm", "three_pi", "gmc", "fill",
    "edge_a", "edge_b", "edge_c",
)

UNITS = ("km/GeV", "km/MeV")
SCALES = ("linear", "log")
PATHS = ("closed-form", "generic", "both")
INITIALS = ("e", "mu")

MAX_POINTS = 10 ** 7


class ConfigError(ValueError):
    """A SweepConfig field failed validation; carries the field name."""

    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name


@dataclass
class SweepConfig:
    initial: str = "e"
    le_min: float = 0.0
    le_max: float = 40.0
    unit: str = "km/MeV"
    points: int = 4001
    scale: str = "linear"
    path: str = "closed-form"
    params_file: str | None = None
    output: str | None = None
    workers: int = 1

    def validate(self):
        if self.initial not in INITIALS:
            raise ConfigError("initial", f"must be one of {INITIALS}, got {self.initial!r}")
        if self.unit not in UNITS:
            raise ConfigError("unit", f"must be one of {UNITS}, got {self.unit!r}")
        if self.scale not in SCALES:
            raise ConfigError("scale", f"must be one of {SCALES}, got {self.scale!r}")
        if self.path not in PATHS:
            raise ConfigError("path", f"must be one of {PATHS}, got {self.path!r}")
        if not (math.isfinite(self.le_min) and math.isfinite(self.le_max)):
            raise ConfigError("le_min", "sweep bounds must be finite")
        if not self.le_min < self.le_max:
            raise ConfigError("le_min", f"le_min ({self.le_min}) must be < le_max ({self.le_max})")
        if self.scale == "log" and self.le_min <= 0:
            raise ConfigError("le_min", "log scale requires le_min > 0")
        if not 2 <= self.points <= MAX_POINTS:
            raise ConfigError("points", f"must be in [2, {MAX_POINTS}], got {self.points}")
        if self.workers < 1:
            raise ConfigError("workers", f"must be >= 1, got {self.workers}")
        return self

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown configuration field")
        return cls(**data).validate()

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ConfigError("config", "configuration file must hold a JSON object")
        return cls.from_dict(data)

    def unit_factor(self):
        """Multiplier taking configured L/E values to km/GeV."""
        return 1000.0 if self.unit == "km/MeV" else 1.0

    def grid(self):
        """The L/E grid in km/GeV, ascending."""
        if self.scale == "log":
            g = np.geomspace(self.le_min, self.le_max, self.points)
        else:
            g = np.linspace(self.le_min, self.le_max, self.points)
        return g * self.unit_factor()

    def load_params(self):
        if self.params_file is None:
            return OscillationParams()
        return OscillationParams.from_json(self.params_file)


@dataclass
class SweepResult:
    config: SweepConfig
    le: np.ndarray
    table: np.ndarray                 # (points, 11), the emitted path
    generic_table: np.ndarray | None  # populated when path == "both"
    summary: dict = field(default_factory=dict)


def _initial_flavor(initial):
    return {"e": "e", "mu": "mu"}[initial]


def _closed_form_table(params, initial, le):
    probs = oscillation.probability_array(params, initial, le)
    edges = measures.triangle_edges_from_probs(probs)
    vals = measures.measures_from_probs(probs)
    return np.column_stack([le, probs, vals, edges])


def _generic_rows(args):
    params, initial, le_chunk = args
    u = oscillation.build_pmns(params)
    rows = np.empty((len(le_chunk), len(CSV_COLUMNS)))
    for i, le in enumerate(le_chunk):
        rep = measures.report(params, initial, le, path="generic", u=u)
        rows[i] = (le, *rep.probabilities.as_tuple(), *rep.measures(),
                   *rep.triangle.edges())
    return rows


def _generic_table(params, initial, le, workers):
    if workers <= 1 or len(le) < 4 * workers:
        return _generic_rows((params, initial, le))
    chunks = np.array_split(le, 4 * workers)
    jobs = [(params, initial, chunk) for chunk in chunks if len(chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_generic_rows, jobs))
    return np.concatenate(parts, axis=0)


def _grid_local_extrema(y):
    """Counts of strict grid-local minima and maxima of a sampled curve."""
    interior = y[1:-1]
    minima = int(np.sum((interior < y[:-2]) & (interior < y[2:])))
    maxima = int(np.sum((interior > y[:-2]) & (interior > y[2:])))
    return minima, maxima


def run_sweep(config, params=None):
    """Evaluate the configured sweep; rows are ordered by L/E ascending.

    With path "both" the closed-form values are the ones serialized and the
    run summary carries the max per-column discrepancy against the generic
    route.
    """
    config.validate()
    if params is None:
        params = config.load_params()
    le = config.grid()
    initial = _initial_flavor(config.initial)
    closed = generic = None
    if config.path in ("closed-form", "both"):
        closed = _closed_form_table(params, initial, le)
    if config.path in ("generic", "both"):
        generic = _generic_table(params, initial, le, config.workers)
    table = closed if closed is not None else generic
    summary = {"points": int(config.points), "path": config.path}
    gmc_col = table[:, CSV_COLUMNS.index("gmc")]
    minima, maxima = _grid_local_extrema(gmc_col)
    summary["gmc_grid_local_minima"] = minima
    summary["gmc_grid_local_maxima"] = maxima
    edge_cols = table[:, CSV_COLUMNS.index("edge_a"):CSV_COLUMNS.index("edge_c") + 1]
    arg = edge_cols.argmin(axis=1)
    summary["gmc_kinks"] = int(np.sum(arg[1:] != arg[:-1]))
    fill_col = table[:, CSV_COLUMNS.index("fill")]
    summary["min_fill_minus_gmc"] = float(np.min(fill_col - gmc_col))
    if config.path == "both":
        summary["max_path_discrepancy"] = float(np.max(np.abs(closed - generic)))
    return SweepResult(config, le, table,
                       generic if config.path == "both" else None, summary)


SLOPE_COLUMNS = ("le_km_per_GeV", "d_ggm", "d_three_pi", "d_gmc", "d_fill")


def slope_table(result):
    """Central finite-difference slopes of the four measures along the grid.

    Meant for inspecting kinks: the non-smooth measures (ggm, gmc) show slope
    jumps where their min/max argument switches.  Rows correspond to the
    interior grid points.
    """
    le = result.table[:, 0]
    cols = [result.table[:, CSV_COLUMNS.index(name)]
            for name in ("ggm", "three_pi", "gmc", "fill")]
    d_le = le[2:] - le[:-2]
    slopes = [(c[2:] - c[:-2]) / d_le for c in cols]
    return np.column_stack([le[1:-1], *slopes])


def write_slopes(result, stream):
    stream.write(",".join(SLOPE_COLUMNS) + "\n")
    for row in slope_table(result):
        stream.write(",".join(format_number(v) for v in row) + "\n")


def format_number(x):
    """Deterministic 12-significant-digit serialization of one value."""
    if x == 0:
        return "0"
    return f"{x:.12g}"


def write_csv(result, stream):
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for row in result.table:
        stream.write(",".join(format_number(v) for v in row) + "\n")


def summary_lines(result):
    lines = [f"rows: {result.summary['points']}  path: {result.summary['path']}"]
    lines.append(
        "gmc grid-local minima/maxima: "
        f"{result.summary['gmc_grid_local_minima']}/"
        f"{result.summary['gmc_grid_local_maxima']}"
        f"  kinks (shortest-edge switches): {result.summary['gmc_kinks']}"
    )
    if "max_path_discrepancy" in result.summary:
        lines.append(
            f"max |closed-form - generic|: {result.summary['max_path_discrepancy']:.3e}"
        )
    return lines


# ---------------------------------------------------------------------------
# extremum refinement.
# ---------------------------------------------------------------------------

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

#: Coarse-scan resolution inside the requested window.
SCAN_POINTS = 257


@dataclass(frozen=True)
class ExtremumRecord:
    kind: str
    measure: str
    le: float        # km/GeV
    value: float
    bracket: tuple
    boundary: bool = False


def _measure_at(params, initial, path, measure):
    u = oscillation.build_pmns(params)

    def f(le):
        rep = measures.report(params, initial, le, path=path, u=u)
        return getattr(rep, measure)

    return f


def find_extremum(config, measure, kind, window, params=None):
    """Locate an extremum of one measure inside a window of the sweep range.

    The window is given in the config's unit.  A coarse scan brackets the
    extremum, golden-section refines it to 1e-6 of the window width.  If the
    best scan point sits on the window boundary the record is flagged and no
    refinement is attempted.
    """
    config.validate()
    if measure not in measures.MEASURE_NAMES:
        raise ConfigError("measure", f"must be one of {measures.MEASURE_NAMES}")
    if kind not in ("max", "min"):
        raise ConfigError("kind", f"must be 'max' or 'min', got {kind!r}")
    lo, hi = (w * config.unit_factor() for w in window)
    if not lo < hi:
        raise ConfigError("window", f"empty window {window!r}")
    sweep_lo, sweep_hi = config.le_min * config.unit_factor(), config.le_max * config.unit_factor()
    if lo < sweep_lo - 1e-9 or hi > sweep_hi + 1e-9:
        raise ConfigError("window", "window must lie inside the sweep range")
    if params is None:
        params = config.load_params()
    path = "closed-form" if config.path == "both" else config.path
    f = _measure_at(params, _initial_flavor(config.initial), path, measure)
    sign = -1.0 if kind == "max" else 1.0

    grid = np.linspace(lo, hi, SCAN_POINTS)
    vals = np.array([sign * f(x) for x in grid])
    best = int(np.argmin(vals))
    if best in (0, SCAN_POINTS - 1):
        le = float(grid[best])
        return ExtremumRecord(kind, measure, le, f(le), (lo, hi), boundary=True)

    a, b = float(grid[best - 1]), float(grid[best + 1])
    tol = 1e-6 * (hi - lo)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = sign * f(c), sign * f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = sign * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = sign * f(d)
    le = 0.5 * (a + b)
    return ExtremumRecord(kind, measure, le, f(le), (a, b))


# ---------------------------------------------------------------------------
# concurrence-triangle report.
# ---------------------------------------------------------------------------

def triangle_record(params, initial, le):
    """Edges, half-perimeter and areas of the concurrence triangle at one point.

    ``le`` is in km/GeV.  Returns a plain dict (JSON-ready).
    """
    rep = measures.report(params, initial, le, path="closed-form")
    tri = rep.triangle
    return {
        "initial": initial,
        "le_km_per_GeV": float(le),
        "probabilities": {
            "p_e": rep.probabilities.p_e,
            "p_mu": rep.probabilities.p_mu,
            "p_tau": rep.probabilities.p_tau,
        },
        "edges": {"a": tri.edge_a, "b": tri.edge_b, "c": tri.edge_c},
        "half_perimeter": tri.half_perimeter,
        "sqrt_area": rep.fill,
        "shortest_edge": rep.gmc,
        "fill_minus_gmc": rep.fill - rep.gmc,
    }


def triangle_text(record):
    p = record["probabilities"]
    e = record["edges"]
    lines = [
        f"concurrence triangle: initial={record['initial']}  "
        f"L/E={format_number(record['le_km_per_GeV'])} km/GeV",
        f"  probabilities  (p_e, p_mu, p_tau) = "
        f"({p['p_e']:.6f}, {p['p_mu']:.6f}, {p['p_tau']:.6f})",
        f"  edges          (a, b, c) = ({e['a']:.6f}, {e['b']:.6f}, {e['c']:.6f})",
        f"  half-perimeter Q = {record['half_perimeter']:.6f}",
        f"  sqrt(area)  [fill]     = {record['sqrt_area']:.6f}",
        f"  shortest edge [gmc]    = {record['shortest_edge']:.6f}",
        f"  fill - gmc             = {record['fill_minus_gmc']:+.6f}",
    ]
    return "\n".join(lines)
