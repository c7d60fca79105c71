"""Shared numerical infrastructure.

Radial grids and sampled density curves, adaptive Gauss-Legendre
quadrature, curve distance metrics, a seeded counter-based random number
generator, and histogram accumulation for the Monte Carlo sampler.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "NumericalError",
    "RadialGrid",
    "DensityCurve",
    "Histogram",
    "ComparisonReport",
    "uniform_grid",
    "midpoint_grid",
    "integrate",
    "integrate_composite",
    "curve_distance",
    "seeded_rng",
    "accumulate_histogram",
]


class NumericalError(RuntimeError):
    """Quadrature non-convergence or a failed numerical cross-check."""


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Strictly increasing radii in [0, r_max] with r_max in (0, 1]."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("grid needs at least two points")
        if not np.isfinite(pts).all():
            raise ValueError("grid points must be finite")
        if (np.diff(pts) <= 0).any():
            raise ValueError("grid points must be strictly increasing")
        if pts[0] < 0:
            raise ValueError("grid must start at r >= 0")
        if not 0.0 < pts[-1] <= 1.0:
            raise ValueError("grid must end at r_max in (0, 1]")

    @property
    def r_max(self):
        return float(self.points[-1])

    def __len__(self):
        return self.points.size

    def same_as(self, other):
        return self.points.shape == other.points.shape and bool(
            np.array_equal(self.points, other.points)
        )


def uniform_grid(r_max, n_points):
    """Evenly spaced grid 0 .. r_max inclusive."""
    if n_points < 2:
        raise ValueError("need at least two grid points")
    return RadialGrid(np.linspace(0.0, float(r_max), int(n_points)))


def midpoint_grid(r_max, n_bins):
    """Cell midpoints of n_bins equal cells on [0, r_max]; used for MC curves."""
    if n_bins < 1:
        raise ValueError("need at least one bin")
    edges = np.linspace(0.0, float(r_max), int(n_bins) + 1)
    return RadialGrid(0.5 * (edges[:-1] + edges[1:]))


@dataclass(frozen=True, eq=False)
class DensityCurve:
    """A radial probability density sampled on a grid (units 1/a, a = 1).

    Values must be non-negative and finite.  A curve sampled finely enough
    integrates to at most 1 (its producers check that where they promise
    it); the constructor does not enforce a mass bound because coarse
    grids make the trapezoid mass meaningless.
    """

    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.shape != self.grid.points.shape:
            raise ValueError("values and grid must have the same length")
        if not np.isfinite(vals).all():
            raise ValueError("density values must be finite")
        if (vals < 0).any():
            raise ValueError("density values must be non-negative")

    def mass(self):
        """Trapezoidal integral over the grid."""
        return float(np.trapezoid(self.values, self.grid.points))


@dataclass(frozen=True, eq=False)
class Histogram:
    """Counts per half-open bin [e_i, e_{i+1}); total_weight = samples drawn."""

    bin_edges: np.ndarray
    counts: np.ndarray
    total_weight: float

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=float)
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "counts", counts)
        if edges.ndim != 1 or edges.size < 2:
            raise ValueError("need at least two bin edges")
        if (np.diff(edges) <= 0).any():
            raise ValueError("bin edges must be strictly increasing")
        if counts.shape != (edges.size - 1,):
            raise ValueError("need one count per bin")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        if not self.total_weight > 0:
            raise ValueError("total_weight must be positive")

    def to_density_curve(self):
        """Density estimate count / (N * bin width) at the bin midpoints."""
        widths = np.diff(self.bin_edges)
        mids = 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])
        values = self.counts / (self.total_weight * widths)
        return DensityCurve(RadialGrid(mids), values)


@dataclass(frozen=True)
class ComparisonReport:
    """Distance between one level's total quantum density and the classical one."""

    n: int
    r_max: float
    l1_distance: float
    sup_distance: float
    degeneracy: int
    l_max: int

    def __post_init__(self):
        if self.l1_distance < 0 or self.sup_distance < 0:
            raise ValueError("distances must be non-negative")
        if self.degeneracy != (self.l_max + 1) ** 2 + 1:
            raise ValueError("degeneracy inconsistent with l_max")


_GL15_NODES, _GL15_WEIGHTS = np.polynomial.legendre.leggauss(15)
_GL7_NODES, _GL7_WEIGHTS = np.polynomial.legendre.leggauss(7)
_MAX_DEPTH = 60


def integrate(f, a, b, tol):
    """Adaptive Gauss-Legendre quadrature of f on [a, b] to absolute tolerance tol.

    ``f`` must accept a 1-D ndarray of abscissae and return the integrand
    values.  Each panel is estimated with a 15-point rule, its error with
    the difference against an embedded 7-point rule; panels that miss
    their share of the tolerance budget are bisected, at most
    ``_MAX_DEPTH`` levels deep.  A 15-point panel is exact for polynomials
    up to degree 29, so modest-degree polynomials cost a single panel.

    Endpoint singularities of integrable type converge but slowly; callers
    are expected to substitute them away first (see the classical module
    for the sin- and exp-tail substitutions used in this package).
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    span = b - a
    total = 0.0
    stack = [(a, b, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        y15 = np.asarray(f(mid + half * _GL15_NODES), dtype=float)
        y7 = np.asarray(f(mid + half * _GL7_NODES), dtype=float)
        if not (np.isfinite(y15).all() and np.isfinite(y7).all()):
            raise NumericalError(f"integrand not finite on panel [{lo}, {hi}]")
        est15 = half * float(y15 @ _GL15_WEIGHTS)
        est7 = half * float(y7 @ _GL7_WEIGHTS)
        err = abs(est15 - est7)
        if err <= tol * (hi - lo) / span:
            total += est15
        elif depth >= _MAX_DEPTH:
            raise NumericalError(
                f"quadrature failed to converge on [{lo}, {hi}] (panel error {err:.3e})"
            )
        else:
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    return total


def integrate_composite(f, a, b, panels):
    """Fixed composite 15-point Gauss-Legendre rule with one batched call.

    All ``panels * 15`` nodes go to ``f`` in a single array, so integrands
    whose evaluation has a large per-call setup cost (batch Bessel sweeps)
    pay it once.  No error estimate: the caller must size ``panels`` to
    the integrand, e.g. a few panels per oscillation, where the rule is
    accurate to rounding.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    panels = int(panels)
    if panels < 1:
        raise ValueError("need at least one panel")
    edges = np.linspace(a, b, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * np.diff(edges)
    nodes = (mids[:, None] + halves[:, None] * _GL15_NODES[None, :]).ravel()
    values = np.asarray(f(nodes), dtype=float).reshape(panels, _GL15_NODES.size)
    if not np.isfinite(values).all():
        raise NumericalError("integrand not finite on the composite grid")
    return float((values @ _GL15_WEIGHTS) @ halves)


def curve_distance(p, q, metric="l1"):
    """L1 (trapezoidal integral of |p - q|) or sup (max pointwise |p - q|).

    The curves must share an identical grid.
    """
    if not p.grid.same_as(q.grid):
        raise ValueError("curves must share an identical grid")
    diff = np.abs(p.values - q.values)
    metric = str(metric).lower()
    if metric == "l1":
        return float(np.trapezoid(diff, p.grid.points))
    if metric == "sup":
        return float(diff.max())
    raise ValueError(f"unknown metric {metric!r} (expected 'l1' or 'sup')")


def seeded_rng(seed, stream=0):
    """Deterministic Philox-backed generator for the given (seed, stream).

    Uses ``numpy.random.Philox`` keyed through
    ``SeedSequence(seed, spawn_key=(stream,))``: a counter-based generator,
    so streams with distinct indices are statistically independent and the
    sequence for a given (seed, stream) is bit-reproducible.  This exact
    construction is part of the output-reproducibility contract; do not
    swap the bit generator without revalidating the frozen CSVs.
    """
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    stream = int(stream)
    if stream < 0:
        raise ValueError("stream index must be non-negative")
    ss = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


def accumulate_histogram(samples, bin_edges):
    """Bin samples into half-open bins [e_i, e_{i+1}).

    A sample exactly on an interior edge lands in the bin to its right; a
    sample equal to the last edge, or outside the edge span, contributes
    to ``total_weight`` but to no bin.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("empty sample set")
    edges = np.asarray(bin_edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or (np.diff(edges) <= 0).any():
        raise ValueError("bin edges must be strictly increasing")
    n_bins = edges.size - 1
    idx = np.searchsorted(edges, samples, side="right") - 1
    in_range = (idx >= 0) & (idx < n_bins)
    counts = np.bincount(idx[in_range], minlength=n_bins).astype(np.int64)
    return Histogram(edges, counts, float(samples.size))
