"""Experiment drivers: distribution and moments of rescaled smallest
denominators (continuous and grid sampling), void and pigeonhole statistics,
distance moments, and the empirical-CDF / KS / histogram utilities.

Everything is deterministic: sample i of a run is a pure function of
(seed, i), so the thread count never changes the output.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .analytic import eta_survival, scale_L_to_s, zeta
from .exactnum import gcd_many
from .farey import FareyLevel, farey_1d_floats, iter_farey, sigma_Q
from .qmin import _simplest, qmin_nd_search
from .regions import QueryRegion, RegionSpec, unit_box
from .rng import DYADIC_G, uniform_dyadic_matrix, uniform_u64


# ---------------------------------------------------------------------------
# plans
# ---------------------------------------------------------------------------

MODES = ("continuous-mc", "grid-discrete")


@dataclass
class ExperimentPlan:
    """Fully deterministic description of one statistical run."""

    n: int
    mode: str
    delta: Fraction
    region: RegionSpec
    D: RegionSpec
    x0: tuple[Fraction, ...] = ()
    N: int | None = None
    samples: int | None = None
    seed: int = 0
    c: Fraction = Fraction(1)
    threads: int = 1
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        errors = []
        if self.mode not in MODES:
            errors.append(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.delta <= 0:
            errors.append("delta must be positive")
        if self.region.dim != self.n:
            errors.append("region dimension does not match n")
        if self.D.dim != self.n:
            errors.append("sampling box dimension does not match n")
        if self.D.kind == "ball":
            errors.append("sampling box D must be an interval/box")
        if not self.x0:
            self.x0 = tuple(Fraction(0) for _ in range(self.n))
        if len(self.x0) != self.n:
            errors.append("x0 length does not match n")
        if self.mode == "grid-discrete":
            if self.N is None or self.N < 1:
                errors.append("grid mode requires N >= 1")
        else:
            if self.samples is None or self.samples < 1:
                errors.append("continuous mode requires samples >= 1")
        if errors:
            raise ValueError("; ".join(errors))
        # the discrete-sampling consistency constraint is a warning, not an
        # error: the default experiments use delta = 1/N (c = 1)
        if self.mode == "grid-discrete" and self.c / self.delta > self.N:
            self.warnings.append(
                f"grid resolution N={self.N} is below c/delta="
                f"{float(self.c / self.delta):g}; the limit theorem needs "
                "c/delta <= N"
            )

    @property
    def rescale_exponent(self) -> float:
        return self.n / (self.n + 1.0)


def default_plan(n: int, mode: str, *, delta: Fraction, N=None, samples=None,
                 seed: int = 0, region: RegionSpec | None = None,
                 D: RegionSpec | None = None, x0=(), threads: int = 1) -> ExperimentPlan:
    return ExperimentPlan(
        n=n, mode=mode, delta=Fraction(delta),
        region=region if region is not None else unit_box(n),
        D=D if D is not None else unit_box(n),
        x0=tuple(x0), N=N, samples=samples, seed=seed, threads=threads,
    )


# ---------------------------------------------------------------------------
# empirical distributions
# ---------------------------------------------------------------------------


class EmpiricalCdf:
    """Sorted-sample empirical distribution (no smoothing, no interpolation)."""

    def __init__(self, values):
        arr = np.sort(np.asarray(values, dtype=np.float64))
        if arr.size == 0:
            raise ValueError("no samples")
        self.values = arr
        self.total = arr.size

    def cdf(self, v: float) -> float:
        return np.searchsorted(self.values, v, side="right") / self.total

    def survival(self, v: float) -> float:
        return 1.0 - self.cdf(v)

    def survival_grid(self, grid) -> np.ndarray:
        idx = np.searchsorted(self.values, np.asarray(grid, dtype=np.float64),
                              side="right")
        return 1.0 - idx / self.total


def ks_distance(emp: EmpiricalCdf, model_cdf) -> float:
    """sup_x |empirical - model|, evaluated at both sides of every step."""
    v = emp.values
    f = np.array([model_cdf(x) for x in v], dtype=np.float64)
    i = np.arange(1, emp.total + 1, dtype=np.float64)
    upper = np.abs(f - i / emp.total)
    lower = np.abs(f - (i - 1) / emp.total)
    return float(np.maximum(upper, lower).max())


@dataclass(frozen=True)
class PigeonholeHistogram:
    """Counts-per-cell histogram: counts[k] = number of cells with k points."""

    counts: dict[int, int]
    total_cells: int
    assigned_points: int
    N: int
    Q: Fraction
    n: int

    def frequencies(self) -> dict[int, float]:
        return {k: c / self.total_cells for k, c in self.counts.items()}

    def weighted_sum(self) -> int:
        """sum_k k * count(k); equals #F_Q exactly in the tiling case."""
        return sum(k * c for k, c in self.counts.items())


# ---------------------------------------------------------------------------
# shared sample generation
# ---------------------------------------------------------------------------


def _box_axes(spec: RegionSpec):
    if spec.kind == "ball":
        raise ValueError("expected an interval/box region")
    return spec.axes


def _grid_points(plan: ExperimentPlan):
    """Exact grid x = x0 + j/N for j in Z^n intersect N*D, lexicographic."""
    N = plan.N
    ranges = []
    for a in _box_axes(plan.D):
        lo, hi = N * a.lo, N * a.hi
        j_lo = -((-lo.numerator) // lo.denominator)
        if a.lo_open and j_lo == lo:
            j_lo += 1
        j_hi = hi.numerator // hi.denominator
        if a.hi_open and j_hi == hi:
            j_hi -= 1
        ranges.append(range(j_lo, j_hi + 1))
    for j in itertools.product(*ranges):
        yield tuple(x0a + Fraction(ja, N) for x0a, ja in zip(plan.x0, j))


def _continuous_points(plan: ExperimentPlan):
    """Exact dyadic draws x uniform in D (D a box), one Fraction tuple per sample."""
    axes = _box_axes(plan.D)
    for i in range(plan.samples):
        yield tuple(
            a.lo + a.width * Fraction(uniform_u64(plan.seed, i * plan.n + ax) >> 11,
                                      DYADIC_G)
            for ax, a in enumerate(axes)
        )


def _sharded(fn, items, threads: int):
    """Apply fn to chunks of items on a thread pool; deterministic merge order."""
    chunks = [c for c in np.array_split(np.asarray(items, dtype=object), max(threads, 1))
              if len(c)]
    if threads <= 1 or len(chunks) <= 1:
        return [fn(list(c)) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, [list(c) for c in chunks]))


# ---------------------------------------------------------------------------
# q_min experiments
# ---------------------------------------------------------------------------


def _qmin_1d_batch(xs, delta: Fraction, region: RegionSpec, threads: int) -> np.ndarray:
    """Fast exact descent for many 1D query points."""
    (axis,) = region.bounding_axes()
    lo_off, hi_off = delta * axis.lo, delta * axis.hi
    on, od = lo_off.numerator, lo_off.denominator
    hn, hd = hi_off.numerator, hi_off.denominator
    lo_open, hi_open = axis.lo_open, axis.hi_open

    def run(chunk):
        out = np.empty(len(chunk), dtype=np.int64)
        for i, (x,) in enumerate(chunk):
            xn, xd = x.numerator, x.denominator
            _, den = _simplest(xn * od + xd * on, xd * od,
                               xn * hd + xd * hn, xd * hd,
                               lo_open, hi_open)
            out[i] = den
        return out

    return np.concatenate(_sharded(run, list(xs), threads))


def _qmin_nd_exact_batch(xs, delta, region, threads) -> np.ndarray:
    def run(chunk):
        out = np.empty(len(chunk), dtype=np.int64)
        for i, x in enumerate(chunk):
            out[i] = qmin_nd_search(QueryRegion(region, tuple(x), delta)).q
        return out

    return np.concatenate(_sharded(run, list(xs), threads))


def _kernel_bounds(region: RegionSpec, scale: float):
    axes = region.bounding_axes()
    lo = np.array([scale * float(a.lo) for a in axes])
    hi = np.array([scale * float(a.hi) for a in axes])
    lo_open = np.array([a.lo_open for a in axes])
    hi_open = np.array([a.hi_open for a in axes])
    return lo, hi, lo_open, hi_open


def qmin_values(plan: ExperimentPlan) -> np.ndarray:
    """q_min over all sample points of the plan, in sample order."""
    if plan.mode == "grid-discrete":
        xs = list(_grid_points(plan))
    elif plan.n >= 2 and plan.region.kind != "ball":
        # hot path: dyadic float samples + the jitted box kernel
        from .qmin import qmin_cap

        axes = _box_axes(plan.D)
        base = uniform_dyadic_matrix(plan.seed, plan.samples, plan.n)
        xs = np.empty_like(base)
        for a, ax in enumerate(axes):
            xs[:, a] = float(ax.lo) + float(ax.width) * base[:, a]
        lo, hi, lo_open, hi_open = _kernel_bounds(plan.region, float(plan.delta))
        cap = qmin_cap(QueryRegion(plan.region,
                                   tuple(Fraction(0) for _ in range(plan.n)),
                                   plan.delta))
        shards = np.array_split(xs, max(plan.threads, 1))
        shards = [s for s in shards if len(s)]

        def run(chunk):
            return kernels.box_qmin_batch(chunk, lo, hi, lo_open, hi_open, cap)

        if plan.threads <= 1 or len(shards) <= 1:
            parts = [run(s) for s in shards]
        else:
            with ThreadPoolExecutor(max_workers=plan.threads) as pool:
                parts = list(pool.map(run, shards))
        out = np.concatenate(parts)
        if (out < 0).any():
            raise RuntimeError("q_min search cap exceeded in kernel (internal bug)")
        return out
    else:
        xs = list(_continuous_points(plan))

    if plan.n == 1:
        return _qmin_1d_batch(xs, plan.delta, plan.region, plan.threads)
    return _qmin_nd_exact_batch(xs, plan.delta, plan.region, plan.threads)


@dataclass(frozen=True)
class QminDistResult:
    plan: ExperimentPlan
    rescaled: EmpiricalCdf
    L_grid: np.ndarray
    empirical_survival: np.ndarray
    model_survival: np.ndarray | None  # closed form exists in 1D only

    def rows(self):
        out = []
        for i, L in enumerate(self.L_grid):
            m = self.model_survival[i] if self.model_survival is not None else ""
            out.append((float(L), float(self.empirical_survival[i]), m))
        return out


def qmin_distribution_experiment(plan: ExperimentPlan, L_grid) -> QminDistResult:
    """Empirical law of delta^(n/(n+1)) * q_min with survival values on L_grid."""
    q = qmin_values(plan)
    rescaled = EmpiricalCdf(float(plan.delta) ** plan.rescale_exponent
                            * q.astype(np.float64))
    grid = np.asarray(L_grid, dtype=np.float64)
    emp = rescaled.survival_grid(grid)
    model = np.array([eta_survival(L) for L in grid]) if plan.n == 1 else None
    return QminDistResult(plan=plan, rescaled=rescaled, L_grid=grid,
                          empirical_survival=emp, model_survival=model)


def qmin_moment_experiment(plan: ExperimentPlan, alpha: complex) -> complex:
    """Normalized empirical moment: average of (delta^(n/(n+1)) q_min)^alpha."""
    alpha = complex(alpha)
    if abs(alpha.real) >= plan.n + 1:
        raise ValueError(f"moment diverges: |Re alpha| must be < {plan.n + 1}")
    if alpha == 0:
        return complex(1.0)
    q = qmin_values(plan).astype(np.float64)
    rescaled = float(plan.delta) ** plan.rescale_exponent * q
    if alpha.imag == 0:
        return complex(np.mean(rescaled ** alpha.real))
    return complex(np.mean(rescaled ** alpha))


# ---------------------------------------------------------------------------
# void statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VoidResult:
    k_values: np.ndarray
    frequencies: np.ndarray
    stderr: np.ndarray
    samples: int
    Q: Fraction
    s: float
    width: float

    def void_probability(self) -> float:
        return float(self.frequencies[0]) if self.k_values[0] == 0 else 0.0


def void_statistic_experiment(n: int, Q, s: float, region: RegionSpec | None = None,
                              D: RegionSpec | None = None, samples: int = 10000,
                              seed: int = 0, threads: int = 1) -> VoidResult:
    """Monte Carlo frequencies of k = #(F_Q intersect x + sigma_Q^(-1/n) s A + Z^n)."""
    if s <= 0:
        raise ValueError("s must be positive")
    region = region if region is not None else unit_box(n)
    D = D if D is not None else unit_box(n)
    level = FareyLevel(n, Fraction(Q))
    w = s * sigma_Q(level) ** (-1.0 / n)
    axes = _box_axes(D)
    base = uniform_dyadic_matrix(seed, samples, n)
    xs = np.empty_like(base)
    for a, ax in enumerate(axes):
        xs[:, a] = float(ax.lo) + float(ax.width) * base[:, a]
    lo, hi, lo_open, hi_open = _kernel_bounds(region, w)
    shards = [c for c in np.array_split(xs, max(threads, 1)) if len(c)]

    def run(chunk):
        return kernels.box_count_batch(chunk, lo, hi, lo_open, hi_open, level.q_max)

    if threads <= 1 or len(shards) <= 1:
        parts = [run(c) for c in shards]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, shards))
    counts = np.concatenate(parts)
    freq = np.bincount(counts) / samples
    k = np.arange(freq.size)
    stderr = np.sqrt(freq * (1.0 - freq) / samples)
    return VoidResult(k_values=k, frequencies=freq, stderr=stderr,
                      samples=samples, Q=Fraction(Q), s=s, width=w)


# ---------------------------------------------------------------------------
# pigeonhole statistics
# ---------------------------------------------------------------------------


def pigeonhole_experiment(n: int, N: int, Q, x0=(), s: float | None = None) -> PigeonholeHistogram:
    """Assign every Farey point to its cell x0 + j/N + sigma_Q^(-1/n)[0,s)^n.

    With s omitted (or sigma_Q^(-1/n) s = 1/N) the cells tile the torus and the
    assignment is exact rational floor arithmetic; otherwise points outside
    every cell are skipped (cells are then strictly smaller than the tiles).
    """
    level = FareyLevel(n, Fraction(Q))
    x0 = tuple(x0) if x0 else tuple(Fraction(0) for _ in range(n))
    w = None if s is None else s * sigma_Q(level) ** (-1.0 / n)
    cells = np.zeros(N**n, dtype=np.int64)
    assigned = 0
    for p, q in iter_farey(level):
        idx = 0
        ok = True
        for a in range(n):
            u = (Fraction(p[a], q) - x0[a]) % 1
            j = (N * u.numerator) // u.denominator  # floor(N u), exact
            if w is not None and not (u - Fraction(j, N) < w):
                ok = False
                break
            idx = idx * N + j
        if ok:
            cells[idx] += 1
            assigned += 1
    hist = np.bincount(cells)
    counts = {int(k): int(c) for k, c in enumerate(hist) if c}
    return PigeonholeHistogram(counts=counts, total_cells=N**n,
                               assigned_points=assigned, N=N, Q=Fraction(Q), n=n)


# ---------------------------------------------------------------------------
# distance moments
# ---------------------------------------------------------------------------


def _torus_dist_floats(xs: np.ndarray, pts: np.ndarray, norm_id: str) -> np.ndarray:
    """Distances from each x (rows of xs) to the nearest of pts, on the torus."""
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        d = np.abs(xs[i] - pts)
        d = np.minimum(d, 1.0 - d)
        if norm_id == "sup":
            v = d.max(axis=1)
        elif norm_id == "l1":
            v = d.sum(axis=1)
        else:
            v = np.sqrt((d * d).sum(axis=1))
        out[i] = v.min()
    return out


def distance_moment_experiment(n: int, Q, beta: complex, mode: str,
                               N: int | None = None, samples: int | None = None,
                               seed: int = 0, norm_id: str = "euclidean",
                               threads: int = 1) -> complex:
    """Normalized distance moment sigma_Q^(beta/n) * average dist(x, F_Q)^beta."""
    beta = complex(beta)
    # near a Farey point the distance density vanishes like r^(n-1), so
    # negative moments diverge at Re beta = -n; positive moments are bounded
    # by the covering radius and always exist
    if beta.real <= -n:
        raise ValueError(f"moment diverges: Re beta must be > -{n}")
    if beta == 0:
        return complex(1.0)
    level = FareyLevel(n, Fraction(Q))
    if mode == "grid-discrete":
        if N is None:
            raise ValueError("grid mode requires N")
        xs = (np.arange(N, dtype=np.float64) / N)
        xs = np.array(np.meshgrid(*([xs] * n), indexing="ij")).reshape(n, -1).T
    else:
        if samples is None:
            raise ValueError("continuous mode requires samples")
        xs = uniform_dyadic_matrix(seed, samples, n)

    if n == 1:
        pts = farey_1d_floats(level.q_max)
        arr = np.concatenate([pts, [1.0]])  # wrap sentinel: 1.0 ~ 0/1
        x = xs[:, 0]
        idx = np.searchsorted(arr, x)
        dist = np.minimum(x - arr[idx - 1], arr[idx] - x)
    else:
        pts = np.array([[pi / q for pi in p] for p, q in iter_farey(level)])
        shards = [c for c in np.array_split(xs, max(threads, 1)) if len(c)]
        dist = np.concatenate([_torus_dist_floats(c, pts, norm_id) for c in shards])
    scale = sigma_Q(level) ** (beta / n)
    if beta.imag == 0:
        return complex(scale * np.mean(dist ** beta.real))
    return complex(scale * np.mean(dist.astype(complex) ** beta))


# ---------------------------------------------------------------------------
# histograms
# ---------------------------------------------------------------------------


def histogram_emit(samples, bins: int, value_range=None, fmt: str = "csv",
                   model=None, title: str = ""):
    """Density-normalized histogram as CSV text or a standalone SVG document."""
    from .output import csv_text, svg_histogram

    arr = np.asarray(samples, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("no samples")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    density, edges = np.histogram(arr, bins=bins, range=value_range, density=True)
    lo, hi = edges[:-1], edges[1:]
    if fmt == "csv":
        return csv_text(["bin_lo", "bin_hi", "density"],
                        list(zip(lo.tolist(), hi.tolist(), density.tolist())))
    if fmt == "svg":
        curve = None
        if model is not None:
            gx = np.linspace(edges[0], edges[-1], 200)
            curve = [(float(x), float(model(x))) for x in gx]
        return svg_histogram(lo, hi, density, model=curve, title=title)
    raise ValueError(f"unknown format {fmt!r}")
