"""Julia-set machinery: certified escape radii, escape-time rasters, the
equilibrium-measure sampler by randomized inverse iteration, and the
invariance / preimage-count diagnostics.

Randomness comes exclusively from an explicit 64-bit seed feeding a
counter-based generator (Philox); there is no global RNG anywhere.  Sampling
work can be partitioned across workers, each on a jumped generator stream, and
the output is a deterministic function of (seed, worker count).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from . import rootfind
from .errors import ConvergenceError, ValidationError
from .poly import Poly

OVERFLOW_GUARD = 1e150
_RADIUS_CHECK_POINTS = 200
_RADIUS_CHECK_SEED = 73111


@dataclass
class EscapeData:
    """A polynomial with its certified escape radius.

    r_escape: one application of the polynomial at |z| > r_escape at least
    doubles the modulus (triangle-inequality certificate, degree >= 2).
    r_uniform: a radius meant to bound the filled Julia sets of a whole batch;
    defaults to r_escape, set to the batch maximum in batch mode.
    refine: optional scalar (z, w) -> z step against a more accurate
    evaluation form; the sampler applies it to each chosen orbit point.
    """

    poly: Poly
    r_escape: float
    r_uniform: float
    refine: object = None

    @property
    def degree(self) -> int:
        return self.poly.degree


def _certified_radius(mono: np.ndarray, d: int) -> float:
    return max(1.0, (2.0 + float(np.sum(np.abs(mono[:d])))) / abs(mono[d]))


def escape_radius(p: Poly, r_uniform: float | None = None, refine=None) -> EscapeData:
    """EscapeData for p, with the doubling inequality spot-checked by sampling."""
    p = p.trimmed()
    d = p.degree
    if d < 2:
        raise ValueError("escape dynamics need degree >= 2")
    mono = p.monomial_coeffs()
    r = _certified_radius(mono, d)
    rng = np.random.default_rng(_RADIUS_CHECK_SEED)
    radii = rng.uniform(1.01 * r, 10.0 * r, _RADIUS_CHECK_POINTS)
    z = radii * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, _RADIUS_CHECK_POINTS))
    if not np.all(np.abs(p(z)) > 2.0 * np.abs(z)):
        raise ValidationError("escape inequality failed the sampling check")
    return EscapeData(p, r, r_uniform if r_uniform is not None else r, refine)


def batch_escape_data(polys, refiners=None) -> list[EscapeData]:
    """EscapeData for a family, sharing r_uniform = max of the escape radii."""
    refiners = refiners if refiners is not None else [None] * len(polys)
    datas = [escape_radius(p, refine=ref) for p, ref in zip(polys, refiners)]
    r_tilde = max(e.r_escape for e in datas)
    return [EscapeData(e.poly, e.r_escape, r_tilde, e.refine) for e in datas]


# ---------------------------------------------------------------------------
# escape-time raster

@dataclass
class RasterGrid:
    """Escape-iteration counts over a square window of the plane.

    counts[i, j] is the first k with |p^k(z)| beyond the escape radius for the
    center of pixel (row i from the top, column j from the left); max_iter
    means the orbit never left within the budget.
    """

    center: complex
    half_width: float
    resolution: int
    max_iter: int
    counts: np.ndarray

    @property
    def pixel_width(self) -> float:
        return 2.0 * self.half_width / self.resolution

    def pixel_centers(self):
        res = self.resolution
        xs = self.center.real + self.half_width * (2.0 * (np.arange(res) + 0.5) / res - 1.0)
        ys = self.center.imag + self.half_width * (1.0 - 2.0 * (np.arange(res) + 0.5) / res)
        return xs, ys

    def pixel_index(self, z: complex):
        """(row, col) of the pixel containing z, or None when outside the window."""
        col = int(np.floor((z.real - self.center.real + self.half_width) / self.pixel_width))
        row = int(np.floor((self.center.imag + self.half_width - z.imag) / self.pixel_width))
        if 0 <= row < self.resolution and 0 <= col < self.resolution:
            return row, col
        return None


def escape_raster(e: EscapeData, center: complex = 0j, half_width: float = 2.0,
                  resolution: int = 512, max_iter: int = 100) -> RasterGrid:
    """Iterate every pixel center until it leaves the escape disk (or max_iter)."""
    if not (1 <= resolution <= 8192):
        raise ValueError("resolution must be in [1, 8192]")
    if not (1 <= max_iter <= 10000):
        raise ValueError("max_iter must be in [1, 10000]")
    res = resolution
    xs = center.real + half_width * (2.0 * (np.arange(res) + 0.5) / res - 1.0)
    ys = center.imag + half_width * (1.0 - 2.0 * (np.arange(res) + 0.5) / res)
    grid = (xs[None, :] + 1j * ys[:, None]).ravel()

    coeffs = e.poly.monomial_coeffs()
    r_sq = e.r_escape * e.r_escape
    counts = np.full(grid.size, max_iter, dtype=np.int32)
    idx = np.arange(grid.size)
    cur = grid.copy()
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(max_iter):
            mag_sq = cur.real * cur.real + cur.imag * cur.imag
            esc = (mag_sq > r_sq) | ~np.isfinite(mag_sq)
            if esc.any():
                counts[idx[esc]] = k
                keep = ~esc
                idx = idx[keep]
                cur = cur[keep]
            if idx.size == 0:
                break
            cur = _horner(coeffs, cur)
            bad = ~np.isfinite(cur) | (np.abs(cur.real) > OVERFLOW_GUARD) \
                | (np.abs(cur.imag) > OVERFLOW_GUARD)
            if bad.any():
                cur[bad] = 2.0 * OVERFLOW_GUARD
    return RasterGrid(center=complex(center), half_width=float(half_width),
                      resolution=res, max_iter=max_iter,
                      counts=counts.reshape(res, res))


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.full(z.shape, coeffs[-1], dtype=complex)
    for ck in coeffs[-2::-1]:
        out = out * z + ck
    return out


def raster_to_pgm(raster: RasterGrid) -> bytes:
    """Binary PGM (P5, maxval 255): pixel = floor(255 * count / max_iter)."""
    scaled = (raster.counts.astype(np.int64) * 255) // raster.max_iter
    body = scaled.astype(np.uint8).tobytes()
    header = f"P5\n{raster.resolution} {raster.resolution}\n255\n".encode("ascii")
    return header + body


# ---------------------------------------------------------------------------
# randomized inverse iteration

@dataclass
class BrolinSample:
    """Backward-orbit sample of the balanced measure (post burn-in)."""

    points: np.ndarray
    seed: int
    burn_in: int
    degree: int

    @property
    def size(self) -> int:
        return len(self.points)

    def to_measure(self):
        from .measures import EmpiricalMeasure

        return EmpiricalMeasure.from_points(self.points)

    def to_csv(self) -> str:
        lines = ["re,im"]
        for z in self.points:
            lines.append(f"{z.real:.17g},{z.imag:.17g}")
        return "\n".join(lines) + "\n"


def _scale_bound(mono_abs: np.ndarray, r: float) -> float:
    return float(np.sum(mono_abs * np.power(1.0 + r, np.arange(len(mono_abs)))))


class _PreimageSolver:
    """Warm-started Aberth solves of p(z) = w along one backward orbit."""

    def __init__(self, coeffs: np.ndarray):
        self.coeffs = coeffs.copy()
        self.d = len(coeffs) - 1
        self.mono_abs = np.abs(coeffs)
        self.prev = None

    def solve(self, w: complex) -> np.ndarray:
        shifted = self.coeffs.copy()
        shifted[0] -= w

        attempts = []
        if self.prev is not None:
            attempts.append(self.prev)
        attempts.append(rootfind.initial_circle(shifted, self.d))
        for z0 in attempts:
            z, ok = rootfind.aberth_monomial(shifted, z0, 300)
            if not ok:
                continue
            worst = np.max(np.abs(_horner(shifted, z)))
            scale = _scale_bound(self.mono_abs, float(np.max(np.abs(z)))) + abs(w)
            if worst <= 1e-7 * scale:
                order = np.lexsort((z.imag, z.real))
                z = z[order]
                self.prev = z
                return z
        raise ConvergenceError(f"preimage solve failed at w = {w:.6g}")


def solve_preimages(e: EscapeData, w: complex) -> np.ndarray:
    """All degree-many solutions of p(z) = w, sorted by (re, im)."""
    return _PreimageSolver(e.poly.monomial_coeffs()).solve(complex(w))


def _chunk_sizes(total: int, workers: int) -> list[int]:
    base = total // workers
    sizes = [base] * workers
    for i in range(total - base * workers):
        sizes[i] += 1
    return [s for s in sizes if s > 0]


def _orbit_start(e: EscapeData, start: complex | None) -> complex:
    """Default start 0; perturbed when the first preimage set is degenerate
    (0 can be a critical value whose root cluster pins the whole orbit)."""
    if start is not None:
        return complex(start)
    w0 = 0j
    try:
        z = solve_preimages(e, w0)
    except ConvergenceError:
        return 0.1 + 0.1j
    if len(z) > 1:
        gaps = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < 1e-6 * (1.0 + np.max(np.abs(z))):
            return 0.1 + 0.1j
    return w0


def _run_orbit(coeffs: np.ndarray, d: int, count: int, burn_in: int,
               bitgen, start: complex, refine=None) -> np.ndarray:
    rng = np.random.Generator(bitgen)
    solver = _PreimageSolver(coeffs)
    out = np.empty(count, dtype=complex)
    w = start
    total = burn_in + count
    for step in range(total):
        target = w
        z = solver.solve(target)
        w = complex(z[rng.integers(d)])
        if refine is not None:
            w = complex(refine(w, target))
        if step >= burn_in:
            out[step - burn_in] = w
    return out


def brolin_sample(e: EscapeData, n_samples: int, burn_in: int = 100,
                  seed: int = 0, n_workers: int = 1,
                  start: complex | None = None) -> BrolinSample:
    """Random backward orbit(s) of p from a start inside the escape disk.

    Each step solves p(z) = w and draws the next point uniformly among the
    deg(p) preimages.  n_samples is split across n_workers independent orbits
    on jumped generator streams; each orbit discards its own burn_in.  A
    failed solve restarts the orbit on a further-jumped stream, at most five
    times.
    """
    if n_samples < 1 or n_samples > 10 ** 6:
        raise ValueError("n_samples must be in [1, 1e6]")
    if burn_in < 1:
        raise ValueError("burn_in must be >= 1")
    d = e.degree
    if d < 2:
        raise ValueError("sampling needs degree >= 2")
    coeffs = e.poly.monomial_coeffs()
    w0 = _orbit_start(e, start)

    sizes = _chunk_sizes(n_samples, max(1, n_workers))

    def run_chunk(i: int) -> np.ndarray:
        for restart in range(6):
            bitgen = np.random.Philox(key=seed).jumped(i * 8 + restart)
            try:
                return _run_orbit(coeffs, d, sizes[i], burn_in, bitgen, w0,
                                  refine=e.refine)
            except ConvergenceError:
                continue
        raise ConvergenceError(f"orbit chunk {i} failed after 5 restarts")

    if len(sizes) == 1:
        chunks = [run_chunk(0)]
    else:
        with ThreadPoolExecutor(max_workers=len(sizes)) as pool:
            chunks = list(pool.map(run_chunk, range(len(sizes))))
    points = np.concatenate(chunks)
    return BrolinSample(points=points, seed=seed, burn_in=burn_in, degree=d)


# ---------------------------------------------------------------------------
# diagnostics

def median_nn_spacing(points: np.ndarray) -> float:
    pts = np.column_stack([points.real, points.imag])
    tree = cKDTree(pts)
    dist, _ = tree.query(pts, k=2)
    return float(np.median(dist[:, 1]))


def forward_invariance_check(e: EscapeData, sample: BrolinSample, eps: float) -> float:
    """Fraction of one-step forward images within eps of some sample point."""
    if sample.size == 0:
        raise ValueError("empty sample")
    images = _horner(e.poly.monomial_coeffs(), sample.points)
    tree = cKDTree(np.column_stack([sample.points.real, sample.points.imag]))
    dist, _ = tree.query(np.column_stack([images.real, images.imag]), k=1)
    return float(np.mean(dist <= eps))


def preimage_count_in_set(e: EscapeData, w: complex, region) -> int:
    """Number of solutions of p(z) = w inside a closed rectangle.

    region = (re_lo, re_hi, im_lo, im_hi); it must stay clear of [-1, 1].
    Boundary membership gets 1e-12 slack.
    """
    re_lo, re_hi, im_lo, im_hi = region
    if re_lo > re_hi or im_lo > im_hi:
        raise ValueError("malformed rectangle")
    if im_lo <= 0.0 <= im_hi and re_lo <= 1.0 and re_hi >= -1.0:
        raise ValueError("rectangle must have positive distance from [-1, 1]")
    z = solve_preimages(e, w)
    slack = 1e-12
    inside = ((z.real >= re_lo - slack) & (z.real <= re_hi + slack)
              & (z.imag >= im_lo - slack) & (z.imag <= im_hi + slack))
    return int(np.count_nonzero(inside))


def boundary_preimage_containment(e: EscapeData, n_points: int = 20,
                                  radius: float | None = None):
    """Check p^{-1}(boundary of D(0,R)) stays inside D(0,R).

    Returns (all_contained, max |preimage| / R) over n_points boundary targets.
    """
    r = radius if radius is not None else max(1.0, e.r_uniform)
    theta = 2.0 * np.pi * (np.arange(n_points) + 0.37) / n_points
    worst = 0.0
    solver = _PreimageSolver(e.poly.monomial_coeffs())
    for w in r * np.exp(1j * theta):
        z = solver.solve(complex(w))
        worst = max(worst, float(np.max(np.abs(z))) / r)
    return worst <= 1.0, worst


def pullback_refinement_gap(e: EscapeData, sample: BrolinSample,
                            n_sub: int = 500, seed: int = 1) -> float:
    """Balanced-measure self-consistency for the test function T_2.

    Compares the sample mean of T_2 with the mean over one full preimage
    refinement (all deg preimages of a subsample, each weighted 1/deg).
    """
    def t2(z):
        return 2.0 * z * z - 1.0

    direct = np.mean(t2(sample.points))
    rng = np.random.Generator(np.random.Philox(key=seed))
    count = min(n_sub, sample.size)
    chosen = rng.choice(sample.size, size=count, replace=False)
    solver = _PreimageSolver(e.poly.monomial_coeffs())
    acc = 0.0 + 0j
    for i in chosen:
        z = solver.solve(complex(sample.points[i]))
        acc += np.mean(t2(z))
    refined = acc / count
    return float(abs(direct - refined))
