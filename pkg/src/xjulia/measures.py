"""Discrete measures and logarithmic potential theory on the complex plane.

Weak-star convergence is operationalized two ways: Kolmogorov-Smirnov distance
against a reference CDF for real-supported measures, and Chebyshev moment
vectors for complex-supported ones.  Discrete energies exclude the diagonal
(point masses have infinite self-energy); summations use numpy's pairwise
reduction, so results are reproducible bit-for-bit for a fixed partition.
"""

import io
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

WEIGHT_SUM_TOL = 1e-12


@dataclass
class EmpiricalMeasure:
    """Finitely many weighted points; weights must sum to one."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.points = np.atleast_1d(np.asarray(self.points, dtype=complex))
        self.weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if len(self.points) != len(self.weights) or len(self.points) == 0:
            raise ValidationError("points and weights must be equal-length and nonempty")
        if np.any(self.weights <= 0):
            raise ValidationError("weights must be positive")
        if abs(self.weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(f"weights sum to {self.weights.sum()!r}, not 1")

    @classmethod
    def from_points(cls, points) -> "EmpiricalMeasure":
        points = np.atleast_1d(np.asarray(points, dtype=complex))
        n = len(points)
        return cls(points, np.full(n, 1.0 / n))

    @property
    def size(self) -> int:
        return len(self.points)

    def is_real_supported(self, tol: float = 1e-6) -> bool:
        return bool(np.max(np.abs(self.points.imag)) <= tol)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("re,im,weight\n")
        for p, w in zip(self.points, self.weights):
            buf.write(f"{p.real:.17g},{p.imag:.17g},{w:.17g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "EmpiricalMeasure":
        lines = [ln for ln in text.strip().splitlines() if ln]
        if not lines or lines[0].strip() != "re,im,weight":
            raise ValidationError("expected header re,im,weight")
        pts, wts = [], []
        for ln in lines[1:]:
            re, im, w = ln.split(",")
            pts.append(complex(float(re), float(im)))
            wts.append(float(w))
        return cls(np.array(pts), np.array(wts))


def arcsine_cdf(x: float) -> float:
    """CDF of the equilibrium measure of [-1, 1]: 1/2 + arcsin(x)/pi, clamped."""
    if x <= -1.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    return 0.5 + np.arcsin(x) / np.pi


def arcsine_quantiles(n: int) -> np.ndarray:
    """The n points at quantile levels (k - 1/2)/n, ascending."""
    k = np.arange(1, n + 1)
    return np.sin(np.pi * ((k - 0.5) / n - 0.5))


def green_complement_interval(z):
    """Green function of C \\ [-1, 1] with pole at infinity: log|z + sqrt(z^2-1)|.

    The square-root branch is fixed by |z + root| >= 1 (the branch mapping
    positive reals to positive reals); the value is clamped at 0 on [-1, 1].
    """
    z = np.asarray(z, dtype=complex)
    s = np.sqrt(z - 1.0) * np.sqrt(z + 1.0)
    mag = np.maximum(np.abs(z + s), np.abs(z - s))
    out = np.maximum(np.log(mag), 0.0)
    on_interval = (z.imag == 0.0) & (np.abs(z.real) <= 1.0)
    out = np.where(on_interval, 0.0, out)
    return float(out) if out.shape == () else out


def log_potential(mu: EmpiricalMeasure, z) -> float:
    """U(z) = sum w_i log 1/|p_i - z|; +inf when z sits on a support point."""
    d = np.abs(mu.points - complex(z))
    if np.any(d < 1e-300):
        return float("inf")
    return float(-np.sum(mu.weights * np.log(d)))


def energy(mu: EmpiricalMeasure) -> float:
    """Off-diagonal discrete energy sum_{i != j} w_i w_j log 1/|p_i - p_j|."""
    if mu.size < 2:
        raise ValidationError("energy needs at least two points")
    diff = np.abs(mu.points[:, None] - mu.points[None, :])
    np.fill_diagonal(diff, 1.0)
    if np.any(diff < 1e-300):
        return float("inf")
    ww = mu.weights[:, None] * mu.weights[None, :]
    np.fill_diagonal(ww, 0.0)
    return float(-np.sum(ww * np.log(diff)))


def ks_distance_real(mu: EmpiricalMeasure, cdf) -> float:
    """Sup distance between the weighted empirical CDF and a reference CDF.

    Only valid for real-supported measures; complex support raises and points
    the caller at the moment diagnostics instead.
    """
    if not mu.is_real_supported():
        raise ValidationError(
            "measure has complex support; use chebyshev_moments for weak-star checks")
    order = np.argsort(mu.points.real)
    xs = mu.points.real[order]
    cum = np.cumsum(mu.weights[order])
    ref = np.array([cdf(x) for x in xs])
    upper = np.max(np.abs(ref - cum))
    lower = np.max(np.abs(ref - np.concatenate([[0.0], cum[:-1]])))
    return float(max(upper, lower))


def chebyshev_moments(mu: EmpiricalMeasure, k_max: int) -> np.ndarray:
    """Moments m_k = sum w_i T_k(p_i), k = 0..k_max, by the T recurrence.

    m_0 is exactly 1 (the weights are normalized by construction).
    """
    if k_max > 32:
        raise ValueError("k_max capped at 32")
    z = mu.points
    out = np.empty(k_max + 1, dtype=complex)
    out[0] = 1.0
    t_prev = np.ones_like(z)
    t_cur = z
    for k in range(1, k_max + 1):
        out[k] = np.sum(mu.weights * t_cur)
        t_prev, t_cur = t_cur, 2.0 * z * t_cur - t_prev
    return out
