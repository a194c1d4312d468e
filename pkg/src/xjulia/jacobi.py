"""Classical orthonormal Jacobi polynomials.

Everything is driven by the three-term recurrence in double precision; explicit
monomial coefficients are never formed here (they are catastrophically
ill-conditioned at high degree).  The orthonormalization is against the
unnormalized weight w(x) = (1-x)^alpha (1+x)^beta on [-1, 1], with positive
leading coefficients.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import NodeConvergenceError

# Degree cap for desk-scale work: root-finding and quadrature stay reliable in
# double precision up to here.
DEGREE_CAP = 60


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents alpha, beta; both must exceed -1 for integrability."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0):
            raise ValueError(f"alpha must be > -1, got {self.alpha}")
        if not (self.beta > -1.0):
            raise ValueError(f"beta must be > -1, got {self.beta}")

    @property
    def in_dynamics_range(self) -> bool:
        """True when alpha, beta >= -1/2 (the range the limit theorems assume)."""
        return self.alpha >= -0.5 and self.beta >= -0.5

    @property
    def weight_mass(self) -> float:
        """Total mass of (1-x)^alpha (1+x)^beta over [-1, 1]."""
        a, b = self.alpha, self.beta
        return float(np.exp((a + b + 1) * np.log(2.0)
                            + gammaln(a + 1) + gammaln(b + 1) - gammaln(a + b + 2)))

    def weight(self, x):
        x = np.asarray(x, dtype=float)
        return (1.0 - x) ** self.alpha * (1.0 + x) ** self.beta


@lru_cache(maxsize=512)
def _recurrence(alpha: float, beta: float, nmax: int):
    """Monic-recurrence coefficients (a_k, b_k), k = 0..nmax.

    x pi_k = pi_{k+1} + a_k pi_k + b_k pi_{k-1} for the monic family, with
    b_0 set to the weight mass.  The k = 1 off-diagonal uses the cancelled
    form so alpha + beta = -1 is not a 0/0.
    """
    a = np.empty(nmax + 1)
    b = np.empty(nmax + 1)
    s = alpha + beta
    b[0] = np.exp((s + 1) * np.log(2.0)
                  + gammaln(alpha + 1) + gammaln(beta + 1) - gammaln(s + 2))
    a[0] = (beta - alpha) / (s + 2)
    for k in range(1, nmax + 1):
        a[k] = (beta * beta - alpha * alpha) / ((2 * k + s) * (2 * k + s + 2))
        if k == 1:
            b[1] = 4 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s))
        else:
            b[k] = (4 * k * (k + alpha) * (k + beta) * (k + s)
                    / ((2 * k + s) ** 2 * (2 * k + s + 1) * (2 * k + s - 1)))
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b


def jacobi_table(params: JacobiParams, nmax: int, z):
    """Values of the orthonormal p_0..p_nmax at z; shape (nmax+1,) + z.shape."""
    z = np.asarray(z, dtype=complex)
    a, b = _recurrence(params.alpha, params.beta, nmax + 1)
    sb = np.sqrt(b)
    out = np.empty((nmax + 1,) + z.shape, dtype=complex)
    out[0] = 1.0 / sb[0]
    if nmax >= 1:
        out[1] = (z - a[0]) * out[0] / sb[1]
    for k in range(1, nmax):
        out[k + 1] = ((z - a[k]) * out[k] - sb[k] * out[k - 1]) / sb[k + 1]
    return out


def _eval_many(params: JacobiParams, n: int, z):
    z = np.asarray(z, dtype=complex)
    if n == 0:
        return np.full(z.shape, 1.0 / np.sqrt(params.weight_mass), dtype=complex)
    return jacobi_table(params, n, z)[n]


def eval_orthonormal_jacobi(params: JacobiParams, n: int, z):
    """Orthonormal Jacobi polynomial p_n at z (scalar or array, complex ok)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    out = _eval_many(params, n, np.asarray(z, dtype=complex))
    return complex(out) if out.shape == () else out


def _derivative_factor(params: JacobiParams, n: int) -> float:
    return float(np.sqrt(n * (n + params.alpha + params.beta + 1)))


def _shifted(params: JacobiParams, by: int) -> JacobiParams:
    return JacobiParams(params.alpha + by, params.beta + by)


def eval_jacobi_derivative(params: JacobiParams, n: int, z):
    """Derivative p_n'(z) = sqrt(n(n+alpha+beta+1)) p_{n-1} of the (+1,+1) family."""
    z = np.asarray(z, dtype=complex)
    if n == 0:
        out = np.zeros(z.shape, dtype=complex)
    else:
        out = _derivative_factor(params, n) * _eval_many(_shifted(params, 1), n - 1, z)
    return complex(out) if out.shape == () else out


def eval_jacobi_second_derivative(params: JacobiParams, n: int, z):
    z = np.asarray(z, dtype=complex)
    if n <= 1:
        out = np.zeros(z.shape, dtype=complex)
    else:
        f = _derivative_factor(params, n) * _derivative_factor(_shifted(params, 1), n - 1)
        out = f * _eval_many(_shifted(params, 2), n - 2, z)
    return complex(out) if out.shape == () else out


def log_leading_coeff_jacobi(params: JacobiParams, n: int) -> float:
    """log of the (positive) leading coefficient of p_n.

    gamma_{k+1} = gamma_k / sqrt(b_{k+1}), so the log is a plain sum; this is
    overflow-free at any degree and feeds the n-th-root asymptotics directly.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    _, b = _recurrence(params.alpha, params.beta, max(n, 1))
    return float(-0.5 * np.sum(np.log(b[:n + 1])))


def leading_coeff_jacobi(params: JacobiParams, n: int) -> float:
    return float(np.exp(log_leading_coeff_jacobi(params, n)))


def eval_jacobi_scaled(params: JacobiParams, n: int, t: float):
    """p_n(t) / t^n for large |t|, without overflow.

    Runs the recurrence on q_k = p_k(t)/t^k; every iterate stays O(gamma_k).
    """
    a, b = _recurrence(params.alpha, params.beta, max(n, 1) + 1)
    sb = np.sqrt(b)
    q_prev = 0.0
    q = 1.0 / sb[0]
    for k in range(n):
        q_prev, q = q, ((1.0 - a[k] / t) * q - sb[k] * q_prev / (t * t)) / sb[k + 1]
    return q


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    params: JacobiParams

    @property
    def order(self) -> int:
        return len(self.nodes)

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))

    def integrate_values(self, values):
        return np.sum(self.weights * values, axis=-1)


def _newton_node(params, order, lo, hi, f_lo):
    """One node of p_order inside a sign-change bracket: bisection-safeguarded Newton."""
    x = 0.5 * (lo + hi)
    for _ in range(80):
        fx = _eval_many(params, order, np.array(x)).real
        dfx = eval_jacobi_derivative(params, order, np.array(x)).real
        step = fx / dfx if dfx != 0 else np.inf
        x_new = x - step
        if not (lo < x_new < hi):
            # Newton left the bracket: bisect instead
            if (fx > 0) == (f_lo > 0):
                lo, f_lo = x, fx
            else:
                hi = x
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4e-16 * (1.0 + abs(x_new)):
            return x_new
        x = x_new
    raise NodeConvergenceError(-1, "Newton/bisection stalled", residual=abs(fx))


def gauss_jacobi_rule(params: JacobiParams, order: int) -> QuadratureRule:
    """Nodes and weights integrating degree <= 2*order-1 exactly against the weight.

    Nodes are the zeros of p_order, bracketed on a Chebyshev-angle grid and
    polished by Newton on the recurrence; weights come from the Christoffel
    sums 1 / sum_{k<order} p_k(x)^2.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if order == 1:
        a, b = _recurrence(params.alpha, params.beta, 1)
        nodes = np.array([a[0]])
        weights = np.array([b[0]])
        return QuadratureRule(nodes, weights, params)

    nodes = None
    for factor in (8, 32, 128):
        # midpoint angles never coincide with the Chebyshev-symmetric node set
        k = factor * order
        grid = np.cos(np.pi * (np.arange(k, 0, -1) - 0.5) / k)
        vals = _eval_many(params, order, grid).real
        zero_hit = vals == 0.0
        if zero_hit.any():
            grid = grid.copy()
            grid[zero_hit] += 0.25 * np.pi / k
            vals = _eval_many(params, order, grid).real
        sign_change = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        if len(sign_change) == order:
            nodes = np.empty(order)
            for i, j in enumerate(sign_change):
                try:
                    nodes[i] = _newton_node(params, order, grid[j], grid[j + 1], vals[j])
                except NodeConvergenceError as exc:
                    raise NodeConvergenceError(i, "node iteration failed",
                                               residual=exc.residual) from exc
            break
    if nodes is None:
        raise NodeConvergenceError(len(sign_change), "could not bracket all nodes")

    table = jacobi_table(params, order - 1, nodes).real
    weights = 1.0 / np.sum(table * table, axis=0)
    if not np.all(np.diff(nodes) > 0):
        raise NodeConvergenceError(int(np.argmin(np.diff(nodes))), "nodes not increasing")
    return QuadratureRule(nodes, weights, params)


@lru_cache(maxsize=256)
def cached_rule(alpha: float, beta: float, order: int) -> QuadratureRule:
    return gauss_jacobi_rule(JacobiParams(alpha, beta), order)
