"""Orthonormal families built from classical Jacobi by one first-order
transformation P_n = (b p_n' - bw p_n) / sigma_n.

The transformed family is orthonormal against W = c0 * w^(alpha+e1, beta+e2) /
b_tilde^2, where b_tilde is b with its (1-x)/(1+x) factors divided out.  No
configuration is trusted a priori: construction runs the orthonormality oracle
and rejects anything that fails it.  sigma_n is *defined* as the quadrature
norm of b p_n' - bw p_n; the closed form sqrt(c0 (n(n+alpha+beta+1)+lambda))
is exposed as a cross-check that validates the configured lambda.
"""

from dataclasses import dataclass, field

import numpy as np

from . import jacobi, rootfind
from .errors import ConfigError, ValidationError
from .jacobi import JacobiParams, cached_rule
from .poly import CHEBYSHEV, Poly, chebyshev_grid, chebyshev_transform, interpolate_to_poly

# Base quadrature order for the rational inner products; geometric convergence
# in the order makes this ample for poles at distance >~ 1e-2 from [-1, 1].
BASE_QUAD_ORDER = 200

ORTHO_GATE_INDEX = 10
ORTHO_GATE_TOL = 1e-8


@dataclass
class DarbouxData:
    """One transformed family.  Immutable after construction.

    params is the *source* classical family; the weight W lives at the shifted
    exponents (alpha + eps1, beta + eps2).  m = deg b_tilde is the codimension.
    """

    params: JacobiParams
    b: Poly
    bw: Poly
    eps1: int
    eps2: int
    lambda_tilde: float
    m: int
    b_tilde: Poly
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def weight_params(self) -> JacobiParams:
        return JacobiParams(self.params.alpha + self.eps1, self.params.beta + self.eps2)

    def quad_rule(self, order: int = BASE_QUAD_ORDER):
        wp = self.weight_params
        return cached_rule(wp.alpha, wp.beta, order)


@dataclass(frozen=True)
class ExceptionalWeight:
    """The probability weight W = c0 * w^(alpha+e1, beta+e2) / b_tilde^2."""

    data: DarbouxData
    c0: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        bt = self.data.b_tilde(x).real
        return self.c0 * self.data.weight_params.weight(x) / bt ** 2

    def mass(self, order: int = 2 * BASE_QUAD_ORDER) -> float:
        rule = self.data.quad_rule(order)
        return float(self.c0 * rule.integrate(lambda x: 1.0 / self.data.b_tilde(x).real ** 2))


def _divide_out_interval_factors(b: Poly, eps1: int, eps2: int) -> Poly:
    """b_tilde = b / (1-x)^d1 / (1+x)^d2 with d_i = (1 - eps_i)/2, by exact division."""
    coeffs = np.array(b.coeffs[:b.degree + 1], dtype=complex)
    for eps, root in ((eps1, 1.0), (eps2, -1.0)):
        if eps == 1:
            continue
        # synthetic division by (x - root); remainder must vanish
        out = np.empty(len(coeffs) - 1, dtype=complex)
        acc = coeffs[-1]
        for k in range(len(coeffs) - 2, -1, -1):
            out[k] = acc
            acc = coeffs[k] + root * acc
        scale = max(1.0, np.max(np.abs(coeffs)))
        if abs(acc) > 1e-9 * scale:
            raise ValidationError(
                f"b is not divisible by (x - {root:g}) as the sign pattern requires "
                f"(remainder {abs(acc):.2e})")
        # (1 -+ x) = -+(x - root): flip sign so the quotient is b / (1 -+ x)
        coeffs = -out if root == 1.0 else out
    return Poly(coeffs)


def make_darboux_data(params: JacobiParams, b: Poly, bw: Poly, eps1: int, eps2: int,
                      lambda_tilde: float, validate: bool = True) -> DarbouxData:
    """Assemble and gate one family configuration.

    Structural checks (monic b, degree gap, pole locations, positivity) run
    always; the orthonormality oracle gate runs unless validate=False.
    """
    if eps1 not in (-1, 1) or eps2 not in (-1, 1):
        raise ConfigError("eps1/eps2", "must be +1 or -1")
    b = b.trimmed()
    bw = bw.trimmed()
    if not b.is_monic(1e-10):
        raise ValidationError(f"b must be monic (leading {b.leading_coeff():.6g})")
    if b.degree < bw.degree + 1 and not _is_zero(bw):
        raise ValidationError(f"deg b = {b.degree} must be >= deg bw + 1 = {bw.degree + 1}")
    wp_alpha = params.alpha + eps1
    wp_beta = params.beta + eps2
    if wp_alpha <= -1 or wp_beta <= -1:
        raise ValidationError(
            f"shifted weight exponents ({wp_alpha:g}, {wp_beta:g}) must exceed -1")

    if b.degree >= 1:
        for r in rootfind.roots(b):
            if abs(r.imag) <= 1e-9 and abs(r.real) <= 1.0 - 1e-9:
                raise ValidationError(f"b has a root at {r:.6g} inside (-1, 1)")
    b_tilde = _divide_out_interval_factors(b, eps1, eps2)
    grid = np.cos(np.pi * np.arange(513) / 512)
    bt_vals = b_tilde(grid).real
    if not np.all(bt_vals > 0):
        raise ValidationError("b_tilde must be positive on [-1, 1]")
    b_vals = b(grid[1:-1]).real
    if not np.all(b_vals > 0):
        raise ValidationError("b must be positive on (-1, 1)")

    data = DarbouxData(params=params, b=b, bw=bw, eps1=eps1, eps2=eps2,
                       lambda_tilde=float(lambda_tilde), m=b_tilde.degree,
                       b_tilde=b_tilde)
    if validate:
        dev, where = orthonormality_deviation(data, ORTHO_GATE_INDEX)
        if dev > ORTHO_GATE_TOL:
            raise ValidationError(
                f"orthonormality gate failed at (i, j) = {where}: residual {dev:.3e}")
    return data


def first_index(data: DarbouxData) -> int:
    """Smallest n with a nonvanishing family member.

    A pure-derivative configuration (bw identically zero) annihilates the
    constants, so its sequence starts at n = 1.
    """
    return 1 if _is_zero(data.bw) else 0


def _is_zero(p: Poly) -> bool:
    return bool(np.all(p.coeffs == 0))


def make_x1_preset(params: JacobiParams) -> DarbouxData:
    """The codimension-1 family whose weight is w^(alpha,beta) / (x - c)^2.

    Here (alpha, beta) are the *exceptional weight* exponents; the pole sits at
    c = (alpha + beta)/(beta - alpha) and must lie outside [-1, 1].  The source
    classical family is (alpha+1, beta-1) when beta > alpha and the mirror
    image otherwise.  The returned data is accepted only after passing the
    orthonormality gate.
    """
    a, bb = params.alpha, params.beta
    if a == bb:
        raise ValidationError("preset needs alpha != beta (pole undefined)")
    c = (a + bb) / (bb - a)
    if abs(c) <= 1.0:
        raise ValidationError(f"pole c = {c:g} lies in [-1, 1]; preset rejected")
    if min(a, bb) <= 0.0:
        raise ValidationError("preset requires alpha, beta > 0")
    if bb > a:
        source = JacobiParams(a + 1.0, bb - 1.0)
        b = Poly([c, -(1.0 + c), 1.0])          # (x - 1)(x - c)
        bw = Poly([(a + 1.0) * c - 1.0, -a])
        eps1, eps2 = -1, 1
        lam = a * (bb + 1.0)
    else:
        source = JacobiParams(a - 1.0, bb + 1.0)
        b = Poly([-c, 1.0 - c, 1.0])            # (x + 1)(x - c)
        bw = Poly([(bb + 1.0) * c + 1.0, -bb])
        eps1, eps2 = 1, -1
        lam = bb * (a + 1.0)
    return make_darboux_data(source, b, bw, eps1, eps2, lam)


# ---------------------------------------------------------------------------
# weight normalization and norms

def normalization_constant(data: DarbouxData) -> float:
    """c0 making the weight a probability measure; quadrature order 200."""
    if "c0" not in data._cache:
        rule = data.quad_rule(BASE_QUAD_ORDER)
        total = rule.integrate(lambda x: 1.0 / data.b_tilde(x).real ** 2)
        if not np.isfinite(total) or total <= 0:
            raise ValidationError("weight normalization integral is degenerate")
        data._cache["c0"] = 1.0 / float(total)
    return data._cache["c0"]


def weight(data: DarbouxData) -> ExceptionalWeight:
    return ExceptionalWeight(data, normalization_constant(data))


def _apply_transform(data: DarbouxData, n: int, z):
    """Unnormalized b p_n' - bw p_n at z."""
    z = np.asarray(z, dtype=complex)
    out = (data.b(z) * jacobi.eval_jacobi_derivative(data.params, n, z)
           - data.bw(z) * jacobi.eval_orthonormal_jacobi(data.params, n, z))
    return np.asarray(out, dtype=complex)


def _sigma_order(data: DarbouxData, n: int) -> int:
    return max(BASE_QUAD_ORDER, 2 * (n + data.m) + 60)


def sigma_n(data: DarbouxData, n: int) -> float:
    """L2(W) norm of b p_n' - bw p_n, by quadrature (the defining normalizer)."""
    key = ("sigma", n)
    if key not in data._cache:
        c0 = normalization_constant(data)
        rule = data.quad_rule(_sigma_order(data, n))
        vals = _apply_transform(data, n, rule.nodes).real
        bt = data.b_tilde(rule.nodes).real
        norm_sq = c0 * float(rule.integrate_values(vals * vals / bt ** 2))
        if norm_sq <= 0 or not np.isfinite(norm_sq):
            raise ValidationError(f"degenerate transform: ||A p_{n}|| ~ 0")
        data._cache[key] = float(np.sqrt(norm_sq))
    return data._cache[key]


def sigma_n_closed_form(data: DarbouxData, n: int) -> float:
    """sqrt(c0 (n(n+alpha+beta+1) + lambda)) with the configured lambda."""
    c0 = normalization_constant(data)
    s = data.params.alpha + data.params.beta
    val = c0 * (n * (n + s + 1) + data.lambda_tilde)
    if val <= 0:
        raise ValidationError(f"closed-form norm undefined at n={n} (negative argument)")
    return float(np.sqrt(val))


def sigma_discrepancy(data: DarbouxData, n: int) -> float:
    """Relative gap between the quadrature norm and the closed form."""
    q = sigma_n(data, n)
    c = sigma_n_closed_form(data, n)
    return abs(q - c) / c


def eval_exceptional(data: DarbouxData, n: int, z):
    """P_n(z) = (b(z) p_n'(z) - bw(z) p_n(z)) / sigma_n, recurrence-based."""
    out = _apply_transform(data, n, z) / sigma_n(data, n)
    return complex(out) if out.shape == () else out


def eval_exceptional_derivative(data: DarbouxData, n: int, z):
    z = np.asarray(z, dtype=complex)
    p = jacobi.eval_orthonormal_jacobi(data.params, n, z)
    dp = jacobi.eval_jacobi_derivative(data.params, n, z)
    ddp = jacobi.eval_jacobi_second_derivative(data.params, n, z)
    out = np.asarray((data.b.deriv()(z) * dp + data.b(z) * ddp
                      - data.bw.deriv()(z) * p - data.bw(z) * dp), dtype=complex)
    out = out / sigma_n(data, n)
    return complex(out) if out.shape == () else out


# ---------------------------------------------------------------------------
# degrees and leading coefficients

def exceptional_degree(data: DarbouxData, n: int) -> int:
    """Actual degree of P_n, accounting for the possible top cancellation."""
    db, dbw = data.b.degree, data.bw.degree
    if n == 0:
        return dbw if not _is_zero(data.bw) else 0
    if dbw == db - 1:
        B = data.bw.leading_coeff().real
        if abs(n - B) <= 1e-12 * max(1.0, abs(B)):
            raise ValidationError(f"degree degenerates at n={n} (n = leading coeff of bw)")
    return n + db - 1


def degree_law_threshold(data: DarbouxData, n_max: int = 40) -> int:
    """Smallest n0 with deg P_n = n + m for all checked n in [n0, n_max]."""
    good = [exceptional_degree(data, n) == n + data.m for n in range(n_max + 1)]
    n0 = n_max + 1
    for n in range(n_max, -1, -1):
        if good[n]:
            n0 = n
        else:
            break
    return n0


def _scaled_transform_over_power(data: DarbouxData, n: int, t: float) -> float:
    """(b p_n' - bw p_n)(t) / t^deg without overflow, deg = n + deg b - 1."""
    db, dbw = data.b.degree, data.bw.degree
    params = data.params
    b_s = _poly_over_power(data.b, t)
    bw_s = _poly_over_power(data.bw, t)
    pn_s = jacobi.eval_jacobi_scaled(params, n, t)
    if n == 0:
        dp_s = 0.0
    else:
        fac = np.sqrt(n * (n + params.alpha + params.beta + 1))
        dp_s = fac * jacobi.eval_jacobi_scaled(
            JacobiParams(params.alpha + 1, params.beta + 1), n - 1, t)
    # exponent bookkeeping relative to deg = n + db - 1
    term1 = b_s * dp_s                                  # t^(db + n - 1 - deg) = t^0
    term2 = bw_s * pn_s * t ** (dbw + n - (n + db - 1))  # exponent <= 0
    return term1 - term2


def _poly_over_power(p: Poly, t: float) -> float:
    """p(t) / t^deg(p) by Horner in 1/t."""
    c = p.coeffs[:p.degree + 1].real
    acc = 0.0
    for ck in c:
        acc = acc / t + ck
    return float(acc)


def leading_coeff_estimate(data: DarbouxData, n: int, t: float = 1e6) -> float:
    """Numerical leading coefficient from symmetrized large-argument ratios.

    Averaging the +t and -t ratios cancels the O(1/t) term coming from the
    subleading coefficient, leaving O(1/t^2) contamination.
    """
    if n < 1:
        raise ValueError("estimate needs n >= 1")
    plus = _scaled_transform_over_power(data, n, t)
    minus = _scaled_transform_over_power(data, n, -t)
    return 0.5 * (plus + minus) / sigma_n(data, n)


def leading_coeff_exceptional(data: DarbouxData, n: int) -> float:
    """Leading coefficient of P_n via gamma_n (n - eps B) / sigma_n.

    eps in {0, 1} is picked by matching the numerical estimate; if neither
    choice matches to 1e-3 relative the configuration is considered broken.
    """
    gam = jacobi.leading_coeff_jacobi(data.params, n)
    B = data.bw.leading_coeff().real
    sig = sigma_n(data, n)
    est = leading_coeff_estimate(data, n)
    candidates = {eps: gam * (n - eps * B) / sig for eps in (0, 1)}
    matches = {eps: v for eps, v in candidates.items()
               if abs(v - est) <= 1e-3 * abs(est)}
    if not matches:
        raise ValidationError(
            f"leading coefficient mismatch at n={n}: formula {candidates}, estimate {est:.6e}")
    if len(matches) == 2:
        # B ~ 0 makes both branches agree; the degree rule breaks the tie
        eps = 1 if data.bw.degree == data.b.degree - 1 else 0
        return candidates[eps]
    return next(iter(matches.values()))


def _scalar_orth_factory(params: JacobiParams, nmax: int):
    """Plain-Python scalar evaluator for the orthonormal family (fast at one point)."""
    a, b = jacobi._recurrence(params.alpha, params.beta, max(nmax, 1) + 1)
    a = a.tolist()
    sb = np.sqrt(b).tolist()

    def at(n: int, z: complex) -> complex:
        q = 1.0 / sb[0]
        if n == 0:
            return q
        q_prev, q = q, (z - a[0]) * q / sb[1]
        for k in range(1, n):
            q_prev, q = q, ((z - a[k]) * q - sb[k] * q_prev) / sb[k + 1]
        return q

    return at


def newton_refiner(data: DarbouxData, n: int):
    """Scalar Newton step-taker for equations P_n(z) = w.

    Backward-orbit sampling solves against interpolated monomial coefficients,
    whose evaluation noise floor is far above the recurrence's; refining the
    one chosen preimage per step against the recurrence removes that noise at
    negligible cost.  Returns refine(z, w) -> z (guarded, at most two steps).
    """
    params = data.params
    s = params.alpha + params.beta
    at0 = _scalar_orth_factory(params, n)
    at1 = _scalar_orth_factory(JacobiParams(params.alpha + 1, params.beta + 1), max(n - 1, 1))
    at2 = _scalar_orth_factory(JacobiParams(params.alpha + 2, params.beta + 2), max(n - 2, 1))
    fac1 = float(np.sqrt(n * (n + s + 1))) if n >= 1 else 0.0
    fac2 = fac1 * float(np.sqrt((n - 1) * (n + s + 2))) if n >= 2 else 0.0
    bc = data.b.coeffs[:data.b.degree + 1].tolist()
    bwc = data.bw.coeffs[:data.bw.degree + 1].tolist()
    bpc = data.b.deriv().coeffs.tolist()
    bwpc = data.bw.deriv().coeffs.tolist()
    sig = sigma_n(data, n)

    def horner(c, z):
        acc = c[-1]
        for ck in reversed(c[:-1]):
            acc = acc * z + ck
        return acc

    def value_slope(z: complex):
        p = at0(n, z)
        dp = fac1 * at1(n - 1, z) if n >= 1 else 0.0
        ddp = fac2 * at2(n - 2, z) if n >= 2 else 0.0
        b = horner(bc, z)
        bw = horner(bwc, z)
        bp = horner(bpc, z)
        bwp = horner(bwpc, z)
        return ((b * dp - bw * p) / sig,
                (bp * dp + b * ddp - bwp * p - bw * dp) / sig)

    def refine(z: complex, w: complex) -> complex:
        f, df = value_slope(z)
        f -= w
        for _ in range(2):
            if df == 0:
                break
            cand = z - f / df
            f2, df2 = value_slope(cand)
            f2 -= w
            if abs(f2) < abs(f):
                z, f, df = cand, f2, df2
            else:
                break
        return z

    return refine


# ---------------------------------------------------------------------------
# coefficient extraction

_RESIDUAL_POINTS = 20
_RESIDUAL_TOL = 1e-8


def _residual_points(rng_seed: int = 20210) -> np.ndarray:
    rng = np.random.default_rng(rng_seed)
    r = 2.0 * np.sqrt(rng.uniform(0.0, 1.0, _RESIDUAL_POINTS))
    th = rng.uniform(0.0, 2.0 * np.pi, _RESIDUAL_POINTS)
    return r * np.exp(1j * th)


def chebyshev_poly(data: DarbouxData, n: int) -> Poly:
    """P_n as a Chebyshev series on [-1, 1] (fast transform on the extrema grid)."""
    deg = exceptional_degree(data, n)
    if deg == 0:
        return Poly(np.atleast_1d(eval_exceptional(data, n, np.array(0.0))), CHEBYSHEV)
    xs = chebyshev_grid(deg)
    vals = eval_exceptional(data, n, xs)
    return Poly(chebyshev_transform(vals), CHEBYSHEV)


def monomial_coeffs(data: DarbouxData, n: int) -> Poly:
    """P_n in the monomial basis, by interpolation + basis conversion.

    Gate: the result must reproduce the recurrence evaluation at 20 fixed
    points in the disk of radius 2 to 1e-8 of the largest sampled magnitude.
    """
    if n + data.m > jacobi.DEGREE_CAP:
        raise ValueError(f"n + m = {n + data.m} exceeds the degree cap {jacobi.DEGREE_CAP}")
    key = ("mono", n)
    if key not in data._cache:
        deg = exceptional_degree(data, n)
        p = interpolate_to_poly(lambda x: eval_exceptional(data, n, x), deg)
        zs = _residual_points()
        ref = eval_exceptional(data, n, zs)
        err = np.max(np.abs(p(zs) - ref))
        scale = np.max(np.abs(ref))
        if err > _RESIDUAL_TOL * scale:
            raise ValidationError(
                f"coefficient extraction residual {err:.3e} exceeds {_RESIDUAL_TOL:g} * {scale:.3e}")
        data._cache[key] = p
    return data._cache[key]


# ---------------------------------------------------------------------------
# structural oracles

def _orthonormality_order(kmax: int, m: int) -> int:
    return max(BASE_QUAD_ORDER, 4 * (kmax + m))


def inner_product_matrix(data: DarbouxData, kmax: int) -> np.ndarray:
    """Gram matrix <P_i, P_j>_W for first_index(data) <= i, j <= kmax."""
    c0 = normalization_constant(data)
    rule = data.quad_rule(_orthonormality_order(kmax, data.m))
    bt = data.b_tilde(rule.nodes).real
    lo = first_index(data)
    rows = np.empty((kmax + 1 - lo, rule.order))
    for k in range(lo, kmax + 1):
        rows[k - lo] = _apply_transform(data, k, rule.nodes).real / sigma_n(data, k)
    return c0 * (rows * (rule.weights / bt ** 2)) @ rows.T


def orthonormality_deviation(data: DarbouxData, kmax: int):
    """(max |G - I|, argmax index pair) over the Gram matrix."""
    g = inner_product_matrix(data, kmax)
    dev = np.abs(g - np.eye(len(g)))
    ij = np.unravel_index(np.argmax(dev), dev.shape)
    lo = first_index(data)
    return float(dev[ij]), (int(ij[0]) + lo, int(ij[1]) + lo)


def verify_span_property(data: DarbouxData, p: Poly, s_max: int | None = None):
    """Expansion length of b^2 * p in the transformed family.

    Returns (s_observed, residuals): coefficients c_l = <b^2 p, P_l>_W for
    l = 0 .. deg(p) + s_max, and the smallest s with |c_l| below
    1e-8 * ||b^2 p||_W for every l beyond deg(p) + s.  For a family produced
    by one first-order transformation, s_observed <= deg b + 1.
    """
    n = p.degree if not _is_zero(p) else 0
    db = data.b.degree
    if s_max is None:
        s_max = 2 * db + 5
    l_max = n + s_max
    if n + 2 * db + 5 > jacobi.DEGREE_CAP + 2 * db:
        raise ValueError("polynomial degree too large for the scan")

    c0 = normalization_constant(data)
    order = n + l_max + 2 * db + 10
    rule = data.quad_rule(max(BASE_QUAD_ORDER, order))
    x = rule.nodes
    bt = data.b_tilde(x).real
    b2p = data.b(x).real ** 2 * p(x).real
    norm = float(np.sqrt(c0 * rule.integrate_values(b2p * b2p / bt ** 2)))

    coeffs = np.zeros(l_max + 1)
    for l in range(first_index(data), l_max + 1):
        pl = _apply_transform(data, l, x).real / sigma_n(data, l)
        coeffs[l] = c0 * rule.integrate_values(b2p * pl / bt ** 2)
    residuals = np.abs(coeffs)
    if norm == 0.0:
        return 0, residuals
    tol = 1e-8 * norm
    above = np.nonzero(residuals > tol)[0]
    if len(above) == 0:
        return 0, residuals
    l_star = int(above[-1])
    if l_star == l_max:
        raise ValidationError(
            f"no expansion cutoff found up to l = {l_max}; quadrature or construction bug")
    return max(0, l_star - n), residuals


# ---------------------------------------------------------------------------
# JSON wire format

def from_json(obj: dict) -> DarbouxData:
    """Family from the wire schema.

    {"alpha": num, "beta": num, "eps1": +-1, "eps2": +-1, "b": [...],
     "bw": [...], "lambda_tilde": num, "preset": "x1"?}  -- coefficient lists
    ascending.  When "preset" is present the polynomial fields are ignored and
    (alpha, beta) are the preset's weight exponents.
    """
    if not isinstance(obj, dict):
        raise ConfigError("family", "must be a JSON object")
    for key in ("alpha", "beta"):
        if key not in obj:
            raise ConfigError(key, "missing")
        if not isinstance(obj[key], (int, float)) or isinstance(obj[key], bool):
            raise ConfigError(key, "must be a number")
    preset = obj.get("preset")
    if preset is not None:
        if preset != "x1":
            raise ConfigError("preset", f"unknown preset {preset!r}")
        try:
            params = JacobiParams(float(obj["alpha"]), float(obj["beta"]))
        except ValueError as exc:
            raise ConfigError("alpha/beta", str(exc)) from exc
        return make_x1_preset(params)
    for key in ("eps1", "eps2", "b", "bw", "lambda_tilde"):
        if key not in obj:
            raise ConfigError(key, "missing (required without a preset)")
    if obj["eps1"] not in (-1, 1) or obj["eps2"] not in (-1, 1):
        raise ConfigError("eps1/eps2", "must be +1 or -1")
    for key in ("b", "bw"):
        if (not isinstance(obj[key], list) or len(obj[key]) == 0
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                           for v in obj[key])):
            raise ConfigError(key, "must be a nonempty list of numbers (ascending degree)")
    try:
        params = JacobiParams(float(obj["alpha"]), float(obj["beta"]))
    except ValueError as exc:
        raise ConfigError("alpha/beta", str(exc)) from exc
    return make_darboux_data(params, Poly(obj["b"]), Poly(obj["bw"]),
                             int(obj["eps1"]), int(obj["eps2"]),
                             float(obj["lambda_tilde"]))


def to_json(data: DarbouxData) -> dict:
    return {
        "alpha": data.params.alpha,
        "beta": data.params.beta,
        "eps1": data.eps1,
        "eps2": data.eps2,
        "b": [float(c.real) for c in data.b.coeffs],
        "bw": [float(c.real) for c in data.bw.coeffs],
        "lambda_tilde": data.lambda_tilde,
    }
