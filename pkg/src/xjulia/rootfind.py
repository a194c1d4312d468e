"""Simultaneous polynomial root-finding and zero classification.

The finder is an Aberth-Ehrlich sweep over all roots at once, evaluated in the
polynomial's native basis (Horner or Clenshaw).  Classification of the
Darboux-family zeros into regular (simple, inside (-1,1)) and exceptional
(everything else) rides on top of it, with a Newton polish against the
recurrence-based evaluation so interpolation noise never reaches the reported
roots.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ValidationError
from .poly import MONOMIAL, Poly

CONVERGENCE_REL = 1e-13
RESIDUAL_REL = 1e-8
MAX_SWEEPS = 500

# Regular/exceptional split: at desk scale the two clusters are separated by
# many orders of magnitude, so hard thresholds are safe.
IMAG_TOL = 1e-8
EDGE_TOL = 1e-12


def residual_scale(p: Poly, r: float) -> float:
    """Size of p near the circle |z| = 1 + r, as a residual yardstick.

    Upper bound sum |a_i| (1+r)^i in the monomial basis; this is the natural
    backward-error scale for evaluation at |z| <= 1 + r.
    """
    mono = np.abs(p.monomial_coeffs())
    return float(np.sum(mono * np.power(1.0 + abs(r), np.arange(len(mono)))))


def initial_circle(mono: np.ndarray, d: int) -> np.ndarray:
    """Perturbed-circle starting points enclosing all roots (Cauchy bound)."""
    lead = mono[d] if d < len(mono) else mono[-1]
    radius = 1.0 + float(np.max(np.abs(mono[:d])) / abs(lead))
    radius = min(radius, 1e6)
    ang = 2.0 * np.pi * np.arange(d) / d + 0.4
    return radius * np.exp(1j * ang) * (1.0 + 0.01 * np.sin(7.0 * ang))


def aberth_sweeps(p_eval, dp_eval, z0: np.ndarray, max_sweeps: int = MAX_SWEEPS,
                  noise_floor=None):
    """Raw Aberth-Ehrlich iteration from starting points z0.

    p_eval/dp_eval map a complex vector to values; returns (roots, converged).
    A root also counts as settled once |p(z)| dips under noise_floor(z), the
    rounding-error level of the evaluation itself; corrections cannot shrink
    below that, whatever the sweep count.
    """
    z = z0.copy()
    best = np.inf
    stalled = 0
    for _ in range(max_sweeps):
        pv = p_eval(z)
        dv = dp_eval(z)
        dv = np.where(dv == 0, 1e-300, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        corr = w / (1.0 - w * s)
        corr = np.where(np.isfinite(corr), corr, w)
        z = z - corr
        scaled = np.abs(corr) / (1.0 + np.abs(z))
        worst = np.max(scaled)
        if worst <= CONVERGENCE_REL:
            return z, True
        if worst < 0.5 * best:
            best, stalled = worst, 0
        else:
            stalled += 1
        if noise_floor is not None and (worst <= 1e-9 or stalled >= 10):
            settled = (scaled <= CONVERGENCE_REL) | (np.abs(p_eval(z)) <= noise_floor(z))
            if settled.all():
                return z, True
    return z, False


def monomial_noise_floor(mono: np.ndarray):
    """Rounding-error level of Horner evaluation: ~4 eps sum |a_k| |z|^k."""
    mags = np.abs(mono)[::-1]

    def floor(z):
        az = np.abs(z)
        acc = np.full(az.shape, mags[0])
        for mk in mags[1:]:
            acc = acc * az + mk
        return 4.0 * np.finfo(float).eps * len(mags) * acc

    return floor


def aberth_monomial(coeffs: np.ndarray, z0: np.ndarray, max_sweeps: int = 300):
    """Aberth-Ehrlich specialized to monomial coefficients (hot path).

    Fuses the value/derivative Horner passes and applies the same noise-floor
    endgame as aberth_sweeps.  Returns (roots, converged).
    """
    z = z0.copy()
    rev = coeffs[-2::-1]
    mags = np.abs(coeffs)[::-1]
    eps_factor = 4.0 * np.finfo(float).eps * len(coeffs)
    best = np.inf
    stalled = 0
    for _ in range(max_sweeps):
        pv = np.full(z.shape, coeffs[-1])
        dv = np.zeros(z.shape, dtype=complex)
        for ck in rev:
            dv = dv * z + pv
            pv = pv * z + ck
        dv[dv == 0] = 1e-300
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        corr = w / (1.0 - w * (1.0 / diff).sum(axis=1))
        bad = ~np.isfinite(corr)
        if bad.any():
            corr[bad] = w[bad]
        z = z - corr
        scaled = np.abs(corr) / (1.0 + np.abs(z))
        worst = scaled.max()
        if worst <= CONVERGENCE_REL:
            return z, True
        # near critical points the Newton ratio is noise over noise and the
        # corrections rattle forever; once the sweep stops improving, accept
        # any configuration whose residuals all sit below the evaluation floor
        if worst < 0.5 * best:
            best, stalled = worst, 0
        else:
            stalled += 1
        if worst <= 1e-9 or stalled >= 10:
            pv = np.full(z.shape, coeffs[-1])
            for ck in rev:
                pv = pv * z + ck
            az = np.abs(z)
            acc = np.full(az.shape, mags[0])
            for mk in mags[1:]:
                acc = acc * az + mk
            if np.all((scaled <= CONVERGENCE_REL) | (np.abs(pv) <= eps_factor * acc)):
                return z, True
    return z, False


def roots(p: Poly, initial=None, polish=None, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """All deg(p) roots of p, with multiplicity, by Aberth-Ehrlich iteration.

    Parameters
    ----------
    p : Poly
        Monomial or Chebyshev basis; the iteration evaluates in that basis.
    initial : array_like, optional
        Starting points (deg(p) of them).  Default: perturbed circle.
    polish : callable, optional
        z -> (f(z), f'(z)) in a more accurate evaluation form; a few guarded
        Newton steps are applied to the converged roots.  Used when the
        coefficients came out of interpolation.
    """
    p = p.trimmed()
    d = p.degree
    if d < 1:
        raise ValueError("degree must be >= 1")
    mono = p.monomial_coeffs()
    if abs(mono[-1]) <= 1e-14 * np.max(np.abs(mono)):
        raise ValidationError("leading coefficient too small relative to the rest")
    if d == 1:
        return np.array([-mono[0] / mono[1]])

    dp = p.deriv()
    z0 = np.asarray(initial, dtype=complex).copy() if initial is not None else initial_circle(mono, d)
    if len(z0) != d:
        raise ValueError(f"need {d} starting points, got {len(z0)}")

    if p.basis == MONOMIAL:
        floor = monomial_noise_floor(mono)
    else:
        # bound |T_k(z)| by u^k with u = |z| + sqrt(|z|^2 + 1)
        cheb_mags = np.abs(p.coeffs[:d + 1])

        def floor(z, mags=cheb_mags):
            u = np.abs(z) + np.sqrt(np.abs(z) ** 2 + 1.0)
            acc = np.full(u.shape, mags[-1])
            for mk in mags[-2::-1]:
                acc = acc * u + mk
            return 4.0 * np.finfo(float).eps * len(mags) * acc

    z, converged = aberth_sweeps(p, dp, z0, max_sweeps, noise_floor=floor)
    if not converged:
        worst = float(np.max(np.abs(p(z))))
        raise ConvergenceError(f"Aberth iteration did not settle in {max_sweeps} sweeps",
                               residual=worst)

    if polish is not None:
        z = _newton_polish(z, polish)

    mags = np.abs(mono)
    powers = np.power(1.0 + np.abs(z)[:, None], np.arange(len(mono))[None, :])
    scales = powers @ mags
    worst_rel = float(np.max(np.abs(p(z)) / scales))
    if worst_rel > RESIDUAL_REL:
        raise ConvergenceError("root residual contract violated", residual=worst_rel)
    return z


def _newton_polish(z, polish, steps: int = 4):
    """Guarded Newton: a step is kept only while |f| decreases."""
    z = z.copy()
    f, df = polish(z)
    fmag = np.abs(f)
    for _ in range(steps):
        step = f / np.where(df == 0, 1e-300, df)
        cand = z - step
        f_new, df_new = polish(cand)
        better = np.abs(f_new) <= fmag
        z = np.where(better, cand, z)
        f = np.where(better, f_new, f)
        df = np.where(better, df_new, df)
        fmag = np.abs(f)
    return z


@dataclass
class ZeroClassification:
    """Zeros of one Darboux-family polynomial, split by location.

    regular: real zeros in (-1, 1), ascending.  exceptional: all others,
    sorted by distance to the nearest zero of the positive divisor b_tilde.
    """

    regular: np.ndarray
    exceptional: np.ndarray
    n: int
    m: int

    @property
    def total(self) -> int:
        return len(self.regular) + len(self.exceptional)


def classify_zeros(data, n: int) -> "ZeroClassification":
    """Split the zeros of the n-th transformed family member P_n.

    A zero is regular iff |Im| <= 1e-8 and Re inside the open interval with a
    1e-12 edge margin; the count must match the actual degree (n + m on the
    presets once the top coefficient is alive).
    """
    from . import exceptional as exc_mod

    if n + data.m > 60:
        raise ValueError("n + m exceeds the desk-scale degree cap (60)")
    cheb = exc_mod.chebyshev_poly(data, n)
    degree = exc_mod.exceptional_degree(data, n)
    if cheb.degree != degree:
        raise ValidationError(
            f"degree law violated: expected {degree}, interpolation says {cheb.degree}")

    guesses = _classification_guesses(data, degree)

    def polish(z):
        return (exc_mod.eval_exceptional(data, n, z),
                exc_mod.eval_exceptional_derivative(data, n, z))

    found = roots(cheb, initial=guesses, polish=polish)

    reg_mask = (np.abs(found.imag) <= IMAG_TOL) & (np.abs(found.real) < 1.0 - EDGE_TOL)
    regular = np.sort(found[reg_mask].real)
    exceptional = found[~reg_mask]
    bt_roots = _b_tilde_roots(data)
    if len(exceptional):
        dist = np.min(np.abs(exceptional[:, None] - bt_roots[None, :]), axis=1)
        exceptional = exceptional[np.argsort(dist)]

    zc = ZeroClassification(regular=regular, exceptional=exceptional, n=n, m=data.m)
    if zc.total != degree:
        raise ValidationError(f"found {zc.total} zeros for degree {degree}")
    return zc


def _b_tilde_roots(data) -> np.ndarray:
    bt = data.b_tilde
    if bt.degree == 0:
        return np.array([], dtype=complex)
    return roots(bt)


def _classification_guesses(data, degree: int) -> np.ndarray:
    """Starting points: a thin Bernstein ellipse around [-1,1] for the regular
    cluster plus perturbed copies of the b_tilde zeros for the rest."""
    bt_roots = _b_tilde_roots(data)
    n_extra = min(data.m, degree) if len(bt_roots) else 0
    if n_extra > 0:
        reps = int(np.ceil(n_extra / len(bt_roots)))
        base = np.tile(bt_roots, reps)[:n_extra]
        shift = 0.05 * np.exp(2j * np.pi * np.arange(n_extra) / n_extra)
        extra = base + shift * (1.0 + np.abs(base))
    else:
        extra = np.array([], dtype=complex)
    n_ell = degree - len(extra)
    theta = np.pi * (np.arange(n_ell) + 0.5) / max(n_ell, 1)
    w = 1.25 * np.exp(1j * theta)
    ellipse = 0.5 * (w + 1.0 / w)
    return np.concatenate([ellipse, extra])


def zero_counting_measure(zc: ZeroClassification):
    """Uniform unit-mass measure on the regular zeros only."""
    from .measures import EmpiricalMeasure

    return EmpiricalMeasure.from_points(zc.regular.astype(complex))


def classification_to_csv(zc: ZeroClassification) -> str:
    lines = ["kind,re,im"]
    for x in zc.regular:
        lines.append(f"regular,{x:.17g},0")
    for z in zc.exceptional:
        lines.append(f"exceptional,{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"
