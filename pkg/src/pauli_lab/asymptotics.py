"""Growth-indicator estimation along rays and the indicator-level checks.

The order-2 indicator of a model is estimated as the slope of log|value|
against r^2 along the ray, using the upper envelope of windowed slopes (a
limsup is a sup of tail behaviour, so the max over sliding sub-windows is the
faithful finite-data surrogate; a single global fit would be dragged down by
oscillation dips near zero rays).  Rays through retained zeros are masked with
shrinking exclusion disks of radius c/(1 + rho).

Order convention: Gaussian-bearing, quartic, or odd models are order-2 objects
of z and are sampled at z = r e^{i theta} with abscissa r^2.  A plain pure
product is treated as an object of its own squared variable: it is sampled at
w = r e^{i theta} with abscissa r, which is the same order-2 normalization
transported through z -> z^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fourier
from .entire_models import ProductModel
from .sequences import SampledSet, density_fit


class AllMaskedError(ValueError):
    """Zero-exclusion mask removed every grid node."""


@dataclass(frozen=True)
class IndicatorEstimate:
    theta: float
    h_hat: float
    residual: float
    window: tuple
    n_masked: int = 0
    abscissa: str = "r^2"
    spread: float = 0.0  # slope spread across sub-windows; an uncertainty proxy

    @property
    def uncertainty(self) -> float:
        return self.residual + self.spread


@dataclass(frozen=True)
class DecayPredicateResult:
    passes: bool
    expected_pass: bool
    fitted_rate: float
    claimed_rate: float
    density: float
    gauss_rate: float
    threshold_density: float


def _is_order2_in_z(model: ProductModel) -> bool:
    return bool(model.quartic or model.gauss_rate != 0.0 or model.parity != 0)


def _measured_separation(zeros: np.ndarray) -> float:
    if len(zeros) < 2:
        return 0.5
    gaps = np.diff(zeros)
    return float(np.min(gaps * (1.0 + zeros[:-1])))


def _on_zero_ray(model: ProductModel, theta: float, order2: bool) -> bool:
    if len(model.zeros) == 0:
        return False
    zero_angles = [0.0, np.pi]
    if order2 and model.quartic:
        zero_angles += [np.pi / 2.0, 3.0 * np.pi / 2.0]
    ang = abs((theta + np.pi) % np.pi)  # fold to [0, pi)
    return any(min(abs(ang - (a % np.pi)), np.pi - abs(ang - (a % np.pi))) < 0.05
               for a in zero_angles)


def _zero_ray_mask(model: ProductModel, theta: float, r: np.ndarray, order2: bool,
                   mask_constant: float | None) -> np.ndarray:
    """True where the node is kept; excludes disk neighbourhoods of zeros on the ray."""
    keep = np.ones(len(r), dtype=bool)
    if not _on_zero_ray(model, theta, order2):
        return keep
    # half the measured separation keeps the exclusion disks disjoint
    c = mask_constant if mask_constant is not None else 0.5 * _measured_separation(model.zeros)
    for rho in model.zeros:
        keep &= np.abs(r - rho) >= c / (1.0 + rho)
    return keep


def indicator_estimate(model: ProductModel, theta: float, r_grid: np.ndarray | None = None,
                       mask_constant: float | None = None, windows: int = 6) -> IndicatorEstimate:
    """Estimate the ray growth rate of the model at angle theta."""
    order2 = _is_order2_in_z(model)
    if r_grid is None:
        r_max = 0.92 * min(model.validity_radius(1e-6), 12.0 if order2 else 40.0)
        r_lo = max(0.08 * r_max, 0.5)
        if _on_zero_ray(model, theta, order2):
            # gap midpoints carry the product's envelope between the log dips
            zs = model.zeros[(model.zeros > r_lo) & (model.zeros < r_max)]
            mids = 0.5 * (zs[:-1] + zs[1:]) if len(zs) >= 9 else np.empty(0)
            r_grid = mids if len(mids) >= 8 else np.linspace(r_lo, r_max, 320)
        else:
            r_grid = np.linspace(r_lo, r_max, 320)
    r = np.asarray(r_grid, dtype=float)
    keep = _zero_ray_mask(model, theta, r, order2, mask_constant)
    pts = r * np.exp(1j * theta)
    y = model.log_abs(pts)
    keep &= np.isfinite(y)
    if not np.any(keep):
        raise AllMaskedError(f"mask removed all {len(r)} nodes at theta={theta}")
    t = (r * r if order2 else r)[keep]
    y = y[keep]
    n_masked = int(len(r) - len(t))

    # sliding windows over the abscissa range, upper envelope of fitted slopes
    lo, hi = float(np.min(t)), float(np.max(t))
    width = (hi - lo) * 2.0 / (windows + 1)
    slopes, resids = [], []
    for k in range(windows):
        a = lo + k * width / 2.0
        sel = (t >= a) & (t <= a + width)
        if np.count_nonzero(sel) < 4:
            continue
        coef = np.polyfit(t[sel], y[sel], 1)
        slopes.append(float(coef[0]))
        resids.append(float(np.sqrt(np.mean((np.polyval(coef, t[sel]) - y[sel]) ** 2))))
    if not slopes:
        coef = np.polyfit(t, y, 1)
        slopes = [float(coef[0])]
        resids = [float(np.sqrt(np.mean((np.polyval(coef, t) - y) ** 2)))]
    best = int(np.argmax(slopes))
    spread = float(np.max(slopes) - np.min(slopes))
    return IndicatorEstimate(theta=float(theta), h_hat=slopes[best], residual=resids[best],
                             window=(lo, hi), n_masked=n_masked,
                             abscissa="r^2" if order2 else "r", spread=spread)


def trig_convexity_check(estimates: list[IndicatorEstimate], p: float = 2.0,
                         slack: float = 1e-9) -> tuple[bool, float]:
    """Sine-interpolation convexity over all sampled angle triples.

    Estimate uncertainties are propagated through the interpolation
    coefficients, so nearly-degenerate spans (where the sine denominator
    vanishes and would amplify noise without bound) do not produce spurious
    violations; spans with denominator below 0.05 are skipped outright.
    Returns (ok, worst violation beyond the allowance).
    """
    est = sorted(estimates, key=lambda e: e.theta)
    worst = -np.inf
    n = len(est)
    for i in range(n):
        for k in range(i + 2, n):
            t1, t2 = est[i].theta, est[k].theta
            span = t2 - t1
            if not 0 < span < np.pi / p - 1e-12:
                continue
            denom = np.sin(p * span)
            if denom < 0.05:
                continue
            for j in range(i + 1, k):
                t = est[j].theta
                c1 = np.sin(p * (t2 - t)) / denom
                c2 = np.sin(p * (t - t1)) / denom
                bound = c1 * est[i].h_hat + c2 * est[k].h_hat
                allowance = (est[j].uncertainty + abs(c1) * est[i].uncertainty
                             + abs(c2) * est[k].uncertainty + slack)
                worst = max(worst, est[j].h_hat - bound - allowance)
    if worst == -np.inf:
        worst = 0.0
    return bool(worst <= 0.0), float(worst)


def measured_zero_plane_density(model: ProductModel) -> float:
    """Density of the model's zeros in the product's squared variable.

    For a quartic model with zeros following sqrt(m/D) the squared-variable
    zeros are linear with slope D, which is the coefficient multiplying
    pi*|sin 2 theta| in the model's indicator.
    """
    if len(model.zeros) < 4:
        return 0.0
    w = model.zeros**2 if model.quartic else model.zeros
    idx = np.arange(1, len(w) + 1, dtype=float)
    design = np.column_stack([w, np.ones_like(w)])
    coef, *_ = np.linalg.lstsq(design, idx, rcond=None)
    return float(coef[0])


def zero_density_indicator_check(model: ProductModel, density: float | None = None,
                                 p: float = 2.0, theta_grid: np.ndarray | None = None,
                                 r_grid: np.ndarray | None = None,
                                 slack: float = 0.05) -> tuple[bool, float]:
    """Check D pi sin(p theta) + h(0) cos(p theta) <= max{h(theta), h(-theta)}.

    ``density`` is the positive-real-zero density of the model with respect to
    exponent p (measured from the zeros if omitted).  Returns (ok, margin):
    margin is the worst slack-adjusted gap, nonnegative iff the inequality
    held at every sampled angle.
    """
    if density is None:
        if len(model.zeros) >= 16:
            density = density_fit(SampledSet(points=model.zeros), p)[0]
        else:
            density = 0.0
    if theta_grid is None:
        theta_grid = np.linspace(0.0, np.pi / p, 13)
    h0 = indicator_estimate(model, 0.0, r_grid=r_grid)
    margin = np.inf
    ok = True
    for th in np.asarray(theta_grid, dtype=float):
        hp_est = indicator_estimate(model, th, r_grid=r_grid)
        hm_est = indicator_estimate(model, -th, r_grid=r_grid)
        lhs = density * np.pi * np.sin(p * th) + h0.h_hat * np.cos(p * th)
        rhs = max(hp_est.h_hat, hm_est.h_hat)
        allowance = h0.uncertainty + hp_est.uncertainty + hm_est.uncertainty + slack * max(1.0, abs(rhs))
        gap = rhs + allowance - lhs
        margin = min(margin, gap)
        ok = ok and gap >= 0.0
    return bool(ok), float(margin)


def fourier_decay_predicate(model: ProductModel, claimed_rate: float,
                            quad: fourier.QuadratureSpec | None = None,
                            n_xi: int = 48) -> DecayPredicateResult:
    """Fit the frequency-side Gaussian envelope rate and compare to a claim.

    The model's time decay is its Gaussian rate a and its indicator carries
    m pi |sin 2 theta| from the zeros; the transfer threshold is
    m* = sqrt(a (1/b - a)).  The transform is evaluated on a geometric range
    of frequencies, an upper envelope per bin suppresses oscillation dips, and
    the fitted rate decides the predicate.
    """
    a = model.gauss_rate
    if a <= 0:
        raise ValueError("model needs a positive Gaussian rate")
    m = measured_zero_plane_density(model)
    arg = a * (1.0 / claimed_rate - a)
    threshold = np.sqrt(arg) if arg > 0 else 0.0
    expected = m < threshold

    if quad is None:
        t_win = float(np.sqrt(15.0 * np.log(10.0) / (a * np.pi))) + 1.0
        quad = fourier.QuadratureSpec(half_width=t_win, nodes=4096, tolerance=1e-6)
    rate_guess = a / (a * a + m * m)
    xi_max = float(np.sqrt(30.0 / (np.pi * rate_guess)))
    xi = np.linspace(0.3, xi_max, n_xi)
    res = fourier.transform(model.values, quad, xi)
    mags = np.abs(res.values)
    usable = mags > 30.0 * np.maximum(res.error, 1e-300)
    if np.count_nonzero(usable) < 10:
        raise fourier.InsufficientDataError("too few frequency samples above the quadrature noise")
    xi_u, mag_u = xi[usable], mags[usable]
    # the asymptotic rate emerges in the far field; drop the prefactor-dominated
    # inner range when enough outer samples survive
    outer = xi_u >= 0.55 * xi_u[-1]
    if np.count_nonzero(outer) >= 10:
        xi_u, mag_u = xi_u[outer], mag_u[outer]
    # upper envelope per xi^2 bin to step over sign-change dips
    nbins = 14
    edges = np.linspace(xi_u[0] ** 2, xi_u[-1] ** 2, nbins + 1)
    bx, by = [], []
    for i in range(nbins):
        sel = (xi_u**2 >= edges[i]) & (xi_u**2 <= edges[i + 1])
        if np.count_nonzero(sel):
            j = np.argmax(mag_u[sel])
            bx.append(xi_u[sel][j])
            by.append(np.log(mag_u[sel][j]))
    fit = fourier.envelope_fit(np.array(bx), np.array(by))
    return DecayPredicateResult(passes=bool(fit.rate >= claimed_rate), expected_pass=bool(expected),
                                fitted_rate=fit.rate, claimed_rate=float(claimed_rate),
                                density=m, gauss_rate=a, threshold_density=float(threshold))
