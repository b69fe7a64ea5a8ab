"""Lopatinski determinant: evaluation, right-half-plane root counting, series.

For a unit tangential wave vector omega' the normal-mode analysis reduces to
the scalar equation L(s) = 0 in the Laplace variable s, with

    L(s) = (ell^2 + w_plus^2) * sqrt(1 + eps^2 s^2)
           + w_minus^2 - E1^2 - 2i E1 w_perp eps s + |Hv'|^2 eps^2 s^2,

    ell = s + i (v'.omega').

Roots with Re s > 0 generate exponentially growing modes whose rate scales
with the wavenumber (violent instability).  The principal branch of the
square root is analytic on the open right half-plane, so roots there are
counted exactly by the argument principle along the boundary of a half-disk
{Re s >= delta, |s - delta| <= R}; located roots are polished by Newton
iteration with the analytic derivative.

Small-eps expansions of the roots (integer-power ladder in the generic case,
half-integer ladder in the transitional case) are built by substituting a
truncated power series into L and solving order by order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (ContourTooCloseError, DirectionError, NonConvergentError,
                     NotTransitionalError, TransitionalAtThisDirectionError)
from .state import EquilibriumState, FrequencyBundle, WaveDirection, frequency_bundle

_MAX_CONTOUR_POINTS = 1 << 20
_CONTOUR_FLOOR = 1e-8          # min |L|/scale on a usable contour
_NEWTON_TARGET = 1e-13         # relative residual targeted by polishing
_ROOT_RESIDUAL = 1e-10         # relative residual certified per reported root
# (delta, R) multipliers tried when a contour grazes a root
_JITTERS = ((1.0, 1.0), (0.9, 1.1), (1.1, 0.9), (1.05, 1.05))


# ---------------------------------------------------------------------------
# context and pointwise evaluation


@dataclass(frozen=True)
class LopatinskiContext:
    """Frozen per-direction data for evaluating L and its derivative."""

    state: EquilibriumState
    direction: WaveDirection            # unit vector
    bundle: FrequencyBundle

    @property
    def eps(self) -> float:
        return self.state.eps

    @property
    def e1(self) -> float:
        return self.state.E1_hat

    @property
    def hv_sq(self) -> float:
        return self.state.Hv_sq

    @property
    def v_dot(self) -> float:
        return self.bundle.v_dot

    def ell(self, s):
        """Symbol ell(s) = s + i (v'.omega')."""
        return s + 1j * self.bundle.v_dot

    @property
    def leading_deficit(self) -> float:
        """D = E1^2 - w_plus^2 - w_minus^2, the eps = 0 squared growth rate."""
        return self.e1 ** 2 - self.bundle.w_plus ** 2 - self.bundle.w_minus ** 2


def make_context(state: EquilibriumState, direction: WaveDirection) -> LopatinskiContext:
    """Normalize the direction and cache the field projections."""
    d = direction if direction.is_unit else direction.unit()
    return LopatinskiContext(state=state, direction=d,
                             bundle=frequency_bundle(state, d))


def plasma_decay_root(direction) -> float:
    """Decay exponent of the plasma side, -|omega'| (equals -1 when unit)."""
    if not isinstance(direction, WaveDirection):
        direction = WaveDirection(*direction)
    return -direction.norm


def vacuum_decay_root(s, eps: float):
    """Principal square root sqrt(1 + eps^2 s^2); Re >= 0 always.

    Analytic in s on the open right half-plane: there 1 + eps^2 s^2 can only
    reach the branch cut (-inf, 0] if s^2 is real and negative, which forces
    s onto the imaginary axis.
    """
    out = np.sqrt(1.0 + (eps * np.asarray(s, dtype=complex)) ** 2)
    return complex(out) if np.ndim(out) == 0 else out


def lopatinski(ctx: LopatinskiContext, s):
    """L(s) on the unit-|omega'| normalization; vectorized over s."""
    s = np.asarray(s, dtype=complex)
    b = ctx.bundle
    ell = s + 1j * b.v_dot
    es = ctx.eps * s
    g = np.sqrt(1.0 + es * es)
    out = ((ell * ell + b.w_plus ** 2) * g + b.w_minus ** 2 - ctx.e1 ** 2
           - 2j * ctx.e1 * b.w_perp * es + ctx.hv_sq * es * es)
    return complex(out) if np.ndim(out) == 0 else out


def lopatinski_deriv(ctx: LopatinskiContext, s):
    """dL/ds; the square-root term contributes eps^2 s / sqrt(1 + eps^2 s^2)."""
    s = np.asarray(s, dtype=complex)
    b = ctx.bundle
    ell = s + 1j * b.v_dot
    es = ctx.eps * s
    g = np.sqrt(1.0 + es * es)
    out = (2.0 * ell * g + (ell * ell + b.w_plus ** 2) * (ctx.eps ** 2) * s / g
           - 2j * ctx.e1 * b.w_perp * ctx.eps + 2.0 * ctx.hv_sq * (ctx.eps ** 2) * s)
    return complex(out) if np.ndim(out) == 0 else out


def lopatinski_scale(ctx: LopatinskiContext, s):
    """Sum of the term magnitudes of L(s): the natural relative scale."""
    s = np.asarray(s, dtype=complex)
    b = ctx.bundle
    ell = s + 1j * b.v_dot
    es = ctx.eps * s
    g = np.sqrt(1.0 + es * es)
    out = (np.abs((ell * ell + b.w_plus ** 2) * g) + b.w_minus ** 2 + ctx.e1 ** 2
           + np.abs(2.0 * ctx.e1 * b.w_perp * es) + ctx.hv_sq * np.abs(es) ** 2)
    return float(out) if np.ndim(out) == 0 else out


def lopatinski_raw(state: EquilibriumState, omega, s):
    """Unnormalized determinant for a general (non-unit) omega'.

    Homogeneous of degree three: L(t s, t omega') = t^3 L(s, omega') for t > 0.
    """
    w2, w3 = (omega.omega2, omega.omega3) if isinstance(omega, WaveDirection) else omega
    if w2 == 0.0 and w3 == 0.0:
        raise DirectionError("omega' must be nonzero")
    s = np.asarray(s, dtype=complex)
    H2, H3 = state.H_hat_t
    Hv2, Hv3 = state.Hv_hat_t
    v2, v3 = state.v_hat_t
    wmag = math.hypot(w2, w3)
    wp = H2 * w2 + H3 * w3
    wm = Hv2 * w2 + Hv3 * w3
    wperp = Hv3 * w2 - Hv2 * w3
    ell = s + 1j * (v2 * w2 + v3 * w3)
    es = state.eps * s
    out = ((ell * ell + wp ** 2) * np.sqrt(wmag ** 2 + es * es)
           + wm ** 2 * wmag - state.E1_hat ** 2 * wmag ** 3
           - 2j * state.E1_hat * wperp * es * wmag
           + wmag * state.Hv_sq * es * es)
    return complex(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# argument-principle machinery


@dataclass(frozen=True)
class HalfDiskRegion:
    """Search region {Re s >= delta, |s - delta| <= R} in the right half-plane."""

    delta: float
    radius: float

    def __post_init__(self):
        if not (self.delta > 0.0 and self.radius > 0.0):
            raise ValueError("half-disk region requires delta > 0 and radius > 0")

    def contains(self, s: complex) -> bool:
        return s.real >= self.delta and abs(s - self.delta) <= self.radius


def default_region(state: EquilibriumState) -> HalfDiskRegion:
    """Region large enough for every root at small eps.

    At eps = 0 all roots satisfy |s| <= |v'| + E1; the factor 10 margin
    absorbs the finite-eps corrections and the field projections.
    """
    r = 10.0 * (1.0 + math.sqrt(state.v_sq) + math.sqrt(state.H_sq)
                + math.sqrt(state.Hv_sq) + abs(state.E1_hat))
    return HalfDiskRegion(delta=1e-3 * r, radius=r)


def _half_disk_path(delta: float, radius: float):
    # Positively oriented boundary: right half-circle from delta-iR through
    # delta+R to delta+iR, then the vertical chord back down.  The chord is
    # parametrized with a quadratic stretch toward small |Im s|: that is
    # where the imaginary-axis roots of neutral states pass at distance
    # delta, the sharpest feature the sampling has to resolve.
    def point_of(u):
        u = np.asarray(u, dtype=float)
        s = np.empty(u.shape, dtype=complex)
        arc = u < 0.5
        theta = -0.5 * np.pi + 2.0 * np.pi * u[arc]
        s[arc] = delta + radius * np.exp(1j * theta)
        y = 1.0 - 4.0 * (u[~arc] - 0.5)            # +1 .. -1 down the chord
        s[~arc] = delta + 1j * radius * y * np.abs(y)
        return s
    return point_of


def _polygon_path(vertices):
    verts = np.asarray(vertices, dtype=complex)
    m = len(verts)

    def point_of(u):
        u = np.asarray(u, dtype=float)
        k = np.minimum((u * m).astype(int), m - 1)
        local = u * m - k
        p0 = verts[k]
        p1 = verts[(k + 1) % m]
        return p0 + (p1 - p0) * local
    return point_of


def _circle_path(center: complex, radius: float):
    def point_of(u):
        u = np.asarray(u, dtype=float)
        return center + radius * np.exp(2j * np.pi * u)
    return point_of


def _winding_number(ctx: LopatinskiContext, point_of, n0: int,
                    max_points: int = _MAX_CONTOUR_POINTS):
    """Winding of L around 0 along a closed path, adaptively refined.

    Parametric midpoints are inserted until every step both changes the
    argument by less than pi/2 and changes the value by less than the
    smaller endpoint magnitude.  The second criterion is what catches
    near-misses of the path: a root just off the contour flips the sign of
    L across a span the initial sampling can step over entirely, leaving a
    wrapped phase difference that looks small (aliasing) -- but the value
    jump |dL| ~ 2|L| it causes cannot be hidden.

    Raises ContourTooCloseError when the relative |L| floor is undercut (a
    root sits on or too near the path) and NonConvergentError past the
    point budget.  Returns (winding, n_intervals, min relative |L|).
    """
    u = np.linspace(0.0, 1.0, n0 + 1)
    pts = point_of(u)
    vals = lopatinski(ctx, pts)
    rel = np.abs(vals) / np.maximum(lopatinski_scale(ctx, pts), 1e-300)
    while True:
        if rel.min() < _CONTOUR_FLOOR:
            raise ContourTooCloseError(
                f"min |L|/scale = {rel.min():.3e} on contour (floor {_CONTOUR_FLOOR:g})")
        dphi = np.diff(np.angle(vals))
        dphi = np.mod(dphi + np.pi, 2.0 * np.pi) - np.pi
        mags = np.abs(vals)
        jump = np.abs(np.diff(vals)) > 0.8 * np.minimum(mags[:-1], mags[1:])
        bad = (np.abs(dphi) >= 0.5 * np.pi) | jump
        bad &= np.diff(u) > 1e-12          # stop refining below roundoff
        if not bad.any():
            break
        if len(u) + int(bad.sum()) > max_points:
            raise NonConvergentError(
                f"contour refinement exceeded {max_points} points")
        new_u = 0.5 * (u[:-1][bad] + u[1:][bad])
        new_pts = point_of(new_u)
        new_vals = lopatinski(ctx, new_pts)
        new_rel = np.abs(new_vals) / np.maximum(
            lopatinski_scale(ctx, new_pts), 1e-300)
        idx = np.searchsorted(u, new_u)
        u = np.insert(u, idx, new_u)
        vals = np.insert(vals, idx, new_vals)
        rel = np.insert(rel, idx, new_rel)
    total = float(np.sum(dphi)) / (2.0 * np.pi)
    winding = int(round(total))
    if abs(total - winding) > 0.25:
        raise NonConvergentError(f"non-integer winding {total:.6f}")
    return winding, len(u) - 1, float(rel.min())


def _count_on_region(ctx: LopatinskiContext, region: HalfDiskRegion):
    """Winding over the half-disk, jittering the boundary off grazed roots."""
    last_err = None
    for jd, jr in _JITTERS:
        reg = HalfDiskRegion(region.delta * jd, region.radius * jr)
        try:
            winding, n_int, min_rel = _winding_number(
                ctx, _half_disk_path(reg.delta, reg.radius), n0=512)
            return winding, reg, n_int, min_rel
        except ContourTooCloseError as err:
            last_err = err
    raise ContourTooCloseError(
        f"contour grazes a root after {len(_JITTERS) - 1} boundary "
        f"perturbations: {last_err}")


def count_unstable_roots(ctx: LopatinskiContext, region: HalfDiskRegion) -> int:
    """Number of roots of L (with multiplicity) inside the half-disk region."""
    winding, _, _, _ = _count_on_region(ctx, region)
    return winding


def _rect_count(ctx: LopatinskiContext, re0, re1, im0, im1) -> int:
    path = _polygon_path([complex(re0, im0), complex(re1, im0),
                          complex(re1, im1), complex(re0, im1)])
    winding, _, _ = _winding_number(ctx, path, n0=64)
    return winding


def newton_refine(ctx: LopatinskiContext, s0: complex, max_iter: int = 60):
    """Polish a root estimate; returns (s, |L(s)|, scale at s)."""
    s = complex(s0)
    for _ in range(max_iter):
        val = lopatinski(ctx, s)
        if abs(val) <= _NEWTON_TARGET * lopatinski_scale(ctx, s):
            break
        dval = lopatinski_deriv(ctx, s)
        if dval == 0:
            break
        step = val / dval
        s -= step
        if abs(step) <= 1e-16 * (1.0 + abs(s)):
            break
    return s, abs(lopatinski(ctx, s)), lopatinski_scale(ctx, s)


@dataclass(frozen=True)
class RootReport:
    """Certified right-half-plane roots of L in a region."""

    region: HalfDiskRegion           # region actually integrated (after jitter)
    winding_count: int
    roots: tuple[complex, ...]       # multiplicity-repeated, sorted by (-Re, Im)
    residuals: tuple[float, ...]     # |L| at each root
    contour_points: int
    min_abs_on_contour: float        # min |L|/scale along the counting contour
    flags: tuple[str, ...] = ()

    @property
    def max_re(self) -> float | None:
        return max((r.real for r in self.roots), default=None)


def find_unstable_roots(ctx: LopatinskiContext, region: HalfDiskRegion) -> RootReport:
    """Count roots in the region, then localize them.

    Localization bisects the bounding rectangle on winding counts down to
    cells of diameter 1e-6 * R and Newton-polishes from the cell centers.
    Cells that stall with a count >= 2 are reported via ``flags`` rather
    than raised.
    """
    winding, used, n_int, min_rel = _count_on_region(ctx, region)
    flags: list[str] = []
    if winding == 0:
        return RootReport(used, 0, (), (), n_int, min_rel)

    d, r = used.delta, used.radius
    rect = (d, d + r, -r, r)
    try:
        total = _rect_count(ctx, *rect)
    except ContourTooCloseError:
        # expand the box marginally to move its edges off any root
        rect = (d * 0.97, d + 1.02 * r, -1.02 * r, 1.02 * r)
        total = _rect_count(ctx, *rect)
    minimal = 1e-6 * r
    located: list[tuple[complex, int]] = []
    stack = [(rect, total)]
    while stack:
        (re0, re1, im0, im1), cnt = stack.pop()
        if cnt <= 0:
            continue
        if max(re1 - re0, im1 - im0) <= minimal:
            center = complex(0.5 * (re0 + re1), 0.5 * (im0 + im1))
            if cnt >= 2:
                flags.append(f"MultiplicityUnresolved: count {cnt} in minimal "
                             f"cell at {center:.6g}")
            located.append((newton_refine(ctx, center)[0], cnt))
            continue
        split_re = (re1 - re0) >= (im1 - im0)
        lo, hi = (re0, re1) if split_re else (im0, im1)
        child1 = child2 = None
        for frac in (0.5, 0.53, 0.47, 0.51):
            cut = lo + frac * (hi - lo)
            a = (re0, cut, im0, im1) if split_re else (re0, re1, im0, cut)
            b = (cut, re1, im0, im1) if split_re else (re0, re1, cut, im1)
            try:
                c1 = _rect_count(ctx, *a)
                child1, child2 = (a, c1), (b, cnt - c1)
                break
            except ContourTooCloseError:
                continue
        if child1 is None:
            # every tested cut grazes a root: treat the cell as minimal
            center = complex(0.5 * (re0 + re1), 0.5 * (im0 + im1))
            flags.append(f"cell at {center:.6g} could not be split cleanly")
            located.append((newton_refine(ctx, center)[0], cnt))
            continue
        if child2[1] < 0 or child1[1] > cnt:
            child2 = (child2[0], _rect_count(ctx, *child2[0]))
        stack.extend([child1, child2])

    # Merge duplicates (cells straddling a jittered boundary), keep region hits.
    merged: list[tuple[complex, int]] = []
    for s, m in sorted(located, key=lambda t: (t[0].real, t[0].imag)):
        if merged and abs(s - merged[-1][0]) <= 1e-7 * r:
            merged[-1] = (merged[-1][0], max(merged[-1][1], m))
        else:
            merged.append((s, m))
    roots: list[complex] = []
    for s, m in merged:
        if used.contains(s):
            roots.extend([s] * m)
    roots.sort(key=lambda z: (-z.real, z.imag))
    if len(roots) != winding:
        flags.append(f"located {len(roots)} roots but winding is {winding}")
    residuals = []
    for s in roots:
        res = abs(lopatinski(ctx, s))
        residuals.append(res)
        if res > _ROOT_RESIDUAL * lopatinski_scale(ctx, s):
            flags.append(f"root {s:.6g} residual {res:.3e} above certification")
    return RootReport(used, winding, tuple(roots), tuple(residuals),
                      n_int, min_rel, tuple(flags))


def local_winding(ctx: LopatinskiContext, center: complex, radius: float) -> int:
    """Winding of L along a small circle; confirms an isolated root."""
    winding, _, _ = _winding_number(ctx, _circle_path(center, radius), n0=32)
    return winding


# ---------------------------------------------------------------------------
# small-eps root expansions


class BranchKind(str, Enum):
    GENERIC_UNSTABLE = "GenericUnstable"
    GENERIC_DECAYING = "GenericDecaying"
    GENERIC_NEUTRAL_PLUS = "GenericNeutral+"
    GENERIC_NEUTRAL_MINUS = "GenericNeutral-"
    TRANSITIONAL_SQRT_EPS_PLUS = "TransitionalSqrtEps+"
    TRANSITIONAL_SQRT_EPS_MINUS = "TransitionalSqrtEps-"
    TRANSITIONAL_ZERO_SPEED = "TransitionalZeroSpeed"


@dataclass(frozen=True)
class SeriesRoot:
    """Truncated expansion s(eps) = sum_j c_j eps^(k_j) of one root branch."""

    branch: BranchKind
    coefficients: tuple[complex, ...]
    exponents: tuple[float, ...]

    def eval(self, eps: float, order: int | None = None) -> complex:
        """Partial sum at eps, optionally truncated to ``order + 1`` terms."""
        terms = zip(self.coefficients, self.exponents)
        if order is not None:
            terms = list(terms)[:order + 1]
        return sum(c * eps ** k for c, k in terms)


def transitional_tolerance(ctx: LopatinskiContext) -> float:
    """Band |D| below which a direction counts as transitional."""
    b = ctx.bundle
    return 1e-9 * (1.0 + ctx.e1 ** 2 + b.w_plus ** 2 + b.w_minus ** 2)


def _series_mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(a, b)[:n + 1]


def _series_shift(a: np.ndarray, k: int, n: int) -> np.ndarray:
    out = np.zeros(n + 1, dtype=complex)
    m = min(len(a), n + 1 - k)
    if m > 0:
        out[k:k + m] = a[:m]
    return out


def _sqrt1p_series(u: np.ndarray, n: int) -> np.ndarray:
    # sqrt(1 + u) for a series u in eps with zero constant term
    out = np.zeros(n + 1, dtype=complex)
    out[0] = 1.0
    uk = np.zeros(n + 1, dtype=complex)
    uk[0] = 1.0
    coef = 1.0
    for k in range(1, n + 1):
        coef *= (0.5 - (k - 1)) / k
        uk = _series_mul(uk, u, n)
        if not uk.any():
            break
        out += coef * uk
    return out


def _lopatinski_series(ctx: LopatinskiContext, s_ser: np.ndarray, n: int) -> np.ndarray:
    """Coefficients of eps^0 .. eps^n of L(s(eps), eps) for s a series in eps."""
    b = ctx.bundle
    s = _series_shift(s_ser, 0, n)
    ell = s.copy()
    ell[0] += 1j * b.v_dot
    ell2 = _series_mul(ell, ell, n)
    s2 = _series_mul(s, s, n)
    u = _series_shift(s2, 2, n)                     # eps^2 s^2
    g = _sqrt1p_series(u, n)
    head = ell2.copy()
    head[0] += b.w_plus ** 2
    out = _series_mul(head, g, n)
    out[0] += b.w_minus ** 2 - ctx.e1 ** 2
    out += -2j * ctx.e1 * b.w_perp * _series_shift(s, 1, n)
    out += ctx.hv_sq * u
    return out


def _generic_coefficients(ctx: LopatinskiContext, s0: complex, order: int) -> list[complex]:
    # Order j coefficient of L depends on c_j only through 2*(s0 + iV)*c_j,
    # so each order is a single linear solve.
    denom = 2.0 * (s0 + 1j * ctx.bundle.v_dot)
    coeffs = [s0]
    for j in range(1, order + 1):
        trial = np.array(coeffs + [0.0], dtype=complex)
        residual = _lopatinski_series(ctx, trial, j)[j]
        coeffs.append(-residual / denom)
    return coeffs


def series_root_generic(ctx: LopatinskiContext, order: int = 2) -> list[SeriesRoot]:
    """Integer-ladder expansions s = s0 + s1 eps + ... at a generic direction.

    With D = E1^2 - w_plus^2 - w_minus^2:
      D > 0: s0 = +-sqrt(D) - i(v'.omega'); the + branch is the growing root.
      D < 0: s0 = i(+-eta - (v'.omega')), eta = sqrt(-D); every coefficient
             is purely imaginary (neutral oscillations).
    """
    D = ctx.leading_deficit
    if abs(D) <= transitional_tolerance(ctx):
        raise TransitionalAtThisDirectionError(
            f"|D| = {abs(D):.3e} within the transitional band; "
            "use series_root_transitional")
    v = ctx.bundle.v_dot
    out = []
    if D > 0.0:
        branches = ((1.0, BranchKind.GENERIC_UNSTABLE),
                    (-1.0, BranchKind.GENERIC_DECAYING))
        s0_of = lambda sign: sign * math.sqrt(D) - 1j * v
    else:
        eta = math.sqrt(-D)
        branches = ((1.0, BranchKind.GENERIC_NEUTRAL_PLUS),
                    (-1.0, BranchKind.GENERIC_NEUTRAL_MINUS))
        s0_of = lambda sign: 1j * (sign * eta - v)
    for sign, kind in branches:
        coeffs = _generic_coefficients(ctx, s0_of(sign), order)
        out.append(SeriesRoot(kind, tuple(coeffs),
                              tuple(float(j) for j in range(order + 1))))
    return out


def series_root_transitional(ctx: LopatinskiContext, order: int = 2) -> list[SeriesRoot]:
    """Root expansions exactly on the critical set (D = 0 at this direction).

    If (v'.omega') != 0 the double root at -i(v'.omega') splits on a
    half-integer ladder with s1^2 = 2 E1 w_perp (v'.omega'): a real pair
    (one growing like sqrt(eps)) when the product is positive, an imaginary
    pair (neutral) otherwise.  If (v'.omega') = 0 one root is exactly 0 and
    the other is purely imaginary of size O(eps).
    """
    D = ctx.leading_deficit
    if abs(D) > transitional_tolerance(ctx):
        raise NotTransitionalError(
            f"|D| = {abs(D):.3e} exceeds the transitional band at this direction")
    b = ctx.bundle
    v = b.v_dot
    if v != 0.0:
        s1 = cmath.sqrt(2.0 * ctx.e1 * b.w_perp * v)
        return [
            SeriesRoot(BranchKind.TRANSITIONAL_SQRT_EPS_PLUS,
                       (-1j * v, s1), (0.0, 0.5)),
            SeriesRoot(BranchKind.TRANSITIONAL_SQRT_EPS_MINUS,
                       (-1j * v, -s1), (0.0, 0.5)),
        ]
    alpha = 2j * ctx.e1 * b.w_perp
    # next term of the odd ladder s = alpha*eps + beta*eps^3 + ...
    beta = -alpha * (ctx.hv_sq + 0.5 * b.w_plus ** 2)
    return [
        SeriesRoot(BranchKind.TRANSITIONAL_ZERO_SPEED, (0j,), (0.0,)),
        SeriesRoot(BranchKind.TRANSITIONAL_ZERO_SPEED, (alpha, beta), (1.0, 3.0)),
    ]


# ---------------------------------------------------------------------------
# direction scans


@dataclass(frozen=True)
class DirectionScan:
    direction: WaveDirection
    count: int | None                  # None when the count itself failed
    region: HalfDiskRegion | None = None
    contour_points: int | None = None
    min_rel: float | None = None
    report: RootReport | None = None   # present when roots were located
    error: str | None = None

    @property
    def max_re_s(self) -> float | None:
        return self.report.max_re if self.report is not None else None


@dataclass(frozen=True)
class ScanSummary:
    """Per-direction root counts plus the worst growth rate found."""

    records: tuple[DirectionScan, ...]
    numerically_unstable: bool
    max_re_s: float | None
    n_errors: int


def _count_with_doubling(ctx: LopatinskiContext, region: HalfDiskRegion):
    # The default radius is validated by doubling until the count stabilizes
    # (at most three doublings).
    count, used, n_int, min_rel = _count_on_region(ctx, region)
    for _ in range(3):
        bigger = HalfDiskRegion(region.delta, used.radius * 2.0)
        count2, used2, n2, rel2 = _count_on_region(ctx, bigger)
        if count2 == count:
            break
        count, used, n_int, min_rel = count2, used2, n2, rel2
    return count, used, n_int, min_rel


def scan_directions(state: EquilibriumState, n_dirs: int = 32,
                    region: HalfDiskRegion | None = None,
                    locate: bool = True) -> ScanSummary:
    """Count unstable roots over equispaced directions plus the F-minimizers.

    A state is declared numerically unstable iff any scanned direction has a
    positive right-half-plane root count.  Per-direction failures are
    recorded, not raised.
    """
    if n_dirs < 8:
        raise ValueError("n_dirs must be at least 8")
    from .criterion import minimize_f  # local import: criterion has no dispersion dep

    mres = minimize_f(state)
    star = mres.omega_star
    directions = [WaveDirection.from_angle(2.0 * math.pi * k / n_dirs)
                  for k in range(n_dirs)]
    directions += [star, WaveDirection(-star.omega2, -star.omega3)]

    records = []
    for d in directions:
        ctx = make_context(state, d)
        try:
            if region is None:
                count, used, n_int, min_rel = _count_with_doubling(
                    ctx, default_region(state))
            else:
                count, used, n_int, min_rel = _count_on_region(ctx, region)
            report = None
            if count > 0 and locate:
                report = find_unstable_roots(ctx, used)
            records.append(DirectionScan(d, count, used, n_int, min_rel, report))
        except (ContourTooCloseError, NonConvergentError) as err:
            records.append(DirectionScan(d, None, error=str(err)))
    counts = [r.count for r in records if r.count is not None]
    res = [r.max_re_s for r in records if r.max_re_s is not None]
    return ScanSummary(
        records=tuple(records),
        numerically_unstable=any(c > 0 for c in counts),
        max_re_s=max(res) if res else None,
        n_errors=sum(1 for r in records if r.error is not None),
    )
