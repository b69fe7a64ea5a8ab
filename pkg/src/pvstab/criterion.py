"""Closed-form stability classification of a planar interface.

An equilibrium is violently unstable (the linearized problem is ill-posed in
the Hadamard sense) exactly when

    E1^2 > ( |H|^2 + |Hv|^2 - sqrt((|H|^2 + |Hv|^2)^2 - 4|H x Hv|^2) ) / 2,

or when equality holds and an additional sign condition G > 0 is met.  The
right-hand side equals the minimum over unit wave directions omega' of

    F(omega') = (H'.omega')^2 + (Hv'.omega')^2,

a quadratic form on the unit circle whose smaller eigenvalue has the closed
form above.  `minimize_f` returns the minimum together with the minimizing
direction, reconstructed from the angle relations at the extremum.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .state import EquilibriumState, WaveDirection, frequency_bundle

# Degenerate transitional states are checked on this many sampled directions
# in addition to the reported representative.
_DEGENERATE_SAMPLES = 64


class Verdict(str, enum.Enum):
    VIOLENTLY_UNSTABLE = "ViolentlyUnstable"
    NEUTRALLY_STABLE = "NeutrallyStable"
    TRANSITIONAL_UNSTABLE = "TransitionalUnstable"
    TRANSITIONAL_NEUTRAL = "TransitionalNeutral"

    @property
    def is_unstable(self) -> bool:
        return self in (Verdict.VIOLENTLY_UNSTABLE, Verdict.TRANSITIONAL_UNSTABLE)


@dataclass(frozen=True)
class MinimizationResult:
    """Minimum of F over the unit circle and one of the two antipodal minimizers."""

    f_min: float
    omega_star: WaveDirection
    x_star_trig: tuple[float, float]  # (cos 2x*, sin 2x*), x* from the field bisector
    degenerate: bool = False          # F constant on the circle (or both fields zero)


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    critical_e1_sq: float        # instability threshold for E1^2
    margin: float                # E1^2 - critical_e1_sq
    minimizer: WaveDirection     # worst direction omega'* (antipode equivalent)
    f_min: float                 # min F, equals critical_e1_sq up to roundoff
    transitional_G: float | None = None
    degenerate: bool = False
    tol_eq: float = 0.0

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "margin": self.margin,
            "f_min": self.f_min,
            "omega_star_2": self.minimizer.omega2,
            "omega_star_3": self.minimizer.omega3,
            "G": self.transitional_G,
            "degenerate_flag": self.degenerate,
        }


def f_of_omega(state: EquilibriumState, direction: WaveDirection) -> float:
    """F(omega') = (H'.omega')^2 + (Hv'.omega')^2 for unit omega'."""
    b = frequency_bundle(state, direction)
    return b.w_plus ** 2 + b.w_minus ** 2


def default_tol_eq(state: EquilibriumState, coeff: float = 1e-9) -> float:
    """Half-width of the transitional band around E1^2 = critical value.

    Exact equality is a codimension-one condition that floating point cannot
    test; the band scales with the squared field magnitudes.
    """
    return coeff * (1.0 + state.H_sq + state.Hv_sq)


def _canonical(w2: float, w3: float) -> WaveDirection:
    # Deterministic representative of the antipodal pair: omega2 >= 0,
    # ties broken by omega3 >= 0.
    if w2 < 0.0 or (w2 == 0.0 and w3 < 0.0):
        w2, w3 = -w2, -w3
    return WaveDirection(w2, w3)


def minimize_f(state: EquilibriumState) -> MinimizationResult:
    """Minimize F(omega') = (H'.omega')^2 + (Hv'.omega')^2 on |omega'| = 1.

    Nondegenerate case: with a = |H'|^2, b = |Hv'|^2 and alpha the angle
    between the fields,

        F_min = (a + b - sqrt((a+b)^2 - 4ab sin^2(alpha))) / 2,

    attained at the angle x* from the bisector of alpha fixed by

        cos 2x* = -(b+a) cos(alpha) / r,  sin 2x* = -(b-a) sin(alpha) / r,

    r being the square root above.  Degenerate cases: if either field
    vanishes the minimizer is perpendicular to the other one (F_min = 0 when
    only one is zero); if a = b and the fields are orthogonal, F is constant
    on the circle and any direction minimizes (flagged).
    """
    H2, H3 = state.H_hat_t
    Hv2, Hv3 = state.Hv_hat_t
    a, b = state.H_sq, state.Hv_sq

    if a == 0.0 and b == 0.0:
        return MinimizationResult(0.0, WaveDirection(1.0, 0.0), (1.0, 0.0),
                                  degenerate=True)
    if a == 0.0:
        r = math.sqrt(b)
        return MinimizationResult(0.0, _canonical(Hv3 / r, -Hv2 / r), (-1.0, 0.0))
    if b == 0.0:
        r = math.sqrt(a)
        return MinimizationResult(0.0, _canonical(H3 / r, -H2 / r), (-1.0, 0.0))

    dot = H2 * Hv2 + H3 * Hv3
    cross = H2 * Hv3 - H3 * Hv2
    alpha = math.atan2(cross, dot)
    rad = (a + b) ** 2 - 4.0 * cross * cross
    r = math.sqrt(max(rad, 0.0))

    if r <= 1e-14 * (a + b):
        # a = b with orthogonal fields: F is identically (a+b)/2.
        return MinimizationResult(0.5 * (a + b), WaveDirection(1.0, 0.0),
                                  (1.0, 0.0), degenerate=True)

    cos2x = -(b + a) * math.cos(alpha) / r
    sin2x = -(b - a) * math.sin(alpha) / r
    x_star = 0.5 * math.atan2(sin2x, cos2x)
    theta_bisector = math.atan2(H3, H2) + 0.5 * alpha
    theta = theta_bisector + x_star
    f_min = 0.5 * (a + b - r)
    return MinimizationResult(max(f_min, 0.0),
                              _canonical(math.cos(theta), math.sin(theta)),
                              (cos2x, sin2x))


def critical_e1_squared(state: EquilibriumState) -> float:
    """Instability threshold for E1^2 (the minimum of F in closed form).

    Uses |H x Hv| = |H2*Hv3 - H3*Hv2| directly; the radicand is clamped at
    zero against roundoff so that collinear fields give exactly 0.
    """
    hs = state.H_sq + state.Hv_sq
    cross = state.cross_H_Hv
    rad = hs * hs - 4.0 * cross * cross
    return 0.5 * (hs - math.sqrt(max(rad, 0.0)))


def transitional_discriminant(state: EquilibriumState) -> float:
    """Sign quantity G deciding the transitional (equality) case.

    G = E1 * [ (H.Hv)(v2*H3 - v3*H2) + (|Hv|^2 - E1^2)(v2*Hv3 - v3*Hv2) ].

    G > 0 means violent instability on the critical set; computable for any
    state but meaningful only where E1^2 equals the critical value.
    """
    v2, v3 = state.v_hat_t
    H2, H3 = state.H_hat_t
    Hv2, Hv3 = state.Hv_hat_t
    dot = H2 * Hv2 + H3 * Hv3
    return state.E1_hat * (dot * (v2 * H3 - v3 * H2)
                           + (state.Hv_sq - state.E1_hat ** 2) * (v2 * Hv3 - v3 * Hv2))


def _degenerate_transitional_quantity(state: EquilibriumState,
                                      representative: WaveDirection) -> float:
    """Worst-case transitional sign quantity when every direction minimizes F.

    The closed form for G assumes an isolated minimizer pair and collapses to
    zero in the constant-F case.  There the square-root-of-eps growth branch
    opens at any direction omega' with E1 * w_perp(omega') * (v'.omega') > 0,
    so we report the maximum of that product over sampled directions plus the
    representative.
    """
    best = -math.inf
    dirs = [representative] + [
        WaveDirection.from_angle(2.0 * math.pi * k / _DEGENERATE_SAMPLES)
        for k in range(_DEGENERATE_SAMPLES)
    ]
    for d in dirs:
        bun = frequency_bundle(state, d)
        best = max(best, state.E1_hat * bun.w_perp * bun.v_dot)
    return best


def classify(state: EquilibriumState, tol_eq: float | None = None) -> Classification:
    """Classify an equilibrium by the closed-form criterion.

    margin = E1^2 - critical_e1_squared(state); the verdict is

      * ViolentlyUnstable   if margin >  tol_eq,
      * NeutrallyStable     if margin < -tol_eq,
      * TransitionalUnstable / TransitionalNeutral inside the band,
        decided by the sign of the transitional discriminant (in the
        degenerate constant-F case, by the worst sampled direction-wise
        sign quantity instead; see _degenerate_transitional_quantity).

    ``tol_eq`` defaults to ``default_tol_eq(state)``; pass 0 to resolve the
    strict inequality exactly (meaningful when the threshold is exact, e.g.
    collinear fields).
    """
    if tol_eq is None:
        tol_eq = default_tol_eq(state)
    crit = critical_e1_squared(state)
    margin = state.E1_hat ** 2 - crit
    mres = minimize_f(state)

    if margin > tol_eq:
        verdict, G = Verdict.VIOLENTLY_UNSTABLE, None
    elif margin < -tol_eq:
        verdict, G = Verdict.NEUTRALLY_STABLE, None
    else:
        if mres.degenerate:
            G = _degenerate_transitional_quantity(state, mres.omega_star)
        else:
            G = transitional_discriminant(state)
        verdict = (Verdict.TRANSITIONAL_UNSTABLE if G > 0.0
                   else Verdict.TRANSITIONAL_NEUTRAL)

    return Classification(
        verdict=verdict,
        critical_e1_sq=crit,
        margin=margin,
        minimizer=mres.omega_star,
        f_min=mres.f_min,
        transitional_G=G,
        degenerate=mres.degenerate,
        tol_eq=tol_eq,
    )
