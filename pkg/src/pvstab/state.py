"""Equilibrium states of a planar plasma-vacuum interface and frame utilities.

The interface x1 = sigma*t separates an incompressible, perfectly conducting
plasma (x1 > 0) from a vacuum region carrying electromagnetic fields
(x1 < 0).  A constant equilibrium is described by seven free tangential
parameters plus the small parameter ``eps`` (flow speed over speed of light)
and the interface speed ``sigma``:

    plasma velocity        v = (sigma, v2, v3)
    plasma magnetic field  H = (0, H2, H3)
    vacuum magnetic field  Hv = (0, Hv2, Hv3)
    vacuum electric field  Ev = (E1, eps*sigma*Hv3, -eps*sigma*Hv2)

All quantities are dimensionless.  A moving interface (sigma != 0) is
reduced to the rest frame by the Joules-Bernoulli change of vacuum unknowns
(`galilean_transform`), whose inverse is the symmetric matrix `b0_matrix`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DirectionError, SingularFrameError, StateValidationError

# Above this value the O(eps^2) terms dropped by the asymptotic analysis
# reach the percent scale; results are still computed, with a warning.
EPS_WARN_THRESHOLD = 0.2


@dataclass(frozen=True)
class EquilibriumState:
    """Constant solution parameters (tangential components only).

    ``v_hat_t``, ``H_hat_t`` and ``Hv_hat_t`` are the (x2, x3) components of
    the plasma velocity, plasma magnetic field and vacuum magnetic field;
    the normal magnetic components vanish identically.  ``E1_hat`` is the
    normal vacuum electric field, the quantity that decides stability.
    """

    v_hat_t: tuple[float, float] = (0.0, 0.0)
    H_hat_t: tuple[float, float] = (0.0, 0.0)
    Hv_hat_t: tuple[float, float] = (0.0, 0.0)
    E1_hat: float = 0.0
    eps: float = 1e-2
    sigma: float = 0.0

    # -- full 3-vector reconstructions -------------------------------------

    @property
    def v_hat(self) -> np.ndarray:
        return np.array([self.sigma, self.v_hat_t[0], self.v_hat_t[1]])

    @property
    def H_hat(self) -> np.ndarray:
        return np.array([0.0, self.H_hat_t[0], self.H_hat_t[1]])

    @property
    def Hv_hat(self) -> np.ndarray:
        return np.array([0.0, self.Hv_hat_t[0], self.Hv_hat_t[1]])

    @property
    def E_hat(self) -> np.ndarray:
        es = self.eps * self.sigma
        return np.array([self.E1_hat, es * self.Hv_hat_t[1], -es * self.Hv_hat_t[0]])

    # -- derived scalars ----------------------------------------------------

    @property
    def H_sq(self) -> float:
        """|H|^2 (equals |H'|^2: the normal component is zero)."""
        return self.H_hat_t[0] ** 2 + self.H_hat_t[1] ** 2

    @property
    def Hv_sq(self) -> float:
        """|Hv|^2 (equals |Hv'|^2)."""
        return self.Hv_hat_t[0] ** 2 + self.Hv_hat_t[1] ** 2

    @property
    def v_sq(self) -> float:
        """|v'|^2, tangential part only."""
        return self.v_hat_t[0] ** 2 + self.v_hat_t[1] ** 2

    @property
    def cross_H_Hv(self) -> float:
        """First (and only nonzero) component of H x Hv."""
        return (self.H_hat_t[0] * self.Hv_hat_t[1]
                - self.H_hat_t[1] * self.Hv_hat_t[0])

    @property
    def satisfies_physical_restriction(self) -> bool:
        """|Hv|^2 >= E1^2, required for a nonnegative equilibrium pressure."""
        return self.Hv_sq >= self.E1_hat ** 2

    # -- serialization (flat key-value record, CLI scenario format) ---------

    RECORD_KEYS = ("v2", "v3", "H2", "H3", "Hv2", "Hv3", "E1", "eps", "sigma")

    def to_record(self) -> dict[str, str]:
        vals = (*self.v_hat_t, *self.H_hat_t, *self.Hv_hat_t,
                self.E1_hat, self.eps, self.sigma)
        return {k: repr(float(v)) for k, v in zip(self.RECORD_KEYS, vals)}

    @classmethod
    def from_record(cls, record: dict) -> "EquilibriumState":
        g = lambda k, d=0.0: float(record.get(k, d))
        return cls(
            v_hat_t=(g("v2"), g("v3")),
            H_hat_t=(g("H2"), g("H3")),
            Hv_hat_t=(g("Hv2"), g("Hv3")),
            E1_hat=g("E1"),
            eps=g("eps", 1e-2),
            sigma=g("sigma"),
        )


@dataclass(frozen=True)
class WaveDirection:
    """Tangential wave vector omega' = (omega2, omega3), the Fourier variable.

    The spectral analysis is scaled to |omega'| = 1; `unit()` produces the
    normalized representative.  omega' = 0 is rejected: no one-dimensional
    ill-posedness mechanism exists.
    """

    omega2: float
    omega3: float

    def __post_init__(self):
        if not (math.isfinite(self.omega2) and math.isfinite(self.omega3)):
            raise DirectionError("wave direction components must be finite")
        if self.omega2 == 0.0 and self.omega3 == 0.0:
            raise DirectionError("wave direction omega' must be nonzero")

    @property
    def norm(self) -> float:
        return math.hypot(self.omega2, self.omega3)

    @property
    def is_unit(self) -> bool:
        return abs(self.norm - 1.0) <= 1e-12

    def unit(self) -> "WaveDirection":
        r = self.norm
        return WaveDirection(self.omega2 / r, self.omega3 / r)

    @classmethod
    def from_angle(cls, theta: float) -> "WaveDirection":
        return cls(math.cos(theta), math.sin(theta))

    @property
    def as_array(self) -> np.ndarray:
        return np.array([self.omega2, self.omega3])


@dataclass(frozen=True)
class FrequencyBundle:
    """Scalar field projections onto a unit wave direction.

    w_plus  = H'  . omega'
    w_minus = Hv' . omega'
    w_perp  = Hv3*omega2 - Hv2*omega3    (orthogonal vacuum projection)
    v_dot   = v'  . omega'

    For unit omega': w_minus^2 + w_perp^2 = |Hv'|^2.
    """

    w_plus: float
    w_minus: float
    w_perp: float
    v_dot: float


def validate_state(raw: EquilibriumState) -> tuple[EquilibriumState, list[str]]:
    """Check admissibility of an equilibrium; return it with warnings.

    Hard errors (raised): non-finite entries, eps <= 0, eps*|sigma| >= 1.
    Soft conditions (warnings): the physical restriction |Hv|^2 >= E1^2 is
    violated or met with equality (either way the state is ill-posed, which
    the analysis itself will report), and eps above the asymptotic ceiling.
    """
    vals = (*raw.v_hat_t, *raw.H_hat_t, *raw.Hv_hat_t,
            raw.E1_hat, raw.eps, raw.sigma)
    if not all(math.isfinite(v) for v in vals):
        raise StateValidationError("non-finite equilibrium parameter")
    if raw.eps <= 0.0:
        raise StateValidationError(f"eps must be positive, got {raw.eps}")
    if raw.eps >= 1.0:
        raise StateValidationError(f"eps must be below 1, got {raw.eps}")
    if raw.eps * abs(raw.sigma) >= 1.0:
        raise StateValidationError(
            f"relativistic interface speed: eps*|sigma| = {raw.eps * abs(raw.sigma)} >= 1")

    warnings = []
    e1sq, hvsq = raw.E1_hat ** 2, raw.Hv_sq
    if e1sq > hvsq:
        warnings.append("physical restriction violated: E1^2 > |Hv|^2 "
                        "(equilibrium pressure would be negative)")
    elif e1sq == hvsq:
        warnings.append("physical restriction met with equality: E1^2 = |Hv|^2")
    if raw.eps >= EPS_WARN_THRESHOLD:
        warnings.append(f"eps = {raw.eps} is outside the small-eps regime "
                        f"(>= {EPS_WARN_THRESHOLD}); classification may not "
                        "match finite-eps numerics")
    return raw, warnings


def frequency_bundle(state: EquilibriumState, direction: WaveDirection) -> FrequencyBundle:
    """Project the equilibrium fields onto a unit wave direction."""
    w2, w3 = direction.omega2, direction.omega3
    H2, H3 = state.H_hat_t
    Hv2, Hv3 = state.Hv_hat_t
    v2, v3 = state.v_hat_t
    return FrequencyBundle(
        w_plus=H2 * w2 + H3 * w3,
        w_minus=Hv2 * w2 + Hv3 * w3,
        w_perp=Hv3 * w2 - Hv2 * w3,
        v_dot=v2 * w2 + v3 * w3,
    )


def b0_matrix(eps: float, sigma: float) -> np.ndarray:
    """Symmetric 6x6 matrix mapping transformed vacuum unknowns back: V = B0 @ Vt.

    Identity at eps*sigma = 0; positive definite for eps*|sigma| < 1.
    Row/column order is (Hv1, Hv2, Hv3, E1, E2, E3).
    """
    es = eps * sigma
    if abs(es) >= 1.0:
        raise SingularFrameError(f"frame change singular: eps*|sigma| = {abs(es)} >= 1")
    d = 1.0 - es * es
    b = np.eye(6)
    b[1, 1] = b[2, 2] = b[4, 4] = b[5, 5] = 1.0 / d
    b[1, 5] = b[5, 1] = -es / d
    b[2, 4] = b[4, 2] = es / d
    return b


def galilean_transform(V, eps: float, sigma: float) -> np.ndarray:
    """Joules-Bernoulli change of vacuum unknowns (Hv, E) -> (Hvt, Et).

    Hvt = (Hv1, Hv2 + es*E3,  Hv3 - es*E2)
    Et  = (E1,  E2  - es*Hv3, E3  + es*Hv2)        with es = eps*sigma.

    Removes the interface speed from the boundary conditions;
    ``b0_matrix(eps, sigma) @ galilean_transform(V, eps, sigma) == V``.
    """
    V = np.asarray(V, dtype=float)
    if V.shape != (6,):
        raise ValueError(f"expected a 6-vector (Hv, E), got shape {V.shape}")
    es = eps * sigma
    Hv, E = V[:3], V[3:]
    return np.array([
        Hv[0], Hv[1] + es * E[2], Hv[2] - es * E[1],
        E[0], E[1] - es * Hv[2], E[2] + es * Hv[1],
    ])
