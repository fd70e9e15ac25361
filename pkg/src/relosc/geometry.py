"""Metric family, horizon-bounded domains, weight function and frames.

A model is the triple (mass, omega, epsilon). For epsilon > 0 the natural
coordinate x lives between the event horizons at +-1/omega_hat with
omega_hat = epsilon*omega; the conformal coordinate xhat (in which the metric
is a conformal factor times the flat one and the scalar-product weight is 1)
lives between +-pi/(2*omega_hat). epsilon = 0 is the non-relativistic
harmonic-oscillator regime: the horizons recede to infinity and the two
frames coincide, so it is handled by exact closed forms, never as a small-
epsilon limit (the well parameter k blows up like 1/epsilon**2 there).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RegimeError, UsageError

__all__ = [
    "ModelParams",
    "REGIME_GENERIC",
    "REGIME_ADS",
    "REGIME_NRHO",
    "NATURAL",
    "CONFORMAL",
    "FRAMES",
    "frame_bounds",
    "require_interior",
    "metric_components",
    "weight_mu",
    "to_conformal",
    "from_conformal",
    "pt_potential",
    "chebyshev_grid",
    "gauss_halfwidth",
    "frame_grid",
]

REGIME_GENERIC = "generic"
REGIME_ADS = "anti_de_sitter"
REGIME_NRHO = "nrho_limit"

NATURAL = "natural"
CONFORMAL = "conformal"
FRAMES = (NATURAL, CONFORMAL)


@dataclass(frozen=True)
class ModelParams:
    """Physical triple (mass, omega, epsilon) in natural units (hbar = c = 1)."""

    mass: float
    omega: float
    epsilon: float

    def __post_init__(self):
        if not self.mass > 0.0:
            raise UsageError(f"mass must be positive, got {self.mass}")
        if not self.omega > 0.0:
            raise UsageError(f"omega must be positive, got {self.omega}")
        if self.epsilon < 0.0:
            raise UsageError(f"epsilon must be nonnegative, got {self.epsilon}")

    @property
    def omega_hat(self) -> float:
        return self.epsilon * self.omega

    @property
    def lam(self) -> float:
        """Deformation parameter of the metric family, lam = -epsilon**2."""
        return -self.epsilon ** 2

    @property
    def regime(self) -> str:
        if self.epsilon == 0.0:
            return REGIME_NRHO
        if self.epsilon == 1.0:
            return REGIME_ADS
        return REGIME_GENERIC

    @property
    def k(self) -> float:
        """Well parameter, the positive root of k(k-1) = mass**2/(epsilon*omega_hat)**2."""
        if self.epsilon == 0.0:
            raise RegimeError("k is undefined at epsilon = 0 (it diverges like 1/epsilon**2)")
        ratio = self.mass / (self.epsilon * self.omega_hat)
        return 0.5 * (1.0 + math.hypot(1.0, 2.0 * ratio))

    def as_dict(self) -> dict:
        d = {
            "mass": self.mass,
            "omega": self.omega,
            "epsilon": self.epsilon,
            "omega_hat": self.omega_hat,
            "lambda": self.lam,
            "regime": self.regime,
        }
        d["k"] = self.k if self.epsilon > 0.0 else None
        return d


def frame_bounds(p: ModelParams, frame: str) -> tuple[float, float]:
    """Open domain of the given frame: (-x_e, x_e), infinite at epsilon = 0."""
    if frame not in FRAMES:
        raise UsageError(f"unknown frame {frame!r}; expected one of {FRAMES}")
    if p.epsilon == 0.0:
        return (-math.inf, math.inf)
    edge = 1.0 / p.omega_hat if frame == NATURAL else 0.5 * math.pi / p.omega_hat
    return (-edge, edge)


def require_interior(p: ModelParams, frame: str, coord) -> None:
    """Raise DomainError unless every coordinate is strictly inside the frame domain."""
    lo, hi = frame_bounds(p, frame)
    c = np.asarray(coord, dtype=float)
    if not np.all((c > lo) & (c < hi)):
        raise DomainError(f"coordinate outside the open {frame} domain ({lo}, {hi})")


def metric_components(p: ModelParams, frame: str, coord):
    """Metric components (g00, g11) of the static line element in the given frame.

    Natural frame: g00 = [1 + (1+lam) w**2 x**2]/[1 + lam w**2 x**2] and
    g11 = -[1 + (1+lam) w**2 x**2]/[1 + lam w**2 x**2]**2 with w = omega and
    lam = -epsilon**2; at epsilon = 1 this is the (1+1) anti-de Sitter metric.
    Conformal frame: g00 = -g11 = 1 + tan(omega_hat*xhat)**2/epsilon**2
    (its epsilon -> 0 limit 1 + omega**2 xhat**2 at epsilon = 0).
    """
    require_interior(p, frame, coord)
    c = np.asarray(coord, dtype=float)
    scalar = c.ndim == 0
    if frame == NATURAL:
        if p.epsilon == 0.0:
            g00 = 1.0 + (p.omega * c) ** 2
            g11 = -g00
        else:
            denom = 1.0 - (p.omega_hat * c) ** 2
            num = 1.0 + (1.0 - p.epsilon ** 2) * (p.omega * c) ** 2
            g00 = num / denom
            g11 = -num / denom ** 2
    else:
        if p.epsilon == 0.0:
            g00 = 1.0 + (p.omega * c) ** 2
        else:
            g00 = 1.0 + (np.tan(p.omega_hat * c) / p.epsilon) ** 2
        g11 = -g00
    if scalar:
        return float(g00), float(g11)
    return g00, g11


def weight_mu(p: ModelParams, x):
    """Scalar-product weight mu = sqrt(-g) g^00 in the natural frame.

    Closed form 1/sqrt(1 - omega_hat**2 x**2) for epsilon > 0; identically 1
    at epsilon = 0.
    """
    require_interior(p, NATURAL, x)
    c = np.asarray(x, dtype=float)
    if p.epsilon == 0.0:
        out = np.ones_like(c)
    else:
        out = 1.0 / np.sqrt(1.0 - (p.omega_hat * c) ** 2)
    return float(out) if c.ndim == 0 else out


def to_conformal(p: ModelParams, x):
    """Natural -> conformal coordinate: xhat = arcsin(omega_hat*x)/omega_hat.

    The integration constant is fixed to 0 so the map is odd (x=0 <-> xhat=0).
    At epsilon = 0 the map is the identity.
    """
    require_interior(p, NATURAL, x)
    c = np.asarray(x, dtype=float)
    if p.epsilon == 0.0:
        out = c.copy()
    else:
        out = np.arcsin(p.omega_hat * c) / p.omega_hat
    return float(out) if c.ndim == 0 else out


def from_conformal(p: ModelParams, xhat):
    """Conformal -> natural coordinate: x = sin(omega_hat*xhat)/omega_hat."""
    require_interior(p, CONFORMAL, xhat)
    c = np.asarray(xhat, dtype=float)
    if p.epsilon == 0.0:
        out = c.copy()
    else:
        out = np.sin(p.omega_hat * c) / p.omega_hat
    return float(out) if c.ndim == 0 else out


def pt_potential(p: ModelParams, xhat):
    """Symmetric Poeschl-Teller well k(k-1) omega_hat**2 tan(omega_hat*xhat)**2.

    Equals (mass/epsilon)**2 tan(omega_hat*xhat)**2 because k(k-1) carries the
    whole mass dependence.
    """
    if p.epsilon == 0.0:
        raise RegimeError("no Poeschl-Teller well at epsilon = 0; the trap is harmonic there")
    require_interior(p, CONFORMAL, xhat)
    c = np.asarray(xhat, dtype=float)
    k = p.k
    out = k * (k - 1.0) * p.omega_hat ** 2 * np.tan(p.omega_hat * c) ** 2
    return float(out) if c.ndim == 0 else out


def chebyshev_grid(lo: float, hi: float, num: int) -> np.ndarray:
    """Chebyshev (first-kind) points scaled into the open interval (lo, hi).

    All nodes are strictly interior, sorted ascending; an odd count includes
    the midpoint exactly.
    """
    if num < 1:
        raise UsageError(f"grid needs at least one point, got {num}")
    i = np.arange(num)
    u = np.sin(0.5 * math.pi * (2.0 * i + 1.0 - num) / num)  # ascending in (-1, 1)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * u


def gauss_halfwidth(p: ModelParams, n_max: int) -> float:
    """Half-width covering the classically allowed region plus Gaussian decay
    for oscillator states up to n_max (epsilon = 0 tabulation domain)."""
    return (math.sqrt(2.0 * n_max + 1.0) + 4.0) / math.sqrt(p.mass * p.omega)


def frame_grid(p: ModelParams, frame: str, num: int, n_max: int = 32) -> np.ndarray:
    """Default interior evaluation grid for the given frame.

    For epsilon > 0 the Chebyshev points of the frame's horizon-bounded
    domain; at epsilon = 0 a symmetric window wide enough for states up to
    n_max.
    """
    lo, hi = frame_bounds(p, frame)
    if not math.isfinite(hi):
        hi = gauss_halfwidth(p, n_max)
        lo = -hi
    return chebyshev_grid(lo, hi, num)
