"""Normalized energy eigenfunctions, weighted scalar products and mode functions.

Every eigenfunction is stored canonically as envelope times an explicitly
expanded polynomial in the scaled coordinate u:

  epsilon > 0:  U_n(x) = (1 - u**2)**(k/2) * sum(c_i u**i),  u = omega_hat*x
  epsilon = 0:  U_n(x) = exp(-u**2/2)      * sum(c_i u**i),  u = sqrt(m*omega)*x

This makes derivatives (the envelope exponent just shifts), products and
quadrature exactness structural: with the substitution u = omega_hat*x every
scalar product of two basis members becomes a Gauss-Jacobi integral with
weight (1-u**2)**(k-1/2) times a polynomial, which the generated rules
integrate exactly. Orthonormality failures therefore indicate formula bugs,
not quadrature error.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError, UsageError
from .geometry import (CONFORMAL, NATURAL, ModelParams, frame_bounds, frame_grid,
                       require_interior)
from .numkernel import (QuadratureRule, default_quad_order, hermite_coefficients,
                        log_gamma, make_hermite_rule, make_jacobi_rule,
                        pochhammer_log, terminating_2f1_coeffs)
from .serialization import fmt_float, json_dumps
from .spectrum import energy

__all__ = [
    "BasisIndex",
    "EigenFunction",
    "build_eigenfunction",
    "scalar_product",
    "gram_matrix",
    "mode_function",
    "kg_mode_product",
    "completeness_probe",
    "tabulate",
    "tabulation_csv",
    "tabulation_json",
]

ENVELOPE_JACOBI = "jacobi"
ENVELOPE_GAUSS = "gauss"


@dataclass(frozen=True)
class BasisIndex:
    """Main quantum number n with its parity split n = 2*n_s + s."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"quantum number must be nonnegative, got {self.n}")

    @property
    def n_s(self) -> int:
        return self.n // 2

    @property
    def s(self) -> int:
        return self.n % 2


@dataclass(frozen=True)
class PolyForm:
    """Envelope times polynomial in the scaled coordinate u = scale * x."""

    kind: str  # ENVELOPE_JACOBI: (1-u**2)**exponent ; ENVELOPE_GAUSS: exp(-u**2/2)
    exponent: float
    scale: float
    coeffs: np.ndarray = field(repr=False)

    def _envelope(self, u):
        if self.kind == ENVELOPE_JACOBI:
            # exp(e*log1p(-u**2)) keeps precision for both tiny and near-horizon u
            return np.exp(self.exponent * np.log1p(-u * u))
        return np.exp(-0.5 * u * u)

    def value(self, x):
        u = self.scale * np.asarray(x, dtype=float)
        return self._envelope(u) * P.polyval(u, self.coeffs)

    def derivative(self) -> "PolyForm":
        """d/dx of the form; the result is again envelope times polynomial."""
        c = self.coeffs
        if self.kind == ENVELOPE_JACOBI:
            new = P.polysub(P.polymul((1.0, 0.0, -1.0), P.polyder(c)),
                            2.0 * self.exponent * P.polymulx(c))
            return PolyForm(self.kind, self.exponent - 1.0, self.scale, self.scale * new)
        new = P.polysub(P.polyder(c), P.polymulx(c))
        return PolyForm(self.kind, self.exponent, self.scale, self.scale * new)


@dataclass(frozen=True)
class EigenFunction:
    """One normalized energy eigenfunction, valid in both frames."""

    params: ModelParams
    index: BasisIndex
    form: PolyForm
    norm_factor: float

    @property
    def n(self) -> int:
        return self.index.n

    @property
    def envelope_exponent(self) -> float:
        return self.form.exponent

    @property
    def coeffs(self) -> np.ndarray:
        return self.form.coeffs

    @cached_property
    def _d1(self) -> PolyForm:
        return self.form.derivative()

    @cached_property
    def _d2(self) -> PolyForm:
        return self._d1.derivative()

    def __call__(self, x):
        return self.form.value(x)

    def _to_natural(self, frame: str, coord):
        require_interior(self.params, frame, coord)
        c = np.asarray(coord, dtype=float)
        if frame == NATURAL or self.params.epsilon == 0.0:
            return c, None
        w = self.params.omega_hat
        return np.sin(w * c) / w, c

    def eval(self, frame: str, coord):
        """Value at the coordinate of the requested frame."""
        x, _ = self._to_natural(frame, coord)
        out = self.form.value(x)
        return float(out) if np.ndim(coord) == 0 else out

    def eval_derivative(self, frame: str, coord):
        """First derivative with respect to the frame's own coordinate."""
        x, xhat = self._to_natural(frame, coord)
        dx = self._d1.value(x)
        if xhat is not None:
            dx = dx * np.cos(self.params.omega_hat * xhat)
        return float(dx) if np.ndim(coord) == 0 else dx

    def eval_second(self, frame: str, coord):
        """Second derivative with respect to the frame's own coordinate."""
        x, xhat = self._to_natural(frame, coord)
        d2 = self._d2.value(x)
        if xhat is not None:
            w = self.params.omega_hat
            cos = np.cos(w * xhat)
            d2 = d2 * cos * cos - w * np.sin(w * xhat) * self._d1.value(x)
        return float(d2) if np.ndim(coord) == 0 else d2


def build_eigenfunction(p: ModelParams, n: int) -> EigenFunction:
    """Construct the normalized level-n eigenfunction for the given model.

    The normalization is evaluated in log space (k can exceed 1e4 near the
    non-relativistic regime) and carries the phase (-1)**n_s that makes the
    leading polynomial coefficient positive, so the epsilon -> 0 limit lands
    on the standard Hermite functions without sign flips.
    """
    idx = BasisIndex(n)
    if p.epsilon == 0.0:
        mw = p.mass * p.omega
        ln_norm = 0.25 * math.log(mw / math.pi) - 0.5 * (log_gamma(n + 1.0) + n * math.log(2.0))
        norm = math.exp(ln_norm)
        coeffs = norm * hermite_coefficients(n)
        form = PolyForm(ENVELOPE_GAUSS, 0.5, math.sqrt(mw), coeffs)
        return EigenFunction(params=p, index=idx, form=form, norm_factor=norm)

    k, w = p.k, p.omega_hat
    n_s, s = idx.n_s, idx.s
    d = terminating_2f1_coeffs(-n_s, k + s + n_s, s + 0.5)
    ln_abs = ((s + 0.5) * math.log(w)
              - 0.5 * log_gamma(n_s + 1.0)
              + pochhammer_log(s + 0.5, n_s)
              + 0.5 * (math.log(k + n) + log_gamma(k + s + n_s)
                       - log_gamma(n_s + s + 0.5) - log_gamma(n_s + k + 0.5)))
    norm = (-1.0) ** n_s * math.exp(ln_abs)
    coeffs = np.zeros(n + 1)
    coeffs[s::2] = norm * math.exp(-s * math.log(w)) * d  # x**s = u**s / w**s
    form = PolyForm(ENVELOPE_JACOBI, 0.5 * k, w, coeffs)
    return EigenFunction(params=p, index=idx, form=form, norm_factor=norm)


def _basis_rule(p: ModelParams, max_degree: int, order: int | None = None):
    """Quadrature realizing int mu(x) dx with both basis envelopes folded in.

    Returns (rule, u_nodes, x_nodes, prefactor) such that
    int mu U_m U_n dx = prefactor * sum(w_i * p_m(u_i) * p_n(u_i)) exactly.
    """
    q = order if order is not None else default_quad_order(max_degree)
    if p.epsilon == 0.0:
        rule = make_hermite_rule(q)
        scale = math.sqrt(p.mass * p.omega)
        return rule, rule.nodes, rule.nodes / scale, 1.0 / scale
    rule = make_jacobi_rule(p.k - 0.5, q)
    w = p.omega_hat
    return rule, rule.nodes, rule.nodes / w, 1.0 / w


def _check_same_params(p: ModelParams, *fns):
    for f in fns:
        if isinstance(f, EigenFunction) and f.params != p:
            raise UsageError("scalar product operands built for different model parameters")


def scalar_product(p: ModelParams, f, g, order: int | None = None):
    """Weighted scalar product int_D mu(x) conj(f(x)) g(x) dx.

    Operands are eigenfunctions or callables of the natural coordinate. For
    two basis members the integral is exact up to round-off (their envelopes
    are folded into the quadrature weight); callables are sampled on the
    nodes, so at epsilon = 0 they must decay at least like the Gaussian
    ground state for the Hermite rule to apply.
    """
    _check_same_params(p, f, g)
    f_ef, g_ef = isinstance(f, EigenFunction), isinstance(g, EigenFunction)
    deg = (f.n if f_ef else 32) + (g.n if g_ef else 32)
    q = order if order is not None else default_quad_order(deg)

    if p.epsilon == 0.0:
        rule = make_hermite_rule(q)
        y = rule.nodes
        scale = math.sqrt(p.mass * p.omega)
        x = y / scale
        lift = np.exp(0.5 * y * y)  # restores a stripped Gaussian envelope
        fv = P.polyval(y, f.coeffs) if f_ef else np.asarray(f(x)) * lift
        gv = P.polyval(y, g.coeffs) if g_ef else np.asarray(g(x)) * lift
        return rule.integrate(np.conjugate(fv) * gv) / scale

    k, w = p.k, p.omega_hat
    # alpha counts the folded envelope halves: mu contributes -1/2, each basis
    # operand contributes k/2
    alpha = -0.5 + (0.5 * k if f_ef else 0.0) + (0.5 * k if g_ef else 0.0)
    rule = make_jacobi_rule(alpha, q)
    u = rule.nodes
    x = u / w
    fv = P.polyval(u, f.coeffs) if f_ef else np.asarray(f(x))
    gv = P.polyval(u, g.coeffs) if g_ef else np.asarray(g(x))
    return rule.integrate(np.conjugate(fv) * gv) / w


def gram_matrix(p: ModelParams, n_max: int, frame: str = NATURAL,
                order: int | None = None) -> np.ndarray:
    """Gram matrix G[m, n] = (U_m, U_n) for m, n <= n_max.

    The natural-frame route uses the exact envelope-folding quadrature; the
    conformal-frame route integrates the evaluated functions with a
    Gauss-Legendre rule in the conformal coordinate, giving an independent
    cross-check of the change of variables.
    """
    efs = [build_eigenfunction(p, n) for n in range(n_max + 1)]
    if frame == NATURAL or p.epsilon == 0.0:
        rule, u, _, pref = _basis_rule(p, n_max, order)
        vals = np.vstack([P.polyval(u, ef.coeffs) for ef in efs])
        return pref * (vals * rule.weights) @ vals.T
    if frame != CONFORMAL:
        raise UsageError(f"unknown frame {frame!r}")
    lo, hi = frame_bounds(p, CONFORMAL)
    q = order if order is not None else max(default_quad_order(n_max), 256)
    rule = make_jacobi_rule(0.0, q)
    xhat = 0.5 * (hi - lo) * rule.nodes
    jac = 0.5 * (hi - lo)
    vals = np.vstack([ef.eval(CONFORMAL, xhat) for ef in efs])
    return jac * (vals * rule.weights) @ vals.T


def mode_function(p: ModelParams, n: int, t: float, x, sign: int = +1) -> complex:
    """Klein-Gordon mode phi = exp(-i*sign*E_n*t) U_n(x) / sqrt(2 E_n).

    sign = +1 is the positive-frequency branch; sign = -1 its conjugate.
    """
    if sign not in (+1, -1):
        raise UsageError(f"sign must be +1 or -1, got {sign}")
    ef = build_eigenfunction(p, n)
    e = energy(p, n)
    phase = cmath.exp(-1j * sign * e * t)
    val = ef.eval(NATURAL, x)
    return phase * val / math.sqrt(2.0 * e)


def kg_mode_product(p: ModelParams, mode1: tuple[int, int], mode2: tuple[int, int],
                    t: float = 0.0) -> complex:
    """Relativistic scalar product i * int mu (phi1* d0 phi2 - (d0 phi1)* phi2) dx.

    Modes are (n, sign) pairs. Time derivatives are the exact phase factors,
    so this numerically reduces the relativistic product to the weighted one:
    positive-frequency modes come out with norm +1, negative with -1.
    """
    (n1, s1), (n2, s2) = mode1, mode2
    e1, e2 = energy(p, n1), energy(p, n2)
    f1, f2 = build_eigenfunction(p, n1), build_eigenfunction(p, n2)
    rule, u, _, pref = _basis_rule(p, max(n1, n2))
    v1 = P.polyval(u, f1.coeffs) * cmath.exp(-1j * s1 * e1 * t) / math.sqrt(2.0 * e1)
    v2 = P.polyval(u, f2.coeffs) * cmath.exp(-1j * s2 * e2 * t) / math.sqrt(2.0 * e2)
    d0_v2 = -1j * s2 * e2 * v2
    d0_v1 = -1j * s1 * e1 * v1
    integrand = 1j * (np.conjugate(v1) * d0_v2 - np.conjugate(d0_v1) * v2)
    return complex(pref * (rule.weights @ integrand))


def completeness_probe(p: ModelParams, n_trunc: int, test_fn: Callable,
                       grid: np.ndarray | None = None) -> float:
    """Sup-norm error of the rank-n_trunc projector applied to test_fn.

    Expansion coefficients use a quadrature sized to the truncation, so for
    admissible smooth functions the error decreases monotonically with
    n_trunc down to the round-off floor.
    """
    if n_trunc < 1:
        raise UsageError(f"truncation must be >= 1, got {n_trunc}")
    if grid is None:
        grid = frame_grid(p, NATURAL, 257, n_max=n_trunc)
    order = default_quad_order(n_trunc)
    recon = np.zeros_like(np.asarray(grid, dtype=float))
    for n in range(n_trunc):
        ef = build_eigenfunction(p, n)
        recon = recon + scalar_product(p, ef, test_fn, order=order) * ef.eval(NATURAL, grid)
    target = np.asarray(test_fn(np.asarray(grid, dtype=float)), dtype=float)
    return float(np.max(np.abs(recon - target)))


def tabulate(p: ModelParams, n_max: int, frame: str, num_points: int
             ) -> tuple[np.ndarray, np.ndarray]:
    """Grid tabulation of U_0..U_n_max in the requested frame.

    Returns (coords, values) with values[n, i] = U_n(coords[i]).
    """
    coords = frame_grid(p, frame, num_points, n_max=n_max)
    values = np.vstack([build_eigenfunction(p, n).eval(frame, coords)
                        for n in range(n_max + 1)])
    return coords, values


def tabulation_csv(p: ModelParams, n_max: int, frame: str, num_points: int) -> str:
    coords, values = tabulate(p, n_max, frame, num_points)
    header = "coord," + ",".join(f"U_{n}" for n in range(n_max + 1))
    lines = [header]
    for i, c in enumerate(coords):
        lines.append(",".join([fmt_float(c)] + [fmt_float(v) for v in values[:, i]]))
    return "\n".join(lines) + "\n"


def tabulation_json(p: ModelParams, n_max: int, frame: str, num_points: int) -> str:
    coords, values = tabulate(p, n_max, frame, num_points)
    lo, hi = coords[0], coords[-1]
    return json_dumps({
        "params": p.as_dict(),
        "frame": frame,
        "grid": {"kind": "chebyshev", "points": num_points,
                 "span": [float(lo), float(hi)]},
        "coord": [float(c) for c in coords],
        "values": {f"U_{n}": [float(v) for v in values[n]] for n in range(n_max + 1)},
    })
