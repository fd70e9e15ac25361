"""Special-function and quadrature primitives.

Pure numerics with no knowledge of the oscillator family. All Gamma and
Pochhammer arithmetic is done in log space: the well parameter k grows like
1/epsilon**2 in the weak-coupling limit, so direct Gamma factors would
overflow long before the physics becomes uninteresting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, StepUnderflowError

__all__ = [
    "QuadratureRule",
    "log_gamma",
    "pochhammer_log",
    "terminating_2f1_coeffs",
    "hermite_poly",
    "hermite_coefficients",
    "make_jacobi_rule",
    "make_hermite_rule",
    "finite_diff_derivative",
]

GAUSS_JACOBI = "gauss-jacobi"
GAUSS_LEGENDRE = "gauss-legendre"
GAUSS_HERMITE = "gauss-hermite"


def log_gamma(z: float) -> float:
    """Natural log of the Gamma function for z > 0.

    Thin validating wrapper over ``math.lgamma`` (relative error well below
    1e-13 on the positive axis); kept as the single entry point so every
    Gamma evaluation in the package shares one domain policy.
    """
    if z <= 0.0:
        raise DomainError(f"log_gamma requires z > 0, got {z}")
    return math.lgamma(z)


def pochhammer_log(z: float, n: int) -> float:
    """ln of the rising factorial (z)_n = z (z+1) ... (z+n-1), for z > 0.

    (z)_0 = 1 by the empty-product convention.
    """
    if n < 0:
        raise DomainError(f"pochhammer_log requires n >= 0, got {n}")
    if z <= 0.0:
        raise DomainError(f"pochhammer_log requires z > 0, got {z}")
    if n == 0:
        return 0.0
    return log_gamma(z + n) - log_gamma(z)


def terminating_2f1_coeffs(a_neg: int, b: float, c: float) -> np.ndarray:
    """Coefficients of the terminating Gauss series F(a_neg, b; c; t).

    With a_neg = -n a nonpositive integer the series is a degree-n polynomial
    sum(d_j t**j) with d_j = (-n)_j (b)_j / ((c)_j j!). Coefficients are built
    by forward recurrence on the term ratio, which avoids the cancellation a
    quotient of large Pochhammer symbols would incur.
    """
    if a_neg > 0 or a_neg != int(a_neg):
        raise DomainError(f"first parameter must be a nonpositive integer, got {a_neg}")
    if c <= 0.0:
        raise DomainError(f"terminating_2f1_coeffs requires c > 0, got {c}")
    n = -int(a_neg)
    d = np.empty(n + 1)
    d[0] = 1.0
    for j in range(n):
        d[j + 1] = d[j] * (a_neg + j) * (b + j) / ((c + j) * (j + 1))
    return d


def hermite_poly(n: int, y):
    """Physicists' Hermite polynomial H_n(y) by the three-term recurrence.

    Accepts scalars or arrays.
    """
    if n < 0:
        raise DomainError(f"hermite_poly requires n >= 0, got {n}")
    y = np.asarray(y, dtype=float)
    h_prev = np.ones_like(y)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * y
    for m in range(1, n):
        h, h_prev = 2.0 * y * h - 2.0 * m * h_prev, h
    return h if h.ndim else float(h)


def hermite_coefficients(n: int) -> np.ndarray:
    """Monomial coefficients of H_n, lowest power first."""
    if n < 0:
        raise DomainError(f"hermite_coefficients requires n >= 0, got {n}")
    if n == 0:
        return np.array([1.0])
    prev = np.array([1.0])
    cur = np.array([0.0, 2.0])
    for m in range(1, n):
        nxt = np.zeros(m + 2)
        nxt[1:] = 2.0 * cur
        nxt[: m] -= 2.0 * m * prev
        prev, cur = cur, nxt
    return cur


@dataclass(frozen=True)
class QuadratureRule:
    """Gaussian rule: nodes strictly inside the domain, weights all positive.

    For the Jacobi kind the weight is (1-u**2)**jacobi_exponent on (-1, 1);
    for the Hermite kind it is exp(-u**2) on the real line.
    """

    kind: str
    order: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    jacobi_exponent: float | None = None

    def integrate(self, f):
        """Apply the rule to a callable or to values sampled on the nodes."""
        values = f(self.nodes) if callable(f) else np.asarray(f)
        total = self.weights @ values
        return complex(total) if np.iscomplexobj(values) else float(total)


def _golub_welsch(offdiag: np.ndarray, moment0: float) -> tuple[np.ndarray, np.ndarray]:
    # Eigen decomposition of the symmetric tridiagonal recurrence matrix;
    # weights come from the squared first eigenvector components.
    order = offdiag.size + 1
    jac = np.zeros((order, order))
    idx = np.arange(order - 1)
    jac[idx, idx + 1] = offdiag
    jac[idx + 1, idx] = offdiag
    vals, vecs = np.linalg.eigh(jac)
    weights = moment0 * vecs[0] ** 2
    # symmetric weight => nodes/weights symmetric about 0; enforce exactly
    nodes = 0.5 * (vals - vals[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return nodes, weights


def make_jacobi_rule(alpha: float, order: int) -> QuadratureRule:
    """Gauss-Jacobi rule on (-1, 1) for the symmetric weight (1-u**2)**alpha.

    Parameters
    ----------
    alpha : float
        Common weight exponent, alpha > -1. alpha = 0 yields Gauss-Legendre.
    order : int
        Number of nodes; polynomials up to degree 2*order-1 are integrated
        exactly against the weight.
    """
    if alpha <= -1.0:
        raise DomainError(f"make_jacobi_rule requires alpha > -1, got {alpha}")
    if order < 1:
        raise DomainError(f"make_jacobi_rule requires order >= 1, got {order}")
    n = np.arange(1, order, dtype=float)
    # squared recurrence coefficients of the orthonormal symmetric-Jacobi basis
    bsq = n * (n + 2.0 * alpha) / ((2.0 * n + 2.0 * alpha + 1.0) * (2.0 * n + 2.0 * alpha - 1.0))
    moment0 = math.exp(0.5 * math.log(math.pi) + log_gamma(alpha + 1.0) - log_gamma(alpha + 1.5))
    nodes, weights = _golub_welsch(np.sqrt(bsq), moment0)
    kind = GAUSS_LEGENDRE if alpha == 0.0 else GAUSS_JACOBI
    return QuadratureRule(kind=kind, order=order, nodes=nodes, weights=weights,
                          jacobi_exponent=alpha)


def make_hermite_rule(order: int) -> QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-u**2) on the real line."""
    if order < 1:
        raise DomainError(f"make_hermite_rule requires order >= 1, got {order}")
    n = np.arange(1, order, dtype=float)
    nodes, weights = _golub_welsch(np.sqrt(n / 2.0), math.sqrt(math.pi))
    return QuadratureRule(kind=GAUSS_HERMITE, order=order, nodes=nodes, weights=weights)


def default_quad_order(max_degree: int) -> int:
    """Default node count for integrands of polynomial degree <= 2*max_degree."""
    return 2 * max_degree + 32


def finite_diff_derivative(f: Callable[[float], float], x: float, h: float) -> float:
    """Richardson-extrapolated central difference; test oracle only.

    Uses the three central differences at steps h, 2h and 4h, so f must be
    evaluable on [x - 4h, x + 4h]. Never used in production paths.
    """
    if h <= 0.0 or x + h == x:
        raise StepUnderflowError(f"step {h} underflows at x={x}")

    def central(step: float) -> float:
        return (f(x + step) - f(x - step)) / (2.0 * step)

    d1, d2, d4 = central(h), central(2.0 * h), central(4.0 * h)
    r12 = (4.0 * d1 - d2) / 3.0
    r24 = (4.0 * d2 - d4) / 3.0
    return (16.0 * r12 - r24) / 15.0
