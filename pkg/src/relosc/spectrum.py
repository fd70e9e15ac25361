"""Energy levels of the oscillator family in all three regimes.

Only the positive-frequency branch is exposed; negative-frequency modes enter
solely through complex conjugation of the mode functions.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DomainError, RegimeError
from .geometry import REGIME_ADS, REGIME_NRHO, ModelParams
from .serialization import fmt_float, json_dumps

__all__ = ["energy", "quantization_residual", "SpectrumTable"]


def energy(p: ModelParams, n: int) -> float:
    """Energy of level n.

    generic:  E_n = sqrt(mass**2 + omega_hat**2 (2k(n + 1/2) + n**2))
    anti-de Sitter (epsilon = 1): E_n = omega_hat (k + n), exactly linear in n
    epsilon = 0: E_n = sqrt(mass**2 + 2 mass omega (n + 1/2))
    """
    if n < 0:
        raise DomainError(f"level index must be nonnegative, got {n}")
    if p.regime == REGIME_NRHO:
        return math.sqrt(p.mass ** 2 + 2.0 * p.mass * p.omega * (n + 0.5))
    if p.regime == REGIME_ADS:
        # linearity in n is exact here, so dispatch to the linear law rather
        # than the general square root
        return p.omega_hat * (p.k + n)
    k = p.k
    return math.sqrt(p.mass ** 2 + p.omega_hat ** 2 * (2.0 * k * (n + 0.5) + n ** 2))


def quantization_residual(p: ModelParams, n: int) -> float:
    """E_n**2 - mass**2 (1 - 1/epsilon**2) - omega_hat**2 (k+n)**2.

    Vanishes identically; a consistency probe between the master quantization
    condition and the closed-form energy laws. Undefined at epsilon = 0.
    """
    if p.epsilon == 0.0:
        raise RegimeError("quantization residual is defined for epsilon > 0 only")
    e = energy(p, n)
    return e ** 2 - p.mass ** 2 * (1.0 - 1.0 / p.epsilon ** 2) - (p.omega_hat * (p.k + n)) ** 2


@dataclass(frozen=True)
class SpectrumTable:
    """Energies E_0..E_n_max for one parameter triple."""

    params: ModelParams
    n_max: int
    energies: tuple[float, ...]

    @classmethod
    def build(cls, p: ModelParams, n_max: int) -> "SpectrumTable":
        if n_max < 0:
            raise DomainError(f"n_max must be nonnegative, got {n_max}")
        return cls(params=p, n_max=n_max,
                   energies=tuple(energy(p, n) for n in range(n_max + 1)))

    def to_csv(self) -> str:
        lines = ["n,E_n"]
        lines += [f"{n},{fmt_float(e)}" for n, e in enumerate(self.energies)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json_dumps({
            "params": self.params.as_dict(),
            "n_max": self.n_max,
            "energies": list(self.energies),
        })

    @staticmethod
    def from_json(text: str) -> "SpectrumTable":
        obj = json.loads(text)
        p = ModelParams(mass=obj["params"]["mass"], omega=obj["params"]["omega"],
                        epsilon=obj["params"]["epsilon"])
        return SpectrumTable(params=p, n_max=obj["n_max"], energies=tuple(obj["energies"]))
