"""Mean-field degree laws of the growth model.

Two presentations of the same prediction live here:

* the stationary discrete fractions ``N(m, t) / t`` obtained from the
  degree-count recurrences (:func:`asymptotic_fraction`), a superposition
  of geometric sequences, one per value ``k_i`` of ``K``;
* their continuous analogue, a mixture of shifted exponentials with common
  scale ``mu_K`` (:class:`ExponentialMixture`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .growth import KDistribution

# integer degree d <-> continuous interval [d + lo, d + hi)
BIN_EDGES = {"round": (-0.5, 0.5), "floor": (0.0, 1.0)}

__all__ = [
    "ExponentialMixture", "pdf_at", "cdf_at", "asymptotic_fraction",
    "discrete_law", "mixture_mean_degree",
]


@dataclass(frozen=True)
class ExponentialMixture:
    """Mixture of exponentials shifted to start at ``k_i``.

    ``pdf(d) = sum_i alpha_i / s * exp(-(d - k_i) / s) * [d >= k_i]``

    where the scale ``s`` equals ``mu_K = sum_i alpha_i k_i`` unless an
    explicit ``scale`` is given (free-rate fits).
    """

    ks: tuple[int, ...]
    alphas: tuple[float, ...]
    scale: float | None = None

    def __post_init__(self):
        # reuse KDistribution's validation of the (k_i, alpha_i) law
        law = KDistribution(self.ks, self.alphas)
        object.__setattr__(self, "ks", law.support)
        object.__setattr__(self, "alphas", law.probs)
        if self.scale is not None:
            if not self.scale > 0:
                raise ValueError("scale must be > 0")
            object.__setattr__(self, "scale", float(self.scale))

    @classmethod
    def from_k_distribution(cls, k_dist: KDistribution) -> "ExponentialMixture":
        return cls(k_dist.support, k_dist.probs)

    @classmethod
    def singleton(cls, k: int, scale: float | None = None) -> "ExponentialMixture":
        return cls((k,), (1.0,), scale)

    @property
    def mu(self) -> float:
        """Mean number of links per birth, ``sum_i alpha_i k_i``."""
        return math.fsum(a * k for k, a in zip(self.ks, self.alphas))

    @property
    def rate_scale(self) -> float:
        """Scale of the exponential components."""
        return self.mu if self.scale is None else self.scale

    @property
    def is_model_faithful(self) -> bool:
        return self.scale is None

    def k_distribution(self) -> KDistribution:
        return KDistribution(self.ks, self.alphas)

    def shifted(self, offset: int) -> "ExponentialMixture":
        """Same weights and scale, every ``k_i`` moved by ``offset``."""
        return ExponentialMixture(tuple(k + offset for k in self.ks), self.alphas,
                                  self.rate_scale)

    def pdf(self, d):
        return pdf_at(self, d)

    def cdf(self, d):
        return cdf_at(self, d)

    def bin_mass(self, degrees, binning: str = "round"):
        """Probability mass of each integer degree.

        With ``binning="round"`` degree ``d`` collects the continuous mass on
        ``[d - 1/2, d + 1/2)``; with ``"floor"`` the mass on ``[d, d + 1)``.
        """
        lo, hi = BIN_EDGES[binning]
        d = np.asarray(degrees, dtype=float)
        return cdf_at(self, d + hi) - cdf_at(self, d + lo)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Continuous draws by inverse cdf of the chosen component."""
        comp = rng.choice(len(self.ks), size=size, p=np.asarray(self.alphas))
        u = rng.random(size)
        return np.asarray(self.ks, dtype=float)[comp] - self.rate_scale * np.log1p(-u)

    def sample_degrees(self, rng: np.random.Generator, size: int,
                       binning: str = "round") -> np.ndarray:
        """Integer degrees: continuous draws rounded half-up (or floored)."""
        lo, _ = BIN_EDGES[binning]
        return np.floor(self.sample(rng, size) - lo).astype(np.int64)

    def to_text(self) -> str:
        lines = ["# exponential mixture: k alpha", f"scale {self._scale_token()}"]
        lines += [f"{k} {a!r}" for k, a in zip(self.ks, self.alphas)]
        return "\n".join(lines) + "\n"

    def _scale_token(self):
        return "mu" if self.scale is None else repr(self.scale)

    @classmethod
    def from_text(cls, text: str) -> "ExponentialMixture":
        ks, alphas, scale = [], [], None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected two fields, got {raw!r}")
            if parts[0] == "scale":
                scale = None if parts[1] == "mu" else float(parts[1])
                continue
            try:
                ks.append(int(parts[0]))
                alphas.append(float(parts[1]))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return cls(tuple(ks), tuple(alphas), scale)


def pdf_at(mix: ExponentialMixture, d):
    """Mixture density at ``d`` (scalar or array); components switch on at ``d >= k_i``."""
    d = np.asarray(d, dtype=float)
    s = mix.rate_scale
    out = np.zeros_like(d)
    for k, a in zip(mix.ks, mix.alphas):
        on = d >= k
        out += np.where(on, a / s * np.exp(-np.where(on, d - k, 0.0) / s), 0.0)
    return out if out.ndim else float(out)


def cdf_at(mix: ExponentialMixture, d):
    """Mixture cdf at ``d``; components switch on at ``d > k_i``."""
    d = np.asarray(d, dtype=float)
    s = mix.rate_scale
    out = np.zeros_like(d)
    for k, a in zip(mix.ks, mix.alphas):
        on = d > k
        out += np.where(on, a * -np.expm1(-np.where(on, d - k, 0.0) / s), 0.0)
    return out if out.ndim else float(out)


def asymptotic_fraction(k_dist: KDistribution, m) -> float:
    """Stationary fraction of nodes with degree ``m``.

    Each value ``k_i`` seeds a geometric sequence starting at degree
    ``k_i`` with initial mass ``alpha_i / (1 + mu_K)`` and ratio
    ``mu_K / (1 + mu_K)``; the fraction is their sum. For constant ``K = k``
    this is ``(k / (1 + k))**(m - k) / (1 + k)``. Degrees below the smallest
    ``k_i`` get 0.
    """
    mu = k_dist.mean
    ratio = mu / (1.0 + mu)
    total = 0.0
    for k, a in zip(k_dist.support, k_dist.probs):
        if m >= k:
            total += ratio ** (m - k) * a / (1.0 + mu)
    return total


def discrete_law(k_dist: KDistribution, max_degree: int) -> np.ndarray:
    """``asymptotic_fraction`` for degrees ``0..max_degree`` as an array."""
    return np.array([asymptotic_fraction(k_dist, m) for m in range(max_degree + 1)])


def mixture_mean_degree(mix: ExponentialMixture) -> float:
    """Mean of the mixture law: ``scale + sum_i alpha_i k_i`` (``2 mu_K`` when tied)."""
    return mix.rate_scale + mix.mu
