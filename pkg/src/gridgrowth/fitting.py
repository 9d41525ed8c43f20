"""Fit shifted-exponential mixtures to empirical degree histograms.

Candidates are integer supports ``{k_1 < ... < k_c}`` drawn from a range.
For each support the weights live on the simplex and the loss is the
count-weighted squared error between the observed degree frequencies and
the model's mass on each integer bin, ``[d - 1/2, d + 1/2)`` by default.
Degrees of grown graphs follow a geometric law, which is the exponential
binned as ``[d, d + 1)``; ``binning="floor"`` uses those bins instead.

In ``"model"`` mode the exponential scale is tied to ``sum_i alpha_i k_i``,
as the growth model predicts; in ``"free"`` mode it is a separate
parameter. ``"meanfield"`` mode fits the discrete stationary law of the
growth model itself: geometric tails with ratio ``mu / (1 + mu)``, which
is the floor-binned exponential with scale ``1 / ln(1 + 1/mu)``. For a fixed scale the weights solve a tiny convex QP, done
exactly by enumerating active sets; the scale is found by a grid followed
by bounded Brent refinement.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .graph import DegreeHistogram
from .meanfield import BIN_EDGES, ExponentialMixture, cdf_at

__all__ = ["FitResult", "fit_mixture", "ks_distance", "fit_table", "noise_floor",
           "meanfield_scale"]

MIN_WEIGHT = 1e-9


@dataclass(frozen=True)
class FitResult:
    mixture: ExponentialMixture
    loss: float
    ks_stat: float
    support_searched: str
    mode: str = "model"
    best_loss: float = 0.0
    tie_margin: float = 0.0
    candidates: tuple = ()
    binning: str = "round"

    def to_text(self) -> str:
        m = self.mixture
        lines = [
            f"mode {self.mode}",
            f"binning {self.binning}",
            f"loss {self.loss!r}",
            f"best_loss {self.best_loss!r}",
            f"tie_margin {self.tie_margin!r}",
            f"ks_stat {self.ks_stat!r}",
            f"support_searched {self.support_searched}",
            f"scale {m.rate_scale!r}",
            f"mu_K {m.mu!r}",
            "components k alpha",
        ]
        lines += [f"{k} {a!r}" for k, a in zip(m.ks, m.alphas)]
        return "\n".join(lines) + "\n"


def ks_distance(hist: DegreeHistogram, mix: ExponentialMixture, binning: str = "round") -> float:
    """Largest gap between the empirical cdf and the mixture cdf over observed degrees.

    ``P(D <= d)`` is compared with ``mix.cdf(d + 1/2)`` (continuity
    correction) or, with ``binning="floor"``, ``mix.cdf(d + 1)``.
    """
    if hist.total == 0:
        raise ValueError("empty histogram")
    degrees = hist.degrees
    ecdf = np.cumsum(hist.counts) / hist.total
    model = cdf_at(mix, degrees + BIN_EDGES[binning][1])
    return float(np.max(np.abs(ecdf - model)))


def _component_masses(ks, scale, degrees, binning):
    """``(n_degrees, n_components)`` bin masses of unit-weight components."""
    lo_off, hi_off = BIN_EDGES[binning]
    d = degrees.astype(float)[:, None]
    k = np.asarray(ks, dtype=float)[None, :]
    hi = np.clip(d + hi_off - k, 0.0, None)
    lo = np.clip(d + lo_off - k, 0.0, None)
    return np.exp(-lo / scale) - np.exp(-hi / scale)


def _simplex_qp(masses, target, w, eq_rows, eq_rhs):
    """min sum w (masses @ a - target)^2  s.t.  eq_rows @ a = eq_rhs, a >= 0.

    Exact for a handful of variables: the optimum is the equality-constrained
    optimum on its own support, so every support is tried.
    """
    m = masses.shape[1]
    sw = np.sqrt(w)[:, None]
    X = masses * sw
    y = target * np.sqrt(w)
    H = X.T @ X
    g = X.T @ y
    best = (math.inf, None)
    for size in range(1, m + 1):
        for free in itertools.combinations(range(m), size):
            f = list(free)
            A = eq_rows[:, f]
            kkt = np.block([[H[np.ix_(f, f)], A.T], [A, np.zeros((len(eq_rhs), len(eq_rhs)))]])
            rhs = np.concatenate([g[f], eq_rhs])
            sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
            a_f = sol[:size]
            if np.any(a_f < -1e-12) or np.max(np.abs(A @ a_f - eq_rhs)) > 1e-9:
                continue
            a = np.zeros(m)
            a[f] = np.clip(a_f, 0.0, None)
            r = X @ a - y
            loss = float(r @ r)
            if loss < best[0]:
                best = (loss, a)
    return best


def meanfield_scale(mu):
    """Scale whose floor-binned exponential has geometric ratio ``mu / (1 + mu)``."""
    return 1.0 / math.log1p(1.0 / mu)


def _fit_support(ks, degrees, freq, mode, binning):
    """Best loss, weights and parameter for one support.

    The parameter is the scale, except in ``"meanfield"`` mode where it is
    ``mu`` (the scale follows from it).
    """
    ks = np.asarray(ks, dtype=float)
    w = freq
    ones = np.ones((1, len(ks)))

    def solve(param):
        scale = meanfield_scale(param) if mode == "meanfield" else param
        masses = _component_masses(ks, scale, degrees, binning)
        if mode in ("model", "meanfield"):
            rows = np.vstack([ones, ks[None, :]])
            rhs = np.array([1.0, param])
        else:
            rows, rhs = ones, np.array([1.0])
        return _simplex_qp(masses, freq, w, rows, rhs)

    if mode in ("model", "meanfield"):
        if len(ks) == 1:
            lo = hi = ks[0]
        else:
            lo, hi = ks[0], ks[-1]
    else:
        lo, hi = 0.05, max(50.0, 2 * float(degrees.max()))

    if lo == hi:
        loss, a = solve(lo)
        return loss, a, lo

    if mode in ("model", "meanfield"):
        grid = np.linspace(lo, hi, 41)
    else:
        grid = np.geomspace(lo, hi, 61)
    results = [solve(s) for s in grid]
    losses = np.array([r[0] for r in results])
    i = int(np.argmin(losses))
    a_bracket = grid[max(i - 1, 0)]
    b_bracket = grid[min(i + 1, len(grid) - 1)]
    best_loss, best_a, best_s = losses[i], results[i][1], grid[i]
    if b_bracket > a_bracket:
        opt = minimize_scalar(lambda s: solve(s)[0], bounds=(a_bracket, b_bracket),
                              method="bounded", options={"xatol": 1e-10})
        if opt.fun < best_loss:
            best_loss, best_a, best_s = float(opt.fun), solve(opt.x)[1], float(opt.x)
    return best_loss, best_a, best_s


def fit_mixture(hist: DegreeHistogram, max_components: int = 3, k_range=None, *,
                mode: str = "model", binning: str | None = None,
                tie_margin: float | None = None,
                workers: int | None = None) -> FitResult:
    """Best mixture over all supports of at most ``max_components`` values in ``k_range``.

    Parameters
    ----------
    hist : DegreeHistogram
        Needs at least 30 observations over at least two distinct degrees.
    max_components : int
        Largest support size tried, 1 to 4.
    k_range : (int, int), optional
        Inclusive range of shift values; defaults to ``(1, max observed degree)``.
    mode : {"model", "free", "meanfield"}
        Tie the exponential scale to ``mu_K``, fit it separately, or tie it
        to ``1 / ln(1 + 1/mu_K)`` (the discrete mean-field law; implies
        floor binning).
    binning : {"round", "floor"}, optional
        Which continuous interval an integer degree stands for:
        ``[d - 1/2, d + 1/2)`` or ``[d, d + 1)``. Also used for ``ks_stat``.
        Defaults to ``"floor"`` in meanfield mode, ``"round"`` otherwise.
    tie_margin : float, optional
        Candidates whose loss is within this absolute margin of the best
        are ties. Defaults to the sampling-noise floor
        ``sum_d p_d**2 (1 - p_d) / n``, the expected loss of the true law.
        Ties go to fewer components, then lower loss, then the
        lexicographically first support.
    """
    if mode not in ("model", "free", "meanfield"):
        raise ValueError("mode must be 'model', 'free' or 'meanfield'")
    if binning is None:
        binning = "floor" if mode == "meanfield" else "round"
    if mode == "meanfield" and binning != "floor":
        raise ValueError("meanfield mode works on floor bins")
    if binning not in BIN_EDGES:
        raise ValueError(f"binning must be one of {sorted(BIN_EDGES)}")
    if not 1 <= max_components <= 4:
        raise ValueError("max_components must be in [1, 4]")
    if hist.total < 30:
        raise ValueError(f"histogram has {hist.total} observations; need >= 30")
    if len(hist.bins) < 2:
        raise ValueError("insufficient support: histogram has a single degree value")
    max_deg = max(hist.bins)
    k_lo, k_hi = (1, max_deg) if k_range is None else (int(k_range[0]), int(k_range[1]))
    if not 1 <= k_lo <= k_hi <= max_deg:
        raise ValueError(f"k_range must lie within [1, {max_deg}]")

    degrees, freq = hist.pmf()
    supports = [s for c in range(1, max_components + 1)
                for s in itertools.combinations(range(k_lo, k_hi + 1), c)]

    def evaluate(support):
        loss, a, scale = _fit_support(support, degrees, freq, mode, binning)
        return support, loss, a, scale

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            evaluated = list(pool.map(evaluate, supports))
    else:
        evaluated = [evaluate(s) for s in supports]

    candidates = []
    for support, loss, a, scale in evaluated:
        if a is None or np.any(a < MIN_WEIGHT):
            # a vanishing weight reproduces a smaller support already listed
            continue
        candidates.append((loss, support, a, scale))
    if not candidates:
        raise ValueError("no admissible candidate support")
    if tie_margin is None:
        tie_margin = noise_floor(hist)
    best_loss = min(c[0] for c in candidates)
    near = [c for c in candidates if c[0] <= best_loss + tie_margin]
    loss, support, a, scale = min(near, key=lambda c: (len(c[1]), c[0], c[1]))

    a = a / a.sum()
    if mode == "meanfield":
        scale = meanfield_scale(scale)
    mix = ExponentialMixture(tuple(support), tuple(float(x) for x in a),
                             None if mode == "model" else float(scale))
    searched = f"k in [{k_lo}, {k_hi}], up to {max_components} components, {len(supports)} supports"
    table = tuple(sorted((c[1], c[0]) for c in candidates))
    return FitResult(mix, float(loss), ks_distance(hist, mix, binning), searched, mode,
                     float(best_loss), float(tie_margin), table, binning)


def noise_floor(hist: DegreeHistogram) -> float:
    """Expected loss of the generating law itself under multinomial sampling."""
    _, p = hist.pmf()
    return float(np.sum(p * p * (1.0 - p)) / hist.total)


def fit_table(hist: DegreeHistogram, mix: ExponentialMixture, binning: str = "round"):
    """Rows ``(degree, empirical pmf, fitted bin mass, fitted pdf)`` for plotting."""
    degrees = np.arange(0, max(hist.bins) + 1)
    emp = hist.dense_pmf(int(degrees[-1]))
    mass = mix.bin_mass(degrees, binning)
    return [(int(d), float(e), float(m), float(p))
            for d, e, m, p in zip(degrees, emp, mass, mix.pdf(degrees))]
