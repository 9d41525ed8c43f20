"""Discrete-time SIS / SIR contagion on a graph, averaged over trials.

One step of either model, from the states at the end of the previous step:

1. a susceptible node with ``j`` infected neighbours becomes infected with
   probability ``1 - (1 - beta)**j`` (independent per neighbour);
2. every node that was infected at the previous step recovers (SIS, back
   to S, probability ``delta``) or is removed (SIR, probability ``gamma``).

Newly infected nodes start transmitting and recovering at the next step.

Trials run vectorised in fixed-size chunks. Chunk ``c`` draws from the
``c``-th child of ``SeedSequence(rng_seed)``, so the aggregate depends on
the seed alone, not on how many workers evaluate the chunks.

SIR randomness is drawn per trial up front, indexed by *infection age*
rather than wall-clock step: each directed edge ``u -> v`` gets one
uniform that fixes the age of ``u`` at which it would first transmit to
``v``, and each node gets one uniform fixing its infectious period. Both
are inverse-cdf geometric draws, so raising ``beta`` with the seed held
fixed can only make transmissions happen earlier, and the ever-infected
set grows monotonically.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

__all__ = ["EpidemicConfig", "EpidemicTrace", "TraceComparison", "simulate",
           "compare_traces", "run_trials"]

CHUNK_TRIALS = 256

S, I, R = 0, 1, 2


@dataclass(frozen=True)
class EpidemicConfig:
    """Parameters of a Monte Carlo contagion run.

    ``initial_infected`` is either an explicit collection of node ids or a
    count of nodes drawn uniformly per trial. ``None`` means 1% of the
    nodes (at least one).
    """

    model: str = "sis"
    beta: float = 0.3
    delta: float | None = None
    gamma: float | None = None
    initial_infected: object = None
    steps: int = 100
    trials: int = 1000
    rng_seed: int = 0

    def __post_init__(self):
        model = self.model.lower()
        object.__setattr__(self, "model", model)
        if model not in ("sis", "sir"):
            raise ValueError(f"unknown model {self.model!r}; use 'sis' or 'sir'")
        used, unused = ("delta", "gamma") if model == "sis" else ("gamma", "delta")
        if getattr(self, used) is None:
            raise ValueError(f"{model.upper()} needs {used}")
        if getattr(self, unused) is not None:
            raise ValueError(f"{model.upper()} does not use {unused}")
        for name in ("beta", used):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {val}")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    @property
    def recovery(self) -> float:
        return self.delta if self.model == "sis" else self.gamma


@dataclass(frozen=True)
class EpidemicTrace:
    """Per-step compartment means over trials; index 0 is the initial state.

    ``infected_std`` is the sample standard deviation across trials.
    """

    n_nodes: int
    susceptible: np.ndarray
    infected: np.ndarray
    removed: np.ndarray
    infected_std: np.ndarray
    trials: int
    model: str = "sis"

    @property
    def steps(self) -> int:
        return len(self.infected) - 1

    @property
    def infected_fraction(self) -> np.ndarray:
        return self.infected / self.n_nodes

    @property
    def infected_sem(self) -> np.ndarray:
        return self.infected_std / math.sqrt(self.trials)


@dataclass(frozen=True)
class TraceComparison:
    per_step: np.ndarray = field(repr=False)
    max_gap: float = 0.0
    mean_gap: float = 0.0


def _initial_sets(cfg: EpidemicConfig, n: int):
    """Fixed node array, or the number of nodes to draw per trial."""
    init = cfg.initial_infected
    if init is None:
        return None, max(1, int(round(0.01 * n)))
    if isinstance(init, (int, np.integer)):
        if not 0 <= init <= n:
            raise ValueError(f"cannot infect {init} of {n} nodes")
        return None, int(init)
    nodes = np.unique(np.asarray(list(init), dtype=np.int64))
    if nodes.size and (nodes.min() < 0 or nodes.max() >= n):
        raise ValueError("initial infected node outside graph")
    return nodes, len(nodes)


def _seed_states(rng, n, t, fixed, count):
    state = np.zeros((t, n), dtype=np.int8)
    if fixed is not None:
        state[:, fixed] = I
    elif count:
        keys = rng.random((t, n))
        picks = np.argpartition(keys, count - 1, axis=1)[:, :count]
        np.put_along_axis(state, picks, I, axis=1)
    return state


def _geometric_age(u, p):
    """Smallest age ``a >= 1`` with success probability ``p`` per age, by inverse cdf."""
    if p >= 1.0:
        return np.ones_like(u)
    if p <= 0.0:
        return np.full_like(u, np.inf)
    return np.maximum(1.0, np.ceil(np.log1p(-u) / math.log1p(-p)))


def _sis_chunk(g: Graph, cfg: EpidemicConfig, rng, t, fixed, count):
    n = g.n_nodes
    adj = g.adjacency
    state = _seed_states(rng, n, t, fixed, count)
    out = np.zeros((cfg.steps + 1, t), dtype=np.int64)
    out[0] = (state == I).sum(axis=1)
    log_escape = math.log1p(-cfg.beta) if cfg.beta < 1.0 else -np.inf
    for step in range(1, cfg.steps + 1):
        infected = state == I
        pressure = (adj @ infected.T.astype(np.float64)).T
        u_inf = rng.random((t, n))
        u_rec = rng.random((t, n))
        with np.errstate(invalid="ignore"):
            p_inf = -np.expm1(pressure * log_escape)
        p_inf = np.where(pressure > 0, p_inf, 0.0)
        catch = (~infected) & (u_inf < p_inf)
        heal = infected & (u_rec < cfg.delta)
        state[catch] = I
        state[heal] = S
        out[step] = (state == I).sum(axis=1)
    return out, None


def _sir_chunk(g: Graph, cfg: EpidemicConfig, rng, t, fixed, count, record_ever=False):
    n = g.n_nodes
    state = _seed_states(rng, n, t, fixed, count)
    src = np.repeat(np.arange(n), g.degrees)
    dst = g.indices
    # ages at which each directed edge would transmit / each node is removed
    first_tx = _geometric_age(rng.random((t, len(dst))), cfg.beta)
    period = _geometric_age(rng.random((t, n)), cfg.gamma)
    infected_at = np.where(state == I, 0.0, np.inf)
    i_count = np.zeros((cfg.steps + 1, t), dtype=np.int64)
    r_count = np.zeros((cfg.steps + 1, t), dtype=np.int64)
    i_count[0] = (state == I).sum(axis=1)
    for step in range(1, cfg.steps + 1):
        infected = state == I
        age = step - infected_at  # age reached during this step's transition
        fires = infected[:, src] & (first_tx == age[:, src])
        hit = np.zeros((t, n), dtype=bool)
        tr, te = np.nonzero(fires)
        hit[tr, dst[te]] = True
        catch = hit & (state == S)
        removed_now = infected & (period == age)
        state[catch] = I
        infected_at[catch] = step
        state[removed_now] = R
        i_count[step] = (state == I).sum(axis=1)
        r_count[step] = (state == R).sum(axis=1)
    ever = (state != S) if record_ever else None
    return (i_count, r_count), ever


def run_trials(g: Graph, cfg: EpidemicConfig, *, workers: int | None = None,
               record_ever: bool = False):
    """Raw per-trial counts.

    Returns ``(infected, removed, ever)`` where ``infected`` and ``removed``
    have shape ``(steps + 1, trials)`` (``removed`` is ``None`` for SIS) and
    ``ever`` is the ``(trials, n)`` boolean ever-infected matrix at the
    horizon when requested (SIR only).
    """
    n = g.n_nodes
    if n == 0:
        raise ValueError("graph has no nodes")
    fixed, count = _initial_sets(cfg, n)
    n_chunks = -(-cfg.trials // CHUNK_TRIALS)
    seeds = np.random.SeedSequence(int(cfg.rng_seed)).spawn(n_chunks)
    sizes = [min(CHUNK_TRIALS, cfg.trials - c * CHUNK_TRIALS) for c in range(n_chunks)]

    def one(c):
        rng = np.random.default_rng(seeds[c])
        if cfg.model == "sis":
            return _sis_chunk(g, cfg, rng, sizes[c], fixed, count)
        return _sir_chunk(g, cfg, rng, sizes[c], fixed, count, record_ever)

    if workers and workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, range(n_chunks)))
    else:
        parts = [one(c) for c in range(n_chunks)]

    if cfg.model == "sis":
        infected = np.concatenate([p[0] for p in parts], axis=1)
        return infected, None, None
    infected = np.concatenate([p[0][0] for p in parts], axis=1)
    removed = np.concatenate([p[0][1] for p in parts], axis=1)
    ever = np.concatenate([p[1] for p in parts], axis=0) if record_ever else None
    return infected, removed, ever


def simulate(g: Graph, cfg: EpidemicConfig, *, workers: int | None = None) -> EpidemicTrace:
    """Mean SIS/SIR trajectories over ``cfg.trials`` independent trials."""
    infected, removed, _ = run_trials(g, cfg, workers=workers)
    n = g.n_nodes
    if removed is None:
        removed = np.zeros_like(infected)
    susceptible = n - infected - removed
    std = infected.std(axis=1, ddof=1) if cfg.trials > 1 else np.zeros(cfg.steps + 1)
    return EpidemicTrace(
        n_nodes=n,
        susceptible=susceptible.mean(axis=1),
        infected=infected.mean(axis=1),
        removed=removed.mean(axis=1),
        infected_std=std,
        trials=cfg.trials,
        model=cfg.model,
    )


def compare_traces(a: EpidemicTrace, b: EpidemicTrace) -> TraceComparison:
    """Per-step absolute gap between the infected fractions of two traces."""
    if a.steps != b.steps:
        raise ValueError(f"horizon mismatch: {a.steps} vs {b.steps} steps")
    gap = np.abs(a.infected_fraction - b.infected_fraction)
    return TraceComparison(gap, float(gap.max()), float(gap.mean()))
