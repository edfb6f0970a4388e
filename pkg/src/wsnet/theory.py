"""Exact degree-distribution analytics for the two-step growth model.

Closed forms cover the t -> infinity limits; :func:`integrate_recurrence`
evolves the expected degree counts step by step, applying the node-step and
each edge-step update in turn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._backend import kernels
from .errors import ConfigError
from .generators import GrowthConfig, GrowthTrace, delta_schedule

DEFAULT_K_MAX = 10_000
TAIL_WARN = 1e-9


def ba_pk(k: int) -> float:
    """Stationary BA degree distribution 4 / (k (k+1) (k+2))."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    return 4.0 / (k * (k + 1) * (k + 2))


def stationary_p1(alpha: int, exact: bool = False):
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    num, den = 2 * (alpha + 1), 4 * alpha * alpha + 6 * alpha + 3
    return Fraction(num, den) if exact else num / den


def _offsets(alpha: int) -> tuple[int, int]:
    a = 4 * alpha * alpha
    return a + 4 * alpha, a + 6 * alpha + 2


def stationary_pk(alpha: int, k: int, exact: bool = False):
    """Stationary fraction of degree-``k`` nodes for fixed edge-step size ``alpha``.

    Uses the closed product form

        P_k = 2(alpha+1) / (k+A) * prod_{j=1}^{B-A} (A+j) / (k+A+j)

    with A = 4 alpha^2 + 4 alpha and B = 4 alpha^2 + 6 alpha + 2, written as a
    product of ratios below one so it neither overflows nor accumulates
    error with ``k``.  ``exact=True`` returns a :class:`~fractions.Fraction`.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if k < 1:
        raise ValueError("degree must be >= 1")
    lo, hi = _offsets(alpha)
    if exact:
        p = Fraction(2 * (alpha + 1), k + lo)
        for j in range(1, hi - lo + 1):
            p *= Fraction(lo + j, k + lo + j)
        return p
    p = 2.0 * (alpha + 1) / (k + lo)
    for j in range(1, hi - lo + 1):
        p *= (lo + j) / (k + lo + j)
    return p


def stationary_distribution(alpha: int, k_max: int) -> np.ndarray:
    """Array ``p`` with ``p[k] = stationary_pk(alpha, k)`` for k = 1..k_max; ``p[0] = 0``."""
    lo, hi = _offsets(alpha)
    k = np.arange(1, k_max + 1, dtype=np.float64)
    p = 2.0 * (alpha + 1) / (k + lo)
    for j in range(1, hi - lo + 1):
        p *= (lo + j) / (k + lo + j)
    return np.concatenate([[0.0], p])


def slope_delta(alpha: int, k: int) -> float:
    """Local log-log slope (log P_k - log P_{k-1}) / (log k - log(k-1))."""
    if k < 2:
        raise ValueError("slope needs k >= 2")
    _, hi = _offsets(alpha)
    return math.log1p(-(2 * alpha + 3) / (k + hi)) / math.log1p(1.0 / (k - 1))


def slope_asymptote(alpha: int) -> float:
    return -(2.0 * alpha + 3.0)


def slope_table(alpha: int, k_max: int) -> np.ndarray:
    """Rows (k, delta) for k = 2..k_max."""
    _, hi = _offsets(alpha)
    k = np.arange(2, k_max + 1, dtype=np.float64)
    return np.column_stack([k, np.log1p(-(2 * alpha + 3) / (k + hi)) / np.log1p(1.0 / (k - 1))])


@dataclass
class RankDistribution:
    """Degree fractions at time ``t``; ``ranks[k]`` is P_{k,t} (``ranks[0]`` is unused and 0).

    ``tail_mass`` is the fraction of nodes whose degree left the tracked range.
    """

    t: int
    ranks: np.ndarray
    m_t: float
    tail_mass: float = 0.0

    @property
    def k_max(self) -> int:
        return len(self.ranks) - 1

    def p(self, k: int) -> float:
        return float(self.ranks[k]) if 0 <= k < len(self.ranks) else 0.0

    def counts(self) -> np.ndarray:
        return self.ranks * self.t


@dataclass(frozen=True)
class EdgeStepCoefficients:
    """Binomial weights of ``delta_m`` uniform edge insertions at time ``t``.

    ``values[n]`` is the weight carrying N_{k-n} into N_k:
    binom(delta_m, n) psi^(delta_m - n) phi^n with phi = 2/(t+1).
    """

    delta_m: int
    t: int
    phi: float
    psi: float
    values: np.ndarray


def edge_step_coefficients(delta_m: int, t: int, n_max: int | None = None) -> EdgeStepCoefficients:
    if delta_m < 0 or t < 1:
        raise ValueError("need delta_m >= 0 and t >= 1")
    phi = 2.0 / (t + 1)
    psi = 1.0 - phi
    top = delta_m if n_max is None else min(n_max, delta_m)
    vals = np.array([math.comb(delta_m, n) * psi ** (delta_m - n) * phi**n for n in range(top + 1)])
    return EdgeStepCoefficients(delta_m, t, phi, psi, vals)


def integrate_node_step(state: RankDistribution) -> np.ndarray:
    """Expected degree counts over t+1 nodes right after the node-step."""
    if state.m_t <= 0:
        raise ValueError("node step needs m_t > 0")
    n_old = state.ranks * state.t
    out = np.zeros(len(n_old) + 1)
    k = np.arange(len(out), dtype=np.float64)
    inv2m = 1.0 / (2.0 * state.m_t)
    out[: len(n_old)] = (1.0 - k[: len(n_old)] * inv2m) * n_old
    out[1:] += n_old * (k[:-1] * inv2m)
    out[1] += 1.0
    out[0] = 0.0
    return out


def integrate_edge_step(counts: np.ndarray, delta_m: int, t: int) -> np.ndarray:
    """Apply ``delta_m`` uniform edge insertions to counts over ``t + 1`` nodes."""
    phi = 2.0 / (t + 1.0)
    psi = 1.0 - phi
    out = np.zeros(len(counts) + delta_m)
    out[: len(counts)] = counts
    out[0] = 0.0
    for _ in range(delta_m):
        out[2:] = psi * out[2:] + phi * out[1:-1]
        out[1] = psi * out[1]
    return out


def apply_edge_coefficients(counts: np.ndarray, coeffs: EdgeStepCoefficients) -> np.ndarray:
    """Same result as :func:`integrate_edge_step`, through the binomial mixture."""
    dm = coeffs.delta_m
    src = np.zeros(len(counts) + dm)
    src[: len(counts)] = counts
    src[0] = 0.0
    out = np.zeros_like(src)
    for n, c in enumerate(coeffs.values):
        out[n:] += c * src[: len(src) - n]
    out[0] = 0.0
    return out


@dataclass
class RecurrenceResult:
    final: RankDistribution
    p1: np.ndarray  # p1[t] = P_{1,t} for t >= 2
    snapshots: dict[int, RankDistribution] = field(default_factory=dict)
    trimmed_mass: float = 0.0
    warnings: list[str] = field(default_factory=list)


def _mode_config(alpha, beta, t_max) -> GrowthConfig:
    if (alpha is None) == (beta is None):
        raise ConfigError("give exactly one of alpha or beta")
    if alpha is not None:
        return GrowthConfig.fixed_alpha(alpha, t_max)
    return GrowthConfig.variable_beta(beta, t_max)


def integrate_recurrence(
    t_max: int,
    alpha: int | None = None,
    beta: float | None = None,
    k_max: int = DEFAULT_K_MAX,
    record=(),
    tiny: float = 1e-30,
) -> RecurrenceResult:
    """Evolve expected degree fractions from the two-node state at t=2 to ``t_max``.

    The t=2 state is two nodes joined by the node-step edge plus the first
    edge-step's parallel edges.  In fixed mode m_t = (alpha+1)(t-1); in
    variable mode m_t follows the same integer schedule as the generator.
    Degrees above ``k_max`` are not tracked; the mass that crosses is
    reported as ``final.tail_mass`` and flagged when above 1e-9.
    """
    config = _mode_config(alpha, beta, t_max)
    deltas = np.zeros(t_max + 1, dtype=np.int64)
    deltas[1:] = delta_schedule(config, 1, 0)
    m_of_t = np.zeros(t_max + 1)
    m_of_t[1:] = np.concatenate([[0], np.cumsum(deltas[1:t_max] + 1)])

    start_degree = 1 + int(deltas[1])
    if k_max < start_degree:
        raise ConfigError(f"k_max={k_max} below the initial degree {start_degree}")
    N = np.zeros(k_max + 1)
    N[start_degree] = 2.0
    p1 = np.zeros(t_max + 1)
    p1[2] = N[1] / 2.0
    L = start_degree
    t = 2
    overflow = trimmed = 0.0
    snapshots = {}

    def snapshot(t):
        return RankDistribution(t, N[: L + 1] / t, float(m_of_t[t]), overflow / t)

    wanted = {int(r) for r in record if 2 <= r <= t_max}
    for stop in sorted(wanted | {t_max}):
        if stop > t:
            L, over, trim = kernels.advance_recurrence(N, L, t, stop, deltas, m_of_t, tiny, p1)
            overflow += over
            trimmed += trim
            t = stop
        if t in wanted:
            snapshots[t] = snapshot(t)
    final = snapshot(t_max)
    warnings = []
    if final.tail_mass > TAIL_WARN:
        warnings.append(f"k_max={k_max} too small: tail mass {final.tail_mass:.3g} exceeds {TAIL_WARN:g}")
    return RecurrenceResult(final, p1, snapshots, trimmed / t_max, warnings)


def growth_exponent_fit(trace, min_length: int = 1000) -> tuple[float, float]:
    """Least-squares fit of log m_t = log m1 + beta log t over the last half of a trace.

    Accepts a :class:`GrowthTrace` or a ``(t, m)`` pair of arrays.  Returns
    ``(beta_hat, m1_hat)``.
    """
    if isinstance(trace, GrowthTrace):
        t, m = trace.t, trace.m
    else:
        t, m = trace
    t = np.asarray(t, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    if len(t) < min_length:
        raise ValueError(f"trace too short for a growth fit: {len(t)} < {min_length} records")
    half = slice(len(t) // 2, None)
    t, m = t[half], m[half]
    keep = m > 0
    slope, intercept = np.polyfit(np.log(t[keep]), np.log(m[keep]), 1)
    return float(slope), float(math.exp(intercept))


def loglog_slope(x, y) -> float:
    """Least-squares slope of log y against log x."""
    return float(np.polyfit(np.log(np.asarray(x, float)), np.log(np.asarray(y, float)), 1)[0])
