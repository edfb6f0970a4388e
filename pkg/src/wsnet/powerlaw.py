"""Discrete power-law fitting: MLE exponent with KS-selected cutoff.

For a tail k >= k_min the model is p(k) = k^-gamma / zeta(gamma, k_min) with
the Hurwitz zeta normalizer.  ``fit_power_law`` scans candidate cutoffs,
fits gamma by maximum likelihood at each and keeps the cutoff whose fitted
model is closest to the data in Kolmogorov-Smirnov distance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import zeta

from .errors import TooFewObservationsError
from .graph import DegreeHistogram, RngStream

GAMMA_LO = 1.0 + 1e-6
GAMMA_HI = 10.0
MIN_TAIL = 50


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    k_min: int
    ks_stat: float
    n_tail: int
    slope_before_kmin: float
    degenerate: bool = False
    p_value: float | None = None

    def to_record(self) -> dict[str, object]:
        return {
            "gamma": self.gamma,
            "k_min": self.k_min,
            "ks": self.ks_stat,
            "n_tail": self.n_tail,
            "slope_before_kmin": self.slope_before_kmin,
        }


def _as_counts(data) -> np.ndarray:
    """Dense count array by degree, degree-0 bin cleared."""
    if isinstance(data, DegreeHistogram):
        c = data.counts.astype(np.int64).copy()
    else:
        d = np.asarray(data, dtype=np.int64)
        if (d < 0).any():
            raise ValueError("degrees must be non-negative")
        c = np.bincount(d) if d.size else np.zeros(1, dtype=np.int64)
    c[0] = 0
    return c


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _mle_from_counts(counts: np.ndarray, k_min: int) -> tuple[float, bool]:
    tail = counts[k_min:]
    ks = np.arange(k_min, len(counts), dtype=np.float64)
    n = tail.sum()
    if n < MIN_TAIL:
        raise TooFewObservationsError(f"only {n} observations with k >= {k_min}; need {MIN_TAIL}")
    log_sum = float(np.dot(tail, np.log(ks)))

    def nll(g):
        return n * np.log(zeta(g, k_min)) + g * log_sum

    res = minimize_scalar(nll, bounds=(GAMMA_LO, GAMMA_HI), method="bounded", options={"xatol": 1e-9})
    gamma = float(res.x)
    degenerate = gamma > GAMMA_HI - 1e-4
    return gamma, degenerate


def mle_gamma(sample, k_min: int) -> float:
    """Maximum-likelihood exponent of the discrete power law on ``k >= k_min``.

    ``sample`` is a degree sequence or a :class:`DegreeHistogram`.  The
    search is bounded to (1, 10]; a result at the upper bound means the data
    has no power-law tail (see :func:`fit_power_law` for the flag).
    """
    return _mle_from_counts(_as_counts(sample), k_min)[0]


def _model_ccdf(gamma: float, k_min: int, k_top: int) -> np.ndarray:
    """P(X >= k) for k = k_min..k_top + 1 under the fitted tail."""
    ks = np.arange(k_min, k_top + 1, dtype=np.float64)
    terms = ks ** (-gamma)
    beyond = zeta(gamma, k_top + 1)
    # suffix sums, smallest terms first
    suffix = np.cumsum(terms[::-1])[::-1] + beyond
    return np.concatenate([suffix, [beyond]]) / suffix[0]


def _ks_from_counts(counts: np.ndarray, gamma: float, k_min: int) -> float:
    tail = counts[k_min:]
    n = tail.sum()
    k_top = len(counts) - 1
    emp_cdf = np.cumsum(tail) / n
    model_cdf = 1.0 - _model_ccdf(gamma, k_min, k_top)[1:]
    return float(np.max(np.abs(emp_cdf - model_cdf)))


def ks_distance(sample, gamma: float, k_min: int) -> float:
    """Sup over integers k >= k_min of |empirical tail CDF - model CDF|."""
    counts = _as_counts(sample)
    if counts[k_min:].sum() == 0:
        raise TooFewObservationsError(f"no observations with k >= {k_min}")
    return _ks_from_counts(counts, gamma, k_min)


def slope_before_kmin(hist, k_min: int) -> float:
    """Magnitude of the least-squares slope of log P_k vs log k over observed k < k_min."""
    counts = _as_counts(hist)
    ks = np.flatnonzero(counts[:k_min])
    if len(ks) < 3:
        raise TooFewObservationsError(f"need 3 distinct degrees below k_min={k_min}, have {len(ks)}")
    pk = counts[ks] / counts.sum()
    slope = np.polyfit(np.log(ks), np.log(pk), 1)[0]
    return float(abs(slope))


def _candidates(counts: np.ndarray, quantile: float, min_tail: int) -> np.ndarray:
    observed = np.flatnonzero(counts)
    cap = np.quantile(observed, quantile) if quantile < 1.0 else observed[-1]
    tail_sizes = np.cumsum(counts[::-1])[::-1]
    return np.array([k for k in observed if k <= cap and tail_sizes[k] >= min_tail], dtype=np.int64)


def _scan(counts: np.ndarray, quantile: float, min_tail: int):
    best = None
    for k_min in _candidates(counts, quantile, min_tail):
        gamma, degen = _mle_from_counts(counts, int(k_min))
        d = _ks_from_counts(counts, gamma, int(k_min))
        # lexicographic (ks, k_min) minimum
        if best is None or d < best[0]:
            best = (d, int(k_min), gamma, degen)
    return best


def fit_power_law(
    hist,
    kmin_quantile: float = 0.9,
    min_tail: int = MIN_TAIL,
    bootstrap: int = 0,
    rng=None,
) -> PowerLawFit:
    """Fit (gamma, k_min) to a degree histogram.

    Candidate cutoffs are the observed degrees up to the ``kmin_quantile``
    quantile of the distinct observed degrees that leave at least
    ``min_tail`` observations in the tail.  ``bootstrap > 0`` adds a
    semi-parametric goodness-of-fit p-value from that many replicates.
    """
    counts = _as_counts(hist)
    n = int(counts.sum())
    if n < 100:
        raise TooFewObservationsError(f"too few observations: {n} nodes with nonzero degree, need 100")
    if np.count_nonzero(counts) < 2:
        raise TooFewObservationsError("degenerate histogram: a single degree value")
    best = _scan(counts, kmin_quantile, min_tail)
    if best is None:
        raise TooFewObservationsError(f"no cutoff leaves {min_tail} tail observations")
    ks_stat, k_min, gamma, degen = best
    try:
        slope = slope_before_kmin(DegreeHistogram(counts), k_min)
    except TooFewObservationsError:
        slope = float("nan")
    p_value = None
    if bootstrap > 0:
        p_value = _bootstrap_pvalue(counts, gamma, k_min, ks_stat, bootstrap, _as_generator(rng), kmin_quantile, min_tail)
    return PowerLawFit(gamma, k_min, ks_stat, int(counts[k_min:].sum()), slope, degen, p_value)


def _bootstrap_pvalue(counts, gamma, k_min, observed, replicates, gen, quantile, min_tail) -> float:
    n = int(counts.sum())
    n_tail = int(counts[k_min:].sum())
    body = np.repeat(np.arange(k_min), counts[:k_min])
    hits = 0
    for _ in range(replicates):
        in_tail = gen.binomial(n, n_tail / n)
        parts = [sample_power_law(gamma, k_min, in_tail, gen)]
        if len(body) and n - in_tail:
            parts.append(gen.choice(body, size=n - in_tail))
        synth = _as_counts(np.concatenate(parts))
        try:
            best = _scan(synth, quantile, min_tail)
        except TooFewObservationsError:
            continue
        if best is not None and best[0] >= observed:
            hits += 1
    return hits / replicates


def sample_power_law(gamma: float, k_min: int, n: int, rng=None, table_size: int = 100_000) -> np.ndarray:
    """Exact i.i.d. draws from the discrete power law on k >= k_min.

    Inverse CDF: a draw is the k with S(k+1) < v <= S(k), where
    S(k) = zeta(gamma, k) / zeta(gamma, k_min).  S is tabulated for the first
    ``table_size`` degrees; rarer draws are resolved by bisection on zeta.
    """
    if gamma <= 1:
        raise ValueError("gamma must exceed 1")
    gen = _as_generator(rng)
    v = 1.0 - gen.random(n)  # in (0, 1]
    z0 = zeta(gamma, k_min)
    ks = np.arange(k_min, k_min + table_size + 1, dtype=np.float64)
    S = zeta(gamma, ks) / z0  # decreasing, S[0] = 1
    # index i with S[i+1] < v <= S[i]
    idx = np.searchsorted(-S, -v, side="right") - 1
    out = (k_min + idx).astype(np.int64)
    far = idx >= table_size
    if far.any():
        out[far] = [_bisect_tail(gamma, z0, int(ks[-1]), vv) for vv in v[far]]
    return out


def _bisect_tail(gamma: float, z0: float, lo: int, v: float) -> int:
    # invariant: S(lo) >= v > S(hi)
    hi = lo * 2
    while zeta(gamma, hi) / z0 >= v:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if zeta(gamma, mid) / z0 >= v:
            lo = mid
        else:
            hi = mid
    return lo
