"""Growth processes: the two-step weakly scale-free model and a BA baseline.

One time step of the weakly scale-free model (WSM) adds a node attached to a
degree-proportional target (node-step), then adds ``delta_m`` edges between
uniformly chosen distinct pairs (edge-step).  ``delta_m`` is a constant
``alpha`` in fixed mode and ``ceil(beta * m_t / t) - 1`` in variable mode.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ._backend import kernels
from .errors import ConfigError, DegenerateGraphError
from .graph import DegreeHistogram, Graph, RngStream, sample_preferential, sample_uniform_pair

FIXED_ALPHA = "fixed_alpha"
VARIABLE_BETA = "variable_beta"
BA_BASELINE = "ba"
MODES = (FIXED_ALPHA, VARIABLE_BETA, BA_BASELINE)

_BLOCK = 1 << 16


@dataclass(frozen=True)
class GrowthConfig:
    """Parameters of one generation run.

    ``initiator`` is an optional edge list used as the starting graph.  When
    omitted, WSM runs start from a single node and BA runs from a clique on
    ``w + 1`` nodes.
    """

    mode: str
    t_max: int
    alpha: int | None = None
    beta: float | None = None
    w: int | None = None
    seed: int = 0
    snapshot_stride: int = 0
    initiator: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.t_max < 2:
            raise ConfigError("t_max must be at least 2")
        if self.mode == FIXED_ALPHA and (self.alpha is None or self.alpha < 0):
            raise ConfigError("fixed_alpha mode needs a non-negative integer alpha")
        if self.mode == VARIABLE_BETA and (self.beta is None or not 1.0 < self.beta < 2.0):
            raise ConfigError("variable_beta mode needs 1 < beta < 2")
        if self.mode == BA_BASELINE and (self.w is None or self.w < 1):
            raise ConfigError("ba mode needs w >= 1")
        if self.snapshot_stride < 0:
            raise ConfigError("snapshot_stride must be non-negative")
        if self.initiator is not None:
            edges = tuple((int(u), int(v)) for u, v in self.initiator)
            if not edges:
                raise ConfigError("explicit initiator needs at least one edge")
            object.__setattr__(self, "initiator", edges)

    @classmethod
    def fixed_alpha(cls, alpha: int, t_max: int, seed: int = 0, **kw) -> "GrowthConfig":
        return cls(FIXED_ALPHA, t_max, alpha=int(alpha), seed=seed, **kw)

    @classmethod
    def variable_beta(cls, beta: float, t_max: int, seed: int = 0, **kw) -> "GrowthConfig":
        return cls(VARIABLE_BETA, t_max, beta=float(beta), seed=seed, **kw)

    @classmethod
    def ba(cls, w: int, t_max: int, seed: int = 0, **kw) -> "GrowthConfig":
        return cls(BA_BASELINE, t_max, w=int(w), seed=seed, **kw)

    def with_seed(self, seed: int) -> "GrowthConfig":
        return replace(self, seed=seed)

    def to_dict(self) -> dict[str, str]:
        d = {"mode": self.mode, "t_max": str(self.t_max)}
        if self.alpha is not None:
            d["alpha"] = str(self.alpha)
        if self.beta is not None:
            d["beta"] = repr(self.beta)
        if self.w is not None:
            d["w"] = str(self.w)
        d["seed"] = str(self.seed)
        d["snapshot_stride"] = str(self.snapshot_stride)
        if self.initiator is not None:
            d["initiator"] = ";".join(f"{u}-{v}" for u, v in self.initiator)
        return d

    def dumps(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in self.to_dict().items())

    @classmethod
    def loads(cls, text: str) -> "GrowthConfig":
        raw: dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"config line {lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            raw[key] = value
        unknown = set(raw) - {"mode", "alpha", "beta", "w", "t_max", "seed", "snapshot_stride", "initiator"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            initiator = None
            if raw.get("initiator"):
                initiator = tuple(tuple(int(x) for x in pair.split("-")) for pair in raw["initiator"].split(";"))
            return cls(
                mode=raw["mode"],
                t_max=int(raw["t_max"]),
                alpha=int(raw["alpha"]) if "alpha" in raw else None,
                beta=float(raw["beta"]) if "beta" in raw else None,
                w=int(raw["w"]) if "w" in raw else None,
                seed=int(raw.get("seed", 0)),
                snapshot_stride=int(raw.get("snapshot_stride", 0)),
                initiator=initiator,
            )
        except KeyError as exc:
            raise ConfigError(f"missing config key {exc.args[0]!r}") from None
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad config value: {exc}") from None

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path) -> "GrowthConfig":
        return cls.loads(Path(path).read_text())


@dataclass
class GrowthTrace:
    """Per-step record: ``delta[i]`` is the edge-step size going from ``t[i]`` to ``t[i] + 1``."""

    t: np.ndarray
    n: np.ndarray
    m: np.ndarray
    delta: np.ndarray
    snapshots: dict[int, DegreeHistogram] = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    def check(self) -> None:
        assert np.all(np.diff(self.n) == 1)
        assert np.array_equal(np.diff(self.m), self.delta[:-1] + 1)

    def to_csv(self, target) -> None:
        lines = ["t,n,m,delta_m"]
        lines += [f"{a},{b},{c},{d}" for a, b, c, d in zip(self.t.tolist(), self.n.tolist(), self.m.tolist(), self.delta.tolist())]
        _write_text(target, "\n".join(lines) + "\n")

    def snapshots_to_csv(self, target) -> None:
        lines = ["t,k,count"]
        for t in sorted(self.snapshots):
            for k, c in self.snapshots[t].as_dict().items():
                lines.append(f"{t},{k},{c}")
        _write_text(target, "\n".join(lines) + "\n")


def _write_text(target, text: str) -> None:
    if isinstance(target, (str, Path)):
        Path(target).write_text(text)
    else:
        target.write(text)


def _variable_delta(beta: float, m: int, t: int) -> int:
    # exact ceil(beta * m / t) on the binary value of beta
    num, den = beta.as_integer_ratio()
    return max(-((-num * m) // (den * t)) - 1, 0)


def delta_m(config: GrowthConfig, g: Graph, t: int) -> int:
    """Edge-step size for the step leaving time ``t``; ``g.m`` must be m_t."""
    if config.mode == FIXED_ALPHA:
        return config.alpha
    if config.mode == VARIABLE_BETA:
        return _variable_delta(config.beta, g.m, t)
    return config.w - 1


def delta_schedule(config: GrowthConfig, t_start: int, m_start: int) -> np.ndarray:
    """Edge-step sizes for every step from ``t_start`` up to ``config.t_max``.

    Entry ``i`` belongs to the step leaving time ``t_start + i``; the final
    entry is the policy value at ``t_max`` itself (not executed).
    """
    count = config.t_max - t_start + 1
    if config.mode == FIXED_ALPHA:
        return np.full(count, config.alpha, dtype=np.int64)
    if config.mode == BA_BASELINE:
        return np.full(count, config.w - 1, dtype=np.int64)
    out = np.empty(count, dtype=np.int64)
    num, den = config.beta.as_integer_ratio()
    m = m_start
    for i in range(count):
        t = t_start + i
        d = -((-num * m) // (den * t)) - 1
        if d < 0:
            d = 0
        out[i] = d
        m += d + 1
    return out


def run_node_step(g: Graph, rng: RngStream) -> int:
    """Add a node attached to a degree-proportional target; returns the new id."""
    if g.m == 0:
        if g.n != 1:
            raise DegenerateGraphError("node step on an edgeless graph with several nodes")
        target = 0
    else:
        target = sample_preferential(g, rng)
    new = g.add_node()
    g.add_edge(new, target)
    return new


def run_edge_step(g: Graph, count: int, rng: RngStream) -> None:
    for _ in range(count):
        x, y = sample_uniform_pair(g, rng)
        g.add_edge(x, y)


def _initial_graph(config: GrowthConfig) -> Graph:
    if config.initiator is not None:
        return Graph.from_edges(config.initiator)
    if config.mode == BA_BASELINE:
        w = config.w
        return Graph.from_edges([(i, j) for i in range(w + 1) for j in range(i + 1, w + 1)])
    return Graph(1)


def _snapshot_stops(t0: int, t_max: int, stride: int) -> list[int]:
    if stride <= 0:
        return [t_max]
    stops = list(range((t0 // stride + 1) * stride, t_max, stride))
    return stops + [t_max]


def generate_wsm(config: GrowthConfig) -> tuple[Graph, GrowthTrace]:
    """Grow a WSM network from the initiator until it has ``t_max`` nodes."""
    if config.mode not in (FIXED_ALPHA, VARIABLE_BETA):
        raise ConfigError("generate_wsm needs fixed_alpha or variable_beta mode")
    g = _initial_graph(config)
    t0, m0 = g.n, g.m
    if config.t_max < t0:
        raise ConfigError(f"t_max={config.t_max} is below initiator size {t0}")
    deltas = delta_schedule(config, t0, m0)
    steps = config.t_max - t0
    m_trace = np.empty(steps + 1, dtype=np.int64)
    m_trace[0] = m0
    np.cumsum(deltas[:steps] + 1, out=m_trace[1:])
    m_trace[1:] += m0
    g.reserve(config.t_max, int(m_trace[-1]))

    rng = RngStream(config.seed)
    snapshots = {}
    buf = np.empty(0)
    pos = 0
    step = 0
    for t_stop in _snapshot_stops(t0, config.t_max, config.snapshot_stride):
        stop = t_stop - t0
        while step < stop:
            n, m, step, pos = kernels.grow_wsm(g._deg, g._ends, g.n, g.m, deltas, step, stop, buf, pos)
            g.n, g.m = int(n), int(m)
            if step < stop:
                need = 1 + 2 * int(deltas[step])
                buf = np.concatenate([buf[pos:], rng.block(max(_BLOCK, need))])
                pos = 0
        if config.snapshot_stride:
            snapshots[g.n] = g.degree_histogram()
    assert g.m == m_trace[-1]

    t = np.arange(t0, config.t_max + 1, dtype=np.int64)
    return g, GrowthTrace(t=t, n=t.copy(), m=m_trace, delta=deltas, snapshots=snapshots)


def generate_ba(w: int, t_max: int, rng: RngStream, initiator=None) -> Graph:
    """BA baseline: each arrival links to ``w`` distinct degree-proportional targets."""
    if w < 1:
        raise ConfigError("w must be >= 1")
    g = Graph.from_edges(initiator) if initiator is not None else _initial_graph(GrowthConfig.ba(w, max(t_max, 2)))
    if np.count_nonzero(g.degrees) < w:
        raise ConfigError(f"initiator has fewer than w={w} nodes with nonzero degree")
    if t_max < g.n:
        raise ConfigError(f"t_max={t_max} is below initiator size {g.n}")
    _drive_ba(g, w, t_max, rng)
    return g


def _drive_ba(g: Graph, w: int, t_stop: int, rng: RngStream, buf=None, pos: int = 0):
    g.reserve(t_stop, g.m + w * (t_stop - g.n))
    chosen = np.zeros(w, dtype=np.int64)
    if buf is None:
        buf = np.empty(0)
    while g.n < t_stop:
        n, m, pos = kernels.grow_ba(g._deg, g._ends, g.n, g.m, w, t_stop, buf, pos, chosen)
        g.n, g.m = int(n), int(m)
        if g.n < t_stop:
            buf = np.concatenate([buf[pos:], rng.block(_BLOCK)])
            pos = 0
    return buf, pos


def generate(config: GrowthConfig) -> tuple[Graph, GrowthTrace]:
    """Dispatch on ``config.mode``; BA runs get a trace of the same shape."""
    if config.mode != BA_BASELINE:
        return generate_wsm(config)
    w = config.w
    g = _initial_graph(config)
    if np.count_nonzero(g.degrees) < w:
        raise ConfigError(f"initiator has fewer than w={w} nodes with nonzero degree")
    t0, m0 = g.n, g.m
    if config.t_max < t0:
        raise ConfigError(f"t_max={config.t_max} is below initiator size {t0}")
    rng = RngStream(config.seed)
    snapshots = {}
    buf, pos = None, 0
    for t_stop in _snapshot_stops(t0, config.t_max, config.snapshot_stride):
        buf, pos = _drive_ba(g, w, t_stop, rng, buf, pos)
        if config.snapshot_stride:
            snapshots[g.n] = g.degree_histogram()
    t = np.arange(t0, config.t_max + 1, dtype=np.int64)
    m = m0 + w * (t - t0)
    delta = np.full(len(t), w - 1, dtype=np.int64)
    return g, GrowthTrace(t=t, n=t.copy(), m=m, delta=delta, snapshots=snapshots)


def generate_ensemble(config: GrowthConfig, seeds, workers: int = 1) -> list[tuple[Graph, GrowthTrace]]:
    """Independent runs for each seed, returned in seed order."""
    configs = [config.with_seed(int(s)) for s in seeds]
    if workers <= 1:
        return [generate(c) for c in configs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(generate, configs))


def merged_histogram(graphs) -> DegreeHistogram:
    hist = DegreeHistogram.from_degrees([])
    for g in graphs:
        hist = hist.merge(g.degree_histogram())
    return hist


def write_edge_list(g: Graph, target) -> None:
    buf = io.StringIO()
    np.savetxt(buf, g.edges, fmt="%d")
    _write_text(target, buf.getvalue())
