"""Growing undirected multigraph with degree-indexed sampling.

Edges are stored as a flat endpoint array ``ends`` where edge ``e`` occupies
``ends[2e]`` and ``ends[2e + 1]``.  Node ``i`` therefore appears in ``ends``
exactly ``degree(i)`` times, which makes the same buffer serve as the
preferential-attachment target list: a uniform index into ``ends[:2m]`` picks
a node with probability proportional to its degree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGraphError, SelfLoopError


class RngStream:
    """Seeded uniform stream shared by the scalar ops and the batch kernels.

    Every random decision in the package is taken from ``random()`` draws in
    [0, 1), mapped to integers by :func:`uniform_index`.  ``block(n)`` returns
    the next ``n`` draws of the same sequence, so a kernel fed with blocks and
    a loop of scalar ops consume identical numbers.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def random(self) -> float:
        return float(self.generator.random())

    def block(self, size: int) -> np.ndarray:
        return self.generator.random(size)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed})"


def uniform_index(u: float, n: int) -> int:
    """Map a draw in [0, 1) to an index in [0, n)."""
    i = int(u * n)
    return n - 1 if i >= n else i


@dataclass(frozen=True)
class DegreeHistogram:
    """Counts of nodes per degree, stored densely: ``counts[k]`` is N_k."""

    counts: np.ndarray

    def __post_init__(self):
        c = np.array(self.counts, dtype=np.int64).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=np.int64)
        if (c < 0).any():
            raise ValueError("negative degree count")
        # drop trailing zero bins so equal histograms compare equal
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1]
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @classmethod
    def from_degrees(cls, degrees) -> "DegreeHistogram":
        d = np.asarray(degrees, dtype=np.int64)
        if d.size == 0:
            return cls(np.zeros(1, dtype=np.int64))
        return cls(np.bincount(d))

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> "DegreeHistogram":
        if not mapping:
            return cls(np.zeros(1, dtype=np.int64))
        c = np.zeros(max(mapping) + 1, dtype=np.int64)
        for k, v in mapping.items():
            c[int(k)] += int(v)
        return cls(c)

    @property
    def total_nodes(self) -> int:
        return int(self.counts.sum())

    @property
    def max_degree(self) -> int:
        return len(self.counts) - 1

    @property
    def degree_sum(self) -> int:
        return int(np.dot(np.arange(len(self.counts)), self.counts))

    def as_dict(self) -> dict[int, int]:
        return {int(k): int(self.counts[k]) for k in np.flatnonzero(self.counts)}

    def degrees(self) -> np.ndarray:
        """Observed degree values in ascending order."""
        return np.flatnonzero(self.counts)

    def without_zero(self) -> "DegreeHistogram":
        c = self.counts.copy()
        c[0] = 0
        return DegreeHistogram(c)

    def pmf(self) -> np.ndarray:
        return self.counts / self.total_nodes

    def cdf(self) -> np.ndarray:
        """P(degree <= k) for k = 0..max_degree."""
        return np.cumsum(self.counts) / self.total_nodes

    def merge(self, other: "DegreeHistogram") -> "DegreeHistogram":
        size = max(len(self.counts), len(other.counts))
        c = np.zeros(size, dtype=np.int64)
        c[: len(self.counts)] += self.counts
        c[: len(other.counts)] += other.counts
        return DegreeHistogram(c)

    def __eq__(self, other):
        if not isinstance(other, DegreeHistogram):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    def __hash__(self):
        return hash(self.counts.tobytes())


class Graph:
    """Undirected multigraph with dense node ids and no self-loops.

    Parameters
    ----------
    n : int
        Number of initial isolated nodes (at least 1).
    node_capacity, edge_capacity : int, optional
        Preallocated sizes; storage grows geometrically past them.
    """

    def __init__(self, n: int = 1, node_capacity: int = 0, edge_capacity: int = 0):
        if n < 1:
            raise ValueError("a graph needs at least one node")
        self.n = int(n)
        self.m = 0
        self._deg = np.zeros(max(node_capacity, n, 16), dtype=np.int64)
        self._ends = np.zeros(2 * max(edge_capacity, 16), dtype=np.int64)

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> "Graph":
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(e.max()) + 1 if e.size else 1
        g = cls(n, node_capacity=n, edge_capacity=len(e))
        for u, v in e:
            g.add_edge(int(u), int(v))
        return g

    @property
    def degrees(self) -> np.ndarray:
        return self._deg[: self.n]

    @property
    def pa_targets(self) -> np.ndarray:
        return self._ends[: 2 * self.m]

    @property
    def edges(self) -> np.ndarray:
        return self._ends[: 2 * self.m].reshape(-1, 2)

    def reserve(self, nodes: int, edges: int) -> None:
        """Ensure room for ``nodes`` nodes and ``edges`` edges in total."""
        if nodes > len(self._deg):
            grown = np.zeros(nodes, dtype=np.int64)
            grown[: self.n] = self._deg[: self.n]
            self._deg = grown
        if 2 * edges > len(self._ends):
            grown = np.zeros(2 * edges, dtype=np.int64)
            grown[: 2 * self.m] = self._ends[: 2 * self.m]
            self._ends = grown

    def add_node(self) -> int:
        if self.n == len(self._deg):
            self.reserve(2 * self.n, self.m)
        node = self.n
        self._deg[node] = 0
        self.n += 1
        return node

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise SelfLoopError(f"self-loop on node {u} rejected")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"edge ({u}, {v}) outside node range [0, {self.n})")
        if 2 * self.m + 2 > len(self._ends):
            self.reserve(self.n, 2 * self.m + 2)
        self._ends[2 * self.m] = u
        self._ends[2 * self.m + 1] = v
        self._deg[u] += 1
        self._deg[v] += 1
        self.m += 1

    def degree_histogram(self) -> DegreeHistogram:
        return DegreeHistogram.from_degrees(self.degrees)

    def check_invariants(self) -> None:
        deg = self.degrees
        assert deg.sum() == 2 * self.m
        assert len(self.pa_targets) == 2 * self.m
        assert (deg >= 0).all()
        e = self.edges
        assert not (e[:, 0] == e[:, 1]).any()
        assert np.array_equal(np.bincount(self.pa_targets, minlength=self.n), deg)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def sample_preferential(g: Graph, rng: RngStream) -> int:
    """Draw a node with probability degree / (2m)."""
    if g.m == 0:
        raise DegenerateGraphError("degenerate graph: total degree is zero")
    return int(g._ends[uniform_index(rng.random(), 2 * g.m)])


def sample_uniform_pair(g: Graph, rng: RngStream) -> tuple[int, int]:
    """Draw an ordered pair of distinct nodes, uniform over all n(n-1) pairs."""
    n = g.n
    if n < 2:
        raise DegenerateGraphError("uniform pair needs at least two nodes")
    x = uniform_index(rng.random(), n)
    y = uniform_index(rng.random(), n - 1)
    if y >= x:
        y += 1
    return x, y


def degree_histogram(g: Graph) -> DegreeHistogram:
    return g.degree_histogram()
