"""Edge-list input, degree-distribution CSV export and CDF comparison."""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError
from .graph import DegreeHistogram

DIST_HEADER = "k,count,pk,cdf"


@dataclass(frozen=True)
class EdgeList:
    """Edges as loaded, with the load report.

    Directed inputs are symmetrized: a node's degree counts both edge ends.
    """

    u: np.ndarray
    v: np.ndarray
    id_base: int
    self_loops: int
    skipped_lines: int

    @property
    def n_edges(self) -> int:
        return len(self.u)

    @property
    def n_nodes(self) -> int:
        return len(np.unique(np.concatenate([self.u, self.v])))

    def degree_histogram(self) -> DegreeHistogram:
        _, deg = np.unique(np.concatenate([self.u, self.v]), return_counts=True)
        return DegreeHistogram.from_degrees(deg)


def _open_text(source):
    if isinstance(source, (str, Path)):
        return open(source, encoding="utf-8")
    return source


def read_edge_list(source) -> EdgeList:
    """Parse a whitespace-separated edge list.

    Lines starting with ``%`` or ``#`` and blank lines are skipped; fields
    after the first two are ignored.  Duplicate lines are parallel edges.
    Self-loops are kept (a self-loop adds 2 to its node's degree) and counted
    in the report.
    """
    fh = _open_text(source)
    us: list[int] = []
    vs: list[int] = []
    skipped = 0
    try:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s[0] in "%#":
                skipped += 1
                continue
            parts = s.split()
            if len(parts) < 2:
                raise ParseError(f"expected two node ids, got {s!r}", lineno)
            try:
                us.append(int(parts[0]))
                vs.append(int(parts[1]))
            except ValueError:
                raise ParseError(f"non-integer node id in {s!r}", lineno) from None
    finally:
        if fh is not source:
            fh.close()
    if not us:
        raise ParseError("empty edge list")
    u = np.array(us, dtype=np.int64)
    v = np.array(vs, dtype=np.int64)
    base = int(min(u.min(), v.min()))
    return EdgeList(u, v, id_base=1 if base >= 1 else 0, self_loops=int(np.count_nonzero(u == v)), skipped_lines=skipped)


def parse_edge_list(source) -> DegreeHistogram:
    return read_edge_list(source).degree_histogram()


def estimate_alpha(n: int, m: int) -> int:
    """Edge-step size whose fixed-mode edge count (alpha+1)(n-1) is closest to ``m``."""
    if n < 2:
        raise ValueError("need at least two nodes")
    # round-half-up of m / (n - 1) in integers
    per_node = (2 * m + (n - 1)) // (2 * (n - 1))
    return max(per_node - 1, 0)


def matched_ba_w(n: int, m: int) -> int:
    if n < 2:
        raise ValueError("need at least two nodes")
    return max((2 * m + (n - 1)) // (2 * (n - 1)), 1)


@dataclass(frozen=True)
class DistributionExport:
    k: np.ndarray
    count: np.ndarray
    pk: np.ndarray
    cdf: np.ndarray

    def to_csv(self) -> str:
        rows = [DIST_HEADER]
        rows += [f"{k},{c},{p:.6g},{f:.6g}" for k, c, p, f in zip(self.k.tolist(), self.count.tolist(), self.pk.tolist(), self.cdf.tolist())]
        return "\n".join(rows) + "\n"


def distribution_rows(hist: DegreeHistogram) -> DistributionExport:
    total = hist.total_nodes
    if total == 0:
        raise ValueError("empty histogram")
    k = hist.degrees()
    count = hist.counts[k]
    pk = count / total
    cdf = np.cumsum(count) / total
    return DistributionExport(k, count, pk, cdf)


def export_distribution(hist: DegreeHistogram, target=None) -> DistributionExport:
    """Write ``k,count,pk,cdf`` rows to ``target`` (path or text stream) and return them."""
    rows = distribution_rows(hist)
    if target is not None:
        text = rows.to_csv()
        if isinstance(target, (str, Path)):
            Path(target).write_text(text)
        else:
            target.write(text)
    return rows


def read_distribution(source) -> DegreeHistogram:
    fh = _open_text(source)
    try:
        lines = fh.read().splitlines()
    finally:
        if fh is not source:
            fh.close()
    if not lines or lines[0].strip() != DIST_HEADER:
        raise ParseError(f"missing header {DIST_HEADER!r}", 1)
    mapping = {}
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        parts = line.split(",")
        try:
            mapping[int(parts[0])] = int(parts[1])
        except (ValueError, IndexError):
            raise ParseError(f"bad distribution row {line!r}", lineno) from None
    if not mapping:
        raise ParseError("distribution file has no rows")
    return DegreeHistogram.from_dict(mapping)


def load_histogram(path) -> tuple[DegreeHistogram, EdgeList | None]:
    """Read either a distribution CSV or an edge list, by sniffing the first line."""
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
    if first == DIST_HEADER:
        return read_distribution(path), None
    edges = read_edge_list(path)
    return edges.degree_histogram(), edges


def _cdf_on(hist: DegreeHistogram, ks: np.ndarray) -> np.ndarray:
    cdf = hist.cdf()
    return cdf[np.minimum(ks, len(cdf) - 1)]


def compare_cdf(a: DegreeHistogram, b: DegreeHistogram) -> float:
    """KS distance: sup over observed degrees of |CDF_a(k) - CDF_b(k)|."""
    if a.total_nodes == 0 or b.total_nodes == 0:
        raise ValueError("empty histogram")
    ks = np.union1d(a.degrees(), b.degrees())
    return float(np.max(np.abs(_cdf_on(a, ks) - _cdf_on(b, ks))))


def aligned_cdf_table(hists: dict[str, DegreeHistogram]) -> str:
    """CSV with column ``k`` and one ``cdf_<name>`` column per histogram."""
    ks = np.unique(np.concatenate([h.degrees() for h in hists.values()]))
    cols = {name: _cdf_on(h, ks) for name, h in hists.items()}
    out = io.StringIO()
    out.write(",".join(["k"] + [f"cdf_{name}" for name in hists]) + "\n")
    for i, k in enumerate(ks.tolist()):
        out.write(",".join([str(k)] + [f"{cols[name][i]:.6g}" for name in hists]) + "\n")
    return out.getvalue()
