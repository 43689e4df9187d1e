"""Domain types for the region-graph partitioning pipeline.

All containers are frozen dataclasses wrapping read-only numpy arrays. They
validate their structural invariants on construction and are immutable (and
therefore safe to share across threads) afterwards.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ValidationError

# Marker for the hard background/background constraint in PairPrior.
FORBIDDEN = float("-inf")

# 4-neighborhood offsets in row-major scan order.
N4 = ((-1, 0), (0, -1), (0, 1), (1, 0))


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ClassSet:
    """Label universe: instance classes 1..num_labels plus reserved background 0."""

    num_labels: int

    def __post_init__(self):
        if int(self.num_labels) < 1:
            raise ValidationError("need at least one non-background class")
        object.__setattr__(self, "num_labels", int(self.num_labels))

    @property
    def num_total(self) -> int:
        return self.num_labels + 1


@dataclass(frozen=True)
class ScoreGrid:
    """Dense H x W x C grid of finite real scores (larger = more likely)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 3 or min(v.shape) < 1:
            raise ValidationError(f"score grid must be H x W x C, got shape {v.shape}")
        if not np.isfinite(v).all():
            raise ValidationError("score grid contains non-finite values")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def channels(self) -> int:
        return self.values.shape[2]


def _first_disconnected_region(region_of: np.ndarray):
    """Return the id of some region that is not 4-connected, or None."""
    h, w = region_of.shape
    flat = region_of.ravel()
    seen = np.zeros(flat.size, dtype=bool)
    flooded = set()
    for start in range(flat.size):
        if seen[start]:
            continue
        rid = int(flat[start])
        if rid in flooded:
            return rid
        flooded.add(rid)
        seen[start] = True
        stack = [start]
        while stack:
            p = stack.pop()
            pi, pj = divmod(p, w)
            for di, dj in N4:
                qi, qj = pi + di, pj + dj
                if 0 <= qi < h and 0 <= qj < w:
                    q = qi * w + qj
                    if not seen[q] and flat[q] == rid:
                        seen[q] = True
                        stack.append(q)
    return None


@dataclass(frozen=True)
class SuperpixelMap:
    """Pixel-to-region map; regions are nonempty, 4-connected, densely numbered."""

    region_of: np.ndarray

    def __post_init__(self):
        r = np.array(self.region_of, dtype=np.int64)
        if r.ndim != 2 or min(r.shape) < 1:
            raise ValidationError(f"region map must be H x W, got shape {r.shape}")
        if r.min() < 0:
            raise ValidationError("region ids must be nonnegative")
        count = int(r.max()) + 1
        if (np.bincount(r.ravel(), minlength=count) == 0).any():
            raise ValidationError("region ids are not dense")
        bad = _first_disconnected_region(r)
        if bad is not None:
            raise ValidationError(f"region {bad} is not 4-connected")
        r.setflags(write=False)
        object.__setattr__(self, "region_of", r)

    @property
    def height(self) -> int:
        return self.region_of.shape[0]

    @property
    def width(self) -> int:
        return self.region_of.shape[1]

    @property
    def region_count(self) -> int:
        return int(self.region_of.max()) + 1


@dataclass(frozen=True)
class RegionGraph:
    """Undirected region adjacency graph.

    Nodes carry one score per label (background channel 0 included); edges
    carry one boundary score. Edges are canonicalized to (u, v) with u < v in
    lexicographic order. The graph must be connected.
    """

    node_count: int
    edges: np.ndarray
    node_scores: np.ndarray
    edge_scores: np.ndarray

    def __post_init__(self):
        n = int(self.node_count)
        if n < 1:
            raise ValidationError("graph needs at least one node")
        e = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        s = np.array(self.edge_scores, dtype=np.float64).reshape(-1)
        a = np.array(self.node_scores, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != n or a.shape[1] < 2:
            raise ValidationError(
                f"node_scores must be ({n}, num_labels + 1), got shape {a.shape}"
            )
        if not np.isfinite(a).all():
            raise ValidationError("node scores contain non-finite values")
        if s.shape[0] != e.shape[0]:
            raise ValidationError("edge_scores length does not match edge count")
        if not np.isfinite(s).all():
            raise ValidationError("edge scores contain non-finite values")
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise ValidationError("edge endpoint out of range")
            if (e[:, 0] == e[:, 1]).any():
                raise ValidationError("self-loops are not allowed")
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            order = np.lexsort((hi, lo))
            e = np.stack([lo[order], hi[order]], axis=1)
            s = s[order]
            dup = (np.diff(e[:, 0]) == 0) & (np.diff(e[:, 1]) == 0)
            if dup.any():
                u, v = e[int(np.flatnonzero(dup)[0])]
                raise ValidationError(f"duplicate edge ({u}, {v})")
        if not _connected(n, e):
            raise ValidationError("graph is not connected")
        object.__setattr__(self, "node_count", n)
        object.__setattr__(self, "edges", _readonly(e))
        object.__setattr__(self, "node_scores", _readonly(a))
        object.__setattr__(self, "edge_scores", _readonly(s))

    @property
    def edge_count(self) -> int:
        return self.edges.shape[0]

    @property
    def num_labels(self) -> int:
        return self.node_scores.shape[1] - 1

    @cached_property
    def adjacency(self) -> tuple:
        """Per node, a tuple of (neighbor id, edge score) pairs."""
        adj = [[] for _ in range(self.node_count)]
        for (u, v), b in zip(self.edges, self.edge_scores):
            adj[u].append((int(v), float(b)))
            adj[v].append((int(u), float(b)))
        return tuple(tuple(pairs) for pairs in adj)


def _connected(n: int, edges: np.ndarray) -> bool:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(int(v))
        adj[v].append(int(u))
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return bool(seen.all())


@dataclass(frozen=True)
class PairPrior:
    """Symmetric class-pair boundary score matrix beta.

    Entry (0, 0) is the FORBIDDEN marker: a cut edge between two
    background-labeled nodes is a hard feasibility violation, never a finite
    score. Solvers must mask that entry instead of doing arithmetic with it.
    """

    beta: np.ndarray

    def __post_init__(self):
        b = np.array(self.beta, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] < 2:
            raise ValidationError(f"beta must be square of size >= 2, got {b.shape}")
        if not (b == b.T).all():
            raise ValidationError("beta must be symmetric")
        if not np.isneginf(b[0, 0]):
            raise ValidationError("beta[0, 0] must be the FORBIDDEN marker")
        rest = b.copy()
        rest[0, 0] = 0.0
        if not np.isfinite(rest).all():
            raise ValidationError("beta entries other than (0, 0) must be finite")
        b.setflags(write=False)
        object.__setattr__(self, "beta", b)

    @property
    def num_labels(self) -> int:
        return self.beta.shape[0] - 1

    @cached_property
    def beta_safe(self) -> np.ndarray:
        """Copy with the forbidden (0, 0) entry zeroed, for vectorized gathers."""
        s = self.beta.copy()
        s[0, 0] = 0.0
        s.setflags(write=False)
        return s


@dataclass(frozen=True)
class SolverParams:
    """Knobs shared by the partitioning solvers.

    The default pair priors match the synthetic generator's score margin;
    real score maps should calibrate them with grid_search.
    """

    w: float = 1.0
    beta_small: float = -4.0
    beta_big: float = -4.0
    big_classes: frozenset = frozenset()
    max_rounds: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.w) or self.w < 0:
            raise ValidationError("w must be a nonnegative real")
        if not (np.isfinite(self.beta_small) and np.isfinite(self.beta_big)):
            raise ValidationError("beta_small and beta_big must be finite")
        if int(self.max_rounds) < 1:
            raise ValidationError("max_rounds must be positive")
        big = frozenset(int(c) for c in self.big_classes)
        if any(c < 1 for c in big):
            raise ValidationError("big_classes must contain class labels >= 1")
        object.__setattr__(self, "big_classes", big)
        object.__setattr__(self, "max_rounds", int(self.max_rounds))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class JointSolution:
    """Partition of graph nodes into components plus one label per component.

    component_of maps node -> dense component id; label_of maps component id
    -> label. Feasibility beyond id-density (connected components, no
    background/background cut) is checked against a graph via validate().
    """

    component_of: np.ndarray
    label_of: np.ndarray

    def __post_init__(self):
        comp = np.array(self.component_of, dtype=np.int64).reshape(-1)
        lab = np.array(self.label_of, dtype=np.int64).reshape(-1)
        k = lab.size
        if comp.size < 1 or k < 1:
            raise ValidationError("solution must cover at least one node")
        if comp.min() < 0 or comp.max() >= k:
            raise ValidationError("component id out of range")
        if (np.bincount(comp, minlength=k) == 0).any():
            raise ValidationError("component ids are not dense")
        if lab.min() < 0:
            raise ValidationError("labels must be nonnegative")
        comp.setflags(write=False)
        lab.setflags(write=False)
        object.__setattr__(self, "component_of", comp)
        object.__setattr__(self, "label_of", lab)

    @property
    def num_components(self) -> int:
        return self.label_of.size

    def node_labels(self) -> np.ndarray:
        return self.label_of[self.component_of]

    def validate(self, graph: RegionGraph) -> None:
        """Raise ValidationError unless this is a feasible solution for graph."""
        if self.component_of.size != graph.node_count:
            raise ValidationError("solution size does not match graph")
        if self.label_of.max() > graph.num_labels:
            raise ValidationError("label out of range for graph")
        # every component induces a single connected subgraph
        comp = self.component_of
        adj = graph.adjacency
        seen = np.zeros(graph.node_count, dtype=bool)
        for start in range(graph.node_count):
            if seen[start]:
                continue
            cid = comp[start]
            seen[start] = True
            stack = [start]
            size = 1
            while stack:
                u = stack.pop()
                for v, _ in adj[u]:
                    if not seen[v] and comp[v] == cid:
                        seen[v] = True
                        size += 1
                        stack.append(v)
            if size != int((comp == cid).sum()):
                raise ValidationError(f"component {cid} is not connected")
        labels = self.node_labels()
        eu, ev = graph.edges[:, 0], graph.edges[:, 1]
        cut = comp[eu] != comp[ev]
        bad = cut & (labels[eu] == 0) & (labels[ev] == 0)
        if bad.any():
            u, v = graph.edges[int(np.flatnonzero(bad)[0])]
            raise ValidationError(
                f"cut edge ({u}, {v}) joins two background components"
            )


@dataclass(frozen=True)
class InstanceMap:
    """Per-pixel (instance id, class label); background is instance 0, class 0."""

    instance_ids: np.ndarray
    class_labels: np.ndarray

    def __post_init__(self):
        ids = np.array(self.instance_ids, dtype=np.int64)
        cls = np.array(self.class_labels, dtype=np.int64)
        if ids.ndim != 2 or ids.shape != cls.shape:
            raise ValidationError("instance ids and class labels must share an H x W shape")
        if ids.min() < 0 or cls.min() < 0:
            raise ValidationError("instance ids and classes must be nonnegative")
        if ((ids == 0) != (cls == 0)).any():
            raise ValidationError("background pixels must have instance id 0 and class 0")
        ids.setflags(write=False)
        cls.setflags(write=False)
        object.__setattr__(self, "instance_ids", ids)
        object.__setattr__(self, "class_labels", cls)

    @property
    def height(self) -> int:
        return self.instance_ids.shape[0]

    @property
    def width(self) -> int:
        return self.instance_ids.shape[1]


def build_region_graph(spx: SuperpixelMap, semantic: ScoreGrid, edge_map: ScoreGrid) -> RegionGraph:
    """Aggregate per-pixel scores onto the superpixel adjacency graph.

    Node scores are the mean semantic score over each region's pixels. For
    every pair of 4-adjacent regions, the edge score is the mean edge-map
    value over the border pixel set: pixels of either region with a
    4-neighbor in the other region (each border pixel counted once).
    """
    if (spx.height, spx.width) != (semantic.height, semantic.width) or (
        spx.height,
        spx.width,
    ) != (edge_map.height, edge_map.width):
        raise ValidationError("superpixel map and score grids must share H x W")
    if edge_map.channels != 1:
        raise ValidationError("edge map must have exactly one channel")
    if semantic.channels < 2:
        raise ValidationError("semantic grid needs background plus at least one class channel")

    r = spx.region_of
    h, w = r.shape
    n = spx.region_count
    flat_r = r.ravel()
    sizes = np.bincount(flat_r, minlength=n).astype(np.float64)

    channels = semantic.channels
    alpha = np.empty((n, channels), dtype=np.float64)
    for c in range(channels):
        alpha[:, c] = np.bincount(flat_r, weights=semantic.values[:, :, c].ravel(), minlength=n)
    alpha /= sizes[:, None]

    flat_idx = np.arange(h * w, dtype=np.int64).reshape(h, w)
    triples = []
    for (ra, rb), (pa, pb) in (
        ((r[:, :-1], r[:, 1:]), (flat_idx[:, :-1], flat_idx[:, 1:])),
        ((r[:-1, :], r[1:, :]), (flat_idx[:-1, :], flat_idx[1:, :])),
    ):
        mask = ra != rb
        if not mask.any():
            continue
        a, b = ra[mask], rb[mask]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        # both endpoint pixels touch the border of edge (lo, hi)
        triples.append(np.stack([lo, hi, pa[mask]], axis=1))
        triples.append(np.stack([lo, hi, pb[mask]], axis=1))

    if not triples:
        edges = np.empty((0, 2), dtype=np.int64)
        scores = np.empty(0, dtype=np.float64)
        return RegionGraph(n, edges, alpha, scores)

    trip = np.unique(np.concatenate(triples), axis=0)
    edge_key = trip[:, 0] * n + trip[:, 1]
    keys, inverse = np.unique(edge_key, return_inverse=True)
    pix_vals = edge_map.values[:, :, 0].ravel()[trip[:, 2]]
    sums = np.bincount(inverse, weights=pix_vals)
    counts = np.bincount(inverse)
    edges = np.stack([keys // n, keys % n], axis=1)
    return RegionGraph(n, edges, alpha, sums / counts)


def make_pair_prior(params: SolverParams, classes: ClassSet) -> PairPrior:
    """Two-tier class-pair prior: beta_big if either class is 'big', else beta_small."""
    if not params.big_classes <= set(range(1, classes.num_labels + 1)):
        raise ValidationError("big_classes must be a subset of the instance classes")
    size = classes.num_total
    beta = np.full((size, size), params.beta_small, dtype=np.float64)
    for c in params.big_classes:
        beta[c, :] = params.beta_big
        beta[:, c] = params.beta_big
    beta[0, 0] = FORBIDDEN
    return PairPrior(beta)
