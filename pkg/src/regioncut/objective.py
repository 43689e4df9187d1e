"""Objective evaluation, feasibility checking, and instance extraction.

The joint objective scores a labeled partition: the sum of node scores for
the chosen labels plus, weighted by w, the sum of (edge score + class-pair
prior) over cut edges. The two single-modality objectives and the literal
constraint checker for raw 0/1 assignments live here as well.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, ValidationError
from .model import InstanceMap, JointSolution, PairPrior, RegionGraph, SolverParams, SuperpixelMap


@dataclass(frozen=True)
class RawAssignment:
    """Possibly-infeasible binary assignment: node-label matrix x, edge cut vector y."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=np.int64)
        y = np.array(self.y, dtype=np.int64).reshape(-1)
        if x.ndim != 2:
            raise ValidationError("x must be a node x label matrix")
        if not np.isin(x, (0, 1)).all() or not np.isin(y, (0, 1)).all():
            raise ValidationError("assignment entries must be 0 or 1")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the four feasibility checks, with a first witness per failure."""

    uniqueness_ok: bool
    cycle_ok: bool
    coupling_ok: bool
    background_ok: bool
    uniqueness_node: int | None = None
    cycle_edges: tuple | None = None
    coupling_edge: tuple | None = None
    background_edge: tuple | None = None

    @property
    def feasible(self) -> bool:
        return self.uniqueness_ok and self.cycle_ok and self.coupling_ok and self.background_ok


def assignment_from_solution(graph: RegionGraph, solution: JointSolution) -> RawAssignment:
    """Derive the (x, y) encoding of a solution: one-hot labels, cut indicator."""
    labels = solution.node_labels()
    x = np.zeros((graph.node_count, graph.num_labels + 1), dtype=np.int64)
    x[np.arange(graph.node_count), labels] = 1
    comp = solution.component_of
    y = (comp[graph.edges[:, 0]] != comp[graph.edges[:, 1]]).astype(np.int64)
    return RawAssignment(x, y)


def joint_objective(
    graph: RegionGraph, prior: PairPrior, params: SolverParams, solution: JointSolution
) -> float:
    """Score of a labeled partition under the joint objective.

    Raises InfeasibleError if a cut edge joins two background components
    (the FORBIDDEN prior entry would otherwise enter the sum).
    """
    if prior.num_labels != graph.num_labels:
        raise ValidationError("prior size does not match graph labels")
    if solution.component_of.size != graph.node_count:
        raise ValidationError("solution size does not match graph")
    labels = solution.node_labels()
    if labels.max() > graph.num_labels:
        raise ValidationError("label out of range for graph")
    unary = float(graph.node_scores[np.arange(graph.node_count), labels].sum())
    eu, ev = graph.edges[:, 0], graph.edges[:, 1]
    comp = solution.component_of
    cut = comp[eu] != comp[ev]
    lu, lv = labels[eu[cut]], labels[ev[cut]]
    bad = (lu == 0) & (lv == 0)
    if bad.any():
        idx = int(np.flatnonzero(cut)[np.flatnonzero(bad)[0]])
        u, v = graph.edges[idx]
        raise InfeasibleError(f"cut edge ({u}, {v}) joins two background components")
    pairwise = float((graph.edge_scores[cut] + prior.beta[lu, lv]).sum())
    return unary + params.w * pairwise


def _uncut_components(graph: RegionGraph, y: np.ndarray) -> np.ndarray:
    """Connected components of the subgraph of uncut edges (union-find)."""
    parent = np.arange(graph.node_count)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (u, v), cut in zip(graph.edges, y):
        if not cut:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    roots = np.array([find(u) for u in range(graph.node_count)])
    _, dense = np.unique(roots, return_inverse=True)
    return dense


def _cycle_witness(graph: RegionGraph, y: np.ndarray, edge_idx: int) -> tuple:
    """A cycle with exactly one cut edge: uncut path between the endpoints plus the edge."""
    u0, v0 = (int(x) for x in graph.edges[edge_idx])
    adj = [[] for _ in range(graph.node_count)]
    for i, (u, v) in enumerate(graph.edges):
        if not y[i]:
            adj[u].append(int(v))
            adj[v].append(int(u))
    prev = {u0: None}
    queue = [u0]
    while queue:
        node = queue.pop(0)
        if node == v0:
            break
        for nxt in adj[node]:
            if nxt not in prev:
                prev[nxt] = node
                queue.append(nxt)
    path = []
    node = v0
    while prev[node] is not None:
        path.append((prev[node], node))
        node = prev[node]
    path.reverse()
    return tuple(path) + ((u0, v0),)


def check_feasibility(graph: RegionGraph, assignment: RawAssignment) -> FeasibilityReport:
    """Check a raw (x, y) assignment against the joint-problem constraints.

    uniqueness: each node selects exactly one label. coupling: an uncut edge
    forces identical label rows on its endpoints. cycle: no cycle contains
    exactly one cut edge, checked via connected components of the uncut
    subgraph. background: no cut edge joins two background-labeled nodes.
    """
    x, y = assignment.x, assignment.y
    if x.shape[0] != graph.node_count or x.shape[1] != graph.num_labels + 1:
        raise ValidationError("x shape does not match graph")
    if y.shape[0] != graph.edge_count:
        raise ValidationError("y length does not match graph")

    row_sums = x.sum(axis=1)
    uniqueness_ok = bool((row_sums == 1).all())
    uniqueness_node = None if uniqueness_ok else int(np.flatnonzero(row_sums != 1)[0])

    coupling_ok = True
    coupling_edge = None
    for i, (u, v) in enumerate(graph.edges):
        if (np.abs(x[u] - x[v]) > y[i]).any():
            coupling_ok = False
            coupling_edge = (int(u), int(v))
            break

    comp = _uncut_components(graph, y)
    eu, ev = graph.edges[:, 0], graph.edges[:, 1]
    bad_cut = (y == 1) & (comp[eu] == comp[ev])
    cycle_ok = not bad_cut.any()
    cycle_edges = None
    if not cycle_ok:
        cycle_edges = _cycle_witness(graph, y, int(np.flatnonzero(bad_cut)[0]))

    bg_cut = (y == 1) & (x[eu, 0] == 1) & (x[ev, 0] == 1)
    background_ok = not bg_cut.any()
    background_edge = None
    if not background_ok:
        u, v = graph.edges[int(np.flatnonzero(bg_cut)[0])]
        background_edge = (int(u), int(v))

    return FeasibilityReport(
        uniqueness_ok,
        cycle_ok,
        coupling_ok,
        background_ok,
        uniqueness_node,
        cycle_edges,
        coupling_edge,
        background_edge,
    )


def crf_objective(graph: RegionGraph, prior: PairPrior, labeling: np.ndarray) -> float:
    """Node-labeling score: unary sum plus (edge score + prior) on label-changing edges."""
    labels = np.asarray(labeling, dtype=np.int64).reshape(-1)
    if labels.size != graph.node_count:
        raise ValidationError("labeling size does not match graph")
    if labels.min() < 0 or labels.max() > graph.num_labels:
        raise ValidationError("label out of range")
    unary = float(graph.node_scores[np.arange(graph.node_count), labels].sum())
    eu, ev = graph.edges[:, 0], graph.edges[:, 1]
    diff = labels[eu] != labels[ev]
    pairwise = float(
        (graph.edge_scores[diff] + prior.beta[labels[eu[diff]], labels[ev[diff]]]).sum()
    )
    return unary + pairwise


def multicut_objective(graph: RegionGraph, theta: np.ndarray, y: np.ndarray) -> float:
    """Total theta score over cut edges; rejects cycle-infeasible y with a witness."""
    th = np.asarray(theta, dtype=np.float64).reshape(-1)
    yv = np.asarray(y, dtype=np.int64).reshape(-1)
    if th.size != graph.edge_count or yv.size != graph.edge_count:
        raise ValidationError("theta and y must have one entry per edge")
    if not np.isin(yv, (0, 1)).all():
        raise ValidationError("y entries must be 0 or 1")
    comp = _uncut_components(graph, yv)
    eu, ev = graph.edges[:, 0], graph.edges[:, 1]
    bad = (yv == 1) & (comp[eu] == comp[ev])
    if bad.any():
        witness = _cycle_witness(graph, yv, int(np.flatnonzero(bad)[0]))
        raise InfeasibleError(f"y is not a valid multicut; violated cycle {witness}")
    return float(th[yv == 1].sum())


def extract_instances(spx: SuperpixelMap, solution: JointSolution) -> InstanceMap:
    """Rasterize a solution: background components collapse to instance 0,
    non-background components get ids 1..k ordered by smallest pixel index."""
    if solution.component_of.size != spx.region_count:
        raise ValidationError("solution does not match the superpixel map")
    comp_of_region = solution.component_of
    labels = solution.label_of

    flat = spx.region_of.ravel()
    first_pixel_of_region = np.full(spx.region_count, flat.size, dtype=np.int64)
    np.minimum.at(first_pixel_of_region, flat, np.arange(flat.size))
    k = solution.num_components
    first_pixel_of_comp = np.full(k, flat.size, dtype=np.int64)
    np.minimum.at(first_pixel_of_comp, comp_of_region, first_pixel_of_region)

    instance_id = np.zeros(k, dtype=np.int64)
    fg = np.flatnonzero(labels != 0)
    order = fg[np.argsort(first_pixel_of_comp[fg])]
    instance_id[order] = np.arange(1, order.size + 1)

    comp_map = comp_of_region[spx.region_of]
    ids = instance_id[comp_map]
    cls = np.where(ids > 0, labels[comp_map], 0)
    return InstanceMap(ids, cls)
