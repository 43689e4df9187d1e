"""Solvers for the joint labeling + partitioning problem.

Four routes with very different cost/quality trade-offs:

* oracle_exact      -- exhaustive enumeration, exact, tiny instances only
* crf_solve         -- labeling-only coordinate ascent (ICM), no partitioning
* multicut_greedy   -- partitioning-only greedy agglomeration for fixed edge scores
* joint_local_search -- the main deterministic best-improvement local search
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .model import JointSolution, PairPrior, RegionGraph, SolverParams
from .objective import joint_objective

# Gains at or below this threshold are treated as zero so that floating-point
# cancellation noise cannot keep the search alive.
_MIN_GAIN = 1e-12

# Length cap for one escape sequence at a local optimum.
_ESCAPE_CAP = 64

_ORACLE_MAX_NODES = 9
_ORACLE_MAX_CLASSES = 3


@dataclass(frozen=True)
class SolveResult:
    """A solver outcome; objective is always recomputed from the solution."""

    solution: JointSolution
    objective: float
    rounds: int
    moves_applied: int
    wall_time: float
    objective_trace: tuple = field(default=())


def components_from_labeling(graph: RegionGraph, labels: np.ndarray):
    """Connected components of the subgraph keeping only equal-label edges.

    Returns (component_of, component_labels) with dense first-appearance ids.
    """
    parent = list(range(graph.node_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in graph.edges:
        if labels[u] == labels[v]:
            ru, rv = find(int(u)), find(int(v))
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    roots = np.array([find(u) for u in range(graph.node_count)])
    comp_of, comp_labels = _canonical_components(roots, labels)
    return comp_of, comp_labels


def _canonical_components(raw_comp: np.ndarray, node_labels: np.ndarray):
    """Relabel component ids densely in order of first appearance by node id."""
    uniq, first, inverse = np.unique(raw_comp, return_index=True, return_inverse=True)
    rank = np.empty(uniq.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.size)
    comp_of = rank[inverse]
    comp_labels = np.empty(uniq.size, dtype=np.int64)
    comp_labels[comp_of] = np.asarray(node_labels, dtype=np.int64)
    return comp_of, comp_labels


def crf_solve(graph: RegionGraph, prior: PairPrior) -> np.ndarray:
    """MAP labeling by iterated conditional modes.

    Starts from the per-node argmax of the node scores (ties to the smaller
    label), then sweeps nodes in id order setting each to its conditional
    argmax until a full sweep changes nothing. Deterministic.
    """
    if prior.num_labels != graph.num_labels:
        raise ValidationError("prior size does not match graph labels")
    alpha = graph.node_scores
    beta_safe = prior.beta_safe
    diag = np.diagonal(beta_safe).copy()
    adj = graph.adjacency
    labels = np.argmax(alpha, axis=1).astype(np.int64)
    for _ in range(200):  # safety cap; ICM converges in a handful of sweeps
        changed = False
        for u in range(graph.node_count):
            scores = alpha[u].copy()
            for v, b in adj[u]:
                lv = labels[v]
                scores += b + beta_safe[:, lv]
                # equal labels score 0, not b + beta[lv, lv]
                scores[lv] -= b + diag[lv]
            best = int(np.argmax(scores))
            if best != labels[u]:
                labels[u] = best
                changed = True
        if not changed:
            break
    return labels


def multicut_greedy(graph: RegionGraph, theta: np.ndarray) -> np.ndarray:
    """Greedy agglomeration maximizing the total score of cut edges.

    Starts from singletons (everything cut) and repeatedly merges the
    component pair with the most negative accumulated inter-component score;
    each merge removes that negative contribution from the objective. Stops
    when all pair scores are nonnegative. Ties pick the pair with the
    smallest (min node id, min node id) key. Returns dense component ids in
    first-appearance order.
    """
    th = np.asarray(theta, dtype=np.float64).reshape(-1)
    if th.size != graph.edge_count:
        raise ValidationError("theta must have one entry per edge")
    # rep == smallest node id of the component
    members = {u: [u] for u in range(graph.node_count)}
    link = {u: {} for u in range(graph.node_count)}
    for (u, v), t in zip(graph.edges, th):
        link[int(u)][int(v)] = link[int(u)].get(int(v), 0.0) + float(t)
        link[int(v)][int(u)] = link[int(v)].get(int(u), 0.0) + float(t)

    while True:
        best_key = None
        best_val = 0.0
        for a, nbrs in link.items():
            for b, val in nbrs.items():
                if a >= b or val >= 0.0:
                    continue
                if best_key is None or val < best_val or (val == best_val and (a, b) < best_key):
                    best_val = val
                    best_key = (a, b)
        if best_key is None:
            break
        a, b = best_key
        members[a].extend(members.pop(b))
        del link[a][b]
        for c, val in link.pop(b).items():
            if c == a:
                continue
            link[c].pop(b)
            link[a][c] = link[a].get(c, 0.0) + val
            link[c][a] = link[c].get(a, 0.0) + val

    comp_of = np.empty(graph.node_count, dtype=np.int64)
    for rep, nodes in members.items():
        comp_of[nodes] = rep
    comp, _ = _canonical_components(comp_of, np.zeros(graph.node_count, dtype=np.int64))
    return comp


# ---------------------------------------------------------------------------
# exact oracle


def _restricted_growth_strings(n: int):
    """All dense first-appearance partitions of range(n), lexicographically."""
    a = [0] * n

    def rec(i, mx):
        if i == n:
            yield tuple(a)
            return
        for v in range(mx + 2):
            a[i] = v
            yield from rec(i + 1, max(mx, v))

    yield from rec(1, 0)


def _blocks_connected(comp, neighbor_masks, k) -> bool:
    block = [0] * k
    for u, c in enumerate(comp):
        block[c] |= 1 << u
    for mask in block:
        start = mask & -mask
        reach = start
        while True:
            frontier = reach
            grow = 0
            while frontier:
                low = frontier & -frontier
                grow |= neighbor_masks[low.bit_length() - 1]
                frontier ^= low
            new = (reach | grow) & mask
            if new == reach:
                break
            reach = new
        if reach != mask:
            return False
    return True


def _labelings(k: int, num_labels_total: int, cache={}):
    key = (k, num_labels_total)
    if key not in cache:
        cache[key] = np.array(
            list(itertools.product(range(num_labels_total), repeat=k)), dtype=np.int64
        )
    return cache[key]


def oracle_exact(graph: RegionGraph, prior: PairPrior, params: SolverParams) -> SolveResult:
    """Exact maximization by enumerating connected partitions and labelings.

    Every partition of the nodes into connected blocks is enumerated as a
    restricted-growth string; for each, all per-component labelings are
    scored, skipping assignments that cut a background/background edge. Ties
    break toward the lexicographically smallest (component_of, label_of).
    """
    n = graph.node_count
    num_total = graph.num_labels + 1
    if n > _ORACLE_MAX_NODES or graph.num_labels > _ORACLE_MAX_CLASSES:
        raise ValidationError(
            f"instance too large for exact enumeration "
            f"(|V| <= {_ORACLE_MAX_NODES}, classes <= {_ORACLE_MAX_CLASSES})"
        )
    if prior.num_labels != graph.num_labels:
        raise ValidationError("prior size does not match graph labels")
    start = time.perf_counter()

    neighbor_masks = [0] * n
    for u, v in graph.edges:
        neighbor_masks[u] |= 1 << int(v)
        neighbor_masks[v] |= 1 << int(u)

    partitions = []
    for comp in _restricted_growth_strings(n):
        k = max(comp) + 1
        if _blocks_connected(comp, neighbor_masks, k):
            partitions.append((comp, k))

    alpha = graph.node_scores
    beta_safe = prior.beta_safe
    w = params.w
    by_k = {}
    for ordinal, (comp, k) in enumerate(partitions):
        by_k.setdefault(k, []).append((ordinal, comp))

    results = [None] * len(partitions)
    for k, group in by_k.items():
        comp_arr = np.array([c for _, c in group], dtype=np.int64)
        p_count = comp_arr.shape[0]
        lab = _labelings(k, num_total)
        t_count = lab.shape[0]

        unary = np.zeros((p_count, k, num_total))
        rows = np.arange(p_count)
        for u in range(n):
            unary[rows, comp_arr[:, u], :] += alpha[u]

        n_pair = np.zeros((p_count, k, k))
        s_pair = np.zeros((p_count, k, k))
        for (u, v), b in zip(graph.edges, graph.edge_scores):
            cu, cv = comp_arr[:, u], comp_arr[:, v]
            mask = cu != cv
            if not mask.any():
                continue
            lo = np.minimum(cu, cv)[mask]
            hi = np.maximum(cu, cv)[mask]
            n_pair[rows[mask], lo, hi] += 1.0
            s_pair[rows[mask], lo, hi] += b

        obj = np.zeros((p_count, t_count))
        for c in range(k):
            obj += unary[:, c, :][:, lab[:, c]]
        infeasible = np.zeros((p_count, t_count), dtype=bool)
        for c in range(k):
            for c2 in range(c + 1, k):
                counts = n_pair[:, c, c2]
                if not counts.any():
                    continue
                bvals = beta_safe[lab[:, c], lab[:, c2]]
                cut_mask = counts[:, None] > 0
                obj += np.where(
                    cut_mask, w * (s_pair[:, c, c2][:, None] + counts[:, None] * bvals[None, :]), 0.0
                )
                infeasible |= cut_mask & ((lab[:, c] == 0) & (lab[:, c2] == 0))[None, :]
        obj[infeasible] = -np.inf

        for row, (ordinal, _) in enumerate(group):
            t_best = int(np.argmax(obj[row]))
            results[ordinal] = (float(obj[row, t_best]), t_best)

    best_ordinal = None
    best_val = -np.inf
    for ordinal, (val, _) in enumerate(results):
        if val > best_val:
            best_val = val
            best_ordinal = ordinal
    if best_ordinal is None or not np.isfinite(best_val):
        raise ValidationError("no feasible solution found")

    comp, k = partitions[best_ordinal]
    labels = _labelings(k, num_total)[results[best_ordinal][1]]
    solution = JointSolution(np.array(comp, dtype=np.int64), labels)
    solution.validate(graph)
    objective = joint_objective(graph, prior, params, solution)
    return SolveResult(
        solution, objective, rounds=len(partitions), moves_applied=0,
        wall_time=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# joint local search


class _SearchState:
    """Mutable partition state with the per-round move scan."""

    def __init__(self, graph, prior, params):
        self.graph = graph
        self.prior = prior
        self.params = params
        self.alpha = graph.node_scores
        self.eu = graph.edges[:, 0]
        self.ev = graph.edges[:, 1]
        self.b = graph.edge_scores
        self.beta = prior.beta
        self.beta_safe = prior.beta_safe
        self.adj = graph.adjacency
        self.num_total = graph.num_labels + 1

    def set_solution(self, comp_of, comp_labels):
        self.comp_of = comp_of.copy()
        self.comp_labels = comp_labels.copy()

    def scan(self, m3_rng, floor=_MIN_GAIN, relabel_locked=None, relocate_locked=None):
        """Best admissible move with gain above floor: (gain, type, payload) or None.

        The lock arrays implement the escape-pass rule that a node is
        relocated (M3/M4) or swept up in a relabel (M1) at most once.
        """
        comp_of = self.comp_of
        comp_labels = self.comp_labels
        lab_node = comp_labels[comp_of]
        k = comp_labels.size
        w = self.params.w
        cu = comp_of[self.eu]
        cv = comp_of[self.ev]
        cut = cu != cv

        best_gain = floor
        best = None

        # M1: relabel one component
        unary = np.zeros((k, self.num_total))
        np.add.at(unary, comp_of, self.alpha)
        ncount = np.zeros((k, self.num_total))
        np.add.at(ncount, (cu[cut], lab_node[self.ev[cut]]), 1.0)
        np.add.at(ncount, (cv[cut], lab_node[self.eu[cut]]), 1.0)
        pair = ncount @ self.beta_safe.T
        rows = np.arange(k)
        gains = (unary - unary[rows, comp_labels][:, None]) + w * (
            pair - pair[rows, comp_labels][:, None]
        )
        gains[rows, comp_labels] = -np.inf
        gains[ncount[:, 0] > 0, 0] = -np.inf  # would cut background against background
        if relabel_locked is not None:
            locked = np.bincount(comp_of, weights=relabel_locked, minlength=k) > 0
            gains[locked, :] = -np.inf
        flat = int(np.argmax(gains))
        if gains.ravel()[flat] > best_gain:
            best_gain = float(gains.ravel()[flat])
            best = (best_gain, 0, (flat // self.num_total, flat % self.num_total))

        # M2: merge two adjacent same-label components
        same = cut & (lab_node[self.eu] == lab_node[self.ev])
        if same.any():
            lo = np.minimum(cu[same], cv[same])
            hi = np.maximum(cu[same], cv[same])
            keys, inverse = np.unique(lo * k + hi, return_inverse=True)
            diag = self.beta[lab_node[self.eu[same]], lab_node[self.eu[same]]]
            sums = np.bincount(inverse, weights=self.b[same] + diag)
            merge_gains = -w * sums
            i = int(np.argmax(merge_gains))
            if merge_gains[i] > best_gain:
                best_gain = float(merge_gains[i])
                best = (best_gain, 1, (int(keys[i] // k), int(keys[i] % k)))

        # M3: move a boundary node into an adjacent component
        if cut.any():
            cand = np.unique(
                np.concatenate(
                    [
                        np.stack([self.eu[cut], cv[cut]], axis=1),
                        np.stack([self.ev[cut], cu[cut]], axis=1),
                    ]
                ),
                axis=0,
            )
            if m3_rng is not None:
                cand = cand[m3_rng.permutation(cand.shape[0])]
            for u, dest in cand:
                u = int(u)
                if relocate_locked is not None and relocate_locked[u]:
                    continue
                dest = int(dest)
                src = int(comp_of[u])
                l_src = int(comp_labels[src])
                l_dst = int(comp_labels[dest])
                if l_dst == 0:
                    blocked = False
                    for v, _ in self.adj[u]:
                        if lab_node[v] == 0 and comp_of[v] != dest:
                            blocked = True
                            break
                    if blocked:
                        continue
                gain = self.alpha[u, l_dst] - self.alpha[u, l_src]
                acc = 0.0
                for v, bv in self.adj[u]:
                    cw = comp_of[v]
                    if cw == dest:
                        acc -= bv + self.beta[l_src, l_dst]
                    elif cw == src:
                        acc += bv + self.beta[l_dst, l_src]
                    else:
                        lv = lab_node[v]
                        acc += self.beta[l_dst, lv] - self.beta[l_src, lv]
                gain += w * acc
                if gain > best_gain:
                    best_gain = float(gain)
                    best = (best_gain, 2, (u, dest))

        # M4: isolate a node as a new component with its best label
        sizes = np.bincount(comp_of, minlength=k)
        n = self.graph.node_count
        sum_b_in = np.bincount(self.eu[~cut], weights=self.b[~cut], minlength=n)
        sum_b_in += np.bincount(self.ev[~cut], weights=self.b[~cut], minlength=n)
        deg_in = np.bincount(self.eu[~cut], minlength=n).astype(np.float64)
        deg_in += np.bincount(self.ev[~cut], minlength=n)
        cnt_out = np.zeros((n, self.num_total))
        np.add.at(cnt_out, (self.eu[cut], lab_node[self.ev[cut]]), 1.0)
        np.add.at(cnt_out, (self.ev[cut], lab_node[self.eu[cut]]), 1.0)
        nb0 = np.bincount(self.eu[lab_node[self.ev] == 0], minlength=n)
        nb0 += np.bincount(self.ev[lab_node[self.eu] == 0], minlength=n)

        m_out = cnt_out @ self.beta_safe.T
        nodes = np.arange(n)
        iso = (
            (self.alpha - self.alpha[nodes, lab_node][:, None])
            + w
            * (
                sum_b_in[:, None]
                + deg_in[:, None] * self.beta_safe[:, lab_node].T
                + m_out
                - m_out[nodes, lab_node][:, None]
            )
        )
        iso[sizes[comp_of] == 1, :] = -np.inf
        iso[nb0 > 0, 0] = -np.inf
        if relocate_locked is not None:
            iso[relocate_locked, :] = -np.inf
        flat = int(np.argmax(iso))
        if iso.ravel()[flat] > best_gain:
            best_gain = float(iso.ravel()[flat])
            best = (best_gain, 3, (flat // self.num_total, flat % self.num_total))

        return best

    def apply(self, move_type, payload):
        comp_of = self.comp_of
        comp_labels = list(self.comp_labels)
        if move_type == 0:  # relabel
            comp, label = payload
            comp_labels[comp] = label
        elif move_type == 1:  # merge
            keep, drop = payload
            comp_of[comp_of == drop] = keep
        elif move_type == 2:  # move node
            u, dest = payload
            src = int(comp_of[u])
            comp_of[u] = dest
            self._split_if_needed(comp_of, comp_labels, src)
        else:  # isolate
            u, label = payload
            src = int(comp_of[u])
            comp_of[u] = len(comp_labels)
            comp_labels.append(label)
            self._split_if_needed(comp_of, comp_labels, src)
        node_labels = np.array(comp_labels, dtype=np.int64)[comp_of]
        self.comp_of, self.comp_labels = _canonical_components(comp_of, node_labels)

    def _split_if_needed(self, comp_of, comp_labels, src):
        """After removing a node, split a disconnected donor into its parts."""
        nodes = np.flatnonzero(comp_of == src)
        if nodes.size <= 1:
            return
        node_set = set(int(x) for x in nodes)
        unvisited = set(node_set)
        first = True
        while unvisited:
            seed = min(unvisited)
            part = {seed}
            stack = [seed]
            unvisited.discard(seed)
            while stack:
                x = stack.pop()
                for v, _ in self.adj[x]:
                    if v in unvisited:
                        unvisited.discard(v)
                        part.add(v)
                        stack.append(v)
            if first:
                first = False  # first part keeps the donor id and label
            else:
                fresh = len(comp_labels)
                comp_labels.append(comp_labels[src])
                for x in part:
                    comp_of[x] = fresh


def _escape_pass(state: _SearchState, rng) -> float | None:
    """Kernighan-Lin style escape from a local optimum.

    Chains moves whose gains may be negative, relocating or relabeling each
    node at most once, and keeps the best prefix of the chain. Returns the
    committed (positive) gain, or None with the state restored if no prefix
    improves.
    """
    start = (state.comp_of.copy(), state.comp_labels.copy())
    n = state.graph.node_count
    relabel_locked = np.zeros(n, dtype=bool)
    relocate_locked = np.zeros(n, dtype=bool)
    cumulative = 0.0
    best_cum = 0.0
    best_state = None
    for _ in range(_ESCAPE_CAP):
        move = state.scan(
            rng, floor=-np.inf,
            relabel_locked=relabel_locked, relocate_locked=relocate_locked,
        )
        if move is None:
            break
        gain, move_type, payload = move
        if move_type == 0:
            relabel_locked[state.comp_of == payload[0]] = True
        elif move_type in (2, 3):
            relocate_locked[payload[0]] = True
        state.apply(move_type, payload)
        cumulative += gain
        if cumulative > best_cum + _MIN_GAIN:
            best_cum = cumulative
            best_state = (state.comp_of.copy(), state.comp_labels.copy())
    if best_state is not None:
        state.set_solution(*best_state)
        return best_cum
    state.set_solution(*start)
    return None


def joint_local_search(
    graph: RegionGraph,
    prior: PairPrior,
    params: SolverParams,
    *,
    restarts: int = 1,
    cross_check: bool = False,
) -> SolveResult:
    """Deterministic best-improvement local search over labeled partitions.

    Initialization labels nodes with crf_solve and cuts exactly the label
    boundaries. Each round scans four move families in fixed order (relabel
    component, merge adjacent same-label components, move boundary node,
    isolate node) and applies the single move with the largest positive gain;
    ties go to the earliest move in scan order. At a local optimum a bounded
    escape chain of possibly-downhill moves is attempted and its best prefix
    committed as one compound move; the search stops when neither a single
    move nor an escape improves, or at params.max_rounds. With restarts > 1,
    restart r > 0 shuffles the move-node scan order with a (params.seed, r)
    seeded RNG and the best-objective restart wins (ties to the lowest
    restart index).

    With cross_check=True the incrementally tracked objective is verified
    against a full recomputation after every committed move (1e-9 relative).
    """
    if restarts < 1:
        raise ValidationError("restarts must be >= 1")
    start = time.perf_counter()
    init_labels = crf_solve(graph, prior)
    comp0, labels0 = components_from_labeling(graph, init_labels)

    best_result = None
    for restart in range(restarts):
        state = _SearchState(graph, prior, params)
        state.set_solution(comp0, labels0)
        rng = None if restart == 0 else np.random.default_rng((params.seed, restart))
        objective = joint_objective(
            graph, prior, params, JointSolution(state.comp_of, state.comp_labels)
        )
        trace = []
        rounds = 0
        moves = 0
        while rounds < params.max_rounds:
            rounds += 1
            move = state.scan(rng)
            if move is not None:
                gain, move_type, payload = move
                state.apply(move_type, payload)
            else:
                gain = _escape_pass(state, rng)
                if gain is None:
                    break
            objective += gain
            moves += 1
            trace.append(objective)
            if cross_check:
                full = joint_objective(
                    graph, prior, params, JointSolution(state.comp_of, state.comp_labels)
                )
                if abs(full - objective) > 1e-9 * max(1.0, abs(full)):
                    raise AssertionError(
                        f"incremental objective drifted: {objective} vs {full}"
                    )
        solution = JointSolution(state.comp_of, state.comp_labels)
        solution.validate(graph)
        final = joint_objective(graph, prior, params, solution)
        if best_result is None or final > best_result.objective:
            best_result = SolveResult(
                solution, final, rounds, moves, 0.0, tuple(trace)
            )
    return SolveResult(
        best_result.solution,
        best_result.objective,
        best_result.rounds,
        best_result.moves_applied,
        time.perf_counter() - start,
        best_result.objective_trace,
    )


# ---------------------------------------------------------------------------
# uniform entry point used by the CLI


def solve_instance(
    graph: RegionGraph,
    prior: PairPrior,
    params: SolverParams,
    method: str = "local",
    restarts: int = 1,
) -> SolveResult:
    """Solve with one of: local, oracle, crf, greedy.

    crf keeps the ICM labeling and cuts exactly the label boundaries. greedy
    refines the crf labeling by greedily partitioning each non-background
    label region with the diagonal prior added to its edge scores;
    background regions stay whole so no background/background cut can arise.
    """
    if method == "local":
        return joint_local_search(graph, prior, params, restarts=restarts)
    if method == "oracle":
        return oracle_exact(graph, prior, params)
    start = time.perf_counter()
    labels = crf_solve(graph, prior)
    comp_of, comp_labels = components_from_labeling(graph, labels)
    if method == "crf":
        solution = JointSolution(comp_of, comp_labels)
    elif method == "greedy":
        comp_of = comp_of.copy()
        next_id = comp_labels.size
        new_labels = list(comp_labels)
        for cid in range(comp_labels.size):
            if comp_labels[cid] == 0:
                continue
            nodes = np.flatnonzero(comp_of == cid)
            if nodes.size < 2:
                continue
            sub_index = {int(u): i for i, u in enumerate(nodes)}
            sub_edges = []
            sub_theta = []
            lab = int(comp_labels[cid])
            for i, (u, v) in enumerate(graph.edges):
                if int(u) in sub_index and int(v) in sub_index:
                    sub_edges.append((sub_index[int(u)], sub_index[int(v)]))
                    sub_theta.append(graph.edge_scores[i] + prior.beta[lab, lab])
            sub = RegionGraph(
                nodes.size,
                np.array(sub_edges, dtype=np.int64).reshape(-1, 2),
                np.zeros((nodes.size, graph.num_labels + 1)),
                np.array(sub_theta),
            )
            parts = multicut_greedy(sub, sub.edge_scores)
            for local_u, part in enumerate(parts):
                if part > 0:
                    comp_of[nodes[local_u]] = next_id + part - 1
            for _ in range(int(parts.max())):
                new_labels.append(lab)
            next_id += int(parts.max())
        node_labels = np.array(new_labels, dtype=np.int64)[comp_of]
        comp_of, comp_labels = _canonical_components(comp_of, node_labels)
        solution = JointSolution(comp_of, comp_labels)
    else:
        raise ValidationError(f"unknown solver {method!r}")
    solution.validate(graph)
    objective = joint_objective(graph, prior, params, solution)
    return SolveResult(solution, objective, 0, 0, time.perf_counter() - start)
