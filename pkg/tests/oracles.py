"""Independent brute-force oracles used to verify the library implementations.

Everything here is written from the problem definitions directly (exhaustive
enumeration, literal constraint checks, pixel-set enumeration) and stays
independent of the code paths it verifies.
"""
from collections import Counter
from itertools import product

import numpy as np

import regioncut as rc


def random_region_graph(rng, n, num_labels, density):
    """Connected random graph: random spanning tree plus density-sampled edges."""
    edges = set()
    for v in range(1, n):
        edges.add((int(rng.integers(0, v)), v))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                edges.add((u, v))
    edges = sorted(edges)
    node_scores = rng.uniform(-2.0, 2.0, (n, num_labels + 1))
    edge_scores = rng.uniform(-2.0, 2.0, len(edges))
    return rc.RegionGraph(n, np.array(edges), node_scores, edge_scores)


def set_partitions(items):
    """All partitions of a sequence into nonempty blocks (no connectivity filter)."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [partition[i] + [head]] + partition[i + 1 :]
        yield [[head]] + partition


def _block_connected(block, edges):
    block = set(block)
    if len(block) <= 1:
        return True
    adj = {u: set() for u in block}
    for u, v in edges:
        if u in block and v in block:
            adj[u].add(v)
            adj[v].add(u)
    seen = {next(iter(block))}
    stack = list(seen)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == block


def connected_partitions(n, edges):
    """Partitions of range(n) whose blocks all induce connected subgraphs."""
    edge_list = [(int(u), int(v)) for u, v in edges]
    for partition in set_partitions(range(n)):
        if all(_block_connected(block, edge_list) for block in partition):
            yield partition


def partition_to_solution(partition, labels_per_block):
    n = sum(len(block) for block in partition)
    comp_of = np.empty(n, dtype=np.int64)
    order = sorted(range(len(partition)), key=lambda i: min(partition[i]))
    label_of = np.empty(len(partition), dtype=np.int64)
    for new_id, block_idx in enumerate(order):
        for u in partition[block_idx]:
            comp_of[u] = new_id
        label_of[new_id] = labels_per_block[block_idx]
    return rc.JointSolution(comp_of, label_of)


def all_cycles_edge_masks(graph):
    """Every simple cycle of the graph as a boolean edge mask.

    A nonempty edge subset is a simple cycle iff every touched vertex has
    degree exactly 2 and the subset is connected.
    """
    m = graph.edge_count
    edges = [(int(u), int(v)) for u, v in graph.edges]
    masks = []
    for bits in range(1, 1 << m):
        chosen = [i for i in range(m) if bits >> i & 1]
        if len(chosen) < 3:
            continue
        degree = Counter()
        for i in chosen:
            u, v = edges[i]
            degree[u] += 1
            degree[v] += 1
        if any(d != 2 for d in degree.values()):
            continue
        touched = set(degree)
        adj = {u: [] for u in touched}
        for i in chosen:
            u, v = edges[i]
            adj[u].append(v)
            adj[v].append(u)
        seen = {min(touched)}
        stack = [min(touched)]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if seen == touched:
            mask = np.zeros(m, dtype=bool)
            mask[chosen] = True
            masks.append(mask)
    return masks


def cycle_check_literal(graph, y):
    """Literal cycle constraints: no cycle may contain exactly one cut edge."""
    y = np.asarray(y)
    for mask in all_cycles_edge_masks(graph):
        if int(y[mask].sum()) == 1:
            return False
    return True


def literal_joint_objective(graph, prior, params, x, y):
    """Term-by-term evaluation of the joint objective from raw (x, y).

    Skips products with a zero coefficient so the FORBIDDEN entry is only
    touched when it actually enters the sum (yielding -inf).
    """
    total = 0.0
    num_total = graph.num_labels + 1
    for u in range(graph.node_count):
        for l in range(num_total):
            if x[u, l]:
                total += graph.node_scores[u, l]
    for e, (u, v) in enumerate(graph.edges):
        if not y[e]:
            continue
        for l in range(num_total):
            for l2 in range(num_total):
                if x[u, l] and x[v, l2]:
                    total += params.w * (graph.edge_scores[e] + prior.beta[l, l2])
    return total


def exhaustive_joint_maximum(graph, prior, params):
    """Maximum of the joint objective over all raw assignments passing the
    literal uniqueness, cycle, and coupling checks (exhaustive x and y)."""
    n, m = graph.node_count, graph.edge_count
    num_total = graph.num_labels + 1
    y_rows = np.array(list(product((0, 1), repeat=m)), dtype=np.int64).reshape(-1, m)
    cycle_ok = np.ones(y_rows.shape[0], dtype=bool)
    for mask in all_cycles_edge_masks(graph):
        cycle_ok &= y_rows[:, mask].sum(axis=1) != 1
    eu = graph.edges[:, 0]
    ev = graph.edges[:, 1]
    best = -np.inf
    for labels in product(range(num_total), repeat=n):
        lab = np.array(labels)
        forced = lab[eu] != lab[ev]  # coupling forces these edges cut
        valid = cycle_ok & (y_rows[:, forced] == 1).all(axis=1)
        if not valid.any():
            continue
        unary = float(graph.node_scores[np.arange(n), lab].sum())
        theta = graph.edge_scores + prior.beta[lab[eu], lab[ev]]
        pair = np.where(y_rows[valid] == 1, theta[None, :], 0.0).sum(axis=1)
        best = max(best, unary + params.w * float(pair.max()))
    return best


def exhaustive_multicut_maximum(graph, theta):
    """Maximum multicut score via explicit partition enumeration."""
    theta = np.asarray(theta)
    best = -np.inf
    for partition in connected_partitions(graph.node_count, graph.edges):
        block_of = {}
        for i, block in enumerate(partition):
            for u in block:
                block_of[u] = i
        y = np.array(
            [block_of[int(u)] != block_of[int(v)] for u, v in graph.edges], dtype=bool
        )
        best = max(best, float(theta[y].sum()))
    return best


def exhaustive_crf_maximum(graph, prior):
    """Maximum labeling score by enumerating every labeling literally."""
    num_total = graph.num_labels + 1
    best = -np.inf
    for labels in product(range(num_total), repeat=graph.node_count):
        total = sum(graph.node_scores[u, l] for u, l in enumerate(labels))
        for e, (u, v) in enumerate(graph.edges):
            if labels[u] != labels[v]:
                total += graph.edge_scores[e] + prior.beta[labels[u], labels[v]]
        best = max(best, total)
    return best


def _refine_to_connected(graph, comp_of):
    """Split every block into its connected components (donor-split rule)."""
    out = np.full(graph.node_count, -1, dtype=np.int64)
    fresh = 0
    for start in range(graph.node_count):
        if out[start] >= 0:
            continue
        cid = comp_of[start]
        out[start] = fresh
        stack = [start]
        while stack:
            x = stack.pop()
            for v, _ in graph.adjacency[x]:
                if out[v] < 0 and comp_of[v] == cid:
                    out[v] = fresh
                    stack.append(v)
        fresh += 1
    return out


def best_single_move_gain(graph, prior, params, solution):
    """Largest objective gain over every literal single move, by mutate-and-score.

    Enumerates all component relabels, all merges of adjacent same-label
    components, all boundary-node moves, and all node isolations (with every
    label), evaluating each candidate with joint_objective on the rebuilt
    solution. Infeasible candidates are skipped like the solver skips them.
    """
    comp_of = solution.component_of.copy()
    labels = solution.label_of
    node_labels = labels[comp_of]
    base = rc.joint_objective(graph, prior, params, solution)
    k = labels.size
    num_total = graph.num_labels + 1

    def score(new_comp, new_node_labels):
        refined = _refine_to_connected(graph, new_comp)
        label_of = np.empty(int(refined.max()) + 1, dtype=np.int64)
        label_of[refined] = new_node_labels
        try:
            candidate = rc.JointSolution(refined, label_of)
            candidate.validate(graph)
            return rc.joint_objective(graph, prior, params, candidate)
        except (rc.ValidationError, rc.InfeasibleError):
            return None

    best = 0.0
    for c in range(k):
        for l in range(num_total):
            if l == labels[c]:
                continue
            labs = node_labels.copy()
            labs[comp_of == c] = l
            val = score(comp_of, labs)
            if val is not None:
                best = max(best, val - base)
    for c1 in range(k):
        for c2 in range(c1 + 1, k):
            if labels[c1] != labels[c2]:
                continue
            adjacent = any(
                {comp_of[u], comp_of[v]} == {c1, c2} for u, v in graph.edges
            )
            if not adjacent:
                continue
            merged = comp_of.copy()
            merged[merged == c2] = c1
            val = score(merged, node_labels)
            if val is not None:
                best = max(best, val - base)
    for u in range(graph.node_count):
        dests = {int(comp_of[v]) for v, _ in graph.adjacency[u]} - {int(comp_of[u])}
        for dest in dests:
            moved = comp_of.copy()
            moved[u] = dest
            labs = node_labels.copy()
            labs[u] = labels[dest]
            val = score(moved, labs)
            if val is not None:
                best = max(best, val - base)
    for u in range(graph.node_count):
        if int((comp_of == comp_of[u]).sum()) == 1:
            continue
        for l in range(num_total):
            isolated = comp_of.copy()
            isolated[u] = k
            labs = node_labels.copy()
            labs[u] = l
            val = score(isolated, labs)
            if val is not None:
                best = max(best, val - base)
    return best


def border_pixel_mean(region_of, edge_values, region_a, region_b):
    """Edge score by direct enumeration of the border pixel set."""
    h, w = region_of.shape
    border = set()
    for i in range(h):
        for j in range(w):
            for di, dj in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                ni, nj = i + di, j + dj
                if 0 <= ni < h and 0 <= nj < w:
                    pair = {region_of[i, j], region_of[ni, nj]}
                    if pair == {region_a, region_b}:
                        border.add((i, j))
    values = [edge_values[i, j] for i, j in border]
    return sum(values) / len(values)


def count_regional_minima(values, levels):
    """Number of 4-connected minimum plateaus of the quantized map."""
    vmin, vmax = values.min(), values.max()
    if vmax == vmin:
        return 1
    q = np.rint((values - vmin) * ((levels - 1) / (vmax - vmin))).astype(int)
    h, w = q.shape
    seen = np.zeros((h, w), dtype=bool)
    count = 0
    for si in range(h):
        for sj in range(w):
            if seen[si, sj]:
                continue
            plateau = [(si, sj)]
            seen[si, sj] = True
            minimum = True
            head = 0
            while head < len(plateau):
                i, j = plateau[head]
                head += 1
                for di, dj in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                    ni, nj = i + di, j + dj
                    if 0 <= ni < h and 0 <= nj < w:
                        if q[ni, nj] == q[si, sj]:
                            if not seen[ni, nj]:
                                seen[ni, nj] = True
                                plateau.append((ni, nj))
                        elif q[ni, nj] < q[si, sj]:
                            minimum = False
            if minimum:
                count += 1
    return count
