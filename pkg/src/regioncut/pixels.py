"""Per-pixel transforms: watershed superpixels and semantic-input preparation."""
from __future__ import annotations

import heapq

import numpy as np

from .errors import ValidationError
from .model import N4, ScoreGrid, SuperpixelMap


def quantize_levels(values: np.ndarray, levels: int) -> np.ndarray:
    """Affine-rescale to integer levels 0..levels-1; constant maps become all zeros."""
    vmin = values.min()
    vmax = values.max()
    if vmax == vmin:
        return np.zeros(values.shape, dtype=np.int64)
    scaled = (values - vmin) * ((levels - 1) / (vmax - vmin))
    return np.rint(scaled).astype(np.int64)


def _regional_minima(q: np.ndarray) -> np.ndarray:
    """Label 4-connected regional-minimum plateaus 0..S-1; non-minima get -1.

    A regional minimum is a maximal 4-connected plateau of equal values none
    of whose pixels has a strictly lower 4-neighbor. Seed ids follow the
    row-major order of each plateau's first pixel.
    """
    h, w = q.shape
    flat = q.ravel()
    seeds = np.full(flat.size, -1, dtype=np.int64)
    visited = np.zeros(flat.size, dtype=bool)
    next_id = 0
    for start in range(flat.size):
        if visited[start]:
            continue
        level = flat[start]
        plateau = [start]
        visited[start] = True
        is_min = True
        head = 0
        while head < len(plateau):
            p = plateau[head]
            head += 1
            pi, pj = divmod(p, w)
            for di, dj in N4:
                qi, qj = pi + di, pj + dj
                if 0 <= qi < h and 0 <= qj < w:
                    nb = qi * w + qj
                    if flat[nb] == level:
                        if not visited[nb]:
                            visited[nb] = True
                            plateau.append(nb)
                    elif flat[nb] < level:
                        is_min = False
        if is_min:
            for p in plateau:
                seeds[p] = next_id
            next_id += 1
    return seeds.reshape(h, w)


def watershed(edge_map: ScoreGrid, quantization_levels: int = 256) -> SuperpixelMap:
    """Flood the edge-score landscape into superpixels (seeded Meyer flooding).

    Parameters
    ----------
    edge_map : ScoreGrid
        Single-channel grid of edge scores; low values are basin interiors.
    quantization_levels : int
        Number of integer levels the scores are affinely rescaled to before
        flooding (>= 2). Fewer levels mean wider plateaus and fewer regions.

    Returns
    -------
    SuperpixelMap
        Every pixel belongs to exactly one region (no watershed-line pixels)
        and every region is 4-connected. Region ids are ordered by the
        smallest pixel index each region contains.

    Notes
    -----
    Seeds are the 4-connected regional-minimum plateaus of the quantized
    map. Flooding uses a priority queue keyed by (quantized level, insertion
    sequence): a pixel is enqueued as soon as any 4-neighbor is labeled and,
    when popped, adopts the label of the neighbor that enqueued it first.
    Neighbors are enqueued in row-major offset order, which makes the
    plateau tie-break deterministic. Adding a constant to the edge map does
    not change the result.
    """
    if edge_map.channels != 1:
        raise ValidationError("watershed expects a single-channel edge map")
    if quantization_levels < 2:
        raise ValidationError("quantization_levels must be >= 2")
    q = quantize_levels(edge_map.values[:, :, 0], quantization_levels)
    h, w = q.shape
    qf = q.ravel()
    labels = _regional_minima(q).ravel()

    heap = []
    seq = 0
    for p in range(labels.size):
        if labels[p] < 0:
            continue
        pi, pj = divmod(p, w)
        for di, dj in N4:
            qi, qj = pi + di, pj + dj
            if 0 <= qi < h and 0 <= qj < w:
                nb = qi * w + qj
                if labels[nb] < 0:
                    heapq.heappush(heap, (qf[nb], seq, nb, labels[p]))
                    seq += 1

    while heap:
        _, _, p, lab = heapq.heappop(heap)
        if labels[p] >= 0:
            continue
        labels[p] = lab
        pi, pj = divmod(p, w)
        for di, dj in N4:
            qi, qj = pi + di, pj + dj
            if 0 <= qi < h and 0 <= qj < w:
                nb = qi * w + qj
                if labels[nb] < 0:
                    heapq.heappush(heap, (qf[nb], seq, nb, lab))
                    seq += 1

    # region ids ordered by smallest contained pixel index
    count = int(labels.max()) + 1
    first = np.full(count, labels.size, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(labels.size))
    rank = np.empty(count, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(count)
    return SuperpixelMap(rank[labels].reshape(h, w))


def derive_background(semantic_full: ScoreGrid, instance_classes) -> ScoreGrid:
    """Collapse non-instance channels into a background channel.

    Output channel 0 is the per-pixel maximum over all channels not listed
    in instance_classes; channels 1..L are the instance-class channels in
    the given order.
    """
    picked = [int(c) for c in instance_classes]
    if not picked:
        raise ValidationError("instance_classes must not be empty")
    if len(set(picked)) != len(picked):
        raise ValidationError("instance_classes contains duplicates")
    if any(c < 0 or c >= semantic_full.channels for c in picked):
        raise ValidationError("instance class channel out of range")
    rest = [c for c in range(semantic_full.channels) if c not in set(picked)]
    if not rest:
        raise ValidationError("instance_classes must leave at least one background channel")
    background = semantic_full.values[:, :, rest].max(axis=2)
    stacked = np.concatenate(
        [background[:, :, None], semantic_full.values[:, :, picked]], axis=2
    )
    return ScoreGrid(stacked)


def sigmoid_edge_probability(score):
    """Logistic edge probability 1 / (1 + exp(-score)); stable for large |score|."""
    s = np.asarray(score, dtype=np.float64)
    if not np.isfinite(s).all():
        raise ValidationError("edge score must be finite")
    out = np.empty_like(s)
    pos = s >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-s[pos]))
    expv = np.exp(s[~pos])
    out[~pos] = expv / (1.0 + expv)
    if np.isscalar(score) or np.ndim(score) == 0:
        return float(out)
    return out
