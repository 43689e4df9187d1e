"""Boundary ground truth, training-mask pruning, and the balanced loss."""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from scipy import ndimage as ndi

from .errors import ValidationError

_EPS = 1e-12


class PixelClass(IntEnum):
    NON_EDGE = 0
    EDGE = 1
    IGNORE = 2


@dataclass(frozen=True)
class BoundaryGT:
    """H x W grid over {EDGE, NON_EDGE, IGNORE}."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.array(self.labels, dtype=np.int8)
        if lab.ndim != 2:
            raise ValidationError("boundary labels must be H x W")
        if not np.isin(lab, (0, 1, 2)).all():
            raise ValidationError("boundary labels must be NON_EDGE, EDGE or IGNORE")
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)

    def edge_mask(self) -> np.ndarray:
        return self.labels == PixelClass.EDGE

    def non_edge_mask(self) -> np.ndarray:
        return self.labels == PixelClass.NON_EDGE


def derive_boundary_gt(instance_map: np.ndarray) -> BoundaryGT:
    """Mark pixels whose 4-neighborhood crosses an instance boundary.

    A pixel is EDGE iff some 4-neighbor carries a different instance id and
    at least one of the two pixels is non-background (background is id 0,
    so background-to-background never produces an edge). Both sides of a
    boundary are marked.
    """
    ids = np.asarray(instance_map, dtype=np.int64)
    if ids.ndim != 2:
        raise ValidationError("instance map must be H x W")
    edge = np.zeros(ids.shape, dtype=bool)
    horizontal = (ids[:, :-1] != ids[:, 1:]) & ((ids[:, :-1] != 0) | (ids[:, 1:] != 0))
    vertical = (ids[:-1, :] != ids[1:, :]) & ((ids[:-1, :] != 0) | (ids[1:, :] != 0))
    edge[:, :-1] |= horizontal
    edge[:, 1:] |= horizontal
    edge[:-1, :] |= vertical
    edge[1:, :] |= vertical
    return BoundaryGT(edge.astype(np.int8))


def prune_gt(gt: BoundaryGT, instance_map: np.ndarray, dilation_radius: int = 32) -> BoundaryGT:
    """Turn NON_EDGE pixels far away from every object into IGNORE.

    Distance is Chebyshev (chessboard); NON_EDGE pixels farther than
    dilation_radius from any non-background pixel become IGNORE. EDGE
    pixels are never modified.
    """
    if dilation_radius < 0:
        raise ValidationError("dilation_radius must be >= 0")
    ids = np.asarray(instance_map, dtype=np.int64)
    if ids.shape != gt.labels.shape:
        raise ValidationError("instance map and boundary GT must share a shape")
    dist = ndi.distance_transform_cdt(ids == 0, metric="chessboard")
    out = gt.labels.copy()
    out[(out == PixelClass.NON_EDGE) & (dist > dilation_radius)] = PixelClass.IGNORE
    return BoundaryGT(out)


def balanced_loss(p_edge, y_gt, alpha):
    """Class-balanced negative log-likelihood of an edge prediction.

    -[y log p + alpha (1 - y) log(1 - p)] with p clamped to
    [1e-12, 1 - 1e-12]; elementwise over arrays, nonnegative for alpha >= 0.
    """
    p = np.clip(np.asarray(p_edge, dtype=np.float64), _EPS, 1.0 - _EPS)
    y = np.asarray(y_gt, dtype=np.float64)
    if not np.isin(y, (0.0, 1.0)).all():
        raise ValidationError("y_gt must be 0 or 1")
    loss = -(y * np.log(p) + alpha * (1.0 - y) * np.log1p(-p))
    if np.ndim(p_edge) == 0 and np.ndim(y_gt) == 0:
        return float(loss)
    return loss


def balance_coefficient(gt: BoundaryGT) -> float:
    """N_edge / N_non_edge over the labeled (non-IGNORE) pixels."""
    n1 = int(gt.edge_mask().sum())
    n0 = int(gt.non_edge_mask().sum())
    if n1 == 0 or n0 == 0:
        raise ValidationError("need at least one EDGE and one NON_EDGE pixel")
    return n1 / n0
