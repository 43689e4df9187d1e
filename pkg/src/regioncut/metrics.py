"""Instance-level evaluation: greedy IoU matching, precision/recall, F1."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .model import InstanceMap

IOU_THRESHOLD = 0.5


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float


@dataclass(frozen=True)
class MatchReport:
    """Matching outcome at IoU >= 0.5 with class agreement.

    precision counts matched predictions over all predictions, recall
    matched ground-truth instances over all ground-truth instances. An
    empty side contributes no false positives/negatives, so its ratio is 1
    by convention. exact_match means precision == recall == 1.
    """

    precision: float
    recall: float
    per_class: dict
    mean_precision: float
    mean_recall: float
    exact_match: bool
    best_iou: tuple

    @property
    def f1(self) -> float:
        if self.precision + self.recall == 0:
            return 0.0
        return 2 * self.precision * self.recall / (self.precision + self.recall)


def _instance_classes(imap: InstanceMap, ids: np.ndarray) -> dict:
    out = {}
    flat_ids = imap.instance_ids.ravel()
    flat_cls = imap.class_labels.ravel()
    for i in ids:
        cls = np.unique(flat_cls[flat_ids == i])
        if cls.size != 1:
            raise ValidationError(f"instance {i} carries more than one class")
        out[int(i)] = int(cls[0])
    return out


def evaluate(pred: InstanceMap, gt: InstanceMap) -> MatchReport:
    """Greedy one-to-one matching by descending IoU among same-class pairs."""
    if pred.instance_ids.shape != gt.instance_ids.shape:
        raise ValidationError("prediction and ground truth must share a shape")

    pred_ids, pred_counts = np.unique(pred.instance_ids, return_counts=True)
    pred_sizes = dict(zip(pred_ids.tolist(), pred_counts.tolist()))
    pred_ids = pred_ids[pred_ids > 0]
    gt_ids, gt_counts = np.unique(gt.instance_ids, return_counts=True)
    gt_sizes = dict(zip(gt_ids.tolist(), gt_counts.tolist()))
    gt_ids = gt_ids[gt_ids > 0]
    pred_cls = _instance_classes(pred, pred_ids)
    gt_cls = _instance_classes(gt, gt_ids)

    # intersections of overlapping (gt, pred) instance pairs
    both = (pred.instance_ids.ravel() > 0) & (gt.instance_ids.ravel() > 0)
    stride = int(pred.instance_ids.max()) + 1
    codes = gt.instance_ids.ravel()[both] * stride + pred.instance_ids.ravel()[both]
    uniq, counts = np.unique(codes, return_counts=True)

    candidates = []
    best_iou = {int(g): 0.0 for g in gt_ids}
    for code, inter in zip(uniq, counts):
        g, p = int(code // stride), int(code % stride)
        if gt_cls[g] != pred_cls[p]:
            continue
        iou = inter / (gt_sizes[g] + pred_sizes[p] - inter)
        best_iou[g] = max(best_iou[g], float(iou))
        if iou >= IOU_THRESHOLD:
            candidates.append((float(iou), g, p))
    candidates.sort(key=lambda t: (-t[0], t[1], t[2]))

    matched_gt = set()
    matched_pred = set()
    matches = []
    for iou, g, p in candidates:
        if g in matched_gt or p in matched_pred:
            continue
        matched_gt.add(g)
        matched_pred.add(p)
        matches.append((g, p))

    def ratio(matched, total):
        return matched / total if total else 1.0

    precision = ratio(len(matches), len(pred_ids))
    recall = ratio(len(matches), len(gt_ids))

    per_class = {}
    all_classes = sorted(set(gt_cls.values()) | set(pred_cls.values()))
    for cls in all_classes:
        n_pred = sum(1 for p in pred_ids if pred_cls[int(p)] == cls)
        n_gt = sum(1 for g in gt_ids if gt_cls[int(g)] == cls)
        n_match = sum(1 for g, _ in matches if gt_cls[g] == cls)
        per_class[cls] = ClassMetrics(ratio(n_match, n_pred), ratio(n_match, n_gt))

    if per_class:
        mean_precision = float(np.mean([m.precision for m in per_class.values()]))
        mean_recall = float(np.mean([m.recall for m in per_class.values()]))
    else:
        mean_precision = mean_recall = 1.0

    return MatchReport(
        precision=precision,
        recall=recall,
        per_class=per_class,
        mean_precision=mean_precision,
        mean_recall=mean_recall,
        exact_match=(precision == 1.0 and recall == 1.0),
        best_iou=tuple(best_iou[int(g)] for g in gt_ids),
    )
