"""Bit-exact file formats: .sgm score grids, .lbm label maps, graph dumps.

.sgm  "SGM1\\n"  "H W C\\n"  then H*W*C little-endian float32, pixel-major
      (row-major pixels, C contiguous values per pixel).
.lbm  "LBM1\\n"  "H W\\n"    then H*W little-endian uint32, row-major.

Instance maps are stored in .lbm with the class in the high 8 bits and the
instance id in the low 24 bits. All writers produce byte-identical files for
identical inputs.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ValidationError
from .model import InstanceMap, RegionGraph, ScoreGrid, SuperpixelMap

_CLASS_SHIFT = 24
_ID_MASK = (1 << _CLASS_SHIFT) - 1


def _split_header(blob: bytes, magic: bytes, path):
    first = blob.find(b"\n")
    if first < 0 or blob[: first + 1] != magic + b"\n":
        raise ValidationError(f"{path}: bad magic, expected {magic.decode()}")
    second = blob.find(b"\n", first + 1)
    if second < 0:
        raise ValidationError(f"{path}: missing header line")
    fields = blob[first + 1 : second].split(b" ")
    try:
        dims = [int(f) for f in fields]
    except ValueError:
        raise ValidationError(f"{path}: malformed header") from None
    if any(d < 1 for d in dims):
        raise ValidationError(f"{path}: non-positive dimension in header")
    return dims, blob[second + 1 :]


def write_score_grid(grid: ScoreGrid, path) -> None:
    payload = grid.values.astype("<f4")
    if not np.isfinite(payload).all():
        raise ValidationError("grid values overflow float32")
    header = f"SGM1\n{grid.height} {grid.width} {grid.channels}\n".encode("ascii")
    Path(path).write_bytes(header + payload.tobytes(order="C"))


def read_score_grid(path) -> ScoreGrid:
    blob = Path(path).read_bytes()
    dims, payload = _split_header(blob, b"SGM1", path)
    if len(dims) != 3:
        raise ValidationError(f"{path}: header must be 'H W C'")
    h, w, c = dims
    expected = h * w * c * 4
    if len(payload) != expected:
        raise ValidationError(
            f"{path}: payload is {len(payload)} bytes, expected {expected}"
        )
    values = np.frombuffer(payload, dtype="<f4").reshape(h, w, c)
    if not np.isfinite(values).all():
        raise ValidationError(f"{path}: non-finite values in payload")
    return ScoreGrid(values.astype(np.float64))


def _write_label_payload(arr: np.ndarray, path) -> None:
    if arr.min() < 0 or arr.max() > np.iinfo(np.uint32).max:
        raise ValidationError("label values out of uint32 range")
    h, w = arr.shape
    header = f"LBM1\n{h} {w}\n".encode("ascii")
    Path(path).write_bytes(header + arr.astype("<u4").tobytes(order="C"))


def _read_label_payload(path) -> np.ndarray:
    blob = Path(path).read_bytes()
    dims, payload = _split_header(blob, b"LBM1", path)
    if len(dims) != 2:
        raise ValidationError(f"{path}: header must be 'H W'")
    h, w = dims
    expected = h * w * 4
    if len(payload) != expected:
        raise ValidationError(
            f"{path}: payload is {len(payload)} bytes, expected {expected}"
        )
    return np.frombuffer(payload, dtype="<u4").reshape(h, w).astype(np.int64)


def write_label_map(labels: np.ndarray, path) -> None:
    arr = np.asarray(labels, dtype=np.int64)
    if arr.ndim != 2:
        raise ValidationError("label map must be H x W")
    _write_label_payload(arr, path)


def read_label_map(path) -> np.ndarray:
    return _read_label_payload(path)


def write_superpixels(spx: SuperpixelMap, path) -> None:
    _write_label_payload(spx.region_of, path)


def read_superpixels(path) -> SuperpixelMap:
    return SuperpixelMap(_read_label_payload(path))


def pack_instances(imap: InstanceMap) -> np.ndarray:
    """Encode (instance id, class) into one uint32 per pixel."""
    if imap.class_labels.max() > 255:
        raise ValidationError("class labels above 255 cannot be packed")
    if imap.instance_ids.max() > _ID_MASK:
        raise ValidationError("instance ids above 2^24 - 1 cannot be packed")
    return (imap.class_labels.astype(np.int64) << _CLASS_SHIFT) | imap.instance_ids


def unpack_instances(packed: np.ndarray) -> InstanceMap:
    arr = np.asarray(packed, dtype=np.int64)
    return InstanceMap(arr & _ID_MASK, arr >> _CLASS_SHIFT)


def write_instance_map(imap: InstanceMap, path) -> None:
    _write_label_payload(pack_instances(imap), path)


def read_instance_map(path) -> InstanceMap:
    return unpack_instances(_read_label_payload(path))


def write_region_graph(graph: RegionGraph, path) -> None:
    """Plain-text graph dump; floats use repr so the round-trip is exact."""
    lines = [f"RGG1\n{graph.node_count} {graph.num_labels + 1} {graph.edge_count}\n"]
    for row in graph.node_scores:
        lines.append(" ".join(repr(float(v)) for v in row) + "\n")
    for (u, v), b in zip(graph.edges, graph.edge_scores):
        lines.append(f"{u} {v} {repr(float(b))}\n")
    Path(path).write_text("".join(lines), encoding="ascii")


def read_region_graph(path) -> RegionGraph:
    text = Path(path).read_text(encoding="ascii").splitlines()
    if not text or text[0] != "RGG1":
        raise ValidationError(f"{path}: bad magic, expected RGG1")
    try:
        n, channels, m = (int(f) for f in text[1].split())
    except (IndexError, ValueError):
        raise ValidationError(f"{path}: malformed header") from None
    if len(text) != 2 + n + m:
        raise ValidationError(f"{path}: expected {2 + n + m} lines, found {len(text)}")
    scores = np.array(
        [[float(v) for v in text[2 + i].split()] for i in range(n)], dtype=np.float64
    )
    if scores.shape != (n, channels):
        raise ValidationError(f"{path}: node score rows do not match header")
    edges = np.empty((m, 2), dtype=np.int64)
    edge_scores = np.empty(m, dtype=np.float64)
    for i in range(m):
        u, v, b = text[2 + n + i].split()
        edges[i] = (int(u), int(v))
        edge_scores[i] = float(b)
    return RegionGraph(n, edges, scores, edge_scores)
