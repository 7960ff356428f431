"""Fixed-radius neighbor search over a dataset.

Two routes answer the same question: a kd-tree with numpy leaf buckets
(``build_index`` / ``region_query``) and a pure-Python linear scan
(``region_query_naive``). Both use the closed ball |q - p| <= eps and, to
keep their answers identical even at the boundary, both accumulate the
squared distance axis by axis in the same order and compare against the
same eps * eps product.
"""
from __future__ import annotations

import math

import numpy as np

from .model import Dataset, DataError, ParamError

_LEAF_SIZE = 32


class _Node:
    __slots__ = ("lo", "hi", "idx", "axis", "split", "left", "right")

    def __init__(self, lo: np.ndarray, hi: np.ndarray) -> None:
        self.lo = lo
        self.hi = hi
        self.idx: np.ndarray | None = None  # set on leaves only
        self.axis = -1
        self.split = 0.0
        self.left: "_Node | None" = None
        self.right: "_Node | None" = None


def _axis_d2(block: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Squared distances accumulated axis by axis (matches the naive scan)."""
    d2 = np.zeros(block.shape[0])
    for ax in range(block.shape[1]):
        diff = block[:, ax] - q[ax]
        d2 += diff * diff
    return d2


class NeighborIndex:
    """kd-tree over a Dataset answering closed-ball radius queries."""

    __slots__ = ("dataset", "_root")

    def __init__(self, dataset: Dataset, leaf_size: int = _LEAF_SIZE) -> None:
        self.dataset = dataset
        coords = dataset.coords
        if len(dataset) == 0:
            self._root = None
            return
        self._root = self._build(coords, np.arange(len(dataset)), leaf_size)

    def _build(self, coords: np.ndarray, idx: np.ndarray, leaf_size: int) -> _Node:
        sub = coords[idx]
        node = _Node(sub.min(axis=0), sub.max(axis=0))
        if idx.size <= leaf_size:
            node.idx = idx
            return node
        spread = node.hi - node.lo
        axis = int(np.argmax(spread))
        if spread[axis] == 0.0:  # all points coincide; no split can help
            node.idx = idx
            return node
        order = np.argsort(sub[:, axis], kind="stable")
        mid = idx.size // 2
        node.axis = axis
        node.split = float(sub[order[mid], axis])
        node.left = self._build(coords, idx[order[:mid]], leaf_size)
        node.right = self._build(coords, idx[order[mid:]], leaf_size)
        return node

    def query(self, q, eps: float) -> np.ndarray:
        """Indices of all points within eps of q (inclusive), ascending.

        q may be a point index into the dataset or a coordinate sequence.
        """
        qc = _query_coords(self.dataset, q)
        eps = _check_eps(eps)
        if self._root is None:
            return np.empty(0, dtype=np.int64)
        eps2 = eps * eps
        coords = self.dataset.coords
        out: list[np.ndarray] = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            # Minimum squared distance from q to the node's bounding box.
            gap = np.maximum(node.lo - qc, 0.0) + np.maximum(qc - node.hi, 0.0)
            if float(np.dot(gap, gap)) > eps2:
                continue
            if node.idx is not None:
                d2 = _axis_d2(coords[node.idx], qc)
                hit = node.idx[d2 <= eps2]
                if hit.size:
                    out.append(hit)
                continue
            stack.append(node.left)
            stack.append(node.right)
        if not out:
            return np.empty(0, dtype=np.int64)
        merged = np.concatenate(out)
        merged.sort()
        return merged


def build_index(dataset: Dataset, leaf_size: int = _LEAF_SIZE) -> NeighborIndex:
    """Build the spatial index used by the clustering passes."""
    return NeighborIndex(dataset, leaf_size=leaf_size)


def region_query(index: NeighborIndex, q, eps: float) -> np.ndarray:
    """Closed-ball radius query through the index; see NeighborIndex.query."""
    return index.query(q, eps)


def region_query_naive(dataset: Dataset, q, eps: float) -> np.ndarray:
    """Reference implementation: scan every point in pure Python."""
    qc = _query_coords(dataset, q)
    eps = _check_eps(eps)
    eps2 = eps * eps
    coords = dataset.coords
    dim = dataset.dim
    hits = []
    for i in range(len(dataset)):
        row = coords[i]
        d2 = 0.0
        for ax in range(dim):
            diff = float(row[ax]) - float(qc[ax])
            d2 += diff * diff
        if d2 <= eps2:
            hits.append(i)
    return np.asarray(hits, dtype=np.int64)


def dataset_diameter(dataset: Dataset) -> float:
    """Largest pairwise Euclidean distance; 0.0 for fewer than two points."""
    n = len(dataset)
    if n < 2:
        return 0.0
    coords = dataset.coords
    best = 0.0
    step = 256
    for start in range(0, n, step):
        block = coords[start : start + step]
        diff = block[:, None, :] - coords[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        best = max(best, float(d2.max()))
    return math.sqrt(best)


def _query_coords(dataset: Dataset, q) -> np.ndarray:
    if isinstance(q, (int, np.integer)):
        i = int(q)
        if not 0 <= i < len(dataset):
            raise DataError(f"query index {i} out of range for {len(dataset)} points")
        return dataset.coords[i]
    qc = np.asarray(tuple(q), dtype=np.float64)
    if qc.ndim != 1 or qc.shape[0] != dataset.dim:
        raise DataError(f"query point has dimension {qc.shape}, dataset is {dataset.dim}-d")
    if not np.isfinite(qc).all():
        raise DataError("query point has non-finite coordinates")
    return qc


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not math.isfinite(eps) or eps <= 0.0:
        raise ParamError(f"eps must be finite and > 0, got {eps!r}")
    return eps
