"""Density-based clustering on a fixed (eps, min_pts).

A point is CORE when its closed eps-ball holds at least min_pts points
(itself included). Clusters grow breadth-first from unvisited core points in
index order; non-core points inside a reached ball become BORDER and stay
with the first cluster that claims them. Everything else is NOISE.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from .model import (
    Dataset,
    DbscanParams,
    Labeling,
    NOISE,
    PointClass,
    validate_dataset,
)
from .neighborhood import NeighborIndex, build_index, region_query


def _neighborhoods(dataset: Dataset, params: DbscanParams, index: NeighborIndex | None):
    if index is None:
        index = build_index(dataset)
    hoods = [region_query(index, i, params.eps) for i in range(len(dataset))]
    core = np.fromiter((h.size >= params.min_pts for h in hoods), dtype=bool, count=len(hoods))
    return hoods, core


def run_dbscan(dataset: Dataset, params: DbscanParams, index: NeighborIndex | None = None) -> Labeling:
    """Cluster the dataset; returns per-point labels and point classes.

    The scan visits points in index order, so cluster ids and border
    ownership are deterministic; the core/noise split and the partition of
    core points do not depend on that order.
    """
    validate_dataset(dataset)
    n = len(dataset)
    hoods, core = _neighborhoods(dataset, params, index)

    labels = np.full(n, NOISE, dtype=np.int64)
    next_id = 0
    for seed in range(n):
        if not core[seed] or labels[seed] != NOISE:
            continue
        labels[seed] = next_id
        queue = deque([seed])
        while queue:
            x = queue.popleft()
            for r in hoods[x]:
                if labels[r] == NOISE:
                    labels[r] = next_id
                    if core[r]:
                        queue.append(r)
        next_id += 1

    classes = np.full(n, int(PointClass.NOISE), dtype=np.int8)
    classes[labels != NOISE] = int(PointClass.BORDER)
    classes[core] = int(PointClass.CORE)
    return Labeling(labels, classes)


def classify_point(
    dataset: Dataset, i: int, params: DbscanParams, index: NeighborIndex | None = None
) -> PointClass:
    """CORE / BORDER / NOISE status of point i under params.

    BORDER means not core itself but inside some core point's eps-ball.
    """
    validate_dataset(dataset)
    if index is None:
        index = build_index(dataset)
    hood = region_query(index, i, params.eps)
    if hood.size >= params.min_pts:
        return PointClass.CORE
    for j in hood:
        if region_query(index, int(j), params.eps).size >= params.min_pts:
            return PointClass.BORDER
    return PointClass.NOISE


def is_directly_density_reachable(
    dataset: Dataset, p: int, q: int, params: DbscanParams, index: NeighborIndex | None = None
) -> bool:
    """True when p sits in q's eps-ball and q is core (asymmetric)."""
    validate_dataset(dataset)
    if index is None:
        index = build_index(dataset)
    hood = region_query(index, q, params.eps)
    return hood.size >= params.min_pts and p in hood


def is_density_reachable(
    dataset: Dataset, p: int, q: int, params: DbscanParams, index: NeighborIndex | None = None
) -> bool:
    """True when a chain of direct steps leads from q to p.

    Every chain link but the last must be core, so this walks the core
    points connected to q and asks whether any of them holds p in its ball.
    The zero-step chain makes the relation reflexive.
    """
    validate_dataset(dataset)
    if p == q:
        return True
    if index is None:
        index = build_index(dataset)
    eps, min_pts = params.eps, params.min_pts

    hood_q = region_query(index, q, eps)
    if hood_q.size < min_pts:
        return False
    seen = {q}
    queue = deque([(q, hood_q)])
    while queue:
        _, hood = queue.popleft()
        if p in hood:
            return True
        for r in hood:
            r = int(r)
            if r in seen:
                continue
            seen.add(r)
            hood_r = region_query(index, r, eps)
            if hood_r.size >= min_pts:
                queue.append((r, hood_r))
    return False


def is_density_connected(
    dataset: Dataset, p: int, q: int, params: DbscanParams, index: NeighborIndex | None = None
) -> bool:
    """True when some witness reaches both p and q by density (symmetric).

    The witnesses able to reach p are exactly the core points whose
    component (under core-to-core eps adjacency) touches p's ball, so the
    check is one component walk seeded from p's adjacent cores.
    """
    validate_dataset(dataset)
    if index is None:
        index = build_index(dataset)
    eps, min_pts = params.eps, params.min_pts

    def adjacent_cores(i: int) -> list[int]:
        return [
            int(j)
            for j in region_query(index, i, eps)
            if region_query(index, int(j), eps).size >= min_pts
        ]

    seeds_p = adjacent_cores(p)
    if not seeds_p:
        return False
    targets_q = set(adjacent_cores(q))
    if not targets_q:
        return False

    seen = set(seeds_p)
    queue = deque(seeds_p)
    while queue:
        x = queue.popleft()
        if x in targets_q:
            return True
        for r in region_query(index, x, eps):
            r = int(r)
            if r in seen:
                continue
            seen.add(r)
            if region_query(index, r, eps).size >= min_pts:
                queue.append(r)
    return False
