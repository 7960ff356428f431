"""Core data types shared across the library.

Points live in d-dimensional Euclidean space (d >= 1). Cluster ids are
contiguous integers starting at 0; ``NOISE`` (-1) marks unclustered points.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

NOISE = -1

STOP_K_REACHED = "k_reached"
STOP_RESIDUAL = "residual"
STOP_EPS_CAP = "eps_cap"
STOP_MAX_ITERS = "max_iters"


class VardenError(Exception):
    """Base class for all library errors."""


class DataError(VardenError):
    """Raised for malformed datasets, files, or labelings."""


class ParamError(VardenError):
    """Raised for parameter values outside their legal range."""


class PointClass(enum.IntEnum):
    """Role of a point in a density clustering."""

    NOISE = 0
    BORDER = 1
    CORE = 2

    @property
    def token(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Point:
    """An immutable coordinate vector."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 1:
            raise DataError("point must have at least one coordinate")
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))

    @property
    def x(self) -> float:
        return self.coords[0]

    @property
    def y(self) -> float:
        if len(self.coords) < 2:
            raise DataError("point has no y coordinate")
        return self.coords[1]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> float:
        return self.coords[i]


@dataclass(frozen=True, eq=False)
class Dataset:
    """An ordered collection of points; a point's id is its index.

    coords: float64 array of shape (n, d), marked read-only on construction.
    """

    coords: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.coords, dtype=np.float64)
        if arr.ndim != 2:
            raise DataError(f"coordinates must be a 2-d array, got ndim={arr.ndim}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)

    @classmethod
    def from_points(cls, points) -> "Dataset":
        rows = []
        for p in points:
            rows.append(tuple(p))
        if not rows:
            return cls(np.empty((0, 2)))
        return cls(np.asarray(rows, dtype=np.float64))

    def __len__(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def point(self, i: int) -> Point:
        return Point(tuple(self.coords[i]))

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """(mins, maxs) across all points; requires a nonempty dataset."""
        if len(self) == 0:
            raise DataError("empty dataset has no bounds")
        return self.coords.min(axis=0), self.coords.max(axis=0)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """A dataset together with its ground-truth labels.

    truth: int array aligned with the dataset; blob/cluster index per point,
    NOISE (-1) for background points.
    """

    dataset: Dataset
    truth: np.ndarray

    def __post_init__(self) -> None:
        truth = np.asarray(self.truth, dtype=np.int64).copy()
        if truth.shape != (len(self.dataset),):
            raise DataError(
                f"truth labels cover {truth.shape} points, dataset has {len(self.dataset)}"
            )
        truth.flags.writeable = False
        object.__setattr__(self, "truth", truth)

    def __len__(self) -> int:
        return len(self.dataset)


def validate_dataset(ds: Dataset) -> None:
    """Raise DataError unless ds is nonempty, finite, and at least 1-d."""
    if not isinstance(ds, Dataset):
        raise DataError(f"expected a Dataset, got {type(ds).__name__}")
    if len(ds) == 0:
        raise DataError("dataset is empty")
    if ds.dim < 1:
        raise DataError("dataset must have at least one coordinate axis")
    if not np.isfinite(ds.coords).all():
        bad = int(np.flatnonzero(~np.isfinite(ds.coords).all(axis=1))[0])
        raise DataError(f"non-finite coordinate at point {bad}")


@dataclass(frozen=True)
class DbscanParams:
    """Parameters for a single density scan.

    eps: neighborhood radius (closed ball), finite and > 0.
    min_pts: density threshold, >= 1; a point's own neighborhood counts it.
    """

    eps: float
    min_pts: int

    def __post_init__(self) -> None:
        eps = float(self.eps)
        if not math.isfinite(eps) or eps <= 0.0:
            raise ParamError(f"eps must be finite and > 0, got {self.eps!r}")
        min_pts = self.min_pts
        if int(min_pts) != min_pts or int(min_pts) < 1:
            raise ParamError(f"min_pts must be an integer >= 1, got {self.min_pts!r}")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "min_pts", int(min_pts))


@dataclass(frozen=True, eq=False)
class Labeling:
    """Per-point cluster assignment from one scan.

    labels: int array, cluster id per point, NOISE (-1) for unclustered.
    classes: int8 array of PointClass values, aligned with labels.
    """

    labels: np.ndarray
    classes: np.ndarray

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int64).copy()
        classes = np.asarray(self.classes, dtype=np.int8).copy()
        labels.flags.writeable = False
        classes.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "classes", classes)

    def __len__(self) -> int:
        return self.labels.shape[0]

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size and self.labels.max() >= 0 else 0

    def point_class(self, i: int) -> PointClass:
        return PointClass(int(self.classes[i]))


def validate_labeling(lab: Labeling, n: int | None = None) -> None:
    """Raise DataError unless lab is internally consistent.

    Checks: labels/classes aligned (and of length n when given), labels >= -1,
    cluster ids contiguous from 0, and label == NOISE exactly where the class
    is NOISE.
    """
    if lab.labels.shape != lab.classes.shape:
        raise DataError("labels and classes have different shapes")
    if n is not None and len(lab) != n:
        raise DataError(f"labeling covers {len(lab)} points, expected {n}")
    if lab.labels.size == 0:
        return
    if lab.labels.min() < NOISE:
        raise DataError("cluster ids below -1")
    top = int(lab.labels.max())
    if top >= 0:
        present = np.unique(lab.labels[lab.labels >= 0])
        if present.size != top + 1:
            raise DataError("cluster ids are not contiguous from 0")
    noise_by_label = lab.labels == NOISE
    noise_by_class = lab.classes == int(PointClass.NOISE)
    if not np.array_equal(noise_by_label, noise_by_class):
        raise DataError("noise labels and noise classes disagree")


@dataclass(frozen=True)
class AdbscanParams:
    """Parameters for the adaptive escalation loop.

    eps0/min_pts0 seed the first scan; after every iteration both escalate by
    ``step`` (the real-valued min_pts accumulator is ceiled at use). A cluster
    is accepted only while the largest one holds more than accept_fraction of
    the ORIGINAL point count; the loop stops at k clusters, at a remainder of
    residual_fraction or less, when eps passes eps_cap, or after max_iters.
    eps_step/min_pts_step, when set, override ``step`` per axis.
    """

    k: int
    eps0: float = 0.5
    min_pts0: float = 10.0
    step: float = 0.5
    accept_fraction: float = 0.10
    residual_fraction: float = 0.05
    eps_cap: float | None = None
    max_iters: int = 100
    eps_step: float | None = None
    min_pts_step: float | None = None

    def __post_init__(self) -> None:
        if int(self.k) != self.k or int(self.k) < 1:
            raise ParamError(f"k must be an integer >= 1, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        eps0 = float(self.eps0)
        if not math.isfinite(eps0) or eps0 <= 0.0:
            raise ParamError(f"eps0 must be finite and > 0, got {self.eps0!r}")
        object.__setattr__(self, "eps0", eps0)
        # min_pts0 may be real: it seeds the same fractional accumulator the
        # half-steps feed, and scans ceil it before use.
        mp0 = float(self.min_pts0)
        if not math.isfinite(mp0) or mp0 < 1.0:
            raise ParamError(f"min_pts0 must be finite and >= 1, got {self.min_pts0!r}")
        object.__setattr__(self, "min_pts0", mp0)
        for name in ("step", "eps_step", "min_pts_step"):
            v = getattr(self, name)
            if v is None:
                continue
            v = float(v)
            if not math.isfinite(v) or v < 0.0:
                raise ParamError(f"{name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, name, v)
        if not 0.0 < float(self.accept_fraction) < 1.0:
            raise ParamError(f"accept_fraction must be in (0, 1), got {self.accept_fraction!r}")
        object.__setattr__(self, "accept_fraction", float(self.accept_fraction))
        if not 0.0 <= float(self.residual_fraction) < 1.0:
            raise ParamError(f"residual_fraction must be in [0, 1), got {self.residual_fraction!r}")
        object.__setattr__(self, "residual_fraction", float(self.residual_fraction))
        if self.eps_cap is not None:
            cap = float(self.eps_cap)
            if not math.isfinite(cap) or cap <= 0.0:
                raise ParamError(f"eps_cap must be finite and > 0, got {self.eps_cap!r}")
            object.__setattr__(self, "eps_cap", cap)
        if int(self.max_iters) != self.max_iters or int(self.max_iters) < 1:
            raise ParamError(f"max_iters must be an integer >= 1, got {self.max_iters!r}")
        object.__setattr__(self, "max_iters", int(self.max_iters))


@dataclass(frozen=True)
class IterationRecord:
    """What one escalation iteration did.

    index: 1-based iteration number.
    eps / min_pts: parameters used for this scan (min_pts already ceiled).
    min_pts_real: the fractional accumulator behind min_pts.
    n_clusters_found: clusters the scan produced on the remaining points.
    largest_size: size of the scan's largest cluster (0 when none).
    accepted: whether the largest cluster was kept.
    accepted_size: size of the kept cluster, 0 when none was kept.
    remaining: points still unassigned after this iteration.
    """

    index: int
    eps: float
    min_pts: int
    min_pts_real: float
    n_clusters_found: int
    largest_size: int
    accepted: bool
    accepted_size: int
    remaining: int


@dataclass(frozen=True, eq=False)
class AdaptiveResult:
    """Outcome of the adaptive loop.

    labels: final cluster id per original point (NOISE for never-assigned).
    classes: PointClass per point, taken from the scan that claimed it
        (NOISE for points no accepted cluster ever claimed).
    trace: one IterationRecord per iteration, in order.
    stop_reason: which budget ended the loop (STOP_* constants).
    """

    labels: np.ndarray
    classes: np.ndarray
    trace: tuple[IterationRecord, ...] = field(default=())
    stop_reason: str = STOP_K_REACHED

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int64).copy()
        classes = np.asarray(self.classes, dtype=np.int8).copy()
        labels.flags.writeable = False
        classes.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "trace", tuple(self.trace))

    def __len__(self) -> int:
        return self.labels.shape[0]

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size and self.labels.max() >= 0 else 0

    @property
    def iterations(self) -> int:
        return len(self.trace)

    def as_labeling(self) -> Labeling:
        return Labeling(self.labels, self.classes)
