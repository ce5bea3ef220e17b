# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Adaptive quadtree clustering of UEs in feature space.

A node stops splitting when every feature's member range is below its
threshold or when it holds fewer than ``theta_n`` members. Otherwise the two
features with the largest range/threshold ratio are bisected at the middle
of the node box, giving four equal sub-boxes. A value equal to the split
point goes to the lower side.
"""

import csv
import itertools
import logging
from dataclasses import dataclass, field
from typing import IO, Iterator, Sequence

import numpy as np

from mcn_traffgen.clustering.features import FeatureVector, feature_thresholds
from mcn_traffgen.constants import DEFAULT_THETA_F, DEFAULT_THETA_N
from mcn_traffgen.trace.models import DeviceType

logger = logging.getLogger(__name__)

CLUSTER_REPORT_COLUMNS = (
    "device_type",
    "hour",
    "cluster_id",
    "size",
    "weight",
    "feat_mins",
    "feat_maxs",
)

# (lower half along a, lower half along b) of each child
QUADRANTS = ((True, True), (True, False), (False, True), (False, False))


@dataclass(frozen=True)
class ClusterNode:
    """A box of the feature space, either a leaf or split in four."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    size: int
    children: tuple["ClusterNode", ...] = ()
    split_dims: tuple[int, int] | None = None
    split_at: tuple[float, float] | None = None
    cluster_id: int | None = None
    members: tuple[str, ...] = ()
    member_min: tuple[float, ...] = ()
    member_max: tuple[float, ...] = ()

    @property
    def is_leaf(self) -> bool:
        """Check whether the node has no children."""
        return not self.children

    def child_index(self, point: np.ndarray) -> int:
        """Get the index of the child box a point falls in."""
        assert self.split_dims is not None and self.split_at is not None
        a, b = self.split_dims
        mid_a, mid_b = self.split_at
        return (0 if point[a] <= mid_a else 2) + (0 if point[b] <= mid_b else 1)

    def distance(self, point: np.ndarray) -> float:
        """Get the Euclidean distance from a point to the box."""
        clamped = np.clip(point, self.lower, self.upper)
        return float(np.linalg.norm(point - clamped))


@dataclass(frozen=True)
class ClusterTree:
    """Quadtree built for one (device, hour-of-day) group."""

    root: ClusterNode
    thresholds: tuple[float, ...]
    theta_n: int
    device: DeviceType | None = None
    hour: int | None = None

    def leaves(self) -> Iterator[ClusterNode]:
        """Iterate over the non-empty leaves in cluster-id order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                if node.cluster_id is not None:
                    yield node
            else:
                stack.extend(reversed(node.children))

    @property
    def cluster_count(self) -> int:
        """Number of clusters (non-empty leaves)."""
        return sum(1 for _ in self.leaves())

    def assign(self, features: FeatureVector) -> int:
        """Get the cluster of a feature vector."""
        return assign(features, self)


@dataclass(frozen=True)
class ClusterAssignment:
    """Cluster ids of the UEs of one (device, hour-of-day) group."""

    labels: dict[str, int]
    weights: dict[int, float]
    device: DeviceType | None = None
    hour: int | None = None
    sizes: dict[int, int] = field(default_factory=dict)

    def cluster_of(self, ue_id: str) -> int | None:
        """Get the cluster id of a UE, if it was clustered."""
        return self.labels.get(ue_id)


class _Builder:
    """Recursive construction state."""

    def __init__(
        self,
        points: np.ndarray,
        ue_ids: Sequence[str],
        limits: np.ndarray,
        theta_n: int,
    ) -> None:
        self.points = points
        self.ue_ids = ue_ids
        self.limits = limits
        self.theta_n = theta_n
        self.ids = itertools.count()

    def build(
        self, index: np.ndarray, lower: np.ndarray, upper: np.ndarray
    ) -> ClusterNode:
        box_lower = tuple(float(v) for v in lower)
        box_upper = tuple(float(v) for v in upper)
        size = len(index)
        if size == 0:
            return ClusterNode(box_lower, box_upper, 0)

        members = self.points[index]
        mins = members.min(axis=0)
        maxs = members.max(axis=0)
        spread = maxs - mins
        if size < self.theta_n or bool(np.all(spread < self.limits)):
            return ClusterNode(
                box_lower,
                box_upper,
                size,
                cluster_id=next(self.ids),
                members=tuple(self.ue_ids[i] for i in index),
                member_min=tuple(float(v) for v in mins),
                member_max=tuple(float(v) for v in maxs),
            )

        ratio = spread / self.limits
        a, b = sorted(int(d) for d in np.argsort(-ratio, kind="stable")[:2])
        mid = (lower + upper) / 2.0
        below_a = members[:, a] <= mid[a]
        below_b = members[:, b] <= mid[b]

        children = []
        for low_a, low_b in QUADRANTS:
            mask = (below_a == low_a) & (below_b == low_b)
            child_lower = lower.copy()
            child_upper = upper.copy()
            if low_a:
                child_upper[a] = mid[a]
            else:
                child_lower[a] = mid[a]
            if low_b:
                child_upper[b] = mid[b]
            else:
                child_lower[b] = mid[b]
            children.append(self.build(index[mask], child_lower, child_upper))

        return ClusterNode(
            box_lower,
            box_upper,
            size,
            children=tuple(children),
            split_dims=(a, b),
            split_at=(float(mid[a]), float(mid[b])),
        )


def adaptive_cluster(
    features: Sequence[tuple[str, FeatureVector]],
    theta_f: float = DEFAULT_THETA_F,
    theta_n: int = DEFAULT_THETA_N,
    thresholds: dict[str, float] | None = None,
    device: DeviceType | None = None,
    hour: int | None = None,
) -> tuple[ClusterTree, ClusterAssignment]:
    """Cluster UEs by recursive quadtree partitioning of their features.

    Args:
        features: (ue_id, features) pairs of one (device, hour) group
        theta_f: Range threshold applied to every feature
        theta_n: Minimum member count for a node to be split
        thresholds: Per-feature overrides of theta_f, by feature name

    Returns:
        The tree and the resulting assignment with per-cluster weights
    """
    if not features:
        raise ValueError("Cannot cluster an empty feature set")
    limits = np.array(feature_thresholds(theta_f, thresholds), dtype=float)
    if np.any(limits <= 0):
        raise ValueError("Feature thresholds must be positive")

    ue_ids = [ue for ue, _ in features]
    points = np.array([fv.as_tuple() for _, fv in features], dtype=float)
    builder = _Builder(points, ue_ids, limits, theta_n)
    root = builder.build(np.arange(len(ue_ids)), points.min(axis=0), points.max(axis=0))
    tree = ClusterTree(root, tuple(float(v) for v in limits), theta_n, device, hour)

    total = len(ue_ids)
    labels: dict[str, int] = {}
    sizes: dict[int, int] = {}
    for leaf in tree.leaves():
        assert leaf.cluster_id is not None
        sizes[leaf.cluster_id] = leaf.size
        for ue in leaf.members:
            labels[ue] = leaf.cluster_id
    weights = {cid: size / total for cid, size in sizes.items()}

    logger.debug(
        f"Clustered {total} UEs (device={device}, hour={hour}) "
        f"into {len(sizes)} clusters"
    )
    return tree, ClusterAssignment(labels, weights, device, hour, sizes)


def assign(features: FeatureVector, tree: ClusterTree) -> int:
    """Descend the tree to the cluster of a feature vector.

    Points outside the root box are clamped onto it. A point landing in an
    empty leaf goes to the nearest non-empty sibling box.
    """
    root = tree.root
    point = np.clip(np.array(features.as_tuple(), dtype=float), root.lower, root.upper)
    node = root
    while not node.is_leaf:
        child = node.children[node.child_index(point)]
        if child.size == 0:
            occupied = [c for c in node.children if c.size > 0]
            child = min(occupied, key=lambda c: c.distance(point))
            point = np.clip(point, child.lower, child.upper)
        node = child
    assert node.cluster_id is not None
    return node.cluster_id


def _join(values: tuple[float, ...]) -> str:
    return ";".join(repr(v) for v in values)


def write_cluster_report(trees: Sequence[ClusterTree], stream: IO[str]) -> None:
    """Write one CSV row per cluster of every tree."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CLUSTER_REPORT_COLUMNS)
    for tree in trees:
        total = tree.root.size
        device = tree.device.value if tree.device is not None else ""
        for leaf in tree.leaves():
            writer.writerow(
                [
                    device,
                    "" if tree.hour is None else tree.hour,
                    leaf.cluster_id,
                    leaf.size,
                    repr(leaf.size / total),
                    _join(leaf.member_min),
                    _join(leaf.member_max),
                ]
            )
