# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Clustering package for MCN Traffgen."""

from mcn_traffgen.clustering.features import FeatureVector, extract_features
from mcn_traffgen.clustering.quadtree import (
    ClusterAssignment,
    ClusterTree,
    adaptive_cluster,
    assign,
)

__all__ = [
    "ClusterAssignment",
    "ClusterTree",
    "FeatureVector",
    "adaptive_cluster",
    "assign",
    "extract_features",
]
