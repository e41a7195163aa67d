"""Moment n-tuples: symmetry detection and orthogonal pose estimation."""

import json

import numpy as np

from ._mtuple import (
    AmbiguityError,
    ArgumentError,
    DegenerateInputError,
    FormatError,
    StateError,
    TupleFamily,
    central_moments,
    default_battery_specs,
    derive_tuples,
    enumerate_multi_indices,
    gravity_center,
    image_to_points,
    load_tuples,
    raw_moments,
    read_cloud,
    save_tuples,
    synthetic,
    tuple_rows,
)
from . import _mtuple

__all__ = [
    "AmbiguityError",
    "ArgumentError",
    "DegenerateInputError",
    "FormatError",
    "StateError",
    "TupleFamily",
    "analyze",
    "central_moments",
    "default_battery_specs",
    "derive_tuples",
    "enumerate_multi_indices",
    "estimate",
    "gravity_center",
    "image_to_points",
    "load_tuples",
    "raw_moments",
    "read_cloud",
    "refine_planes",
    "save_tuples",
    "synthetic",
    "tuple_rows",
]


def _arrays(d, keys):
    for k in keys:
        if d.get(k) is not None:
            d[k] = np.asarray(d[k], dtype=float)
    return d


def analyze(points, specs=None, tau_plane=100.0, tau_axis=100.0, point_floor=1e-6):
    """Symmetry report of an (M, n) point array as a dict.

    Ratios that are infinite come back as None.
    """
    report = json.loads(_mtuple._analyze(np.asarray(points, dtype=float), specs, tau_plane, tau_axis, point_floor))
    return _arrays(report, ["singular_values", "singular_vectors", "plane_normal", "axis", "mirror_line"])


def estimate(a, b, mode="rotation_only", specs=None):
    """Orthogonal Q with b ~ Q a, from two (M, n) point arrays."""
    out = json.loads(_mtuple._estimate(np.asarray(a, dtype=float), np.asarray(b, dtype=float), mode, specs))
    return _arrays(out, ["matrix", "rotation", "reflection"])


def refine_planes(points, axis, b_max=8, grid_step=2.0, accept=0.02, max_iters=20):
    """Mirror planes containing `axis`; normals come back as arrays."""
    out = json.loads(
        _mtuple._refine_planes(np.asarray(points, dtype=float), np.asarray(axis, dtype=float), b_max, grid_step,
                               accept, max_iters))
    for p in out["planes"]:
        p["normal"] = np.asarray(p["normal"])
    return out
