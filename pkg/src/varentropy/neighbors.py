"""Exact first-nearest-neighbor distances under the Euclidean metric.

Two engines are provided. ``tree`` locates each point's nearest neighbor
with a kd-tree (median split, leaf size 16); ``brute`` is an O(n^2)
exhaustive scan kept as an independent oracle. Both report distances
computed by the same routine, which accumulates squared coordinate
differences in ascending coordinate order, so the two engines return
bit-identical vectors on the same input.

After construction the tree is immutable and per-point queries are
read-only, so queries are safe to run concurrently.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from ._validation import check_engine, check_sample
from .exceptions import DuplicatePointsError
from .streams import substream

_LEAF_SIZE = 16
_BRUTE_CHUNK = 256


def _sq_dist_pairs(A, B):
    """Squared distances between paired rows, summed in coordinate order."""
    acc = np.zeros(A.shape[0])
    for k in range(A.shape[1]):
        diff = A[:, k] - B[:, k]
        acc += diff * diff
    return acc


@dataclass(frozen=True)
class NnDistances:
    """First-nearest-neighbor distances of a sample.

    Attributes
    ----------
    rho : ndarray of shape (n,)
        Distance from each point to its closest other point.
    neighbor : ndarray of shape (n,)
        Index of that closest other point.
    n : int
        Number of points.
    dim : int
        Coordinate dimension.
    """

    rho: np.ndarray
    neighbor: np.ndarray
    n: int
    dim: int


def _tree_neighbors(X):
    tree = cKDTree(X, leafsize=_LEAF_SIZE, balanced_tree=True, compact_nodes=True)
    _, idx = tree.query(X, k=2)
    return idx[:, 1]


def _brute_neighbors(X):
    n, d = X.shape
    neighbor = np.empty(n, dtype=np.intp)
    best = np.empty(n)
    for lo in range(0, n, _BRUTE_CHUNK):
        hi = min(lo + _BRUTE_CHUNK, n)
        acc = np.zeros((hi - lo, n))
        for k in range(d):
            diff = X[lo:hi, k, None] - X[None, :, k]
            acc += diff * diff
        acc[np.arange(hi - lo), np.arange(lo, hi)] = np.inf
        j = np.argmin(acc, axis=1)
        neighbor[lo:hi] = j
        best[lo:hi] = acc[np.arange(hi - lo), j]
    return neighbor, best


def nn_distances(X, engine="tree", duplicate_policy="error", jitter_width=None,
                 jitter_seed=0):
    """Build the nearest-neighbor distance vector of a sample.

    Parameters
    ----------
    X : array-like of shape (n, d)
        Sample points; every coordinate must be finite and n >= 2.
    engine : {'tree', 'brute'}
        Neighbor search strategy. Both are exact and agree bitwise.
    duplicate_policy : {'error', 'jitter'}
        Coincident points make the downstream log statistic -inf, so by
        default they raise :class:`DuplicatePointsError`. With ``'jitter'``
        uniform noise of half-width ``jitter_width`` is added to every
        coordinate before building.
    jitter_width : float, optional
        Half-width of the jitter noise; required when jittering.
    jitter_seed : int
        Seed of the jitter noise stream.

    Returns
    -------
    NnDistances
    """
    X = check_sample(X)
    check_engine(engine)
    if duplicate_policy not in ("error", "jitter"):
        raise ValueError(
            f"duplicate_policy must be 'error' or 'jitter', got {duplicate_policy!r}"
        )
    if duplicate_policy == "jitter":
        if jitter_width is None or not jitter_width > 0:
            raise ValueError("jitter requires a positive jitter_width")
        rng = substream(jitter_seed, 104)
        X = X + rng.uniform(-jitter_width, jitter_width, size=X.shape)

    if engine == "tree":
        neighbor = _tree_neighbors(X)
        sq = _sq_dist_pairs(X, X[neighbor])
    else:
        neighbor, sq = _brute_neighbors(X)
    rho = np.sqrt(sq)

    if np.any(rho == 0.0):
        offenders = np.flatnonzero(rho == 0.0)
        pairs = set()
        for i in offenders:
            j = int(neighbor[i])
            if j == i:
                # a zero-distance tie can make the tree report the point itself
                sq = _sq_dist_pairs(X, np.broadcast_to(X[i], X.shape))
                sq[i] = np.inf
                j = int(np.argmin(sq))
            pairs.add((min(int(i), j), max(int(i), j)))
        raise DuplicatePointsError(sorted(pairs))
    return NnDistances(rho=rho, neighbor=neighbor, n=X.shape[0], dim=X.shape[1])


def pairwise_min_distance(X):
    """Smallest inter-point distance, by exhaustive scan over all pairs.

    Useful as a duplicate screen: a return value of zero means the sample
    contains coincident points.
    """
    X = check_sample(X)
    n, d = X.shape
    best = np.inf
    for lo in range(0, n, _BRUTE_CHUNK):
        hi = min(lo + _BRUTE_CHUNK, n)
        acc = np.zeros((hi - lo, n))
        for k in range(d):
            diff = X[lo:hi, k, None] - X[None, :, k]
            acc += diff * diff
        acc[np.arange(hi - lo), np.arange(lo, hi)] = np.inf
        best = min(best, float(np.sqrt(acc.min())))
    return best
