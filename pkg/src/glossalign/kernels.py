"""Numeric kernels behind the split search.

Two interchangeable backends: numba-jitted loops (default when numba is
importable) and plain numpy. Select with the environment variable
``GLOSSALIGN_BACKEND=numba|numpy``; the choice is made once at import.
``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _np_row_max(a):
    return a.max(axis=1)


def _np_split_curve(max_left, max_right):
    g = max_left.shape[0]
    curve = np.empty(g + 1, dtype=np.float64)
    curve[0] = max_right.sum()
    # curve[k+1] = curve[k] + max_left[k] - max_right[k]
    np.cumsum(max_left - max_right, out=curve[1:])
    curve[1:] += curve[0]
    return curve


def _np_argmax_near(scores, current_k):
    best = int(np.argmax(scores))
    ties = np.flatnonzero(scores == scores[best])
    dist = np.abs(ties - current_k)
    return int(ties[np.lexsort((ties, dist))[0]])


def _np_threshold_combine(a_bert, a_vec, alpha):
    return a_bert + np.where(a_vec >= alpha, a_vec, 0.0)


_NUMPY = {
    "row_max": _np_row_max,
    "split_curve": _np_split_curve,
    "argmax_near": _np_argmax_near,
    "threshold_combine": _np_threshold_combine,
}


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _nb_row_max(a):
        g, w = a.shape
        out = np.empty(g, dtype=np.float64)
        for i in range(g):
            m = a[i, 0]
            for j in range(1, w):
                if a[i, j] > m:
                    m = a[i, j]
            out[i] = m
        return out

    @njit(cache=True)
    def _nb_split_curve(max_left, max_right):
        g = max_left.shape[0]
        curve = np.empty(g + 1, dtype=np.float64)
        total = 0.0
        for i in range(g):
            total += max_right[i]
        curve[0] = total
        for k in range(g):
            curve[k + 1] = curve[k] + max_left[k] - max_right[k]
        return curve

    @njit(cache=True)
    def _nb_argmax_near(scores, current_k):
        best = 0
        best_dist = abs(0 - current_k)
        for k in range(1, scores.shape[0]):
            d = abs(k - current_k)
            if scores[k] > scores[best] or (scores[k] == scores[best] and d < best_dist):
                best = k
                best_dist = d
        return best

    @njit(cache=True)
    def _nb_threshold_combine(a_bert, a_vec, alpha):
        g, w = a_bert.shape
        out = np.empty((g, w), dtype=np.float64)
        for i in range(g):
            for j in range(w):
                v = a_vec[i, j]
                out[i, j] = a_bert[i, j] + (v if v >= alpha else 0.0)
        return out

    _NUMBA = {
        "row_max": _nb_row_max,
        "split_curve": _nb_split_curve,
        "argmax_near": _nb_argmax_near,
        "threshold_combine": _nb_threshold_combine,
    }
else:  # pragma: no cover
    _NUMBA = None


def _select_backend():
    requested = os.environ.get("GLOSSALIGN_BACKEND", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(
            f"GLOSSALIGN_BACKEND must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numpy":
        return "numpy", _NUMPY
    if requested == "numba" and not HAS_NUMBA:
        raise ValueError("GLOSSALIGN_BACKEND=numba but numba is not installed")
    if HAS_NUMBA:
        return "numba", _NUMBA
    return "numpy", _NUMPY


_BACKEND_NAME, _IMPL = _select_backend()


def backend_name() -> str:
    """Name of the active backend ('numba' or 'numpy')."""
    return _BACKEND_NAME


def row_max(a: np.ndarray) -> np.ndarray:
    """Per-row maximum of a G x W score matrix; rows of an empty word axis score 0."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros(a.shape[0], dtype=np.float64)
    return _IMPL["row_max"](a)


def split_curve(max_left: np.ndarray, max_right: np.ndarray) -> np.ndarray:
    """Scores of every split index k in [0, G] given per-gloss row maxima.

    curve[k] = sum(max_left[:k]) + sum(max_right[k:]); length G + 1.
    """
    max_left = np.ascontiguousarray(max_left, dtype=np.float64)
    max_right = np.ascontiguousarray(max_right, dtype=np.float64)
    if max_left.shape != max_right.shape:
        raise ValueError(
            f"row maxima length mismatch: {max_left.shape[0]} vs {max_right.shape[0]}"
        )
    if max_left.shape[0] == 0:
        return np.zeros(1, dtype=np.float64)
    return _IMPL["split_curve"](max_left, max_right)


def argmax_near(scores: np.ndarray, current_k: int) -> int:
    """Argmax index; ties prefer minimal |k - current_k|, then the smaller k."""
    scores = np.ascontiguousarray(scores, dtype=np.float64)
    if scores.shape[0] == 0:
        raise ValueError("argmax_near over an empty score array")
    return int(_IMPL["argmax_near"](scores, current_k))


def threshold_combine(a_bert: np.ndarray, a_vec: np.ndarray, alpha: float) -> np.ndarray:
    """a_bert + a_vec with static-channel entries below alpha dropped."""
    a_bert = np.ascontiguousarray(a_bert, dtype=np.float64)
    a_vec = np.ascontiguousarray(a_vec, dtype=np.float64)
    if a_bert.shape != a_vec.shape:
        raise ValueError(f"shape mismatch: {a_bert.shape} vs {a_vec.shape}")
    if a_bert.size == 0:
        return a_bert.copy()
    return _IMPL["threshold_combine"](a_bert, a_vec, float(alpha))


def warmup() -> None:
    """Trigger jit compilation of all kernels (no-op on the numpy backend)."""
    a = np.ones((2, 2), dtype=np.float64)
    v = np.ones(2, dtype=np.float64)
    row_max(a)
    split_curve(v, v)
    argmax_near(v, 0)
    threshold_combine(a, a, 0.5)
