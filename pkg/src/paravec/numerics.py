"""Deterministic numeric primitives: cosine, correlation statistics, seeded
randomness, and the central-difference gradient oracle.

Everything here operates on float64 numpy arrays. All functions are pure and
safe to call concurrently; `Rng` instances must not be shared across workers.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np

from .errors import ContractError, DegenerateDataError, DegenerateVectorError, NumericError

# Seeded generator type used throughout the package. numpy's PCG64 streams are
# identical across platforms for a given seed.
Rng = np.random.Generator


def new_rng(seed) -> Rng:
    """Create a reproducible random generator from an integer (or sequence) seed."""
    return np.random.default_rng(seed)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity of two nonzero vectors, clamped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ContractError(f"cosine: shapes differ {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise DegenerateVectorError("cosine of a zero-norm vector")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def cosine_grad(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gradients of cosine(u, v) with respect to u and v."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise DegenerateVectorError("cosine gradient of a zero-norm vector")
    c = np.dot(u, v) / (nu * nv)
    du = v / (nu * nv) - c * u / (nu * nu)
    dv = u / (nu * nv) - c * v / (nv * nv)
    return du, dv


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape:
        raise ContractError("pearson: inputs must be equal-length 1-d sequences")
    if x.size < 2:
        raise DegenerateDataError("pearson needs at least 2 points")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = np.dot(xc, xc)
    sy = np.dot(yc, yc)
    if sx == 0.0 or sy == 0.0:
        raise DegenerateDataError("pearson of zero-variance data")
    return float(np.dot(xc, yc) / np.sqrt(sx * sy))


def ranks(xs: Sequence[float]) -> np.ndarray:
    """1-based ranks with ties assigned the average of their span."""
    x = np.asarray(xs, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    r = np.empty(x.size, dtype=np.float64)
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and x[order[j + 1]] == x[order[i]]:
            j += 1
        r[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return r


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation: Pearson correlation of average-tied ranks."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape:
        raise ContractError("spearman: inputs must be equal-length 1-d sequences")
    if x.size < 2:
        raise DegenerateDataError("spearman needs at least 2 points")
    return pearson(ranks(x), ranks(y))


def finite_diff_check(
    loss: Callable[[np.ndarray], float],
    params: np.ndarray,
    analytic: np.ndarray,
    eps: float = 1e-5,
) -> float:
    """Compare an analytic gradient against central finite differences.

    `loss` must be a deterministic scalar function of the flat parameter
    vector `params`; `analytic` is the claimed gradient at `params`. Returns
    the max over coordinates of |analytic - numeric| / max(1, |numeric|).
    """
    params = np.asarray(params, dtype=np.float64)
    analytic = np.asarray(analytic, dtype=np.float64)
    if params.ndim != 1 or analytic.shape != params.shape:
        raise ContractError("finite_diff_check: params and analytic must be matching 1-d arrays")
    if eps <= 0.0:
        raise ContractError("finite_diff_check: eps must be positive")
    worst = 0.0
    work = params.copy()
    for i in range(params.size):
        orig = work[i]
        work[i] = orig + eps
        hi = loss(work)
        work[i] = orig - eps
        lo = loss(work)
        work[i] = orig
        if not (np.isfinite(hi) and np.isfinite(lo)):
            raise NumericError(f"non-finite loss while perturbing coordinate {i}")
        numeric = (hi - lo) / (2.0 * eps)
        err = abs(analytic[i] - numeric) / max(1.0, abs(numeric))
        if err > worst:
            worst = err
    return worst


def pack_arrays(arrays: Sequence[np.ndarray]) -> np.ndarray:
    """Concatenate arrays into one flat float64 vector (copies)."""
    if not arrays:
        return np.zeros(0)
    return np.concatenate([np.asarray(a, dtype=np.float64).ravel() for a in arrays])


def unpack_arrays(flat: np.ndarray, arrays: Sequence[np.ndarray]) -> None:
    """Write a flat vector back into the given arrays, in order, in place."""
    flat = np.asarray(flat, dtype=np.float64)
    offset = 0
    for a in arrays:
        n = a.size
        a[...] = flat[offset : offset + n].reshape(a.shape)
        offset += n
    if offset != flat.size:
        raise ContractError(f"unpack_arrays: size mismatch ({flat.size} given, {offset} needed)")
