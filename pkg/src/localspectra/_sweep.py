"""Compiled exhaustive sweeps over subsets of Z/NZ, N = p^n <= 62.

Each subset is a uint64 bitmask.  For every subset the kernel decides the
three properties independently:

  homogeneous  residue counts mod p^i are powers of p, i = 1..n
  tile         exact cover of Z/NZ by translates (smallest-uncovered-first DFS)
  spectral     a clique of size |T| in the graph on Z/NZ whose edges are the
               differences delta with sum_t zeta^{delta t} = 0

The search strategies differ from the ones in :mod:`localspectra.cyclic`
(which look for lexicographically least certificates), so agreement between
the two is a meaningful cross-check.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
    from numba import njit, prange

    # the TBB layer shipped with some distributions is too old; workqueue always works
    numba.config.THREADING_LAYER = "workqueue"
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap if not args or not callable(args[0]) else args[0]

    prange = range


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - np.uint64(1)
        c += 1
    return c


@njit(cache=True)
def _rot(mask, s, N, full):
    if s == 0:
        return mask
    return ((mask << np.uint64(s)) | (mask >> np.uint64(N - s))) & full


@njit(cache=True)
def _elements(mask, N, out):
    k = 0
    for i in range(N):
        if (mask >> np.uint64(i)) & np.uint64(1):
            out[k] = i
            k += 1
    return k


@njit(cache=True)
def _homogeneous(elems, k, p, n):
    m = 1
    for i in range(1, n + 1):
        m *= p
        seen = np.zeros(m, dtype=np.uint8)
        card = 0
        for j in range(k):
            r = elems[j] % m
            if seen[r] == 0:
                seen[r] = 1
                card += 1
        while card > 1 and card % p == 0:
            card //= p
        if card != 1:
            return False
    return True


@njit(cache=True)
def _zero_mask(elems, k, p, N):
    P = N // p
    counts = np.zeros(N, dtype=np.int32)
    z = np.uint64(0)
    for d in range(1, N):
        counts[:] = 0
        for j in range(k):
            counts[(d * elems[j]) % N] += 1
        ok = True
        for r in range(P):
            c0 = counts[r]
            for jj in range(1, p):
                if counts[r + jj * P] != c0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            z |= np.uint64(1) << np.uint64(d)
    return z


@njit(cache=True)
def _has_clique(z, k, N, full):
    need = k - 1
    if need == 0:
        return True
    if _popcount(z) < need:
        return False
    rem = np.zeros(need + 1, dtype=np.uint64)
    rem[0] = z
    depth = 0
    while depth >= 0:
        r = rem[depth]
        if r == 0 or _popcount(r) < need - depth:
            depth -= 1
            continue
        low = r & (~r + np.uint64(1))
        rem[depth] = r ^ low
        b = 0
        while (low >> np.uint64(b)) != np.uint64(1):
            b += 1
        if depth + 1 == need:
            return True
        rem[depth + 1] = rem[depth] & _rot(z, b, N, full)
        depth += 1
    return False


@njit(cache=True)
def _is_tile(mask, elems, k, N, full):
    if N % k != 0:
        return False
    m = N // k
    cov = np.zeros(m + 1, dtype=np.uint64)
    idx = np.zeros(m + 1, dtype=np.int64)
    depth = 0
    while depth >= 0:
        if depth == m:
            return cov[depth] == full
        if idx[depth] >= k:
            depth -= 1
            continue
        c = cov[depth]
        u = 0
        while (c >> np.uint64(u)) & np.uint64(1):
            u += 1
        t = elems[idx[depth]]
        idx[depth] += 1
        s = (u - t) % N
        placed = _rot(mask, s, N, full)
        if placed & c == 0:
            cov[depth + 1] = c | placed
            idx[depth + 1] = 0
            depth += 1
    return False


@njit(cache=True)
def _classify_one(mask, p, n, N, full, elems):
    k = _elements(mask, N, elems)
    h = _homogeneous(elems, k, p, n)
    t = _is_tile(mask, elems, k, N, full)
    z = _zero_mask(elems, k, p, N)
    s = _has_clique(z, k, N, full)
    return h, t, s


@njit(parallel=True, cache=True)
def _classify(masks, p, n, out):
    N = 1
    for _ in range(n):
        N *= p
    full = (np.uint64(1) << np.uint64(N)) - np.uint64(1)
    for i in prange(masks.shape[0]):
        elems = np.zeros(N, dtype=np.int64)
        h, t, s = _classify_one(masks[i], p, n, N, full, elems)
        out[i, 0] = h
        out[i, 1] = t
        out[i, 2] = s


@njit(cache=True)
def _k_subsets(N, k, out):
    """All k-subsets of {0..N-1} as bitmasks in increasing order (Gosper's hack)."""
    if k == 0:
        out[0] = np.uint64(0)
        return
    x = (np.uint64(1) << np.uint64(k)) - np.uint64(1)
    limit = np.uint64(1) << np.uint64(N)
    i = 0
    while x < limit:
        out[i] = x
        i += 1
        c = x & (~x + np.uint64(1))
        r = x + c
        x = (((r ^ x) >> np.uint64(2)) // c) | r


def set_threads(threads: int | None) -> None:
    if HAVE_NUMBA and threads:
        numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))


def default_threads() -> int:
    env = os.environ.get("LOCALSPECTRA_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def classify_masks(masks: np.ndarray, p: int, n: int, threads: int | None = None) -> np.ndarray:
    """Boolean array (len(masks), 3): homogeneous, tile, spectral."""
    if p**n > 62:
        raise ValueError("kernel supports p^n <= 62")
    set_threads(threads)
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    out = np.zeros((len(masks), 3), dtype=np.bool_)
    _classify(masks, p, n, out)
    return out


def k_subsets(N: int, k: int) -> np.ndarray:
    out = np.zeros(math.comb(N, k), dtype=np.uint64)
    _k_subsets(N, k, out)
    return out


def all_nonempty_subsets(N: int) -> np.ndarray:
    return np.arange(1, 1 << N, dtype=np.uint64)


def sweep(p: int, n: int, sizes=None, threads: int | None = None) -> dict:
    """Classify every nonempty subset (or every subset of the given sizes)."""
    N = p**n
    if sizes is None:
        masks = all_nonempty_subsets(N)
    else:
        masks = np.concatenate([k_subsets(N, k) for k in sizes])
    res = classify_masks(masks, p, n, threads)
    agree = (res[:, 0] == res[:, 1]) & (res[:, 1] == res[:, 2])
    bad = np.flatnonzero(~agree)
    return {
        "p": p,
        "n": n,
        "subsets": int(len(masks)),
        "homogeneous": int(res[:, 0].sum()),
        "tiles": int(res[:, 1].sum()),
        "spectral": int(res[:, 2].sum()),
        "discrepancies": int(len(bad)),
        "first_discrepancy": None if not len(bad) else [int(b) for b in range(N) if (int(masks[bad[0]]) >> b) & 1],
        "masks": masks,
        "table": res,
    }
