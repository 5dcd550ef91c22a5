"""Integer kernels for Demazure operators on formal sums of lattice points.

A formal sum is a pair ``(W, m)``: ``W`` an ``(k, d)`` int64 array of lattice
points (one per row, sorted lexicographically, no repeats) and ``m`` a length
``k`` array of nonzero integer multiplicities.  The operator for a root
``alpha`` with coroot functional ``p`` sends ``e^mu`` with ``n = p . mu`` to

* ``e^mu + e^(mu - alpha) + ... + e^(mu - n alpha)``  if ``n >= 0``
* ``0``                                               if ``n == -1``
* ``-(e^(mu + alpha) + ... + e^(mu + (-n-1) alpha))`` if ``n <= -2``

Each kernel has a numba version and a numpy version with identical output;
``QWHITTAKER_NO_NUMBA=1`` selects the numpy one globally.  Multiplicities
that could leave int64 range are handled by the numpy path on object arrays.
"""
import numpy as np

from ._accel import HAVE_NUMBA, njit

_INT64_SAFE = 2**62


@njit(cache=True)
def _expand_nb(W, m, alpha, pairing):
    k, d = W.shape
    counts = np.empty(k, dtype=np.int64)
    total = 0
    for r in range(k):
        n = 0
        for j in range(d):
            n += W[r, j] * pairing[j]
        if n >= 0:
            c = n + 1
        elif n == -1:
            c = 0
        else:
            c = -n - 1
        counts[r] = c
        total += c
    out_w = np.empty((total, d), dtype=np.int64)
    out_m = np.empty(total, dtype=np.int64)
    pos = 0
    for r in range(k):
        n = 0
        for j in range(d):
            n += W[r, j] * pairing[j]
        if n >= 0:
            for s in range(n + 1):
                for j in range(d):
                    out_w[pos, j] = W[r, j] - s * alpha[j]
                out_m[pos] = m[r]
                pos += 1
        elif n <= -2:
            for s in range(1, -n):
                for j in range(d):
                    out_w[pos, j] = W[r, j] + s * alpha[j]
                out_m[pos] = -m[r]
                pos += 1
    return out_w, out_m


@njit(cache=True)
def _aggregate_nb(W, m):
    k, d = W.shape
    if k == 0:
        return W, m
    lo = np.empty(d, dtype=np.int64)
    span = np.empty(d, dtype=np.int64)
    for j in range(d):
        a = W[0, j]
        b = W[0, j]
        for r in range(1, k):
            v = W[r, j]
            if v < a:
                a = v
            if v > b:
                b = v
        lo[j] = a
        span[j] = b - a + 1
    # first column most significant, so key order is lexicographic row order
    key = np.zeros(k, dtype=np.int64)
    for r in range(k):
        acc = 0
        for j in range(d):
            acc = acc * span[j] + (W[r, j] - lo[j])
        key[r] = acc
    order = np.argsort(key, kind="mergesort")
    out_w = np.empty((k, d), dtype=np.int64)
    out_m = np.empty(k, dtype=np.int64)
    nout = 0
    r = 0
    while r < k:
        i0 = order[r]
        s = m[i0]
        r2 = r + 1
        while r2 < k and key[order[r2]] == key[i0]:
            s += m[order[r2]]
            r2 += 1
        if s != 0:
            for j in range(d):
                out_w[nout, j] = W[i0, j]
            out_m[nout] = s
            nout += 1
        r = r2
    return out_w[:nout].copy(), out_m[:nout].copy()


def _key_fits(W):
    if W.shape[0] == 0:
        return True
    span = W.max(axis=0).astype(object) - W.min(axis=0).astype(object) + 1
    prod = 1
    for s in span:
        prod *= int(s)
    return prod < _INT64_SAFE


def expand_np(W, m, alpha, pairing):
    n = W @ pairing
    counts = np.where(n >= 0, n + 1, np.where(n == -1, 0, -n - 1))
    rows = np.repeat(np.arange(W.shape[0]), counts)
    # position of each output row inside its own string: 0..count-1
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    s = np.arange(rows.size) - starts
    nr = n[rows]
    sign = np.where(nr >= 0, -1, 1)
    step = np.where(nr >= 0, s, s + 1)
    out_w = W[rows] + (sign * step)[:, None] * alpha[None, :]
    out_m = m[rows] * np.where(nr >= 0, 1, -1)
    return out_w.astype(np.int64), out_m


def aggregate_np(W, m):
    if W.shape[0] == 0:
        return W, m
    order = np.lexsort(W.T[::-1])
    Ws, ms = W[order], m[order]
    new = np.ones(Ws.shape[0], dtype=bool)
    new[1:] = np.any(Ws[1:] != Ws[:-1], axis=1)
    idx = np.flatnonzero(new)
    sums = np.add.reduceat(ms, idx)
    keep = sums != 0
    return Ws[idx][keep], sums[keep]


def demazure_step(W, m, alpha, pairing, use_numba=None):
    """Apply one Demazure operator to the formal sum ``(W, m)``."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    alpha = np.asarray(alpha, dtype=np.int64)
    pairing = np.asarray(pairing, dtype=np.int64)
    small = m.dtype != object and int(np.abs(m).sum()) < _INT64_SAFE
    if use_numba and HAVE_NUMBA and small:
        W2, m2 = _expand_nb(W, m, alpha, pairing)
        if _key_fits(W2):
            return _aggregate_nb(W2, m2)
        return aggregate_np(W2, m2)
    if not small and m.dtype != object:
        m = m.astype(object)
    W2, m2 = expand_np(W, m, alpha, pairing)
    return aggregate_np(W2, m2)


def demazure_word(W, m, word_vectors, use_numba=None):
    """Apply operators right to left; ``word_vectors`` is a list of (alpha, pairing)."""
    for alpha, pairing in reversed(word_vectors):
        W, m = demazure_step(W, m, alpha, pairing, use_numba=use_numba)
    return W, m


def single_point(point, mult=1):
    W = np.asarray([point], dtype=np.int64)
    m = np.asarray([mult], dtype=np.int64)
    return W, m
