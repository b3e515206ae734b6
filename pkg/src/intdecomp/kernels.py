"""Hot loops over Z/p^k.

Every kernel exists twice: a numba version written with explicit loops and a
numpy version that vectorises over rows. ``howell``, ``reduce_rows`` and
``mul_batch`` dispatch to one of them according to ``_accel.USE_NUMBA``.

All arrays are int64 with entries in ``[0, m)``. Moduli are capped at 2**31 at
the API boundary, so a single product of two residues fits in 63 bits; every
kernel reduces after each multiply.
"""
import numpy as np

from . import _accel
from ._accel import njit

INT64_LIMIT = 2**63 - 1


# ---------------------------------------------------------------------------
# numba versions
# ---------------------------------------------------------------------------


@njit(cache=True)
def _valuation_nb(x, p, k):
    if x == 0:
        return k
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@njit(cache=True)
def _inverse_nb(a, m):
    # extended Euclid; a is assumed coprime to m
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % m


@njit(cache=True)
def howell_nb(a, p, k):
    m = 1
    for _ in range(k):
        m *= p
    nr, nc = a.shape
    buf = np.zeros((nr + nc + 1, nc), dtype=np.int64)
    for i in range(nr):
        for j in range(nc):
            buf[i, j] = a[i, j] % m
    n = nr
    prow = 0
    pivcols = np.empty(nc, dtype=np.int64)
    for col in range(nc):
        if prow >= n:
            break
        best = -1
        bestv = k
        for i in range(prow, n):
            x = buf[i, col]
            if x != 0:
                v = _valuation_nb(x, p, k)
                if v < bestv:
                    bestv = v
                    best = i
                    if v == 0:
                        break
        if best < 0:
            continue
        if best != prow:
            for j in range(nc):
                t = buf[prow, j]
                buf[prow, j] = buf[best, j]
                buf[best, j] = t
        pv = 1
        for _ in range(bestv):
            pv *= p
        unit = buf[prow, col] // pv
        if unit != 1:
            uinv = _inverse_nb(unit, m)
            for j in range(col, nc):
                buf[prow, j] = (buf[prow, j] * uinv) % m
        for i in range(prow + 1, n):
            x = buf[i, col]
            if x != 0:
                q = x // pv
                for j in range(col, nc):
                    buf[i, j] = (buf[i, j] - q * buf[prow, j]) % m
        if bestv > 0:
            ann = m // pv
            nonzero = False
            for j in range(col + 1, nc):
                y = (ann * buf[prow, j]) % m
                buf[n, j] = y
                if y != 0:
                    nonzero = True
            buf[n, col] = 0
            if nonzero:
                n += 1
            else:
                for j in range(nc):
                    buf[n, j] = 0
        pivcols[prow] = col
        prow += 1
    for r in range(prow):
        col = pivcols[r]
        pv = buf[r, col]
        for h in range(r):
            x = buf[h, col]
            if x >= pv:
                q = x // pv
                for j in range(col, nc):
                    buf[h, j] = (buf[h, j] - q * buf[r, j]) % m
    return buf[:prow].copy()


@njit(cache=True)
def reduce_rows_nb(h, v, m):
    """Reduce each row of ``v`` by the Howell basis ``h`` (in place copy)."""
    out = v.copy() % m
    nr, nc = h.shape
    for r in range(nr):
        col = 0
        while h[r, col] == 0:
            col += 1
        pv = h[r, col]
        for i in range(out.shape[0]):
            x = out[i, col]
            if x >= pv:
                q = x // pv
                for j in range(col, nc):
                    out[i, j] = (out[i, j] - q * h[r, j]) % m
    return out


@njit(cache=True)
def mul_batch_nb(x, y, table, m):
    n, t = x.shape
    # sparse structure constants; most tables are mostly zero
    nnz = 0
    for i in range(t):
        for s in range(t):
            for l in range(t):
                if table[i, s, l] % m != 0:
                    nnz += 1
    ii = np.empty(nnz, dtype=np.int64)
    ss = np.empty(nnz, dtype=np.int64)
    ll = np.empty(nnz, dtype=np.int64)
    ee = np.empty(nnz, dtype=np.int64)
    q = 0
    for i in range(t):
        for s in range(t):
            for l in range(t):
                e = table[i, s, l] % m
                if e != 0:
                    ii[q], ss[q], ll[q], ee[q] = i, s, l, e
                    q += 1
    # sums of nnz terms below m^2 fit in int64 when this holds
    lazy = m < 3037000499 and nnz * (m - 1) * (m - 1) < 9223372036854775807 // 2
    out = np.zeros((n, t), dtype=np.int64)
    xy = np.empty((t, t), dtype=np.int64)
    for r in range(n):
        for i in range(t):
            for s in range(t):
                xy[i, s] = (x[r, i] * y[r, s]) % m
        if lazy:
            for q in range(nnz):
                out[r, ll[q]] += xy[ii[q], ss[q]] * ee[q]
        else:
            for q in range(nnz):
                out[r, ll[q]] = (out[r, ll[q]] + xy[ii[q], ss[q]] * ee[q]) % m
        for l in range(t):
            out[r, l] %= m
    return out


# ---------------------------------------------------------------------------
# numpy versions
# ---------------------------------------------------------------------------


def _valuations_np(col, p, k):
    v = np.where(col == 0, k, 0)
    y = col.copy()
    for _ in range(k):
        hit = (y != 0) & (y % p == 0)
        if not hit.any():
            break
        v = v + hit
        y = np.where(hit, y // p, y)
    return v


def howell_np(a, p, k):
    m = p**k
    a = np.asarray(a, dtype=np.int64) % m
    nr, nc = a.shape
    buf = np.zeros((nr + nc + 1, nc), dtype=np.int64)
    buf[:nr] = a
    n = nr
    prow = 0
    pivcols = []
    for col in range(nc):
        if prow >= n:
            break
        vals = _valuations_np(buf[prow:n, col], p, k)
        best = int(np.argmin(vals))
        bestv = int(vals[best])
        if bestv >= k:
            continue
        best += prow
        if best != prow:
            buf[[prow, best]] = buf[[best, prow]]
        pv = p**bestv
        unit = int(buf[prow, col]) // pv
        if unit != 1:
            buf[prow] = (buf[prow] * pow(unit, -1, m)) % m
        below = buf[prow + 1 : n]
        q = below[:, col] // pv
        if q.any():
            buf[prow + 1 : n] = (below - np.outer(q, buf[prow])) % m
        if bestv > 0:
            ann = (buf[prow] * (m // pv)) % m
            if ann.any():
                buf[n] = ann
                n += 1
        pivcols.append(col)
        prow += 1
    for r, col in enumerate(pivcols):
        pv = buf[r, col]
        q = buf[:r, col] // pv
        if q.any():
            buf[:r] = (buf[:r] - np.outer(q, buf[r])) % m
    return buf[:prow].copy()


def reduce_rows_np(h, v, m):
    out = np.asarray(v, dtype=np.int64) % m
    for row in h:
        col = int(np.flatnonzero(row)[0])
        q = out[:, col] // row[col]
        if q.any():
            out = (out - np.outer(q, row)) % m
    return out


def mul_batch_np(x, y, table, m):
    n, t = x.shape
    xy = (x[:, :, None] * y[:, None, :]) % m
    flat = table.reshape(t * t, t)
    if t * t * (m - 1) ** 2 < INT64_LIMIT:
        return (xy.reshape(n, t * t) @ flat) % m
    prod = xy.reshape(n, t * t).astype(object) @ flat.astype(object)
    return (prod % m).astype(np.int64)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def howell(a, p, k):
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    if _accel.USE_NUMBA:
        return howell_nb(a, p, k)
    return howell_np(a, p, k)


def reduce_rows(h, v, m):
    v = np.ascontiguousarray(v, dtype=np.int64)
    if h.shape[0] == 0 or v.shape[0] == 0:
        return v % m
    if _accel.USE_NUMBA:
        return reduce_rows_nb(np.ascontiguousarray(h, dtype=np.int64), v, m)
    return reduce_rows_np(h, v, m)


def mul_batch(x, y, table, m):
    x = np.ascontiguousarray(x, dtype=np.int64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    if _accel.USE_NUMBA:
        return mul_batch_nb(x, y, np.ascontiguousarray(table, dtype=np.int64), m)
    return mul_batch_np(x, y, table, m)


def matmul_mod(a, b, m):
    """Exact ``a @ b mod m`` for int64 residue matrices."""
    inner = a.shape[-1]
    if inner * (m - 1) ** 2 < INT64_LIMIT:
        return (a @ b) % m
    prod = a.astype(object) @ b.astype(object)
    return (prod % m).astype(np.int64)
