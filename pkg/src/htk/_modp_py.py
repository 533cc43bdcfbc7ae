"""Pure numpy versions of the mod-p kernels in ``_modp.pyx``.

Same signatures and results; used when the compiled module is missing or
``HTK_PURE_PYTHON`` is set.
"""

import numpy as np

_INT64_MAX = 2**63 - 1


def matmul_modp(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k = a.shape[1]
    if b.shape[0] != k:
        raise ValueError("inner dimensions differ")
    block = max(1, (_INT64_MAX - p) // max(1, (p - 1) ** 2))
    if k <= block:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, k, block):
        out = (out + (a[:, start : start + block] @ b[start : start + block]) % p) % p
    return out


def rref_modp(a, p):
    m = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, tuple(pivots)
