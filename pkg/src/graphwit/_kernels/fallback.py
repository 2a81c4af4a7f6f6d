"""NumPy implementations of the hot kernels (used when the extension is absent)."""

import numpy as np

HAVE_EXT = False


def wht_inplace(v):
    """Unnormalized fast Walsh-Hadamard transform, in place.  len(v) = 2^k."""
    n = v.shape[0]
    h = 1
    while h < n:
        v2 = v.reshape(-1, 2 * h)
        a = v2[:, :h].copy()
        b = v2[:, h:]
        v2[:, :h] = a + b
        v2[:, h:] = a - b
        h *= 2
    return v


def pt_sweep_min(c, ybits, masks, out):
    """Minimum graph-basis diagonal entry of the partial transpose, per mask.

    c      : stabilizer coefficients (2^n float64)
    ybits  : (n, 2^n) uint8, ybits[q, x] = 1 iff generator product x carries a
             Y factor on qubit q
    masks  : int64 array of bipartition masks
    out    : float64 output, one minimum per mask
    """
    scratch = np.empty_like(c)
    f = np.empty(c.shape[0], dtype=np.uint8)
    n = ybits.shape[0]
    for k, m in enumerate(masks):
        f[:] = 0
        for q in range(n):
            if (m >> q) & 1:
                f ^= ybits[q]
        np.multiply(c, 1.0 - 2.0 * f, out=scratch)
        wht_inplace(scratch)
        out[k] = scratch.min()
    return out


def pivot_update(T, r, j):
    """One simplex pivot on tableau T at (row r, column j); returns the pivot row."""
    piv = T[r, j]
    T[r] /= piv
    col = T[:, j].copy()
    col[r] = 0.0
    nz = np.nonzero(col)[0]
    if nz.size > T.shape[0] // 4:
        T -= np.outer(col, T[r])
    elif nz.size:
        T[nz] -= col[nz, None] * T[r]
    return T[r]
