"""Numeric hot kernels: grid-based walk-counting DFS and CSR matvec.

Both kernels are plain numpy code that numba can compile.  Compilation is
skipped when numba is unavailable or the GROWTH_BOUNDS_NO_NUMBA environment
variable is set (any non-empty value), in which case the same functions run
uncompiled as the fallback path.
"""

import os

import numpy as np

USE_NUMBA = not os.environ.get("GROWTH_BOUNDS_NO_NUMBA")
if USE_NUMBA:
    try:
        import numba
    except ImportError:
        USE_NUMBA = False


def _maybe_njit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


@_maybe_njit
def count_table_walks(n, kappa, disp, opp, table, stub_bit, chord_bit,
                      prefix, counts):
    """DFS count of walks allowed by a vertex-configuration table.

    Grid state per position: accumulated config bitmask (`conf`, indexed into
    `table`) and occupied incident-direction bitmask (`used`).  Walks start at
    the origin with the steps in `prefix` already applied; counts[m] is
    incremented for every allowed walk of m steps (m > len(prefix)) extending
    the prefix.  Returns 1 if the prefix itself is allowed, else 0.
    """
    W = 2 * n + 1
    conf = np.zeros(W * W, dtype=np.int64)
    used = np.zeros(W * W, dtype=np.uint8)
    # Per-depth trail for undo.
    t_u = np.zeros(n, dtype=np.int64)
    t_ucf = np.zeros(n, dtype=np.int64)
    t_uus = np.zeros(n, dtype=np.uint8)
    t_v = np.zeros(n, dtype=np.int64)
    t_vcf = np.zeros(n, dtype=np.int64)
    t_vus = np.zeros(n, dtype=np.uint8)
    t_x = np.zeros(n, dtype=np.int64)
    t_y = np.zeros(n, dtype=np.int64)
    t_last = np.zeros(n, dtype=np.int64)
    nextdir = np.zeros(n + 1, dtype=np.int64)

    cx = np.int64(0)
    cy = np.int64(0)
    last = np.int64(-1)
    depth = 0

    # Inline push routine (numba-friendly: duplicated for prefix and DFS).
    for pi in range(len(prefix)):
        d = prefix[pi]
        u = (cx + n) * W + (cy + n)
        uu = used[u]
        if (uu >> d) & 1:
            return 0
        cu = conf[u]
        if last < 0:
            ncu = cu | stub_bit[d]
        else:
            back = opp[last]
            ncu = (cu & ~stub_bit[back]) | chord_bit[back * kappa + d]
        if table[ncu] == 0:
            return 0
        nx = cx + disp[d, 0]
        ny = cy + disp[d, 1]
        v = (nx + n) * W + (ny + n)
        bo = opp[d]
        ncv = conf[v] | stub_bit[bo]
        if table[ncv] == 0:
            return 0
        conf[u] = ncu
        used[u] = uu | (1 << d)
        conf[v] = ncv
        used[v] = used[v] | (1 << bo)
        cx = nx
        cy = ny
        last = d
        depth += 1

    d0 = depth
    nextdir[depth] = 0
    while True:
        if depth == n or nextdir[depth] == kappa:
            if depth == d0:
                break
            depth -= 1
            # undo the push recorded at this depth
            conf[t_v[depth]] = t_vcf[depth]
            used[t_v[depth]] = t_vus[depth]
            conf[t_u[depth]] = t_ucf[depth]
            used[t_u[depth]] = t_uus[depth]
            cx = t_x[depth]
            cy = t_y[depth]
            last = t_last[depth]
            continue
        d = nextdir[depth]
        nextdir[depth] += 1
        u = (cx + n) * W + (cy + n)
        uu = used[u]
        if (uu >> d) & 1:
            continue
        cu = conf[u]
        if last < 0:
            ncu = cu | stub_bit[d]
        else:
            back = opp[last]
            ncu = (cu & ~stub_bit[back]) | chord_bit[back * kappa + d]
        if table[ncu] == 0:
            continue
        nx = cx + disp[d, 0]
        ny = cy + disp[d, 1]
        v = (nx + n) * W + (ny + n)
        bo = opp[d]
        cv = conf[v]
        ncv = cv | stub_bit[bo]
        if table[ncv] == 0:
            continue
        t_u[depth] = u
        t_ucf[depth] = cu
        t_uus[depth] = uu
        t_v[depth] = v
        t_vcf[depth] = cv
        t_vus[depth] = used[v]
        t_x[depth] = cx
        t_y[depth] = cy
        t_last[depth] = last
        conf[u] = ncu
        used[u] = uu | (1 << d)
        conf[v] = ncv
        used[v] = used[v] | (1 << bo)
        cx = nx
        cy = ny
        last = d
        depth += 1
        counts[depth] += 1
        nextdir[depth] = 0
    return 1


@_maybe_njit
def csr_matvec(indptr, indices, data, x, out):
    for i in range(out.shape[0]):
        s = 0.0
        for jj in range(indptr[i], indptr[i + 1]):
            s += data[jj] * x[indices[jj]]
        out[i] = s
