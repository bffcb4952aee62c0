# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _ffkernel_py: table-driven finite-field matrix kernels.

Field tables are array('i') buffers indexed by a*Q + b; matrices are flat
row-major index tuples.  The Lang scan enumerates invertible matrices by
rows (echelon bookkeeping) entirely in C loops.
"""

from cpython cimport array
import array

DEF NMAX = 8


def mat_mul(int n, a, b, int[:] mul, int[:] add, int Q):
    cdef int A[NMAX * NMAX]
    cdef int B[NMAX * NMAX]
    cdef int out[NMAX * NMAX]
    cdef int i, j, k, acc, ri
    for i in range(n * n):
        A[i] = a[i]
        B[i] = b[i]
    for i in range(n):
        ri = i * n
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add[acc * Q + mul[A[ri + k] * Q + B[k * n + j]]]
            out[ri + j] = acc
    return tuple(out[i] for i in range(n * n))


def mat_map(a, table):
    return tuple(table[x] for x in a)


cdef bint _inv_inplace(int n, int* work, int[:] mul, int[:] add,
                       int[:] inv, int[:] neg, int Q) noexcept:
    # work is n x 2n row-major; right half must start as the identity
    cdef int col, r, piv, s, f, j, tmp
    cdef int w2 = 2 * n
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if work[r * w2 + col]:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != col:
            for j in range(w2):
                tmp = work[col * w2 + j]
                work[col * w2 + j] = work[piv * w2 + j]
                work[piv * w2 + j] = tmp
        s = inv[work[col * w2 + col]]
        if s != 1:
            for j in range(w2):
                work[col * w2 + j] = mul[work[col * w2 + j] * Q + s]
        for r in range(n):
            if r != col and work[r * w2 + col]:
                f = neg[work[r * w2 + col]]
                for j in range(w2):
                    work[r * w2 + j] = add[work[r * w2 + j] * Q +
                                           mul[f * Q + work[col * w2 + j]]]
    return 1


def mat_inv(int n, a, int[:] mul, int[:] add, int[:] inv, int[:] neg, int Q):
    cdef int work[NMAX * 2 * NMAX]
    cdef int i, j
    for i in range(n):
        for j in range(n):
            work[i * 2 * n + j] = a[i * n + j]
            work[i * 2 * n + n + j] = 1 if i == j else 0
    if not _inv_inplace(n, work, mul, add, inv, neg, Q):
        return None
    return tuple(work[i * 2 * n + n + j] for i in range(n) for j in range(n))


def _all_vectors(int n, int Q):
    vecs = [()]
    for _ in range(n):
        vecs = [v + (x,) for v in vecs for x in range(Q)]
    return vecs


def lang_scan(int n, int Q, int[:] mul, int[:] add, int[:] inv, int[:] neg,
              int[:] frob, winv, allowed):
    """All invertible g with g^{-1} frob(g) w^{-1} supported on the allowed
    unipotent slots; returns (matrices, fiber keys)."""
    cdef int WI[NMAX * NMAX]
    cdef int rows[NMAX * NMAX]
    cdef int ech[NMAX * NMAX]
    cdef int echpiv[NMAX]
    cdef int red[NMAX]
    cdef int g[NMAX * NMAX]
    cdef int gi[NMAX * 2 * NMAX]
    cdef int s_[NMAX * NMAX]
    cdef int t_[NMAX * NMAX]
    cdef int v_[NMAX * NMAX]
    cdef bint allow[NMAX * NMAX]
    cdef int i, j, k, acc, f, fn, pc, level, idx, x
    cdef long nvec = 1
    cdef bint ok

    for i in range(n * n):
        WI[i] = winv[i]
        allow[i] = 0
    for idx in allowed:
        allow[idx] = 1

    # all row vectors, as flat int array
    for i in range(n):
        nvec *= Q
    cdef array.array vec_arr = array.array('i', bytes(4 * nvec * n))
    cdef int[:] vecs = vec_arr
    cdef long vi
    for vi in range(nvec):
        x = <int> vi
        for j in range(n - 1, -1, -1):   # lexicographic, first coord slowest
            vecs[vi * n + j] = x % Q
            x //= Q

    points = []
    keys = []
    cdef int stack_level = 0
    cdef long cursor[NMAX]
    cdef int nech[NMAX]
    cursor[0] = 0
    nech[0] = 0

    # iterative DFS over rows
    cdef long c
    level = 0
    while level >= 0:
        c = cursor[level]
        if c >= nvec:
            level -= 1
            continue
        cursor[level] = c + 1
        # reduce candidate against current echelon rows
        for j in range(n):
            red[j] = vecs[c * n + j]
        for k in range(nech[level]):
            f = red[echpiv[k]]
            if f:
                fn = neg[f]
                for j in range(n):
                    red[j] = add[red[j] * Q + mul[fn * Q + ech[k * n + j]]]
        pc = -1
        for j in range(n):
            if red[j]:
                pc = j
                break
        if pc < 0:
            continue
        f = inv[red[pc]]
        if f != 1:
            for j in range(n):
                red[j] = mul[red[j] * Q + f]
        for j in range(n):
            rows[level * n + j] = vecs[c * n + j]
        if level + 1 == n:
            # complete matrix: test the Lang condition
            for i in range(n * n):
                g[i] = rows[i]
            for i in range(n):
                for j in range(n):
                    gi[i * 2 * n + j] = g[i * n + j]
                    gi[i * 2 * n + n + j] = 1 if i == j else 0
            if not _inv_inplace(n, gi, mul, add, inv, neg, Q):
                continue
            for i in range(n * n):
                s_[i] = frob[g[i]]
            # t = g^{-1} * frob(g)
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for k in range(n):
                        acc = add[acc * Q + mul[gi[i * 2 * n + n + k] * Q +
                                                s_[k * n + j]]]
                    t_[i * n + j] = acc
            # v = t * w^{-1}
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for k in range(n):
                        acc = add[acc * Q + mul[t_[i * n + k] * Q +
                                                WI[k * n + j]]]
                    v_[i * n + j] = acc
            ok = True
            for i in range(n):
                for j in range(n):
                    x = v_[i * n + j]
                    if i == j:
                        if x != 1:
                            ok = False
                            break
                    elif not allow[i * n + j] and x != 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                points.append(tuple(g[i] for i in range(n * n)))
                keys.append(tuple(v_[idx] for idx in allowed))
            continue
        # push echelon row and descend
        k = nech[level]
        for j in range(n):
            ech[k * n + j] = red[j]
        echpiv[k] = pc
        level += 1
        cursor[level] = 0
        nech[level] = k + 1
    return points, keys


def invertible_count(int n, int Q):
    total = 1
    for i in range(n):
        total *= Q**n - Q**i
    return total
