"""Exact linear algebra over Q and Z on tuples of Fractions/ints.

Everything here is small and dense (rank <= ~10), so plain Gaussian
elimination with Fraction arithmetic is both exact and fast enough.
"""

from fractions import Fraction

from .errors import DimensionError, DomainError


def vec_dot(x, y):
    if len(x) != len(y):
        raise DimensionError(f"lengths {len(x)} and {len(y)} differ")
    return sum(a * b for a, b in zip(x, y))


def vec_add(x, y):
    if len(x) != len(y):
        raise DimensionError(f"lengths {len(x)} and {len(y)} differ")
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y):
    if len(x) != len(y):
        raise DimensionError(f"lengths {len(x)} and {len(y)} differ")
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x):
    return tuple(c * a for a in x)


def vec_neg(x):
    return tuple(-a for a in x)


def vec_is_zero(x):
    return all(a == 0 for a in x)


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_vec(M, v):
    return tuple(vec_dot(row, v) for row in M)


def row_mat(v, M):
    """Row vector times matrix."""
    n = len(M)
    if len(v) != n:
        raise DimensionError("row/matrix mismatch")
    return tuple(sum(v[i] * M[i][j] for i in range(n)) for j in range(len(M[0])))


def mat_mul(A, B):
    if len(A[0]) != len(B):
        raise DimensionError("inner dimensions differ")
    Bt = tuple(zip(*B))
    return tuple(tuple(vec_dot(row, col) for col in Bt) for row in A)


def mat_sub(A, B):
    return tuple(vec_sub(ra, rb) for ra, rb in zip(A, B))


def mat_transpose(A):
    return tuple(zip(*A))


def mat_is_identity(A):
    n = len(A)
    return all(A[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def mat_inv(M):
    """Exact inverse of a square matrix over Q; DomainError if singular."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise DomainError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return tuple(tuple(row[n:]) for row in A)


_int_inv_cache = {}


def mat_inv_int(M):
    """Inverse of a unimodular integer matrix, returned with int entries."""
    cached = _int_inv_cache.get(M)
    if cached is not None:
        return cached
    inv = mat_inv(M)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise DomainError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    out = tuple(out)
    _int_inv_cache[M] = out
    return out


def mat_order(M, bound=10**5):
    """Multiplicative order of a square matrix; DomainError past ``bound``."""
    n = len(M)
    P = M
    for k in range(1, bound + 1):
        if mat_is_identity(P):
            return k
        P = mat_mul(P, M)
    raise DomainError(f"matrix order exceeds {bound}")


def rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    R = [list(map(Fraction, r)) for r in rows]
    m = len(R)
    ncols = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in R), tuple(pivots)


def kernel_basis(A):
    """Basis of {x : A x = 0} over Q for A given as rows."""
    if not A:
        raise DomainError("empty matrix")
    n = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def in_span(v, basis):
    """Whether v lies in the rational span of the given vectors."""
    if not basis:
        return vec_is_zero(v)
    rows = [list(b) for b in basis]
    _, piv_before = rref(rows)
    _, piv_after = rref(rows + [list(v)])
    return len(piv_after) == len(piv_before)


def solve_linear(A, b):
    """One rational solution of A x = b (rows = equations), or None."""
    n = len(A[0])
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return tuple(x)


def smith_normal_form(A):
    """Smith normal form over Z: returns (D, L, R) with L @ A @ R = D.

    L and R are unimodular; D is diagonal with d_1 | d_2 | ... >= 0.
    """
    m = len(A)
    n = len(A[0])
    D = [list(map(int, row)) for row in A]
    L = [list(row) for row in mat_identity(m)]
    R = [list(row) for row in mat_identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        L[dst] = [a + k * b for a, b in zip(L[dst], L[src])]

    def add_col(dst, src, k):
        for row in D:
            row[dst] += k * row[src]
        for row in R:
            row[dst] += k * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        L[i] = [-a for a in L[i]]

    s = 0
    while s < min(m, n):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(s, best[0])
        swap_cols(s, best[1])
        dirty = False
        for i in range(s + 1, m):
            if D[i][s] != 0:
                add_row(i, s, -(D[i][s] // D[s][s]))
                dirty = dirty or D[i][s] != 0
        for j in range(s + 1, n):
            if D[s][j] != 0:
                add_col(j, s, -(D[s][j] // D[s][s]))
                dirty = dirty or D[s][j] != 0
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        culprit = None
        for i in range(s + 1, m):
            for j in range(s + 1, n):
                if D[i][j] % D[s][s] != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(s, culprit, 1)
            continue
        if D[s][s] < 0:
            negate_row(s)
        s += 1

    Dt = tuple(tuple(row) for row in D)
    return Dt, tuple(tuple(row) for row in L), tuple(tuple(row) for row in R)


def invariant_factors(A):
    """Invariant factors d_1 | d_2 | ... of the cokernel of A on Z^rows.

    Zeros (free factors) come last; for a square matrix the tuple has
    length equal to the rank of the ambient lattice.
    """
    D, _, _ = smith_normal_form(A)
    m = len(A)
    diag = [D[i][i] for i in range(min(m, len(A[0])))]
    nonzero = [d for d in diag if d != 0]
    return tuple(nonzero) + (0,) * (m - len(nonzero))


def integer_kernel_basis(A):
    """Basis of {x in Z^n : A x = 0} (primitive integer vectors)."""
    D, _, R = smith_normal_form(A)
    m, n = len(A), len(A[0])
    basis = []
    for j in range(n):
        if j >= m or D[j][j] == 0:
            basis.append(tuple(R[i][j] for i in range(n)))
    return tuple(basis)
