"""Pure-Python kernel for table-driven finite-field matrix work.

Mirrors the compiled ``_ffkernel`` extension; ``finite_linear`` picks
whichever imports.  Matrices are flat row-major sequences of field indices,
field tables are flat sequences indexed by ``a*Q + b``.
"""


def mat_mul(n, a, b, mul, add, Q):
    out = [0] * (n * n)
    for i in range(n):
        ri = i * n
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add[acc * Q + mul[a[ri + k] * Q + b[k * n + j]]]
            out[ri + j] = acc
    return tuple(out)


def mat_map(a, table):
    return tuple(table[x] for x in a)


def mat_inv(n, a, mul, add, inv, neg, Q):
    """Gauss-Jordan inverse; returns None when singular."""
    work = [list(a[i * n:(i + 1) * n]) + [1 if j == i else 0 for j in range(n)]
            for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            return None
        work[col], work[piv] = work[piv], work[col]
        s = inv[work[col][col]]
        if s != 1:
            work[col] = [mul[x * Q + s] for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = neg[work[r][col]]
                row = work[r]
                prow = work[col]
                for j in range(2 * n):
                    row[j] = add[row[j] * Q + mul[f * Q + prow[j]]]
    return tuple(work[i][n + j] for i in range(n) for j in range(n))


def _all_vectors(n, Q):
    vecs = [()]
    for _ in range(n):
        vecs = [v + (x,) for v in vecs for x in range(Q)]
    return vecs


def lang_scan(n, Q, mul, add, inv, neg, frob, winv, allowed):
    """All invertible g over the field with g^{-1} frob(g) w^{-1} supported
    on the allowed unipotent slots; returns (matrices, fiber keys)."""
    vectors = _all_vectors(n, Q)
    allowed_set = set(allowed)
    points = []
    keys = []
    rows = [None] * n
    ech = []

    def reduce_row(v):
        v = list(v)
        for prow, pc in ech:
            f = v[pc]
            if f:
                fn = neg[f]
                for j in range(n):
                    v[j] = add[v[j] * Q + mul[fn * Q + prow[j]]]
        return v

    def finish():
        g = tuple(x for row in rows for x in row)
        gi = mat_inv(n, g, mul, add, inv, neg, Q)
        s = mat_map(g, frob)
        v = mat_mul(n, mat_mul(n, gi, s, mul, add, Q), winv, mul, add, Q)
        key = []
        for i in range(n):
            for j in range(n):
                x = v[i * n + j]
                if i == j:
                    if x != 1:
                        return
                elif i * n + j in allowed_set:
                    key.append(x)
                elif x != 0:
                    return
        points.append(g)
        keys.append(tuple(key))

    def build(level):
        for v in vectors:
            red = reduce_row(v)
            pc = next((j for j in range(n) if red[j]), None)
            if pc is None:
                continue
            s = inv[red[pc]]
            if s != 1:
                red = [mul[x * Q + s] for x in red]
            rows[level] = v
            if level + 1 == n:
                finish()
            else:
                ech.append((red, pc))
                build(level + 1)
                ech.pop()

    build(0)
    return points, keys


def invertible_count(n, Q):
    total = 1
    for i in range(n):
        total *= Q**n - Q**i
    return total
