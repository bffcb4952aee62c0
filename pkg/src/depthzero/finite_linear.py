"""Finite-field towers F_{q^m} with q = p^f, their matrices, q-power
Frobenius, Moore determinants, root-group elements, and GL_n enumeration.

Field elements are indices encoding polynomial-basis coordinates over F_p
(base-p, little-endian).  Small fields carry full operation tables so the
enumeration kernels can run table-driven; larger fields fall back to
exp/log arithmetic.  The matrix kernels come from the compiled extension
when present, else from the pure-Python twin.
"""

from array import array

from . import _polys
from .errors import BudgetError, DimensionError, DomainError

try:
    from . import _ffkernel as _kern
    KERNEL = "compiled"
except ImportError:
    from . import _ffkernel_py as _kern
    KERNEL = "pure"

TABLE_LIMIT = 256          # full Q x Q tables at or below this order
_tower_cache = {}


def kernel_name():
    return KERNEL


class FieldTower:
    """The field F_{q^m} for q = p^f, presented over its prime field."""

    def __init__(self, p, f=1, m=1):
        if p < 2 or f < 1 or m < 1:
            raise DomainError("bad tower descriptor")
        self.p = p
        self.f = f
        self.m = m
        self.q = p**f
        self.deg = f * m
        self.order = p**self.deg
        if self.order > 10**6:
            raise BudgetError(f"field of order {self.order} exceeds the tower budget")
        self.poly = _polys.defining_poly(p, self.deg)
        self._build_logs()
        self.has_tables = self.order <= TABLE_LIMIT
        if self.has_tables:
            self._build_tables()
        self._embed_cache = {}

    def __repr__(self):
        return f"FieldTower(p={self.p}, f={self.f}, m={self.m})"

    def key(self):
        return (self.p, self.f, self.m)

    # -- construction of tables -------------------------------------------

    def _digits(self, idx):
        p = self.p
        out = []
        for _ in range(self.deg):
            out.append(idx % p)
            idx //= p
        return out

    def _from_digits(self, digits):
        idx = 0
        for c in reversed(digits):
            idx = idx * self.p + (c % self.p)
        return idx

    def _raw_add(self, a, b):
        p = self.p
        out = 0
        base = 1
        for _ in range(self.deg):
            out += ((a % p + b % p) % p) * base
            a //= p
            b //= p
            base *= p
        return out

    def _raw_mul_poly(self, a, b):
        da, db = self._digits(a), self._digits(b)
        prod = _polys.poly_mulmod(da, db, list(self.poly), self.p)
        return self._from_digits(prod)

    def _build_logs(self):
        Q = self.order
        if self.deg == 1:
            gen = (-self.poly[0]) % self.p
        else:
            gen = self.p  # the class of x
        exp = [0] * (Q - 1)
        log = [0] * Q
        cur = 1
        for k in range(Q - 1):
            exp[k] = cur
            log[cur] = k
            cur = self._raw_mul_poly(cur, gen)
        if cur != 1:
            raise DomainError("shipped generator is not primitive")
        self.gen_idx = gen
        self._exp = exp
        self._log = log

    def _build_tables(self):
        Q = self.order
        add = array('i', bytes(4 * Q * Q))
        mul = array('i', bytes(4 * Q * Q))
        for a in range(Q):
            for b in range(Q):
                add[a * Q + b] = self._raw_add(a, b)
                mul[a * Q + b] = self.mul(a, b)
        self.add_table = add
        self.mul_table = mul
        self.neg_table = array('i', [self.neg(a) for a in range(Q)])
        self.inv_table = array('i', [0] + [self.inv(a) for a in range(1, Q)])
        self.frob_table = array('i', [self.frob(a) for a in range(Q)])

    # -- scalar arithmetic on indices --------------------------------------

    def add(self, a, b):
        return self._raw_add(a, b)

    def neg(self, a):
        p = self.p
        out = 0
        base = 1
        for _ in range(self.deg):
            out += ((p - a % p) % p) * base
            a //= p
            base *= p
        return out

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        Q1 = self.order - 1
        return self._exp[(self._log[a] + self._log[b]) % Q1]

    def inv(self, a):
        if a == 0:
            raise DomainError("inverse of zero")
        Q1 = self.order - 1
        return self._exp[(-self._log[a]) % Q1]

    def pow(self, a, k):
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise DomainError("inverse of zero")
            return 0
        Q1 = self.order - 1
        return self._exp[(self._log[a] * k) % Q1]

    def frob(self, a, i=1):
        """a ^ (q^i): the i-fold q-power Frobenius."""
        return self.pow(a, self.q**i)

    def p_power(self, a, i=1):
        return self.pow(a, self.p**i)

    # -- elements -----------------------------------------------------------

    def element(self, value):
        if isinstance(value, FqElement):
            if value.tower is not self:
                raise DomainError("element from a different tower")
            return value
        if isinstance(value, int):
            return FqElement(self, value % self.p)
        # polynomial-basis coordinates
        coords = list(value)
        if len(coords) > self.deg:
            raise DomainError("too many coordinates")
        coords += [0] * (self.deg - len(coords))
        return FqElement(self, self._from_digits(coords))

    def from_index(self, idx):
        if not 0 <= idx < self.order:
            raise DomainError("index out of range")
        return FqElement(self, idx)

    def zero(self):
        return FqElement(self, 0)

    def one(self):
        return FqElement(self, 1)

    def gen(self):
        return FqElement(self, self.gen_idx)

    def elements(self):
        return (FqElement(self, i) for i in range(self.order))

    def zeta(self, e):
        """Pinned primitive e-th root of unity: the least power of the
        shipped generator, gen^((Q-1)/e)."""
        if (self.order - 1) % e != 0:
            raise DomainError(f"no {e}-th roots of unity in this tower")
        return FqElement(self, self.pow(self.gen_idx, (self.order - 1) // e))

    def subfield_indices(self):
        """Indices of the sigma-fixed subfield F_q inside F_{q^m}."""
        return [a for a in range(self.order) if self.frob(a) == a]

    # -- embeddings ---------------------------------------------------------

    def embedding_table(self, other):
        """Index table for the pinned embedding into a larger tower (image
        of the generator is the least root of our defining polynomial)."""
        if other.p != self.p or other.deg % self.deg != 0:
            raise DomainError("no embedding between these towers")
        key = other.key()
        cached = self._embed_cache.get(key)
        if cached is not None:
            return cached
        root = None
        for r in range(other.order):
            acc = 0
            for c in reversed(self.poly):
                acc = other._raw_add(other.mul(acc, r), c % other.p)
            if acc == 0:
                root = r
                break
        if root is None:
            raise DomainError("defining polynomial has no root in target")
        table = array('i', bytes(4 * self.order))
        for idx in range(self.order):
            acc = 0
            for c in reversed(self._digits(idx)):
                acc = other._raw_add(other.mul(acc, root), c % other.p)
            table[idx] = acc
        self._embed_cache[key] = table
        return table


def tower(p, f=1, m=1):
    """Cached tower constructor."""
    key = (p, f, m)
    t = _tower_cache.get(key)
    if t is None:
        t = FieldTower(p, f, m)
        _tower_cache[key] = t
    return t


class FqElement:
    """An element of a FieldTower, by polynomial-basis index."""

    __slots__ = ("tower", "idx")

    def __init__(self, tower, idx):
        self.tower = tower
        self.idx = idx

    def coords(self):
        return tuple(self.tower._digits(self.idx))

    def __repr__(self):
        return f"Fq{self.tower.key()}[{self.idx}]"

    def __eq__(self, other):
        return (isinstance(other, FqElement) and other.tower is self.tower
                and other.idx == self.idx)

    def __hash__(self):
        return hash((self.tower.key(), self.idx))

    def __bool__(self):
        return self.idx != 0

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.tower is not self.tower:
                raise DomainError("mixed towers; embed explicitly")
            return other.idx
        if isinstance(other, int):
            return other % self.tower.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FqElement(self.tower, self.tower.add(self.idx, o))

    __radd__ = __add__

    def __neg__(self):
        return FqElement(self.tower, self.tower.neg(self.idx))

    def __sub__(self, other):
        o = self._coerce(other)
        return FqElement(self.tower, self.tower.add(self.idx, self.tower.neg(o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return FqElement(self.tower, self.tower.mul(self.idx, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FqElement(self.tower, self.tower.mul(self.idx, self.tower.inv(o)))

    def __pow__(self, k):
        return FqElement(self.tower, self.tower.pow(self.idx, k))

    def inverse(self):
        return FqElement(self.tower, self.tower.inv(self.idx))

    def frobenius(self, i=1):
        """q-power Frobenius, iterated i times."""
        return FqElement(self.tower, self.tower.frob(self.idx, i))

    def p_frobenius(self, i=1):
        """p-power Frobenius, iterated i times."""
        return FqElement(self.tower, self.tower.p_power(self.idx, i))

    def embed(self, other_tower):
        table = self.tower.embedding_table(other_tower)
        return FqElement(other_tower, table[self.idx])


class MatrixFq:
    """Square matrix over a FieldTower (flat row-major index tuple)."""

    __slots__ = ("tower", "n", "entries")

    def __init__(self, tower, n, entries):
        entries = tuple(entries)
        if len(entries) != n * n:
            raise DimensionError("entry count does not match size")
        self.tower = tower
        self.n = n
        self.entries = entries

    @classmethod
    def from_rows(cls, tower, rows):
        rows = [[tower.element(x).idx for x in row] for row in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix is not square")
        return cls(tower, n, [x for row in rows for x in row])

    @classmethod
    def identity(cls, tower, n):
        return cls(tower, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, tower, diag):
        n = len(diag)
        ent = [0] * (n * n)
        for i, x in enumerate(diag):
            ent[i * n + i] = tower.element(x).idx
        return cls(tower, n, ent)

    @classmethod
    def permutation(cls, tower, w_matrix):
        """Group element realizing a permutation Weyl matrix on X_*(T)."""
        n = len(w_matrix)
        ent = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                if w_matrix[i][j] not in (0, 1):
                    raise DomainError("not a permutation matrix")
                ent[i * n + j] = w_matrix[i][j]
        return cls(tower, n, ent)

    def rows(self):
        n = self.n
        return tuple(self.entries[i * n:(i + 1) * n] for i in range(n))

    def entry(self, i, j):
        return FqElement(self.tower, self.entries[i * self.n + j])

    def __repr__(self):
        return f"MatrixFq({self.tower.key()}, {self.rows()})"

    def __eq__(self, other):
        return (isinstance(other, MatrixFq) and other.tower is self.tower
                and other.n == self.n and other.entries == self.entries)

    def __hash__(self):
        return hash((self.tower.key(), self.entries))

    def __mul__(self, other):
        if not isinstance(other, MatrixFq):
            return NotImplemented
        if other.tower is not self.tower or other.n != self.n:
            raise DomainError("mixed towers or sizes")
        t = self.tower
        if t.has_tables:
            ent = _kern.mat_mul(self.n, self.entries, other.entries,
                                t.mul_table, t.add_table, t.order)
            return MatrixFq(t, self.n, ent)
        n = self.n
        out = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = t.add(acc, t.mul(self.entries[i * n + k],
                                           other.entries[k * n + j]))
                out[i * n + j] = acc
        return MatrixFq(t, n, out)

    def inverse(self):
        t = self.tower
        if t.has_tables:
            ent = _kern.mat_inv(self.n, self.entries, t.mul_table, t.add_table,
                                t.inv_table, t.neg_table, t.order)
            if ent is None:
                raise DomainError("singular matrix")
            return MatrixFq(t, self.n, ent)
        return self._inverse_generic()

    def _inverse_generic(self):
        t, n = self.tower, self.n
        work = [[self.entries[i * n + j] for j in range(n)]
                + [1 if j == i else 0 for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if work[r][col]), None)
            if piv is None:
                raise DomainError("singular matrix")
            work[col], work[piv] = work[piv], work[col]
            s = t.inv(work[col][col])
            work[col] = [t.mul(x, s) for x in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    f = t.neg(work[r][col])
                    work[r] = [t.add(x, t.mul(f, y))
                               for x, y in zip(work[r], work[col])]
        return MatrixFq(t, n, [work[i][n + j] for i in range(n) for j in range(n)])

    def frobenius(self, i=1):
        t = self.tower
        if i == 1 and t.has_tables:
            return MatrixFq(t, self.n, _kern.mat_map(self.entries, t.frob_table))
        return MatrixFq(t, self.n, [t.frob(x, i) for x in self.entries])

    def det(self):
        t, n = self.tower, self.n
        work = [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]
        d = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if work[r][col]), None)
            if piv is None:
                return t.zero()
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                d = t.neg(d)
            d = t.mul(d, work[col][col])
            s = t.inv(work[col][col])
            work[col] = [t.mul(x, s) for x in work[col]]
            for r in range(col + 1, n):
                if work[r][col]:
                    f = t.neg(work[r][col])
                    work[r] = [t.add(x, t.mul(f, y))
                               for x, y in zip(work[r], work[col])]
        return FqElement(t, d)

    def is_identity(self):
        n = self.n
        return all(self.entries[i * n + j] == (1 if i == j else 0)
                   for i in range(n) for j in range(n))

    def embed(self, other_tower):
        table = self.tower.embedding_table(other_tower)
        return MatrixFq(other_tower, self.n, [table[x] for x in self.entries])


def frobenius(x, i=1):
    """q-power Frobenius on an element or a matrix."""
    return x.frobenius(i)


def moore_det(elems, power=1):
    """Determinant of the Moore matrix (phi^(i-1)(a_j)) where phi is the
    p^power Frobenius; nonzero iff the a_j are independent over F_{p^power}."""
    elems = list(elems)
    if not elems:
        raise DomainError("empty Moore matrix")
    t = elems[0].tower
    n = len(elems)
    if n > t.deg:
        raise DomainError(f"Moore size {n} exceeds tower degree {t.deg}")
    rows = []
    for i in range(n):
        rows.append([t.p_power(a.idx, power * i) for a in elems])
    M = MatrixFq(t, n, [x for row in rows for x in row])
    return M.det()


def root_group_element(tower, n, alpha, c):
    """i_alpha(c) = 1 + c E_{ab} for the gl root alpha = e_a - e_b."""
    if len(alpha) != n:
        raise DimensionError("root length does not match size")
    plus = [i for i, x in enumerate(alpha) if x == 1]
    minus = [i for i, x in enumerate(alpha) if x == -1]
    rest = [x for x in alpha if x not in (-1, 0, 1)]
    if len(plus) != 1 or len(minus) != 1 or rest:
        raise DomainError(f"{alpha} is not a gl root")
    a, b = plus[0], minus[0]
    ent = [1 if i == j else 0 for i in range(n) for j in range(n)]
    ent[a * n + b] = tower.element(c).idx
    return MatrixFq(tower, n, ent)


def gl_root_slot(alpha):
    """(row, col) of the root group of a gl root covector."""
    plus = [i for i, x in enumerate(alpha) if x == 1]
    minus = [i for i, x in enumerate(alpha) if x == -1]
    if len(plus) != 1 or len(minus) != 1 or any(x not in (-1, 0, 1) for x in alpha):
        raise DomainError(f"{alpha} is not a gl root")
    return plus[0], minus[0]


def group_order(n, Q):
    total = 1
    for i in range(n):
        total *= Q**n - Q**i
    return total


def enumerate_group(n, twr, budget=10**7):
    """Every invertible n x n matrix over the tower, exactly once."""
    if group_order(n, twr.order) > budget:
        raise BudgetError(
            f"|GL_{n}(F_{twr.order})| = {group_order(n, twr.order)} exceeds budget {budget}")
    vectors = _all_vectors_py(n, twr.order)
    rows = [None] * n
    ech = []

    def reduce_row(v):
        v = list(v)
        for prow, pc in ech:
            f = v[pc]
            if f:
                fn = twr.neg(f)
                for j in range(n):
                    v[j] = twr.add(v[j], twr.mul(fn, prow[j]))
        return v

    def build(level):
        for v in vectors:
            red = reduce_row(v)
            pc = next((j for j in range(n) if red[j]), None)
            if pc is None:
                continue
            s = twr.inv(red[pc])
            red = [twr.mul(x, s) for x in red]
            rows[level] = v
            if level + 1 == n:
                yield MatrixFq(twr, n, [x for row in rows for x in row])
            else:
                ech.append((red, pc))
                yield from build(level + 1)
                ech.pop()

    yield from build(0)


def _all_vectors_py(n, Q):
    vecs = [()]
    for _ in range(n):
        vecs = [v + (x,) for v in vecs for x in range(Q)]
    return vecs


def prime_field_dependency(coord_rows, p):
    """Nonzero (a_1, ..., a_k) over F_p with sum a_i row_i = 0, or None
    when the rows are F_p-independent."""
    k = len(coord_rows)
    ech = []  # (reduced row, pivot column, combination over input rows)
    for r in range(k):
        row = [x % p for x in coord_rows[r]]
        combo = [1 if i == r else 0 for i in range(k)]
        for erow, ec, ecombo in ech:
            f = row[ec]
            if f:
                row = [(x - f * y) % p for x, y in zip(row, erow)]
                combo = [(x - f * y) % p for x, y in zip(combo, ecombo)]
        c = next((c for c in range(len(row)) if row[c]), None)
        if c is None:
            return tuple(combo)
        inv = pow(row[c], -1, p)
        row = [x * inv % p for x in row]
        combo = [x * inv % p for x in combo]
        ech.append((row, c, combo))
    return None


def fq_kernel(rows, twr, ncols):
    """Basis of {v : rows . v = 0} over the tower, as rref row tuples."""
    R = fq_rref(rows, twr)
    pivots = []
    for row in R:
        pivots.append(next(j for j in range(ncols) if row[j]))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, pivots):
            v[pc] = twr.neg(row[fc])
        basis.append(tuple(v))
    return tuple(basis)


def fq_rref(rows, twr):
    """Reduced row-echelon basis over the tower; zero rows dropped.
    Row entries are raw field indices (or FqElements)."""
    work = [[x.idx if isinstance(x, FqElement) else int(x) for x in row]
            for row in rows]
    m = len(work)
    if m == 0:
        return ()
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        s = twr.inv(work[r][c])
        work[r] = [twr.mul(x, s) for x in work[r]]
        for i in range(m):
            if i != r and work[i][c]:
                f = twr.neg(work[i][c])
                work[i] = [twr.add(x, twr.mul(f, y))
                           for x, y in zip(work[i], work[r])]
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in work[:r] if any(row))
