"""Based root data with a pinned finite-order automorphism.

Roots are stored as integer covectors on the cocharacter lattice X_*(T),
coroots as integer vectors, and the pairing is the coordinate dot product.
All arithmetic is exact.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DomainError, BudgetError, InvariantViolation, SpecParseError


def pairing(alpha, nu):
    """Pairing <alpha, nu> of a root covector with a (rational) cocharacter."""
    return linalg.vec_dot(alpha, nu)


@dataclass(frozen=True)
class WeylElement:
    """An element of W_o as an integer matrix on X_*(T), with an optional
    reduced word in simple reflections."""

    matrix: tuple
    word: tuple = None

    def __mul__(self, other):
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(linalg.mat_mul(self.matrix, other.matrix), word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def act(self, nu):
        """Action on a cocharacter."""
        return linalg.mat_vec(self.matrix, nu)

    def act_root(self, alpha):
        """Action on a root covector (inverse-transpose of the X_* action)."""
        return linalg.row_mat(alpha, linalg.mat_inv_int(self.matrix))

    def inverse(self):
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(linalg.mat_inv_int(self.matrix), word)

    def is_identity(self):
        return linalg.mat_is_identity(self.matrix)

    def order(self):
        return linalg.mat_order(self.matrix)


@dataclass(frozen=True)
class BasedRootDatum:
    """Split based root datum plus a finite-order lattice automorphism sigma
    permuting the simple roots (identity by default)."""

    rank: int
    roots: tuple          # covectors on X_*(T)
    coroots: tuple        # vectors in X_*(T), index-aligned with roots
    simple: tuple         # indices into roots
    sigma: tuple          # invertible integer matrix on X_*(T)

    def __post_init__(self):
        self._validate()

    def _validate(self):
        n = self.rank
        for alpha, cov in zip(self.roots, self.coroots):
            if len(alpha) != n or len(cov) != n:
                raise DomainError("root/coroot length does not match rank")
            if pairing(alpha, cov) != 2:
                raise DomainError(f"<alpha, alpha^vee> != 2 for {alpha}")
        root_set = set(self.roots)
        if len(root_set) != len(self.roots):
            raise DomainError("duplicate roots")
        for i in self.simple:
            s = self.reflection(i)
            for alpha in self.roots:
                if s.act_root(alpha) not in root_set:
                    raise InvariantViolation(
                        "reflection_permutes_roots", f"s_{i} breaks the root set")
        # sigma must have finite order and permute the simple roots
        linalg.mat_order(self.sigma, bound=10**4)
        simple_set = {self.roots[i] for i in self.simple}
        sig_inv = linalg.mat_inv_int(self.sigma)
        for i in self.simple:
            img = linalg.row_mat(self.roots[i], sig_inv)
            if img not in simple_set:
                raise DomainError("sigma does not permute the simple roots")

    # -- derived data ----------------------------------------------------

    def reflection(self, root_index):
        """Simple reflection s_alpha(x) = x - <alpha, x> alpha^vee."""
        alpha = self.roots[root_index]
        cov = self.coroots[root_index]
        n = self.rank
        cols = []
        for j in range(n):
            e = tuple(int(k == j) for k in range(n))
            cols.append(linalg.vec_sub(e, linalg.vec_scale(alpha[j], cov)))
        matrix = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
        return WeylElement(matrix, word=(root_index,))

    def identity_weyl(self):
        return WeylElement(linalg.mat_identity(self.rank), word=())

    def simple_roots(self):
        return tuple(self.roots[i] for i in self.simple)

    def positive_roots(self):
        """Roots that are nonnegative combinations of the simple roots."""
        simple = self.simple_roots()
        if not simple:
            return ()
        rows = linalg.mat_transpose(simple)  # columns are simple roots
        out = []
        for alpha in self.roots:
            coeffs = linalg.solve_linear(rows, alpha)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                out.append(alpha)
        return tuple(out)

    def center_cochars(self):
        """Integer basis of X_*(Z_G) = {nu : <alpha, nu> = 0 for all roots}."""
        if not self.roots:
            return tuple(linalg.mat_identity(self.rank))
        return linalg.integer_kernel_basis(self.roots)

    def sigma_on_cochar(self, nu):
        return linalg.mat_vec(self.sigma, nu)

    def sigma_on_root(self, alpha):
        return linalg.row_mat(alpha, linalg.mat_inv_int(self.sigma))


def classify_cocharacter(datum, mu):
    """Dominance (<alpha, mu> >= 0 on simple roots) and minusculity
    (<alpha, mu> in {-1, 0, 1} on all roots)."""
    dominant = all(pairing(a, mu) >= 0 for a in datum.simple_roots())
    minuscule = all(pairing(a, mu) in (-1, 0, 1) for a in datum.roots)
    return {"dominant": dominant, "minuscule": minuscule}


_weyl_cache = {}


def weyl_group(datum, bound=10**6):
    """The full Weyl group, as the closure of the simple reflections."""
    cached = _weyl_cache.get(datum)
    if cached is not None:
        return cached
    gens = [datum.reflection(i) for i in datum.simple]
    seen = {datum.identity_weyl()}
    frontier = [datum.identity_weyl()]
    while frontier:
        fresh = []
        for w in frontier:
            for s in gens:
                x = w * s
                if x not in seen:
                    seen.add(x)
                    fresh.append(x)
                    if len(seen) > bound:
                        raise BudgetError(f"Weyl group exceeds bound {bound}")
        frontier = fresh
    out = sorted(seen, key=lambda w: (len(w.word or ()), w.matrix))
    _weyl_cache[datum] = out
    return out


def two_rho(datum):
    """Sum of the positive roots, as a covector."""
    total = (0,) * datum.rank
    for alpha in datum.positive_roots():
        total = linalg.vec_add(total, alpha)
    return total


_gl_cache = {}


def gl_datum(n, sigma=None):
    """GL_n with the opposite-of-standard Borel: positive roots are
    e_j - e_i with i < j, so mu = (-1, 0, ..., 0) is dominant."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if sigma is None and n in _gl_cache:
        return _gl_cache[n]
    roots = []
    for a in range(n):
        for b in range(n):
            if a != b:
                v = [0] * n
                v[a] = 1
                v[b] = -1
                roots.append(tuple(v))
    roots = tuple(roots)
    coroots = roots  # self-dual in the standard coordinates
    simple = tuple(roots.index(tuple(1 if k == i + 1 else (-1 if k == i else 0)
                                     for k in range(n)))
                   for i in range(n - 1))
    out = BasedRootDatum(rank=n, roots=roots, coroots=coroots, simple=simple,
                         sigma=sigma if sigma is not None else linalg.mat_identity(n))
    if sigma is None:
        _gl_cache[n] = out
    return out


def gl_res_scalars_datum(n, d):
    """d copies of GL_n with sigma cycling the factors (a restriction-of-
    scalars shape).  For d = 2 sigma swaps the two factors."""
    base = gl_datum(n)
    rank = n * d

    def pad(vec, block):
        out = [0] * rank
        for i, x in enumerate(vec):
            out[block * n + i] = x
        return tuple(out)

    roots = tuple(pad(a, blk) for blk in range(d) for a in base.roots)
    coroots = tuple(pad(c, blk) for blk in range(d) for c in base.coroots)
    simple = []
    for blk in range(d):
        for i in base.simple:
            simple.append(roots.index(pad(base.roots[i], blk)))
    # sigma sends block k to block k+1 (mod d)
    sigma = tuple(tuple(1 if (i // n == ((j // n) + 1) % d and i % n == j % n) else 0
                        for j in range(rank)) for i in range(rank))
    return BasedRootDatum(rank=rank, roots=roots, coroots=coroots,
                          simple=tuple(simple), sigma=sigma)


def datum_from_spec(doc):
    """Build a datum from the group-spec ingestion fields.

    ``doc`` carries ``type`` ("gl" | "custom") and either ``n`` or the
    explicit ``rank``/``roots``/``coroots``/``simple_roots``/``sigma``
    fields (row-major integer matrices).
    """
    kind = doc.get("type")
    if kind == "gl":
        try:
            n = int(doc["n"])
        except (KeyError, TypeError, ValueError):
            raise SpecParseError("gl spec needs an integer field 'n'")
        sigma = doc.get("sigma")
        if sigma is not None:
            sigma = tuple(tuple(int(x) for x in row) for row in sigma)
        return gl_datum(n, sigma=sigma)
    if kind == "custom":
        try:
            rank = int(doc["rank"])
            roots = tuple(tuple(int(x) for x in row) for row in doc["roots"])
            coroots = tuple(tuple(int(x) for x in row) for row in doc["coroots"])
            simple = tuple(int(i) for i in doc["simple_roots"])
            sigma = doc.get("sigma")
            if sigma is None:
                sigma = linalg.mat_identity(rank)
            else:
                sigma = tuple(tuple(int(x) for x in row) for row in sigma)
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecParseError(f"bad custom group spec: {exc}")
        return BasedRootDatum(rank=rank, roots=roots, coroots=coroots,
                              simple=simple, sigma=sigma)
    raise SpecParseError(f"unknown group type {kind!r}")


def as_fraction_vector(v):
    return tuple(Fraction(x) for x in v)
