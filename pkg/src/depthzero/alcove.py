"""Base-alcove geometry: membership, the length-zero element attached to a
dominant minuscule cocharacter, the orbit of the origin, and facet data.

Convention (validated against the pinned GL_n example): nu(pi) translates
the apartment by x -> x + nu, so b = mu(-pi) w acts by x -> w(x) - mu.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DomainError, InvariantViolation
from .root_datum import classify_cocharacter, pairing, weyl_group


def base_alcove_contains(datum, x, closed=False):
    """Membership in the codominant base alcove:
    -1 < <alpha, x> < 0 for every positive root (closure uses <=)."""
    for alpha in datum.positive_roots():
        v = pairing(alpha, x)
        if closed:
            if not (-1 <= v <= 0):
                return False
        else:
            if not (-1 < v < 0):
                return False
    return True


def interior_point(datum):
    """A rational point in the open base alcove."""
    simple = datum.simple_roots()
    if not simple:
        return (Fraction(0),) * datum.rank
    heights = []
    cols = linalg.mat_transpose(simple)
    for alpha in datum.positive_roots():
        coeffs = linalg.solve_linear(cols, alpha)
        heights.append(sum(coeffs))
    c = Fraction(1, int(max(heights)) + 1)
    # solve <alpha_i, x> = -c for all simple roots
    x = linalg.solve_linear(simple, tuple(-c for _ in simple))
    if x is None or not base_alcove_contains(datum, x):
        raise InvariantViolation("interior_point", "no interior point found")
    return x


def b_action(datum, mu, w, x):
    """The action of b = mu(-pi) w on the apartment: x -> w(x) - mu."""
    return linalg.vec_sub(w.act(x), mu)


def length_zero_w(datum, mu):
    """The unique w in W_o such that x -> w(x) - mu stabilizes the base
    alcove; equivalently b = mu(-pi) w has length zero."""
    cls = classify_cocharacter(datum, mu)
    if not (cls["dominant"] and cls["minuscule"]):
        raise DomainError("mu must be dominant minuscule")
    x0 = interior_point(datum)
    hits = [w for w in weyl_group(datum)
            if base_alcove_contains(datum, b_action(datum, mu, w, x0))]
    if len(hits) != 1:
        raise InvariantViolation(
            "length_zero_w_unique", f"{len(hits)} stabilizing elements found")
    return hits[0]


def wsigma_matrix(datum, w):
    """Matrix of w.sigma on X_*(T)."""
    return linalg.mat_mul(w.matrix, datum.sigma)


def b_sigma_orbit(datum, mu, w, k_max):
    """Points x_k = -sum_{j<k} (w sigma)^j mu for 0 <= k <= k_max."""
    ws = wsigma_matrix(datum, w)
    pts = [(Fraction(0),) * datum.rank]
    acc = (Fraction(0),) * datum.rank
    power = tuple(mu)
    for _ in range(k_max):
        acc = linalg.vec_sub(acc, power)
        pts.append(acc)
        power = linalg.mat_vec(ws, power)
    return pts


def points_equal_mod_center(datum, x, y):
    """Apartment points agree iff their difference is central."""
    return linalg.in_span(linalg.vec_sub(x, y), datum.center_cochars())


@dataclass(frozen=True)
class FacetRecord:
    """The facet of the base alcove cut out by the face of the codominant
    chamber containing -lambda in its interior."""

    zero_roots: frozenset          # roots vanishing on the facet's span
    sample_interior_point: tuple


def facet_of_lambda(datum, lam):
    if not all(pairing(a, lam) >= 0 for a in datum.simple_roots()):
        raise InvariantViolation("facet_of_lambda", "lambda is not dominant")
    zero = frozenset(a for a in datum.roots if pairing(a, lam) == 0)
    vals = [pairing(a, lam) for a in datum.positive_roots()]
    top = max(vals) if vals else Fraction(0)
    if top == 0:
        point = (Fraction(0),) * datum.rank
    else:
        point = linalg.vec_scale(Fraction(-1) / (top + 1), lam)
    if not base_alcove_contains(datum, point, closed=True):
        raise InvariantViolation("facet_of_lambda", "sample point escapes alcove")
    return FacetRecord(zero_roots=zero, sample_interior_point=point)


def facet_is_minimal(datum, w, lam):
    """True iff the w.sigma-fixed subspace of X_*(Z_M)_Q / X_*(Z_G)_Q is
    zero, where Phi(M) = {alpha : <alpha, lambda> = 0}."""
    phi_m = [a for a in datum.roots if pairing(a, lam) == 0]
    n = datum.rank
    if phi_m:
        zm_basis = linalg.kernel_basis(phi_m)
    else:
        zm_basis = tuple(tuple(Fraction(int(i == j)) for j in range(n))
                         for i in range(n))
    zg_basis = datum.center_cochars()
    ws = wsigma_matrix(datum, w)
    # fixed vectors in the quotient: v in Z_M-space with (ws - 1)v central
    for coeffs in _fixed_quotient_vectors(zm_basis, zg_basis, ws):
        v = _combine(zm_basis, coeffs)
        if not linalg.in_span(v, zg_basis):
            return False
    return True


def _combine(basis, coeffs):
    n = len(basis[0])
    out = (Fraction(0),) * n
    for c, b in zip(coeffs, basis):
        out = linalg.vec_add(out, linalg.vec_scale(c, b))
    return out


def _fixed_quotient_vectors(zm_basis, zg_basis, ws):
    """Coefficient vectors c with (ws - 1)(sum c_i zm_i) in span(zg)."""
    if not zm_basis:
        return []
    n = len(zm_basis[0])
    ident = linalg.mat_identity(n)
    moved = [linalg.vec_sub(linalg.mat_vec(ws, b), linalg.mat_vec(ident, b))
             for b in zm_basis]
    # solve moved * c = zg * d; kernel in (c, d) coordinates
    cols = list(moved) + [linalg.vec_neg(g) for g in zg_basis]
    rows = linalg.mat_transpose(cols)
    kern = linalg.kernel_basis(rows)
    k = len(zm_basis)
    return [vec[:k] for vec in kern]
