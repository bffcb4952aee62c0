"""Points of the parabolic Deligne-Lusztig variety Y(w) over small finite
fields: exhaustive Lang-torsor enumeration, canonical representatives, the
unipotent contraction phi_w, and the G^sigma x M^{w sigma} x inertia
actions.

Matrix-level work assumes a gl-shaped datum (all roots e_a - e_b) with
split sigma; the root-datum layer handles general types.
"""

import math
from dataclasses import dataclass

from . import finite_linear as fl
from .errors import BudgetError, DomainError, InvariantViolation
from .lambda_engine import wsigma
from .linalg import mat_vec, vec_scale
from .root_datum import pairing

try:
    from . import _ffkernel as _kern
except ImportError:
    from . import _ffkernel_py as _kern


def ensure_gl(datum):
    for alpha in datum.roots:
        fl.gl_root_slot(alpha)
    return datum.rank


def tower_for(sd, m):
    return fl.tower(sd.p, sd.f, m)


def w_matrix(sd, twr):
    return fl.MatrixFq.permutation(twr, sd.w.matrix)


def order_roots(sd, roots, functional):
    """Deterministic peel order: ascending positivity functional, then lex."""
    keyed = sorted(roots, key=lambda a: (pairing(a, functional), a))
    for a in keyed:
        if pairing(a, functional) <= 0:
            raise InvariantViolation("root_order",
                                     "functional not positive on root set")
    return tuple(keyed)


def ad_root_set(sd, ld):
    """(w sigma)Phi(N), the roots of Ad(w sigma)(N)."""
    ws = wsigma(sd)
    from .linalg import mat_inv_int, row_mat
    ws_inv = mat_inv_int(ws)
    return tuple(row_mat(a, ws_inv) for a in ld.phi_N)


@dataclass(frozen=True)
class UnipotentFactorization:
    """Components of a unipotent element over a fixed root ordering; the
    ordered product of i_alpha(c_alpha) reproduces the matrix."""

    order: tuple          # roots, in peel order
    components: dict      # root -> FqElement

    def matrix(self, twr, n):
        out = fl.MatrixFq.identity(twr, n)
        for alpha in self.order:
            out = out * fl.root_group_element(twr, n, alpha, self.components[alpha])
        return out


def unip_factor(x, roots_in_order, twr):
    """Peel a unipotent matrix into root components along an order that is
    ascending for a positivity functional; DomainError when x is not in
    the corresponding root subgroup."""
    n = x.n
    work = x
    comps = {}
    for alpha in roots_in_order:
        a, b = fl.gl_root_slot(alpha)
        c = work.entry(a, b)
        comps[alpha] = c
        if c:
            work = fl.root_group_element(twr, n, alpha, -c) * work
    if not work.is_identity():
        raise DomainError("matrix is not in the unipotent subgroup")
    return UnipotentFactorization(order=tuple(roots_in_order), components=comps)


def lang_value(g, w_mat):
    """g^{-1} sigma(g) w^{-1}."""
    return g.inverse() * g.frobenius() * w_mat.inverse()


def in_u_mu_neg(v, ld):
    """Membership in U_{mu<0} (abelian; disjoint first-block slots)."""
    n = v.n
    allowed = {fl.gl_root_slot(a) for a in ld.phi_mu_neg}
    for i in range(n):
        for j in range(n):
            x = v.entries[i * n + j]
            if i == j:
                if x != 1:
                    return False
            elif (i, j) not in allowed and x != 0:
                return False
    return True


@dataclass(frozen=True)
class YwPoint:
    """Canonical representative: lang_value(rep) lies in U_{mu<0}."""

    rep: object
    m: int


@dataclass
class YwEnumeration:
    points: list          # YwPoint, enumeration order
    fibers: dict          # U_{mu<0} fiber key -> count
    tower: object
    m: int


def enumerate_Yw(sd, ld, m, budget=10**7):
    """Exhaustive scan of GL_n(F_{q^m}) for points of Y(w)."""
    n = ensure_gl(sd.datum)
    twr = tower_for(sd, m)
    total = fl.group_order(n, twr.order)
    if total > budget:
        raise BudgetError(f"|GL_{n}(F_{twr.order})| = {total} exceeds budget {budget}")
    if not twr.has_tables:
        raise BudgetError("field too large for table-driven enumeration")
    wm = w_matrix(sd, twr)
    winv = wm.inverse().entries
    allowed = sorted(fl.gl_root_slot(a)[0] * n + fl.gl_root_slot(a)[1]
                     for a in ld.phi_mu_neg)
    mats, keys = _kern.lang_scan(n, twr.order, twr.mul_table, twr.add_table,
                                 twr.inv_table, twr.neg_table, twr.frob_table,
                                 winv, allowed)
    points = [YwPoint(fl.MatrixFq(twr, n, g), m) for g in mats]
    fibers = {}
    for k in keys:
        fibers[k] = fibers.get(k, 0) + 1
    return YwEnumeration(points=points, fibers=fibers, tower=twr, m=m)


def phi_w(h, sd, ld):
    """pi_w(Ad(w sigma) h) on N cap Ad(w sigma)(N)."""
    twr = h.tower
    n = h.n
    ws_lam = vec_scale(sd.q, mat_vec(wsigma(sd), ld.lam))  # q w sigma lambda
    ad_roots = order_roots(sd, ad_root_set(sd, ld), ws_lam)
    phi0 = set(ld.phi_N) & set(ad_roots)
    phi0_order = tuple(a for a in ad_roots if a in phi0)
    # domain check: h must factor over Phi_0
    unip_factor(h, phi0_order, twr)
    wm = w_matrix(sd, twr)
    moved = wm * h.frobenius() * wm.inverse()
    fac = unip_factor(moved, ad_roots, twr)
    out = fl.MatrixFq.identity(twr, n)
    for alpha in ad_roots:
        if alpha in phi0:
            out = out * fl.root_group_element(twr, n, alpha, fac.components[alpha])
    return out


def _split_mu_plus(v, sd):
    """Factor v = u_plus * y with u_plus in U_{mu>0}; returns u_plus."""
    mu = sd.mu
    n = v.n
    lo = min(mu)
    I = [i for i in range(n) if mu[i] == lo]
    II = [i for i in range(n) if mu[i] != lo]
    if not II:
        return fl.MatrixFq.identity(v.tower, n)
    if I != list(range(len(I))):
        raise InvariantViolation("mu_ascending", "dominant mu must be sorted")
    twr = v.tower
    k = len(I)
    A = fl.MatrixFq(twr, k, [v.entries[i * n + j] for i in I for j in I])
    Ainv = A.inverse()  # DomainError here means v is outside the big cell
    ent = [1 if i == j else 0 for i in range(n) for j in range(n)]
    for r, i in enumerate(II):
        for c, j in enumerate(I):
            acc = 0
            for s in range(k):
                acc = twr.add(acc, twr.mul(v.entries[i * n + I[s]],
                                           Ainv.entries[s * k + c]))
            ent[i * n + j] = acc
    return fl.MatrixFq(twr, n, ent)


def canonicalize(g, sd, ld):
    """Canonical representative of the class of g in Y(w): the unique
    element of g N with Lang value in U_{mu<0}."""
    twr = g.tower
    n = g.n
    wm = w_matrix(sd, twr)
    v = lang_value(g, wm)
    if in_u_mu_neg(v, ld):
        return YwPoint(g, twr.m)
    g1 = g * _split_mu_plus(v, sd)
    v1 = lang_value(g1, wm)
    ws_lam = vec_scale(sd.q, mat_vec(wsigma(sd), ld.lam))
    ad_roots = order_roots(sd, ad_root_set(sd, ld), ws_lam)
    fac = unip_factor(v1, ad_roots, twr)  # DomainError: not in N w sigma(N) w^{-1}
    phi0 = set(ld.phi_N) & set(ad_roots)
    x = fl.MatrixFq.identity(twr, n)
    for alpha in ad_roots:
        if alpha in phi0:
            x = x * fl.root_group_element(twr, n, alpha, fac.components[alpha])
    h = x
    for _ in range(ld.N + 1):
        nxt = x * phi_w(h, sd, ld)
        if nxt == h:
            break
        h = nxt
    else:
        raise InvariantViolation("phiw_nilpotence",
                                 "fixed-point iteration failed to stabilize")
    out = g1 * h
    if not in_u_mu_neg(lang_value(out, wm), ld):
        raise InvariantViolation("canonical_rep", "canonicalization failed")
    return YwPoint(out, twr.m)


def inertia_torus_element(sd, ld, tau, twr=None):
    """(zeta_e^tau)^{-e lambda} as a coordinate tuple, the inertia value fed
    to a torus character."""
    if twr is None:
        twr = tower_for(sd, ld.N)
    zeta = twr.zeta(ld.e)
    elam = [int(ld.e * x) for x in ld.lam]
    return tuple(zeta ** ((-tau * c) % ld.e) for c in elam)


def inertia_matrix(sd, ld, tau, twr):
    """diag((zeta_e^tau)^{e lambda}), the right-translation realization of
    the inertia action."""
    zeta = twr.zeta(ld.e)
    elam = [int(ld.e * x) for x in ld.lam]
    return fl.MatrixFq.diagonal(twr, [zeta ** ((tau * c) % ld.e) for c in elam])


def act(pt, sd, ld, g0=None, mm=None, tau=0):
    """(g0, m, tau) . pt = canonicalize(g0 rep m^{-1} (zeta_e^tau)^{e lambda});
    operands over different towers are embedded into their compositum."""
    levels = [pt.m]
    if g0 is not None:
        levels.append(g0.tower.m)
    if mm is not None:
        levels.append(mm.tower.m)
    if tau % ld.e != 0:
        levels.append(ld.N)
    m_common = 1
    for lv in levels:
        m_common = m_common * lv // math.gcd(m_common, lv)
    twr = tower_for(sd, m_common)
    g = pt.rep if pt.rep.tower is twr else pt.rep.embed(twr)
    wm = w_matrix(sd, twr)
    if g0 is not None:
        g0 = g0 if g0.tower is twr else g0.embed(twr)
        if g0.frobenius() != g0:
            raise DomainError("g0 is not sigma-fixed")
        g = g0 * g
    if mm is not None:
        mm = mm if mm.tower is twr else mm.embed(twr)
        if wm * mm.frobenius() * wm.inverse() != mm:
            raise DomainError("m is not w sigma-fixed")
        g = g * mm.inverse()
    if tau % ld.e != 0:
        g = g * inertia_matrix(sd, ld, tau, twr)
    return canonicalize(g, sd, ld)


def m_wsigma_points(sd, ld, m_prime=None, budget=10**7):
    """All x in M(F_{q^{m'}}) fixed by Ad(w sigma); m' defaults to N, which
    captures every fixed point since (w sigma)^N = sigma^N."""
    n = ensure_gl(sd.datum)
    if m_prime is None:
        m_prime = ld.N
    twr = tower_for(sd, m_prime)
    # M is block-diagonal along the level sets of lambda
    blocks = []
    start = 0
    while start < n:
        stop = start
        while stop + 1 < n and ld.lam[stop + 1] == ld.lam[start]:
            stop += 1
        blocks.append((start, stop + 1))
        start = stop + 1
    total = 1
    for a, b in blocks:
        total *= fl.group_order(b - a, twr.order)
    if total > budget:
        raise BudgetError(f"|M(F_{twr.order})| = {total} exceeds budget {budget}")
    wm = w_matrix(sd, twr)
    wm_inv = wm.inverse()
    out = []

    def assemble(idx, acc):
        if idx == len(blocks):
            x = fl.MatrixFq(twr, n, acc)
            if wm * x.frobenius() * wm_inv == x:
                out.append(x)
            return
        a, b = blocks[idx]
        k = b - a
        for blk in fl.enumerate_group(k, twr, budget=budget):
            nxt = list(acc)
            for i in range(k):
                for j in range(k):
                    nxt[(a + i) * n + (a + j)] = blk.entries[i * k + j]
            assemble(idx + 1, nxt)

    assemble(0, [1 if i == j else 0 for i in range(n) for j in range(n)])
    return out


def export_points(enum, fileobj):
    """Line-oriented point dump: one matrix per line, entries as
    tower coordinates joined by dots, row-major."""
    twr = enum.tower
    fileobj.write(f"# p={twr.p} f={twr.f} m={twr.m} n={enum.points[0].rep.n if enum.points else 0}\n")
    for pt in enum.points:
        cells = []
        for x in pt.rep.entries:
            cells.append(".".join(str(c) for c in twr._digits(x)))
        fileobj.write(" ".join(cells) + "\n")
