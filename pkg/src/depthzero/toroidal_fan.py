"""The KGL_n fan, cone location / orbit labels, and Cartan decomposition
of matrices over truncated Puiseux fields with residue specialization.

Cones are rational polyhedral, pointed, and carried in double description
(generators and inequality covectors); the KGL_n maximal cones are smooth,
so faces are indexed by generator subsets.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from . import linalg, puiseux as px
from .errors import CoverageError, DomainError, PrecisionError
from .finite_linear import MatrixFq


@dataclass(frozen=True)
class ConeRecord:
    generators: tuple      # integer vectors
    inequalities: tuple    # integer covectors; the cone is {<c, x> >= 0}
    label: str

    def contains(self, v):
        return all(linalg.vec_dot(c, v) >= 0 for c in self.inequalities)


@dataclass(frozen=True)
class FanData:
    n: int
    cones: tuple           # maximal ConeRecords
    weyl_closure: bool


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x.numerator if isinstance(x, Fraction) else x)
        g = math.gcd(g, x.denominator if isinstance(x, Fraction) else 1)
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in w) if g else tuple(w)


def sigma_ell_cone(n, ell):
    """sigma_ell = {a_1 <= ... <= a_ell <= 0 <= a_{ell+1} <= ... <= a_n}."""
    gens = []
    for i in range(1, ell + 1):
        gens.append(tuple(-1 if 1 <= j <= i else 0 for j in range(1, n + 1)))
    for i in range(ell + 1, n + 1):
        gens.append(tuple(1 if i <= j <= n else 0 for j in range(1, n + 1)))
    ineqs = []
    for i in range(1, n):
        if i != ell:
            row = [0] * n
            row[i] = 1        # a_{i+1} - a_i >= 0
            row[i - 1] = -1
            ineqs.append(tuple(row))
    if ell >= 1:
        row = [0] * n
        row[ell - 1] = -1     # a_ell <= 0
        ineqs.append(tuple(row))
    if ell < n:
        row = [0] * n
        row[ell] = 1          # a_{ell+1} >= 0
        ineqs.append(tuple(row))
    return ConeRecord(generators=tuple(gens), inequalities=tuple(ineqs),
                      label=f"sigma_{ell}")


def _permute_vector(v, perm):
    # the Weyl action w(e_i) = e_{perm(i)} on coordinates
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[perm[i]] = x
    return tuple(out)


def kgl_fan(n):
    """The complete S_n-stable fan whose dominant part is sigma_0..sigma_n."""
    if n < 1:
        raise DomainError("n must be >= 1")
    base = [sigma_ell_cone(n, ell) for ell in range(n + 1)]
    seen = {}
    for perm in sorted(permutations(range(n))):
        for cone in base:
            gens = tuple(sorted(_permute_vector(g, perm) for g in cone.generators))
            if gens in seen:
                continue
            ineqs = tuple(sorted(_permute_vector(c, perm) for c in cone.inequalities))
            tag = cone.label if perm == tuple(range(n)) else f"{cone.label}.w{perm}"
            seen[gens] = ConeRecord(generators=gens, inequalities=ineqs, label=tag)
    cones = tuple(seen[g] for g in sorted(seen))
    return FanData(n=n, cones=cones, weyl_closure=True)


def sigma_plus_cones(fan):
    return tuple(c for c in fan.cones if "." not in c.label)


def cone_coordinates(cone, v):
    """Coordinates of v in the (simplicial) generator basis, or None."""
    cols = linalg.mat_transpose(cone.generators)
    return linalg.solve_linear(cols, v)


def locate(fan, v):
    """The unique minimal fan cone containing v, as a face of a maximal
    cone, with the equality pattern recorded in the label."""
    v = tuple(Fraction(x) for x in v)
    for cone in fan.cones:
        coords = cone_coordinates(cone, v)
        if coords is None or any(c < 0 for c in coords):
            continue
        face = tuple(g for g, c in zip(cone.generators, coords) if c > 0)
        tight = tuple(i for i, c in enumerate(coords) if c == 0)
        return ConeRecord(generators=face, inequalities=cone.inequalities,
                          label=f"{cone.label}|tight{tight}")
    raise CoverageError(f"{v} is not covered by the fan")


def face_key(record):
    """Intrinsic identity of a located cone: its generator set."""
    return frozenset(record.generators)


def relint_faces(fan, v):
    """Faces (by generator set) whose relative interior contains v, over
    all maximal cones; a fan must yield exactly one."""
    v = tuple(Fraction(x) for x in v)
    faces = set()
    for cone in fan.cones:
        coords = cone_coordinates(cone, v)
        if coords is not None and all(c >= 0 for c in coords):
            faces.add(frozenset(g for g, c in zip(cone.generators, coords) if c > 0))
    return faces


def extreme_rays(ineqs, n):
    """Extreme rays of the pointed cone {x : <c, x> >= 0 for all rows},
    by brute force over (n-1)-subsets of tight hyperplanes."""
    rows = [tuple(r) for r in ineqs]
    if n == 1:
        out = []
        for cand in ((1,), (-1,)):
            if all(linalg.vec_dot(r, cand) >= 0 for r in rows):
                out.append(cand)
        return sorted(out)
    rays = set()
    for subset in combinations(range(len(rows)), n - 1):
        sub = [rows[i] for i in subset]
        kern = linalg.kernel_basis(sub)
        if len(kern) != 1:
            continue
        base = _primitive(kern[0])
        for cand in (base, tuple(-x for x in base)):
            if all(linalg.vec_dot(r, cand) >= 0 for r in rows):
                tight = [r for r in rows if linalg.vec_dot(r, cand) == 0]
                _, piv = linalg.rref(tight)
                if len(piv) == n - 1:
                    rays.add(cand)
    return sorted(rays)


def dual_inequalities(generators, n):
    """Facet covectors of a full-dimensional pointed cone(generators)."""
    return extreme_rays(generators, n)


def double_description_consistent(cone, n):
    """Each description regenerates the other (up to ordering)."""
    rays = extreme_rays(cone.inequalities, n)
    gens = sorted(_primitive(g) for g in cone.generators)
    if rays != gens:
        return False
    facets = dual_inequalities(cone.generators, n)
    return facets == sorted(_primitive(c) for c in cone.inequalities)


def is_common_face(c1, c2, n):
    """Fan condition for a pair of maximal cones: the intersection is
    generated by the shared rays and is a face of each."""
    rays = extreme_rays(tuple(c1.inequalities) + tuple(c2.inequalities), n)
    in_both_1 = sorted(_primitive(g) for g in c1.generators if c2.contains(g))
    in_both_2 = sorted(_primitive(g) for g in c2.generators if c1.contains(g))
    return rays == in_both_1 == in_both_2


def weyl_stable(fan):
    keys = {frozenset(c.generators) for c in fan.cones}
    for perm in permutations(range(fan.n)):
        for cone in fan.cones:
            moved = frozenset(_permute_vector(g, perm) for g in cone.generators)
            if moved not in keys:
                return False
    return True


# -- Cartan decomposition over truncated Puiseux fields ---------------------


def _entry_val_or_none(x):
    return None if x.is_zero_to_precision() else x.val()


def cartan_decompose(g, fan=None):
    """g = g1 * diag(u^{a_1}, ..., u^{a_n}) * g2 with g1, g2 unimodular over
    the valuation ring and the exponents ascending (the dominant region of
    the KGL fan); PrecisionError when a pivot valuation is undecidable."""
    n = len(g)
    tw = g[0][0].tower
    ram = 1
    trunc = None
    for row in g:
        for x in row:
            ram = ram * x.ram // math.gcd(ram, x.ram)
            trunc = px._trunc_min(trunc, x.trunc)
    work = [list(row) for row in g]
    g1 = px.smat_identity(tw, n, ram, trunc)
    g2 = px.smat_identity(tw, n, ram, trunc)
    exps = [None] * n

    for s in range(n):
        piv, pval = None, None
        blocked = None
        for i in range(s, n):
            for j in range(s, n):
                v = _entry_val_or_none(work[i][j])
                if v is not None and (pval is None or v < pval):
                    piv, pval = (i, j), v
        for i in range(s, n):
            for j in range(s, n):
                x = work[i][j]
                if x.is_zero_to_precision() and x.trunc is not None and \
                        (pval is None or x.trunc < pval):
                    blocked = (i, j)
        if piv is None:
            raise DomainError("matrix is singular to working precision")
        if blocked is not None:
            raise PrecisionError(
                f"entry {blocked} vanishes to precision; pivot undecidable")
        pi, pj = piv
        if pi != s:
            work[s], work[pi] = work[pi], work[s]
            for r in range(n):
                g1[r][s], g1[r][pi] = g1[r][pi], g1[r][s]
        if pj != s:
            for r in range(n):
                work[r][s], work[r][pj] = work[r][pj], work[r][s]
            g2[s], g2[pj] = g2[pj], g2[s]
        a = work[s][s].val()
        exps[s] = a
        unit = work[s][s].shift(-a)       # valuation-ring unit
        unit_inv = unit.inverse()
        work[s] = [x * unit_inv for x in work[s]]
        for r in range(n):
            g1[r][s] = g1[r][s] * unit
        for r in range(s + 1, n):
            x = work[r][s]
            if x.is_zero_to_precision():
                continue
            f = x.shift(-a)               # val >= 0 by pivot minimality
            work[r] = [y - f * z for y, z in zip(work[r], work[s])]
            for i in range(n):
                g1[i][s] = g1[i][s] + f * g1[i][r]
        for c in range(s + 1, n):
            x = work[s][c]
            if x.is_zero_to_precision():
                continue
            h = x.shift(-a)
            for r in range(n):
                work[r][c] = work[r][c] - h * work[r][s]
            g2[s] = [y + h * z for y, z in zip(g2[s], g2[c])]

    # sort exponents ascending; absorb the permutation into g1, g2
    order = sorted(range(n), key=lambda i: exps[i])
    exps_sorted = [exps[i] for i in order]
    g1s = [[g1[r][order[c]] for c in range(n)] for r in range(n)]
    g2s = [g2[order[r]] for r in range(n)]
    return g1s, tuple(exps_sorted), g2s


def reassemble(g1, exps, g2):
    n = len(g1)
    tw = g1[0][0].tower
    mid = [[g2[i][j].shift(exps[i]) for j in range(n)] for i in range(n)]
    return px.smat_mul(g1, mid)


def specialize_point(g, fan):
    """Residue data and the boundary-orbit label of the exponent vector."""
    g1, exps, g2 = cartan_decompose(g, fan)
    label_cone = locate(fan, exps)
    tw = g[0][0].tower
    res1 = MatrixFq.from_rows(tw, [[x.residue() for x in row] for row in g1])
    res2 = MatrixFq.from_rows(tw, [[x.residue() for x in row] for row in g2])
    return {"orbit": label_cone, "exponents": exps,
            "residue_g1": res1, "residue_g2": res2}
