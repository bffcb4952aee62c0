"""Specialization of GL_n level vectors over truncated Puiseux fields:
normalization to break form, break extraction, the flag the breaks
generate, and the independent wedge-product route that must agree with it.

Frobenius here is the q-power map of the tower (q = p in the intended
setting, where independence is over the prime field F_p).
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import finite_linear as fl, puiseux as px
from .errors import (DomainError, InvariantViolation, PrecisionError,
                     SpecParseError)


@dataclass(frozen=True)
class LevelVector:
    """Coordinates of a level vector: nonzero to precision, with finite
    positive valuations."""

    coords: tuple

    def __post_init__(self):
        if not self.coords:
            raise DomainError("empty level vector")
        for x in self.coords:
            if x.is_zero_to_precision():
                raise DomainError("level vector coordinate vanishes to precision")
            if x.val() <= 0:
                raise DomainError("level vector coordinate needs positive valuation")

    @property
    def n(self):
        return len(self.coords)

    @property
    def tower(self):
        return self.coords[0].tower


def default_trunc(vals):
    """Working precision policy: 3 * max valuation + 3."""
    return 3 * max(vals) + 3


def verify_level_equation(z1, u_flats, p_flat):
    """Coordinatewise check of p_flat * z = sigma^n(z) + sum u_{i+1} sigma^i(z)."""
    n = z1.n
    if len(u_flats) != n - 1:
        raise DomainError("need n-1 coefficient series")
    for t in z1.coords:
        lhs = p_flat * t
        rhs = t.qpower(n)
        for i in range(1, n):
            rhs = rhs + u_flats[i - 1] * t.qpower(i)
        diff = lhs - rhs
        if not diff.is_zero_to_precision():
            return False
        scale = p_flat.val() + t.val()
        if diff.trunc is not None and diff.trunc <= scale:
            raise PrecisionError("cannot compare the level equation sides")
    return True


def _leading_coeffs(coords, positions):
    return [coords[s].leading()[1] for s in positions]


def normalize_breaks(t):
    """Right GL_n(F_p) translation bringing the vector into break form:
    valuations grouped ascending, leading residues F_p-independent within
    each group.  Returns (transform, normalized vector); the transform is
    an integer matrix mod p with the new vector = old . transform."""
    tw = t.tower
    p = tw.p
    n = t.n
    coords = list(t.coords)
    transform = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_permute(order):
        nonlocal coords, transform
        coords = [coords[i] for i in order]
        transform = [[transform[r][order[c]] for c in range(n)] for r in range(n)]

    while True:
        order = sorted(range(n), key=lambda i: coords[i].val())
        if order != list(range(n)):
            col_permute(order)
        # group by valuation
        groups = []
        start = 0
        while start < n:
            stop = start
            while stop + 1 < n and coords[stop + 1].val() == coords[start].val():
                stop += 1
            groups.append(list(range(start, stop + 1)))
            start = stop + 1
        replaced = False
        for grp in groups:
            leads = _leading_coeffs(coords, grp)
            dep = fl.prime_field_dependency([c.coords() for c in leads], p)
            if dep is None:
                continue
            s_star = max(i for i, a in enumerate(dep) if a % p)
            pos = grp[s_star]
            combo = None
            for i, a in enumerate(dep):
                if a % p:
                    term = coords[grp[i]] * int(a)
                    combo = term if combo is None else combo + term
            if combo.is_zero_to_precision():
                raise PrecisionError(
                    "a coordinate was eliminated to zero within precision")
            coords[pos] = combo
            for r in range(n):
                transform[r][pos] = sum(transform[r][grp[i]] * dep[i]
                                        for i in range(len(grp))) % p
            replaced = True
            break
        if not replaced:
            break
    return tuple(tuple(row) for row in transform), LevelVector(tuple(coords))


def is_normalized(t):
    """Conditions (1) and (2): grouped ascending valuations with
    F_p-independent leading residues per group."""
    vals = [x.val() for x in t.coords]
    if vals != sorted(vals):
        return False
    for grp in _groups(t):
        leads = _leading_coeffs(t.coords, grp)
        if fl.prime_field_dependency([c.coords() for c in leads], t.tower.p):
            return False
    return True


def _groups(t):
    n = t.n
    groups = []
    start = 0
    while start < n:
        stop = start
        while stop + 1 < n and t.coords[stop + 1].val() == t.coords[start].val():
            stop += 1
        groups.append(list(range(start, stop + 1)))
        start = stop + 1
    return groups


@dataclass(frozen=True)
class BreakData:
    breaks: tuple          # 0 = i_0 < i_1 < ... < i_k = n
    lengths: tuple
    residues: tuple        # one projective point per group, last coord 1

    @property
    def stratum(self):
        return self.lengths


def breaks(t):
    """Valuation-jump positions and residue points of a normalized vector."""
    if not is_normalized(t):
        raise DomainError("vector is not in break form; normalize first")
    grps = _groups(t)
    cuts = [0]
    residues = []
    for grp in grps:
        cuts.append(grp[-1] + 1)
        last = t.coords[grp[-1]].leading()[1]
        residues.append(tuple(t.coords[s].leading()[1] / last for s in grp))
    lengths = tuple(cuts[j + 1] - cuts[j] for j in range(len(grps)))
    for res in residues:
        if not fl.moore_det(res):
            raise InvariantViolation("moore_nonsing",
                                     "dependent residues in a break group")
    return BreakData(breaks=tuple(cuts), lengths=lengths, residues=tuple(residues))


@dataclass(frozen=True)
class FlagPoint:
    """Full flag as reduced row bases over the residue field."""

    flag: tuple            # flag[s] = rref basis of Lambda_{s+1}

    def __eq__(self, other):
        return isinstance(other, FlagPoint) and self.flag == other.flag


def flag_from_breaks(bd, n, tw):
    """Lambda_s generated by Lambda_{s-1} and sigma^{s-i_{j-1}-1}(res_j),
    residues sitting in the coordinate block of their group."""
    rows = []
    flag = []
    for j, grp_len in enumerate(bd.lengths):
        lo = bd.breaks[j]
        block = [0] * n
        for o, c in enumerate(bd.residues[j]):
            block[lo + o] = c.idx
        for s in range(grp_len):
            rows.append(tuple(tw.frob(x, s) for x in block))
            basis = fl.fq_rref(rows, tw)
            if len(basis) != len(rows):
                raise InvariantViolation("moore_nonsing",
                                         "flag step is rank-deficient")
            flag.append(basis)
    return FlagPoint(flag=tuple(flag))


def wedge_oracle(t):
    """The flag of the reduced wedge powers (varpi'_i)^{-1} z_1 ^ ... ^ z_i,
    computed with exterior algebra only."""
    n = t.n
    tw = t.tower
    zs = [list(t.coords)]
    for i in range(1, n):
        zs.append([x.qpower() for x in zs[-1]])
    flag = []
    for i in range(1, n + 1):
        varpi = None
        for j in range(1, i + 1):
            f = t.coords[j - 1].qpower(i - j)
            varpi = f if varpi is None else varpi * f
        scale = varpi.inverse()
        pluecker = {}
        nonzero = False
        for cols in combinations(range(n), i):
            minor = px.smat_det([[zs[r][c] for c in cols] for r in range(i)])
            coord = minor * scale
            if not coord.is_zero_to_precision() and coord.val() < 0:
                raise InvariantViolation(
                    "orderwedge_integral", "reduced wedge has a pole")
            res = coord.residue()
            pluecker[cols] = res
            nonzero = nonzero or bool(res)
        if not nonzero:
            raise PrecisionError("wedge residues all vanish to precision")
        # Lambda_i = {v : v wedge P = 0}
        rows = []
        for sup in combinations(range(n), i + 1):
            row = [0] * n
            for pos, r in enumerate(sup):
                rest = tuple(x for x in sup if x != r)
                coeff = pluecker[rest]
                if pos % 2:
                    coeff = -coeff
                row[r] = coeff.idx
            rows.append(row)
        if i == n:
            basis = fl.fq_rref([[1 if a == b else 0 for b in range(n)]
                                for a in range(n)], tw)
        else:
            basis = fl.fq_kernel(rows, tw, n)
            basis = fl.fq_rref(basis, tw)
        if len(basis) != i:
            raise InvariantViolation("spKGL_rank", "wedge subspace has wrong rank")
        flag.append(basis)
    return FlagPoint(flag=tuple(flag))


def stratum_report(t):
    """Normalize, extract breaks, and cross-check the two flag routes."""
    transform, tn = normalize_breaks(t)
    bd = breaks(tn)
    direct = flag_from_breaks(bd, tn.n, tn.tower)
    wedge = wedge_oracle(tn)
    return {
        "transform": transform,
        "normalized": tn,
        "breaks": bd,
        "flag": direct,
        "wedge_flag": wedge,
        "agreement": direct == wedge,
    }


# -- level-vector files (one JSON record per line) ---------------------------


def level_vector_to_record(t):
    tw = t.tower
    return {
        "p": tw.p, "f": tw.f, "m": tw.m,
        "ram": max(x.ram for x in t.coords),
        "trunc": str(min(x.trunc for x in t.coords)),
        "coords": [[[str(e), list(tw._digits(c))] for e, c in x.terms]
                   for x in t.coords],
    }


def level_vector_from_record(rec):
    try:
        tw = fl.tower(int(rec["p"]), int(rec.get("f", 1)), int(rec["m"]))
        ram = int(rec["ram"])
        trunc = Fraction(rec["trunc"])
        coords = []
        for terms in rec["coords"]:
            parsed = {Fraction(e): tw.element(c) for e, c in terms}
            coords.append(px.PuiseuxElement(tw, ram, parsed, trunc))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParseError(f"bad level-vector record: {exc}")
    return LevelVector(tuple(coords))


def read_level_vectors(fileobj):
    out = []
    for line in fileobj:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"bad JSON record: {exc}")
        out.append(level_vector_from_record(rec))
    return out


def write_level_vectors(vectors, fileobj):
    for t in vectors:
        fileobj.write(json.dumps(level_vector_to_record(t)) + "\n")
