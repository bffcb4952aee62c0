"""Truncated Puiseux series over finite-field towers.

An element carries its own exclusive working precision ``trunc``;
operations propagate precision pessimistically and never invent digits.
The distinguished variable is written u.  Also provides series matrices
and the sigma-equation lifting solver (defect-correction iteration).
"""

import math as _math
import re
from fractions import Fraction

from . import finite_linear as fl
from .errors import DomainError, InvariantViolation, PrecisionError

INF = _math.inf


def _lcm(a, b):
    return a * b // _math.gcd(a, b)


class PuiseuxElement:
    """Sparse truncated series sum c_e u^e with e in (1/ram) Z, e < trunc."""

    __slots__ = ("tower", "ram", "terms", "trunc")

    def __init__(self, tower, ram, terms, trunc):
        idx_terms = {}
        for e, c in (terms.items() if isinstance(terms, dict) else terms):
            e = Fraction(e)
            idx = c.idx if isinstance(c, fl.FqElement) else tower.element(c).idx
            if idx:
                idx_terms[e] = tower.add(idx_terms.get(e, 0), idx)
        self._init_raw(tower, ram, idx_terms, trunc)

    @classmethod
    def _raw(cls, tower, ram, idx_terms, trunc):
        """Internal constructor: term values are field indices, not values."""
        obj = object.__new__(cls)
        obj._init_raw(tower, ram, idx_terms, trunc)
        return obj

    def _init_raw(self, tower, ram, idx_terms, trunc):
        if ram < 1:
            raise DomainError("ram must be positive")
        if trunc is not None:
            trunc = Fraction(trunc)
        clean = {}
        for e, c in idx_terms.items():
            if c and (trunc is None or e < trunc):
                if ram % e.denominator != 0:
                    raise DomainError(f"exponent {e} not in (1/{ram})Z")
                clean[e] = c
        self.tower = tower
        self.ram = ram
        self.terms = tuple(sorted(clean.items()))
        self.trunc = trunc

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, tower, ram=1, trunc=None):
        return cls(tower, ram, {}, trunc)

    @classmethod
    def const(cls, tower, c, ram=1, trunc=None):
        return cls(tower, ram, {Fraction(0): c}, trunc)

    @classmethod
    def u_power(cls, tower, e, ram=None, trunc=None):
        e = Fraction(e)
        if ram is None:
            ram = e.denominator
        return cls(tower, ram, {e: 1}, trunc)

    # -- basic queries ------------------------------------------------------

    def val(self):
        """Least exponent with nonzero coefficient; trunc (pessimistic) for
        an element with no visible terms; +inf for the exact zero."""
        if self.terms:
            return self.terms[0][0]
        return INF if self.trunc is None else self.trunc

    def is_zero_to_precision(self):
        return not self.terms

    def leading(self):
        if not self.terms:
            raise PrecisionError("no term below the working precision")
        e, c = self.terms[0]
        return e, fl.FqElement(self.tower, c)

    def coeff(self, e):
        e = Fraction(e)
        for ee, c in self.terms:
            if ee == e:
                return fl.FqElement(self.tower, c)
        return self.tower.zero()

    def residue(self):
        """Coefficient at u^0, for elements of the valuation ring."""
        if self.terms and self.terms[0][0] < 0:
            raise DomainError("negative valuation")
        if self.trunc is not None and self.trunc <= 0:
            raise PrecisionError("precision does not reach u^0")
        return self.coeff(0)

    def __repr__(self):
        body = " + ".join(f"{self.tower._digits(c)}*u^({e})" for e, c in self.terms)
        t = "" if self.trunc is None else f" + O(u^({self.trunc}))"
        return f"<{body or '0'}{t}>"

    def __eq__(self, other):
        return (isinstance(other, PuiseuxElement) and other.tower is self.tower
                and other.terms == self.terms and other.trunc == self.trunc)

    def __hash__(self):
        return hash((self.tower.key(), self.terms, self.trunc))

    def eq_to_precision(self, other):
        """Agreement of all terms below the smaller working precision."""
        if self.tower is not other.tower:
            raise DomainError("mixed towers")
        t = _trunc_min(self.trunc, other.trunc)
        a = {e: c for e, c in self.terms if t is None or e < t}
        b = {e: c for e, c in other.terms if t is None or e < t}
        return a == b

    # -- arithmetic -----------------------------------------------------------

    def _common(self, other):
        if not isinstance(other, PuiseuxElement):
            raise DomainError("not a series")
        if other.tower is not self.tower:
            raise DomainError("mixed towers")
        return _lcm(self.ram, other.ram)

    def __add__(self, other):
        ram = self._common(other)
        terms = dict(self.terms)
        tw = self.tower
        for e, c in other.terms:
            terms[e] = tw.add(terms.get(e, 0), c)
        return PuiseuxElement._raw(tw, ram, terms,
                                   _trunc_min(self.trunc, other.trunc))

    def __neg__(self):
        tw = self.tower
        return PuiseuxElement._raw(tw, self.ram,
                                   {e: tw.neg(c) for e, c in self.terms},
                                   self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, fl.FqElement)):
            c = self.tower.element(other).idx
            tw = self.tower
            return PuiseuxElement._raw(tw, self.ram,
                                       {e: tw.mul(cc, c) for e, cc in self.terms},
                                       self.trunc)
        ram = self._common(other)
        tw = self.tower
        trunc = _trunc_min(_trunc_add(self.trunc, other.val()),
                           _trunc_add(other.trunc, self.val()))
        terms = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if trunc is not None and e >= trunc:
                    continue
                terms[e] = tw.add(terms.get(e, 0), tw.mul(c1, c2))
        return PuiseuxElement._raw(tw, ram, terms, trunc)

    __rmul__ = __mul__

    def shift(self, e):
        """Multiply by the exact monomial u^e."""
        e = Fraction(e)
        ram = _lcm(self.ram, e.denominator)
        trunc = None if self.trunc is None else self.trunc + e
        return PuiseuxElement._raw(self.tower, ram,
                                   {ee + e: c for ee, c in self.terms}, trunc)

    def inverse(self):
        if not self.terms:
            if self.trunc is None:
                raise DomainError("inverse of exact zero")
            raise PrecisionError("inverse of an element with no visible term")
        a, lead = self.leading()
        rest = (self - PuiseuxElement(self.tower, self.ram, {a: lead}, self.trunc))
        y = (rest * lead.inverse()).shift(-a)   # val(y) > 0
        if y.is_zero_to_precision() and self.trunc is None:
            return PuiseuxElement(self.tower, self.ram,
                                  {-a: lead.inverse()}, None)  # FqElement coeff
        if self.trunc is None:
            raise PrecisionError("inverse of an infinite-tail element needs "
                                 "finite precision")
        rel = self.trunc - a
        s = PuiseuxElement.const(self.tower, 1, self.ram, rel)
        term = s
        while True:
            term = term * (-y)
            if term.is_zero_to_precision() or term.val() >= rel:
                break
            s = s + term
        return (s * lead.inverse()).shift(-a).truncate(self.trunc - 2 * a)

    def truncate(self, t):
        return PuiseuxElement._raw(self.tower, self.ram, dict(self.terms),
                                   _trunc_min(self.trunc, t))

    def with_precision(self, t):
        """Reinterpret an exact element at finite precision t."""
        if self.trunc is not None and (t is None or t > self.trunc):
            raise PrecisionError("cannot extend precision")
        return PuiseuxElement._raw(self.tower, self.ram, dict(self.terms), t)

    def qpower(self, k=1):
        """x^(q^k): exponents scale by q^k, coefficients Frobenius-twist."""
        tw = self.tower
        s = tw.q**k
        trunc = None if self.trunc is None else self.trunc * s
        return PuiseuxElement._raw(tw, self.ram,
                                   {e * s: tw.frob(c, k) for e, c in self.terms},
                                   trunc)


def _trunc_min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _trunc_add(t, v):
    if t is None or v is INF:
        return None
    return t + v


_TERM_RE = re.compile(
    r"^\s*(?:(?P<coeff>\((?:\s*\d+\s*,)*\s*\d+\s*\)|\d+)\s*\*?\s*)?"
    r"(?:u(?:\^(?P<exp>\(?-?\d+(?:/\d+)?\)?))?)?\s*$")


def series_literal(text, tower, ram=None, trunc=None):
    """Parse ``c*u^(a/b) + ...`` with tower-coordinate coefficients.

    Coefficients are plain integers (prime-subfield values) or coordinate
    tuples like (1,1); a bare u means u^1.
    """
    terms = []
    chunks = [c.strip() for c in text.replace("-", "+-").split("+") if c.strip()]
    rams = [1]
    for chunk in chunks:
        neg = chunk.startswith("-")
        if neg:
            chunk = chunk[1:].strip()
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coeff") is None and "u" not in chunk):
            raise DomainError(f"bad series term {chunk!r}")
        coeff = m.group("coeff")
        if coeff is None:
            c = tower.one()
        elif coeff.startswith("("):
            c = tower.element([int(x) for x in coeff.strip("()").split(",")])
        else:
            c = tower.element(int(coeff))
        if "u" in chunk:
            exp = m.group("exp")
            e = Fraction(exp.strip("()")) if exp else Fraction(1)
        else:
            e = Fraction(0)
        if neg:
            c = -c
        rams.append(e.denominator)
        terms.append((e, c))
    if ram is None:
        ram = 1
        for r in rams:
            ram = _lcm(ram, r)
    return PuiseuxElement(tower, ram, terms, trunc)


# -- series matrices (lists of lists of PuiseuxElement) ---------------------


def smat_identity(tower, n, ram=1, trunc=None):
    return [[PuiseuxElement.const(tower, int(i == j), ram, trunc)
             for j in range(n)] for i in range(n)]


def smat_from_fq(M, ram=1, trunc=None):
    tw = M.tower
    n = M.n
    return [[PuiseuxElement.const(tw, fl.FqElement(tw, M.entries[i * n + j]),
                                  ram, trunc) for j in range(n)] for i in range(n)]


def smat_mul(A, B):
    n = len(A)
    k = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(len(B[0])):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def smat_qpower(A, k=1):
    return [[x.qpower(k) for x in row] for row in A]


def smat_residue(A):
    tw = A[0][0].tower
    return fl.MatrixFq.from_rows(tw, [[x.residue() for x in row] for row in A])


def smat_inv(A):
    """Inverse over the series field by Gauss-Jordan with minimal-valuation
    pivoting; PrecisionError when a pivot cannot be decided."""
    n = len(A)
    tw = A[0][0].tower
    work = [list(row) + [PuiseuxElement.const(tw, int(j == i), A[0][0].ram,
                                              _worst_trunc(A))
                         for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv, pval = None, None
        for r in range(col, n):
            x = work[r][col]
            if not x.is_zero_to_precision():
                v = x.val()
                if pval is None or v < pval:
                    piv, pval = r, v
        if piv is None:
            raise PrecisionError("pivot column vanishes to precision")
        for r in range(col, n):
            x = work[r][col]
            if x.is_zero_to_precision() and x.trunc is not None and x.trunc <= pval:
                raise PrecisionError("cannot decide minimal-valuation pivot")
        work[col], work[piv] = work[piv], work[col]
        inv = work[col][col].inverse()
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and not work[r][col].is_zero_to_precision():
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [[work[i][n + j] for j in range(n)] for i in range(n)]


def _worst_trunc(A):
    t = None
    for row in A:
        for x in row:
            t = _trunc_min(t, x.trunc)
    return t


def smat_det(A):
    """Determinant by cofactor expansion (small sizes only)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * smat_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def smat_defect_val(D):
    """min valuation of D - 1 entrywise (INF when identical to precision)."""
    n = len(D)
    tw = D[0][0].tower
    v = INF
    for i in range(n):
        for j in range(n):
            x = D[i][j]
            if i == j:
                x = x - PuiseuxElement.const(tw, 1, x.ram, x.trunc)
            if not x.is_zero_to_precision():
                v = min(v, x.val())
    return v


def solve_sigma_lift(G, h0, max_steps=None, trace=None):
    """Unique lift h of h0 with h sigma(h)^{-1} = G: defect-correction
    iteration, the defect valuation strictly increasing each step.

    G is a series matrix over the valuation subring whose residue equals
    h0 sigma(h0)^{-1}; h0 is a MatrixFq over the same tower.  When given,
    ``trace`` collects the defect valuations step by step.
    """
    tw = h0.tower
    res = smat_residue(G)
    if res != h0 * h0.frobenius().inverse():
        raise DomainError("h0 sigma(h0)^{-1} does not match the residue of G")
    trunc = _worst_trunc(G)
    if trunc is None:
        raise PrecisionError("solver needs a finite working precision")
    ram = 1
    for row in G:
        for x in row:
            ram = _lcm(ram, x.ram)
    h = [[x.truncate(trunc) for x in row] for row in smat_from_fq(h0, ram, trunc)]
    Ginv = smat_inv(G)
    last = Fraction(0)
    steps = 0
    limit = max_steps if max_steps is not None else 4 * int(trunc * ram) + 8
    while True:
        d = smat_mul(smat_mul(h, smat_inv(smat_qpower(h))), Ginv)
        dv = smat_defect_val(d)
        if trace is not None:
            trace.append(dv)
        if dv is INF:
            return h
        if dv <= last:
            raise InvariantViolation("sigma_lift_progress",
                                     f"defect valuation stalled at {dv}")
        last = dv
        h = smat_mul(smat_inv(d), h)
        steps += 1
        if steps > limit:
            raise InvariantViolation("sigma_lift_progress",
                                     "iteration exceeded its step limit")
