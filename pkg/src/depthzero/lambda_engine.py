"""The slope cocharacter lambda and everything it controls: the tame degree
e, the radius data r_alpha, the parabolic root partition, component groups,
and the split-case Weil integer d.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import alcove, linalg
from .errors import DomainError, InvariantViolation, UnsupportedCase
from .root_datum import classify_cocharacter, pairing, two_rho


def factor_prime_power(q):
    """(p, f) with q = p^f; DomainError if q is not a prime power."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            m = q
            while m % p == 0:
                m //= p
                f += 1
            if m != 1:
                raise DomainError(f"{q} is not a prime power")
            return p, f
    raise DomainError(f"{q} is not a prime power")


@dataclass(frozen=True)
class ShimuraDatum:
    """A based root datum together with q, a dominant minuscule mu, and the
    length-zero w; b = mu(-pi) w."""

    datum: object
    q: int
    p: int
    f: int
    mu: tuple
    w: object


def shimura_datum(datum, q, mu, w=None):
    p, f = factor_prime_power(q)
    mu = tuple(int(x) for x in mu)
    cls = classify_cocharacter(datum, mu)
    if not (cls["dominant"] and cls["minuscule"]):
        raise DomainError("mu must be dominant minuscule")
    if w is None:
        w = alcove.length_zero_w(datum, mu)
    return ShimuraDatum(datum=datum, q=q, p=p, f=f, mu=mu, w=w)


@dataclass(frozen=True)
class LambdaData:
    lam: tuple                 # rational cocharacter
    N: int                     # order of w.sigma on X_*(T)
    e: int                     # denominator of lambda
    r_alpha: dict              # root -> <q w sigma lambda, alpha>, all roots
    phi_mu_neg: tuple
    phi_mu_pos: tuple
    phi_M: tuple
    phi_N: tuple
    phi_Nbar: tuple
    dim_r: int


def wsigma(sd):
    return alcove.wsigma_matrix(sd.datum, sd.w)


def compute_lambda(sd):
    """Solve lambda - q (w sigma) lambda = mu by the closed-form geometric
    sum over one w.sigma-period, then derive e, r_alpha and the partition."""
    datum, q, mu = sd.datum, sd.q, sd.mu
    ws = wsigma(sd)
    N = linalg.mat_order(ws, bound=10**4)
    acc = (Fraction(0),) * datum.rank
    power = tuple(Fraction(x) for x in mu)
    for _ in range(N):
        acc = linalg.vec_add(acc, power)
        power = linalg.vec_scale(q, linalg.mat_vec(ws, power))
    lam = linalg.vec_scale(Fraction(-1, q**N - 1), acc)

    check = linalg.vec_sub(lam, linalg.vec_scale(q, linalg.mat_vec(ws, lam)))
    if check != tuple(Fraction(x) for x in mu):
        raise InvariantViolation("lambda_identity", "lambda - q w sigma lambda != mu")
    if not all(pairing(a, lam) >= 0 for a in datum.simple_roots()):
        raise InvariantViolation("lambda_dominant", "lambda is not dominant")

    e = 1
    for x in lam:
        e = e * x.denominator // math.gcd(e, x.denominator)
    if (q**N - 1) % e != 0:
        raise InvariantViolation("e_divides", f"e={e} does not divide q^N-1")
    if math.gcd(e, sd.p) != 1:
        raise InvariantViolation("e_coprime_p", f"p={sd.p} divides e={e}")

    qwsl = linalg.vec_scale(q, linalg.mat_vec(ws, lam))
    r_alpha = {a: pairing(a, qwsl) for a in datum.roots}
    phi_mu_neg = tuple(a for a in datum.roots if pairing(a, mu) < 0)
    phi_mu_pos = tuple(a for a in datum.roots if pairing(a, mu) > 0)
    phi_M = tuple(a for a in datum.roots if pairing(a, lam) == 0)
    phi_N = tuple(a for a in datum.roots if pairing(a, lam) > 0)
    phi_Nbar = tuple(a for a in datum.roots if pairing(a, lam) < 0)

    for a in phi_mu_neg:
        er = e * r_alpha[a]
        if er.denominator != 1 or er <= 0:
            raise InvariantViolation("radius_integrality",
                                     f"e*r_alpha not a positive integer at {a}")

    dim_r = len(phi_mu_neg)
    if dim_r != pairing(two_rho(datum), mu):
        raise InvariantViolation("dim_r_two_rho", "|Phi_{mu<0}| != <2rho, mu>")

    return LambdaData(lam=lam, N=N, e=e, r_alpha=r_alpha,
                      phi_mu_neg=phi_mu_neg, phi_mu_pos=phi_mu_pos,
                      phi_M=phi_M, phi_N=phi_N, phi_Nbar=phi_Nbar,
                      dim_r=dim_r)


def lambdapst_check(sd, ld):
    """Per-root scan relating the sign of <alpha, lambda> to the first
    nonzero <alpha, (w sigma)^{-i} mu> for i > 0."""
    datum = sd.datum
    ws_inv = linalg.mat_inv_int(wsigma(sd))
    report = {}
    ok = True
    for alpha in datum.roots:
        lam_sign = pairing(alpha, ld.lam)
        first = 0
        first_k = None
        v = tuple(sd.mu)
        for i in range(1, ld.N + 1):
            v = linalg.mat_vec(ws_inv, v)
            pv = pairing(alpha, v)
            if pv != 0:
                first = pv
                first_k = i
                break
        if lam_sign > 0:
            verdict = first < 0
        elif lam_sign == 0:
            verdict = first_k is None
        else:
            verdict = first > 0
        ok = ok and verdict
        report[alpha] = {"lambda_sign": lam_sign, "first_k": first_k,
                         "first_value": first, "ok": verdict}
    return {"pass": ok, "roots": report}


def rootset_identities(sd, ld):
    """Phi(N) cap (w sigma)Phi(Nbar) = Phi_{mu>0} and (w sigma)Phi(M) = Phi(M)."""
    ws_inv = linalg.mat_inv_int(wsigma(sd))

    def move(alpha):
        # the root covector carried along w sigma (inverse-transpose action)
        return linalg.row_mat(alpha, ws_inv)

    moved_nbar = {move(a) for a in ld.phi_Nbar}
    lhs = set(ld.phi_N) & moved_nbar
    first = lhs == set(ld.phi_mu_pos)
    moved_m = {move(a) for a in ld.phi_M}
    second = moved_m == set(ld.phi_M)
    return {"N_cap_wsNbar_eq_mu_pos": first, "wsM_eq_M": second,
            "pass": first and second}


def component_group(datum, v_sigma):
    """Invariant factors of X_*(T) / (1 - v sigma) X_*(T), zeros last."""
    n = datum.rank
    one = linalg.mat_identity(n)
    mat = linalg.mat_sub(one, v_sigma)
    return linalg.invariant_factors(mat)


def weil_d(sd):
    """Split case: the least d with w^d = 1 in W_o and
    mu_d = sum_{j<d} w^j mu central; returns d and mu_d."""
    if not linalg.mat_is_identity(sd.datum.sigma):
        raise UnsupportedCase("weil_d requires a split datum (sigma = 1)")
    w = sd.w.matrix
    d = linalg.mat_order(w, bound=10**4)
    mu_d = (0,) * sd.datum.rank
    power = tuple(sd.mu)
    for _ in range(d):
        mu_d = linalg.vec_add(mu_d, power)
        power = linalg.mat_vec(w, power)
    if not all(pairing(a, mu_d) == 0 for a in sd.datum.roots):
        raise InvariantViolation("weil_d_central",
                                 "mu_d is not central at d = order(w)")
    return {"d": d, "mu_d": mu_d}
