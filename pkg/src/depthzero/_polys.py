"""Defining polynomials for the finite-field towers.

For each (p, d) we ship the lexicographically least monic irreducible
polynomial of degree d over F_p whose residue class x is primitive, so the
shipped generator of every field is simply x.  ``find_primitive_poly``
regenerates (and extends) the table deterministically.

Coefficients are ascending, including the leading 1.
"""

from itertools import product

SHIPPED_POLYS = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (2, 5): (1, 0, 0, 1, 0, 1),
    (2, 6): (1, 0, 0, 0, 0, 1, 1),
    (2, 7): (1, 0, 0, 0, 0, 0, 1, 1),
    (2, 8): (1, 0, 0, 0, 1, 1, 1, 0, 1),
    (2, 9): (1, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1),
    (2, 11): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1),
    (2, 12): (1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1),
    (2, 13): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1),
    (2, 14): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1),
    (2, 15): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (2, 16): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (2, 0, 0, 1, 1),
    (3, 5): (1, 0, 0, 0, 2, 1),
    (3, 6): (2, 0, 0, 0, 0, 1, 1),
    (3, 7): (1, 0, 0, 0, 0, 1, 2, 1),
    (3, 8): (2, 0, 0, 0, 0, 1, 0, 0, 1),
    (3, 9): (1, 0, 0, 0, 0, 0, 2, 1, 0, 1),
    (3, 10): (2, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1),
    (5, 1): (2, 1),
    (5, 2): (2, 1, 1),
    (5, 3): (2, 0, 1, 1),
    (5, 4): (2, 0, 2, 1, 1),
    (5, 5): (2, 0, 0, 0, 3, 1),
    (5, 6): (2, 0, 0, 0, 0, 1, 1),
    (5, 7): (2, 0, 0, 0, 0, 0, 1, 1),
    (7, 1): (2, 1),
    (7, 2): (3, 1, 1),
    (7, 3): (2, 1, 1, 1),
    (7, 4): (3, 0, 1, 1, 1),
    (7, 5): (2, 0, 0, 0, 2, 1),
    (11, 1): (3, 1),
    (11, 2): (2, 4, 1),
    (11, 3): (3, 0, 1, 1),
    (13, 1): (2, 1),
    (13, 2): (2, 1, 1),
    (13, 3): (2, 0, 1, 1),
}


def poly_mulmod(a, b, mod, p):
    d = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for j in range(d):
                out[k - d + j] = (out[k - d + j] - c * mod[j]) % p
    out = out[:d] + [0] * max(0, d - len(out))
    return [x % p for x in out[:d]]


def poly_powmod(a, e, mod, p):
    result = [1] + [0] * (len(mod) - 2)
    base = list(a)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, mod, p)
        base = poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)

    def deg(f):
        d = len(f) - 1
        while d >= 0 and f[d] == 0:
            d -= 1
        return d

    while True:
        db = deg(b)
        if db < 0:
            return a
        da = deg(a)
        if da < db:
            a, b = b, a
            continue
        inv = pow(b[db], -1, p)
        while da >= db:
            c = a[da] * inv % p
            if c:
                for j in range(db + 1):
                    a[da - db + j] = (a[da - db + j] - c * b[j]) % p
            da = deg(a)
        a, b = b, a


def prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return sorted(out)


def _is_irreducible(mod, p):
    d = len(mod) - 1
    if d == 1:
        return True
    x = [0, 1] + [0] * (d - 2)
    if poly_powmod(x, p**d, mod, p) != x[:d]:
        return False
    for r in prime_factors(d):
        xe = poly_powmod(x, p**(d // r), mod, p)
        diff = [(a - b) % p for a, b in zip(xe, x[:d])]
        g = _poly_gcd(mod, diff, p)
        dg = len(g) - 1
        while dg >= 0 and g[dg] == 0:
            dg -= 1
        if dg != 0:
            return False
    return True


def _x_is_primitive(mod, p):
    d = len(mod) - 1
    Q = p**d
    if d == 1:
        xv = (-mod[0]) % p
        return all(pow(xv, (Q - 1) // r, p) != 1 for r in prime_factors(Q - 1))
    x = [0, 1] + [0] * (d - 2)
    one = [1] + [0] * (d - 1)
    return all(poly_powmod(x, (Q - 1) // r, mod, p) != one
               for r in prime_factors(Q - 1))


def find_primitive_poly(p, d):
    """Deterministic search used to generate SHIPPED_POLYS."""
    for tail in product(range(p), repeat=d):
        mod = list(tail) + [1]
        if mod[0] == 0:
            continue
        if _is_irreducible(mod, p) and _x_is_primitive(mod, p):
            return tuple(mod)
    raise ValueError(f"no primitive polynomial found for p={p}, d={d}")


def defining_poly(p, d):
    poly = SHIPPED_POLYS.get((p, d))
    if poly is None:
        poly = find_primitive_poly(p, d)
        SHIPPED_POLYS[(p, d)] = poly
    return poly
