import math
from fractions import Fraction

import pytest

from depthzero import linalg
from depthzero.errors import DimensionError, DomainError
from depthzero.root_datum import (BasedRootDatum, classify_cocharacter,
                                  datum_from_spec, gl_datum,
                                  gl_res_scalars_datum, pairing, two_rho,
                                  weyl_group)


def torus_datum(rank):
    return BasedRootDatum(rank=rank, roots=(), coroots=(), simple=(),
                          sigma=linalg.mat_identity(rank))


def test_pairing_examples():
    assert pairing((-1, 1), (Fraction(1, 3), Fraction(2, 3))) == Fraction(1, 3)
    assert pairing((-1, 1), (0, 0)) == 0
    # the positive root of GL_2 in the lower-Borel convention against mu
    d = gl_datum(2)
    (alpha,) = d.positive_roots()
    assert alpha == (-1, 1)
    assert pairing(alpha, (-1, 0)) == 1
    with pytest.raises(DimensionError):
        pairing((1, -1), (1, 0, 0))


def test_classify_cocharacter():
    d = gl_datum(2)
    assert classify_cocharacter(d, (-1, 0)) == {"dominant": True, "minuscule": True}
    assert classify_cocharacter(d, (-2, 0)) == {"dominant": True, "minuscule": False}
    assert classify_cocharacter(d, (0, -1)) == {"dominant": False, "minuscule": True}
    for n in (1, 2, 3):
        assert classify_cocharacter(gl_datum(n), (0,) * n) == \
            {"dominant": True, "minuscule": True}


def test_weyl_group_orders_against_factorial():
    assert len(weyl_group(gl_datum(2))) == 2
    for n in (2, 3, 4):
        assert len(weyl_group(gl_datum(n))) == math.factorial(n)


def test_two_rho():
    assert two_rho(gl_datum(2)) == (-1, 1)
    assert two_rho(gl_datum(3)) == (-2, 0, 2)
    assert two_rho(torus_datum(1)) == (0,)


def test_gl_datum_shapes():
    assert gl_datum(2).rank == 2 and len(gl_datum(2).roots) == 2
    assert len(gl_datum(3).roots) == 3 * 2     # n(n-1) oracle
    assert len(gl_datum(1).roots) == 0
    with pytest.raises(DomainError):
        gl_datum(0)


def test_weyl_elements_permute_roots_exhaustively():
    for n in range(2, 6):
        d = gl_datum(n)
        roots = set(d.roots)
        for w in weyl_group(d):
            assert {w.act_root(a) for a in d.roots} == roots


def test_simple_reflections_are_involutions():
    for n in (2, 3, 4):
        d = gl_datum(n)
        for i in d.simple:
            s = d.reflection(i)
            assert (s * s).is_identity()


def test_two_rho_pairs_nonnegative_with_dominant():
    for n in (2, 3, 4):
        d = gl_datum(n)
        rho2 = two_rho(d)
        for k in range(n + 1):
            mu = tuple([-1] * k + [0] * (n - k))
            assert pairing(rho2, mu) >= 0
            mu = tuple([0] * (n - k) + [1] * k)
            assert pairing(rho2, mu) >= 0


def test_sigma_commutes_with_pairing():
    d = gl_res_scalars_datum(2, 2)
    import random
    rng = random.Random(3)
    for _ in range(50):
        nu = tuple(rng.randint(-3, 3) for _ in range(4))
        alpha = rng.choice(d.roots)
        assert pairing(d.sigma_on_root(alpha), d.sigma_on_cochar(nu)) == \
            pairing(alpha, nu)


def test_sigma_permutes_simple_roots():
    d = gl_res_scalars_datum(3, 2)
    simple = {d.roots[i] for i in d.simple}
    assert {d.sigma_on_root(a) for a in simple} == simple


def test_center_cochars():
    d = gl_datum(3)
    (z,) = d.center_cochars()
    assert z in ((1, 1, 1), (-1, -1, -1))
    assert len(torus_datum(2).center_cochars()) == 2


def test_datum_from_spec_gl_and_custom():
    d = datum_from_spec({"type": "gl", "n": 3})
    assert d.rank == 3 and len(d.roots) == 6
    custom = {
        "type": "custom",
        "rank": 2,
        "roots": [[-1, 1], [1, -1]],
        "coroots": [[-1, 1], [1, -1]],
        "simple_roots": [0],
    }
    d2 = datum_from_spec(custom)
    assert d2.positive_roots() == ((-1, 1),)
    from depthzero.errors import SpecParseError
    with pytest.raises(SpecParseError):
        datum_from_spec({"type": "gl"})
    with pytest.raises(SpecParseError):
        datum_from_spec({"type": "so", "n": 3})


def test_bad_custom_data_rejected():
    with pytest.raises(DomainError):
        BasedRootDatum(rank=2, roots=((1, 0),), coroots=((1, 0),),
                       simple=(0,), sigma=linalg.mat_identity(2))
