import pytest

from depthzero import finite_linear as fl
from depthzero import lambda_engine as le
from depthzero.root_datum import gl_datum, gl_res_scalars_datum


def lt_mu(n):
    return tuple([-1] + [0] * (n - 1))


@pytest.fixture(scope="session")
def gl2_q2():
    sd = le.shimura_datum(gl_datum(2), 2, lt_mu(2))
    return sd, le.compute_lambda(sd)


@pytest.fixture(scope="session")
def gl2_q3():
    sd = le.shimura_datum(gl_datum(2), 3, lt_mu(2))
    return sd, le.compute_lambda(sd)


@pytest.fixture(scope="session")
def gl3_q2():
    sd = le.shimura_datum(gl_datum(3), 2, lt_mu(3))
    return sd, le.compute_lambda(sd)


@pytest.fixture(scope="session")
def gl4_q2():
    sd = le.shimura_datum(gl_datum(4), 2, lt_mu(4))
    return sd, le.compute_lambda(sd)


@pytest.fixture(scope="session")
def swap_product_q2():
    datum = gl_res_scalars_datum(2, 2)
    sd = le.shimura_datum(datum, 2, (-1, 0, -1, 0))
    return sd, le.compute_lambda(sd)


@pytest.fixture(scope="session")
def F4():
    return fl.tower(2, 1, 2)


@pytest.fixture(scope="session")
def F8():
    return fl.tower(2, 1, 3)


@pytest.fixture(scope="session")
def F9():
    return fl.tower(3, 1, 2)
