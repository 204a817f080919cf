import numpy as np
import pytest

from ringlp.codes import Code, golay_code_path, load_code
from ringlp.rings import make_zq


@pytest.fixture(scope="session")
def golay():
    return load_code(golay_code_path())


@pytest.fixture(scope="session")
def z3():
    return make_zq(3)


@pytest.fixture(scope="session")
def z4():
    return make_zq(4)


def make_code(q, rows, k_hint=None):
    return Code(ring=make_zq(q), H=np.array(rows, dtype=np.int64), k_hint=k_hint)


@pytest.fixture
def single_check_z3():
    # x + y + z = 0 over Z_3; 9 codewords
    return make_code(3, [[1, 1, 1]])


@pytest.fixture
def four_cycle_z3():
    # two overlapping checks on 4 positions
    return make_code(3, [[1, 1, 1, 0], [0, 1, 1, 1]])


@pytest.fixture
def three_cycle_z3():
    # x+y = y+z = x+z = 0 forces x=y=z and 2x=0, so only the zero word
    return make_code(3, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])


@pytest.fixture(scope="session")
def oracle_codes():
    """Small codes whose LP vertex sets the exact oracle can enumerate.

    Enumeration is cached on each code object, so sharing the instances
    across tests pays the cost once per session.
    """
    from lp_oracle import vertex_set

    codes = [
        make_code(3, [[1, 1]]),
        make_code(3, [[1, 1, 1]]),
        make_code(3, [[1, 1, 0], [0, 1, 1]]),
        make_code(3, [[1, 1, 0], [0, 1, 1], [1, 0, 1]]),
        make_code(3, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]),
        make_code(3, [[1, 1, 1, 0], [0, 1, 1, 1]]),
        make_code(4, [[1, 1], [2, 1]]),
        make_code(4, [[1, 3], [2, 2]]),
    ]
    for code in codes:
        vertex_set(code)
    return codes
