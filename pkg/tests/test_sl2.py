from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from exholo import exact, sl2
from exholo.sl2 import IsotypicList


def clebsch_gordan_oracle(a, b):
    """U_a (x) U_b = U_{a+b} + U_{a+b-2} + ... + U_{|a-b|}."""
    return IsotypicList({(n,): 1 for n in range(abs(a - b), a + b + 1, 2)})


def test_irrep_weights():
    assert sl2.irrep(3).weights() == [(3,), (1,), (-1,), (-3,)]


def test_u1_tensor_u1():
    m = sl2.internal_tensor(sl2.irrep(1), sl2.irrep(1))
    assert sl2.decompose(m) == IsotypicList({(2,): 1, (0,): 1})


@given(st.integers(0, 5), st.integers(0, 5))
def test_clebsch_gordan_rule(a, b):
    m = sl2.internal_tensor(sl2.irrep(a), sl2.irrep(b))
    assert sl2.decompose(m) == clebsch_gordan_oracle(a, b)


@given(st.integers(0, 4), st.integers(0, 4))
def test_hom_dimension_is_schur(a, b):
    assert len(sl2.equivariant_maps(sl2.irrep(a), sl2.irrep(b))) == (1 if a == b else 0)


def test_malformed_module_rejected():
    e = exact.as_mat([[0, 1], [0, 0]])
    f = exact.as_mat([[0, 0], [1, 0]])
    h = exact.as_mat([[2, 0], [0, -1]])
    with pytest.raises(sl2.MalformedModuleError):
        sl2.Sl2kModule(((e, f, h),), 2)


def test_branch_diagonal_pair():
    m = sl2.branch(sl2.tensor_irreps((1, 1)), (0, 0), 1)
    assert sl2.decompose(m) == IsotypicList({(2,): 1, (0,): 1})


def test_direct_sum_character():
    m = sl2.direct_sum(sl2.tensor_irreps((2, 0)), sl2.tensor_irreps((0, 1)))
    assert sl2.decompose(m) == IsotypicList({(2, 0): 1, (0, 1): 1})
    assert sl2.decompose(m).dimension() == 5


def test_non_diagonal_character_path():
    m = sl2.irrep(2)
    p = exact.as_mat([[1, 1, 0], [0, 1, 0], [1, 0, 1]])
    pi = exact.inverse(p)
    conj = tuple(exact.matmul(exact.matmul(p, x), pi) for x in m.actions[0])
    c = sl2.Sl2kModule((conj,), 3)
    assert c.weights() is None
    assert sl2.decompose(c) == IsotypicList({(2,): 1})


def test_isotypic_json_sorted():
    iso = IsotypicList({(0, 0): 2, (2, 0): 1, (0, 2): 1})
    assert [d["weights"] for d in iso.to_json()] == [[2, 0], [0, 2], [0, 0]]


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("target", [0, 2])
def test_projection_equivariant_and_normalised(n, target):
    t = sl2.clebsch_projection(n, target)
    un = sl2.irrep(n)
    assert t.equivariance_defect(un, sl2.irrep(target)) == 0
    assert t.entries[0, 0, n - target // 2] == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_projection_symmetry_parity(n):
    # eps_n and pi_n have opposite swap parity, so every eta term of an
    # even-sum multi-index is antisymmetric
    assert sl2.clebsch_projection(n, 0).symmetric is (n % 2 == 0)
    assert sl2.clebsch_projection(n, 2).symmetric is (n % 2 == 1)


def test_u2_identification_is_intertwiner():
    # w -> sum_t U2_TO_SL2[:, t] w_t must intertwine U_2 with the adjoint action on (E, F, H)
    from exholo import lie
    ad = lie.adjoint_rep(lie.sl2_algebra())
    u2 = sl2.irrep(2)
    for x_u2, x_ad in zip(u2.actions[0], ad.actions):
        assert np.array_equal(exact.matmul(sl2.U2_TO_SL2, x_u2), exact.matmul(x_ad, sl2.U2_TO_SL2))
    assert exact.det(sl2.U2_TO_SL2) != 0
