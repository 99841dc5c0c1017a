from fractions import Fraction
import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from exholo import exact, lie
from exholo.exact import Subspace


def sl_n_basis(n):
    """Trace-free matrices: E_ab (a != b) and E_aa - E_{a+1,a+1}."""
    out = []
    for a, b in itertools.product(range(n), repeat=2):
        if a != b:
            m = exact.zeros(n, n)
            m[a, b] = Fraction(1)
            out.append(m)
    for a in range(n - 1):
        m = exact.zeros(n, n)
        m[a, a], m[a + 1, a + 1] = Fraction(1), Fraction(-1)
        out.append(m)
    return out


def matrix_algebra(basis):
    """Structure constants of a matrix Lie algebra, by solving in the basis (oracle)."""
    n = len(basis)
    flat = np.stack([b.reshape(-1) for b in basis], axis=1)
    c = exact.zeros(n, n, n)
    for i, j in itertools.product(range(n), repeat=2):
        br = exact.matmul(basis[i], basis[j]) - exact.matmul(basis[j], basis[i])
        sol = exact.solve(flat, br.reshape(-1))
        assert sol.solvable
        c[i, j] = sol.particular
    return lie.LieAlgebra(c)


def test_sl2_basics():
    l = lie.sl2_algebra()
    assert lie.jacobi_defect(l) == []
    assert lie.is_simple(l)
    assert lie.rank(l) == 1
    assert lie.center(l).dim == 0


def test_killing_of_sl2():
    k = lie.killing_form(lie.sl2_algebra())
    # K(E, F) = 4, K(H, H) = 8
    assert k[0, 1] == 4 and k[2, 2] == 8 and k[0, 0] == 0


def test_direct_sum_not_simple():
    l = lie.direct_sum(lie.sl2_algebra(), lie.sl2_algebra())
    assert lie.is_semisimple(l)
    assert not lie.is_simple(l)
    assert lie.commutant_dimension(lie.adjoint_rep(l)) == 2
    assert lie.rank(l) == 2


def test_abelian_not_semisimple():
    l = lie.abelian(2)
    assert not lie.is_semisimple(l)
    assert lie.center(l).dim == 2
    assert not lie.is_simple(l)


def test_antisymmetry_enforced():
    c = exact.zeros(2, 2, 2)
    c[0, 1, 0] = Fraction(1)
    with pytest.raises(ValueError):
        lie.LieAlgebra(c)


def test_jacobi_failure_detected_and_adjoint_refused():
    c = lie.sl2_algebra().structure.copy()
    c[0, 1, 2] = Fraction(2)  # [E, F] = 2H breaks Jacobi with these [H, .]
    c[1, 0, 2] = Fraction(-2)
    c[0, 2, 0] = Fraction(-3)
    c[2, 0, 0] = Fraction(3)
    bad = lie.LieAlgebra(c)
    assert lie.jacobi_defect(bad)
    with pytest.raises(lie.BracketRelationError):
        lie.adjoint_rep(bad)


@pytest.mark.parametrize("n,rk", [(2, 1), (3, 2), (4, 3)])
def test_sl_n_via_matrix_oracle(n, rk):
    l = matrix_algebra(sl_n_basis(n))
    assert lie.jacobi_defect(l) == []
    assert lie.is_simple(l)
    assert lie.rank(l) == rk


def test_gl_standard_rep_relations():
    r = lie.standard_rep(3)
    assert r.relation_defects() == []
    assert lie.center(r.algebra).dim == 1


def test_invariant_forms_of_sl2_reps():
    ad = lie.adjoint_rep(lie.sl2_algebra())
    assert len(lie.invariant_symmetric_forms(ad)) == 1
    assert lie.invariant_antisymmetric_forms(ad) == []


def test_fix_vector_in_gl3():
    r = lie.standard_rep(3)
    v = exact.as_vec([1, 0, 0])
    s = lie.invariance_subalgebra(r, lie.FixVector(v))
    assert s.dim == 6  # matrices with zero first column
    line = lie.invariance_subalgebra(r, lie.FixLine(v))
    assert line.dim == 7
    plane = lie.invariance_subalgebra(r, lie.FixSubspace(Subspace(3, [[1, 0, 0], [0, 1, 0]])))
    assert plane.dim == 7


def test_fix_tensor_bilinear_form_gives_orthogonal_algebra():
    r = lie.standard_rep(3)
    s = lie.invariance_subalgebra(r, lie.FixTensor(exact.identity(3), "dd"))
    assert s.dim == 3
    so3 = lie.subalgebra_from_subspace(r.algebra, s)
    assert lie.is_simple(so3) and lie.rank(so3) == 1


def test_subalgebra_closure_error():
    l = lie.sl2_algebra()
    with pytest.raises(lie.ClosureError):
        lie.subalgebra_from_subspace(l, Subspace(3, [[1, 0, 0], [0, 1, 0]]))
    assert lie.closure_witness(l, Subspace(3, [[1, 0, 0], [0, 1, 0]])) is not None
    assert lie.closure_witness(l, Subspace(3, [[1, 0, 0], [0, 0, 1]])) is None


def test_restrict_representation():
    r = lie.standard_rep(2)
    borel = Subspace(4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    rb = r.restrict(borel)
    assert rb.algebra.dim == 3
    assert rb.relation_defects() == []


def test_json_roundtrip():
    l = lie.direct_sum(lie.sl2_algebra(), lie.abelian(1))
    back = lie.LieAlgebra.from_json(l.to_json())
    assert np.array_equal(back.structure, l.structure)


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_bracket_bilinear_antisymmetric(x, y):
    l = lie.sl2_algebra()
    x, y = exact.as_vec(x), exact.as_vec(y)
    assert np.array_equal(l.bracket(x, y), -l.bracket(y, x))
    # ad is a representation: ad[x, y] = [ad x, ad y]
    lhs = l.ad(l.bracket(x, y))
    rhs = exact.matmul(l.ad(x), l.ad(y)) - exact.matmul(l.ad(y), l.ad(x))
    assert np.array_equal(lhs, rhs)


def test_cartan_lookup():
    assert lie.cartan_label(14, 2, True) == "g2"
    assert lie.cartan_label(6, 2, False) == "so(4)"
    assert lie.cartan_label(3, 1, True) == "unknown"
