import numpy as np
import pytest

from exholo import exact, holo, lie, sl2, symdec
from exholo.exact import Subspace


def test_vector_rep_basic():
    r = holo.vector_rep()
    assert r.dim == 7
    assert r.relation_defects() == []
    assert lie.commutant_dimension(r) == 1


def test_spin_rep_basic():
    r = holo.spin_rep()
    assert r.dim == 8
    assert r.relation_defects() == []
    assert lie.commutant_dimension(r) == 1
    assert lie.invariant_antisymmetric_forms(r) == []


def test_triality_reps_pairwise_inequivalent():
    reps = [holo.triality_rep(t) for t in range(3)]
    for a in range(3):
        assert lie.commutant_dimension(reps[a]) == 1
        for b in range(a + 1, 3):
            assert lie.intertwiners(reps[a], reps[b]) == []


def test_pinned_products_nonzero():
    assert holo.pinned_product(holo.vector_spec()) != 0
    assert holo.pinned_product(holo.spin_spec()) != 0


def test_solver_rejects_diagonal_block():
    base = symdec.standard_model("so(4)")  # p = U_2
    spec = holo.GradedRepSpec(base, sl2.irrep(2), sl2.irrep(2))
    with pytest.raises(holo.GradedRepError):
        holo.solve_graded_rep(spec)


def test_solver_rejects_missing_block():
    base = symdec.standard_model("so(4)")
    spec = holo.GradedRepSpec(base, sl2.irrep(1), sl2.irrep(4))
    with pytest.raises(holo.GradedRepError):
        holo.solve_graded_rep(spec)


def test_first_non_null():
    b = exact.as_mat([[0, 1], [1, 0]])
    v = holo.first_non_null(b)
    assert list(v) == [1, 1]


def test_g2_certificate():
    cert = holo.g2_checks()
    assert cert.passed, cert.failures()


def test_complement_certificate():
    assert holo.complement_checks().passed


def test_cross_product_properties():
    cert = holo.cross_checks()
    assert cert.passed, cert.failures()
    assert cert.data["lambda"] != 0


def test_cross_product_equivariance_explicit():
    cx = holo.cayley_cross()
    for x in holo.vector_rep_g2().actions:
        # X(a * b) = (X a) * b + a * (X b) on basis pairs
        lhs = exact.tensordot(cx.entries, x, axes=([2], [1]))
        r1 = exact.tensordot(x, cx.entries, axes=([0], [0]))
        r2 = exact.tensordot(x, cx.entries, axes=([0], [1])).transpose(1, 0, 2)
        assert not np.any(lhs - r1 - r2)


def test_three_form_stabiliser_is_g2():
    # independent route: the stabiliser of phi(x, y, z) = B(x * y, z) in gl(7)
    phi = holo.cayley_cross().three_form()
    stab = lie.invariance_subalgebra(lie.standard_rep(7), lie.FixTensor(phi, "ddd"))
    img = Subspace(49, [m.reshape(-1) for m in holo.vector_rep_g2().actions])
    assert stab == img


def test_thm17_certificate():
    assert holo.thm17_check().passed


def test_triality_restrictions():
    assert holo.triality_checks().passed
    assert holo.rem14_check().passed


def test_cor15_chain():
    cert = holo.cor15_chain()
    assert cert.passed, cert.failures()


def test_cross_json_schema():
    d = holo.cayley_cross().to_json()
    assert d["dim"] == 7
    assert set(d["entries"][0]) == {"i", "j", "k", "value"}
    assert all(e["i"] != e["j"] for e in d["entries"])


def test_diagonal_candidate_reports():
    out = holo.diagonal_candidate()
    assert set(out) == {"dim", "isotypic_maps", "closed", "witness"}
    assert isinstance(out["closed"], bool)
