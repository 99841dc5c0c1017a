import numpy as np
import pytest

from exholo import exact, holo, lie, quadric, sl2
from exholo.exact import Subspace


def test_quadratic_space_precondition():
    u1 = sl2.irrep(1)
    alg = lie.sl2_algebra()
    rep = lie.Representation(alg, list(u1.actions[0]))
    with pytest.raises(quadric.PreconditionError):
        quadric.quadratic_space(rep)


def test_quadratic_spaces_normalised():
    for q in (quadric.vector_space(), quadric.spin_space()):
        b = q.form
        assert not np.any(b - b.T)
        assert next(x for x in b.flat if x) == 1
        assert exact.rank(b) == q.dim


def test_null_catalogue_and_planes():
    v7, s8 = quadric.vector_space(), quadric.spin_space()
    cat = quadric.null_basis_points(v7)
    assert len(cat["null"]) == 6
    assert quadric.isotropic_plane(v7, 3).dim == 3
    assert quadric.isotropic_plane(s8, 4).dim == 4
    with pytest.raises(quadric.PreconditionError):
        quadric.isotropic_plane(v7, 4)


def test_isotropic_plane_invariant_enforced():
    v7 = quadric.vector_space()
    with pytest.raises(Exception):
        quadric.IsotropicPlane(Subspace.full(7), v7)


@pytest.mark.parametrize("case", ["i", "ii", "iii"])
def test_prop21(case):
    cert = quadric.prop21_check(case)
    assert cert.passed, cert.failures()


def test_prop21_bad_case():
    with pytest.raises(ValueError):
        quadric.prop21_check("iv")


def test_literal_formula_gives_orthocomplement():
    v7 = quadric.vector_space()
    v0 = exact.identity(7)[quadric.null_basis_points(v7)["null"][0]]
    w = quadric.W_of(v0)
    assert quadric.W_literal(v0) == v7.orthogonal(w)


def test_curvature_space_dimensions():
    assert quadric.g2_curvature_7().dim == 77
    assert quadric.g2_curvature_7().bianchi_rank == 28
    assert quadric.g2_curvature_8().dim == 77
    assert quadric.so7_curvature().dim == 196
    assert quadric.curvature_space(quadric.vector_space(), Subspace.zero(49)).dim == 0


def test_curvature_invariants():
    k = quadric.g2_curvature_7()
    t = k.tensors()[:5]
    # antisymmetric in (x, y) and first Bianchi
    assert not np.any(t + t.transpose(0, 1, 3, 2, 4))
    assert not np.any(t + t.transpose(0, 1, 3, 4, 2) + t.transpose(0, 1, 4, 2, 3))
    for m in k.pairing_matrices()[:5]:
        assert m.shape == (21, 21)
        assert not np.any(m - m.T)


def test_curvature_rejects_non_skew():
    v7 = quadric.vector_space()
    with pytest.raises(quadric.PreconditionError):
        quadric.curvature_space(v7, Subspace(49, [exact.identity(7).reshape(-1)]))


def test_g2_curvature_is_g2_valued_part_of_so7():
    v7 = quadric.vector_space()
    img = quadric.hol_image(v7.rep, holo.g2_subalgebra().subspace)
    assert quadric.valued_in(quadric.so7_curvature(), img).dim == 77


def test_negative_control_has_witness():
    v7 = quadric.vector_space()
    v0 = exact.identity(7)[quadric.null_basis_points(v7)["null"][0]]
    perp = v7.orthogonal(quadric.W_of(v0))
    wit = quadric.containment_witness(quadric.so7_curvature(), perp)
    assert wit is not None and len(wit) == 4


def test_containment_trivial_cases():
    k = quadric.g2_curvature_7()
    assert quadric.containment_witness(k, Subspace.full(7)) is None
    # a null line: R(v, v) = 0
    v0 = exact.identity(7)[quadric.null_basis_points(quadric.vector_space())["null"][0]]
    assert quadric.containment_witness(k, Subspace(7, [v0])) is None


def test_obstruction_compatible_dimension_recorded():
    v7 = quadric.vector_space()
    v0 = exact.identity(7)[quadric.null_basis_points(v7)["null"][0]]
    perp = v7.orthogonal(quadric.W_of(v0))
    assert quadric.compatible_dimension(quadric.g2_curvature_7(), perp) == 63
