import numpy as np
import pytest

from exholo import exact, lie, sl2, symdec
from exholo.symdec import MultiIndex

EXPECTED = {
    "so(4)": ((2,), [1]),
    "so(5)": ((1, 1), [1, 1]),
    "sl(3)": ((4,), [1]),
    "g2": ((3, 1), [1, 3]),
    "so(6)": ((2, 2), [1, 1]),
    "so(7)": ((2, 1, 1), [1, 2, 2]),
    "so(8)": ((1, 1, 1, 1), [1, 1, 1, 1]),
}


def test_multi_index_canonical():
    assert MultiIndex((1, 2, 1)).parts == (2, 1, 1)
    assert str(MultiIndex.parse("1.1.2")) == "2.1.1"
    assert MultiIndex.parse("3.1").p_dim == 8


def test_multi_index_odd_sum():
    with pytest.raises(ValueError, match="even"):
        MultiIndex((2, 1))


@pytest.mark.parametrize("name", list(EXPECTED))
def test_bianchi_space_and_coefficients(name):
    parts, coeffs = EXPECTED[name]
    sol = symdec.bianchi_solution_space(MultiIndex(parts))
    assert sol.dim == 1
    assert [int(x) for x in sol.basis[0]] == coeffs


@pytest.mark.parametrize("mi", ["3.3", "6", "3.1.1.1", "2.2.2"])
def test_bianchi_space_zero(mi):
    assert symdec.bianchi_solution_space(mi).dim == 0


@pytest.mark.parametrize("name", ["so(4)", "so(5)", "sl(3)", "g2"])
def test_curvature_form_properties(name):
    sd = symdec.standard_model(name)
    r = symdec.curvature_form(sd)
    assert r.is_antisymmetric()
    assert not np.any(r.bianchi_sum())


def test_zero_coefficients_zero_curvature():
    sd = symdec.decomposition("3.1", [0, 0])
    assert not np.any(symdec.curvature_form(sd).tensor)


def test_g2_terms_individually_antisymmetric():
    for t in symdec.eta_terms(MultiIndex((3, 1))):
        assert not np.any(t + t.transpose(0, 2, 1))


def test_bianchi_equivalent_to_jacobi():
    # a coefficient vector off the solution line gives Jacobi failures
    assert lie.jacobi_defect(symdec.build("3.1", [1, 1]))
    assert lie.jacobi_defect(symdec.build("3.1", [1, 3])) == []


def test_eta_is_equivariant():
    mi = MultiIndex((3, 1))
    sd = symdec.standard_model("g2")
    h = lie.adjoint_rep(lie.direct_sum(lie.sl2_algebra(), lie.sl2_algebra()))
    mod = sd.p_module
    # eta(X u, v) + eta(u, X v) = [X, eta(u, v)] for every h generator X
    for x_p, x_h in zip(mod.generators(), h.actions):
        e = sd.eta.entries
        lhs = exact.tensordot(x_h, e, axes=([1], [0]))
        r1 = exact.tensordot(e, x_p, axes=([1], [0])).transpose(0, 2, 1)
        r2 = exact.tensordot(e, x_p, axes=([2], [0]))
        assert not np.any(lhs - r1 - r2)
    assert mi.h_dim == 6


def test_candidates_order_and_filter():
    c = symdec.candidates(8, 2, 4)
    assert all(m.p_dim <= 8 and sum(m.parts) % 2 == 0 for m in c)
    assert [m.p_dim for m in c] == sorted(m.p_dim for m in c)


def test_classify_small():
    assert [str(e.multi_index) for e in symdec.classify(5, 1, 8)] == ["2", "4"]


def test_classify_parallel_matches_serial():
    a = symdec.classify(16, 2, 4, jobs=1)
    b = symdec.classify(16, 2, 4, jobs=2)
    assert [e.to_json() for e in a] == [e.to_json() for e in b]


def test_identify_unknown_and_errors():
    assert symdec.identify(lie.abelian(2)) == "unknown"
    with pytest.raises(ValueError):
        symdec.identify(symdec.build("3.1", [1, 1]))
    with pytest.raises(ValueError):
        symdec.standard_model("e8")


@pytest.mark.parametrize("name", ["so(4)", "so(5)", "sl(3)", "g2"])
def test_model_certificate(name):
    assert symdec.model_certificate(name).passed
