"""The 7- and 8-dimensional representations of so(7) = (2.1.1), g2 inside so(7),
the reductive complement so(7) = g2 + p, and the cross product it carries.

g2 is realised as the annihilator of a non-null spinor; the type is then
certified through dimension, simplicity and rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact, lie, sl2, symdec
from .exact import Mat, Subspace
from .report import Certificate, CertificationFailure

__all__ = [
    "GradedRepSpec",
    "GradedRepError",
    "CrossProduct",
    "G2Embedding",
    "solve_graded_rep",
    "pinned_product",
    "vector_spec",
    "spin_spec",
    "triality_spec",
    "so7",
    "vector_rep",
    "spin_rep",
    "triality_rep",
    "invariant_form",
    "first_non_null",
    "g2_subalgebra",
    "reductive_complement",
    "complement_rep",
    "cayley_cross",
    "holonomy_rep_checks",
    "g2_checks",
    "complement_checks",
    "cross_checks",
    "thm17_check",
    "triality_checks",
    "rem14_check",
    "cor15_chain",
    "diagonal_candidate",
]

SPIN_ASSIGNMENT = (0, 0, 1, 2)  # (A1, A2, A3) -> (A1, A1, A2, A3)
SO6_ASSIGNMENT = (0, 0, 1, 1)  # (A1, A2) -> (A1, A1, A2, A2)
TRIALITY_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


class GradedRepError(ValueError):
    """The two-summand ansatz has no consistent solution."""


@dataclass(frozen=True)
class GradedRepSpec:
    """V = V0 + V1 as h-modules; p acts by equivariant off-diagonal blocks."""

    base: symdec.SymmetricDecomposition
    v0: sl2.Sl2kModule
    v1: sl2.Sl2kModule


def _block_diag(a: Mat, b: Mat) -> Mat:
    d0, d1 = a.shape[0], b.shape[0]
    out = exact.zeros(d0 + d1, d0 + d1)
    out[:d0, :d0] = a
    out[d0:, d0:] = b
    return out


def _solve(spec: GradedRepSpec) -> tuple[lie.Representation, Fraction]:
    base, v0, v1 = spec.base, spec.v0, spec.v1
    k = base.mi.k
    if v0.k != k or v1.k != k:
        raise GradedRepError("summands must be modules over the h factors")
    pm = base.p_module
    for v in (v0, v1):
        if sl2.equivariant_maps(sl2.internal_tensor(pm, v), v):
            raise GradedRepError("a diagonal equivariant block exists; ansatz not applicable")
    t01 = sl2.equivariant_maps(sl2.internal_tensor(pm, v0), v1)
    t10 = sl2.equivariant_maps(sl2.internal_tensor(pm, v1), v0)
    if len(t01) != 1 or len(t10) != 1:
        raise GradedRepError(f"off-diagonal block spaces have dimensions {len(t01)}, {len(t10)}")
    t01, t10 = t01[0], t10[0]
    d0, d1, dp = v0.dim, v1.dim, pm.dim
    dim = d0 + d1
    h_acts = [_block_diag(v0.actions[j][a], v1.actions[j][a]) for j in range(k) for a in range(3)]
    lower, upper = [], []
    for x in range(dp):
        lo = exact.zeros(dim, dim)
        lo[d0:, :d0] = t01[:, x * d0:(x + 1) * d0]
        up = exact.zeros(dim, dim)
        up[:d0, d0:] = t10[:, x * d1:(x + 1) * d1]
        lower.append(lo)
        upper.append(up)
    unit = np.stack([lo + up for lo, up in zip(lower, upper)])
    prod = exact.tensordot(unit, unit, axes=([2], [1])).transpose(0, 2, 1, 3)
    comm = prod - prod.transpose(1, 0, 2, 3)  # (x, y, a, b) with t1 = t2 = 1
    target = exact.tensordot(base.eta.entries, np.stack(h_acts), axes=([0], [0]))
    nz = np.argwhere(comm != 0)
    if len(nz) == 0:
        raise GradedRepError("p-blocks commute; the product t1*t2 is not pinned")
    i = tuple(nz[0])
    lam = target[i] / comm[i]
    if np.any(target - lam * comm):
        raise GradedRepError("bracket condition is inconsistent for every t1*t2")
    if lam == 0:
        raise GradedRepError("pinned product vanishes")
    acts = h_acts + [lo + lam * up for lo, up in zip(lower, upper)]
    return lie.Representation(base.algebra, acts), lam


def solve_graded_rep(spec: GradedRepSpec) -> lie.Representation:
    """Representation of h + p on V0 + V1 with t1 = 1 and t2 pinned by the bracket."""
    return _solve(spec)[0]


def pinned_product(spec: GradedRepSpec) -> Fraction:
    return _solve(spec)[1]


@lru_cache(maxsize=None)
def so7() -> symdec.SymmetricDecomposition:
    return symdec.standard_model("so(7)")


@lru_cache(maxsize=None)
def _so8() -> symdec.SymmetricDecomposition:
    return symdec.standard_model("so(8)")


def vector_spec() -> GradedRepSpec:
    """U_2 + U_1 (x) U_1 over (2.1.1): A1 on U_2, (A2, A3) on U_1 (x) U_1."""
    return GradedRepSpec(so7(), sl2.tensor_irreps((2, 0, 0)), sl2.tensor_irreps((0, 1, 1)))


def _slot_module(slots: tuple[int, int], k: int = 4) -> sl2.Sl2kModule:
    return sl2.tensor_irreps(tuple(1 if j in slots else 0 for j in range(k)))


def spin_spec() -> GradedRepSpec:
    """(U^1 (x) U^3) + (U^2 (x) U^4) pulled back along (A1, A2, A3) -> (A1, A1, A2, A3)."""
    a, b = TRIALITY_PAIRS[1]
    return GradedRepSpec(so7(),
                         sl2.branch(_slot_module(a), SPIN_ASSIGNMENT, 3),
                         sl2.branch(_slot_module(b), SPIN_ASSIGNMENT, 3))


def triality_spec(which: int = 0) -> GradedRepSpec:
    a, b = TRIALITY_PAIRS[which]
    return GradedRepSpec(_so8(), _slot_module(a), _slot_module(b))


@lru_cache(maxsize=None)
def vector_rep() -> lie.Representation:
    return solve_graded_rep(vector_spec())


@lru_cache(maxsize=None)
def spin_rep() -> lie.Representation:
    return solve_graded_rep(spin_spec())


@lru_cache(maxsize=None)
def triality_rep(which: int = 0) -> lie.Representation:
    return solve_graded_rep(triality_spec(which))


def invariant_form(r: lie.Representation) -> Mat:
    """The unique invariant symmetric form, first nonzero entry scaled to +1."""
    forms = lie.invariant_symmetric_forms(r)
    if len(forms) != 1:
        raise ValueError(f"expected a unique invariant symmetric form, found {len(forms)}")
    return exact.normalize_first_nonzero(forms[0])


def first_non_null(form: Mat, orthogonal_to: Mat | None = None) -> Mat:
    """First basis vector e_i, else first e_i + e_j, with nonzero self-pairing.

    With ``orthogonal_to`` the candidate must also pair to zero with that vector.
    """
    n = form.shape[0]
    cands = [(i,) for i in range(n)] + list(itertools.combinations(range(n), 2))
    for idx in cands:
        v = exact.zeros(n)
        for i in idx:
            v[i] = Fraction(1)
        bv = exact.matmul(form, v)
        if np.dot(v, bv) == 0:
            continue
        if orthogonal_to is not None and np.dot(orthogonal_to, bv) != 0:
            continue
        return v
    raise ValueError("no non-null candidate among basis vectors and pairwise sums")


# --------------------------------------------------------------------------
# g2 as a spinor stabiliser


@dataclass(frozen=True)
class G2Embedding:
    subspace: Subspace  # inside so(7), in the basis of the (2.1.1) model
    algebra: lie.LieAlgebra
    spinor: Mat
    spin_form: Mat


@lru_cache(maxsize=None)
def g2_subalgebra() -> G2Embedding:
    spin = spin_rep()
    form = invariant_form(spin)
    s = first_non_null(form)
    sub = lie.invariance_subalgebra(spin, lie.FixVector(s))
    if sub.dim != 14:
        raise CertificationFailure(f"spinor stabiliser has dimension {sub.dim}, expected 14")
    return G2Embedding(sub, lie.subalgebra_from_subspace(so7().algebra, sub), s, form)


@lru_cache(maxsize=None)
def reductive_complement() -> Subspace:
    """Killing-orthogonal complement of g2 in so(7)."""
    g2 = g2_subalgebra().subspace
    kf = lie.killing_form(so7().algebra)
    p = exact.kernel(exact.matmul(g2.basis, kf))
    if p.dim != 7:
        raise CertificationFailure(f"complement has dimension {p.dim}, expected 7")
    return p


@lru_cache(maxsize=None)
def complement_rep() -> lie.Representation:
    """g2 acting on its complement, in the canonical basis of the complement."""
    g2 = g2_subalgebra()
    p = reductive_complement()
    br = so7().algebra.brackets_of(g2.subspace.basis, p.basis)  # (a, i, :)
    acts = []
    for a in range(g2.subspace.dim):
        m = exact.zeros(p.dim, p.dim)
        for i in range(p.dim):
            try:
                m[:, i] = p.coordinates(br[a, i])
            except ValueError:
                raise CertificationFailure("[g2, p] is not contained in p") from None
        acts.append(m)
    return lie.Representation(g2.algebra, acts)


@lru_cache(maxsize=None)
def vector_rep_g2() -> lie.Representation:
    return vector_rep().restrict(g2_subalgebra().subspace)


@dataclass(frozen=True)
class CrossProduct:
    """entries[i, j, k]: coefficient of e_k in e_i x e_j; form is the ambient B."""

    entries: Mat
    form: Mat
    iota: Mat  # V -> p coordinates, first nonzero entry +1

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __call__(self, x, y) -> Mat:
        t = exact.tensordot(np.asarray(x, dtype=object), self.entries, axes=([0], [0]))
        return exact.tensordot(np.asarray(y, dtype=object), t, axes=([0], [0]))

    def three_form(self) -> Mat:
        """phi[i, j, k] = B(e_i x e_j, e_k)."""
        return exact.tensordot(self.entries, self.form, axes=([2], [0]))

    def is_antisymmetric(self) -> bool:
        return not np.any(self.entries + self.entries.transpose(1, 0, 2))

    def is_orthogonal(self) -> bool:
        """B(x*y, x) = 0 = B(x*y, y) identically, i.e. phi is totally antisymmetric."""
        phi = self.three_form()
        return not np.any(phi + phi.transpose(2, 1, 0)) and not np.any(phi + phi.transpose(0, 2, 1))

    def composition_constant(self) -> tuple[Fraction | None, list]:
        """lambda with B(x*y, x*y) = lambda (B(x,x) B(y,y) - B(x,y)^2) as a polynomial identity.

        Also returns the ratio on every basis pair with nonzero right-hand side.
        """
        b = self.form
        n = self.dim
        cross_pairs = self.entries  # (i, j, k)
        lhs = exact.tensordot(exact.tensordot(cross_pairs, b, axes=([2], [0])), cross_pairs,
                              axes=([2], [2]))  # (i, j, k, l) = B(e_i x e_j, e_k x e_l)
        rhs = (np.einsum("ik,jl->ijkl", b, b) - np.einsum("ij,kl->ijkl", b, b)).astype(object)

        def sym(t):
            return t + t.transpose(2, 1, 0, 3) + t.transpose(0, 3, 2, 1) + t.transpose(2, 3, 0, 1)

        ls, rs = sym(lhs), sym(rhs)
        nz = np.argwhere(rs != 0)
        ratios = []
        for i in range(n):
            for j in range(n):
                den = b[i, i] * b[j, j] - b[i, j] ** 2
                if den:
                    ratios.append(((i, j), lhs[i, j, i, j] / den))
        if len(nz) == 0:
            return None, ratios
        idx = tuple(nz[0])
        lam = ls[idx] / rs[idx]
        if np.any(ls - lam * rs):
            return None, ratios
        return lam, ratios

    def derivation_defect(self, x: Mat) -> Mat:
        return lie.derivation_action(x, self.entries, "ddu")

    def to_json(self) -> dict:
        ent = [{"i": int(i), "j": int(j), "k": int(k), "value": exact.scalar_to_json(self.entries[i, j, k])}
               for i, j, k in zip(*np.nonzero(self.entries))]
        return {"dim": self.dim, "entries": ent}


@lru_cache(maxsize=None)
def cayley_cross() -> CrossProduct:
    """x * y := iota^-1( pr_p [iota x, iota y] ) for the decomposition so(7) = g2 + p."""
    g2 = g2_subalgebra()
    p = reductive_complement()
    maps = lie.intertwiners(vector_rep_g2(), complement_rep())
    if len(maps) != 1:
        raise CertificationFailure(f"Hom_g2(V, p) has dimension {len(maps)}, expected 1")
    iota = exact.normalize_first_nonzero(maps[0])
    emb = exact.matmul(iota.T, p.basis)  # row i: iota(e_i) in so(7) coordinates
    br = so7().algebra.brackets_of(emb, emb)  # (i, j, 21)
    split = exact.inverse(np.concatenate([g2.subspace.basis, p.basis], axis=0))
    coords = exact.tensordot(br, split, axes=([2], [0]))[:, :, g2.subspace.dim:]
    entries = exact.tensordot(coords, exact.inverse(iota), axes=([2], [1]))
    if not np.any(entries):
        raise CertificationFailure("torsion of so(7) = g2 + p vanishes")
    return CrossProduct(entries, invariant_form(vector_rep()), iota)


# --------------------------------------------------------------------------
# certificates


def holonomy_rep_checks() -> Certificate:
    cert = Certificate("holonomy representations")
    for name, rep in (("vector", vector_rep()), ("spin", spin_rep()), ("so(8) triality", triality_rep(0))):
        cert.expect(f"{name}: dimension", 7 if name == "vector" else 8, rep.dim)
        cert.expect(f"{name}: bracket relation defects", [], rep.relation_defects())
        cert.expect(f"{name}: commutant dimension", 1, lie.commutant_dimension(rep))
        forms = lie.invariant_symmetric_forms(rep)
        cert.expect(f"{name}: invariant symmetric forms", 1, len(forms))
        if forms:
            cert.require(f"{name}: invariant form nondegenerate", exact.rank(forms[0]) == rep.dim)
        cert.expect(f"{name}: invariant antisymmetric forms", 0, len(lie.invariant_antisymmetric_forms(rep)))
    cert.data["pinned t1*t2 (vector)"] = pinned_product(vector_spec())
    cert.data["pinned t1*t2 (spin)"] = pinned_product(spin_spec())
    return cert


def g2_checks() -> Certificate:
    cert = Certificate("g2 as spinor stabiliser")
    g2 = g2_subalgebra()
    cert.data["spinor"] = list(g2.spinor)
    cert.expect("stabiliser dimension", 14, g2.subspace.dim)
    cert.expect("Jacobi defect of the extracted algebra", 0, len(lie.jacobi_defect(g2.algebra)))
    cert.expect("simple", True, lie.is_simple(g2.algebra))
    cert.expect("rank", 2, lie.rank(g2.algebra))
    cert.expect("label", "g2", symdec.identify(g2.algebra))
    restricted = spin_rep().restrict(g2.subspace)
    cert.expect("commutant of spin restricted to g2", 2, lie.commutant_dimension(restricted))
    inv = exact.kernel(np.concatenate(restricted.actions, axis=0))
    cert.expect("invariant vectors of spin restricted to g2", 1, inv.dim)
    cert.require("invariant vectors are the spinor line", inv == Subspace(8, [g2.spinor]))
    return cert


def complement_checks() -> Certificate:
    cert = Certificate("reductive complement")
    p = reductive_complement()
    g2 = g2_subalgebra()
    cert.expect("dim p", 7, p.dim)
    cert.require("g2 + p = so(7)", (g2.subspace + p).dim == 21)
    br = so7().algebra.brackets_of(g2.subspace.basis, p.basis)
    cert.require("[g2, p] in p", all(p.contains(br[a, i]) for a in range(14) for i in range(7)))
    rep = complement_rep()
    cert.expect("commutant of g2 on p", 1, lie.commutant_dimension(rep))
    cert.expect("Hom_g2(V7, p)", 1, len(lie.intertwiners(vector_rep_g2(), rep)))
    cert.expect("commutant of V7 restricted to g2", 1, lie.commutant_dimension(vector_rep_g2()))
    return cert


def cross_checks() -> Certificate:
    cert = Certificate("cross product")
    cx = cayley_cross()
    cert.require("torsion nonzero", bool(np.any(cx.entries)))
    cert.require("antisymmetric", cx.is_antisymmetric())
    cert.require("x*x = 0 on basis", all(not np.any(cx.entries[i, i]) for i in range(7)))
    cert.require("B(x*y, x) = 0 identically", cx.is_orthogonal())
    lam, ratios = cx.composition_constant()
    cert.require("composition law holds as a polynomial identity", lam is not None and lam != 0)
    cert.data["lambda"] = lam
    distinct = sorted({r for _, r in ratios})
    cert.expect("basis-pair ratios uniform", [lam], distinct)
    cert.expect("basis pairs with nonzero denominator", True, len(ratios) > 0, {"pairs": len(ratios)})
    rep = vector_rep_g2()
    bad = sum(1 for m in rep.actions if np.any(cx.derivation_defect(m)))
    cert.expect("g2 elements not preserving the product", 0, bad)
    return cert


def thm17_check() -> Certificate:
    """Stabiliser of the cross product in gl(7) equals the image of g2."""
    cert = Certificate("automorphisms of the cross product")
    cx = cayley_cross()
    gl7 = lie.standard_rep(7)
    stab = lie.invariance_subalgebra(gl7, lie.FixTensor(cx.entries, "ddu"))
    img = Subspace(49, [m.reshape(-1) for m in vector_rep_g2().actions])
    so_img = Subspace(49, [m.reshape(-1) for m in vector_rep().actions])
    cert.expect("stabiliser dimension in gl(7)", 14, stab.dim)
    cert.expect("image of g2 dimension", 14, img.dim)
    cert.require("stabiliser inside image of so(7)", (stab & so_img) == stab)
    cert.require("stabiliser equals image of g2", stab == img)
    return cert


def triality_checks() -> Certificate:
    cert = Certificate("triality branching")
    mods = [sl2.direct_sum(_slot_module(a), _slot_module(b)) for a, b in TRIALITY_PAIRS]
    expected = [
        sl2.IsotypicList({(2, 0): 1, (0, 2): 1, (0, 0): 2}),
        sl2.IsotypicList({(1, 1): 2}),
        sl2.IsotypicList({(1, 1): 2}),
    ]
    found = []
    for t, (m, exp) in enumerate(zip(mods, expected)):
        dec = sl2.decompose(sl2.branch(m, SO6_ASSIGNMENT, 2))
        found.append(dec)
        cert.expect(f"representation {t + 1} restricted to sl(2)+sl(2)", exp.to_json(), dec.to_json())
        cert.expect(f"representation {t + 1} dimension bookkeeping", 8, dec.dimension())
    cert.require("first and second restrictions differ", found[0] != found[1])
    return cert


def rem14_check() -> Certificate:
    """The second and third so(8) triality modules restrict to two copies of the p of (1.1)."""
    cert = Certificate("triality and the 4-dim module of so(5) = sp(4)")
    p11 = sl2.decompose(symdec.p_module(symdec.MultiIndex((1, 1))))
    cert.expect("p of (1.1)", {(1, 1): 1}, dict(p11))
    cert.expect("dim p of (1.1)", 4, p11.dimension())
    for t in (1, 2):
        a, b = TRIALITY_PAIRS[t]
        dec = sl2.decompose(sl2.branch(sl2.direct_sum(_slot_module(a), _slot_module(b)), SO6_ASSIGNMENT, 2))
        cert.require(f"representation {t + 1} restricts to two copies of the p of (1.1)",
                     dec == sl2.IsotypicList({w: 2 * m for w, m in p11.items()}))
    cert.expect("label of (1.1)", "so(5)", symdec.identify(symdec.standard_model("so(5)").algebra))
    return cert


def _rank_one_label(l: lie.LieAlgebra) -> str:
    if l.dim == 3 and lie.is_simple(l) and lie.rank(l) == 1:
        return "sl(2)"
    return symdec.identify(l)


def cor15_chain() -> Certificate:
    cert = Certificate("so(5) in so(6) in so(7) and g2")
    alg = so7().algebra
    v7 = vector_rep()
    form = invariant_form(v7)
    w = first_non_null(form)
    u = first_non_null(form, orthogonal_to=w)
    cert.data["w"] = list(w)
    cert.data["u"] = list(u)
    so6 = lie.invariance_subalgebra(v7, lie.FixVector(w))
    so5 = so6 & lie.invariance_subalgebra(v7, lie.FixVector(u))
    cert.expect("dim so(6)", 15, so6.dim)
    cert.expect("so(6) label", "so(6)", symdec.identify(lie.subalgebra_from_subspace(alg, so6)))
    cert.expect("dim so(5)", 10, so5.dim)
    cert.expect("so(5) label", "so(5)", symdec.identify(lie.subalgebra_from_subspace(alg, so5)))
    g2 = g2_subalgebra().subspace
    sl3 = g2 & so6
    cert.expect("dim g2 & so(6)", 8, sl3.dim)
    cert.expect("g2 & so(6) label", "sl(3)", symdec.identify(lie.subalgebra_from_subspace(alg, sl3)))
    s = sl3 & so5
    cert.expect("dim sl(3) & so(5)", 3, s.dim)
    cert.expect("sl(3) & so(5) label", "sl(2)", _rank_one_label(lie.subalgebra_from_subspace(alg, s)))

    # s is one of the two sl(2) factors of a simple decomposition of so(5)
    l5 = lie.subalgebra_from_subspace(alg, so5)
    s5 = Subspace(10, [so5.coordinates(v) for v in s.basis])
    ad_s = np.concatenate([l5.ad(v) for v in s5.basis], axis=0)
    z5 = exact.kernel(ad_s)
    cert.expect("centraliser of sl(2) in so(5)", 3, z5.dim)
    cert.expect("centraliser label", "sl(2)", _rank_one_label(lie.subalgebra_from_subspace(l5, z5)))
    h5 = s5 + z5
    p5 = exact.kernel(exact.matmul(h5.basis, lie.killing_form(l5)))
    cert.expect("dim of complement of sl(2)+sl(2) in so(5)", 4, p5.dim)
    hp = l5.brackets_of(h5.basis, p5.basis)
    pp = l5.brackets_of(p5.basis, p5.basis)
    cert.require("[h, p] in p", all(p5.contains(hp[a, i]) for a in range(h5.dim) for i in range(p5.dim)))
    cert.require("[p, p] in h", all(h5.contains(pp[i, j]) for i in range(p5.dim) for j in range(p5.dim)))
    acts = []
    for v in s5.basis:
        m = exact.zeros(4, 4)
        for i in range(4):
            m[:, i] = p5.coordinates(l5.bracket(v, p5.basis[i]))
        acts.append(m)
    rep = lie.Representation(lie.subalgebra_from_subspace(l5, s5), acts)
    cert.expect("commutant of sl(2) on p (U1+U1 gives 4)", 4, lie.commutant_dimension(rep))
    inv = exact.kernel(np.concatenate(rep.actions, axis=0))
    cert.expect("sl(2)-invariant vectors in p", 0, inv.dim)
    return cert


def diagonal_candidate() -> dict:
    """Exploratory: is span{(A, A, B)} + (U_3 x U_1 part of p) a subalgebra of (2.1.1)?"""
    sd = so7()
    pm = sl2.branch(sd.p_module, (0, 0, 1), 2)
    target = sl2.tensor_irreps((3, 1))
    maps = sl2.equivariant_maps(target, pm)
    n = sd.algebra.dim
    vecs = []
    for a in range(3):
        v = exact.zeros(n)
        v[a] = v[3 + a] = Fraction(1)
        vecs.append(v)
        v = exact.zeros(n)
        v[6 + a] = Fraction(1)
        vecs.append(v)
    for m in maps:
        for col in m.T:
            v = exact.zeros(n)
            v[9:] = col
            vecs.append(v)
    cand = Subspace(n, vecs)
    witness = lie.closure_witness(sd.algebra, cand)
    return {"dim": cand.dim, "isotypic_maps": len(maps), "closed": witness is None,
            "witness": None if witness is None else list(witness)}
