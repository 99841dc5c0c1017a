"""Quadratic spaces, isotropic planes, isotropy algebras on the quadrics, and the
pointwise integrability obstruction for formal g2 curvature tensors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import exact, holo, lie
from .exact import Mat, Subspace
from .report import Certificate, CertificationFailure

__all__ = [
    "PreconditionError",
    "QuadraticSpace",
    "IsotropicPlane",
    "CurvatureSpace",
    "quadratic_space",
    "null_basis_points",
    "isotropic_plane",
    "hol_image",
    "nilradical",
    "socle_flag",
    "clifford_map",
    "W_of",
    "W_literal",
    "W_fallback",
    "prop21_check",
    "curvature_space",
    "containment_witness",
    "compatible_dimension",
    "valued_in",
    "obstruction_check",
    "thm22_check",
]


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticSpace:
    rep: lie.Representation
    form: Mat

    @property
    def dim(self) -> int:
        return self.form.shape[0]

    def pair(self, x, y):
        return np.dot(np.asarray(x, dtype=object), exact.matmul(self.form, np.asarray(y, dtype=object)))

    def orthogonal(self, s: Subspace) -> Subspace:
        if s.dim == 0:
            return Subspace.full(self.dim)
        return exact.kernel(exact.matmul(s.basis, self.form))

    def is_isotropic(self, s: Subspace) -> bool:
        if s.dim == 0:
            return True
        return not np.any(exact.matmul(exact.matmul(s.basis, self.form), s.basis.T))


def quadratic_space(r: lie.Representation) -> QuadraticSpace:
    forms = lie.invariant_symmetric_forms(r)
    if len(forms) != 1:
        raise PreconditionError(f"need a unique invariant symmetric form, found {len(forms)}")
    b = exact.normalize_first_nonzero(forms[0])
    if exact.rank(b) != r.dim:
        raise PreconditionError("invariant form is degenerate")
    return QuadraticSpace(r, b)


@dataclass(frozen=True)
class IsotropicPlane:
    subspace: Subspace
    ambient: QuadraticSpace

    def __post_init__(self):
        if not self.ambient.is_isotropic(self.subspace):
            raise CertificationFailure("plane is not isotropic")

    @property
    def dim(self) -> int:
        return self.subspace.dim


def _weights(q: QuadraticSpace) -> list[tuple] | None:
    hs = [m for m, lab in zip(q.rep.actions, q.rep.algebra.labels) if lab.startswith("H")]
    if not hs or any(np.any(m - np.diag(np.diag(m))) for m in hs):
        return None
    return [tuple(m[i, i] for m in hs) for i in range(q.dim)]


def null_basis_points(q: QuadraticSpace) -> dict:
    """Weight-basis catalogue: which e_i are null and which pairs pair to zero."""
    wts = _weights(q)
    if wts is None:
        raise PreconditionError("representation has no diagonal Cartan; weight basis unavailable")
    b = q.form
    null = [i for i in range(q.dim) if b[i, i] == 0]
    for i, w in enumerate(wts):
        if any(w) and i not in null:
            raise CertificationFailure(f"weight vector e_{i} of nonzero weight is not null")
    return {"weights": wts, "null": null}


def isotropic_plane(q: QuadraticSpace, k: int) -> IsotropicPlane:
    """Greedy k-plane spanned by pairwise orthogonal null weight vectors."""
    null = null_basis_points(q)["null"]
    chosen: list[int] = []
    for i in null:
        if all(q.form[i, j] == 0 for j in chosen):
            chosen.append(i)
            if len(chosen) == k:
                return IsotropicPlane(Subspace(q.dim, exact.identity(q.dim)[chosen]), q)
    raise PreconditionError(f"no isotropic {k}-plane among weight vectors (max found {len(chosen)})")


def hol_image(r: lie.Representation, s: Subspace | None = None) -> Subspace:
    """Matrices of a subalgebra (coordinates s in the algebra) as a subspace of gl(V), flattened."""
    n = r.dim * r.dim
    if s is None:
        return Subspace(n, [m.reshape(-1) for m in r.actions])
    return Subspace(n, [r.act(v).reshape(-1) for v in s.basis])


def nilradical(alg: lie.LieAlgebra, parabolic: Subspace, ambient: Subspace | None = None) -> Subspace:
    """parabolic & its Killing-orthogonal inside `ambient` (the nilradical of a parabolic)."""
    kf = lie.killing_form(alg)
    perp = exact.kernel(exact.matmul(parabolic.basis, kf))
    out = parabolic & perp
    return out if ambient is None else out & ambient


def _joint_kernel(mats: Sequence[Mat], dim: int) -> Subspace:
    if not mats:
        return Subspace.full(dim)
    return exact.kernel(np.concatenate(list(mats), axis=0))


def socle_flag(mats: Sequence[Mat], dim: int) -> list[Subspace]:
    """K_1 = joint kernel, K_{j+1} = {v : x v in K_j for all x}; stops when stable."""
    flag = [Subspace.zero(dim)]
    while True:
        ann = flag[-1].annihilator().basis
        if ann.shape[0] == 0:
            return flag[1:]
        nxt = _joint_kernel([exact.matmul(ann, m) for m in mats], dim)
        if nxt == flag[-1]:
            return flag[1:]
        flag.append(nxt)


@lru_cache(maxsize=None)
def vector_space() -> QuadraticSpace:
    return quadratic_space(holo.vector_rep())


@lru_cache(maxsize=None)
def spin_space() -> QuadraticSpace:
    return quadratic_space(holo.spin_rep())


@lru_cache(maxsize=None)
def clifford_map() -> Mat:
    """so(7)-equivariant V7 (x) S8 -> S8, an 8 x 56 matrix (index v * 8 + s)."""
    v, s = holo.vector_rep(), holo.spin_rep()
    acts = [exact.kron(a, exact.identity(8)) + exact.kron(exact.identity(7), b)
            for a, b in zip(v.actions, s.actions)]
    tensor = lie.Representation(v.algebra, acts, check=False)
    maps = lie.intertwiners(tensor, s)
    if len(maps) != 1:
        raise CertificationFailure(f"Hom(V7 (x) S8, S8) has dimension {len(maps)}, expected 1")
    return exact.normalize_first_nonzero(maps[0])


def clifford_kernel(v: Mat) -> Subspace:
    c = clifford_map()
    m = exact.tensordot(np.asarray(v, dtype=object), c.reshape(8, 7, 8), axes=([0], [1]))
    return exact.kernel(m)


def _left_mult(v: Mat) -> Mat:
    """Matrix of w -> v x w."""
    return exact.tensordot(np.asarray(v, dtype=object), holo.cayley_cross().entries, axes=([0], [0])).T


def W_literal(v: Mat) -> Subspace:
    """{w : (v x w) wedge v = 0}, i.e. v x w proportional to v."""
    ann = Subspace(7, [v]).annihilator().basis
    return exact.kernel(exact.matmul(ann, _left_mult(v)))


def W_of(v: Mat) -> Subspace:
    """{w : v x w = 0}; for null v an isotropic 3-plane through v."""
    return exact.kernel(_left_mult(v))


def _g2_line_isotropy(v: Mat) -> Subspace:
    g2 = holo.g2_subalgebra().subspace
    return g2 & lie.invariance_subalgebra(holo.vector_rep(), lie.FixLine(v))


def W_fallback(v: Mat) -> Subspace | None:
    """Second step of the socle flag of the line isotropy in g2, if isotropic of dim 3."""
    l = _g2_line_isotropy(v)
    n = nilradical(holo.so7().algebra, l)
    flag = socle_flag([holo.vector_rep().act(x) for x in n.basis], 7)
    cands = [f for f in flag if f.dim == 3 and vector_space().is_isotropic(f)]
    return cands[0] if len(cands) == 1 else None


def _stab(rep: lie.Representation, s: Subspace) -> Subspace:
    return lie.invariance_subalgebra(rep, lie.FixSubspace(s))


def _first_null(q: QuadraticSpace) -> Mat:
    i = null_basis_points(q)["null"][0]
    return exact.identity(q.dim)[i]


def prop21_check(case: str) -> Certificate:
    v7, s8 = vector_space(), spin_space()
    if case == "i":
        cert = Certificate("isotropic 3-planes of V7 and null spinor lines")
        w0 = isotropic_plane(v7, 3).subspace
        cert.data["W0"] = w0.basis
        l1 = _stab(v7.rep, w0)
        cert.expect("dim L1", 15, l1.dim)
        cert.expect("dim L1 + dim Gr_3^0(7) = dim so(7)", 21, l1.dim + 6)
        n1 = nilradical(holo.so7().algebra, l1)
        k1 = _joint_kernel([s8.rep.act(x) for x in n1.basis], 8)
        cert.expect("dim invariant spinor line", 1, k1.dim, {"nilradical_dim": n1.dim})
        if k1.dim != 1:
            return cert
        s0 = k1.basis[0]
        cert.data["s0"] = s0
        cert.require("s0 is L1-invariant line",
                     all(Subspace(8, [s0]).contains(exact.matmul(s8.rep.act(x), s0)) for x in l1.basis))
        cert.require("s0 is null", s8.pair(s0, s0) == 0)
        l2 = lie.invariance_subalgebra(s8.rep, lie.FixLine(s0))
        cert.expect("dim L2", 15, l2.dim)
        cert.expect("dim L2 + dim Q^6 = dim so(7)", 21, l2.dim + 6)
        cert.require("L1 = L2", l1 == l2)
        return cert
    if case == "ii":
        cert = Certificate("null lines of V7 and isotropic 3-planes via the cross product")
        v0 = _first_null(v7)
        cert.data["v0"] = v0
        l = _g2_line_isotropy(v0)
        cert.expect("dim l", 9, l.dim)
        cert.expect("dim l + dim Q^5 = dim g2", 14, l.dim + 5)
        w = W_of(v0)
        cert.data["W(v0)"] = w.basis
        cert.expect("dim W(v0)", 3, w.dim)
        cert.require("W(v0) isotropic", v7.is_isotropic(w))
        cert.require("v0 in W(v0)", w.contains(v0))
        g2 = holo.g2_subalgebra().subspace
        cert.require("l = g2 & stab(W(v0))", l == (g2 & _stab(v7.rep, w)))
        lit = W_literal(v0)
        cert.data["dim {w : (v0 x w) wedge v0 = 0}"] = lit.dim
        cert.require("{w : (v0 x w) wedge v0 = 0} equals W(v0)-perp", lit == v7.orthogonal(w))
        fb = W_fallback(v0)
        cert.require("socle-flag 3-plane exists", fb is not None)
        cert.require("socle-flag 3-plane equals W(v0)", fb == w)
        return cert
    if case == "iii":
        cert = Certificate("null lines of V7 and isotropic 4-planes of the spin space")
        v0 = _first_null(v7)
        cert.data["v0"] = v0
        l = _g2_line_isotropy(v0)
        s = clifford_kernel(v0)
        cert.data["S"] = s.basis
        cert.expect("dim S", 4, s.dim)
        cert.require("S isotropic", s8.is_isotropic(s))
        sl = lie.invariance_subalgebra(s8.rep, lie.FixSubspace(s))
        cert.require("S is l-invariant", sl.contains_subspace(l))
        g2 = holo.g2_subalgebra().subspace
        cert.require("g2 & stab(S) = l", (g2 & sl) == l)
        cert.expect("dim l", 9, l.dim)
        return cert
    raise ValueError(f"unknown case {case!r}; expected 'i', 'ii' or 'iii'")


# --------------------------------------------------------------------------
# formal curvature tensors


@dataclass(frozen=True)
class CurvatureSpace:
    """Basis of K as symmetric coefficient matrices r over a basis X_a of hol.

    R(x, y) z = sum_{a,b} r[a, b] B(X_b x, y) X_a z.
    """

    ambient: QuadraticSpace
    hol: Subspace
    hol_basis: Mat  # (m, d, d)
    coefficients: list[Mat]
    bianchi_rank: int

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def _phi(self) -> Mat:
        return exact.tensordot(self.hol_basis.transpose(0, 2, 1), self.ambient.form, axes=([2], [0]))

    def tensors(self) -> Mat:
        """(dim K, w, x, y, z): w-component of R(e_x, e_y) e_z."""
        d = self.ambient.dim
        if not self.coefficients:
            return exact.zeros(0, d, d, d, d)
        r = np.stack(self.coefficients)
        t = exact.tensordot(r, self.hol_basis, axes=([1], [0]))  # (K, b, w, z)
        t = exact.tensordot(t, self._phi(), axes=([1], [0]))  # (K, w, z, x, y)
        return t.transpose(0, 1, 3, 4, 2)

    def pairing_matrices(self) -> list[Mat]:
        """B(R(e_x, e_y) e_z, e_w) on Lambda^2 V coordinates (x<y), (z<w)."""
        d = self.ambient.dim
        pairs = list(itertools.combinations(range(d), 2))
        idx = np.array(pairs, dtype=int).reshape(-1, 2)
        phi = self._phi()
        out = []
        for r in self.coefficients:
            full = exact.tensordot(exact.tensordot(r, phi, axes=([1], [0])), phi, axes=([0], [0]))
            out.append(full[idx[:, 0], idx[:, 1]][:, idx[:, 0], idx[:, 1]])
        return out

    def to_json(self) -> dict:
        return {"dim": self.dim, "bianchi_rank": self.bianchi_rank,
                "lambda2_matrices": [exact.mat_to_json(m) for m in self.pairing_matrices()]}


def curvature_space(q: QuadraticSpace, hol: Subspace) -> CurvatureSpace:
    """Symmetric r in S^2(hol) whose curvature tensor satisfies the first Bianchi identity."""
    d = q.dim
    m = hol.dim
    xs = hol.basis.reshape(m, d, d) if m else exact.zeros(0, d, d)
    for x in xs:
        if np.any(exact.matmul(x.T, q.form) + exact.matmul(q.form, x)):
            raise PreconditionError("holonomy element is not B-skew")
    if m == 0:
        return CurvatureSpace(q, hol, xs, [], 0)
    xi, _ = exact.integer_scaled(xs)
    phi = exact.tensordot(xs.transpose(0, 2, 1), q.form, axes=([2], [0]))
    pi, _ = exact.integer_scaled(phi)
    trip = np.array(list(itertools.combinations(range(d), 3)), dtype=int).reshape(-1, 3)
    # per (a, b): X_a[w, z] phi_b[x, y] with the cyclic sum over (x, y, z)
    cyc = {}
    for a in range(m):
        for b in range(m):
            t = np.einsum("wz,xy->wxyz", xi[a], pi[b])
            s = t + t.transpose(0, 3, 1, 2) + t.transpose(0, 2, 3, 1)
            cyc[a, b] = s[:, trip[:, 0], trip[:, 1], trip[:, 2]].reshape(-1)
    unknowns = [(a, b) for a in range(m) for b in range(a, m)]
    cols = [cyc[a, b] if a == b else cyc[a, b] + cyc[b, a] for a, b in unknowns]
    mat = np.stack(cols, axis=1)
    rows = ({j: int(v) for j, v in enumerate(row) if v} for row in mat[np.any(mat != 0, axis=1)])
    ker = exact.kernel_of_rows(rows, len(unknowns))
    coeffs = []
    for v in ker.basis:
        r = exact.zeros(m, m)
        for (a, b), val in zip(unknowns, v):
            r[a, b] = r[b, a] = val
        coeffs.append(r)
    return CurvatureSpace(q, hol, xs, coeffs, len(unknowns) - ker.dim)


def _obstruction_array(k: CurvatureSpace, plane: Subspace) -> Mat | None:
    """(ann, K, z, y, x): components of R(x, y) z transverse to the plane."""
    ann = plane.annihilator().basis
    if k.dim == 0 or ann.shape[0] == 0:
        return None
    p = plane.basis
    t = exact.tensordot(k.tensors(), p, axes=([4], [1]))
    t = exact.tensordot(t, p, axes=([3], [1]))
    t = exact.tensordot(t, p, axes=([2], [1]))  # (K, w, z', y', x')
    return exact.tensordot(ann, t, axes=([1], [1]))


def containment_witness(k: CurvatureSpace, plane: Subspace) -> tuple | None:
    """First (basis index, x, y, z) with R(x, y) z outside the plane, or None."""
    t = _obstruction_array(k, plane)
    if t is None:
        return None
    bad = np.argwhere(t != 0)
    if len(bad) == 0:
        return None
    _, i, z, y, x = (int(v) for v in bad[0])
    return (i, x, y, z)


def compatible_dimension(k: CurvatureSpace, plane: Subspace) -> int:
    """Dimension of the subspace of K whose elements satisfy the containment."""
    t = _obstruction_array(k, plane)
    if t is None:
        return k.dim
    return k.dim - exact.rank(np.moveaxis(t, 1, -1).reshape(-1, k.dim))


def valued_in(k: CurvatureSpace, hol: Subspace) -> Subspace:
    """Coordinates (in the basis of k) of elements with R(x, y) in hol for all x, y."""
    d = k.ambient.dim
    ann = hol.annihilator().basis
    t = k.tensors().transpose(0, 2, 3, 1, 4).reshape(k.dim, d * d, d * d)
    cons = exact.tensordot(t, ann, axes=([2], [1]))
    return exact.kernel(np.moveaxis(cons, 0, -1).reshape(-1, k.dim))


def obstruction_check(k: CurvatureSpace, plane: Subspace, name: str = "containment") -> Certificate:
    cert = Certificate("pointwise integrability obstruction")
    wit = containment_witness(k, plane)
    cert.expect(name, None, wit, {"basis_tensors": k.dim, "triples": plane.dim ** 3})
    return cert


@lru_cache(maxsize=None)
def g2_curvature_7() -> CurvatureSpace:
    v7 = vector_space()
    return curvature_space(v7, hol_image(v7.rep, holo.g2_subalgebra().subspace))


@lru_cache(maxsize=None)
def g2_curvature_8() -> CurvatureSpace:
    s8 = spin_space()
    return curvature_space(s8, hol_image(s8.rep, holo.g2_subalgebra().subspace))


@lru_cache(maxsize=None)
def so7_curvature() -> CurvatureSpace:
    v7 = vector_space()
    return curvature_space(v7, hol_image(v7.rep))


def thm22_check(transport: int = 3) -> Certificate:
    cert = Certificate("formal g2 curvature and the integrability obstruction")
    v7, s8 = vector_space(), spin_space()
    k7, k8, kfull = g2_curvature_7(), g2_curvature_8(), so7_curvature()
    cert.expect("dim K(g2) on V7", 77, k7.dim)
    cert.expect("rank of Bianchi map on S^2(g2)", 28, k7.bianchi_rank)
    cert.expect("dim K(g2) on S8", 77, k8.dim)
    cert.expect("dim K(so(7)) = 7^2 (7^2 - 1) / 12", 196, kfull.dim)
    cert.expect("dim K(0)", 0, curvature_space(v7, Subspace.zero(49)).dim)
    g2img = hol_image(v7.rep, holo.g2_subalgebra().subspace)
    sub = valued_in(kfull, g2img)
    flat = exact.tensordot(sub.basis, kfull.tensors().reshape(kfull.dim, -1), axes=([1], [0]))
    cert.require("K(g2) equals the g2-valued part of K(so(7))",
                 Subspace(7 ** 4, flat) == Subspace(7 ** 4, k7.tensors().reshape(k7.dim, -1)))

    v0 = _first_null(v7)
    w = W_of(v0)
    perp = v7.orthogonal(w)
    cert.expect("dim p-perp", 4, perp.dim)
    cert.require("p inside p-perp", perp.contains_subspace(w))
    cert.expect("7-dim containment R(p-perp, p-perp) p-perp in p-perp", None, containment_witness(k7, perp),
                {"basis_tensors": k7.dim, "triples": perp.dim ** 3})
    s = clifford_kernel(v0)
    cert.require("S maximal isotropic", s.dim == 4 and s8.is_isotropic(s) and s8.orthogonal(s) == s)
    cert.expect("8-dim containment R(S, S) S in S", None, containment_witness(k8, s),
                {"basis_tensors": k8.dim, "triples": s.dim ** 3})
    cert.data["dim of K(g2) satisfying the 7-dim containment"] = compatible_dimension(k7, perp)
    cert.data["dim of K(g2) satisfying the 8-dim containment"] = compatible_dimension(k8, s)
    wit = containment_witness(kfull, perp)
    cert.require("negative control: K(so(7)) violates containment", wit is not None, {"witness": wit})
    cert.data["negative control witness (basis index, x, y, z)"] = wit

    others = [i for i in null_basis_points(v7)["null"] if v0[i] == 0][:transport]
    for i in others:
        v = exact.identity(7)[i]
        wv = W_of(v)
        ok = wv.dim == 3 and v7.is_isotropic(wv)
        cert.require(f"W(e_{i}) is an isotropic 3-plane", ok)
        if ok:
            cert.expect(f"containment at W(e_{i})-perp", None, containment_witness(k7, v7.orthogonal(wv)))
    return cert
