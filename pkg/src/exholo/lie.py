"""Lie algebras given by rational structure constants, and their representations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .exact import Mat, Subspace

__all__ = [
    "LieAlgebra",
    "Representation",
    "BracketRelationError",
    "ClosureError",
    "InternalConsistencyError",
    "RegularElementNotFound",
    "FixVector",
    "FixLine",
    "FixSubspace",
    "FixTensor",
    "abelian",
    "sl2_algebra",
    "gl_algebra",
    "standard_rep",
    "direct_sum",
    "jacobi_defect",
    "killing_form",
    "is_semisimple",
    "center",
    "adjoint_rep",
    "commutant_dimension",
    "intertwiners",
    "is_simple",
    "is_abelian",
    "centralizer",
    "rank",
    "invariant_symmetric_forms",
    "invariant_antisymmetric_forms",
    "invariance_subalgebra",
    "closure_witness",
    "subalgebra_from_subspace",
    "CARTAN_TABLE",
    "cartan_label",
]


class BracketRelationError(ValueError):
    """rho([x, y]) differs from [rho(x), rho(y)]."""


class ClosureError(ValueError):
    """A subspace is not closed under the bracket."""

    def __init__(self, pair):
        super().__init__(f"bracket of basis elements {pair} leaves the subspace")
        self.pair = pair


class InternalConsistencyError(AssertionError):
    pass


class RegularElementNotFound(RuntimeError):
    pass


class LieAlgebra:
    """Structure constants ``c[i, j, k]`` with ``[b_i, b_j] = sum_k c[i,j,k] b_k``.

    Antisymmetry is enforced on construction; the Jacobi identity is not
    (see :func:`jacobi_defect`), so candidate brackets can be represented.
    """

    def __init__(self, structure, labels: Sequence[str] | None = None):
        c = np.asarray(structure, dtype=object)
        if c.size and not isinstance(c.flat[0], Fraction):
            c = exact.as_mat(c)
        n = c.shape[0] if c.ndim == 3 else 0
        if n == 0:
            c = exact.zeros(0, 0, 0)
        elif c.shape != (n, n, n):
            raise ValueError(f"structure constants must be n x n x n, got {c.shape}")
        if np.any(c + c.transpose(1, 0, 2)):
            raise ValueError("structure constants are not antisymmetric")
        c.setflags(write=False)
        self.structure = c
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))
        if len(self.labels) != n:
            raise ValueError("label count differs from dimension")
        self._sparse = None

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim})"

    def sparse(self) -> dict:
        """{(i, j): {k: c_ijk}} over nonzero brackets."""
        if self._sparse is None:
            out = {}
            for i, j, k in zip(*np.nonzero(self.structure)):
                out.setdefault((int(i), int(j)), {})[int(k)] = self.structure[i, j, k]
            self._sparse = out
        return self._sparse

    def bracket(self, x, y) -> Mat:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        return exact.tensordot(exact.tensordot(x, self.structure, axes=([0], [0])), y, axes=([0], [0]))

    def brackets_of(self, xs: Mat, ys: Mat) -> Mat:
        """out[a, b, :] = [xs[a], ys[b]]."""
        t = exact.tensordot(xs, self.structure, axes=([1], [0]))  # (a, j, k)
        return exact.tensordot(t, ys, axes=([1], [1])).transpose(0, 2, 1)

    def ad_basis(self, i: int) -> Mat:
        return self.structure[i].T.copy()

    def ad(self, x) -> Mat:
        """Matrix of ad(x): column j holds [x, b_j]."""
        x = np.asarray(x, dtype=object)
        return exact.tensordot(x, self.structure, axes=([0], [0])).T.copy()

    def to_json(self) -> dict:
        brackets = []
        for i, j, k in zip(*np.nonzero(self.structure)):
            if i < j:
                brackets.append({"i": int(i), "j": int(j), "k": int(k),
                                 "value": exact.scalar_to_json(self.structure[i, j, k])})
        return {"dim": self.dim, "labels": list(self.labels), "brackets": brackets}

    @classmethod
    def from_json(cls, d: dict) -> "LieAlgebra":
        n = d["dim"]
        c = exact.zeros(n, n, n)
        for b in d["brackets"]:
            v = exact.scalar_from_json(b["value"])
            c[b["i"], b["j"], b["k"]] = v
            c[b["j"], b["i"], b["k"]] = -v
        return cls(c, d.get("labels"))


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(exact.zeros(n, n, n))


def _sl2_structure() -> Mat:
    c = exact.zeros(3, 3, 3)
    E, F, H = 0, 1, 2
    for (i, j, k, v) in [(E, F, H, 1), (H, E, E, 2), (H, F, F, -2)]:
        c[i, j, k] = Fraction(v)
        c[j, i, k] = Fraction(-v)
    return c


def sl2_algebra() -> LieAlgebra:
    return LieAlgebra(_sl2_structure(), ("E", "F", "H"))


def direct_sum(*algs: LieAlgebra) -> LieAlgebra:
    n = sum(a.dim for a in algs)
    c = exact.zeros(n, n, n)
    labels = []
    off = 0
    for t, a in enumerate(algs):
        d = a.dim
        c[off:off + d, off:off + d, off:off + d] = a.structure
        labels += [f"{lab}{t + 1}" for lab in a.labels]
        off += d
    return LieAlgebra(c, labels)


def gl_algebra(n: int) -> LieAlgebra:
    """gl(n) in the basis E_ab (index a*n + b)."""
    N = n * n
    c = exact.zeros(N, N, N)
    for a, b, cc, d in itertools.product(range(n), repeat=4):
        i, j = a * n + b, cc * n + d
        if b == cc:
            c[i, j, a * n + d] += 1
        if d == a:
            c[i, j, cc * n + b] -= 1
    return LieAlgebra(c, [f"E{a}{b}" for a in range(n) for b in range(n)])


def standard_rep(n: int) -> "Representation":
    acts = []
    for a in range(n):
        for b in range(n):
            m = exact.zeros(n, n)
            m[a, b] = Fraction(1)
            acts.append(m)
    return Representation(gl_algebra(n), acts)


# --------------------------------------------------------------------------
# structure checks


def jacobi_defect(l: LieAlgebra) -> list[tuple[int, int, int, dict]]:
    """Basis triples i < j < k whose Jacobi sum is nonzero, with the defect."""
    br = l.sparse()

    def bracket_with(i: int, vec: dict) -> dict:
        out: dict = {}
        for m, v in vec.items():
            for k, w in br.get((i, m), {}).items():
                out[k] = out.get(k, 0) + v * w
        return out

    out = []
    for i, j, k in itertools.combinations(range(l.dim), 3):
        tot: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = br.get((b, c))
            if inner:
                for key, val in bracket_with(a, inner).items():
                    tot[key] = tot.get(key, 0) + val
        tot = {key: v for key, v in tot.items() if v}
        if tot:
            out.append((i, j, k, tot))
    return out


def killing_form(l: LieAlgebra) -> Mat:
    return exact.tensordot(l.structure, l.structure, axes=([1, 2], [2, 1]))


def is_semisimple(l: LieAlgebra) -> bool:
    if l.dim == 0:
        return True
    return exact.rank(killing_form(l)) == l.dim


def center(l: LieAlgebra) -> Subspace:
    n = l.dim
    if n == 0:
        return Subspace.zero(0)
    m = l.structure.transpose(0, 2, 1).reshape(n * n, n)
    return exact.kernel(m)


def is_abelian(l: LieAlgebra) -> bool:
    return not np.any(l.structure)


# --------------------------------------------------------------------------
# representations


class Representation:
    """Action matrices ``actions[i] = rho(b_i)``; the bracket relation is checked."""

    def __init__(self, algebra: LieAlgebra, actions: Sequence[Mat], check: bool = True):
        acts = [np.asarray(m, dtype=object) for m in actions]
        if len(acts) != algebra.dim:
            raise ValueError("one action matrix per basis element required")
        dims = {m.shape for m in acts}
        if len(dims) > 1:
            raise ValueError("action matrices differ in shape")
        self.dim = acts[0].shape[0] if acts else 0
        if acts and acts[0].shape != (self.dim, self.dim):
            raise ValueError("action matrices must be square")
        self.algebra = algebra
        self.actions = tuple(acts)
        for m in self.actions:
            m.setflags(write=False)
        if check:
            bad = self.relation_defects()
            if bad:
                raise BracketRelationError(f"bracket relation fails on pairs {bad[:5]}")

    def __repr__(self) -> str:
        return f"Representation(algebra_dim={self.algebra.dim}, dim={self.dim})"

    def stack(self) -> Mat:
        if not self.actions:
            return exact.zeros(0, self.dim, self.dim)
        return np.stack(self.actions)

    def relation_defects(self) -> list[tuple[int, int]]:
        n = self.algebra.dim
        if n == 0 or self.dim == 0:
            return []
        ri, dr = exact.integer_scaled(self.stack())
        ci, dc = exact.integer_scaled(self.algebra.structure)
        prod = np.tensordot(ri, ri, axes=([2], [1])).transpose(0, 2, 1, 3)  # (i, j, a, c)
        comm = prod - prod.transpose(1, 0, 2, 3)
        rhs = np.tensordot(ci, ri, axes=([2], [0]))  # (i, j, a, c)
        diff = comm * dc - rhs * dr
        bad = np.argwhere(np.any(diff.reshape(n, n, -1) != 0, axis=2))
        return [(int(i), int(j)) for i, j in bad if i < j]

    def act(self, x) -> Mat:
        x = np.asarray(x, dtype=object)
        if self.algebra.dim == 0:
            return exact.zeros(self.dim, self.dim)
        return exact.tensordot(x, self.stack(), axes=([0], [0]))

    def restrict(self, s: Subspace) -> "Representation":
        """Restriction to the subalgebra spanned by ``s`` (canonical basis)."""
        sub = subalgebra_from_subspace(self.algebra, s)
        acts = [self.act(v) for v in s.basis]
        return Representation(sub, acts, check=False)

    def to_json(self, algebra_ref: str = "") -> dict:
        return {"algebra_ref": algebra_ref, "dim": self.dim,
                "actions": [exact.mat_to_json(m) for m in self.actions]}


def adjoint_rep(l: LieAlgebra) -> Representation:
    bad = jacobi_defect(l)
    if bad:
        raise BracketRelationError(f"adjoint action violates the bracket relation (Jacobi fails on {bad[0][:3]})")
    return Representation(l, [l.ad_basis(i) for i in range(l.dim)], check=False)


def intertwiners(a: Representation, b: Representation) -> list[Mat]:
    """Basis of maps T : a -> b with T rho_a(x) = rho_b(x) T."""
    if a.algebra.dim != b.algebra.dim:
        raise ValueError("representations of different algebras")
    if a.algebra.dim == 0:
        space = Subspace.full(a.dim * b.dim)
    else:
        space = exact.commutation_kernel(a.actions, b.actions)
    return [v.reshape(b.dim, a.dim).copy() for v in space.basis]


def commutant_dimension(r: Representation) -> int:
    if r.algebra.dim == 0:
        return r.dim * r.dim
    return exact.commutation_kernel(r.actions, r.actions).dim


def is_simple(l: LieAlgebra) -> bool:
    """Semisimple with absolutely irreducible adjoint representation."""
    if l.dim == 0 or jacobi_defect(l) or not is_semisimple(l):
        return False
    return commutant_dimension(adjoint_rep(l)) == 1


def centralizer(l: LieAlgebra, x) -> Subspace:
    return exact.kernel(l.ad(x))


def _subspace_is_abelian(l: LieAlgebra, s: Subspace) -> bool:
    if s.dim < 2:
        return True
    return not np.any(l.brackets_of(s.basis, s.basis))


def rank(l: LieAlgebra, budget: int = 30) -> int:
    """Minimal centraliser dimension over trial elements sum_i i t^(i-1) b_i.

    The first trial (t = 1, 2, ...) that attains the minimum over a window of
    five consecutive trials and has an abelian centraliser is accepted.
    """
    if l.dim == 0:
        return 0
    found: list[tuple[int, Subspace]] = []
    for t in range(1, budget + 1):
        x = exact.as_vec([(i + 1) * t ** i for i in range(l.dim)])
        z = centralizer(l, x)
        found.append((z.dim, z))
        if len(found) >= 5:
            window = found[-5:]
            m = min(d for d, _ in window)
            for d, z in window:
                if d == m and _subspace_is_abelian(l, z):
                    return m
    raise RegularElementNotFound(f"no regular element among {budget} trials")


def _forms(r: Representation) -> Subspace:
    n = r.dim
    return exact.commutation_kernel(r.actions, [m.T.copy() for m in r.actions], sign=1)


def invariant_symmetric_forms(r: Representation) -> list[Mat]:
    """Basis of symmetric B with rho(x)^T B + B rho(x) = 0."""
    n = r.dim
    space = exact.commutation_kernel(r.actions, [m.T.copy() for m in r.actions],
                                     sign=1, symmetric=True)
    upper = [(p, q) for p in range(n) for q in range(p, n)]
    out = []
    for v in space.basis:
        b = exact.zeros(n, n)
        for val, (p, q) in zip(v, upper):
            b[p, q] = val
            b[q, p] = val
        out.append(b)
    return out


def invariant_antisymmetric_forms(r: Representation) -> list[Mat]:
    n = r.dim
    space = _forms(r)
    parts = [(v.reshape(n, n) - v.reshape(n, n).T).reshape(-1) for v in space.basis]
    anti = Subspace(n * n, parts) if parts else Subspace.zero(n * n)
    return [v.reshape(n, n).copy() for v in anti.basis]


# --------------------------------------------------------------------------
# isotropy subalgebras


@dataclass(frozen=True)
class FixVector:
    vector: Mat


@dataclass(frozen=True)
class FixLine:
    vector: Mat


@dataclass(frozen=True)
class FixSubspace:
    subspace: Subspace


@dataclass(frozen=True)
class FixTensor:
    """``valence[a] == 'u'`` for an output (contravariant) axis, ``'d'`` for an input axis."""

    tensor: Mat
    valence: str


def derivation_action(x: Mat, tensor: Mat, valence: str) -> Mat:
    """Infinitesimal action of the matrix ``x`` on a tensor of the given valence."""
    t = np.asarray(tensor, dtype=object)
    if len(valence) != t.ndim:
        raise ValueError("valence string must name every axis")
    total = exact.zeros(*t.shape)
    for ax, kind in enumerate(valence):
        if kind == "u":
            moved = exact.tensordot(x, t, axes=([1], [ax]))  # new axis at front
            total = total + np.moveaxis(moved, 0, ax)
        elif kind == "d":
            moved = exact.tensordot(t, x, axes=([ax], [0]))  # new axis at end
            total = total - np.moveaxis(moved, -1, ax)
        else:
            raise ValueError(f"unknown valence marker {kind!r}")
    return total


def _constraint_matrix(r: Representation, constraint) -> Mat:
    cols = []
    if isinstance(constraint, FixVector):
        v = exact.as_vec(constraint.vector)
        cols = [exact.matmul(m, v) for m in r.actions]
    elif isinstance(constraint, FixLine):
        v = exact.as_vec(constraint.vector)
        nz = [i for i, x in enumerate(v) if x]
        if not nz:
            raise ValueError("line through the zero vector")
        p = nz[0]
        for m in r.actions:
            u = exact.matmul(m, v)
            cols.append(u * v[p] - v * u[p])
    elif isinstance(constraint, FixSubspace):
        w = constraint.subspace
        ann = w.annihilator().basis
        for m in r.actions:
            img = exact.matmul(exact.matmul(ann, m), w.basis.T)
            cols.append(img.reshape(-1))
    elif isinstance(constraint, FixTensor):
        for m in r.actions:
            cols.append(derivation_action(m, constraint.tensor, constraint.valence).reshape(-1))
    else:
        raise TypeError(f"unknown constraint {constraint!r}")
    if not cols:
        return exact.zeros(0, 0)
    return np.stack(cols, axis=1)


def closure_witness(l: LieAlgebra, s: Subspace) -> tuple[int, int] | None:
    if s.dim < 2:
        return None
    br = l.brackets_of(s.basis, s.basis)
    for a in range(s.dim):
        for b in range(a + 1, s.dim):
            if not s.contains(br[a, b]):
                return (a, b)
    return None


def invariance_subalgebra(r: Representation, constraint) -> Subspace:
    """Elements of the algebra whose action preserves the given datum."""
    m = _constraint_matrix(r, constraint)
    if m.shape[0] == 0:
        s = Subspace.full(r.algebra.dim)
    else:
        s = exact.kernel(m)
    if closure_witness(r.algebra, s) is not None:
        raise InternalConsistencyError("isotropy subspace is not a subalgebra")
    return s


def subalgebra_from_subspace(l: LieAlgebra, s: Subspace) -> LieAlgebra:
    if s.ambient_dim != l.dim:
        raise ValueError("subspace ambient differs from algebra dimension")
    m = s.dim
    c = exact.zeros(m, m, m)
    if m >= 2:
        br = l.brackets_of(s.basis, s.basis)
        for a in range(m):
            for b in range(a + 1, m):
                try:
                    coords = s.coordinates(br[a, b])
                except ValueError:
                    raise ClosureError((a, b)) from None
                c[a, b] = coords
                c[b, a] = -coords
    return LieAlgebra(c)


# (dim, rank, simple) -> label for the algebras admitting simple decompositions
CARTAN_TABLE = {
    (6, 2, False): "so(4)",
    (10, 2, True): "so(5)",
    (8, 2, True): "sl(3)",
    (14, 2, True): "g2",
    (15, 3, True): "so(6)",
    (21, 3, True): "so(7)",
    (28, 4, True): "so(8)",
}


def cartan_label(dim: int, rk: int, simple: bool) -> str:
    return CARTAN_TABLE.get((dim, rk, simple), "unknown")
