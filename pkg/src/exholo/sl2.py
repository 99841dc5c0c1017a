"""Representations of sl(2) x ... x sl(2) in weight bases.

Each factor acts through a triple (E, F, H) with [H,E] = 2E, [H,F] = -2F,
[E,F] = H.  The irreducible module U_n has basis v_0..v_n with

    H v_i = (n - 2i) v_i,   F v_i = v_{i+1},   E v_i = i (n + 1 - i) v_{i-1},

so every structure constant is an integer.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .exact import Mat

__all__ = [
    "MalformedModuleError",
    "Sl2kModule",
    "IsotypicList",
    "BilinearTensor",
    "irrep",
    "trivial",
    "tensor_irreps",
    "external_tensor",
    "internal_tensor",
    "direct_sum",
    "branch",
    "decompose",
    "clebsch_projection",
    "equivariant_maps",
    "U2_TO_SL2",
]


class MalformedModuleError(ValueError):
    """Raised when a module violates the sl(2)^k relations or has non-integral weights."""


def _comm(a: Mat, b: Mat) -> Mat:
    return exact.matmul(a, b) - exact.matmul(b, a)


@dataclass(frozen=True)
class Sl2kModule:
    """A module over k copies of sl(2); ``actions[j] == (E_j, F_j, H_j)``."""

    actions: tuple
    dim: int
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        acts = tuple(tuple(np.asarray(m, dtype=object) for m in triple) for triple in self.actions)
        object.__setattr__(self, "actions", acts)
        for triple in acts:
            if len(triple) != 3:
                raise MalformedModuleError("each factor needs exactly (E, F, H)")
            for m in triple:
                if m.shape != (self.dim, self.dim):
                    raise MalformedModuleError(f"action of shape {m.shape} on a {self.dim}-dim module")
        if self.check:
            defects = self.relation_defects()
            if defects:
                raise MalformedModuleError("sl(2)^k relations fail: " + ", ".join(defects))

    @property
    def k(self) -> int:
        return len(self.actions)

    def generators(self) -> list[Mat]:
        return [m for triple in self.actions for m in triple]

    def relation_defects(self) -> list[str]:
        out = []
        for j, (e, f, h) in enumerate(self.actions):
            if np.any(_comm(h, e) - 2 * e):
                out.append(f"[H{j},E{j}]")
            if np.any(_comm(h, f) + 2 * f):
                out.append(f"[H{j},F{j}]")
            if np.any(_comm(e, f) - h):
                out.append(f"[E{j},F{j}]")
        for j, jj in itertools.combinations(range(self.k), 2):
            for a, b in itertools.product(self.actions[j], self.actions[jj]):
                if np.any(_comm(a, b)):
                    out.append(f"factors {j},{jj} do not commute")
                    break
        return out

    def weights(self) -> list[tuple[int, ...]] | None:
        """Weights of the basis vectors when every H_j is diagonal, else None."""
        diag = []
        for _, _, h in self.actions:
            d = np.diag(h)
            if np.any(h - np.diag(d)):
                return None
            diag.append(d)
        if not self.actions:
            return [()] * self.dim
        out = []
        for i in range(self.dim):
            w = tuple(x[i] for x in diag)
            if any(x.denominator != 1 for x in w):
                raise MalformedModuleError(f"non-integral weight {w}")
            out.append(tuple(int(x) for x in w))
        return out


def irrep(n: int) -> Sl2kModule:
    """U_n over a single sl(2)."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    e, f, h = exact.zeros(n + 1, n + 1), exact.zeros(n + 1, n + 1), exact.zeros(n + 1, n + 1)
    for i in range(n + 1):
        h[i, i] = Fraction(n - 2 * i)
        if i < n:
            f[i + 1, i] = Fraction(1)
        if i > 0:
            e[i - 1, i] = Fraction(i * (n + 1 - i))
    return Sl2kModule(((e, f, h),), n + 1)


def trivial(k: int, dim: int = 1) -> Sl2kModule:
    z = exact.zeros(dim, dim)
    return Sl2kModule(tuple((z, z, z) for _ in range(k)), dim)


def external_tensor(a: Sl2kModule, b: Sl2kModule) -> Sl2kModule:
    ia, ib = exact.identity(a.dim), exact.identity(b.dim)
    acts = [tuple(exact.kron(m, ib) for m in t) for t in a.actions]
    acts += [tuple(exact.kron(ia, m) for m in t) for t in b.actions]
    return Sl2kModule(tuple(acts), a.dim * b.dim, check=False)


def tensor_irreps(parts: Sequence[int]) -> Sl2kModule:
    """U_{n_1} (x) ... (x) U_{n_k}, one sl(2) per part."""
    mod = irrep(parts[0])
    for n in parts[1:]:
        mod = external_tensor(mod, irrep(n))
    return mod


def internal_tensor(a: Sl2kModule, b: Sl2kModule) -> Sl2kModule:
    if a.k != b.k:
        raise ValueError("internal tensor needs modules over the same factors")
    ia, ib = exact.identity(a.dim), exact.identity(b.dim)
    acts = tuple(
        tuple(exact.kron(x, ib) + exact.kron(ia, y) for x, y in zip(ta, tb))
        for ta, tb in zip(a.actions, b.actions)
    )
    return Sl2kModule(acts, a.dim * b.dim, check=False)


def direct_sum(*mods: Sl2kModule) -> Sl2kModule:
    ks = {m.k for m in mods}
    if len(ks) != 1:
        raise ValueError("direct sum of modules over different factor counts")
    k = ks.pop()
    dim = sum(m.dim for m in mods)
    acts = []
    for j in range(k):
        triple = []
        for a in range(3):
            blk = exact.zeros(dim, dim)
            off = 0
            for m in mods:
                blk[off:off + m.dim, off:off + m.dim] = m.actions[j][a]
                off += m.dim
            triple.append(blk)
        acts.append(tuple(triple))
    return Sl2kModule(tuple(acts), dim, check=False)


def branch(m: Sl2kModule, assignment: Sequence[int], k_target: int | None = None) -> Sl2kModule:
    """Restrict along the diagonal morphism sending target i to the slots mapped to it.

    ``assignment[slot]`` is the target factor acting through ``slot``; e.g.
    (A1, A2) -> (A1, A1, A2, A2) is ``assignment=(0, 0, 1, 1)``.
    """
    if len(assignment) != m.k:
        raise ValueError("assignment must cover every slot")
    if k_target is None:
        k_target = max(assignment) + 1 if len(assignment) else 0
    acts = []
    for i in range(k_target):
        triple = []
        for a in range(3):
            tot = exact.zeros(m.dim, m.dim)
            for slot, tgt in enumerate(assignment):
                if tgt == i:
                    tot = tot + m.actions[slot][a]
            triple.append(tot)
        acts.append(tuple(triple))
    return Sl2kModule(tuple(acts), m.dim)


# --------------------------------------------------------------------------
# decomposition


class IsotypicList(Counter):
    """Multiset of highest weights (m_1, ..., m_k) of irreducible summands."""

    def dimension(self) -> int:
        total = 0
        for w, mult in self.items():
            d = 1
            for m in w:
                d *= m + 1
            total += mult * d
        return total

    def to_json(self) -> list[dict]:
        return [{"weights": list(w), "multiplicity": mult}
                for w, mult in sorted(self.items(), reverse=True) if mult]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _character(m: Sl2kModule) -> Counter:
    w = m.weights()
    if w is not None:
        return Counter(w)
    # general path: simultaneous eigenspaces of the H_j over integer candidates
    bound = m.dim - 1
    spaces = [(tuple(), exact.Subspace.full(m.dim))]
    for _, _, h in m.actions:
        nxt = []
        found = 0
        for lam in range(-bound, bound + 1):
            eig = exact.kernel(h - lam * exact.identity(m.dim))
            if eig.dim == 0:
                continue
            found += eig.dim
            for w0, s in spaces:
                inter = s & eig
                if inter.dim:
                    nxt.append((w0 + (lam,), inter))
        if found != m.dim:
            raise MalformedModuleError("H is not diagonalisable with integer eigenvalues")
        spaces = nxt
    return Counter({w0: s.dim for w0, s in spaces})


def decompose(m: Sl2kModule) -> IsotypicList:
    """Peel highest weights off the joint weight multiset."""
    char = _character(m)
    out = IsotypicList()
    while +char:
        top = max((w for w, c in char.items() if c > 0), key=lambda w: (sum(w), w))
        if any(x < 0 for x in top):
            raise MalformedModuleError(f"weight multiset is not Weyl-symmetric near {top}")
        mult = char[top]
        out[top] += mult
        for w in itertools.product(*(range(x, -x - 1, -2) for x in top)):
            char[w] -= mult
            if char[w] < 0:
                raise MalformedModuleError(f"weight {w} has negative multiplicity after peeling")
    if out.dimension() != m.dim:
        raise MalformedModuleError("decomposition does not account for the module dimension")
    return out


# --------------------------------------------------------------------------
# equivariant maps and Clebsch-Gordan projections


def equivariant_maps(a: Sl2kModule, b: Sl2kModule) -> list[Mat]:
    """Basis of Hom_{sl(2)^k}(a, b), each map a (dim b) x (dim a) matrix."""
    if a.k != b.k:
        raise ValueError("modules over different factor counts")
    if a.k == 0:
        space = exact.Subspace.full(a.dim * b.dim)
    else:
        space = exact.commutation_kernel(a.generators(), b.generators())
    return [v.reshape(b.dim, a.dim).copy() for v in space.basis]


@dataclass(frozen=True)
class BilinearTensor:
    """entries[t, i, j]: coefficient of target vector t in the image of (i, j)."""

    entries: Mat
    symmetric: bool = field(init=False)

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=object)
        object.__setattr__(self, "entries", e)
        swapped = e.transpose(0, 2, 1)
        if not np.any(e - swapped):
            sym = True
        elif not np.any(e + swapped):
            sym = False
        else:
            raise ValueError("bilinear tensor has no definite symmetry type")
        object.__setattr__(self, "symmetric", sym)

    @property
    def antisymmetric(self) -> bool:
        return not self.symmetric or not np.any(self.entries)

    @property
    def target_dim(self) -> int:
        return self.entries.shape[0]

    @property
    def source_dim(self) -> int:
        return self.entries.shape[1]

    def equivariance_defect(self, source: Sl2kModule, target: Sl2kModule) -> int:
        """Number of nonzero entries of X.T(u, v) - T(Xu, v) - T(u, Xv) over all generators."""
        bad = 0
        for xs, xt in zip(source.generators(), target.generators()):
            lhs = exact.tensordot(xt, self.entries, axes=([1], [0]))
            r1 = exact.tensordot(self.entries, xs, axes=([1], [0])).transpose(0, 2, 1)
            r2 = exact.tensordot(self.entries, xs, axes=([2], [0]))
            bad += int(np.count_nonzero(lhs - r1 - r2))
        return bad


def clebsch_projection(n: int, target: int) -> BilinearTensor:
    """The invariant projection U_n (x) U_n -> U_target, target in {0, 2}.

    Normalised so that the coefficient of the target highest-weight vector in
    the image of (v_0, v_{n - target/2}) is +1.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if target not in (0, 2):
        raise ValueError("target must be 0 or 2")
    un = irrep(n)
    maps = equivariant_maps(internal_tensor(un, un), irrep(target))
    if len(maps) != 1:
        raise AssertionError(f"Hom(U_{n} x U_{n}, U_{target}) has dimension {len(maps)}")
    t = maps[0].reshape(target + 1, n + 1, n + 1)
    pivot = t[0, 0, n - target // 2]
    if pivot == 0:
        raise AssertionError("highest-weight normalisation entry vanishes")
    return BilinearTensor(t / pivot)


# U_2 -> sl(2) intertwiner in the (E, F, H) basis: w0 -> E, w1 -> -H, w2 -> -2F.
U2_TO_SL2 = exact.as_mat([
    [1, 0, 0],
    [0, 0, -2],
    [0, -1, 0],
])
