"""Symmetric decompositions h + p with h = sl(2)^k and p = U_{n_1} (x) ... (x) U_{n_k}.

The bracket on h + p is the direct-sum bracket on h, the module action on
[h, p], and on [p, p] a combination

    eta = sum_j c_j  eps_{n_1} (x) ... (x) pi_{n_j} (x) ... (x) eps_{n_k}

of Clebsch-Gordan projections, the j-th term landing in the j-th sl(2)
through the fixed isomorphism U_2 = sl(2).  The Jacobi identity reduces to
the first Bianchi identity of R = alpha o eta, which is linear in c.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import exact, lie, sl2
from .exact import Mat, Subspace

__all__ = [
    "MultiIndex",
    "SymmetricDecomposition",
    "CurvatureForm",
    "ClassificationEntry",
    "MODEL_INDICES",
    "p_module",
    "eta_terms",
    "eta_tensor",
    "build",
    "decomposition",
    "curvature_form",
    "bianchi_solution_space",
    "classify",
    "candidates",
    "identify",
    "standard_model",
    "model_certificate",
    "classification_certificate",
    "MODEL_SHAPES",
]


@dataclass(frozen=True, order=True)
class MultiIndex:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(n) for n in self.parts), reverse=True))
        if not parts:
            raise ValueError("a multi-index needs at least one part")
        if any(n < 1 for n in parts):
            raise ValueError("parts must be positive")
        if sum(parts) % 2:
            raise ValueError(f"n_1 + ... + n_k must be even, got {'.'.join(map(str, parts))}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "MultiIndex":
        text = text.strip().strip("()")
        return cls(tuple(int(x) for x in text.split(".")))

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def p_dim(self) -> int:
        return math.prod(n + 1 for n in self.parts)

    @property
    def h_dim(self) -> int:
        return 3 * self.k

    def __str__(self) -> str:
        return ".".join(map(str, self.parts))


MODEL_INDICES = {
    "so(4)": MultiIndex((2,)),
    "so(5)": MultiIndex((1, 1)),
    "sl(3)": MultiIndex((4,)),
    "g2": MultiIndex((3, 1)),
    "so(6)": MultiIndex((2, 2)),
    "so(7)": MultiIndex((2, 1, 1)),
    "so(8)": MultiIndex((1, 1, 1, 1)),
}


def _mi(mi) -> MultiIndex:
    if isinstance(mi, MultiIndex):
        return mi
    if isinstance(mi, str):
        return MultiIndex.parse(mi)
    return MultiIndex(tuple(mi))


@lru_cache(maxsize=None)
def p_module(mi: MultiIndex) -> sl2.Sl2kModule:
    return sl2.tensor_irreps(_mi(mi).parts)


@lru_cache(maxsize=None)
def _projections(n: int) -> tuple[Mat, Mat]:
    return sl2.clebsch_projection(n, 0).entries, sl2.clebsch_projection(n, 2).entries


@lru_cache(maxsize=None)
def eta_terms(mi: MultiIndex) -> tuple[Mat, ...]:
    """Term j as an array (3k, d, d): h-coordinates of term_j(x, y)."""
    mi = _mi(mi)
    k, d = mi.k, mi.p_dim
    out = []
    for j in range(k):
        term = exact.zeros(3 * k, d, d)
        # component t of the U_2 value, as a d x d matrix over (x, y)
        comps = []
        for t in range(3):
            m = None
            for i, n in enumerate(mi.parts):
                eps, pi = _projections(n)
                blk = pi[t] if i == j else eps[0]
                m = blk if m is None else exact.kron(m, blk)
            comps.append(m)
        for a in range(3):
            val = sum((sl2.U2_TO_SL2[a, t] * comps[t] for t in range(3)), exact.zeros(d, d))
            term[3 * j + a] = val
        out.append(term)
    return tuple(out)


def eta_tensor(mi, c: Sequence) -> sl2.BilinearTensor:
    mi = _mi(mi)
    c = exact.as_vec(c)
    if len(c) != mi.k:
        raise ValueError(f"need {mi.k} coefficients")
    terms = eta_terms(mi)
    total = exact.zeros(*terms[0].shape)
    for cj, t in zip(c, terms):
        if cj:
            total = total + cj * t
    return sl2.BilinearTensor(total)


def _h_structure(k: int) -> Mat:
    return lie.direct_sum(*[lie.sl2_algebra()] * k).structure if k else exact.zeros(0, 0, 0)


def build(mi, c: Sequence) -> lie.LieAlgebra:
    """Bracket on h + p assembled from the module action and eta (Jacobi not checked)."""
    mi = _mi(mi)
    k, d = mi.k, mi.p_dim
    hd = 3 * k
    n = hd + d
    mod = p_module(mi)
    eta = eta_tensor(mi, c).entries
    cs = exact.zeros(n, n, n)
    cs[:hd, :hd, :hd] = _h_structure(k)
    gens = mod.generators()
    for a in range(hd):
        # [h_a, p_x] = sum_y A_a[y, x] p_y
        cs[a, hd:, hd:] = gens[a].T
        cs[hd:, a, hd:] = -gens[a].T
    # [p_x, p_y] = sum_a eta[a, x, y] h_a
    cs[hd:, hd:, :hd] = eta.transpose(1, 2, 0)
    labels = [f"{g}{j + 1}" for j in range(k) for g in ("E", "F", "H")]
    labels += [f"p{x}" for x in range(d)]
    return lie.LieAlgebra(cs, labels)


@dataclass(frozen=True)
class SymmetricDecomposition:
    mi: MultiIndex
    coefficients: Mat
    p_module: sl2.Sl2kModule
    eta: sl2.BilinearTensor
    algebra: lie.LieAlgebra

    @property
    def h_dim(self) -> int:
        return self.mi.h_dim

    @property
    def p_dim(self) -> int:
        return self.mi.p_dim

    def h_subspace(self) -> Subspace:
        n = self.algebra.dim
        return Subspace(n, exact.identity(n)[: self.h_dim])

    def p_subspace(self) -> Subspace:
        n = self.algebra.dim
        return Subspace(n, exact.identity(n)[self.h_dim:])


def decomposition(mi, c: Sequence) -> SymmetricDecomposition:
    mi = _mi(mi)
    return SymmetricDecomposition(mi, exact.as_vec(c), p_module(mi), eta_tensor(mi, c), build(mi, c))


@dataclass(frozen=True)
class CurvatureForm:
    """R[w, x, y, z]: w-component of R(x, y) z = alpha(eta(x, y)) z."""

    tensor: Mat

    def bianchi_sum(self) -> Mat:
        r = self.tensor
        return r + r.transpose(0, 3, 1, 2) + r.transpose(0, 2, 3, 1)

    def is_antisymmetric(self) -> bool:
        return not np.any(self.tensor + self.tensor.transpose(0, 2, 1, 3))


def _curvature(gens: Sequence[Mat], eta: Mat) -> Mat:
    # tensordot over the h index: (w, z, x, y) -> (w, x, y, z)
    a = np.stack(gens)
    return exact.tensordot(a, eta, axes=([0], [0])).transpose(0, 2, 3, 1)


def curvature_form(sd: SymmetricDecomposition) -> CurvatureForm:
    return CurvatureForm(_curvature(sd.p_module.generators(), sd.eta.entries))


def _cyclic_columns(mi: MultiIndex) -> list[np.ndarray]:
    """Per term: integer cyclic sums over (w, x < y < z), with a shared scale."""
    mod = p_module(mi)
    d = mi.p_dim
    gens = np.stack(mod.generators())
    terms = eta_terms(mi)
    gi, _ = exact.integer_scaled(gens)
    ti, _ = exact.integer_scaled(np.stack(terms))
    trip = np.array(list(itertools.combinations(range(d), 3)), dtype=int).reshape(-1, 3)
    cols = []
    for j in range(mi.k):
        r = np.tensordot(gi, ti[j], axes=([0], [0])).transpose(0, 2, 3, 1)
        b = r + r.transpose(0, 3, 1, 2) + r.transpose(0, 2, 3, 1)
        cols.append(b[:, trip[:, 0], trip[:, 1], trip[:, 2]].reshape(-1))
    return cols


def bianchi_solution_space(mi) -> Subspace:
    """Coefficient vectors c for which R = alpha o eta satisfies the first Bianchi identity."""
    mi = _mi(mi)
    cols = _cyclic_columns(mi)
    if not cols or cols[0].size == 0:
        return Subspace.full(mi.k)
    mat = np.stack(cols, axis=1)
    nz = np.any(mat != 0, axis=1)
    rows = ({j: int(v) for j, v in enumerate(row) if v} for row in mat[nz])
    return exact.kernel_of_rows(rows, mi.k)


@dataclass(frozen=True)
class ClassificationEntry:
    multi_index: MultiIndex
    p_dim: int
    solution_dim: int

    def to_json(self) -> dict:
        return {"multi_index": list(self.multi_index.parts), "p_dim": self.p_dim,
                "solution_dim": self.solution_dim}


def candidates(max_p_dim: int, max_k: int, max_n: int) -> list[MultiIndex]:
    """Non-increasing multi-indices with even sum inside the bounds, in search order."""
    out = []
    for k in range(1, max_k + 1):
        for parts in itertools.combinations_with_replacement(range(max_n, 0, -1), k):
            if sum(parts) % 2:
                continue
            if math.prod(n + 1 for n in parts) > max_p_dim:
                continue
            out.append(MultiIndex(parts))
    return sorted(set(out), key=lambda m: (m.p_dim, m.parts))


def _solution_dim(mi: MultiIndex) -> int:
    return bianchi_solution_space(mi).dim


def classify(max_p_dim: int = 16, max_k: int = 4, max_n: int = 4,
             jobs: int = 1) -> list[ClassificationEntry]:
    """Multi-indices within the bounds whose Bianchi solution space is nonzero."""
    if min(max_p_dim, max_k, max_n) < 1:
        raise ValueError("bounds must be positive")
    cands = candidates(max_p_dim, max_k, max_n)
    if jobs > 1 and len(cands) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            dims = list(pool.map(_solution_dim, cands))
    else:
        dims = [_solution_dim(m) for m in cands]
    return [ClassificationEntry(m, m.p_dim, d) for m, d in zip(cands, dims) if d > 0]


def identify(l: lie.LieAlgebra) -> str:
    """Cartan label via the (dim, rank, simple) lookup; 'unknown' otherwise."""
    if lie.jacobi_defect(l):
        raise ValueError("identify needs a Lie algebra (Jacobi fails)")
    if not lie.is_semisimple(l) or l.dim == 0:
        return "unknown"
    return lie.cartan_label(l.dim, lie.rank(l), lie.is_simple(l))


def standard_model(name: str) -> SymmetricDecomposition:
    """The table model, with the first canonical basis vector of the Bianchi space as c."""
    try:
        mi = MODEL_INDICES[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; expected one of {sorted(MODEL_INDICES)}") from None
    sol = bianchi_solution_space(mi)
    if sol.dim == 0:
        raise lie.InternalConsistencyError(f"no Bianchi-compatible bracket for {mi}")
    return decomposition(mi, sol.basis[0])


MODEL_SHAPES = {
    "so(4)": (6, 2, False),
    "so(5)": (10, 2, True),
    "sl(3)": (8, 2, True),
    "g2": (14, 2, True),
    "so(6)": (15, 3, True),
    "so(7)": (21, 3, True),
    "so(8)": (28, 4, True),
}


def model_certificate(name: str):
    """Jacobi, center, Killing form, simplicity, (dim, rank) and label of a table model."""
    from .report import Certificate

    cert = Certificate(f"model {name}")
    mi = MODEL_INDICES[name]
    sol = bianchi_solution_space(mi)
    cert.expect(f"{name}: Bianchi solution dimension", 1, sol.dim)
    sd = standard_model(name)
    l = sd.algebra
    cert.data[f"{name}: coefficients"] = list(sd.coefficients)
    terms_ok = all(not np.any(t + t.transpose(0, 2, 1)) for t in eta_terms(mi))
    cert.require(f"{name}: every eta term antisymmetric", terms_ok)
    cert.expect(f"{name}: Jacobi defect", [], lie.jacobi_defect(l))
    cert.expect(f"{name}: center dimension", 0, lie.center(l).dim)
    cert.require(f"{name}: Killing form nondegenerate", lie.is_semisimple(l))
    dim, rk, simple = MODEL_SHAPES[name]
    cert.expect(f"{name}: simple", simple, lie.is_simple(l))
    cert.expect(f"{name}: (dim, rank)", [dim, rk], [l.dim, lie.rank(l)])
    cert.expect(f"{name}: label", name, identify(l))
    return cert


def classification_certificate(max_p_dim: int = 32, max_k: int = 4, max_n: int = 8, jobs: int = 1):
    from .report import Certificate

    cert = Certificate("classification")
    found = classify(max_p_dim, max_k, max_n, jobs)
    expected = sorted((m for m in MODEL_INDICES.values() if m.p_dim <= max_p_dim
                       and m.k <= max_k and max(m.parts) <= max_n), key=lambda m: (m.p_dim, m.parts))
    cert.expect("multi-indices with nonzero Bianchi space",
                [str(m) for m in expected], [str(e.multi_index) for e in found],
                {"candidates": len(candidates(max_p_dim, max_k, max_n))})
    cert.expect("solution dimensions", [1] * len(found), [e.solution_dim for e in found])
    return cert
