"""Exact rational linear algebra.

Matrices are numpy object arrays whose entries are :class:`fractions.Fraction`.
Elimination runs on integer rows (each row scaled by the lcm of its
denominators) with fraction-free updates and content normalisation, so no
rational arithmetic happens in the inner loop.  Rows are stored sparsely
because nearly every system built downstream (intertwiner equations,
Bianchi maps, isotropy conditions) has a handful of nonzeros per row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Subspace",
    "Solution",
    "as_mat",
    "as_vec",
    "zeros",
    "identity",
    "matmul",
    "rref",
    "rank",
    "kernel",
    "solve",
    "inverse",
    "kron",
    "det",
    "scalar_to_json",
    "scalar_from_json",
    "mat_to_json",
    "mat_from_json",
    "integer_scaled",
    "kernel_of_rows",
    "commutation_kernel",
    "intersect",
    "subspace_sum",
]

Mat = np.ndarray


# --------------------------------------------------------------------------
# construction and conversion


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (float, np.floating)):
        raise TypeError("floating-point input is not allowed in exact arithmetic")
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(int(x)) if isinstance(x, (int, np.integer)) else Fraction(x)


_to_frac = np.frompyfunc(_frac, 1, 1)


def as_mat(data, shape: tuple[int, ...] | None = None) -> Mat:
    """Coerce nested sequences / arrays of ints, strings or Fractions."""
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    if arr.size == 0:
        return arr.astype(object)
    return _to_frac(arr).astype(object)


def as_vec(data) -> Mat:
    v = as_mat(data)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    return v


def zeros(*shape: int) -> Mat:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> Mat:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def integer_scaled(a: Mat) -> tuple[np.ndarray, int]:
    """Return ``(ints, den)`` with ``a == ints / den`` and ``ints`` Python ints."""
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return np.zeros(a.shape, dtype=object), 1
    den = math.lcm(*(x.denominator for x in a.flat))
    ints = np.frompyfunc(lambda x: x.numerator * (den // x.denominator), 1, 1)(a)
    return ints.astype(object), den


def _unscale(ints: np.ndarray, den: int) -> Mat:
    if den == 1:
        return np.frompyfunc(Fraction, 1, 1)(ints).astype(object)
    return np.frompyfunc(lambda x: Fraction(x, den), 1, 1)(ints).astype(object)


def matmul(a: Mat, b: Mat) -> Mat:
    """Exact product, routed through integer arithmetic."""
    ia, da = integer_scaled(a)
    ib, db = integer_scaled(b)
    return _unscale(np.dot(ia, ib), da * db)


def tensordot(a: Mat, b: Mat, axes) -> Mat:
    ia, da = integer_scaled(a)
    ib, db = integer_scaled(b)
    return _unscale(np.tensordot(ia, ib, axes=axes), da * db)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; row index of the result is ``i_a * rows_b + i_b``."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    out = np.multiply.outer(a, b)  # (ra, ca, rb, cb)
    ra, ca = a.shape
    rb, cb = b.shape
    return out.transpose(0, 2, 1, 3).reshape(ra * rb, ca * cb)


# --------------------------------------------------------------------------
# sparse fraction-free elimination


def _content(row: dict[int, int]) -> dict[int, int]:
    g = math.gcd(*row.values())
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _eliminate(row: dict[int, int], col: int, piv: dict[int, int]) -> dict[int, int]:
    a = piv[col]
    b = row[col]
    g = math.gcd(a, b)
    a //= g
    b //= g
    if a != 1:
        out = {k: a * v for k, v in row.items()}
    else:
        out = dict(row)
    for k, v in piv.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _reduce(row: dict[int, int], pivots: dict[int, dict[int, int]],
            skip: int | None = None) -> dict[int, int]:
    while row:
        hits = [c for c in row if c in pivots and c != skip]
        if not hits:
            break
        c = min(hits)
        row = _eliminate(row, c, pivots[c])
        if row:
            row = _content(row)
    return row


def _echelon(rows: Iterable[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Incremental echelon form; returns {pivot column: primitive int row}."""
    pivots: dict[int, dict[int, int]] = {}
    seen: set = set()
    for row in rows:
        if not row:
            continue
        row = _content(row)
        key = tuple(sorted(row.items()))
        if key in seen:
            continue
        seen.add(key)
        row = _reduce(row, pivots)
        if row:
            pivots[min(row)] = row
    # back substitution: make every pivot column clean in all other rows
    for c in sorted(pivots, reverse=True):
        row = _reduce(pivots[c], pivots, skip=c)
        pivots[c] = row
    return pivots


def _int_rows(m: Mat) -> list[dict[int, int]]:
    rows = []
    for r in np.asarray(m, dtype=object):
        nz = {j: x for j, x in enumerate(r) if x}
        if not nz:
            rows.append({})
            continue
        den = math.lcm(*(x.denominator for x in nz.values()))
        rows.append({j: x.numerator * (den // x.denominator) for j, x in nz.items()})
    return rows


def _rref_from_pivots(pivots: dict[int, dict[int, int]], ncols: int) -> tuple[Mat, list[int]]:
    cols = sorted(pivots)
    out = zeros(len(cols), ncols)
    for i, c in enumerate(cols):
        row = pivots[c]
        lead = row[c]
        for j, v in row.items():
            out[i, j] = Fraction(v, lead)
    return out, cols


def rref(m: Mat, keep_zero_rows: bool = True) -> tuple[Mat, list[int]]:
    """Reduced row echelon form of ``m`` and its pivot columns.

    The result has the shape of ``m`` (zero rows at the bottom) unless
    ``keep_zero_rows`` is false.
    """
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    r, piv = _rref_from_pivots(_echelon(_int_rows(m)), m.shape[1])
    if keep_zero_rows and r.shape[0] < m.shape[0]:
        r = np.concatenate([r, zeros(m.shape[0] - r.shape[0], m.shape[1])], axis=0)
    return r, piv


def rank(m: Mat) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(_echelon(_int_rows(m)))


def _kernel_from_pivots(pivots: dict[int, dict[int, int]], ncols: int) -> "Subspace":
    free = [j for j in range(ncols) if j not in pivots]
    basis = zeros(len(free), ncols)
    # rows of the kernel basis: e_f - sum_i R[i, f] e_{pivot_i}
    for t, f in enumerate(free):
        basis[t, f] = Fraction(1)
    index = {f: t for t, f in enumerate(free)}
    for c, row in pivots.items():
        lead = row[c]
        for j, v in row.items():
            if j != c:
                basis[index[j], c] = Fraction(-v, lead)
    return Subspace(ncols, basis)


def kernel_of_rows(rows: Iterable[dict[int, int]], ncols: int) -> "Subspace":
    """Kernel of a matrix given as sparse integer rows ``{col: value}``."""
    return _kernel_from_pivots(_echelon(rows), ncols)


def kernel(m: Mat) -> "Subspace":
    """``{v : m v = 0}`` as a canonical subspace."""
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ValueError("kernel expects a 2-d matrix")
    return kernel_of_rows(_int_rows(m), m.shape[1])


@dataclass(frozen=True)
class Solution:
    particular: Mat | None
    kernel: "Subspace"
    certificate: Mat | None = None

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def solve(a: Mat, b) -> Solution:
    """Solve ``a x = b``.

    On failure returns a certificate ``y`` with ``y a = 0`` and ``y b != 0``.
    """
    a = np.asarray(a, dtype=object)
    b = as_vec(b)
    if a.ndim != 2 or a.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, piv = rref(aug, keep_zero_rows=False)
    ker = kernel(a)
    if piv and piv[-1] == n:
        left = kernel(a.T)
        for y in left.basis:
            if np.dot(y, b) != 0:
                return Solution(None, ker, y)
        raise AssertionError("inconsistent system without certificate")
    x = zeros(n)
    for i, c in enumerate(piv):
        x[c] = r[i, n]
    return Solution(x, ker)


def inverse(m: Mat) -> Mat:
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, piv = rref(np.concatenate([m, identity(n)], axis=1), keep_zero_rows=False)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]


def det(m: Mat) -> Fraction:
    """Determinant as the signed product of elimination pivots."""
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("det of a non-square matrix")
    a = [list(row) for row in m]
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        out *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def commutation_kernel(left: Sequence[Mat], right: Sequence[Mat],
                       sign: int = -1, symmetric: bool = False) -> "Subspace":
    """Solve ``T A_i + sign * B_i T = 0`` for all i, with ``T`` of shape (m, n).

    ``left`` holds the n x n matrices A_i and ``right`` the m x m matrices
    B_i.  With ``sign=-1`` this is the intertwiner equation
    ``T A = B T``.  With ``symmetric=True`` the unknown is a symmetric T
    (requires m == n) parametrised by its upper triangle.  The result lives
    in the flattened coordinates ``p * n + q`` (or the upper-triangle
    enumeration when symmetric).

    Generators whose matrices are both diagonal are processed first: their
    equations are single-entry rows, which keeps fill-in low afterwards.
    """
    if len(left) != len(right):
        raise ValueError("generator lists differ in length")
    if not left:
        raise ValueError("need at least one generator")
    n = left[0].shape[0]
    m = right[0].shape[0]
    if symmetric:
        if m != n:
            raise ValueError("symmetric unknown requires a square T")
        upper = [(p, q) for p in range(n) for q in range(p, n)]
        var = {}
        for idx, (p, q) in enumerate(upper):
            var[p, q] = idx
            var[q, p] = idx
        nvar = len(upper)
    else:
        var = {(p, q): p * n + q for p in range(m) for q in range(n)}
        nvar = m * n

    def is_diag(x: Mat) -> bool:
        return not np.any(x - np.diag(np.diag(x)))

    order = sorted(range(len(left)), key=lambda i: not (is_diag(left[i]) and is_diag(right[i])))

    def rows():
        for i in order:
            ia, da = integer_scaled(left[i])
            ib, db = integer_scaled(right[i])
            sa, sb = db, da  # common denominator da * db
            nz_a = [[(r, int(ia[r, q]) * sa) for r in range(n) if ia[r, q]] for q in range(n)]
            nz_b = [[(r, int(ib[p, r]) * sb) for r in range(m) if ib[p, r]] for p in range(m)]
            for p in range(m):
                for q in range(n):
                    if symmetric and q < p:
                        continue
                    row: dict[int, int] = {}
                    # (T A)[p, q] = sum_r T[p, r] A[r, q]
                    for r, v in nz_a[q]:
                        k = var[p, r]
                        row[k] = row.get(k, 0) + v
                    # (B T)[p, q] = sum_r B[p, r] T[r, q]
                    for r, v in nz_b[p]:
                        k = var[r, q]
                        row[k] = row.get(k, 0) + sign * v
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        yield row

    return kernel_of_rows(rows(), nvar)


# --------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of Q^n stored through its unique RREF basis.

    Two instances compare equal iff their canonical bases coincide.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_key")

    def __init__(self, ambient_dim: int, vectors=None):
        self.ambient_dim = int(ambient_dim)
        if vectors is None or len(vectors) == 0:
            basis, piv = zeros(0, self.ambient_dim), []
        else:
            vecs = np.asarray(vectors, dtype=object)
            if vecs.ndim == 1:
                vecs = vecs.reshape(1, -1)
            if vecs.shape[1] != self.ambient_dim:
                raise ValueError(f"vectors have length {vecs.shape[1]}, ambient is {self.ambient_dim}")
            if vecs.size and not isinstance(vecs.flat[0], Fraction):
                vecs = as_mat(vecs)
            basis, piv = rref(vecs, keep_zero_rows=False)
        basis.setflags(write=False)
        self.basis = basis
        self.pivots = tuple(piv)
        self._key = None

    @classmethod
    def span(cls, vectors, ambient_dim: int | None = None) -> "Subspace":
        vecs = list(vectors)
        if ambient_dim is None:
            if not vecs:
                raise ValueError("ambient dimension required for an empty span")
            ambient_dim = len(vecs[0])
        return cls(ambient_dim, vecs)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return self.dim

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.ambient_dim, tuple(tuple(r) for r in self.basis))
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def annihilator(self) -> "Subspace":
        """Linear functionals vanishing on the subspace."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return kernel(self.basis)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=object)
        if v.shape != (self.ambient_dim,):
            raise ValueError("vector length differs from ambient dimension")
        if self.dim == 0:
            return not np.any(v)
        coords = v[list(self.pivots)]
        return bool(np.all(np.dot(coords, self.basis) == v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v) -> Mat:
        """Coefficients of ``v`` in the canonical basis (raises if v is outside)."""
        v = np.asarray(v, dtype=object)
        coords = v[list(self.pivots)] if self.dim else zeros(0)
        if self.dim and not np.all(np.dot(coords, self.basis) == v):
            raise ValueError("vector does not lie in the subspace")
        if not self.dim and np.any(v):
            raise ValueError("vector does not lie in the zero subspace")
        return np.array(coords, dtype=object)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        cons = np.concatenate([self.annihilator().basis, other.annihilator().basis], axis=0)
        if cons.shape[0] == 0:
            return Subspace.full(self.ambient_dim)
        return kernel(cons)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, np.concatenate([self.basis, other.basis], axis=0))

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.sum(other)

    def to_json(self) -> dict:
        return mat_to_json(self.basis if self.dim else zeros(0, self.ambient_dim))


def intersect(*spaces: Subspace) -> Subspace:
    return reduce(Subspace.intersect, spaces)


def subspace_sum(*spaces: Subspace) -> Subspace:
    return reduce(Subspace.sum, spaces)


# --------------------------------------------------------------------------
# serialisation


def scalar_to_json(x: Fraction) -> str:
    x = _frac(x)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_json(s: str) -> Fraction:
    return Fraction(s)


def mat_to_json(m: Mat) -> dict:
    m = np.asarray(m, dtype=object)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [scalar_to_json(x) for x in m.flat],
    }


def mat_from_json(d: dict) -> Mat:
    rows, cols = d["rows"], d["cols"]
    if len(d["entries"]) != rows * cols:
        raise ValueError("entry count does not match rows x cols")
    return as_mat([Fraction(s) for s in d["entries"]], shape=(rows, cols))


def normalize_first_nonzero(m: Mat) -> Mat:
    """Scale so the first nonzero entry (row-major) is +1."""
    m = np.asarray(m, dtype=object)
    for x in m.flat:
        if x:
            return m / x
    raise ValueError("cannot normalise the zero matrix")
