"""Exact dense linear algebra over a :class:`~envelkit.scalars.Field`.

Vectors are tuples of scalars and matrices are tuples of row tuples. Matrices
that represent linear maps act on column vectors, so column ``j`` holds the
image of the ``j``-th basis vector.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .scalars import Field, Scalar

Vector = tuple
Matrix = tuple


def rref(rows: Iterable[Sequence[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and the pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def kernel(mat: Sequence[Sequence[Scalar]], ncols: int, field: Field) -> list[Vector]:
    """Basis of {v : mat v = 0}, one vector per free column."""
    red, piv = rref(mat, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def identity(n: int, field: Field) -> Matrix:
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def zero_matrix(n: int, m: int, field: Field) -> Matrix:
    return tuple(tuple(field.zero for _ in range(m)) for _ in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), 0 * row[0]) for col in bt) for row in a)


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), 0 * v[0]) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c: Scalar, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def flatten(a: Matrix) -> Vector:
    return tuple(x for r in a for x in r)


def unflatten(v: Sequence[Scalar], n: int) -> Matrix:
    return tuple(tuple(v[i * n:(i + 1) * n]) for i in range(len(v) // n))


def from_columns(cols: Sequence[Vector]) -> Matrix:
    return tuple(zip(*cols))


def inverse(a: Matrix, field: Field) -> Matrix:
    n = len(a)
    aug = [list(r) + list(e) for r, e in zip(a, identity(n, field))]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in red)


def is_zero(v: Iterable[Scalar]) -> bool:
    return not any(v)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_scale(c: Scalar, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def lin_comb(coeffs: Sequence[Scalar], vecs: Sequence[Vector], field: Field, n: int) -> Vector:
    out = [field.zero] * n
    for c, v in zip(coeffs, vecs):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] += c * x
    return tuple(out)


class Subspace:
    """A linear subspace of F^n held in reduced row echelon form.

    The representation is canonical, so equality of subspaces is equality of
    the stored rows.
    """

    __slots__ = ("field", "ambient_dim", "rows", "pivots")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence[Scalar]] = ()):
        vecs = [tuple(field(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in F^{ambient_dim}")
        red, piv = rref(vecs, ambient_dim)
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, identity(n, field))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple[Vector, ...]:
        return self.rows

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, rows={self.rows!r})"

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        """Remainder of ``v`` after clearing the pivot columns; zero iff v is in the span."""
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(v)

    def __contains__(self, v) -> bool:
        return is_zero(self.reduce(v))

    def coordinates(self, v: Sequence[Scalar]) -> Vector:
        """Coordinates of ``v`` in the canonical basis; raises if v is outside."""
        if v not in self:
            raise ValueError("vector not in subspace")
        return tuple(v[pc] for pc in self.pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient_dim, self.rows + other.rows)

    def __le__(self, other: "Subspace") -> bool:
        return all(r in other for r in self.rows)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.rows or not other.rows:
            return Subspace.zero(self.field, self.ambient_dim)
        # a.U = b.V  <=>  (a, b) in ker [U^T | -V^T]
        k, n = self.dim, self.ambient_dim
        cols = list(self.rows) + [tuple(-x for x in r) for r in other.rows]
        mat = from_columns(cols)
        ker = kernel(mat, len(cols), self.field)
        vecs = [lin_comb(a[:k], self.rows, self.field, n) for a in ker]
        return Subspace(self.field, n, vecs)

    def complement_indices(self) -> tuple[int, ...]:
        """Standard basis positions that together with this subspace span F^n."""
        return tuple(i for i in range(self.ambient_dim) if i not in self.pivots)

    def is_zero(self) -> bool:
        return not self.rows
