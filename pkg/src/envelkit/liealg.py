"""Lie algebras given by structure constants, and the usual subspace toolkit.

Basis indices are 0-based in the API; 1-based numbering appears only in the
structure-constant text format and in human-facing messages.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (
    DimensionMismatch,
    JacobiError,
    NotAnIdeal,
    NotDerivation,
    NotInvariant,
    NotRepresentation,
    ParseError,
)
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    from_columns,
    inverse,
    is_zero,
    kernel,
    mat_mul,
    mat_sub,
    mat_vec,
)
from .scalars import Field, Scalar, render


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[int, int, int]  # 1-based
    residual: Vector

    def __str__(self):
        i, j, k = self.triple
        res = ", ".join(render(x) for x in self.residual)
        return f"Jacobi identity fails at (x{i}, x{j}, x{k}): residual ({res})"


class LieAlgebra:
    """A finite-dimensional Lie algebra with basis x_1..x_d.

    ``sc`` maps 0-based pairs ``(i, j)`` with ``i < j`` to sparse dicts
    ``{k: c}`` meaning ``[x_i, x_j] = sum c x_k``.
    """

    def __init__(
        self,
        dim: int,
        field: Field,
        sc: Mapping[tuple[int, int], Mapping[int, Scalar]] | None = None,
        labels: Sequence[str] | None = None,
        provenance=None,
    ):
        self.dim = dim
        self.field = field
        self.labels = tuple(labels) if labels else tuple(f"x{i + 1}" for i in range(dim))
        if len(self.labels) != dim or len(set(self.labels)) != dim:
            raise ValueError("need one distinct label per basis vector")
        self.provenance = provenance
        clean: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (i, j), vec in (sc or {}).items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bad structure-constant pair {(i, j)}")
            entries = {k: field(c) for k, c in vec.items() if field(c)}
            if any(not 0 <= k < dim for k in entries):
                raise ValueError(f"bad basis index in bracket {(i, j)}")
            if entries:
                clean[(i, j)] = entries
        self.sc = clean
        zero = field.zero
        table = [[None] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(dim):
                if i == j:
                    v = (zero,) * dim
                elif i < j:
                    d = clean.get((i, j), {})
                    v = tuple(d.get(k, zero) for k in range(dim))
                else:
                    d = clean.get((j, i), {})
                    v = tuple(-d.get(k, zero) for k in range(dim))
                table[i][j] = v
        self._table = tuple(tuple(r) for r in table)

    @classmethod
    def from_table(cls, dim: int, field: Field, brackets: Mapping[tuple[int, int], Mapping[int, Scalar]],
                   **kw) -> "LieAlgebra":
        """Build from 1-based brackets ``{(i, j): {k: c}}`` in either order of i, j."""
        sc: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (i, j), vec in brackets.items():
            i, j = i - 1, j - 1
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if i == j:
                raise ValueError("[x, x] is always zero")
            slot = sc.setdefault((i, j), {})
            for k, c in vec.items():
                slot[k - 1] = slot.get(k - 1, field.zero) + sign * field(c)
        return cls(dim, field, sc, **kw)

    def __getstate__(self):
        # drop memo tables attached by other modules
        return {k: v for k, v in self.__dict__.items() if not k.startswith("_cache_")}

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.dim, self.field, self.sc) == (other.dim, other.field, other.sc)

    def __hash__(self):
        return hash((self.dim, self.field, tuple(sorted((k, tuple(sorted(v.items(), key=lambda t: t[0])))
                                                        for k, v in self.sc.items()))))

    def __repr__(self):
        name = f" {self.provenance}" if self.provenance is not None else ""
        return f"<LieAlgebra{name} dim={self.dim} over {self.field}>"

    # -- elementary operations ------------------------------------------------

    def vector(self, values: Sequence) -> Vector:
        if len(values) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(values)}")
        return tuple(self.field(x) for x in values)

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    def basis_bracket(self, i: int, j: int) -> Vector:
        return self._table[i][j]

    def bracket(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch(f"bracket expects vectors of length {self.dim}")
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            row = self._table[i]
            for j, b in enumerate(v):
                if not b or i == j:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def ad(self, u: Sequence[Scalar]) -> Matrix:
        """Matrix of ad u on L (columns are images of basis vectors)."""
        return from_columns([self.bracket(u, self.basis_vector(j)) for j in range(self.dim)])

    def is_abelian(self) -> bool:
        return not self.sc

    def jacobi_violations(self):
        """Yield every basis triple i<j<k at which the Jacobi identity fails."""
        for i, j, k in combinations(range(self.dim), 3):
            xi, xj, xk = (self.basis_vector(t) for t in (i, j, k))
            res = [self.field.zero] * self.dim
            for a, b, c in ((xi, xj, xk), (xj, xk, xi), (xk, xi, xj)):
                term = self.bracket(a, self.bracket(b, c))
                res = [r + t for r, t in zip(res, term)]
            if any(res):
                yield JacobiViolation((i + 1, j + 1, k + 1), tuple(res))

    def validate(self) -> JacobiViolation | None:
        """First (lexicographic) violating triple, or None when L is a Lie algebra."""
        return next(self.jacobi_violations(), None)

    def check(self) -> "LieAlgebra":
        bad = self.validate()
        if bad is not None:
            raise JacobiError(str(bad))
        return self

    # -- subspaces --------------------------------------------------------------

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, vectors) -> Subspace:
        return Subspace(self.field, self.dim, vectors)

    def product_space(self, u: Subspace, v: Subspace) -> Subspace:
        """Span of [U, V]."""
        return self.span([self.bracket(a, b) for a in u.basis for b in v.basis])

    def derived_algebra(self) -> Subspace:
        return self.product_space(self.full(), self.full())

    def derived_series(self) -> list[Subspace]:
        series = [self.full()]
        while True:
            nxt = self.product_space(series[-1], series[-1])
            if nxt == series[-1]:
                return series
            series.append(nxt)

    def lower_central_series(self) -> list[Subspace]:
        series = [self.full()]
        while True:
            nxt = self.product_space(series[-1], self.full())
            if nxt == series[-1]:
                return series
            series.append(nxt)

    def centralizer(self, u: Subspace) -> Subspace:
        """C_L(U): kernel of x -> ([x, u_1], ..., [x, u_k])."""
        if u.is_zero():
            return self.full()
        cols = []
        for i in range(self.dim):
            x = self.basis_vector(i)
            cols.append(tuple(c for b in u.basis for c in self.bracket(x, b)))
        mat = from_columns(cols)
        return self.span(kernel(mat, self.dim, self.field))

    def center(self) -> Subspace:
        return self.centralizer(self.full())

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].is_zero()

    def nilpotency_class(self) -> int | None:
        """Nilpotency class (abelian algebras have class 1), or None if not nilpotent."""
        lcs = self.lower_central_series()
        if not lcs[-1].is_zero():
            return None
        return len(lcs) - 1

    def is_nilpotent(self) -> bool:
        return self.nilpotency_class() is not None

    def is_metabelian(self) -> bool:
        ds = self.derived_series()
        return len(ds) <= 3 and ds[-1].is_zero()

    def is_subalgebra(self, u: Subspace) -> bool:
        return self.product_space(u, u) <= u

    def is_ideal(self, u: Subspace) -> bool:
        return self.product_space(self.full(), u) <= u

    def is_abelian_subspace(self, u: Subspace) -> bool:
        return self.product_space(u, u).is_zero()

    def adjoint_on(self, y: Sequence[Scalar], m: Subspace) -> Matrix:
        """Matrix of ad y restricted to M, in the canonical basis of M."""
        cols = []
        for b in m.basis:
            img = self.bracket(y, b)
            if img not in m:
                raise NotInvariant("[y, M] is not contained in M")
            cols.append(m.coordinates(img))
        if not cols:
            return ()
        return from_columns(cols)

    # -- change of basis and serialization -----------------------------------

    def change_basis(self, p: Matrix, labels=None) -> "LieAlgebra":
        """Same algebra in the basis y_i = sum_k p[k][i] x_k (columns of ``p``)."""
        pinv = inverse(p, self.field)
        cols = list(zip(*p))
        sc = {}
        for i, j in combinations(range(self.dim), 2):
            w = mat_vec(pinv, self.bracket(cols[i], cols[j]))
            entries = {k: c for k, c in enumerate(w) if c}
            if entries:
                sc[(i, j)] = entries
        return LieAlgebra(self.dim, self.field, sc, labels=labels)

    def to_text(self) -> str:
        lines = [f"dim {self.dim} field {self.field}"]
        for (i, j) in sorted(self.sc):
            for k, c in sorted(self.sc[(i, j)].items()):
                val = str(int(c)) if self.field.p else render(c)
                lines.append(f"{i + 1} {j + 1} {k + 1} {val}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LieAlgebra":
        header = None
        sc: dict[tuple[int, int], dict[int, Scalar]] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if header is None:
                if len(parts) != 4 or parts[0] != "dim" or parts[2] != "field":
                    raise ParseError("expected header 'dim <d> field Q|F<p>'", lineno)
                try:
                    dim = int(parts[1])
                except ValueError:
                    raise ParseError(f"bad dimension {parts[1]!r}", lineno) from None
                if dim < 0:
                    raise ParseError("negative dimension", lineno)
                try:
                    field = Field.parse(parts[3])
                except ParseError as exc:
                    raise ParseError(str(exc), lineno) from None
                header = (dim, field)
                continue
            dim, field = header
            if len(parts) != 4:
                raise ParseError("expected 'i j k coeff'", lineno)
            try:
                i, j, k = (int(t) for t in parts[:3])
            except ValueError:
                raise ParseError("indices must be integers", lineno) from None
            if not (1 <= i < j <= dim and 1 <= k <= dim):
                raise ParseError(f"indices out of range or i >= j: {i} {j} {k}", lineno)
            try:
                c = field(parts[3])
            except (ParseError, ZeroDivisionError):
                raise ParseError(f"bad coefficient {parts[3]!r}", lineno) from None
            slot = sc.setdefault((i - 1, j - 1), {})
            if k - 1 in slot:
                raise ParseError(f"duplicate entry for c_{{{i}{j}}}^{k}", lineno)
            slot[k - 1] = c
        if header is None:
            raise ParseError("empty structure-constant file", 1)
        return cls(header[0], header[1], sc)


def abelian(n: int, field: Field, labels=None) -> LieAlgebra:
    return LieAlgebra(n, field, {}, labels=labels)


def quotient(lie: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, Matrix]:
    """L/I on the complementary standard basis vectors, with the projection matrix."""
    if not lie.is_ideal(ideal):
        raise NotAnIdeal("subspace is not an ideal")
    keep = ideal.complement_indices()

    def project(v):
        r = ideal.reduce(v)
        return tuple(r[c] for c in keep)

    sc = {}
    for a, b in combinations(range(len(keep)), 2):
        w = project(lie.basis_bracket(keep[a], keep[b]))
        entries = {k: c for k, c in enumerate(w) if c}
        if entries:
            sc[(a, b)] = entries
    proj = from_columns([project(lie.basis_vector(i)) for i in range(lie.dim)]) if keep else ()
    labels = [lie.labels[c] for c in keep]
    return LieAlgebra(len(keep), lie.field, sc, labels=labels), proj


def semidirect(m: LieAlgebra, k: LieAlgebra, action: Sequence[Matrix], labels=None) -> LieAlgebra:
    """M x| K on basis(M) followed by basis(K), with [k, m] = action(k)(m)."""
    if m.field != k.field:
        raise ValueError("semidirect factors over different fields")
    if len(action) != k.dim:
        raise DimensionMismatch("need one action matrix per basis vector of K")
    f, dm, dk = m.field, m.dim, k.dim
    for idx, d in enumerate(action):
        for a, b in combinations(range(dm), 2):
            ea, eb = m.basis_vector(a), m.basis_vector(b)
            lhs = mat_vec(d, m.basis_bracket(a, b)) if dm else ()
            rhs = tuple(x + y for x, y in zip(m.bracket(mat_vec(d, ea), eb), m.bracket(ea, mat_vec(d, eb))))
            if lhs != rhs:
                raise NotDerivation(f"action of K basis vector {idx + 1} is not a derivation of M")
    for a, b in combinations(range(dk), 2):
        comm = mat_sub(mat_mul(action[a], action[b]), mat_mul(action[b], action[a])) if dm else ()
        br = k.basis_bracket(a, b)
        expected = tuple(tuple(sum((c * action[t][r][s] for t, c in enumerate(br) if c), f.zero)
                               for s in range(dm)) for r in range(dm))
        if dm and comm != expected:
            raise NotRepresentation(f"action does not respect [k{a + 1}, k{b + 1}]")
    sc = {}
    for (a, b), vec in m.sc.items():
        sc[(a, b)] = dict(vec)
    for (a, b), vec in k.sc.items():
        sc[(dm + a, dm + b)] = {dm + t: c for t, c in vec.items()}
    for a in range(dm):
        for b in range(dk):
            # [m_a, k_b] = -action(k_b)(m_a)
            img = [action[b][r][a] for r in range(dm)]
            entries = {r: -c for r, c in enumerate(img) if c}
            if entries:
                sc[(a, dm + b)] = entries
    if labels is None:
        labels = list(m.labels) + list(k.labels)
        if len(set(labels)) != len(labels):
            labels = [f"m{a + 1}" for a in range(dm)] + [f"k{b + 1}" for b in range(dk)]
    return LieAlgebra(dm + dk, f, sc, labels=labels).check()


def restrict_structure(lie: LieAlgebra, sub: Subspace) -> LieAlgebra:
    """The subalgebra ``sub`` as an abstract Lie algebra on its canonical basis."""
    if not lie.is_subalgebra(sub):
        raise NotInvariant("subspace is not a subalgebra")
    basis = sub.basis
    sc = {}
    for a, b in combinations(range(len(basis)), 2):
        w = sub.coordinates(lie.bracket(basis[a], basis[b]))
        entries = {k: c for k, c in enumerate(w) if c}
        if entries:
            sc[(a, b)] = entries
    return LieAlgebra(len(basis), lie.field, sc)


__all__ = [
    "JacobiViolation",
    "LieAlgebra",
    "abelian",
    "quotient",
    "semidirect",
    "restrict_structure",
    "is_zero",
]
