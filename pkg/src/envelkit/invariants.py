"""Invariant algebras built from an abelian ideal, plus index and Frobenius semiradical.

For an abelian ideal M of L the action of U(L) on M modulo M m (m the kernel
of a character) factors through the associative algebra A generated by the
operators ad y|_M. Everything below works with that finite matrix model:

* ``ad_generated_algebra``  the non-unital algebra A inside End(M)
* ``build_Ltilde``          M x| A, with A acting on M as matrices
* ``build_Utilde``          the unitalization F + A, realized as block matrices

The index and the semiradical are computed from the structure matrix
B(t)_ij = sum_k c_ij^k t_k over the polynomial ring Q[t_1..t_d].
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from sympy import QQ as SYM_QQ
from sympy.polys.rings import PolyRing

from . import poly
from .errors import HypothesisNotMet, NotAbelianIdeal, NotCodimOne, PositiveCharacteristic
from .liealg import LieAlgebra, abelian, semidirect
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    flatten,
    from_columns,
    identity,
    kernel,
    mat_mul,
    rank,
    rref,
    unflatten,
)
from .scalars import Field, Scalar


def _require_abelian_ideal(lie: LieAlgebra, m: Subspace):
    if not lie.is_ideal(m):
        raise NotAbelianIdeal("M is not an ideal")
    if not lie.is_abelian_subspace(m):
        raise NotAbelianIdeal("M is not abelian")


def _is_zero_matrix(a: Matrix) -> bool:
    return not any(x for r in a for x in r)


# -- operator algebras ---------------------------------------------------------------


class OperatorAlgebra:
    """A span of n x n matrices closed under multiplication.

    ``basis`` is the canonical echelon basis of the flattened matrices unless
    an explicit spanning basis was supplied. ``table[i][j]`` holds the
    coordinates of ``basis[i] @ basis[j]``.
    """

    def __init__(self, field: Field, n: int, basis: Sequence[Matrix], unital: bool = False):
        self.field = field
        self.n = n
        self.basis = tuple(tuple(tuple(r) for r in b) for b in basis)
        self.unital = unital
        self._space = Subspace(field, n * n, [flatten(b) for b in self.basis])
        if self._space.dim != len(self.basis):
            raise ValueError("basis matrices are linearly dependent")
        self._coord_cache = {}
        self.table = tuple(tuple(self.coordinates(mat_mul(a, b)) for b in self.basis) for a in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, mat) -> bool:
        return flatten(mat) in self._space

    def coordinates(self, mat: Matrix) -> Vector:
        """Coordinates in ``basis``; raises ValueError for matrices outside the span."""
        v = flatten(mat) if self.n else ()
        if not self.basis:
            if any(v):
                raise ValueError("matrix not in algebra")
            return ()
        if v not in self._space:
            raise ValueError("matrix not in algebra")
        cols = from_columns([flatten(b) for b in self.basis])
        aug = [list(r) + [x] for r, x in zip(cols, v)]
        red, piv = rref(aug, self.dim + 1)
        out = [self.field.zero] * self.dim
        for row, pc in zip(red, piv):
            out[pc] = row[-1]
        return tuple(out)

    def element(self, coords: Sequence[Scalar]) -> Matrix:
        n, f = self.n, self.field
        out = [[f.zero] * n for _ in range(n)]
        for c, b in zip(coords, self.basis):
            if c:
                for i in range(n):
                    for j in range(n):
                        out[i][j] += c * b[i][j]
        return tuple(tuple(r) for r in out)

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(i))

    def lie_algebra(self, labels=None) -> LieAlgebra:
        """The same space with the commutator bracket."""
        sc = {}
        for i, j in combinations(range(self.dim), 2):
            w = [x - y for x, y in zip(self.table[i][j], self.table[j][i])]
            entries = {k: c for k, c in enumerate(w) if c}
            if entries:
                sc[(i, j)] = entries
        return LieAlgebra(self.dim, self.field, sc, labels=labels)

    def with_basis(self, basis: Sequence[Matrix]) -> "OperatorAlgebra":
        """The same algebra presented on another basis (checked to span it)."""
        other = OperatorAlgebra(self.field, self.n, basis, self.unital)
        if other._space != self._space:
            raise ValueError("proposed basis does not span the algebra")
        return other

    def __eq__(self, other):
        if not isinstance(other, OperatorAlgebra):
            return NotImplemented
        return (self.n, self._space, self.unital) == (other.n, other._space, other.unital)

    def __hash__(self):
        return hash((self.n, self._space, self.unital))

    def __repr__(self):
        return f"<OperatorAlgebra dim={self.dim} on F^{self.n}{' unital' if self.unital else ''}>"


def _closure(field: Field, n: int, gens: Sequence[Matrix]) -> list[Matrix]:
    """Product-closed span of ``gens``; new elements appended in product order."""
    space = Subspace(field, n * n, [])
    basis: list[Matrix] = []

    def add(m):
        nonlocal space
        v = flatten(m)
        if v not in space:
            space = space + Subspace(field, n * n, [v])
            basis.append(m)
            return True
        return False

    for g in gens:
        add(g)
    grew = True
    while grew:
        grew = False
        for a, b in product(list(basis), repeat=2):
            if add(mat_mul(a, b)):
                grew = True
    return [unflatten(r, n) for r in space.rows]


@dataclass(frozen=True)
class CharacterIdeal:
    """A character lambda of L vanishing on L' and on M; lambda = 0 gives omega(L)."""

    functional: tuple

    @classmethod
    def augmentation(cls, lie: LieAlgebra) -> "CharacterIdeal":
        return cls(tuple(lie.field.zero for _ in range(lie.dim)))

    def value(self, v: Sequence[Scalar]):
        return sum((a * b for a, b in zip(self.functional, v)), 0 * self.functional[0]) if self.functional else 0

    def check(self, lie: LieAlgebra, m: Subspace):
        if len(self.functional) != lie.dim:
            raise ValueError("character has the wrong length")
        for sub, name in ((lie.derived_algebra(), "L'"), (m, "M")):
            if any(self.value(b) for b in sub.basis):
                raise ValueError(f"character does not vanish on {name}")


def ad_generated_algebra(lie: LieAlgebra, m: Subspace, chi: CharacterIdeal | None = None) -> OperatorAlgebra:
    """The algebra A spanned by the operators of omega(L) on M modulo M m.

    With character chi the operator of a word w is beta(w) = prod(ad y_i + chi(y_i)) - chi(w),
    so A is read off from the algebra generated by the pairs (ad y + chi(y), chi(y))
    inside End(M) x F.
    """
    _require_abelian_ideal(lie, m)
    f, n = lie.field, m.dim
    if chi is None:
        gens = [lie.adjoint_on(lie.basis_vector(i), m) for i in range(lie.dim)]
        basis = _closure(f, n, gens)
        return OperatorAlgebra(f, n, basis)
    chi.check(lie, m)
    # embed (P, s) as the block matrix diag(P, s) so that products stay componentwise
    gens = []
    for i in range(lie.dim):
        s = chi.functional[i]
        ad = lie.adjoint_on(lie.basis_vector(i), m)
        block = [list(r) + [f.zero] for r in ad]
        for k in range(n):
            block[k][k] += s
        block.append([f.zero] * n + [s])
        gens.append(tuple(tuple(r) for r in block))
    big = _closure(f, n + 1, gens)
    mats = []
    for b in big:
        s = b[n][n]
        mats.append(tuple(tuple(b[i][j] - (s if i == j else 0) for j in range(n)) for i in range(n)))
    space = Subspace(f, n * n, [flatten(x) for x in mats])
    return OperatorAlgebra(f, n, [unflatten(r, n) for r in space.rows])


def _m_labels(lie: LieAlgebra, m: Subspace) -> list[str]:
    coordinate = all(sum(1 for x in b if x) == 1 for b in m.basis)
    if coordinate:
        return [lie.labels[p] for p in m.pivots]
    return [f"m{i + 1}" for i in range(m.dim)]


def build_Ltilde(lie: LieAlgebra, m: Subspace, chi: CharacterIdeal | None = None,
                 basis: Sequence[Matrix] | None = None) -> LieAlgebra:
    """M x| A with A (as a Lie algebra under commutators) acting on M.

    ``basis`` optionally fixes the basis of A used for the second factor.
    """
    a = ad_generated_algebra(lie, m, chi)
    if basis is not None:
        a = a.with_basis(basis)
    mlab = _m_labels(lie, m)
    alab = [f"a{i + 1}" for i in range(a.dim)]
    if set(mlab) & set(alab):
        mlab = [f"m{i + 1}" for i in range(m.dim)]
    k = a.lie_algebra(labels=alab)
    return semidirect(abelian(m.dim, lie.field, labels=mlab), k, list(a.basis), labels=mlab + alab)


def build_Utilde(lie: LieAlgebra, m: Subspace, chi: CharacterIdeal | None = None) -> OperatorAlgebra:
    """The unitalization F + A, as block matrices diag(c, c I + a) on F + M."""
    a = ad_generated_algebra(lie, m, chi)
    f, n = lie.field, m.dim

    def block(c, mat):
        rows = [[c] + [f.zero] * n]
        for i in range(n):
            rows.append([f.zero] + [mat[i][j] + (c if i == j else 0) for j in range(n)])
        return tuple(tuple(r) for r in rows)

    zero = tuple(tuple(f.zero for _ in range(n)) for _ in range(n))
    basis = [block(f.one, zero)] + [block(f.zero, b) for b in a.basis]
    return OperatorAlgebra(f, n + 1, basis, unital=True)


# -- single generator case -------------------------------------------------------------


def min_poly_no_constant(t: Matrix, field: Field) -> poly.Poly:
    return poly.min_poly_no_constant(t, field)


def _codim_one_generator(lie: LieAlgebra, m: Subspace) -> Vector | None:
    c = lie.centralizer(m)
    if lie.dim - c.dim != 1:
        return None
    return lie.basis_vector(c.complement_indices()[0])


def single_generator_presentation(lie: LieAlgebra, m: Subspace) -> tuple[Vector, poly.Poly] | None:
    """(x, f) with U~ = F[x]/(f) when C_L(M) has codimension one, else None."""
    x = _codim_one_generator(lie, m)
    if x is None:
        return None
    return x, poly.min_poly_no_constant(lie.adjoint_on(x, m), lie.field)


def check_semidirect_criterion(lie: LieAlgebra, m: Subspace) -> bool:
    """True iff (ad x|_M)^2 is a scalar multiple of ad x|_M."""
    x = _codim_one_generator(lie, m)
    if x is None:
        raise NotCodimOne("C_L(M) does not have codimension one")
    t = lie.adjoint_on(x, m)
    if _is_zero_matrix(t):
        return True
    t2 = mat_mul(t, t)
    ft, ft2 = flatten(t), flatten(t2)
    k = next(i for i, v in enumerate(ft) if v)
    lam = ft2[k] / ft[k]
    return all(b == lam * a for a, b in zip(ft, ft2))


def abelian_complement(lie: LieAlgebra, m: Subspace) -> list[Vector] | None:
    """Vectors e_i + m_i spanning an abelian subalgebra complementary to M.

    Needs L' inside M; then [e_i + m_i, e_j + m_j] = [e_i, e_j] + [e_i, m_j] - [e_j, m_i]
    is linear in the unknowns m_i.
    """
    f, d, k = lie.field, lie.dim, m.dim
    idx = m.complement_indices()
    r = len(idx)
    nunk = r * k
    rows = []
    for a, b in combinations(range(r), 2):
        ea, eb = lie.basis_vector(idx[a]), lie.basis_vector(idx[b])
        const = lie.bracket(ea, eb)
        cols = [[f.zero] * d for _ in range(nunk)]
        for s, mb in enumerate(m.basis):
            ia = lie.bracket(ea, mb)  # coefficient of m_b's s-th coordinate
            ib = lie.bracket(eb, mb)
            for t in range(d):
                cols[b * k + s][t] += ia[t]
                cols[a * k + s][t] -= ib[t]
        for t in range(d):
            rows.append([cols[u][t] for u in range(nunk)] + [-const[t]])
    if not rows:
        return [lie.basis_vector(i) for i in idx]
    red, piv = rref(rows, nunk + 1)
    if nunk in piv:
        return None
    sol = [f.zero] * nunk
    for row, pc in zip(red, piv):
        sol[pc] = row[-1]
    out = []
    for a in range(r):
        v = list(lie.basis_vector(idx[a]))
        for s, mb in enumerate(m.basis):
            c = sol[a * k + s]
            if c:
                v = [x + c * y for x, y in zip(v, mb)]
        out.append(tuple(v))
    return out


def check_corollary2_bound(lie: LieAlgebra, m: Subspace) -> bool:
    """Whether dim L/C_L(M) >= floor(dim(M)^2 / 4) + 1.

    Requires M to be an abelian ideal containing L' with a complementary
    subalgebra. When the bound holds, A must be the span of the operators
    ad y|_M (so L~ = M x| L/C_L(M)); a mismatch raises AssertionError.
    """
    if not (lie.is_ideal(m) and lie.is_abelian_subspace(m) and lie.derived_algebra() <= m):
        raise HypothesisNotMet("M must be an abelian ideal containing L'")
    if abelian_complement(lie, m) is None:
        raise HypothesisNotMet("L does not split over M")
    q = lie.dim - lie.centralizer(m).dim
    if q < m.dim * m.dim // 4 + 1:
        return False
    a = ad_generated_algebra(lie, m)
    lt = build_Ltilde(lie, m)
    if a.dim != q or lt.dim != m.dim + q:
        raise AssertionError(f"bound met but dim A = {a.dim} differs from dim L/C_L(M) = {q}")
    return True


# -- commutative invariants of U~ ----------------------------------------------------------


def find_generator(alg: OperatorAlgebra, search: int = 3) -> Matrix | None:
    """An element whose powers span a commutative unital algebra, or None.

    Candidates are integer combinations of the basis with coefficients in
    [-h, h], tried by increasing height h <= search.
    """
    if not alg.is_commutative():
        return None
    n = alg.dim
    for h in range(1, search + 1):
        for coeffs in product(range(-h, h + 1), repeat=n):
            if max(abs(c) for c in coeffs) != h:
                continue
            u = alg.element([alg.field(c) for c in coeffs])
            if poly.deg(poly.min_poly(u, alg.field)) == n:
                return u
    return None


def utilde_signature(alg: OperatorAlgebra) -> list | None:
    """Factorization signature of a generator's minimal polynomial, if U~ is monogenic."""
    g = find_generator(alg)
    if g is None:
        return None
    return poly.signature(poly.min_poly(g, alg.field), alg.field)


# -- index and Frobenius semiradical ---------------------------------------------------------


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def structure_matrix(lie: LieAlgebra):
    """(ring, B) with B[i][j] = sum_k c_ij^k t_k as sympy ring elements."""
    names = [f"t{k + 1}" for k in range(max(lie.dim, 1))]
    ring = PolyRing(names, SYM_QQ)
    t = ring.gens
    b = [[ring.zero] * lie.dim for _ in range(lie.dim)]
    for i in range(lie.dim):
        for j in range(lie.dim):
            vec = lie.basis_bracket(i, j)
            b[i][j] = sum((t[k] * SYM_QQ(c.numerator, c.denominator) for k, c in enumerate(vec) if c), ring.zero)
    return ring, b


def bareiss(mat, zero):
    """Fraction-free elimination with column skipping.

    Returns (rank, pivot rows in original numbering, pivot columns).
    """
    m = [list(r) for r in mat]
    rows = list(range(len(m)))
    ncols = len(m[0]) if m else 0
    prev = None
    r = 0
    pivcols = []
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != zero), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                num = m[r][c] * m[i][j] - m[i][c] * m[r][j]
                m[i][j] = num if prev is None else num.exquo(prev)
            m[i][c] = zero
        prev = m[r][c]
        pivcols.append(c)
        r += 1
        if r == len(m):
            break
    return r, rows[:r], pivcols


def poly_det(mat, zero, one):
    n = len(mat)
    if n == 0:
        return one
    m = [list(r) for r in mat]
    sign = 1
    prev = one
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != zero), None)
        if p is None:
            return zero
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]).exquo(prev)
            m[i][c] = zero
        prev = m[c][c]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def symbolic_kernel(lie: LieAlgebra):
    """(generic rank, polynomial kernel vectors of B(t)) via Cramer's rule on a maximal minor."""
    ring, b = structure_matrix(lie)
    d = lie.dim
    r, prow, pcol = bareiss(b, ring.zero)
    free = [c for c in range(d) if c not in pcol]
    sub = [[b[i][j] for j in pcol] for i in prow]
    det = poly_det(sub, ring.zero, ring.one)
    vecs = []
    for fc in free:
        v = [ring.zero] * d
        v[fc] = det
        rhs = [-b[i][fc] for i in prow]
        for a, col in enumerate(pcol):
            replaced = [row[:a] + [rhs[k]] + row[a + 1:] for k, row in enumerate(sub)]
            v[col] = poly_det(replaced, ring.zero, ring.one)
        vecs.append(v)
    return r, vecs, ring, b


@dataclass
class FrobeniusData:
    index: int
    generic_rank: int
    semiradical: Subspace
    witness: tuple | None = None
    witness_rank: int | None = None
    kernel_polys: list = dc_field(default_factory=list, repr=False)


def form_matrix(lie: LieAlgebra, f: Sequence[Scalar]) -> Matrix:
    """Gram matrix of B_f(x, y) = f([x, y]) on the basis."""
    fv = [lie.field(c) for c in f]
    return tuple(
        tuple(sum((a * c for a, c in zip(fv, lie.basis_bracket(i, j))), lie.field.zero) for j in range(lie.dim))
        for i in range(lie.dim)
    )


def form_rank(lie: LieAlgebra, f: Sequence[Scalar]) -> int:
    return rank(form_matrix(lie, f), lie.dim)


def is_regular(lie: LieAlgebra, f: Sequence[Scalar], generic_rank: int | None = None) -> bool:
    if generic_rank is None:
        generic_rank = index_and_semiradical(lie).generic_rank
    return form_rank(lie, f) == generic_rank


def _require_char0(lie: LieAlgebra):
    if lie.field.char != 0:
        raise PositiveCharacteristic(
            "index and semiradical need characteristic zero: the inclusion of the center of U(L) "
            "in U(F(L)) fails in positive characteristic"
        )


def index_and_semiradical(lie: LieAlgebra) -> FrobeniusData:
    _require_char0(lie)
    cached = lie.__dict__.get("_cache_frobenius")
    if cached is not None:
        return cached
    d = lie.dim
    r, vecs, ring, _ = symbolic_kernel(lie)
    coeff_vectors = []
    for v in vecs:
        monos = set()
        for entry in v:
            monos.update(entry.keys())
        for mono in sorted(monos):
            coeff_vectors.append(tuple(_to_fraction(entry.get(mono, SYM_QQ.zero)) for entry in v))
    sr = lie.span(coeff_vectors)
    witness = None
    # 0/1 functionals by support size, then small integers
    for size in range(1, d + 1):
        for support in combinations(range(d), size):
            f = tuple(Fraction(1) if i in support else Fraction(0) for i in range(d))
            if form_rank(lie, f) == r:
                witness = f
                break
        if witness is not None:
            break
    if witness is None and d:
        for f in product(range(-2, 3), repeat=d):
            if form_rank(lie, f) == r:
                witness = tuple(Fraction(x) for x in f)
                break
    if d == 0:
        witness = ()
    data = FrobeniusData(d - r, r, sr, witness, r if witness is not None else None, vecs)
    lie.__dict__["_cache_frobenius"] = data
    return data


def semiradical_by_sampling(lie: LieAlgebra, samples: int = 200, seed: int = 0, bound: int = 10**6):
    """Sum of ker B(f) over random integer functionals of maximal rank.

    Returns (span, number of regular samples, every regular kernel inside the symbolic F(L)).
    """
    _require_char0(lie)
    data = index_and_semiradical(lie)
    rng = random.Random(seed)
    total = lie.zero()
    inside = True
    regular = 0
    for _ in range(samples):
        f = [Fraction(rng.randint(-bound, bound)) for _ in range(lie.dim)]
        b = form_matrix(lie, f)
        ker = kernel(b, lie.dim, lie.field)
        if lie.dim - len(ker) != data.generic_rank:
            continue
        regular += 1
        sp = lie.span(ker)
        inside = inside and sp <= data.semiradical
        total = total + sp
    return total, regular, inside


def kernel_identity_holds(lie: LieAlgebra) -> bool:
    """B(t) v(t) = 0 identically for every symbolic kernel vector."""
    _, vecs, ring, b = symbolic_kernel(lie)
    for v in vecs:
        for row in b:
            if sum((x * y for x, y in zip(row, v)), ring.zero) != ring.zero:
                return False
    return True


def center_UL_is_trivial(lie: LieAlgebra) -> tuple | None:
    """A regular functional with nondegenerate B_f when the index is 0, else None (unknown)."""
    data = index_and_semiradical(lie)
    if data.index == 0:
        return data.witness
    return None


__all__ = [
    "OperatorAlgebra",
    "CharacterIdeal",
    "FrobeniusData",
    "ad_generated_algebra",
    "build_Ltilde",
    "build_Utilde",
    "min_poly_no_constant",
    "single_generator_presentation",
    "check_semidirect_criterion",
    "check_corollary2_bound",
    "abelian_complement",
    "find_generator",
    "utilde_signature",
    "index_and_semiradical",
    "semiradical_by_sampling",
    "kernel_identity_holds",
    "center_UL_is_trivial",
    "form_matrix",
    "form_rank",
    "is_regular",
]
