"""Arithmetic in the universal enveloping algebra U(L) through PBW normal forms.

An element is a finite combination of sorted monomials x_1^a_1 ... x_d^a_d,
stored as ``{exponent tuple: coefficient}``. Products are straightened with
the rewriting rule ``x_j x_i -> x_i x_j + [x_j, x_i]`` for ``j > i``.

For an abelian ideal M the helpers :func:`in_MU`, :func:`in_M_omega` and
:func:`reduce_mod_M_omega` work in a basis whose first ``dim M`` vectors span
M (an :class:`AdaptedOrder`). In such a basis ``MU(L)`` is spanned by the
monomials containing an M-variable and ``M omega(L)`` by those monomials of
total degree at least two.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import DegreeOverflow, MixedParents, NotAbelianIdeal, NotInMU, OrderNotAdapted, ParseError
from .liealg import LieAlgebra
from .linalg import Subspace, Vector, from_columns, inverse
from .scalars import Fp, Scalar, render

DEGREE_CAP = 24

Monomial = tuple


class _Straightener:
    """Memoized products ``monomial * generator`` for one Lie algebra."""

    def __init__(self, lie: LieAlgebra):
        self.d = lie.dim
        self.zero = lie.field.zero
        # [x_l, x_j] for l > j, sparse
        self.br = {}
        for l in range(self.d):
            for j in range(l):
                vec = lie.basis_bracket(l, j)
                self.br[(l, j)] = [(k, c) for k, c in enumerate(vec) if c]
        self.memo: dict[tuple[Monomial, int], dict[Monomial, Scalar]] = {}

    def mono_gen(self, a: Monomial, j: int) -> dict[Monomial, Scalar]:
        key = (a, j)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        l = max((i for i, e in enumerate(a) if e), default=-1)
        if l <= j:
            b = list(a)
            b[j] += 1
            out = {tuple(b): self.zero + 1}
        else:
            a1 = list(a)
            a1[l] -= 1
            a1 = tuple(a1)
            out: dict[Monomial, Scalar] = {}
            # x^a1 x_l x_j = (x^a1 x_j) x_l + x^a1 [x_l, x_j]
            for b, c in self.mono_gen(a1, j).items():
                for b2, c2 in self.mono_gen(b, l).items():
                    out[b2] = out.get(b2, self.zero) + c * c2
            for k, c in self.br[(l, j)]:
                for b2, c2 in self.mono_gen(a1, k).items():
                    out[b2] = out.get(b2, self.zero) + c * c2
            out = {m: c for m, c in out.items() if c}
        self.memo[key] = out
        return out


def _straightener(lie: LieAlgebra) -> _Straightener:
    st = lie.__dict__.get("_cache_straightener")
    if st is None:
        st = _Straightener(lie)
        lie.__dict__["_cache_straightener"] = st
    return st


class PbwElement:
    """Element of U(L) in PBW normal form with respect to ``parent``'s basis."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: LieAlgebra, terms: dict | None = None):
        self.parent = parent
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors -------------------------------------------------------------

    @classmethod
    def scalar(cls, parent: LieAlgebra, c) -> "PbwElement":
        return cls(parent, {(0,) * parent.dim: parent.field(c)})

    @classmethod
    def one(cls, parent: LieAlgebra) -> "PbwElement":
        return cls.scalar(parent, 1)

    @classmethod
    def gen(cls, parent: LieAlgebra, i: int) -> "PbwElement":
        e = [0] * parent.dim
        e[i] = 1
        return cls(parent, {tuple(e): parent.field.one})

    @classmethod
    def from_vector(cls, parent: LieAlgebra, v: Sequence[Scalar]) -> "PbwElement":
        """The PBW embedding of L into U(L)."""
        terms = {}
        for i, c in enumerate(parent.vector(v)):
            if c:
                e = [0] * parent.dim
                e[i] = 1
                terms[tuple(e)] = c
        return cls(parent, terms)

    @classmethod
    def monomial(cls, parent: LieAlgebra, exps: Sequence[int], c=1) -> "PbwElement":
        return cls(parent, {tuple(exps): parent.field(c)})

    # -- arithmetic ---------------------------------------------------------------

    def _check(self, other: "PbwElement"):
        if self.parent is not other.parent and self.parent != other.parent:
            raise MixedParents("elements of different enveloping algebras")

    def _lift(self, other) -> "PbwElement":
        if isinstance(other, PbwElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Fp)):
            return PbwElement.scalar(self.parent, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0 * c) + c
        return PbwElement(self.parent, terms)

    __radd__ = __add__

    def __neg__(self):
        return PbwElement(self.parent, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Fp)):
            c = self.parent.field(other)
            return PbwElement(self.parent, {m: c * v for m, v in self.terms.items()})
        if isinstance(other, PbwElement):
            return pbw_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Fp)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = PbwElement.one(self.parent)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Fp)):
            other = PbwElement.scalar(self.parent, other)
        if not isinstance(other, PbwElement):
            return NotImplemented
        return self.parent == other.parent and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Filtration degree; the zero element has degree -1."""
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_part(self, deg: int) -> "PbwElement":
        return PbwElement(self.parent, {m: c for m, c in self.terms.items() if sum(m) == deg})

    def sorted_terms(self):
        """Terms in decreasing degree-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"PbwElement({to_text(self)!r})"


def pbw_mul(u: PbwElement, v: PbwElement, cap: int = DEGREE_CAP) -> PbwElement:
    """Product uv in PBW normal form."""
    u._check(v)
    if u.degree() + v.degree() > cap:
        raise DegreeOverflow(f"product degree {u.degree() + v.degree()} exceeds cap {cap}")
    st = _straightener(u.parent)
    zero = u.parent.field.zero
    out: dict[Monomial, Scalar] = {}
    for b, cb in v.terms.items():
        # right factor as a word of generators, left to right
        word = [i for i, e in enumerate(b) for _ in range(e)]
        for a, ca in u.terms.items():
            cur = {a: ca * cb}
            for j in word:
                nxt: dict[Monomial, Scalar] = {}
                for m, c in cur.items():
                    for m2, c2 in st.mono_gen(m, j).items():
                        nxt[m2] = nxt.get(m2, zero) + c * c2
                cur = nxt
            for m, c in cur.items():
                out[m] = out.get(m, zero) + c
    return PbwElement(u.parent, out)


def commutator(u: PbwElement, v: PbwElement) -> PbwElement:
    return pbw_mul(u, v) - pbw_mul(v, u)


def augmentation(u: PbwElement) -> Scalar:
    """The augmentation map: the constant term of the normal form."""
    return u.terms.get((0,) * u.parent.dim, u.parent.field.zero)


def degree_one_part(u: PbwElement) -> Vector:
    """Coefficients of the linear monomials, as a vector of L."""
    d = u.parent.dim
    out = [u.parent.field.zero] * d
    for m, c in u.terms.items():
        if sum(m) == 1:
            out[m.index(1)] = c
    return tuple(out)


# -- M-adapted bases -------------------------------------------------------------


class AdaptedOrder:
    """A basis of L whose first ``dim M`` vectors are the canonical basis of M.

    ``algebra`` is L rewritten in that basis; :meth:`transport` moves elements
    of U(L) from the original basis into it.
    """

    def __init__(self, lie: LieAlgebra, m: Subspace):
        if not lie.is_ideal(m) or not lie.is_abelian_subspace(m):
            raise NotAbelianIdeal("M must be an abelian ideal")
        self.source = lie
        self.subspace = m
        self.k = m.dim
        rest = [lie.basis_vector(i) for i in m.complement_indices()]
        basis = list(m.basis) + rest
        self.matrix = from_columns(basis) if basis else ()
        coordinate = all(sum(1 for x in b if x) == 1 and b[p] == 1 for b, p in zip(m.basis, m.pivots))
        if coordinate:
            order = list(m.pivots) + list(m.complement_indices())
            labels = [lie.labels[i] for i in order]
        else:
            labels = [f"m{i + 1}" for i in range(self.k)] + [lie.labels[i] for i in m.complement_indices()]
        if lie.dim:
            self.algebra = lie.change_basis(self.matrix, labels=labels)
            self._inv = inverse(self.matrix, lie.field)
        else:
            self.algebra = lie
            self._inv = ()
        self._images: dict[int, PbwElement] = {}

    def _image(self, i: int) -> PbwElement:
        img = self._images.get(i)
        if img is None:
            col = tuple(r[i] for r in self._inv)
            img = PbwElement.from_vector(self.algebra, col)
            self._images[i] = img
        return img

    def transport(self, u: PbwElement) -> PbwElement:
        """Rewrite an element of U(L) (original basis) in the adapted basis."""
        if u.parent is self.algebra:
            return u
        if u.parent != self.source:
            raise OrderNotAdapted("element does not belong to this algebra")
        out = PbwElement(self.algebra)
        for m, c in u.terms.items():
            term = PbwElement.scalar(self.algebra, c)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = pbw_mul(term, self._image(i))
            out = out + term
        return out

    def to_source_vector(self, coords_m: Sequence[Scalar]) -> Vector:
        """Ambient vector of L for the M-coordinates ``coords_m``."""
        n = self.source.dim
        out = [self.source.field.zero] * n
        for c, b in zip(coords_m, self.subspace.basis):
            for i, x in enumerate(b):
                out[i] += c * x
        return tuple(out)


def _resolve(u: PbwElement, m) -> tuple[PbwElement, AdaptedOrder]:
    if isinstance(m, AdaptedOrder):
        order = m
    else:
        cache = u.parent.__dict__.setdefault("_cache_adapted_orders", {})
        order = cache.get(m)
        if order is None:
            order = AdaptedOrder(u.parent, m)
            cache[m] = order
    if u.parent is order.algebra:
        return u, order
    if u.parent != order.source:
        raise OrderNotAdapted("element is expressed in a basis unrelated to this order")
    return order.transport(u), order


def in_MU(u: PbwElement, m) -> bool:
    """Membership of u in the two-sided ideal MU(L) = U(L)M."""
    w, order = _resolve(u, m)
    k = order.k
    return all(any(mono[:k]) for mono in w.terms)


def in_M_omega(u: PbwElement, m) -> bool:
    """Membership of u in M omega(L)."""
    w, order = _resolve(u, m)
    k = order.k
    return all(any(mono[:k]) and sum(mono) >= 2 for mono in w.terms)


def reduce_mod_M_omega(u: PbwElement, m) -> Vector:
    """The unique element of M congruent to u modulo M omega(L).

    The result is a vector in the coordinates of ``u.parent``.
    """
    w, order = _resolve(u, m)
    k = order.k
    if not all(any(mono[:k]) for mono in w.terms):
        raise NotInMU("element is not in MU(L)")
    lin = degree_one_part(w)
    coords = lin[:k]
    if u.parent is order.algebra:
        return lin
    return order.to_source_vector(coords)


# -- text format -------------------------------------------------------------------


def _coeff_text(c: Scalar) -> str:
    return str(int(c)) if isinstance(c, Fp) else render(c)


def to_text(u: PbwElement) -> str:
    labels = u.parent.labels
    if not u.terms:
        return "0"
    pieces = []
    for mono, c in u.sorted_terms():
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(labels[i])
            elif e > 1:
                factors.append(f"{labels[i]}^{e}")
        neg = not isinstance(c, Fp) and c < 0
        mag = -c if neg else c
        if not factors:
            body = _coeff_text(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _coeff_text(mag) + "*" + "*".join(factors)
        pieces.append(("-" if neg else "+", body))
    sign, first = pieces[0]
    out = ("-" if sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM_SPLIT = re.compile(r"([+-])")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse(lie: LieAlgebra, text: str) -> PbwElement:
    """Parse e.g. ``3*x1^2*x4 + 1/2*x2 - 1``; factors multiply left to right in U(L)."""
    index = {lab: i for i, lab in enumerate(lie.labels)}
    src = text.strip()
    if not src:
        raise ParseError("empty element")
    if re.search(r"\^\s*[+-]", src):
        raise ParseError("exponents must be non-negative integers")
    tokens = [t for t in _TERM_SPLIT.split(src)]
    total = PbwElement(lie)
    sign = 1
    expect_term = True
    for tok in tokens:
        t = tok.strip()
        if t in ("+", "-"):
            if not expect_term and t:
                expect_term = True
                sign = 1 if t == "+" else -1
            elif expect_term:
                sign = sign * (1 if t == "+" else -1)
            continue
        if not t:
            continue
        if not expect_term:
            raise ParseError(f"missing operator before {t!r}")
        term = PbwElement.scalar(lie, sign)
        for factor in t.split("*"):
            f = factor.strip()
            if _NUMBER.match(f):
                try:
                    term = term * lie.field(f)
                except ZeroDivisionError:
                    raise ParseError(f"zero denominator in {f!r}") from None
                continue
            name, _, exp = f.partition("^")
            name = name.strip()
            if name not in index:
                raise ParseError(f"unknown generator {name!r}")
            try:
                e = int(exp) if exp else 1
            except ValueError:
                raise ParseError(f"bad exponent in {f!r}") from None
            if e < 0:
                raise ParseError(f"negative exponent in {f!r}")
            g = PbwElement.gen(lie, index[name])
            for _ in range(e):
                term = pbw_mul(term, g)
        total = total + term
        expect_term = False
        sign = 1
    if expect_term:
        raise ParseError("dangling operator")
    return total


def parse_vector(lie: LieAlgebra, text: str) -> Vector:
    """Parse a linear combination of basis labels into a vector of L."""
    u = parse(lie, text)
    if u.degree() > 1 or augmentation(u):
        raise ParseError(f"{text!r} is not an element of L")
    return degree_one_part(u)
