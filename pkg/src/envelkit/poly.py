"""Dense univariate polynomials over a :class:`Field`.

A polynomial is a tuple of coefficients from the constant term upwards,
with no trailing zeros (the zero polynomial is ``()``).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Sequence

from .linalg import Matrix, flatten, from_columns, identity, kernel, mat_mul
from .scalars import Field, Fp, Scalar, render, squarefree_part

Poly = tuple


def trim(c: Sequence[Scalar]) -> Poly:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def deg(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    z = (f or g or (0,))[0] * 0
    return trim([(f[i] if i < len(f) else z) + (g[i] if i < len(g) else z) for i in range(n)])


def neg(f: Poly) -> Poly:
    return tuple(-c for c in f)


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [f[0] * 0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def scale(c: Scalar, f: Poly) -> Poly:
    return trim([c * a for a in f])


def monic(f: Poly) -> Poly:
    return scale(1 / f[-1], f) if f else f


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    q = [g[-1] * 0] * max(len(f) - len(g) + 1, 0)
    inv = 1 / g[-1]
    for k in range(len(f) - len(g), -1, -1):
        c = r[k + len(g) - 1] * inv
        q[k] = c
        if c:
            for i, b in enumerate(g):
                r[k + i] -= c * b
    return trim(q), trim(r[: len(g) - 1])


def poly_gcd(f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, divmod_poly(f, g)[1]
    return monic(f)


def derivative(f: Poly) -> Poly:
    return trim([i * c for i, c in enumerate(f)][1:])


def evaluate(f: Poly, x):
    out = 0 * x
    for c in reversed(f):
        out = out * x + c
    return out


def x_power(n: int, field: Field) -> Poly:
    return tuple([field.zero] * n + [field.one])


def to_text(f: Poly, var: str = "x") -> str:
    """Render like ``x^3 - 2*x``; coefficients over F_p as representatives in [0, p)."""
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        neg_ = not isinstance(c, Fp) and c < 0
        mag = -c if neg_ else c
        mag_s = str(int(mag)) if isinstance(mag, Fp) else render(mag)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = mag_s
        elif mag == 1:
            body = mono
        else:
            body = f"{mag_s}*{mono}"
        parts.append(("-" if neg_ else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- minimal polynomials ------------------------------------------------------------


def _first_dependence(mats: list, field: Field) -> Poly | None:
    """Coefficients c with mats[-1] = sum c_i mats[i], if mats[-1] lies in the span."""
    vecs = [flatten(m) for m in mats]
    n = len(vecs[-1])
    # a kernel vector with nonzero last coordinate gives the dependence
    a = from_columns(vecs) if n else ()
    ker = kernel(a, len(vecs), field) if n else [tuple([field.zero] * (len(vecs) - 1) + [field.one])]
    for v in ker:
        if v[-1]:
            return tuple(-x / v[-1] for x in v[:-1])
    return None


def min_poly(t: Matrix, field: Field) -> Poly:
    """Monic minimal polynomial of a square matrix."""
    n = len(t)
    powers = [identity(n, field)]
    while True:
        nxt = mat_mul(powers[-1], t) if n else ()
        dep = _first_dependence(powers + [nxt], field)
        if dep is not None:
            return tuple(-c for c in dep) + (field.one,)
        powers.append(nxt)


def min_poly_no_constant(t: Matrix, field: Field) -> Poly:
    """Monic f of least degree with f(0) = 0 and f(T) = 0.

    Found as the first linear dependence among T, T^2, T^3, ...
    """
    n = len(t)
    if n == 0 or not any(x for r in t for x in r):
        return x_power(1, field)
    powers = [t]
    while True:
        nxt = mat_mul(powers[-1], t)
        dep = _first_dependence(powers + [nxt], field)
        if dep is not None:
            return (field.zero,) + tuple(-c for c in dep) + (field.one,)
        powers.append(nxt)


def matrix_eval(f: Poly, t: Matrix, field: Field) -> Matrix:
    n = len(t)
    out = tuple(tuple(field.zero for _ in range(n)) for _ in range(n))
    for c in reversed(f):
        out = mat_mul(out, t) if n else ()
        out = tuple(tuple(x + (c if i == j else 0) for j, x in enumerate(r)) for i, r in enumerate(out))
    return out


# -- factorization ---------------------------------------------------------------------


def _integer_monic(f: Poly) -> tuple[list[int], int]:
    """For monic f over Q, an integer D and monic integer g with g(y) = D^n f(y / D)."""
    n = deg(f)
    den = 1
    for c in f:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    g = [Fraction(c) * den ** (n - i) for i, c in enumerate(f)]
    return [int(c) for c in g], den


def _sturm_chain(f: Poly) -> list[Poly]:
    chain = [f, derivative(f)]
    while deg(chain[-1]) > 0:
        r = divmod_poly(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(neg(r))
    return chain


def _sign_changes(chain: list[Poly], x: Fraction) -> int:
    signs = [v for v in (evaluate(p, x) for p in chain) if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _integer_roots(g: list[int]) -> list[int]:
    """Integer roots of a squarefree monic integer polynomial.

    Real roots are isolated with a Sturm chain and bisected down to unit
    intervals, so no factorization of the constant term is needed.
    """
    f = tuple(Fraction(c) for c in g)
    if deg(f) < 1:
        return []
    bound = Fraction(1 + max(abs(c) for c in g[:-1]))
    chain = _sturm_chain(f)
    out = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = _sign_changes(chain, a) - _sign_changes(chain, b)
        if n == 0:
            continue
        if b - a <= 2:
            # roots lie in (a, b]; at most three integers to test
            for r in range(int(a), int(b) + 2):
                if a < r <= b and evaluate(f, Fraction(r)) == 0:
                    out.append(r)
            continue
        mid = Fraction((a + b) // 2)
        stack += [(a, mid), (mid, b)]
    return sorted(set(out))


def _rational_roots(f: Poly) -> list[Fraction]:
    """Rational roots of a squarefree polynomial over Q."""
    f = monic(f)
    roots = set()
    while f and not f[0]:
        roots.add(Fraction(0))
        f = f[1:]
    if deg(f) >= 1:
        g, den = _integer_monic(f)
        roots.update(Fraction(r, den) for r in _integer_roots(g))
    return sorted(roots)


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _quartic_split(f: Poly) -> tuple[Poly, Poly] | None:
    """Split a monic rational quartic without rational roots into two quadratics.

    If g = (x^2 + p x + q)(x^2 + r x + s) over Z then y = q + s is an integer
    root of the resolvent cubic, and q, s and p, r are then roots of quadratics.
    """
    g, den = _integer_monic(monic(f))
    g0, g1, g2, g3 = g[0], g[1], g[2], g[3]
    # resolvent cubic y^3 - g2 y^2 + (g1 g3 - 4 g0) y - (g1^2 + g0 g3^2 - 4 g0 g2)
    res = [-(g1 * g1 + g0 * g3 * g3 - 4 * g0 * g2), g1 * g3 - 4 * g0, -g2, 1]
    sq = _squarefree_decomposition(tuple(Fraction(c) for c in res))
    cands = set()
    for part, _ in sq:
        pg, pden = _integer_monic(part)
        cands.update(Fraction(r, pden) for r in _integer_roots(pg))
    for y in sorted(cands):
        if y.denominator != 1:
            continue
        y = int(y)
        d1, d2 = _isqrt_exact(y * y - 4 * g0), _isqrt_exact(g3 * g3 - 4 * (g2 - y))
        if d1 is None or d2 is None or (y + d1) % 2 or (g3 + d2) % 2:
            continue
        q, s_ = (y + d1) // 2, (y - d1) // 2
        for p_, r_ in (((g3 + d2) // 2, (g3 - d2) // 2), ((g3 - d2) // 2, (g3 + d2) // 2)):
            if p_ * s_ + q * r_ == g1:
                d = Fraction(den)
                a = (Fraction(q) / d**2, Fraction(p_) / d, Fraction(1))
                b = (Fraction(s_) / d**2, Fraction(r_) / d, Fraction(1))
                return a, b
    return None


def _squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm (characteristic zero): pairs (squarefree factor, multiplicity)."""
    f = monic(f)
    out = []
    a = poly_gcd(f, derivative(f))
    b = divmod_poly(f, a)[0]
    c = divmod_poly(derivative(f), a)[0]
    d = sub(c, derivative(b))
    i = 1
    while deg(b) > 0:
        a = poly_gcd(b, d)
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = sub(c, derivative(b))
        if deg(a) > 0:
            out.append((a, i))
        i += 1
    return out


def _factor_squarefree_q(f: Poly) -> list[Poly] | None:
    out = []
    for r in _rational_roots(f):
        lin = (-r, Fraction(1))
        out.append(lin)
        f = divmod_poly(f, lin)[0]
    if deg(f) <= 0:
        return out
    if deg(f) in (2, 3):
        return out + [monic(f)]
    if deg(f) == 4:
        split = _quartic_split(f)
        return out + (list(split) if split else [monic(f)])
    return None


def _monic_polys(p: int, k: int):
    for tail in product(range(p), repeat=k):
        yield tuple(Fp(c, p) for c in tail) + (Fp(1, p),)


def factor(f: Poly, field: Field) -> list[tuple[Poly, int]] | None:
    """Monic irreducible factors with multiplicities, or None when out of reach.

    Over Q the degree of every squarefree part must be at most 4 after
    removing rational roots; over F_p the search is exhaustive.
    """
    if deg(f) < 1:
        return []
    f = monic(f)
    if field.is_rational:
        out = []
        for part, m in _squarefree_decomposition(f):
            facs = _factor_squarefree_q(part)
            if facs is None:
                return None
            out.extend((g, m) for g in facs)
        return sorted(out, key=lambda t: (deg(t[0]), t[1], [Fraction(c) for c in t[0]]))
    p = field.p
    out = []
    rem = f
    k = 1
    while 2 * k <= deg(rem):
        for g in _monic_polys(p, k):
            m = 0
            while True:
                q, r = divmod_poly(rem, g)
                if r:
                    break
                rem, m = q, m + 1
            if m:
                out.append((g, m))
        k += 1
    if deg(rem) > 0:
        found = [i for i, (g, _) in enumerate(out) if g == rem]
        if found:
            g, m = out[found[0]]
            out[found[0]] = (g, m + 1)
        else:
            out.append((rem, 1))
    return sorted(out, key=lambda t: (deg(t[0]), t[1], [int(c) for c in t[0]]))


def discriminant(f: Poly) -> Fraction:
    """Discriminant of a monic polynomial over Q via the Sylvester resultant."""
    f = monic(f)
    n = deg(f)
    if n < 1:
        return Fraction(1)
    if n == 1:
        return Fraction(1)
    fp = derivative(f)
    m = deg(fp)
    size = n + m
    rows = []
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in reversed(f)] + [Fraction(0)] * (size - n - 1 - i))
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in reversed(fp)] + [Fraction(0)] * (size - m - 1 - i))
    res = _det(rows)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def signature(f: Poly, field: Field) -> list | None:
    """Isomorphism invariant of F[x]/(f): sorted [degree, multiplicity, residue class].

    The residue class of an irreducible factor g is the squarefree part of
    disc(g) over Q (which pins down quadratic fields exactly) and ``None``
    over F_p, where the residue field is determined by its degree.
    """
    facs = factor(f, field)
    if facs is None:
        return None
    out = []
    for g, m in facs:
        cls = squarefree_part(discriminant(g)) if field.is_rational else None
        out.append([deg(g), m, cls])
    return sorted(out, key=lambda t: (t[0], t[1], t[2] if t[2] is not None else 0))
