import random
from fractions import Fraction
from itertools import product

import pytest

from envelkit.catalog import construct
from envelkit.errors import DegreeOverflow, MixedParents, NotAbelianIdeal, NotInMU, ParseError
from envelkit.linalg import Subspace, mat_mul, mat_vec
from envelkit.pbw import (
    AdaptedOrder,
    PbwElement,
    augmentation,
    commutator,
    in_M_omega,
    in_MU,
    parse,
    pbw_mul,
    reduce_mod_M_omega,
    to_text,
)
from tests.conftest import small_catalog

B = 3


def gens(lie):
    return [PbwElement.gen(lie, i) for i in range(lie.dim)]


@pytest.fixture
def m7():
    return construct(f"M7[0,{B}]")


def test_single_rewrite(m7):
    x1, x2, x3, x4 = gens(m7)
    assert x4 * x2 == x2 * x4 + x3
    assert x2 * x4 == PbwElement.monomial(m7, (0, 1, 0, 1))
    assert PbwElement.one(m7) * (x1 + x4) == x1 + x4


def test_two_passes(m7):
    x1, x2, x3, x4 = gens(m7)
    assert (x4 * x4) * x2 == x2 * x4**2 + 2 * x3 * x4 + B * x2


def test_commutator_and_reduction(m7):
    x1, x2, x3, x4 = gens(m7)
    c = commutator(x4**2, x3)
    # b x2 x4 + b x4 x2 before straightening
    assert c == B * x2 * x4 + B * (x4 * x2)
    assert c == 2 * B * x2 * x4 + B * x3
    m = m7.derived_algebra()
    assert reduce_mod_M_omega(c, m) == m7.vector([0, 0, B, 0])
    assert reduce_mod_M_omega(commutator(x4**2, x2), m) == m7.vector([0, B, 0, 0])


def test_m6_reduction():
    for b in (1, 2, -1):
        lie = construct(f"M6[0,{b}]")
        x1, x2, x3, x4 = gens(lie)
        red = reduce_mod_M_omega(commutator(x4**2 - x4, x2), lie.derived_algebra())
        assert red == lie.vector([0, b, 0, 0])


def test_reduce_identity_on_m(m7):
    m = m7.derived_algebra()
    for v in m.basis:
        assert reduce_mod_M_omega(PbwElement.from_vector(m7, v), m) == v
    with pytest.raises(NotInMU):
        reduce_mod_M_omega(PbwElement.gen(m7, 3), m)


def test_membership_examples(m7):
    x1, x2, x3, x4 = gens(m7)
    m = m7.derived_algebra()
    assert in_MU(x2 * x4, m) and in_M_omega(x2 * x4, m)
    assert in_MU(x2, m) and not in_M_omega(x2, m)
    assert not in_MU(x4**2, m)
    assert not in_MU(PbwElement.one(m7), m)


def test_augmentation_and_commutator_of_generators():
    lie = construct("M9[1]")
    x1, x2, x3, x4 = gens(lie)
    assert augmentation(1 + 3 * x1 + x1 * x2) == 1
    for i, j in product(range(4), repeat=2):
        c = commutator(gens(lie)[i], gens(lie)[j])
        assert c == PbwElement.from_vector(lie, lie.basis_bracket(i, j))


def test_errors(m7):
    other = construct("M5")
    with pytest.raises(MixedParents):
        PbwElement.gen(m7, 0) * PbwElement.gen(other, 0)
    with pytest.raises(DegreeOverflow):
        pbw_mul(PbwElement.gen(m7, 3) ** 3, PbwElement.gen(m7, 3) ** 3, cap=5)
    with pytest.raises(NotAbelianIdeal):
        AdaptedOrder(m7, m7.span([m7.basis_vector(3)]))


def test_text_round_trip(m7):
    u = parse(m7, "3*x1^2*x4 + 1/2*x2 - 1")
    assert to_text(u) == "3*x1^2*x4 + 1/2*x2 - 1"
    assert parse(m7, to_text(u)) == u
    assert parse(m7, "x4*x2") == parse(m7, "x2*x4 + x3")
    for bad in ("x9", "3**x1", "x1^-1", "1/0*x1"):
        with pytest.raises(ParseError):
            parse(m7, bad)


# -- properties --------------------------------------------------------------------------


def _representatives():
    seen, out = set(), []
    for cid in small_catalog():
        if cid.family not in seen:
            seen.add(cid.family)
            out.append(cid)
    return out


def random_element(lie, rng, max_deg=3, terms=2):
    out = PbwElement(lie)
    for _ in range(rng.randint(1, terms)):
        deg = rng.randint(0, max_deg)
        exps = [0] * lie.dim
        for _ in range(deg):
            exps[rng.randrange(lie.dim)] += 1
        out = out + PbwElement.monomial(lie, exps, rng.randint(-3, 3) or 1)
    return out


@pytest.mark.parametrize("cid", _representatives(), ids=str)
def test_associativity_and_unit(cid):
    lie = construct(cid)
    rng = random.Random(str(cid))
    one = PbwElement.one(lie)
    for _ in range(500):
        u, v, w = (random_element(lie, rng) for _ in range(3))
        uv = u * v
        assert uv * w == u * (v * w)
        assert one * u == u == u * one
        assert augmentation(uv) == augmentation(u) * augmentation(v)
        # straightening never raises the total degree
        if u and v:
            assert uv.degree() <= u.degree() + v.degree()


def _monomials(d, max_deg, min_deg=0):
    return [e for e in product(range(max_deg + 1), repeat=d) if min_deg <= sum(e) <= max_deg]


def _metabelian():
    return [cid for cid in small_catalog() if construct(cid).is_metabelian()]


def check_membership_oracle(lie):
    """MU(L) and M omega(L) up to degree 4 against spans of explicit products m * u."""
    m = lie.derived_algebra()
    d, k = lie.dim, m.dim
    mons4 = _monomials(d, 4)
    index = {e: i for i, e in enumerate(mons4)}

    def vec(u):
        out = [Fraction(0)] * len(mons4)
        for e, c in u.terms.items():
            out[index[e]] = c
        return out

    def span_of(min_u):
        rows = []
        for b in m.basis:
            mb = PbwElement.from_vector(lie, b)
            for e in _monomials(d, 3, min_u):
                rows.append(vec(mb * PbwElement.monomial(lie, e)))
        return Subspace(lie.field, len(mons4), rows)

    s_mu, s_mo = span_of(0), span_of(1)
    # characterized dimensions: monomials in the adapted order with an M-variable
    with_m = [e for e in mons4 if any(e[:k])]
    assert s_mu.dim == len(with_m)
    assert s_mo.dim == sum(1 for e in with_m if sum(e) >= 2)
    rng = random.Random(7)
    probes = [PbwElement.monomial(lie, e) for e in mons4]
    for _ in range(40):
        probes.append(random_element(lie, rng, max_deg=4, terms=3))
    for u in probes:
        assert in_MU(u, m) == (tuple(vec(u)) in s_mu)
        assert in_M_omega(u, m) == (tuple(vec(u)) in s_mo)


@pytest.mark.parametrize("cid", _metabelian(), ids=str)
def test_membership_characterization_oracle(cid):
    check_membership_oracle(construct(cid))


@pytest.mark.parametrize("name", ["M7[0,1]", "M13[0]", "M3[2]"])
def test_membership_oracle_non_coordinate_ideal(name):
    # columns of P are the new basis vectors; L' is no longer a coordinate subspace
    p = ((1, 0, 0, 0), (1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1))
    lie = construct(name).change_basis(tuple(tuple(Fraction(c) for c in r) for r in p))
    m = lie.derived_algebra()
    assert any(sum(1 for c in b if c) > 1 for b in m.basis)
    check_membership_oracle(lie)


@pytest.mark.parametrize("cid", _metabelian(), ids=str)
def test_beta_matches_operators(cid):
    """[w, m] mod M omega(L) equals the product of ad operators, for PBW monomials w of degree <= 3."""
    lie = construct(cid)
    m = lie.derived_algebra()
    ads = [lie.adjoint_on(lie.basis_vector(i), m) for i in range(lie.dim)]
    for e in _monomials(lie.dim, 3, 1):
        w = PbwElement.monomial(lie, e)
        op = None
        for i, a in enumerate(e):
            for _ in range(a):
                op = ads[i] if op is None else mat_mul(op, ads[i])
        for j, b in enumerate(m.basis):
            got = reduce_mod_M_omega(commutator(w, PbwElement.from_vector(lie, b)), m)
            coords = mat_vec(op, [Fraction(int(i == j)) for i in range(m.dim)])
            want = tuple(sum((c * v[t] for c, v in zip(coords, m.basis)), Fraction(0)) for t in range(lie.dim))
            assert got == want
