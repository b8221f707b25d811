import random
from fractions import Fraction

import pytest

from envelkit import poly
from envelkit.catalog import construct, table_group
from envelkit.errors import HypothesisNotMet, NotAbelianIdeal, NotCodimOne, PositiveCharacteristic
from envelkit.invariants import (
    CharacterIdeal,
    abelian_complement,
    ad_generated_algebra,
    build_Ltilde,
    build_Utilde,
    center_UL_is_trivial,
    check_corollary2_bound,
    check_semidirect_criterion,
    form_rank,
    index_and_semiradical,
    kernel_identity_holds,
    min_poly_no_constant,
    semiradical_by_sampling,
    single_generator_presentation,
)
from envelkit.liealg import abelian, semidirect
from envelkit.linalg import identity, mat_mul
from envelkit.scalars import QQ, Field
from tests.conftest import small_catalog

P = poly.to_text


def mat(rows):
    return tuple(tuple(Fraction(c) for c in r) for r in rows)


def x(lie, i):
    return lie.basis_vector(i - 1)


def test_ad_generated_algebra_examples():
    m3 = construct("M3[0]")
    a = ad_generated_algebra(m3, m3.span([x(m3, 1), x(m3, 3)]))
    assert a.dim == 1 and identity(2, QQ) in a
    ab = abelian(3, QQ)
    assert ad_generated_algebra(ab, ab.span([x(ab, 1)])).dim == 0
    for b in (1, 2, -3):
        m7 = construct(f"M7[0,{b}]")
        a = ad_generated_algebra(m7, m7.derived_algebra())
        t = mat([[0, b], [1, 0]])
        assert a.dim == 2 and t in a and mat([[b, 0], [0, b]]) in a


def test_ltilde_examples():
    m7 = construct("M7[0,0]")
    lt = build_Ltilde(m7, m7.derived_algebra())
    t = m7.adjoint_on(x(m7, 4), m7.derived_algebra())
    ref = semidirect(abelian(2, QQ), abelian(1, QQ), [t])
    assert lt.dim == 3 and lt.sc == ref.sc
    # central M: A = 0 and L~ = M
    lie = semidirect(abelian(1, QQ), construct("L2"), [mat([[0]])] * 3)
    z = lie.span([x(lie, 1)])
    assert build_Ltilde(lie, z).dim == 1


@pytest.mark.parametrize("b", [1, 2, 3, -1])
def test_ltilde_m6_brackets(b):
    lie = construct(f"M6[0,{b}]")
    m = lie.derived_algebra()
    t = lie.adjoint_on(x(lie, 4), m)
    t2 = mat_mul(t, t)
    second = tuple(tuple(p - q for p, q in zip(r, s)) for r, s in zip(t2, t))
    lt = build_Ltilde(lie, m, basis=[t, second])
    # basis order (x2, x3, a1, a2) with a1 = ad x4, a2 = ad x4^2 - ad x4
    want = {(0, 2): {1: -1}, (1, 2): {0: -b, 1: -1}, (0, 3): {0: -b}, (1, 3): {1: -b}}
    assert lt.sc == want


def test_utilde_presentations():
    m3 = construct("M3[0]")
    sg = single_generator_presentation(m3, m3.derived_algebra())
    assert P(sg[1]) == "x^2 - x" and build_Utilde(m3, m3.derived_algebra()).dim == 2
    for b in (1, 2, 3):
        m6 = construct(f"M6[0,{b}]")
        assert P(single_generator_presentation(m6, m6.derived_algebra())[1]) == P(
            (Fraction(0), Fraction(-b), Fraction(-1), Fraction(1)))
        m7 = construct(f"M7[0,{b}]")
        assert P(single_generator_presentation(m7, m7.derived_algebra())[1]) == P(
            (Fraction(0), Fraction(-b), Fraction(0), Fraction(1)))
        assert build_Utilde(m7, m7.derived_algebra()).dim == 3
    m6 = construct("M6[0,0]")
    xv, f = single_generator_presentation(m6, m6.derived_algebra())
    assert xv == x(m6, 4) and P(f) == "x^2 - x"
    m7 = construct("M7[0,0]")
    assert P(single_generator_presentation(m7, m7.derived_algebra())[1]) == "x^2"
    m8 = construct("M8")
    assert m8.derived_algebra() == m8.span([x(m8, 2), x(m8, 4)])
    assert single_generator_presentation(m8, m8.derived_algebra()) is None


def test_min_poly_examples():
    assert P(min_poly_no_constant(identity(2, QQ), QQ)) == "x^2 - x"
    assert P(min_poly_no_constant(mat([[0, 0], [0, 0]]), QQ)) == "x"
    assert P(min_poly_no_constant(mat([[0, 5], [1, 0]]), QQ)) == "x^3 - 5*x"


def test_semidirect_criterion_examples():
    m3 = construct("M3[0]")
    assert check_semidirect_criterion(m3, m3.derived_algebra())
    assert not check_semidirect_criterion(construct("M6[0,2]"), construct("M6[0,2]").derived_algebra())
    m8 = construct("M8")
    with pytest.raises(NotCodimOne):
        check_semidirect_criterion(m8, m8.derived_algebra())
    # ad x = 0 on M: criterion holds with lambda = 0
    lie = semidirect(abelian(1, QQ), abelian(1, QQ), [mat([[0]])])
    assert lie.is_abelian()


def test_corollary2_examples():
    for name in ("M8", "M9[1]", "M13[0]"):
        lie = construct(name)
        assert check_corollary2_bound(lie, lie.derived_algebra())
    m7 = construct("M7[0,2]")
    assert not check_corollary2_bound(m7, m7.derived_algebra())
    # one-dimensional M with a faithful action: bound 1 met
    aff = semidirect(abelian(1, QQ), abelian(1, QQ), [mat([[1]])])
    assert check_corollary2_bound(aff, aff.derived_algebra())
    l2 = construct("L2")
    assert not check_corollary2_bound(l2, l2.derived_algebra())
    m12 = construct("M12")
    with pytest.raises(HypothesisNotMet):
        check_corollary2_bound(m12, m12.derived_algebra())
    m13 = construct("M13[0]")
    comp = abelian_complement(m13, m13.derived_algebra())
    assert comp is not None and len(comp) == 2


def test_not_abelian_ideal():
    m12 = construct("M12")
    with pytest.raises(NotAbelianIdeal):
        build_Utilde(m12, m12.derived_algebra())


def _metabelian():
    return [c for c in small_catalog() if construct(c).is_metabelian()]


def _abelian_ideals(lie):
    out = [lie.derived_algebra(), lie.center()]
    for s in lie.derived_series()[1:] + lie.lower_central_series()[1:]:
        if lie.is_abelian_subspace(s):
            out.append(s)
    return out


@pytest.mark.parametrize("cid", _metabelian(), ids=str)
def test_dimension_relations(cid):
    lie = construct(cid)
    for m in _abelian_ideals(lie):
        a = ad_generated_algebra(lie, m)
        assert build_Ltilde(lie, m).dim == m.dim + a.dim
        ut = build_Utilde(lie, m)
        assert ut.dim == a.dim + 1 and ut.is_commutative() == a.is_commutative()
        assert build_Ltilde(lie, m).validate() is None


@pytest.mark.parametrize("cid", _metabelian(), ids=str)
def test_single_generator_matches_regular_representation(cid):
    lie = construct(cid)
    m = lie.derived_algebra()
    sg = single_generator_presentation(lie, m)
    if sg is None:
        return
    xv, f = sg
    ut = build_Utilde(lie, m)
    t = lie.adjoint_on(xv, m)
    n = m.dim
    gen = tuple(tuple(Fraction(0) if i == 0 or j == 0 else t[i - 1][j - 1] for j in range(n + 1))
                for i in range(n + 1))
    assert gen in ut
    assert poly.deg(f) == ut.dim
    # diag(0, T) has minimal polynomial lcm(x, mp(T)) = f, and so does its regular representation
    assert poly.min_poly(gen, QQ) == f
    left = [tuple(ut.coordinates(mat_mul(gen, b))) for b in ut.basis]
    assert poly.min_poly(tuple(zip(*left)), QQ) == f


@pytest.mark.parametrize("cid", _metabelian(), ids=str)
def test_semidirect_criterion_agrees_with_utilde(cid):
    lie = construct(cid)
    m = lie.derived_algebra()
    if single_generator_presentation(lie, m) is None:
        return
    a = ad_generated_algebra(lie, m)
    crit = check_semidirect_criterion(lie, m)
    assert crit == (a.dim == 1) == (build_Ltilde(lie, m).dim == m.dim + 1)


@pytest.mark.parametrize("cid", _metabelian(), ids=str)
def test_character_independence(cid):
    lie = construct(cid)
    m = lie.derived_algebra()
    # characters vanish on L' = M: pick coordinates on a complement
    comp = m.complement_indices()
    rng = random.Random(str(cid))
    base_l, base_u = build_Ltilde(lie, m), build_Utilde(lie, m)
    for _ in range(3):
        f = [Fraction(0)] * lie.dim
        for i in comp:
            f[i] = Fraction(rng.randint(-5, 5))
        # make the functional vanish on M itself
        chi = _vanishing_on(lie, m, f)
        assert build_Ltilde(lie, m, chi).sc == base_l.sc
        assert build_Utilde(lie, m, chi).table == base_u.table


def _vanishing_on(lie, m, f):
    # subtract a combination of coordinate functionals so that f kills m; M is L' here
    for b in m.basis:
        piv = next(i for i, c in enumerate(b) if c)
        val = sum(a * c for a, c in zip(f, b))
        f[piv] -= val / b[piv]
    chi = CharacterIdeal(tuple(f))
    chi.check(lie, m)
    return chi


def test_frobenius_examples():
    ab = abelian(3, QQ)
    data = index_and_semiradical(ab)
    assert data.index == 3 and data.semiradical == ab.full()
    m8 = construct("M8")
    data = index_and_semiradical(m8)
    assert data.index == 0 and data.semiradical.is_zero()
    assert form_rank(m8, (0, 1, 0, 1)) == 4
    assert center_UL_is_trivial(construct("M9[1]")) is not None
    assert center_UL_is_trivial(construct("M13[0]")) is not None
    assert form_rank(construct("M13[0]"), (0, 1, 0, 0)) == 4
    assert form_rank(construct("M9[1]"), (1, 1, 0, 0)) == 4
    assert center_UL_is_trivial(ab) is None


@pytest.mark.parametrize("b", [1, 2, -3])
def test_semiradical_inside_derived_plus_center(b):
    lie = construct(f"M7[0,{b}]")
    n = lie.derived_algebra() + lie.center()
    assert n.dim == lie.dim - 1
    assert index_and_semiradical(lie).semiradical <= n


def test_semiradical_inclusion_needs_codim_one():
    # M7[0,0]: L' + Z(L) has codimension 2 and F(L) is strictly bigger
    lie = construct("M7[0,0]")
    n = lie.derived_algebra() + lie.center()
    fr = index_and_semiradical(lie).semiradical
    assert n.dim == 2 and fr == lie.span([x(lie, 1), x(lie, 2), x(lie, 3)])


@pytest.mark.parametrize("cid", [c for c in small_catalog()], ids=str)
def test_frobenius_properties(cid):
    lie = construct(cid)
    data = index_and_semiradical(lie)
    assert data.index == lie.dim - data.generic_rank
    assert lie.center() <= data.semiradical
    assert lie.product_space(data.semiradical, data.semiradical) <= data.semiradical
    assert kernel_identity_holds(lie)
    span, regular, inside = semiradical_by_sampling(lie, samples=200, seed=0)
    assert regular > 0 and inside and span == data.semiradical
    if data.witness is not None:
        assert form_rank(lie, data.witness) == data.generic_rank


def test_positive_characteristic():
    lie = construct("M9[3]@F5")
    with pytest.raises(PositiveCharacteristic):
        index_and_semiradical(lie)
    lt = build_Ltilde(lie, lie.derived_algebra())
    assert lt.field == Field(5) and lt.validate() is None
