import json
import random
from fractions import Fraction

import pytest

from envelkit.catalog import construct
from envelkit.distinguish import CITES, certify_distinct_U, fingerprint, paper_repro, pipeline
from envelkit.catalog import enumerate_ids
from envelkit.liealg import LieAlgebra, abelian
from envelkit.scalars import QQ, Field
from tests.conftest import small_catalog


def conjugate(lie, rng):
    """A copy of ``lie`` in a random basis, with provenance and caches dropped."""
    d = lie.dim
    while True:
        p = tuple(tuple(lie.field(rng.randint(-3, 3)) for _ in range(d)) for _ in range(d))
        try:
            other = lie.change_basis(p)
        except ZeroDivisionError:
            continue
        return LieAlgebra(other.dim, other.field, other.sc)


def test_fingerprint_examples():
    m4, m5 = fingerprint(construct("M4")), fingerprint(construct("M5"))
    assert m4.nilpotency_class is None and m5.nilpotency_class == 2
    ab = fingerprint(abelian(3, QQ))
    assert ab.derived_dims == [3, 0] and ab.index == 3 and ab.semiradical_dim == 3
    assert fingerprint(construct("M7[0,2]")).utilde_signature == [[1, 1, 1], [2, 1, 2]]
    assert fingerprint(construct("M7[0,1]")).utilde_signature == [[1, 1, 1]] * 3
    assert fingerprint(construct("M7[0,2]")).utilde_poly == "x^3 - 2*x"


def test_fingerprint_in_positive_characteristic():
    fp = fingerprint(construct("M9[3]@F5"))
    assert fp.index is None and fp.semiradical_dim is None
    assert fp.group == 6 and fp.utilde_dim is not None


def test_certificate_examples():
    cert = certify_distinct_U(construct("M3[0]"), construct("M6[0,0]"))
    assert cert.verdict == "distinct_U"
    last = cert.steps[-1]
    assert last.invariant == "ltilde_summary"
    assert json.loads(last.L)["center_dim"] != json.loads(last.H)["center_dim"]
    cert = certify_distinct_U(construct("M4"), construct("M5"))
    assert cert.verdict == "distinct_U" and cert.steps[-1].invariant == "nilpotency_class"
    assert (cert.steps[-1].L, cert.steps[-1].H) == ("none", "2")
    cert = certify_distinct_U(construct("M7[0,1]"), construct("M7[0,2]"))
    assert cert.steps[-1].invariant == "utilde_signature"


@pytest.mark.parametrize("name", ["M2", "M8", "M12", "L3[2]"])
def test_same_algebra_is_inconclusive(name):
    cert = certify_distinct_U(construct(name), construct(name))
    assert cert.verdict == "inconclusive"
    assert all(s.L == s.H and not s.decisive for s in cert.steps)


def test_certificate_json():
    cert = certify_distinct_U(construct("M4"), construct("M5"))
    data = json.loads(json.dumps(cert.to_dict()))
    assert data["verdict"] == "distinct_U"
    assert set(data["steps"][0]) == {"invariant", "L", "H", "cite", "decisive"}


def test_certificate_structure_on_grid():
    ids = [c for c in enumerate_ids(QQ, (-1, 0, 2)) if c.dim == 4]
    algs = [construct(c) for c in ids]
    rng = random.Random(0)
    for _ in range(200):
        a, b = rng.sample(algs, 2)
        cert = certify_distinct_U(a, b)
        for s in cert.steps:
            assert s.cite == CITES[s.invariant]
        decisive = [s for s in cert.steps if s.decisive]
        if cert.verdict == "distinct_U":
            assert len(decisive) == 1 and decisive[0] is cert.steps[-1]
            assert decisive[0].L != decisive[0].H
        else:
            assert not decisive


@pytest.mark.parametrize("c", small_catalog(), ids=str)
def test_fingerprint_basis_invariance_and_soundness(c):
    lie = construct(c)
    fp = fingerprint(lie)
    rng = random.Random(str(c))
    for k in range(20):
        other = conjugate(lie, rng)
        assert fingerprint(other) == fp
        if k < 3:
            assert certify_distinct_U(lie, other).verdict == "inconclusive"


@pytest.mark.parametrize("c", enumerate_ids(Field(5), (0, 1, 2, 3)), ids=str)
def test_soundness_over_f5(c):
    lie = construct(c)
    other = conjugate(lie, random.Random(1))
    assert fingerprint(other) == fingerprint(lie)
    assert certify_distinct_U(lie, other).verdict == "inconclusive"


def test_pipeline_on_small_grid():
    res = pipeline(enumerate_ids(QQ, (1, 2)))
    assert res["failures"] == []
    for total, ok in res["stats"].values():
        assert total == ok and total > 0


def test_pipeline_parallel_matches_serial():
    ids = enumerate_ids(QQ, (-1, 2))
    assert pipeline(ids, jobs=2) == pipeline(ids, jobs=1)


def test_paper_repro_reduced_grid():
    rep = paper_repro([1])
    assert rep["schema"] == 1
    assert rep["summary"]["failed"] == 0
    names = [i["name"] for i in rep["items"]]
    assert "group partition" in names and "M8: index and semiradical" in names
