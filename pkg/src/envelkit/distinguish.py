"""Fingerprints of Lie algebras and certificates that two enveloping algebras differ.

Every rule compares a quantity that an isomorphism U(L) -> U(H) must preserve.
Rules are applied in a fixed order and the first decisive difference wins.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Sequence

from . import poly
from .catalog import (
    NOT_ISOMORPHIC,
    CatalogId,
    construct,
    enumerate_ids,
    group_of,
    identify,
    iso_within_family,
    table_group,
)
from .errors import EnvelkitError
from .invariants import (
    build_Ltilde,
    build_Utilde,
    form_rank,
    index_and_semiradical,
    single_generator_presentation,
    utilde_signature,
)
from .liealg import LieAlgebra, abelian, quotient, semidirect
from .linalg import identity, mat_mul, mat_sub
from .scalars import QQ, render

# rule identifiers and the fact each one relies on
CITES = {
    "dim": "U(L) determines dim L",
    "dim_abelianization": "U(L) determines dim L/L'",
    "nilpotency_class": "U(L) determines nilpotency and the nilpotency class",
    "dim_derived_quotient": "U(L) determines L'/L''",
    "metabelian": "U(L) determines whether L is metabelian",
    "solvable": "U(L) determines whether L is solvable",
    "center_of_U": "Z(U(L)) lies in U(F(L)) in characteristic 0, so index 0 forces Z(U(L)) = F, "
                   "while Z(L) != 0 forces Z(U(L)) != F",
    "ltilde_summary": "L~(L') is determined by U(L) when L' is abelian",
    "utilde_dim": "U~(L') is determined by U(L) when L' is abelian",
    "utilde_signature": "U~(L') is determined by U(L); F[x]/(f) decomposes by the irreducible "
                        "factors of f (Chinese remainder theorem)",
    "quotient_L_mod_L2": "for L = L' x| <x>, U(L) determines L/L''",
    "metabelian_center_split": "in characteristic 0, metabelian L = (L' + Z(L)) x| <x> is determined by U(L)",
}
RULE_ORDER = tuple(CITES)


def _dims(series) -> list[int]:
    return [s.dim for s in series]


def _summary(lie: LieAlgebra) -> dict:
    return {
        "dim": lie.dim,
        "derived_dims": _dims(lie.derived_series()),
        "lcs_dims": _dims(lie.lower_central_series()),
        "center_dim": lie.center().dim,
    }


@dataclass
class Fingerprint:
    dim: int
    char: int
    derived_dims: list
    lcs_dims: list
    solvable: bool
    nilpotency_class: int | None
    dim_abelianization: int
    dim_derived_quotient: int
    metabelian: bool
    center_dim: int
    group: int | None = None
    index: int | None = None
    semiradical_dim: int | None = None
    ltilde: dict | None = None
    utilde_dim: int | None = None
    utilde_signature: list | None = None
    # the polynomial depends on the chosen generator, so it is not an invariant
    utilde_poly: str | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def center_of_U(self) -> str:
        if self.center_dim:
            return "nontrivial"
        if self.index == 0:
            return "trivial"
        return "unknown"


def fingerprint(lie: LieAlgebra) -> Fingerprint:
    cached = lie.__dict__.get("_cache_fingerprint")
    if cached is not None:
        return cached
    ds = lie.derived_series()
    lcs = lie.lower_central_series()
    solvable = ds[-1].is_zero()
    der = ds[1] if len(ds) > 1 else ds[0]
    d2 = ds[2].dim if len(ds) > 2 else der.dim
    fp = Fingerprint(
        dim=lie.dim,
        char=lie.field.char,
        derived_dims=_dims(ds),
        lcs_dims=_dims(lcs),
        solvable=solvable,
        nilpotency_class=lie.nilpotency_class(),
        dim_abelianization=lie.dim - der.dim,
        dim_derived_quotient=der.dim - d2,
        metabelian=lie.is_metabelian(),
        center_dim=lie.center().dim,
    )
    if lie.dim == 4 and solvable:
        fp.group = group_of(lie)
    if lie.field.char == 0:
        data = index_and_semiradical(lie)
        fp.index, fp.semiradical_dim = data.index, data.semiradical.dim
    if fp.metabelian:
        lt = build_Ltilde(lie, der)
        fp.ltilde = _summary(lt)
        ut = build_Utilde(lie, der)
        fp.utilde_dim = ut.dim
        fp.utilde_signature = utilde_signature(ut)
        sg = single_generator_presentation(lie, der)
        if sg is not None:
            fp.utilde_poly = poly.to_text(sg[1])
    lie.__dict__["_cache_fingerprint"] = fp
    return fp


@dataclass
class Step:
    invariant: str
    L: str
    H: str
    cite: str
    decisive: bool = False


@dataclass
class Certificate:
    verdict: str
    steps: list

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "steps": [asdict(s) for s in self.steps]}


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _quotient_id(lie: LieAlgebra) -> CatalogId | None:
    ds = lie.derived_series()
    l2 = ds[2] if len(ds) > 2 else lie.zero()
    q, _ = quotient(lie, l2)
    return identify(q)


def _split_id(lie: LieAlgebra) -> CatalogId | None:
    n = lie.derived_algebra() + lie.center()
    if lie.dim - n.dim != 1:
        return None
    return identify(lie)


def _distinct_ids(a: CatalogId | None, b: CatalogId | None) -> bool:
    if a is None or b is None:
        return False
    if a.family != b.family:
        return True
    return iso_within_family(a, b) == NOT_ISOMORPHIC


def certify_distinct_U(lie: LieAlgebra, other: LieAlgebra) -> Certificate:
    if lie.field != other.field:
        raise EnvelkitError(f"algebras over different fields: {lie.field} vs {other.field}")
    fa, fb = fingerprint(lie), fingerprint(other)
    char0 = lie.field.char == 0
    steps: list[Step] = []

    def step(name, va, vb, decisive=None):
        if decisive is None:
            decisive = va != vb
        steps.append(Step(name, _fmt(va), _fmt(vb), CITES[name], bool(decisive)))
        return decisive

    done = (
        step("dim", fa.dim, fb.dim)
        or step("dim_abelianization", fa.dim_abelianization, fb.dim_abelianization)
        or step("nilpotency_class", fa.nilpotency_class, fb.nilpotency_class)
        or step("dim_derived_quotient", fa.dim_derived_quotient, fb.dim_derived_quotient)
        or step("metabelian", fa.metabelian, fb.metabelian)
        or step("solvable", fa.solvable, fb.solvable)
    )
    if not done and char0:
        ca, cb = fa.center_of_U, fb.center_of_U
        done = step("center_of_U", ca, cb, {ca, cb} == {"trivial", "nontrivial"})
    if not done and fa.metabelian and fb.metabelian:
        done = (
            step("ltilde_summary", fa.ltilde, fb.ltilde)
            or step("utilde_dim", fa.utilde_dim, fb.utilde_dim)
        )
        if not done and fa.utilde_signature is not None and fb.utilde_signature is not None:
            done = step("utilde_signature", fa.utilde_signature, fb.utilde_signature)
    if not done and fa.dim_abelianization == 1 and fb.dim_abelianization == 1:
        qa, qb = _quotient_id(lie), _quotient_id(other)
        done = step("quotient_L_mod_L2", qa, qb, _distinct_ids(qa, qb))
    if not done and char0 and fa.metabelian and fb.metabelian:
        sa, sb = _split_id(lie), _split_id(other)
        if sa is not None and sb is not None:
            done = step("metabelian_center_split", sa, sb, _distinct_ids(sa, sb))
    return Certificate("distinct_U" if done else "inconclusive", steps)


# -- reproduction suite --------------------------------------------------------------------

DEFAULT_GRID = (-2, -1, 0, 1, 2, 3)


def _item(name, passed, expected, computed) -> dict:
    return {"name": name, "passed": bool(passed), "expected": expected, "computed": computed}


def _matrix_text(m) -> str:
    return "[" + ", ".join("[" + ", ".join(render(x) for x in r) + "]" for r in m) + "]"


def _display_ltilde(b, square_minus: bool) -> LieAlgebra:
    """The 4-dimensional algebra on (x2, x3, a1, a2) with the displayed brackets."""
    t = {(3, 1): {2: 1}, (4, 1): {1: b}, (4, 2): {2: b}}
    t[(3, 2)] = {1: b, 2: 1} if square_minus else {1: b}
    return LieAlgebra.from_table(4, QQ, t)


def reproduce_M3_0() -> list[dict]:
    lie = construct("M3[0]")
    m = lie.derived_algebra()
    t = lie.adjoint_on(lie.basis_vector(3), m)
    sg = single_generator_presentation(lie, m)
    ut = build_Utilde(lie, m)
    lt = build_Ltilde(lie, m)
    ref = semidirect(abelian(2, QQ), abelian(1, QQ), [identity(2, QQ)])
    return [
        _item("M3[0]: ad x4 on L'", t == identity(2, QQ), "[[1, 0], [0, 1]]", _matrix_text(t)),
        _item("M3[0]: U~ presentation", sg is not None and poly.to_text(sg[1]) == "x^2 - x" and ut.dim == 2,
              "x^2 - x, dim 2", f"{poly.to_text(sg[1]) if sg else None}, dim {ut.dim}"),
        _item("M3[0]: L~ = <x1,x3> x| <x4>", lt.sc == ref.sc, "identity action, dim 3",
              f"dim {lt.dim}, {'identity action' if lt.sc == ref.sc else lt.sc}"),
    ]


def _ltilde_with_display_basis(lie: LieAlgebra, square_minus: bool) -> LieAlgebra:
    m = lie.derived_algebra()
    t = lie.adjoint_on(lie.basis_vector(3), m)
    t2 = mat_mul(t, t)
    second = mat_sub(t2, t) if square_minus else t2
    return build_Ltilde(lie, m, basis=[t, second])


def reproduce_M6(bs: Sequence = (0, 1, 2, 3, -1)) -> list[dict]:
    out = []
    for b in bs:
        lie = construct(CatalogId("M6", (0, b)))
        m = lie.derived_algebra()
        f = poly.to_text(single_generator_presentation(lie, m)[1])
        ut = build_Utilde(lie, m)
        if b == 0:
            exp = "x^2 - x"
            out.append(_item(f"M6[0,{b}]: U~", f == exp and ut.dim == 2, f"{exp}, dim 2", f"{f}, dim {ut.dim}"))
            continue
        exp = poly.to_text((QQ(0), QQ(-b), QQ(-1), QQ(1)))
        out.append(_item(f"M6[0,{b}]: U~", f == exp and ut.dim == 3, f"{exp}, dim 3", f"{f}, dim {ut.dim}"))
        lt = _ltilde_with_display_basis(lie, True)
        ref = _display_ltilde(QQ(b), True)
        out.append(_item(f"M6[0,{b}]: L~ brackets", lt.sc == ref.sc, _fmt_sc(ref), _fmt_sc(lt)))
    return out


def reproduce_M7(bs: Sequence = (0, 1, 2, 4)) -> list[dict]:
    out = []
    for b in bs:
        lie = construct(CatalogId("M7", (0, b)))
        m = lie.derived_algebra()
        f = poly.to_text(single_generator_presentation(lie, m)[1])
        ut = build_Utilde(lie, m)
        if b == 0:
            exp = "x^2"
            out.append(_item(f"M7[0,{b}]: U~", f == exp and ut.dim == 2, f"{exp}, dim 2", f"{f}, dim {ut.dim}"))
            continue
        exp = poly.to_text((QQ(0), QQ(-b), QQ(0), QQ(1)))
        out.append(_item(f"M7[0,{b}]: U~", f == exp and ut.dim == 3, f"{exp}, dim 3", f"{f}, dim {ut.dim}"))
        lt = _ltilde_with_display_basis(lie, False)
        ref = _display_ltilde(QQ(b), False)
        out.append(_item(f"M7[0,{b}]: L~ brackets", lt.sc == ref.sc, _fmt_sc(ref), _fmt_sc(lt)))
    return out


def _fmt_sc(lie: LieAlgebra) -> str:
    parts = []
    for (i, j), vec in sorted(lie.sc.items()):
        rhs = " + ".join(f"{render(c)}*{lie.labels[k]}" for k, c in sorted(vec.items()))
        parts.append(f"[{lie.labels[i]},{lie.labels[j]}]={rhs}")
    return "; ".join(parts)


def _cubic(b) -> poly.Poly:
    return (QQ(0), -QQ(b), QQ(0), QQ(1))


def cubic_signature(b) -> list:
    """Signature of F[x]/(x^3 - b x) over Q."""
    return poly.signature(_cubic(b), QQ)


def reproduce_cubic_algebras(pairs=((1, 4, True), (1, 2, False), (2, 8, True))) -> list[dict]:
    out = []
    for b, c, same in pairs:
        sb, sc = cubic_signature(b), cubic_signature(c)
        ub = fingerprint(construct(CatalogId("M7", (0, b)))).utilde_signature
        uc = fingerprint(construct(CatalogId("M7", (0, c)))).utilde_signature
        ok = (sb == sc) == same and ub == sb and uc == sc
        name = f"{poly.to_text(_cubic(b))} vs {poly.to_text(_cubic(c))}"
        out.append(_item(name, ok, "same signature" if same else "different signatures",
                         f"{sb} vs {sc}"))
    return out


PAPER_WITNESSES = {"M8": (0, 1, 0, 1), "M9[1]": (1, 1, 0, 0), "M13[0]": (0, 1, 0, 0)}


def reproduce_frobenius() -> list[dict]:
    out = []
    for name, f in PAPER_WITNESSES.items():
        lie = construct(name)
        data = index_and_semiradical(lie)
        r = form_rank(lie, f)
        ok = data.index == 0 and data.semiradical.dim == 0 and r == 4
        out.append(_item(f"{name}: index and semiradical", ok, "index 0, F(L) = 0, B_f rank 4",
                         f"index {data.index}, dim F(L) = {data.semiradical.dim}, B_f rank {r}"))
    return out


def reproduce_groups(ids: Sequence[CatalogId]) -> dict:
    bad = [str(c) for c in ids if c.dim == 4 and group_of(construct(c)) != table_group(c)]
    total = sum(1 for c in ids if c.dim == 4)
    return _item("group partition", not bad, f"{total}/{total} agree", f"{total - len(bad)}/{total} agree"
                 + (f"; mismatches {bad}" if bad else ""))


def _fp_of(cid: CatalogId) -> Fingerprint:
    return fingerprint(construct(cid))


def pipeline(ids: Sequence[CatalogId], jobs: int = 1) -> dict:
    """Certify every pair that the catalog says is non-isomorphic."""
    four = [c for c in ids if c.dim == 4]
    algs = {c: construct(c) for c in four}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for c, fp in zip(four, ex.map(_fp_of, four)):
                algs[c].__dict__["_cache_fingerprint"] = fp
    stats = {"cross_group": [0, 0], "within_group": [0, 0]}
    failures = []
    for a, b in combinations(four, 2):
        if a.family == b.family and iso_within_family(a, b) != NOT_ISOMORPHIC:
            continue
        kind = "cross_group" if table_group(a) != table_group(b) else "within_group"
        stats[kind][0] += 1
        cert = certify_distinct_U(algs[a], algs[b])
        if cert.verdict == "distinct_U":
            stats[kind][1] += 1
        else:
            failures.append(f"{a} vs {b}")
    return {"stats": stats, "failures": failures}


def paper_repro(grid: Sequence | None = None, jobs: int = 1) -> dict:
    start = time.perf_counter()
    grid = list(DEFAULT_GRID if grid is None else grid)
    ids = enumerate_ids(QQ, grid)
    items = []
    items += reproduce_M3_0()
    items += reproduce_M6()
    items += reproduce_M7()
    items += reproduce_cubic_algebras()
    items += reproduce_frobenius()
    items.append(reproduce_groups(ids))
    pl = pipeline(ids, jobs)
    for kind in ("cross_group", "within_group"):
        total, ok = pl["stats"][kind]
        items.append(_item(f"{kind.replace('_', '-')} pairs certified distinct", total == ok,
                           f"{total}/{total}", f"{ok}/{total}"))
    if pl["failures"]:
        items.append(_item("uncertified pairs", False, [], pl["failures"]))
    elapsed = time.perf_counter() - start
    return {
        "schema": 1,
        "command": "paper-repro",
        "grid": [render(QQ(g)) for g in grid],
        "items": items,
        "notes": ["M10 is defined only in characteristic 2 and is not part of the rational suite"],
        "summary": {"passed": sum(i["passed"] for i in items), "failed": sum(not i["passed"] for i in items),
                    "seconds": round(elapsed, 3)},
    }


__all__ = [
    "Fingerprint",
    "Certificate",
    "Step",
    "CITES",
    "fingerprint",
    "certify_distinct_U",
    "paper_repro",
    "pipeline",
    "cubic_signature",
    "PAPER_WITNESSES",
]
