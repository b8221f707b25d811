"""de Graaf's solvable Lie algebras of dimension 3 and 4 as executable data.

Each family is a function of its parameters returning 1-based bracket tables.
Ids print as ``M7[0,2]``, ``L4[-1]``, ``M9[3]@F5``; the ``@Q`` suffix is
optional on input and omitted on output.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import BadParameter, DifferentFamilies, MixedFields, NotDim4, NotSolvable, ParseError, WrongCharacteristic
from .liealg import LieAlgebra
from .poly import min_poly
from .scalars import QQ, Field, Fp, Scalar, is_square, render, solve_scaling

ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not_isomorphic"
UNDECIDED = "undecided"

# number of parameters per family
ARITY = {
    "L1": 0, "L2": 0, "L3": 1, "L4": 1,
    "M1": 0, "M2": 0, "M3": 1, "M4": 0, "M5": 0, "M6": 2, "M7": 2,
    "M8": 0, "M9": 1, "M10": 1, "M11": 2, "M12": 0, "M13": 1, "M14": 1,
}
FAMILIES = tuple(ARITY)


def _table(family: str, p: Sequence[Scalar]):
    a = p[0] if p else None
    b = p[1] if len(p) > 1 else None
    if family == "L1" or family == "M1":
        return {}
    if family == "L2":
        return {(3, 1): {1: 1}, (3, 2): {2: 1}}
    if family == "L3":
        return {(3, 1): {2: 1}, (3, 2): {1: a, 2: 1}}
    if family == "L4":
        return {(3, 1): {2: 1}, (3, 2): {1: a}}
    if family == "M2":
        return {(4, 1): {1: 1}, (4, 2): {2: 1}, (4, 3): {3: 1}}
    if family == "M3":
        return {(4, 1): {1: 1}, (4, 2): {3: 1}, (4, 3): {2: -a, 3: a + 1}}
    if family == "M4":
        return {(4, 2): {3: 1}, (4, 3): {3: 1}}
    if family == "M5":
        return {(4, 2): {3: 1}}
    if family == "M6":
        return {(4, 1): {2: 1}, (4, 2): {3: 1}, (4, 3): {1: a, 2: b, 3: 1}}
    if family == "M7":
        return {(4, 1): {2: 1}, (4, 2): {3: 1}, (4, 3): {1: a, 2: b}}
    if family == "M8":
        return {(1, 2): {2: 1}, (3, 4): {4: 1}}
    if family == "M9":
        return {(4, 1): {1: 1, 2: a}, (4, 2): {1: 1}, (3, 1): {1: 1}, (3, 2): {2: 1}}
    if family == "M10":
        return {(4, 1): {2: 1}, (4, 2): {1: a}, (3, 1): {1: 1}, (3, 2): {2: 1}}
    if family == "M11":
        return {(4, 1): {1: 1}, (4, 2): {2: b}, (4, 3): {3: 1 + b}, (3, 1): {2: 1}, (3, 2): {1: a}}
    if family == "M12":
        return {(4, 1): {1: 1}, (4, 2): {2: 2}, (4, 3): {3: 1}, (3, 1): {2: 1}}
    if family == "M13":
        return {(4, 1): {1: 1, 3: a}, (4, 2): {2: 1}, (4, 3): {1: 1}, (3, 1): {2: 1}}
    if family == "M14":
        return {(4, 1): {3: a}, (4, 3): {1: 1}, (3, 1): {2: 1}}
    raise ParseError(f"unknown family {family!r}")


@dataclass(frozen=True)
class CatalogId:
    family: str
    params: tuple = ()
    field: Field = QQ

    def __post_init__(self):
        if self.family not in ARITY:
            raise ParseError(f"unknown family {self.family!r}")
        if len(self.params) != ARITY[self.family]:
            raise ParseError(f"{self.family} takes {ARITY[self.family]} parameter(s), got {len(self.params)}")
        object.__setattr__(self, "params", tuple(self.field(x) for x in self.params))

    @property
    def dim(self) -> int:
        return 3 if self.family.startswith("L") else 4

    def __str__(self):
        out = self.family
        if self.params:
            vals = [str(int(x)) if isinstance(x, Fp) else render(x) for x in self.params]
            out += "[" + ",".join(vals) + "]"
        if self.field.char:
            out += f"@{self.field}"
        return out

    def __repr__(self):
        return f"CatalogId({str(self)!r})"

    @classmethod
    def parse(cls, text: str, field: Field | None = None) -> "CatalogId":
        m = _ID_RE.match(text.strip())
        if not m:
            raise ParseError(f"bad catalog id {text!r}")
        fam, params, ftag = m.group(1), m.group(2), m.group(3)
        fld = Field.parse(ftag) if ftag else (field or QQ)
        if field is not None and ftag and fld != field:
            raise MixedFields(f"{text} is over {fld}, expected {field}")
        vals = [v.strip() for v in params.split(",")] if params not in (None, "") else []
        try:
            return cls(fam, tuple(fld(v) for v in vals), fld)
        except ZeroDivisionError:
            raise ParseError(f"parameter not defined over {fld} in {text!r}") from None


_ID_RE = re.compile(r"^(L[1-4]|M1[0-4]|M[1-9])(?:\[([^\]]*)\])?(?:@(\w+))?$")


def check_params(cid: CatalogId) -> None:
    """Raise BadParameter or WrongCharacteristic when the id is outside its table row."""
    fam, p, f = cid.family, cid.params, cid.field
    char = f.char
    if fam == "M9":
        if not _t2_t_a_irreducible(p[0]):
            raise BadParameter(f"{cid}: T^2 - T - a must be irreducible")
    elif fam == "M10":
        if char != 2:
            raise WrongCharacteristic(f"{cid}: M10 exists only in characteristic 2")
        if p[0] and is_square(p[0]) is not None:
            raise BadParameter(f"{cid}: need a = 0 or a not a square")
    elif fam == "M11":
        if char != 2:
            raise WrongCharacteristic(f"{cid}: M11 exists only in characteristic 2")
        if not p[0]:
            raise BadParameter(f"{cid}: need a != 0")
        if p[1] == 1:
            raise BadParameter(f"{cid}: need b != 1")
    elif fam == "M13":
        if not p[0] and char == 2:
            raise WrongCharacteristic(f"{cid}: M13[0] requires characteristic other than 2")
    elif fam == "M14":
        if not p[0]:
            raise BadParameter(f"{cid}: need a != 0")


def is_valid(cid: CatalogId) -> bool:
    try:
        check_params(cid)
    except (BadParameter, WrongCharacteristic):
        return False
    return True


def _t2_t_a_irreducible(a: Scalar) -> bool:
    if isinstance(a, Fp):
        return not any(r * r - r - a == 0 for r in Field(a.p).elements())
    return is_square(1 + 4 * a) is None


def construct(cid: CatalogId | str) -> LieAlgebra:
    if isinstance(cid, str):
        cid = CatalogId.parse(cid)
    check_params(cid)
    table = _table(cid.family, cid.params)
    lie = LieAlgebra.from_table(cid.dim, cid.field, table, provenance=cid)
    return lie.check()


# -- isomorphism within a family ------------------------------------------------------------


def _verdict(flag: bool) -> str:
    return ISOMORPHIC if flag else NOT_ISOMORPHIC


def _square_ratio(x: Scalar, y: Scalar) -> bool:
    """x = alpha^2 y for some nonzero alpha."""
    if not x or not y:
        return not x and not y
    return is_square(x / y) is not None


def iso_within_family(id1: CatalogId, id2: CatalogId) -> str:
    if id1.family != id2.family:
        raise DifferentFamilies(f"{id1.family} vs {id2.family}")
    if id1.field != id2.field:
        raise MixedFields(f"{id1.field} vs {id2.field}")
    fam, p, q, f = id1.family, id1.params, id2.params, id1.field
    if not p:
        return ISOMORPHIC
    if fam in ("L3", "M3", "M13", "M6"):
        return _verdict(p == q)
    if fam in ("L4", "M14"):
        return _verdict(_square_ratio(p[0], q[0]))
    if fam == "M7":
        a, b = p
        c, d = q
        if bool(a) != bool(c):
            return NOT_ISOMORPHIC
        if not a:
            return _verdict(_square_ratio(b, d))
        return _verdict(solve_scaling(a, b, c, d) is not None)
    if fam == "M9":
        a, b = p[0], q[0]
        if f.char != 2:
            return _verdict(_square_ratio(a + f("1/4"), b + f("1/4")))
        # T^2 + T + a + b reducible
        return _verdict(any(r * r + r + a + b == 0 for r in f.elements()))
    if fam == "M10":
        a, b = p[0], q[0]
        if f.char == 0:
            return UNDECIDED
        return _verdict(any(y * y + b * x * x + a == 0 for x in f.elements() if x for y in f.elements()))
    if fam == "M11":
        a, b = p
        c, d = q
        delta = (b + 1) / (d + 1)
        ok = is_square(a / c) is not None and is_square((delta * delta + (b + 1) * delta + b) / c) is not None
        return _verdict(ok)
    raise ValueError(f"no isomorphism rule for {fam}")


# -- groups ----------------------------------------------------------------------------------


def group_of(lie: LieAlgebra) -> int:
    if lie.dim != 4:
        raise NotDim4(f"group partition is for 4-dimensional algebras, got dim {lie.dim}")
    ds = lie.derived_series()
    if not ds[-1].is_zero():
        raise NotSolvable("algebra is not solvable")
    if lie.is_abelian():
        return 1
    if len(ds) > 3:
        return 2
    d1 = ds[1].dim
    if d1 == 1:
        return 3
    if d1 == 3:
        return 4
    return 5 if not lie.center().is_zero() else 6


def table_group(cid: CatalogId) -> int | None:
    """The group whose table lists this id (None for the 3-dimensional families)."""
    fam, p = cid.family, cid.params
    if fam.startswith("L"):
        return None
    if fam == "M1":
        return 1
    if fam in ("M12", "M14", "M11"):
        return 2
    if fam == "M13":
        return 2 if p[0] else 6
    if fam in ("M4", "M5"):
        return 3
    if fam == "M2":
        return 4
    if fam in ("M3", "M6", "M7"):
        return 4 if p[0] else 5
    return 6


def enumerate_ids(field: Field, grid: Sequence = ()) -> list[CatalogId]:
    """Every valid id with parameters taken from ``grid`` (coerced into the field).

    The parameterless rows are always present, including M13[0] outside
    characteristic 2, which the group tables list as a row of its own.
    """
    vals = []
    for g in grid:
        try:
            v = field(g)
        except ZeroDivisionError:
            continue
        if v not in vals:
            vals.append(v)
    out: list[CatalogId] = []
    seen = set()
    for fam in FAMILIES:
        k = ARITY[fam]
        choices = [()] if k == 0 else [(x,) for x in vals] if k == 1 else [(x, y) for x in vals for y in vals]
        if fam == "M13" and field.char != 2:
            choices = [(field.zero,)] + [c for c in choices if c != (field.zero,)]
        for params in choices:
            cid = CatalogId(fam, params, field)
            if cid in seen or not is_valid(cid):
                continue
            seen.add(cid)
            out.append(cid)
    return out


# -- identification --------------------------------------------------------------------------


def identify(lie: LieAlgebra) -> CatalogId | None:
    """A catalog id isomorphic to ``lie``, for algebras of dimension 3 or 4 that split
    as N x| <x> with N = C_L(L') abelian of codimension one; otherwise None.

    The class of T = ad x|_N up to similarity and nonzero scaling determines the
    algebra, and the normal forms below pick the matching table row.
    """
    d, f = lie.dim, lie.field
    if d not in (3, 4):
        return None
    small = d == 3
    if lie.is_abelian():
        return CatalogId("L1" if small else "M1", (), f)
    der = lie.derived_algebra()
    if not lie.is_abelian_subspace(der):
        return None
    n = lie.centralizer(der)
    if n.dim == d:
        # L' central: the Heisenberg algebra, or its sum with a line in dimension 4
        if small:
            return CatalogId("L4", (f.zero,), f)
        return CatalogId("M5", (), f) if der.dim == 1 else None
    if n.dim != d - 1 or not lie.is_abelian_subspace(n):
        return None
    x = lie.basis_vector(n.complement_indices()[0])
    t = lie.adjoint_on(x, n)
    mp = min_poly(t, f)
    k = len(mp) - 1
    if k == 1:
        lam = -mp[0]
        if not lam:
            return CatalogId("L1" if small else "M1", (), f)
        return CatalogId("L2" if small else "M2", (), f)
    if small:
        # char poly t^2 - alpha t - beta
        alpha, beta = -mp[1], -mp[0]
        if alpha:
            return CatalogId("L3", (beta / (alpha * alpha),), f)
        return CatalogId("L4", (beta,), f)
    if k == 3:
        alpha, beta, gamma = -mp[2], -mp[1], -mp[0]
        if alpha:
            return CatalogId("M6", (gamma / alpha**3, beta / alpha**2), f)
        return CatalogId("M7", (gamma, beta), f)
    # minimal polynomial (t - lam)(t - nu), characteristic polynomial (t - lam)^2 (t - nu)
    trace = sum((t[i][i] for i in range(3)), f.zero)
    lam = trace + mp[1]
    nu = -mp[1] - lam
    if lam:
        return CatalogId("M3", (nu / lam,), f)
    return CatalogId("M4" if nu else "M5", (), f)


__all__ = [
    "CatalogId",
    "FAMILIES",
    "ARITY",
    "ISOMORPHIC",
    "NOT_ISOMORPHIC",
    "UNDECIDED",
    "construct",
    "check_params",
    "is_valid",
    "iso_within_family",
    "group_of",
    "table_group",
    "enumerate_ids",
    "identify",
]

# the contract name; the module itself never calls the builtin
enumerate = enumerate_ids  # noqa: A001
