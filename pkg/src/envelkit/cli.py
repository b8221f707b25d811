"""Command-line front end: ``envelkit validate|invariants|compare|paper-repro``.

Every command builds a JSON-serializable report. Text output carries the same
data as ``path = value`` lines (values are JSON), preceded by ``#`` summary lines.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import poly
from .catalog import NOT_ISOMORPHIC, CatalogId, construct, identify, iso_within_family, table_group
from .distinguish import certify_distinct_U, fingerprint, paper_repro
from .errors import (
    BadParameter,
    DimensionMismatch,
    EnvelkitError,
    JacobiError,
    MixedFields,
    ParseError,
    PositiveCharacteristic,
    WrongCharacteristic,
)
from .invariants import (
    build_Ltilde,
    build_Utilde,
    find_generator,
    index_and_semiradical,
    semiradical_by_sampling,
    single_generator_presentation,
    utilde_signature,
)
from .liealg import LieAlgebra
from .scalars import Fp, render

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_PRECONDITION, EXIT_CHAR, EXIT_INCONCLUSIVE = range(6)
SCHEMA = 1


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, (ParseError, MixedFields)):
        return EXIT_PARSE
    if isinstance(exc, (JacobiError, BadParameter)):
        return EXIT_INVALID
    if isinstance(exc, (PositiveCharacteristic, WrongCharacteristic)):
        return EXIT_CHAR
    # NotAnIdeal, NotCodimOne, HypothesisNotMet, NotDim4, NotSolvable and the rest
    return EXIT_PRECONDITION


# -- text rendering ----------------------------------------------------------------------

_KEY = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TOKEN = re.compile(r'\.([A-Za-z_][A-Za-z0-9_]*)|\[(\d+)\]|\[("(?:[^"\\]|\\.)*")\]')


def flatten_report(obj, path: str = "") -> list[str]:
    if isinstance(obj, dict) and obj:
        out = []
        for k, v in obj.items():
            sub = f"{path}.{k}" if _KEY.match(k) else f"{path}[{json.dumps(k)}]"
            out += flatten_report(v, sub)
        return out
    if isinstance(obj, list) and obj:
        out = []
        for i, v in enumerate(obj):
            out += flatten_report(v, f"{path}[{i}]")
        return out
    return [f"{path} = {json.dumps(obj)}"]


def parse_text_report(text: str):
    """Inverse of :func:`flatten_report` (summary lines are skipped)."""
    root: dict = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        path, _, value = line.partition(" = ")
        keys = []
        pos = 0
        while pos < len(path):
            m = _TOKEN.match(path, pos)
            if m is None:
                raise ParseError(f"bad report path {path!r}")
            if m.group(1) is not None:
                keys.append(m.group(1))
            elif m.group(2) is not None:
                keys.append(int(m.group(2)))
            else:
                keys.append(json.loads(m.group(3)))
            pos = m.end()
        node = root
        for k, nxt in zip(keys, keys[1:]):
            if isinstance(node, list):
                while len(node) <= k:
                    node.append(None)
                if node[k] is None:
                    node[k] = [] if isinstance(nxt, int) else {}
                node = node[k]
            else:
                node = node.setdefault(k, [] if isinstance(nxt, int) else {})
        last = keys[-1]
        if isinstance(node, list):
            while len(node) <= last:
                node.append(None)
            node[last] = json.loads(value)
        else:
            node[last] = json.loads(value)
    return root


def render_text(report: dict, summary: list[str]) -> str:
    lines = [f"# {s}" for s in summary] + flatten_report(report)
    return "\n".join(lines) + "\n"


# -- inputs -------------------------------------------------------------------------------


def _scalar(c) -> str:
    return str(int(c)) if isinstance(c, Fp) else render(c)


def _vec(v) -> list[str]:
    return [_scalar(c) for c in v]


def load_algebra(source: str) -> tuple[LieAlgebra, dict]:
    path = Path(source)
    if path.is_file():
        data = path.read_bytes()
        lie = LieAlgebra.from_text(data.decode())
        return lie, {"file": source, "sha256": hashlib.sha256(data).hexdigest()}
    cid = CatalogId.parse(source)
    return construct(cid), {"id": str(cid)}


def parse_ideal(lie: LieAlgebra, spec: str):
    """Basis of an ideal.

    Accepted forms: labels ``x1,x3``; 1-based indices ``1,3``; coordinate
    vectors separated by semicolons ``1,0,0,-1;0,1,0,0`` (a single vector
    needs a trailing semicolon).
    """
    spec = spec.strip()
    if ";" in spec:
        rows = [r for r in spec.split(";") if r.strip()]
        try:
            return lie.span([lie.vector([lie.field(t.strip()) for t in r.split(",")]) for r in rows])
        except (ParseError, DimensionMismatch, ZeroDivisionError, ValueError) as exc:
            raise ParseError(f"bad ideal vectors {spec!r}: {exc}") from None
    vecs = []
    for tok in (t.strip() for t in spec.split(",")):
        if tok in lie.labels:
            k = lie.labels.index(tok)
        else:
            m = re.fullmatch(r"x?(\d+)", tok)
            if not m:
                raise ParseError(f"unknown basis element {tok!r}")
            k = int(m.group(1)) - 1
        if not 0 <= k < lie.dim:
            raise ParseError(f"basis index out of range: {tok!r}")
        vecs.append(lie.basis_vector(k))
    return lie.span(vecs)


def _parse_grid(text: str | None):
    if text is None:
        return None
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"bad grid {text!r}") from None


# -- commands -------------------------------------------------------------------------------


def cmd_validate(args) -> tuple[dict, list[str], int]:
    try:
        lie, src = load_algebra(args.source)
    except JacobiError as exc:
        # catalog tables are Jacobi-clean, so this only fires on a broken table
        return _report("validate", [args.source], {"ok": False, "violation": str(exc)}), [str(exc)], EXIT_INVALID
    bad = lie.validate()
    if bad is None:
        res = {"ok": True, "dim": lie.dim, "field": str(lie.field)}
        return _report("validate", [src], res), ["ok"], EXIT_OK
    res = {"ok": False, "violation": {"triple": list(bad.triple), "residual": _vec(bad.residual)}}
    return _report("validate", [src], res), [str(bad)], EXIT_INVALID


def _ltilde_result(lie, m):
    lt = build_Ltilde(lie, m)
    fp = fingerprint(lt)
    res = {
        "ideal": [_vec(v) for v in m.basis],
        "dim": lt.dim,
        "labels": list(lt.labels),
        "table": lt.to_text().splitlines()[1:],
        "derived_dims": fp.derived_dims,
        "lcs_dims": fp.lcs_dims,
        "center_dim": fp.center_dim,
    }
    return res, f"L~: dim {lt.dim}"


def _utilde_result(lie, m):
    ut = build_Utilde(lie, m)
    sg = single_generator_presentation(lie, m)
    res = {"ideal": [_vec(v) for v in m.basis], "dim": ut.dim, "commutative": ut.is_commutative()}
    if sg is not None:
        res["f"] = poly.to_text(sg[1])
        res["generator"] = _vec(sg[0])
    else:
        g = find_generator(ut)
        res["f"] = None
        if g is not None:
            res["generator_min_poly"] = poly.to_text(poly.min_poly(g, lie.field))
    res["signature"] = utilde_signature(ut)
    head = f"f = {res['f']}, dim {ut.dim}" if res["f"] else f"U~: dim {ut.dim}"
    return res, head


def _frobenius_result(lie, seed):
    data = index_and_semiradical(lie)
    span, n_regular, inside = semiradical_by_sampling(lie, samples=200, seed=seed)
    res = {
        "index": data.index,
        "generic_rank": data.generic_rank,
        "semiradical": [_vec(v) for v in data.semiradical.basis],
        "witness": _vec(data.witness) if data.witness is not None else None,
        "witness_rank": data.witness_rank,
        "sampling": {"samples": 200, "seed": seed, "regular": n_regular, "inside": inside,
                     "agrees": inside and span == data.semiradical},
    }
    fl = "0" if data.semiradical.dim == 0 else "<" + "; ".join(
        "(" + ", ".join(_vec(v)) + ")" for v in data.semiradical.basis) + ">"
    return res, f"index {data.index}, F(L)={fl}"


def cmd_invariants(args) -> tuple[dict, list[str], int]:
    if args.frobenius and not Path(args.source).is_file():
        # the characteristic restriction is checked before the parameters
        cid = CatalogId.parse(args.source)
        if cid.field.char:
            raise PositiveCharacteristic(
                f"{cid}: index and semiradical need characteristic zero; the inclusion "
                "Z(U(L)) in U(F(L)) is not valid in characteristic p")
    lie, src = load_algebra(args.source)
    m = parse_ideal(lie, args.ideal) if args.ideal else lie.derived_algebra()
    want_any = args.ltilde or args.utilde or args.frobenius or args.fingerprint
    results, summary = {}, []
    if args.fingerprint or not want_any:
        fp = fingerprint(lie)
        results["fingerprint"] = fp.to_dict()
        summary.append(f"fingerprint: dim {fp.dim}, derived {fp.derived_dims}, lcs {fp.lcs_dims}")
    if args.ltilde:
        results["ltilde"], head = _ltilde_result(lie, m)
        summary.append(head)
    if args.utilde:
        results["utilde"], head = _utilde_result(lie, m)
        summary.append(head)
    if args.frobenius:
        results["frobenius"], head = _frobenius_result(lie, args.seed)
        summary.append(head)
    return _report("invariants", [src], results), summary, EXIT_OK


def _catalog_id(lie: LieAlgebra) -> CatalogId | None:
    if isinstance(lie.provenance, CatalogId):
        return lie.provenance
    if lie.dim in (3, 4):
        return identify(lie)
    return None


def cmd_compare(args) -> tuple[dict, list[str], int]:
    a, sa = load_algebra(args.a)
    b, sb = load_algebra(args.b)
    if a.field != b.field:
        raise MixedFields(f"algebras over different fields: {a.field} vs {b.field}")
    cert = certify_distinct_U(a, b)
    res = {"certificate": cert.to_dict(), "verdict": cert.verdict}
    ia, ib = _catalog_id(a), _catalog_id(b)
    res["catalog"] = {"L": str(ia) if ia else None, "H": str(ib) if ib else None}
    # a positive answer needs two different presentations that the family table identifies
    if cert.verdict != "distinct_U" and ia is not None and ib is not None and ia.family == ib.family \
            and ia != ib:
        lie_iso = iso_within_family(ia, ib)
        res["iso_within_family"] = lie_iso
        if lie_iso == "isomorphic":
            res["verdict"] = "isomorphic"
        elif lie_iso == NOT_ISOMORPHIC:
            res["note"] = "L and H are not isomorphic, but no rule separates U(L) from U(H)"
    if res["verdict"] == "inconclusive" and a.field.char and ia and ib:
        groups = {table_group(ia), table_group(ib)}
        if groups == {5, 6}:
            res["note"] = "open: Group 5 vs Group 6 in positive characteristic"
    decisive = [s for s in cert.steps if s.decisive]
    head = res["verdict"] + (f" ({decisive[0].invariant})" if decisive else "")
    code = EXIT_INCONCLUSIVE if res["verdict"] == "inconclusive" else EXIT_OK
    return _report("compare", [sa, sb], res), [head], code


def cmd_paper_repro(args) -> tuple[dict, list[str], int]:
    rep = paper_repro(_parse_grid(args.grid), jobs=args.jobs)
    summary = [f"{'PASS' if it['passed'] else 'FAIL'} {it['name']}" for it in rep["items"]]
    s = rep["summary"]
    summary.append(f"{s['passed']} passed, {s['failed']} failed in {s['seconds']} s")
    return rep, summary, EXIT_OK if s["failed"] == 0 else EXIT_PARSE


def _report(command: str, inputs: list, results: dict) -> dict:
    return {"schema": SCHEMA, "command": command, "inputs": inputs, "results": results}


# -- entry point ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized cross-checks")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for grid runs")

    p = argparse.ArgumentParser(prog="envelkit", description="Invariants of universal enveloping algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="check the Jacobi identity")
    v.add_argument("source", help="catalog id such as M7[0,1] or a structure-constant file")
    v.set_defaults(run=cmd_validate)

    inv = sub.add_parser("invariants", parents=[common], help="compute invariants")
    inv.add_argument("source")
    inv.add_argument("--ltilde", action="store_true")
    inv.add_argument("--utilde", action="store_true")
    inv.add_argument("--frobenius", action="store_true")
    inv.add_argument("--fingerprint", action="store_true")
    inv.add_argument("--ideal", help="basis of the abelian ideal M (default L')")
    inv.set_defaults(run=cmd_invariants)

    c = sub.add_parser("compare", parents=[common], help="try to certify U(L) and U(H) non-isomorphic")
    c.add_argument("a")
    c.add_argument("b")
    c.set_defaults(run=cmd_compare)

    r = sub.add_parser("paper-repro", parents=[common], help="rerun the reference computations")
    r.add_argument("--grid", help="comma-separated parameter grid, e.g. -2,-1,0,1,2,3")
    r.set_defaults(run=cmd_paper_repro)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, summary, code = args.run(args)
    except EnvelkitError as exc:
        code = exit_code_for(exc)
        print(f"envelkit {args.command}: error: {exc}", file=sys.stderr)
        report = {"schema": SCHEMA, "command": args.command, "error": {"type": type(exc).__name__,
                                                                       "message": str(exc), "exit": code}}
        if args.json and args.json != "-":
            Path(args.json).write_text(json.dumps(report, indent=2) + "\n")
        return code
    if args.json == "-":
        print(json.dumps(report, indent=2))
    else:
        if args.json:
            Path(args.json).write_text(json.dumps(report, indent=2) + "\n")
        sys.stdout.write(render_text(report, summary))
    return code


if __name__ == "__main__":
    sys.exit(main())
