"""Strict JSON document schema for algebras, structures and integer matrices.

Rationals travel as decimal-free strings "p/q" or "p". Unknown fields are
rejected at every level. Emission is canonical: parsing a canonical file and
emitting it reproduces the bytes.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .connections import InnerProduct
from .lcp import LCPStructure, LCPTriple
from .liealg import Covector, LieAlgebra
from .linalg import Matrix, Vector, identity_matrix
from .lattice import IntMatrix, _check_int_matrix

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class DocumentError(Exception):
    """Malformed document: I/O shape, schema or rational-format problems."""


def _fail(where: str, message: str) -> None:
    raise DocumentError(f"{where}: {message}")


def _rational(value: object, where: str) -> Fraction:
    if not isinstance(value, str):
        _fail(where, f"rationals must be strings like '3' or '-2/5', got {value!r}")
    if not _RATIONAL_RE.match(value):
        _fail(where, f"not a decimal-free rational string: {value!r}")
    try:
        return Fraction(value)
    except ZeroDivisionError:
        _fail(where, f"zero denominator in {value!r}")
        raise AssertionError  # unreachable


def _strict_int(value: object, where: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(where, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        _fail(where, f"expected an integer >= {minimum}, got {value}")
    return value


def _strict_keys(obj: object, allowed: set[str], where: str) -> dict:
    if not isinstance(obj, dict):
        _fail(where, "expected a JSON object")
    unknown = set(obj) - allowed
    if unknown:
        _fail(where, f"unknown field(s): {', '.join(sorted(unknown))}")
    return obj


def _rational_vector(value: object, length: int, where: str) -> Vector:
    if not isinstance(value, list) or len(value) != length:
        _fail(where, f"expected a list of {length} rational strings")
    return tuple(_rational(x, f"{where}[{i}]") for i, x in enumerate(value))


def _rational_matrix(value: object, nrows: int | None, ncols: int, where: str) -> Matrix:
    if not isinstance(value, list) or (nrows is not None and len(value) != nrows):
        _fail(where, f"expected a list of {nrows} rows" if nrows is not None else "expected a list of rows")
    return tuple(
        _rational_vector(row, ncols, f"{where}[{r}]") for r, row in enumerate(value)
    )


@dataclass(frozen=True)
class BracketEntry:
    i: int
    j: int
    coeffs: tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class AlgebraDocument:
    dim: int | None
    basis: tuple[str, ...] | None
    brackets: tuple[BracketEntry, ...] | None
    metric: Matrix | None
    theta: Vector | None
    flat_factor: Matrix | None
    triple: "TripleBlock | None"

    @property
    def has_algebra(self) -> bool:
        return self.dim is not None


@dataclass(frozen=True)
class TripleBlock:
    h: AlgebraDocument
    q: int
    beta: tuple[Matrix, ...]


@dataclass(frozen=True)
class LatticeDocument:
    matrix: IntMatrix
    e1: Matrix | None
    e2: Matrix | None


def _parse_brackets(value: object, dim: int, where: str) -> tuple[BracketEntry, ...]:
    if not isinstance(value, list):
        _fail(where, "expected a list of bracket entries")
    entries: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
    for pos, raw in enumerate(value):
        ctx = f"{where}[{pos}]"
        entry = _strict_keys(raw, {"i", "j", "c"}, ctx)
        for key in ("i", "j", "c"):
            if key not in entry:
                _fail(ctx, f"missing field '{key}'")
        i = _strict_int(entry["i"], f"{ctx}.i", minimum=0)
        j = _strict_int(entry["j"], f"{ctx}.j", minimum=0)
        if i >= dim or j >= dim:
            _fail(ctx, f"bracket indices ({i}, {j}) out of range for dim {dim}")
        if i == j:
            _fail(ctx, f"bracket ({i}, {i}) is zero by antisymmetry; do not list it")
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        if (i, j) in entries:
            _fail(ctx, f"bracket pair ({i}, {j}) appears more than once")
        cmap = entry["c"]
        if not isinstance(cmap, dict) or not cmap:
            _fail(f"{ctx}.c", "expected a nonempty object of index -> rational string")
        coeffs = []
        for key, val in cmap.items():
            if not isinstance(key, str) or not re.match(r"^(0|[1-9]\d*)$", key):
                _fail(f"{ctx}.c", f"coefficient keys must be index strings, got {key!r}")
            k = int(key)
            if k >= dim:
                _fail(f"{ctx}.c", f"coefficient index {k} out of range for dim {dim}")
            coeffs.append((k, sign * _rational(val, f"{ctx}.c[{key}]")))
        coeffs.sort(key=lambda kv: kv[0])
        entries[(i, j)] = tuple(coeffs)
    ordered = sorted(entries.items())
    return tuple(BracketEntry(i, j, coeffs) for (i, j), coeffs in ordered)


def _parse_algebra_fields(obj: dict, where: str, allow: set[str]) -> AlgebraDocument:
    data = _strict_keys(obj, allow, where)
    group = [k for k in ("dim", "basis", "brackets") if k in data]
    if group and len(group) != 3:
        _fail(where, "fields dim, basis and brackets must appear together")

    dim = basis = brackets = None
    if group:
        dim = _strict_int(data["dim"], f"{where}.dim", minimum=1)
        raw_basis = data["basis"]
        if (
            not isinstance(raw_basis, list)
            or len(raw_basis) != dim
            or any(not isinstance(s, str) or not s for s in raw_basis)
        ):
            _fail(f"{where}.basis", f"expected {dim} nonempty label strings")
        if len(set(raw_basis)) != dim:
            _fail(f"{where}.basis", "labels must be distinct")
        basis = tuple(raw_basis)
        brackets = _parse_brackets(data["brackets"], dim, f"{where}.brackets")

    metric = theta = flat_factor = None
    for key in ("metric", "theta", "flat_factor"):
        if key in data and dim is None:
            _fail(where, f"field '{key}' requires the algebra fields")
    if "metric" in data:
        if data["metric"] == "identity":
            metric = identity_matrix(dim)
        else:
            metric = _rational_matrix(data["metric"], dim, dim, f"{where}.metric")
    if "theta" in data:
        theta = _rational_vector(data["theta"], dim, f"{where}.theta")
    if "flat_factor" in data:
        flat_factor = _rational_matrix(data["flat_factor"], None, dim, f"{where}.flat_factor")

    triple = None
    if "triple" in data:
        triple = _parse_triple(data["triple"], f"{where}.triple")
    if dim is None and triple is None:
        _fail(where, "document contains neither algebra fields nor a triple block")
    return AlgebraDocument(dim, basis, brackets, metric, theta, flat_factor, triple)


def _parse_triple(obj: object, where: str) -> TripleBlock:
    data = _strict_keys(obj, {"h", "q", "beta"}, where)
    for key in ("h", "q", "beta"):
        if key not in data:
            _fail(where, f"missing field '{key}'")
    h = _parse_algebra_fields(data["h"], f"{where}.h", {"dim", "basis", "brackets", "metric"})
    if not h.has_algebra:
        _fail(f"{where}.h", "the acting algebra needs dim, basis and brackets")
    q = _strict_int(data["q"], f"{where}.q", minimum=1)
    raw_beta = data["beta"]
    if not isinstance(raw_beta, list) or len(raw_beta) != h.dim:
        _fail(f"{where}.beta", f"expected {h.dim} matrices, one per basis vector")
    beta = tuple(
        _rational_matrix(mat, q, q, f"{where}.beta[{idx}]")
        for idx, mat in enumerate(raw_beta)
    )
    return TripleBlock(h, q, beta)


_TOP_LEVEL_KEYS = {"dim", "basis", "brackets", "metric", "theta", "flat_factor", "triple"}


def parse_algebra_document(text: str) -> AlgebraDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return _parse_algebra_fields(raw, "document", _TOP_LEVEL_KEYS)


def parse_lattice_document(text: str) -> LatticeDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    data = _strict_keys(raw, {"matrix", "split"}, "document")
    if "matrix" not in data:
        _fail("document", "missing field 'matrix'")
    rows = data["matrix"]
    if not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows):
        _fail("document.matrix", "expected a nonempty list of rows")
    for r, row in enumerate(rows):
        for c, x in enumerate(row):
            _strict_int(x, f"document.matrix[{r}][{c}]")
    try:
        mat = _check_int_matrix(rows)
    except ValueError as exc:
        raise DocumentError(f"document.matrix: {exc}") from exc
    e1 = e2 = None
    if "split" in data:
        split = _strict_keys(data["split"], {"e1", "e2"}, "document.split")
        for key in ("e1", "e2"):
            if key not in split:
                _fail("document.split", f"missing field '{key}'")
        k = len(mat)
        e1 = _rational_matrix(split["e1"], None, k, "document.split.e1")
        e2 = _rational_matrix(split["e2"], None, k, "document.split.e2")
    return LatticeDocument(mat, e1, e2)


def _emit_rational(f: Fraction) -> str:
    return str(f)


def _emit_matrix(m: Matrix) -> list[list[str]]:
    return [[_emit_rational(x) for x in row] for row in m]


def emit_algebra_document(doc: AlgebraDocument) -> str:
    out: dict = {}
    if doc.has_algebra:
        out["dim"] = doc.dim
        out["basis"] = list(doc.basis)
        out["brackets"] = [
            {"i": e.i, "j": e.j, "c": {str(k): _emit_rational(c) for k, c in e.coeffs}}
            for e in doc.brackets
        ]
    if doc.metric is not None:
        if doc.metric == identity_matrix(doc.dim):
            out["metric"] = "identity"
        else:
            out["metric"] = _emit_matrix(doc.metric)
    if doc.theta is not None:
        out["theta"] = [_emit_rational(x) for x in doc.theta]
    if doc.flat_factor is not None:
        out["flat_factor"] = _emit_matrix(doc.flat_factor)
    if doc.triple is not None:
        t = doc.triple
        h_doc = json.loads(emit_algebra_document(t.h))
        out["triple"] = {
            "h": h_doc,
            "q": t.q,
            "beta": [_emit_matrix(b) for b in t.beta],
        }
    return json.dumps(out, indent=2) + "\n"


def emit_lattice_document(doc: LatticeDocument) -> str:
    out: dict = {"matrix": [list(row) for row in doc.matrix]}
    if doc.e1 is not None and doc.e2 is not None:
        out["split"] = {"e1": _emit_matrix(doc.e1), "e2": _emit_matrix(doc.e2)}
    return json.dumps(out, indent=2) + "\n"


def emit_any_document(text: str) -> str:
    """Parse either document kind and re-emit canonically (round-trip helper)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if isinstance(raw, dict) and "matrix" in raw:
        return emit_lattice_document(parse_lattice_document(text))
    return emit_algebra_document(parse_algebra_document(text))


def document_algebra(doc: AlgebraDocument) -> LieAlgebra:
    """Build the validated algebra; raises ValueError on Jacobi failure."""
    if not doc.has_algebra:
        raise ValueError("document has no algebra fields")
    brackets = {(e.i, e.j): dict(e.coeffs) for e in doc.brackets}
    return LieAlgebra.from_brackets(doc.dim, brackets, doc.basis)


def document_bracket_map(doc: AlgebraDocument) -> dict:
    return {(e.i, e.j): dict(e.coeffs) for e in doc.brackets}


def document_metric(doc: AlgebraDocument) -> InnerProduct | None:
    return None if doc.metric is None else InnerProduct(doc.metric)


def document_theta(doc: AlgebraDocument) -> Covector | None:
    return None if doc.theta is None else Covector(doc.theta)


def document_triple(doc: AlgebraDocument) -> LCPTriple:
    if doc.triple is None:
        raise ValueError("document has no triple block")
    block = doc.triple
    h = document_algebra(block.h)
    h_metric = document_metric(block.h)
    if h_metric is None:
        h_metric = InnerProduct.identity(h.dim)
    return LCPTriple(h, h_metric, block.q, block.beta)


def structure_document(structure: LCPStructure) -> AlgebraDocument:
    """Canonical document of a validated structure (used by construction)."""
    algebra = structure.algebra
    entries = []
    from .linalg import pairs  # local to avoid a wide import list

    for i, j in pairs(algebra.dim):
        row = algebra.basis_bracket(i, j)
        coeffs = tuple((k, c) for k, c in enumerate(row) if c != 0)
        if coeffs:
            entries.append(BracketEntry(i, j, coeffs))
    return AlgebraDocument(
        dim=algebra.dim,
        basis=algebra.labels,
        brackets=tuple(entries),
        metric=structure.metric.gram,
        theta=structure.lee_form.coefficients,
        flat_factor=structure.flat_factor.basis,
        triple=None,
    )
