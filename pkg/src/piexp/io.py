"""JSON interchange for algebras.

A document holds either an explicit sparse table of ``[i, j, k, "p/q"]``
entries (0-based) or a ``family`` descriptor understood by
:func:`piexp.constructions.build`.  Rationals are written as reduced strings.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from . import linalg as la
from .algebra import Algebra, DimensionError, validate
from .constructions import ConstructionError, Grading, Involution, StructuredAlgebra, build


class InputError(ValueError):
    """Malformed or invalid algebra document."""


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return la.as_fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {x!r}") from exc


def _fmt(x) -> str:
    return la.format_fraction(x)


def _structure_from_doc(doc: dict, dim: int):
    grading, involution = doc.get("grading"), doc.get("involution")
    if grading is not None and involution is not None:
        raise InputError("a document may carry a grading or an involution, not both")
    if grading is not None:
        try:
            return Grading(tuple(grading["group"]), tuple(tuple(g) if isinstance(g, list) else g
                                                          for g in grading["degrees"]))
        except (KeyError, TypeError, ConstructionError) as exc:
            raise InputError(f"grading: {exc}") from exc
    if involution is not None:
        if len(involution) != dim or any(len(r) != dim for r in involution):
            raise InputError("involution: matrix must be dim x dim")
        return Involution(tuple(tuple(_rational(x, f"involution[{r}][{c}]") for c, x in enumerate(row))
                                for r, row in enumerate(involution)))
    return None


def from_document(doc: dict) -> StructuredAlgebra:
    """Build and validate; raises :class:`InputError` naming the offending entry."""
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    has_table, has_family = "table" in doc, "family" in doc
    if has_table == has_family:
        raise InputError("exactly one of 'table' and 'family' must be present")
    if has_family:
        try:
            S = build(doc["family"])
        except (ConstructionError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"family: {exc}") from exc
        if "dim" in doc and doc["dim"] != S.dim:
            raise InputError(f"dim {doc['dim']} does not match family dimension {S.dim}")
        if "name" in doc:
            S = StructuredAlgebra(S.algebra, S.structure, str(doc["name"]))
    else:
        if "dim" not in doc:
            raise InputError("explicit tables need 'dim'")
        dim = doc["dim"]
        if not isinstance(dim, int) or dim < 0:
            raise InputError(f"dim must be a non-negative integer, got {dim!r}")
        table: dict = {}
        for n, entry in enumerate(doc["table"]):
            if not (isinstance(entry, list) and len(entry) == 4):
                raise InputError(f"table[{n}]: expected [i, j, k, \"p/q\"], got {entry!r}")
            i, j, k, c = entry
            if not all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < dim for x in (i, j, k)):
                raise InputError(f"table[{n}]: index out of range in {entry!r}")
            c = _rational(c, f"table[{n}]")
            row = table.setdefault((i, j), {})
            if k in row:
                raise InputError(f"table[{n}]: duplicate entry for ({i}, {j}, {k})")
            row[k] = c
        basis = tuple(doc.get("basis") or ())
        if basis and len(basis) != dim:
            raise InputError("basis label count does not match dim")
        unit = doc.get("unit")
        if unit is not None:
            if len(unit) != dim:
                raise InputError("unit has the wrong length")
            unit = tuple(_rational(x, f"unit[{n}]") for n, x in enumerate(unit))
        try:
            A = Algebra(dim, table, basis, unit)
        except DimensionError as exc:
            raise InputError(str(exc)) from exc
        S = StructuredAlgebra(A, _structure_from_doc(doc, dim), str(doc.get("name", "")))
    bad = validate(S.algebra)
    if bad is not None:
        raise InputError(f"validation failed: {bad}")
    if S.structure is not None:
        msg = S.structure.check(S.algebra)
        if msg:
            raise InputError(f"structure check failed: {msg}")
    return S


def to_document(S: StructuredAlgebra) -> dict:
    """Explicit canonical document (sorted entries, reduced rationals)."""
    A = S.algebra
    doc: dict = {"name": S.name, "dim": A.dim, "basis": list(A.basis_labels)}
    doc["table"] = [[i, j, k, _fmt(c)] for (i, j), row in sorted(A.table.items()) for k, c in sorted(row.items())]
    if A.unit is not None:
        doc["unit"] = [_fmt(x) for x in A.unit]
    if S.grading is not None:
        doc["grading"] = {"group": list(S.grading.group), "degrees": [list(g) for g in S.grading.degrees]}
    if S.involution is not None:
        doc["involution"] = [[_fmt(x) for x in row] for row in S.involution.matrix]
    return doc


def canonicalize(doc: dict) -> dict:
    """Canonical form of a document; family documents keep their descriptor."""
    if "family" in doc:
        S = from_document(doc)
        out = {"name": S.name, "dim": S.dim, "family": doc["family"]}
        return json.loads(json.dumps(out, sort_keys=True))
    return to_document(from_document(doc))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys="family" in doc, ensure_ascii=False) + "\n"


def load(path) -> StructuredAlgebra:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    S = from_document(doc)
    if not S.name:
        S = StructuredAlgebra(S.algebra, S.structure, path.stem)
    return S


def save(S: StructuredAlgebra, path) -> None:
    Path(path).write_text(dumps(to_document(S)), encoding="utf-8")


def digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
