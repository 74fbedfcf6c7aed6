"""
formats/codec.py
JSON for posets, PL maps, module elements and morphism tables.

Rationals travel as "p/q" strings. Every decoding error is a SchemaError
carrying a JSON pointer to the offending value.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from core.errors import NotALatticeError, OrdkitError, PosetAxiomError, SchemaError
from order.enumerate import canonical_form
from order.poset import FinPoset, MonotoneMap, validate_poset
from scale.interval import PLMap
from scale.rational import fmt, unit


def _unit_at(value: Any, pointer: str) -> Fraction:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise SchemaError(pointer, "expected a rational string like \"3/8\"")
    try:
        return unit(value)
    except ValueError as e:
        raise SchemaError(pointer, str(e))


def _require(obj: dict, key: str, pointer: str):
    if key not in obj:
        raise SchemaError(pointer, f"missing key '{key}'")
    return obj[key]


# ── files ──

def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SchemaError("", f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
    except OSError as e:
        raise SchemaError("", f"cannot read {path}: {e.strerror}")


def dumps(obj: Any) -> str:
    """Stable text: sorted keys, no trailing spaces."""
    return json.dumps(obj, sort_keys=True, indent=2)


# ─────────────────────────────────────────────
# Posets
# ─────────────────────────────────────────────

def poset_to_json(X: FinPoset) -> dict:
    out = {"n": X.n, "leq": X.leq.astype(bool).tolist()}
    if X.labels:
        out["labels"] = list(X.labels)
    return out


def _axiom_pointer(e: PosetAxiomError) -> str:
    w = e.witness
    if e.axiom == "reflexivity":
        return f"/leq/{w[0]}/{w[0]}"
    if e.axiom == "antisymmetry":
        return f"/leq/{w[1]}/{w[0]}"
    if e.axiom == "transitivity":
        return f"/leq/{w[0]}/{w[2]}"
    return "/leq"


def poset_from_json(data: Any) -> FinPoset:
    if not isinstance(data, dict):
        raise SchemaError("", "a poset is an object with 'n' and 'leq'")
    n = _require(data, "n", "")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise SchemaError("/n", "expected a non-negative integer")
    leq = _require(data, "leq", "")
    if not isinstance(leq, list) or len(leq) != n:
        raise SchemaError("/leq", f"expected {n} rows")
    for i, row in enumerate(leq):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"/leq/{i}", f"expected a row of {n} booleans")
        for j, v in enumerate(row):
            if not isinstance(v, bool):
                raise SchemaError(f"/leq/{i}/{j}", "expected true or false")
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n:
            raise SchemaError("/labels", f"expected {n} labels")
        for i, l in enumerate(labels):
            if not isinstance(l, str):
                raise SchemaError(f"/labels/{i}", "labels are strings")
        if len(set(labels)) != n:
            raise SchemaError("/labels", "labels must be distinct")
    try:
        return validate_poset(leq, labels)
    except PosetAxiomError as e:
        raise SchemaError(_axiom_pointer(e), str(e))


def canonical_poset_json(X: FinPoset) -> str:
    """Text of the unlabelled canonical representative; isomorphic posets give identical bytes."""
    return dumps(poset_to_json(FinPoset(canonical_form(X).leq)))


def load_poset(path) -> FinPoset:
    return poset_from_json(load_json(path))


# ─────────────────────────────────────────────
# PL maps
# ─────────────────────────────────────────────

def plmap_to_json(u: PLMap) -> dict:
    pieces = []
    for j in range(u.k):
        piece = {
            "x0": fmt(u.xs[j]),
            "x1": fmt(u.xs[j + 1]),
            "y0": fmt(u.rights[j]),
            "y1": fmt(u.lefts[j]),
        }
        if u.vals[j] != u.rights[j]:
            piece["y_at_x0"] = fmt(u.vals[j])
        pieces.append(piece)
    out = {"pieces": pieces}
    if u.vals[-1] != u.lefts[-1]:
        out["y_at_x1"] = fmt(u.vals[-1])
    return out


def plmap_from_json(data: Any, pointer: str = "") -> PLMap:
    if not isinstance(data, dict):
        raise SchemaError(pointer, "a PL map is an object with 'pieces'")
    pieces = _require(data, "pieces", pointer)
    if not isinstance(pieces, list) or not pieces:
        raise SchemaError(f"{pointer}/pieces", "expected a non-empty list")
    xs, vals, rights, lefts = [], [], [], []
    for j, piece in enumerate(pieces):
        at = f"{pointer}/pieces/{j}"
        if not isinstance(piece, dict):
            raise SchemaError(at, "a piece is an object with x0, x1, y0, y1")
        x0 = _unit_at(_require(piece, "x0", at), f"{at}/x0")
        x1 = _unit_at(_require(piece, "x1", at), f"{at}/x1")
        y0 = _unit_at(_require(piece, "y0", at), f"{at}/y0")
        y1 = _unit_at(_require(piece, "y1", at), f"{at}/y1")
        if j == 0 and x0 != 0:
            raise SchemaError(f"{at}/x0", "the first piece starts at 0")
        if j > 0 and x0 != last_x1:
            raise SchemaError(f"{at}/x0", "pieces must be contiguous")
        if x1 <= x0:
            raise SchemaError(f"{at}/x1", "pieces have positive length")
        y_at = piece.get("y_at_x0")
        xs.append(x0)
        vals.append(y0 if y_at is None else _unit_at(y_at, f"{at}/y_at_x0"))
        rights.append(y0)
        lefts.append(y1)
        last_x1 = x1
    if last_x1 != 1:
        raise SchemaError(f"{pointer}/pieces/{len(pieces) - 1}/x1", "the last piece ends at 1")
    xs.append(last_x1)
    end = data.get("y_at_x1")
    vals.append(lefts[-1] if end is None else _unit_at(end, f"{pointer}/y_at_x1"))
    try:
        return PLMap.build(xs, vals, rights, lefts)
    except ValueError as e:
        raise SchemaError(f"{pointer}/pieces", str(e))


def load_plmap(path) -> PLMap:
    return plmap_from_json(load_json(path))


# ─────────────────────────────────────────────
# Module elements
# ─────────────────────────────────────────────

def module_from_json(data: Any, pair: Optional[str] = None, pointer: str = ""):
    """{"kind": "interval" | "pl" | "infinitesimal" | "functions", "pair"?: str, "lattice"?: poset}."""
    from duality.doctrines import PAIR_ORDER, pair_by_name
    from scale.umodules import MODULES, FunctionModule

    if not isinstance(data, dict):
        raise SchemaError(pointer or "/", "a module is an object with a 'kind'")
    kind = _require(data, "kind", pointer)
    if kind != "functions" and kind not in MODULES:
        raise SchemaError(f"{pointer}/kind", f"unknown module kind {kind!r}, expected functions or {', '.join(MODULES)}")
    name = data.get("pair", pair or "directed")
    if name not in PAIR_ORDER:
        raise SchemaError(f"{pointer}/pair", f"unknown doctrine pair {name!r}")
    if kind == "functions":
        X = poset_from_json_at(_require(data, "lattice", pointer), f"{pointer}/lattice")
        try:
            return FunctionModule(X, pair_by_name(name))
        except NotALatticeError as e:
            raise SchemaError(f"{pointer}/lattice", str(e))
    return MODULES[kind](pair_by_name(name))


def element_to_json(A, a) -> Any:
    return A.to_json(a)


def element_from_json(A, data: Any, pointer: str = ""):
    try:
        return A.from_json(data)
    except SchemaError:
        raise
    except (ValueError, IndexError, OrdkitError) as e:
        raise SchemaError(pointer, str(e))


# ─────────────────────────────────────────────
# Morphism tables
# ─────────────────────────────────────────────

def morphism_to_json(f: MonotoneMap) -> dict:
    return {
        "domain": poset_to_json(f.dom),
        "codomain": poset_to_json(f.cod),
        "values": {f.dom.label(x): f.cod.label(v) for x, v in enumerate(f.values)},
    }


def morphism_from_json(data: Any, domain: Optional[FinPoset] = None, codomain: Optional[FinPoset] = None) -> MonotoneMap:
    if not isinstance(data, dict):
        raise SchemaError("", "a morphism is an object with 'values'")
    X = domain if domain is not None else poset_from_json_at(_require(data, "domain", ""), "/domain")
    Y = codomain if codomain is not None else poset_from_json_at(_require(data, "codomain", ""), "/codomain")
    table = _require(data, "values", "")
    if not isinstance(table, dict):
        raise SchemaError("/values", "expected an object from domain labels to codomain labels")
    values = [None] * X.n
    for key, target in table.items():
        try:
            values[X.index(key)] = Y.index(target)
        except IndexError as e:
            raise SchemaError(f"/values/{key}", str(e))
    missing = [X.label(x) for x, v in enumerate(values) if v is None]
    if missing:
        raise SchemaError("/values", f"no value for {', '.join(missing)}")
    try:
        return MonotoneMap(X, Y, values)
    except OrdkitError as e:
        raise SchemaError("/values", str(e))


def poset_from_json_at(data: Any, pointer: str) -> FinPoset:
    try:
        return poset_from_json(data)
    except SchemaError as e:
        raise SchemaError(pointer + e.pointer.rstrip("/"), str(e).split(": ", 1)[-1])
