"""Instance specifications: JSON parsing, validation, construction and the built-in catalog."""

from __future__ import annotations

import copy
import json
from typing import Any, Dict, List, Optional, Tuple

from .errors import ParseError, SchemaError, UnknownCatalogEntry
from .finalg import (FiniteModule, FiniteRing, abelian_module, direct_sum, matrix_ring,
                     module_from_tables, product_ring, quotient_with_projection, regular_module,
                     upper_triangular, zn)

SCHEMA_VERSION = "1.0"

RING_KINDS = ("Zn", "matrix", "upper_triangular", "product", "tables")
MODULE_KINDS = ("regular", "abelian", "direct_sum", "quotient", "tables")


# -- validation ------------------------------------------------------------------

def _need(obj: dict, key: str, path: str):
    if key not in obj:
        raise SchemaError(f"missing field '{key}'", path)
    return obj[key]


def _int(v, path: str, lo: int = 0) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < lo:
        raise SchemaError(f"expected an integer >= {lo}", path)
    return v


def _int_list(v, path: str, lo: int = 0) -> List[int]:
    if not isinstance(v, list):
        raise SchemaError("expected a list of integers", path)
    return [_int(x, f"{path}[{i}]", lo) for i, x in enumerate(v)]


def _table(v, path: str) -> List[List[int]]:
    if not isinstance(v, list) or not v:
        raise SchemaError("expected a non-empty square table", path)
    return [_int_list(row, f"{path}[{i}]") for i, row in enumerate(v)]


def validate_ring(spec: Any, path: str = "$.ring") -> None:
    if not isinstance(spec, dict):
        raise SchemaError("expected an object", path)
    kind = _need(spec, "kind", path)
    if kind not in RING_KINDS:
        raise SchemaError(f"unknown ring kind '{kind}'", f"{path}.kind")
    if kind == "Zn":
        _int(_need(spec, "n", path), f"{path}.n", 1)
    elif kind in ("matrix", "upper_triangular"):
        validate_ring(_need(spec, "base", path), f"{path}.base")
        _int(_need(spec, "size", path), f"{path}.size", 1)
    elif kind == "product":
        factors = _need(spec, "factors", path)
        if not isinstance(factors, list) or not factors:
            raise SchemaError("expected a non-empty list of rings", f"{path}.factors")
        for i, f in enumerate(factors):
            validate_ring(f, f"{path}.factors[{i}]")
    else:
        _table(_need(spec, "add", path), f"{path}.add")
        _table(_need(spec, "mul", path), f"{path}.mul")
        _int(_need(spec, "zero", path), f"{path}.zero")
        _int(_need(spec, "one", path), f"{path}.one")


def validate_module(spec: Any, path: str = "$.module") -> None:
    if not isinstance(spec, dict):
        raise SchemaError("expected an object", path)
    kind = _need(spec, "kind", path)
    if kind not in MODULE_KINDS:
        raise SchemaError(f"unknown module kind '{kind}'", f"{path}.kind")
    if kind == "abelian":
        _int_list(_need(spec, "invariants", path), f"{path}.invariants", 1)
    elif kind == "direct_sum":
        validate_module(_need(spec, "module", path), f"{path}.module")
        _int(_need(spec, "copies", path), f"{path}.copies", 1)
    elif kind == "quotient":
        validate_module(_need(spec, "module", path), f"{path}.module")
        _int_list(_need(spec, "generators", path), f"{path}.generators")
    elif kind == "tables":
        _table(_need(spec, "add", path), f"{path}.add")
        _int(_need(spec, "zero", path), f"{path}.zero")
        _table(_need(spec, "act", path), f"{path}.act")


def validate_instance(spec: Any) -> dict:
    if not isinstance(spec, dict):
        raise SchemaError("an instance must be a JSON object", "$")
    validate_ring(_need(spec, "ring", "$"))
    validate_module(_need(spec, "module", "$"))
    if "name" in spec and not isinstance(spec["name"], str):
        raise SchemaError("expected a string", "$.name")
    opts = spec.get("options", {})
    if not isinstance(opts, dict):
        raise SchemaError("expected an object", "$.options")
    if "audit" in opts and opts["audit"] not in ("all", "basic"):
        raise SchemaError("expected 'all' or 'basic'", "$.options.audit")
    for key in ("max_size", "jobs"):
        if key in opts:
            _int(opts[key], f"$.options.{key}", 1)
    return spec


def parse_instance_text(text: str) -> dict:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return validate_instance(spec)


def parse_instance(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_instance_text(text)


def serialize_instance(spec: dict) -> str:
    return json.dumps(spec, sort_keys=True, ensure_ascii=False)


# -- construction --------------------------------------------------------------------

def build_ring(spec: dict) -> FiniteRing:
    kind = spec["kind"]
    if kind == "Zn":
        return zn(spec["n"])
    if kind == "matrix":
        return matrix_ring(build_ring(spec["base"]), spec["size"])
    if kind == "upper_triangular":
        return upper_triangular(build_ring(spec["base"]), spec["size"])
    if kind == "product":
        return product_ring([build_ring(f) for f in spec["factors"]])
    return FiniteRing(spec["add"], spec["mul"], spec["zero"], spec["one"])


def build_module(R: FiniteRing, spec: dict) -> FiniteModule:
    kind = spec["kind"]
    if kind == "regular":
        return regular_module(R)
    if kind == "abelian":
        return abelian_module(R, spec["invariants"])
    if kind == "direct_sum":
        return direct_sum(build_module(R, spec["module"]), spec["copies"])
    if kind == "quotient":
        base = build_module(R, spec["module"])
        for g in spec["generators"]:
            if g >= base.size:
                raise SchemaError(f"element {g} out of range", "$.module.generators")
        Q, _ = quotient_with_projection(base, base.span(spec["generators"]))
        return Q
    return module_from_tables(R, spec["add"], spec["zero"], spec["act"])


def build_instance(spec: dict) -> Tuple[str, FiniteModule]:
    R = build_ring(spec["ring"])
    M = build_module(R, spec["module"])
    name = spec.get("name") or M.name
    M.name = name
    return name, M


# -- catalog --------------------------------------------------------------------------

def _zn(n):
    return {"kind": "Zn", "n": n}


def _entry(name, ring, module):
    return {"name": name, "ring": ring, "module": module}


_REG = {"kind": "regular"}

CATALOG: Dict[str, dict] = {e["name"]: e for e in [
    _entry("Z2", _zn(2), _REG),
    _entry("Z4", _zn(4), _REG),
    _entry("Z6", _zn(6), _REG),
    _entry("Z12", _zn(12), _REG),
    _entry("Z30", _zn(30), _REG),
    _entry("Z2xZ2-over-F2", _zn(2), {"kind": "abelian", "invariants": [2, 2]}),
    _entry("Z3+Z2", _zn(6), {"kind": "abelian", "invariants": [3, 2]}),
    _entry("Z3+Z2^2", _zn(6), {"kind": "abelian", "invariants": [3, 2, 2]}),
    _entry("triangular-Z2", {"kind": "upper_triangular", "base": _zn(2), "size": 2}, _REG),
    _entry("Z2+Z3", _zn(6), {"kind": "abelian", "invariants": [2, 3]}),
    _entry("(Z2+Z3)^2", _zn(6),
           {"kind": "direct_sum", "module": {"kind": "abelian", "invariants": [2, 3]}, "copies": 2}),
    _entry("M2(F2)", {"kind": "matrix", "base": _zn(2), "size": 2}, _REG),
    _entry("Z4xZ3", {"kind": "product", "factors": [_zn(4), _zn(3)]}, _REG),
]}


def catalog_names(include_quotients: bool = False) -> List[str]:
    names = list(CATALOG)
    if include_quotients:
        for n in list(CATALOG):
            names.extend(quotient_names(n))
    return names


def quotient_names(base: str) -> List[str]:
    """Names ``base/fi<k>`` for the proper nonzero fully invariant submodules."""
    from .sublat import enumerate_fi

    _, M = build_instance(CATALOG[base])
    fi = enumerate_fi(M)
    return [f"{base}/fi{k}" for k in range(1, fi.n - 1)]


def catalog_get(name: str) -> dict:
    """The InstanceSpec for a catalog name, including on-demand quotients."""
    if name in CATALOG:
        return copy.deepcopy(CATALOG[name])
    base, sep, tail = name.rpartition("/fi")
    if sep and base in CATALOG and tail.isdigit():
        from .sublat import enumerate_fi, quick_generators

        spec = CATALOG[base]
        _, M = build_instance(spec)
        fi = enumerate_fi(M)
        k = int(tail)
        if 1 <= k < fi.n - 1:
            gens = quick_generators(M, fi.members[k])
            return {"name": name, "ring": copy.deepcopy(spec["ring"]),
                    "module": {"kind": "quotient", "module": copy.deepcopy(spec["module"]),
                               "generators": list(gens)}}
    raise UnknownCatalogEntry(f"no catalog entry named '{name}'")
