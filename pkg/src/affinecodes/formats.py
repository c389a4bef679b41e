"""Text and JSON forms of fields, elements, defining sets, codes and maps."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from .additive import AdditiveMap, from_digits, to_digits
from .code import AffineInvariantCode, make_code
from .errors import FieldMismatch
from .finite_field import FieldSpec, make_field
from .semilinear import AffineElement


def _int_list(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ValueError(f"{what} must be comma-separated integers, got {text!r}") from None


def format_field(spec: FieldSpec) -> str:
    return spec.describe()


def parse_field(text: str) -> FieldSpec:
    """``p=2 m=4 modulus=1,1,0,0,1``; the modulus is optional."""
    fields = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep or key not in ("p", "m", "modulus"):
            raise ValueError(f"unexpected token {token!r} in field description")
        fields[key] = value
    if "p" not in fields or "m" not in fields:
        raise ValueError("field description needs p= and m=")
    modulus = _int_list(fields["modulus"], "modulus") if "modulus" in fields else None
    return make_field(int(fields["p"]), int(fields["m"]), modulus)


def read_field_file(path: str | Path) -> FieldSpec:
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return parse_field(" ".join(lines))


def format_element(x: int, spec: FieldSpec) -> str:
    return ",".join(str(int(c)) for c in to_digits(x, spec.p, spec.m))


def parse_element(text: str, spec: FieldSpec) -> int:
    digits = _int_list(text, "element")
    if len(digits) > spec.m:
        raise FieldMismatch(f"element {text!r} has more than {spec.m} digits")
    if any(not 0 <= d < spec.p for d in digits):
        raise FieldMismatch(f"digits of {text!r} must lie in 0..{spec.p - 1}")
    return from_digits(digits, spec.p)


def format_defining_set(D: Iterable[int]) -> str:
    return ",".join(str(x) for x in sorted(D))


def parse_defining_set(text: str) -> frozenset[int]:
    return frozenset(_int_list(text, "defining set"))


def code_to_json(C: AffineInvariantCode, with_modulus: bool = False) -> dict:
    out = C.descriptor()
    if with_modulus:
        out["modulus"] = list(C.field.modulus)
    return out


def code_from_json(obj: dict | str) -> AffineInvariantCode:
    if isinstance(obj, str):
        obj = json.loads(obj)
    missing = [k for k in ("p", "m", "r", "D") if k not in obj]
    if missing:
        raise ValueError(f"code descriptor is missing {', '.join(missing)}")
    return make_code(int(obj["p"]), int(obj["m"]), int(obj["r"]), obj["D"], obj.get("modulus"))


def map_to_rows(f: AdditiveMap) -> list[list[int]]:
    return f.to_rows()


def map_from_rows(rows: Sequence[Sequence[int]], spec: FieldSpec) -> AdditiveMap:
    if len(rows) != spec.m or any(len(r) != spec.m for r in rows):
        raise FieldMismatch(f"expected a {spec.m}x{spec.m} matrix")
    return AdditiveMap(rows, spec.p)


def parse_matrix(text: str, spec: FieldSpec) -> AdditiveMap:
    """Rows separated by ``;``, entries by ``,``: ``0,0,0,0;0,0,0,1;...``."""
    rows = [_int_list(r, "matrix row") for r in text.split(";")]
    return map_from_rows(rows, spec)


def affine_to_json(e: AffineElement, spec: FieldSpec) -> dict:
    return {"t": format_element(e.translation, spec), "M": map_to_rows(e.part), "tau": e.tau or 0}


def affine_from_json(obj: dict, spec: FieldSpec) -> AffineElement:
    return AffineElement(parse_element(obj["t"], spec), map_from_rows(obj["M"], spec), obj.get("tau"))


def chi_f_to_json(cf) -> dict:
    return cf.to_dict()


def chi_f_from_json(obj: dict | str, spec: FieldSpec):
    from .structures import make_chi_f

    if isinstance(obj, str):
        obj = json.loads(obj)
    return make_chi_f(spec, map_from_rows(obj["chi"], spec), map_from_rows(obj["f"], spec), int(obj["a"]))
