"""JSON interchange format for set families.

A document is a single UTF-8 JSON object::

    {
      "sets":        [{"id": "M", "label": "Math", "membership_uncertain": true}, ...],
      "elements":    [{"id": "a", "label": "Alex", "membership_uncertain": false,
                       "values": {"age": {"kind": "known", "value": 21}}}, ...],
      "attributes":  [{"name": "age", "kind": "numeric", "min": 0, "max": 100,
                       "unit": "yrs", "uncertain_everywhere": false}, ...],
      "memberships": [{"element": "a", "set": "H", "status": "certain"}, ...],
      "disclaimer_uncertain": false
    }

``serialize`` writes the canonical form: sorted keys, entries sorted by id and
memberships by ``(element, set)``.
"""
from __future__ import annotations

import json
import math
import warnings
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .model import (
    AttributeSchema,
    AttributeValue,
    Element,
    Flagged,
    Known,
    Membership,
    MembershipStatus,
    Missing,
    Range,
    SetDef,
    SetFamily,
    Status,
    Violation,
    validate,
)

Path = Tuple[Union[str, int], ...]


class DatasetError(ValueError):
    """A document that cannot be turned into a valid family."""

    def __init__(self, code: str, message: str, path: Path = (),
                 line: Optional[int] = None, column: Optional[int] = None,
                 violations: Sequence[Violation] = ()) -> None:
        self.code = code
        self.message = message
        self.path = path
        self.line = line
        self.column = column
        self.violations = list(violations)
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}, column {self.column}")
        if self.path:
            where.append(format_path(self.path))
        loc = f" at {' '.join(where)}" if where else ""
        return f"{self.code}{loc}: {self.message}"


class DatasetWarning(UserWarning):
    pass


def format_path(path: Path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else p)
    return out


# -- locating a JSON path in the source text --------------------------------------

_decoder = json.JSONDecoder()


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def _locate(text: str, path: Path) -> Optional[int]:
    """Character offset of the value at ``path`` in ``text``, if it can be found."""
    i = _skip_ws(text, 0)
    for step in path:
        if i >= len(text):
            return None
        if isinstance(step, str) and text[i] == "{":
            i = _skip_ws(text, i + 1)
            while i < len(text) and text[i] != "}":
                key, i = _decoder.raw_decode(text, i)
                i = _skip_ws(text, i)
                i = _skip_ws(text, i + 1)  # ':'
                if key == step:
                    break
                _, i = _decoder.raw_decode(text, i)
                i = _skip_ws(text, i)
                if text[i] == ",":
                    i = _skip_ws(text, i + 1)
            else:
                return None
        elif isinstance(step, int) and text[i] == "[":
            i = _skip_ws(text, i + 1)
            for _ in range(step):
                _, i = _decoder.raw_decode(text, i)
                i = _skip_ws(text, i)
                if text[i] != ",":
                    return None
                i = _skip_ws(text, i + 1)
        else:
            return None
    return i


def _line_col(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


# -- schema reading ------------------------------------------------------------------


class _Reader:
    def __init__(self, text: str, strict: bool) -> None:
        self.text = text
        self.strict = strict

    def fail(self, code: str, message: str, path: Path) -> DatasetError:
        line = col = None
        try:
            offset = _locate(self.text, path)
        except (ValueError, IndexError):
            offset = None
        if offset is not None:
            line, col = _line_col(self.text, offset)
        return DatasetError(code, message, path, line, col)

    def obj(self, value: Any, path: Path, required: Sequence[str], optional: Sequence[str]) -> Dict:
        if not isinstance(value, dict):
            raise self.fail("SchemaError", "expected an object", path)
        for key in required:
            if key not in value:
                raise self.fail("SchemaError", f"missing required key {key!r}", path)
        unknown = sorted(set(value) - set(required) - set(optional))
        if unknown:
            if self.strict:
                raise self.fail("UnknownField", f"unknown key {unknown[0]!r}", path + (unknown[0],))
            warnings.warn(f"ignoring unknown keys {unknown} at {format_path(path) or '<root>'}",
                          DatasetWarning, stacklevel=4)
        return value

    def array(self, value: Any, path: Path) -> list:
        if not isinstance(value, list):
            raise self.fail("SchemaError", "expected an array", path)
        return value

    def string(self, value: Any, path: Path) -> str:
        if not isinstance(value, str) or not value:
            raise self.fail("SchemaError", "expected a non-empty string", path)
        return value

    def boolean(self, value: Any, path: Path) -> bool:
        if not isinstance(value, bool):
            raise self.fail("SchemaError", "expected true or false", path)
        return value

    def number(self, value: Any, path: Path) -> Union[int, float]:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise self.fail("SchemaError", "expected a finite number", path)
        return value

    # -- entities

    def attribute(self, raw: Any, path: Path) -> AttributeSchema:
        d = self.obj(raw, path, ["name", "kind"], ["min", "max", "unit", "levels", "uncertain_everywhere"])
        name = self.string(d["name"], path + ("name",))
        everywhere = self.boolean(d.get("uncertain_everywhere", False), path + ("uncertain_everywhere",))
        kind = d["kind"]
        if kind == "numeric":
            for key in ("min", "max"):
                if key not in d:
                    raise self.fail("SchemaError", f"numeric attribute needs {key!r}", path)
            lo = self.number(d["min"], path + ("min",))
            hi = self.number(d["max"], path + ("max",))
            unit = d.get("unit")
            if unit is not None:
                unit = self.string(unit, path + ("unit",))
            return AttributeSchema.numeric(name, lo, hi, unit=unit, uncertain_everywhere=everywhere)
        if kind == "categorical":
            levels = self.array(d.get("levels"), path + ("levels",))
            return AttributeSchema.categorical(
                name, [self.string(v, path + ("levels", i)) for i, v in enumerate(levels)],
                uncertain_everywhere=everywhere)
        raise self.fail("SchemaError", f"unknown attribute kind {kind!r}", path + ("kind",))

    def value(self, raw: Any, path: Path, schema: Optional[AttributeSchema]) -> AttributeValue:
        if not isinstance(raw, dict) or "kind" not in raw:
            raise self.fail("SchemaError", "attribute value needs a 'kind'", path)
        kind = raw["kind"]
        if kind == "missing":
            self.obj(raw, path, ["kind"], [])
            return Missing()
        if kind in ("known", "flagged"):
            d = self.obj(raw, path, ["kind", "value"], [])
            v = d["value"]
            if isinstance(v, str):
                v = self.string(v, path + ("value",))
            else:
                v = self.number(v, path + ("value",))
            return Known(v) if kind == "known" else Flagged(v)
        if kind == "range":
            d = self.obj(raw, path, ["kind"], ["low", "high"])
            low = d.get("low")
            high = d.get("high")
            if low is None and high is None:
                raise self.fail("SchemaError", "range needs 'low' or 'high'", path)
            low = None if low is None else self.number(low, path + ("low",))
            high = None if high is None else self.number(high, path + ("high",))
            if low is None or high is None:
                if schema is None or not schema.is_numeric:
                    raise self.fail("SchemaError", "open-ended range needs a numeric attribute", path)
                return schema.threshold(low, high)
            return Range(low, high)
        raise self.fail("SchemaError", f"unknown value kind {kind!r}", path + ("kind",))

    def membership(self, raw: Any, path: Path) -> Membership:
        d = self.obj(raw, path, ["element", "set", "status"], ["p"])
        element = self.string(d["element"], path + ("element",))
        set_id = self.string(d["set"], path + ("set",))
        kind = d["status"]
        try:
            status = Status(kind)
        except ValueError:
            raise self.fail("SchemaError", f"unknown status {kind!r}", path + ("status",)) from None
        if status is Status.PROBABILITY:
            if "p" not in d:
                raise self.fail("SchemaError", "status 'probability' requires 'p'", path)
            p = self.number(d["p"], path + ("p",))
            if not 0.0 <= p <= 1.0:
                raise self.fail("ProbabilityOutOfRange", f"p={p} is outside [0, 1]", path + ("p",))
            return Membership(element, set_id, MembershipStatus(status, float(p)))
        if "p" in d:
            raise self.fail("SchemaError", "'p' is only allowed with status 'probability'", path + ("p",))
        return Membership(element, set_id, MembershipStatus(status))

    def family(self, doc: Any) -> SetFamily:
        root = self.obj(doc, (), [], ["sets", "elements", "attributes", "memberships",
                                      "disclaimer_uncertain"])
        attributes = [self.attribute(a, ("attributes", i))
                      for i, a in enumerate(self.array(root.get("attributes", []), ("attributes",)))]
        schemas = {a.name: a for a in attributes}

        sets = []
        for i, raw in enumerate(self.array(root.get("sets", []), ("sets",))):
            p = ("sets", i)
            d = self.obj(raw, p, ["id"], ["label", "membership_uncertain"])
            sets.append(SetDef(
                self.string(d["id"], p + ("id",)),
                self.string(d.get("label", d["id"]), p + ("label",)),
                self.boolean(d.get("membership_uncertain", False), p + ("membership_uncertain",)),
            ))

        elements = []
        for i, raw in enumerate(self.array(root.get("elements", []), ("elements",))):
            p = ("elements", i)
            d = self.obj(raw, p, ["id"], ["label", "membership_uncertain", "values"])
            values = d.get("values", {})
            if not isinstance(values, dict):
                raise self.fail("SchemaError", "expected an object", p + ("values",))
            elements.append(Element(
                self.string(d["id"], p + ("id",)),
                self.string(d.get("label", d["id"]), p + ("label",)),
                self.boolean(d.get("membership_uncertain", False), p + ("membership_uncertain",)),
                {k: self.value(v, p + ("values", k), schemas.get(k)) for k, v in values.items()},
            ))

        memberships = [self.membership(m, ("memberships", i))
                       for i, m in enumerate(self.array(root.get("memberships", []), ("memberships",)))]
        disclaimer = self.boolean(root.get("disclaimer_uncertain", False), ("disclaimer_uncertain",))
        return SetFamily(tuple(sets), tuple(elements), tuple(memberships), tuple(attributes), disclaimer)


def parse(document: Union[str, bytes], mode: str = "strict") -> SetFamily:
    """Parse a dataset document into a validated :class:`SetFamily`.

    ``mode="lenient"`` downgrades unknown keys to :class:`DatasetWarning`.
    Raises :class:`DatasetError` on syntax errors, schema errors, and invariant
    violations (the latter carry the full ``violations`` list).
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"mode must be 'strict' or 'lenient', not {mode!r}")
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DatasetError("EncodingError", str(exc)) from None
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DatasetError("SyntaxError", exc.msg, line=exc.lineno, column=exc.colno) from None

    family = _Reader(document, strict=(mode == "strict")).family(doc)
    violations = validate(family)
    if violations:
        raise DatasetError("InvalidDataset", "; ".join(map(str, violations)), violations=violations)
    return family


def load(path, mode: str = "strict") -> SetFamily:
    with open(path, "rb") as fh:
        return parse(fh.read(), mode)


# -- serialization -------------------------------------------------------------------


def _value_doc(v: AttributeValue) -> Dict[str, Any]:
    if isinstance(v, Known):
        return {"kind": "known", "value": v.value}
    if isinstance(v, Flagged):
        return {"kind": "flagged", "value": v.value}
    if isinstance(v, Range):
        return {"kind": "range", "low": v.low, "high": v.high}
    return {"kind": "missing"}


def _attribute_doc(a: AttributeSchema) -> Dict[str, Any]:
    d: Dict[str, Any] = {"name": a.name, "kind": a.kind, "uncertain_everywhere": a.uncertain_everywhere}
    if a.is_numeric:
        d["min"], d["max"] = a.domain
        if a.unit is not None:
            d["unit"] = a.unit
    else:
        d["levels"] = list(a.levels)
    return d


def to_document(family: SetFamily) -> Dict[str, Any]:
    memberships: List[Dict[str, Any]] = []
    for m in sorted(family.memberships, key=lambda m: m.key):
        d: Dict[str, Any] = {"element": m.element, "set": m.set, "status": m.status.kind.value}
        if m.status.kind is Status.PROBABILITY:
            d["p"] = m.status.p
        memberships.append(d)
    return {
        "sets": [{"id": s.id, "label": s.label, "membership_uncertain": s.membership_uncertain}
                 for s in sorted(family.sets, key=lambda s: s.id)],
        "elements": [{"id": e.id, "label": e.label, "membership_uncertain": e.membership_uncertain,
                      "values": {k: _value_doc(v) for k, v in e.attribute_values.items()}}
                     for e in sorted(family.elements, key=lambda e: e.id)],
        "attributes": [_attribute_doc(a) for a in sorted(family.attributes, key=lambda a: a.name)],
        "memberships": memberships,
        "disclaimer_uncertain": family.disclaimer_uncertain,
    }


def serialize(family: SetFamily) -> bytes:
    """Canonical UTF-8 JSON bytes for ``family``."""
    text = json.dumps(to_document(family), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")
