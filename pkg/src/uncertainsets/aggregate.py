"""Exclusive regions, cardinality bounds and uncertain aggregate set attributes.

Two choices govern an aggregate over a scope of elements:

* the value rule decides which element values feed the aggregate
  (``CERTAIN_ONLY`` drops flagged and missing values, ``USE_GIVEN`` keeps
  flagged values and range midpoints but still drops missing ones);
* the certainty rule decides the denominator of the certainty score
  (``OVER_ALL``: every element of the scope, ``OVER_GIVEN``: only elements
  with a given value).

Ranges count as given-but-uncertain values, i.e. alongside flagged values.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .model import (
    AttributeSchema,
    Element,
    Flagged,
    Known,
    Missing,
    Range,
    SetFamily,
    Status,
    certain_members,
    expand_memberships,
    require_certain_membership,
)


class ValueRule(str, enum.Enum):
    CERTAIN_ONLY = "certain-only"
    USE_GIVEN = "use-given"


class CertaintyRule(str, enum.Enum):
    OVER_ALL = "over-all"
    OVER_GIVEN = "over-given"


@dataclass(frozen=True)
class Region:
    signature: Tuple[str, ...]
    members: Tuple[str, ...]

    @property
    def is_outside(self) -> bool:
        return not self.signature

    @property
    def name(self) -> str:
        return "{" + ",".join(self.signature) + "}"


def enumerate_regions(family: SetFamily, include_outside: bool = True) -> List[Region]:
    """Partition the certain members into exclusive regions.

    Regions are sorted by signature; elements that belong to no set are
    collected in a trailing region with the empty signature.
    """
    require_certain_membership(family)
    signatures: Dict[str, List[str]] = {e: [] for e in family.element_ids}
    for m in family.memberships:
        if m.status.is_member:
            signatures[m.element].append(m.set)
    groups: Dict[Tuple[str, ...], List[str]] = {}
    for element_id, sets in signatures.items():
        groups.setdefault(tuple(sorted(sets)), []).append(element_id)
    outside = groups.pop((), [])
    regions = [Region(sig, tuple(sorted(members))) for sig, members in sorted(groups.items())]
    if include_outside and outside:
        regions.append(Region((), tuple(sorted(outside))))
    return regions


@dataclass(frozen=True)
class CardinalityBounds:
    min: int
    max: int
    expected: float


UNDEFINED_WEIGHT = 0.5


def cardinality(family: SetFamily, set_id: str) -> CardinalityBounds:
    if set_id not in family.set_ids:
        raise KeyError(f"unknown set id {set_id!r}")
    certain = uncertain = 0
    p_sum = 0.0
    for _, s, status in expand_memberships(family):
        if s != set_id:
            continue
        if status.kind is Status.CERTAIN:
            certain += 1
        elif status.kind is Status.PROBABILITY:
            uncertain += 1
            p_sum += status.p
        elif status.kind is Status.UNCERTAIN:
            uncertain += 1
            p_sum += UNDEFINED_WEIGHT
    return CardinalityBounds(certain, certain + uncertain, certain + p_sum)


# -- per-scope tallies -------------------------------------------------------------


def _values(members: Sequence[Element], attribute: str):
    return [e.value(attribute) for e in members]


def _check_schema(schema: Optional[AttributeSchema], numeric: bool) -> None:
    if schema is None:
        return
    if numeric and not schema.is_numeric:
        raise TypeError(f"attribute {schema.name!r} is not numeric")
    if not numeric and schema.is_numeric:
        raise TypeError(f"attribute {schema.name!r} is not categorical")


def aggregate_proportion(members: Sequence[Element], attribute: str, target_level: str,
                         rule: ValueRule, schema: Optional[AttributeSchema] = None) -> Optional[float]:
    """Share of contributing values equal to ``target_level``; None if nothing contributes."""
    _check_schema(schema, numeric=False)
    if schema is not None and target_level not in schema.levels:
        raise ValueError(f"unknown level {target_level!r} for attribute {attribute!r}")
    hits = total = 0
    for v in _values(members, attribute):
        if isinstance(v, Range):
            raise TypeError(f"range value on categorical attribute {attribute!r}")
        if isinstance(v, Known) or (rule is ValueRule.USE_GIVEN and isinstance(v, Flagged)):
            total += 1
            hits += v.value == target_level
    return hits / total if total else None


def aggregate_mean(members: Sequence[Element], attribute: str, rule: ValueRule,
                   schema: Optional[AttributeSchema] = None) -> Optional[float]:
    _check_schema(schema, numeric=True)
    contributing: List[float] = []
    for v in _values(members, attribute):
        if isinstance(v, Known):
            contributing.append(v.value)
        elif rule is ValueRule.USE_GIVEN:
            if isinstance(v, Flagged):
                contributing.append(v.value)
            elif isinstance(v, Range):
                contributing.append(v.midpoint)
    if not contributing:
        return None
    return sum(contributing) / len(contributing)


@dataclass(frozen=True)
class Tally:
    n_total: int
    n_known: int
    n_flagged: int
    n_missing: int


def tally(members: Sequence[Element], attribute: str) -> Tally:
    known = flagged = missing = 0
    for v in _values(members, attribute):
        if isinstance(v, Known):
            known += 1
        elif isinstance(v, Missing):
            missing += 1
        else:
            flagged += 1
    return Tally(len(members), known, flagged, missing)


def certainty(members: Sequence[Element], attribute: str, rule: CertaintyRule) -> float:
    """Fraction of values known for certain, relative to the rule's denominator.

    ``OVER_GIVEN`` with no given value at all is 0.0 by convention.
    """
    t = tally(members, attribute)
    if rule is CertaintyRule.OVER_ALL:
        if not t.n_total:
            raise ValueError("certainty over an empty scope is undefined")
        return t.n_known / t.n_total
    given = t.n_known + t.n_flagged
    return t.n_known / given if given else 0.0


# -- summary tables ------------------------------------------------------------------


@dataclass(frozen=True)
class AggregateSpec:
    attribute: str
    kind: str = "proportion"  # "proportion" | "mean"
    target: Optional[str] = None
    value_rule: ValueRule = ValueRule.USE_GIVEN
    certainty_rule: CertaintyRule = CertaintyRule.OVER_ALL


@dataclass(frozen=True)
class AggregateCell:
    scope: Tuple[str, ...]
    scope_kind: str  # "region" | "set"
    value: Optional[float]
    certainty: float
    n_total: int
    n_known: int
    n_flagged: int
    n_missing: int

    @property
    def label(self) -> str:
        return "{" + ",".join(self.scope) + "}" if self.scope_kind == "region" else self.scope[0]


def _resolve_spec(family: SetFamily, spec: AggregateSpec) -> AttributeSchema:
    try:
        schema = family.schema(spec.attribute)
    except KeyError:
        raise KeyError(f"unknown attribute {spec.attribute!r}") from None
    if spec.kind == "proportion":
        if schema.is_numeric:
            raise TypeError(f"proportion needs a categorical attribute, {schema.name!r} is numeric")
        if spec.target is None:
            raise ValueError("proportion needs a target level")
        if spec.target not in schema.levels:
            raise ValueError(f"unknown level {spec.target!r} for attribute {schema.name!r}")
    elif spec.kind == "mean":
        if not schema.is_numeric:
            raise TypeError(f"mean needs a numeric attribute, {schema.name!r} is categorical")
    else:
        raise ValueError(f"unknown aggregate kind {spec.kind!r}")
    return schema


def scope_cell(members: Sequence[Element], scope: Tuple[str, ...], scope_kind: str,
               spec: AggregateSpec, schema: AttributeSchema) -> AggregateCell:
    if spec.kind == "proportion":
        value = aggregate_proportion(members, spec.attribute, spec.target, spec.value_rule, schema)
    else:
        value = aggregate_mean(members, spec.attribute, spec.value_rule, schema)
    t = tally(members, spec.attribute)
    cert = certainty(members, spec.attribute, spec.certainty_rule) if members else 0.0
    return AggregateCell(scope, scope_kind, value, cert, t.n_total, t.n_known, t.n_flagged, t.n_missing)


def summary_table(family: SetFamily, spec: AggregateSpec, scope: str = "regions") -> List[AggregateCell]:
    """One aggregate cell per exclusive region (``scope="regions"``) or per set."""
    schema = _resolve_spec(family, spec)
    elements = {e.id: e for e in family.elements}
    if scope == "regions":
        return [scope_cell([elements[i] for i in r.members], r.signature, "region", spec, schema)
                for r in enumerate_regions(family, include_outside=False)]
    if scope == "sets":
        require_certain_membership(family)
        members = certain_members(family)
        return [scope_cell([elements[i] for i in sorted(members[s])], (s,), "set", spec, schema)
                for s in family.set_ids]
    raise ValueError(f"scope must be 'regions' or 'sets', not {scope!r}")
