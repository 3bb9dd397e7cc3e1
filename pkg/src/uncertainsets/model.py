"""Data model for set families whose memberships and attributes may be uncertain.

Three grades of (un)certainty are distinguished throughout the package:

* ``U0``        -- the data is known exactly,
* ``UBinary``   -- uncertainty is known to exist, but not where or how much,
* ``UDefined``  -- location and magnitude of the uncertainty are known
  (a membership probability, an interval, a flagged value).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union


class MembershipUncertain(ValueError):
    """Raised by operations that require every membership to be certain."""


class ExpansionConflict(ValueError):
    """Raised when implicit membership expansion contradicts explicit entries."""


# -- membership -----------------------------------------------------------------


class Status(str, enum.Enum):
    CERTAIN = "certain"
    NON_MEMBER = "non-member"
    UNCERTAIN = "uncertain"
    PROBABILITY = "probability"


@dataclass(frozen=True)
class MembershipStatus:
    kind: Status
    p: Optional[float] = None

    @property
    def is_member(self) -> bool:
        return self.kind is Status.CERTAIN

    @property
    def is_uncertain(self) -> bool:
        return self.kind in (Status.UNCERTAIN, Status.PROBABILITY)

    def __str__(self) -> str:
        if self.kind is Status.PROBABILITY:
            return f"p={self.p:g}"
        return self.kind.value


CERTAIN_MEMBER = MembershipStatus(Status.CERTAIN)
CERTAIN_NON_MEMBER = MembershipStatus(Status.NON_MEMBER)
UNCERTAIN = MembershipStatus(Status.UNCERTAIN)


def probability(p: float) -> MembershipStatus:
    return MembershipStatus(Status.PROBABILITY, float(p))


@dataclass(frozen=True)
class Membership:
    element: str
    set: str
    status: MembershipStatus

    @property
    def key(self) -> Tuple[str, str]:
        return (self.element, self.set)


# -- attribute values -----------------------------------------------------------

Scalar = Union[int, float, str]


@dataclass(frozen=True)
class Known:
    value: Scalar


@dataclass(frozen=True)
class Missing:
    pass


@dataclass(frozen=True)
class Flagged:
    """A value that was given but may be incorrect."""

    value: Scalar


@dataclass(frozen=True)
class Range:
    low: float
    high: float

    @property
    def midpoint(self) -> float:
        return (self.low + self.high) / 2.0


AttributeValue = Union[Known, Missing, Flagged, Range]
MISSING = Missing()


@dataclass(frozen=True)
class AttributeSchema:
    name: str
    kind: str  # "numeric" | "categorical"
    domain: Optional[Tuple[float, float]] = None
    levels: Tuple[str, ...] = ()
    unit: Optional[str] = None
    uncertain_everywhere: bool = False

    @classmethod
    def numeric(cls, name: str, lo: float, hi: float, unit: Optional[str] = None,
                uncertain_everywhere: bool = False) -> "AttributeSchema":
        return cls(name, "numeric", domain=(lo, hi), unit=unit,
                   uncertain_everywhere=uncertain_everywhere)

    @classmethod
    def categorical(cls, name: str, levels: Iterable[str],
                    uncertain_everywhere: bool = False) -> "AttributeSchema":
        return cls(name, "categorical", levels=tuple(levels),
                   uncertain_everywhere=uncertain_everywhere)

    @property
    def is_numeric(self) -> bool:
        return self.kind == "numeric"

    def threshold(self, low: Optional[float] = None, high: Optional[float] = None) -> Range:
        """Normalize an open-ended threshold ("above 30") to a range bounded by the domain."""
        if not self.is_numeric or self.domain is None:
            raise ValueError(f"attribute {self.name!r} is not numeric")
        lo = self.domain[0] if low is None else low
        hi = self.domain[1] if high is None else high
        return Range(lo, hi)


# -- sets, elements, family -----------------------------------------------------


@dataclass(frozen=True)
class SetDef:
    id: str
    label: str = ""
    membership_uncertain: bool = False

    def __post_init__(self) -> None:
        if not self.label:
            object.__setattr__(self, "label", self.id)


@dataclass(frozen=True)
class Element:
    id: str
    label: str = ""
    membership_uncertain: bool = False
    attribute_values: Mapping[str, AttributeValue] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.label:
            object.__setattr__(self, "label", self.id)
        object.__setattr__(self, "attribute_values", dict(sorted(self.attribute_values.items())))

    def value(self, attribute: str) -> AttributeValue:
        return self.attribute_values.get(attribute, MISSING)


@dataclass(frozen=True)
class SetFamily:
    """An immutable set family.

    List fields are stored as tuples in canonical order (ids, then
    ``(element, set)`` for memberships), so two families built from the same
    entries in different orders compare equal.
    """

    sets: Tuple[SetDef, ...] = ()
    elements: Tuple[Element, ...] = ()
    memberships: Tuple[Membership, ...] = ()
    attributes: Tuple[AttributeSchema, ...] = ()
    disclaimer_uncertain: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(sorted(self.sets, key=lambda s: s.id)))
        object.__setattr__(self, "elements", tuple(sorted(self.elements, key=lambda e: e.id)))
        object.__setattr__(self, "memberships", tuple(sorted(self.memberships, key=lambda m: m.key)))
        object.__setattr__(self, "attributes", tuple(sorted(self.attributes, key=lambda a: a.name)))

    @property
    def set_ids(self) -> List[str]:
        return [s.id for s in self.sets]

    @property
    def element_ids(self) -> List[str]:
        return [e.id for e in self.elements]

    def get_set(self, set_id: str) -> SetDef:
        for s in self.sets:
            if s.id == set_id:
                return s
        raise KeyError(set_id)

    def get_element(self, element_id: str) -> Element:
        for e in self.elements:
            if e.id == element_id:
                return e
        raise KeyError(element_id)

    def schema(self, name: str) -> AttributeSchema:
        for a in self.attributes:
            if a.name == name:
                return a
        raise KeyError(name)


# -- validation -----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    ref: object
    message: str = ""

    def __str__(self) -> str:
        text = f"{self.rule}({self.ref!r})"
        return f"{text}: {self.message}" if self.message else text


def _duplicates(ids: Iterable[str]) -> List[str]:
    seen, dup = set(), []
    for i in ids:
        if i in seen and i not in dup:
            dup.append(i)
        seen.add(i)
    return dup


def _check_value(schema: AttributeSchema, value: AttributeValue) -> Optional[str]:
    if isinstance(value, Missing):
        return None
    if isinstance(value, Range):
        if not schema.is_numeric:
            return "range on a categorical attribute"
        if value.low > value.high:
            return f"range low {value.low} > high {value.high}"
        lo, hi = schema.domain
        if value.low < lo or value.high > hi:
            return f"range [{value.low}, {value.high}] outside domain [{lo}, {hi}]"
        return None
    v = value.value
    if schema.is_numeric:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or math.isnan(v):
            return f"non-numeric value {v!r}"
    elif v not in schema.levels:
        return f"unknown level {v!r}"
    return None


def validate(family: SetFamily) -> List[Violation]:
    """Check every family invariant; an empty list means the family is valid."""
    out: List[Violation] = []
    for i in _duplicates(family.set_ids):
        out.append(Violation("DuplicateSetId", i))
    for i in _duplicates(family.element_ids):
        out.append(Violation("DuplicateElementId", i))
    for i in _duplicates(a.name for a in family.attributes):
        out.append(Violation("DuplicateAttributeName", i))

    for a in family.attributes:
        if a.kind == "numeric":
            if a.domain is None or not a.domain[0] < a.domain[1]:
                out.append(Violation("InvalidDomain", a.name, f"domain {a.domain}"))
        elif a.kind == "categorical":
            if not a.levels:
                out.append(Violation("EmptyLevels", a.name))
            elif len(set(a.levels)) != len(a.levels):
                out.append(Violation("DuplicateLevels", a.name))
        else:
            out.append(Violation("UnknownAttributeKind", a.name, a.kind))

    schemas = {a.name: a for a in family.attributes}
    for e in family.elements:
        for name, value in e.attribute_values.items():
            if name not in schemas:
                out.append(Violation("UnknownAttribute", (e.id, name)))
                continue
            problem = _check_value(schemas[name], value)
            if problem:
                out.append(Violation("InvalidValue", (e.id, name), problem))

    set_ids, element_ids = set(family.set_ids), set(family.element_ids)
    uncertain_sets = {s.id for s in family.sets if s.membership_uncertain}
    seen = set()
    for m in family.memberships:
        if m.element not in element_ids:
            out.append(Violation("UnknownElement", m.key))
        if m.set not in set_ids:
            out.append(Violation("UnknownSet", m.key))
        if m.key in seen:
            out.append(Violation("DuplicateMembership", m.key))
        seen.add(m.key)
        st = m.status
        if st.kind is Status.PROBABILITY:
            p = st.p
            if p is None or math.isnan(p) or p < 0.0 or p > 1.0:
                out.append(Violation("ProbabilityOutOfRange", m.key, f"p={p}"))
            elif p in (0.0, 1.0):
                out.append(Violation("ProbabilityBoundary", m.key,
                                     "write p=1 as certain and p=0 as non-member"))
        elif st.p is not None:
            out.append(Violation("UnexpectedProbability", m.key))
        if m.set in uncertain_sets and st.kind in (Status.CERTAIN, Status.PROBABILITY):
            out.append(Violation("UncertainSetRoster", m.key,
                                 "set roster is unknown; only uncertain or non-member entries allowed"))
    return out


# -- classification -------------------------------------------------------------


class UncertaintyClass(enum.IntEnum):
    U0 = 0
    UBinary = 1
    UDefined = 2

    @property
    def symbol(self) -> str:
        return {0: "U=0", 1: "U>0", 2: "U=p"}[self.value]

    @property
    def cell_name(self) -> str:
        return {0: "certainty", 1: "undefined uncertainty", 2: "defined uncertainty"}[self.value]


@dataclass(frozen=True)
class FacetClassification:
    membership: UncertaintyClass
    set_attributes: UncertaintyClass
    element_attributes: UncertaintyClass
    notes: Tuple[str, ...] = ()

    def as_tuple(self) -> Tuple[UncertaintyClass, UncertaintyClass, UncertaintyClass]:
        return (self.membership, self.set_attributes, self.element_attributes)


def _membership_class(family: SetFamily) -> UncertaintyClass:
    kinds = {m.status.kind for m in family.memberships}
    if Status.PROBABILITY in kinds:
        return UncertaintyClass.UDefined
    if (Status.UNCERTAIN in kinds
            or any(s.membership_uncertain for s in family.sets)
            or any(e.membership_uncertain for e in family.elements)):
        return UncertaintyClass.UBinary
    return UncertaintyClass.U0


def classify(family: SetFamily) -> FacetClassification:
    violations = validate(family)
    if violations:
        raise ValueError("cannot classify an invalid family: " + "; ".join(map(str, violations)))

    membership = _membership_class(family)

    per_element = any(
        not isinstance(e.value(a.name), Known)
        for e in family.elements for a in family.attributes
    )
    blanket = family.disclaimer_uncertain or any(a.uncertain_everywhere for a in family.attributes)
    notes: Tuple[str, ...] = ()
    if per_element:
        element_attrs = UncertaintyClass.UDefined
        if blanket:
            notes = ("element attributes carry both per-element markers and a blanket "
                     "uncertainty flag; reported as defined uncertainty",)
    elif blanket:
        element_attrs = UncertaintyClass.UBinary
    else:
        element_attrs = UncertaintyClass.U0

    return FacetClassification(
        membership=membership,
        set_attributes=max(membership, element_attrs),
        element_attributes=element_attrs,
        notes=notes,
    )


# -- membership expansion -------------------------------------------------------


def _known_empty_sets(family: SetFamily) -> set:
    """Sets with a known roster that has no (possible) members at all."""
    occupied = {m.set for m in family.memberships if m.status.kind is not Status.NON_MEMBER}
    return {s.id for s in family.sets if not s.membership_uncertain and s.id not in occupied}


def expand_memberships(family: SetFamily) -> List[Tuple[str, str, MembershipStatus]]:
    """Return one status for every ``(element, set)`` pair, ordered by ids.

    Explicit entries pass through. Missing pairs become ``UNCERTAIN`` when the
    element or the set has an unknown roster (unless the set is known to be
    empty), otherwise ``CERTAIN_NON_MEMBER``.
    """
    explicit: Dict[Tuple[str, str], MembershipStatus] = {m.key: m.status for m in family.memberships}
    empty = _known_empty_sets(family)
    uncertain_elements = {e.id for e in family.elements if e.membership_uncertain}

    for s in family.sets:
        if s.membership_uncertain and family.elements and all(
            explicit.get((e.id, s.id)) == CERTAIN_NON_MEMBER for e in family.elements
        ):
            raise ExpansionConflict(
                f"set {s.id!r} is flagged membership-uncertain but every element is an "
                "explicit non-member"
            )

    out = []
    for e in family.elements:
        for s in family.sets:
            key = (e.id, s.id)
            if key in explicit:
                status = explicit[key]
            elif s.membership_uncertain or (e.id in uncertain_elements and s.id not in empty):
                status = UNCERTAIN
            else:
                status = CERTAIN_NON_MEMBER
            out.append((e.id, s.id, status))
    return out


def require_certain_membership(family: SetFamily) -> None:
    for _, _, status in expand_memberships(family):
        if status.is_uncertain:
            raise MembershipUncertain(
                "aggregation needs certain memberships; this family has uncertain ones"
            )


def certain_members(family: SetFamily) -> Dict[str, List[str]]:
    """Map each set id to the ids of its certain members."""
    out: Dict[str, List[str]] = {s: [] for s in family.set_ids}
    for m in family.memberships:
        if m.status.is_member:
            out[m.set].append(m.element)
    return out
