"""Model, aggregate and visualize set-type data with uncertain memberships and attributes."""
from .aggregate import (
    AggregateCell,
    AggregateSpec,
    CardinalityBounds,
    CertaintyRule,
    Region,
    ValueRule,
    aggregate_mean,
    aggregate_proportion,
    cardinality,
    certainty,
    enumerate_regions,
    summary_table,
)
from .ingest import DatasetError, load, parse, serialize
from .model import (
    CERTAIN_MEMBER,
    CERTAIN_NON_MEMBER,
    UNCERTAIN,
    AttributeSchema,
    Element,
    FacetClassification,
    Flagged,
    Known,
    Membership,
    MembershipStatus,
    MembershipUncertain,
    Missing,
    Range,
    SetDef,
    SetFamily,
    UncertaintyClass,
    Violation,
    classify,
    expand_memberships,
    probability,
    validate,
)
from .render import render_svg

__version__ = "0.1.0"

__all__ = [
    "AggregateCell",
    "AggregateSpec",
    "AttributeSchema",
    "CERTAIN_MEMBER",
    "CERTAIN_NON_MEMBER",
    "CardinalityBounds",
    "CertaintyRule",
    "DatasetError",
    "Element",
    "FacetClassification",
    "Flagged",
    "Known",
    "Membership",
    "MembershipStatus",
    "MembershipUncertain",
    "Missing",
    "Range",
    "Region",
    "SetDef",
    "SetFamily",
    "UNCERTAIN",
    "UncertaintyClass",
    "ValueRule",
    "Violation",
    "aggregate_mean",
    "aggregate_proportion",
    "cardinality",
    "certainty",
    "classify",
    "enumerate_regions",
    "expand_memberships",
    "load",
    "parse",
    "probability",
    "render_svg",
    "serialize",
    "summary_table",
    "validate",
]
