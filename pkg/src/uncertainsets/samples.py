"""Small worked datasets: students (elements) enrolled in courses (sets).

``toy_enrollment`` has certain students a-d, students e and f with unknown
enrollment, Biology known to be empty and Math with an unknown roster.

``courses`` has five exclusive regions over Math, History and French with
2-5 students each, carrying a residency and an age attribute. Its variants
hold the same students with all values known (``"certain"``), with some values
missing or doubted (``"defined"``), or with every value doubted through a
schema-wide flag (``"undefined"``). Region aggregates, left to right
({M}, {H,M}, {H}, {F,H}, {F}):

=========  ===========================  =============================
variant    international share          mean age
=========  ===========================  =============================
certain    .20 .50 .33 0 .50            26.2 19.5 22 34 24.5
defined    .25 .50 0 0 .25              30 19.5 23 34 30
           (certainty .4 .5 .33 1 .5)   (certainty .4 1 .33 .5 .25)
=========  ===========================  =============================
"""
from __future__ import annotations

from typing import Dict, List

from .model import (
    CERTAIN_MEMBER,
    AttributeSchema,
    Element,
    Flagged,
    Known,
    Membership,
    Missing,
    Range,
    SetDef,
    SetFamily,
    probability,
)

DOM, INT = "domestic", "international"


def toy_enrollment() -> SetFamily:
    sets = [
        SetDef("M", "Math", membership_uncertain=True),
        SetDef("H", "History"),
        SetDef("B", "Biology"),
        SetDef("F", "French"),
    ]
    elements = [
        Element("a", "Alex"), Element("b", "Ben"), Element("c", "Chris"), Element("d", "Dana"),
        Element("e", "Eva", membership_uncertain=True),
        Element("f", "Frank", membership_uncertain=True),
    ]
    pairs = [("a", "H"), ("b", "H"), ("b", "F"), ("c", "F"), ("d", "F")]
    return SetFamily(tuple(sets), tuple(elements),
                     tuple(Membership(e, s, CERTAIN_MEMBER) for e, s in pairs))


def toy_enrollment_probabilities() -> SetFamily:
    """Same courses, but Eva's and Frank's enrollments come with probabilities."""
    base = toy_enrollment()
    elements = [Element(e.id, e.label) for e in base.elements]
    extra = [
        Membership("e", "H", probability(0.7)),
        Membership("e", "F", probability(0.3)),
        Membership("f", "F", probability(0.5)),
        Membership("f", "H", probability(0.2)),
    ]
    return SetFamily(base.sets, tuple(elements), base.memberships + tuple(extra))


# region signature -> (student id, residency, age) for the fully known data
_COURSE_REGIONS = {
    ("M",): [("s01", INT, 20), ("s02", DOM, 22), ("s03", DOM, 25), ("s04", DOM, 30), ("s05", DOM, 34)],
    ("H", "M"): [("s06", INT, 19), ("s07", DOM, 20)],
    ("H",): [("s08", DOM, 20), ("s09", DOM, 22), ("s10", INT, 24)],
    ("F", "H"): [("s11", DOM, 30), ("s12", DOM, 38)],
    ("F",): [("s13", INT, 22), ("s14", DOM, 24), ("s15", INT, 25), ("s16", DOM, 27)],
}

# students whose values are missing or doubted in the "defined" variant
_DEFINED_RESIDENCY = {
    "s01": Missing(), "s02": Flagged(INT), "s03": Flagged(DOM),
    "s07": Flagged(DOM),
    "s09": Flagged(DOM), "s10": Missing(),
    "s15": Flagged(DOM), "s16": Flagged(DOM),
}
_DEFINED_AGE = {
    "s01": Missing(), "s02": Flagged(28), "s03": Flagged(28),
    "s08": Missing(), "s10": Flagged(24),
    "s12": Flagged(38),
    "s13": Flagged(36), "s15": Missing(), "s16": Missing(),
}


def courses(variant: str = "certain") -> SetFamily:
    if variant not in ("certain", "defined", "undefined"):
        raise ValueError(f"unknown variant {variant!r}")
    everywhere = variant == "undefined"
    attributes = (
        AttributeSchema.categorical("residency", (DOM, INT), uncertain_everywhere=everywhere),
        AttributeSchema.numeric("age", 15, 65, unit="yrs", uncertain_everywhere=everywhere),
    )
    sets = (SetDef("M", "Math"), SetDef("H", "History"), SetDef("F", "French"))
    elements: List[Element] = []
    memberships: List[Membership] = []
    for signature, students in _COURSE_REGIONS.items():
        for sid, residency, age in students:
            values: Dict[str, object] = {"residency": Known(residency), "age": Known(age)}
            if variant == "defined":
                values["residency"] = _DEFINED_RESIDENCY.get(sid, Known(residency))
                values["age"] = _DEFINED_AGE.get(sid, Known(age))
            elements.append(Element(sid, f"student {sid[1:]}", attribute_values=values))
            memberships.extend(Membership(sid, s, CERTAIN_MEMBER) for s in signature)
    return SetFamily(sets, tuple(elements), tuple(memberships), attributes)


def age_classes() -> SetFamily:
    """Two courses with twenty students each; ages fully known in one, partly in the other."""
    age = AttributeSchema.numeric("age", 15, 65, unit="yrs")
    sets = (SetDef("C1", "Course 1"), SetDef("C2", "Course 2"))
    known_ages = [19, 20, 20, 21, 21, 22, 22, 23, 23, 24, 24, 25, 26, 27, 28, 29, 31, 33, 36, 41]
    elements, memberships = [], []
    for i, a in enumerate(known_ages):
        sid = f"p{i + 1:02d}"
        elements.append(Element(sid, attribute_values={"age": Known(a)}))
        memberships.append(Membership(sid, "C1", CERTAIN_MEMBER))
    partial = known_ages[:15]
    uncertain = [Range(20, 30), Range(20, 30), Range(20, 30), age.threshold(low=30), Missing()]
    for i, v in enumerate([Known(a) for a in partial] + uncertain):
        sid = f"q{i + 1:02d}"
        elements.append(Element(sid, attribute_values={"age": v}))
        memberships.append(Membership(sid, "C2", CERTAIN_MEMBER))
    return SetFamily(sets, tuple(elements), tuple(memberships), (age,))


SAMPLES = {
    "toy_enrollment": toy_enrollment,
    "toy_enrollment_probabilities": toy_enrollment_probabilities,
    "courses_certain": lambda: courses("certain"),
    "courses_defined": lambda: courses("defined"),
    "courses_undefined": lambda: courses("undefined"),
    "age_classes": age_classes,
}
