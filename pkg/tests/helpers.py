"""Shared builders for the test suite."""
from __future__ import annotations

import io
import random
from typing import List, Sequence, Tuple

from uncertainsets.cli import main
from uncertainsets.model import (
    CERTAIN_MEMBER,
    CERTAIN_NON_MEMBER,
    UNCERTAIN,
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

LEVELS = ("x", "y", "z")


def certain_family(rng: random.Random, n_elements: int, n_sets: int, known_only: bool = True) -> SetFamily:
    """Certain memberships, one categorical and one numeric attribute."""
    attrs = (AttributeSchema.categorical("kind", LEVELS), AttributeSchema.numeric("score", 0, 100))
    sets = tuple(SetDef(f"S{j}") for j in range(n_sets))
    elements, memberships = [], []
    for i in range(n_elements):
        eid = f"e{i:03d}"
        values = {"kind": Known(rng.choice(LEVELS)), "score": Known(rng.randint(0, 100))}
        if not known_only:
            values["kind"] = rng.choice([values["kind"], Flagged(rng.choice(LEVELS)), Missing()])
            values["score"] = rng.choice([values["score"], Flagged(rng.randint(0, 100)), Missing(),
                                          Range(10, 40)])
        elements.append(Element(eid, attribute_values=values))
        for j in range(n_sets):
            if rng.random() < 0.4:
                memberships.append(Membership(eid, f"S{j}", CERTAIN_MEMBER))
    return SetFamily(sets, tuple(elements), tuple(memberships), attrs)


def mixed_family(rng: random.Random, n_elements: int = 8, n_sets: int = 3) -> SetFamily:
    """Every value kind and membership status, valid by construction."""
    attrs = (
        AttributeSchema.categorical("kind", LEVELS, uncertain_everywhere=rng.random() < 0.2),
        AttributeSchema.numeric("score", 0, 100, unit="pts"),
    )
    sets = tuple(SetDef(f"S{j}", f"Set {j}", membership_uncertain=rng.random() < 0.2)
                 for j in range(n_sets))
    elements, memberships = [], []
    for i in range(n_elements):
        eid = f"e{i:02d}"
        values = {
            "kind": rng.choice([Known(rng.choice(LEVELS)), Flagged(rng.choice(LEVELS)), Missing()]),
            "score": rng.choice([Known(rng.randint(0, 100)), Flagged(rng.uniform(0, 100)), Missing(),
                                 Range(rng.randint(0, 40), rng.randint(50, 100))]),
        }
        if rng.random() < 0.2:
            del values["score"]
        elements.append(Element(eid, f"item {i}", membership_uncertain=rng.random() < 0.2,
                                attribute_values=values))
        for j, s in enumerate(sets):
            options = [None, CERTAIN_NON_MEMBER, UNCERTAIN]
            if not s.membership_uncertain:
                options += [CERTAIN_MEMBER, probability(round(rng.uniform(0.01, 0.99), 3))]
            status = rng.choice(options)
            if status is not None:
                memberships.append(Membership(eid, f"S{j}", status))
    # an uncertain set needs at least one element that is not an explicit non-member
    for s in sets:
        if s.membership_uncertain:
            first = elements[0].id
            memberships = [m for m in memberships if m.key != (first, s.id)]
    return SetFamily(sets, tuple(elements), tuple(memberships), attrs,
                     disclaimer_uncertain=rng.random() < 0.1)


def region_family(signatures: Sequence[Tuple[str, ...]], per_region: int,
                  values: Sequence) -> SetFamily:
    """``per_region`` elements in each given region; ``values[i]`` is the score of the i-th member."""
    set_ids = sorted({s for sig in signatures for s in sig})
    attrs = (AttributeSchema.numeric("score", 0, 100),)
    elements, memberships = [], []
    for r, sig in enumerate(signatures):
        for i in range(per_region):
            eid = f"r{r}e{i:02d}"
            elements.append(Element(eid, attribute_values={"score": values[i]}))
            memberships.extend(Membership(eid, s, CERTAIN_MEMBER) for s in sig)
    return SetFamily(tuple(SetDef(s) for s in set_ids), tuple(elements), tuple(memberships), attrs)


class _Out(io.TextIOWrapper):
    def __init__(self) -> None:
        self.raw_bytes = io.BytesIO()
        super().__init__(self.raw_bytes, encoding="utf-8", newline="")

    def value(self) -> bytes:
        self.flush()
        return self.raw_bytes.getvalue()


def run_cli(args: List[str]) -> Tuple[int, bytes, str]:
    """Run the CLI in-process; returns (exit code, stdout bytes, stderr text)."""
    out, err = _Out(), io.StringIO()
    code = main([str(a) for a in args], stdout=out, stderr=err)
    return code, out.value(), err.getvalue()
