"""Command line interface.

Exit codes: 0 success, 1 data error, 2 usage error. Data goes to stdout,
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Optional, Sequence

from .aggregate import AggregateSpec, CertaintyRule, ValueRule, summary_table
from .encode import DEFAULT_THEME, load_theme
from .ingest import DatasetError, parse
from .layout import (
    UnsupportedSetCount,
    layout_aggregate_matrix,
    layout_bipartite,
    layout_dotplot,
    layout_euler,
    layout_membership_matrix,
)
from .model import MembershipUncertain, UncertaintyClass, classify
from .render import render_svg

VIEWS = ("bipartite", "membership-matrix", "aggregate-matrix", "euler", "dotplot")
VARIANTS = ("full-links", "fans", "probability", "plain", "small-marks", "size-color")
VIEW_VARIANTS = {
    "bipartite": ("full-links", "fans", "probability"),
    "membership-matrix": ("plain", "small-marks", "size-color"),
}

FACET_NAMES = (
    ("membership", "set membership"),
    ("set_attributes", "set attributes"),
    ("element_attributes", "element attributes"),
)


class UsageError(Exception):
    pass


def _add_dataset(p: argparse.ArgumentParser) -> None:
    p.add_argument("dataset", help="dataset JSON file, or - for stdin")
    p.add_argument("--lenient", action="store_true", help="warn on unknown keys instead of failing")


def _add_aggregate_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--attribute", required=required)
    p.add_argument("--kind", choices=("proportion", "mean"))
    p.add_argument("--target", help="categorical level counted by --kind proportion")
    p.add_argument("--value-rule", choices=[r.value for r in ValueRule], default=ValueRule.USE_GIVEN.value)
    p.add_argument("--certainty-rule", choices=[r.value for r in CertaintyRule],
                   default=CertaintyRule.OVER_ALL.value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uncertainsets",
                                     description="Uncertainty-aware set visualization toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a dataset against the schema and invariants")
    _add_dataset(p)

    p = sub.add_parser("classify", help="report the uncertainty class of each data facet")
    _add_dataset(p)

    p = sub.add_parser("aggregate", help="aggregate an attribute per region or per set")
    _add_dataset(p)
    _add_aggregate_flags(p, required=True)
    p.add_argument("--scope", choices=("regions", "sets"), default="regions")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("render", help="render a view to SVG")
    _add_dataset(p)
    p.add_argument("--view", choices=VIEWS, required=True)
    p.add_argument("--variant", choices=VARIANTS)
    _add_aggregate_flags(p, required=False)
    p.add_argument("--theme", help="JSON theme file overriding encoder constants")
    p.add_argument("--legend", choices=("on", "off"), default="on")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    return parser


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _spec(args, family) -> AggregateSpec:
    try:
        schema = family.schema(args.attribute)
    except KeyError:
        raise ValueError(f"unknown attribute {args.attribute!r}") from None
    kind = args.kind or ("mean" if schema.is_numeric else "proportion")
    if kind == "proportion" and args.target is None:
        raise UsageError("--kind proportion needs --target <level>")
    return AggregateSpec(args.attribute, kind, args.target, ValueRule(args.value_rule),
                         CertaintyRule(args.certainty_rule))


def _fmt(x: Optional[float]) -> str:
    return "undefined" if x is None else f"{x:.4f}"


def cmd_validate(family, args, out) -> int:
    out.write(f"valid: {len(family.sets)} sets, {len(family.elements)} elements, "
              f"{len(family.memberships)} membership entries\n")
    return 0


def cmd_classify(family, args, out) -> int:
    result = classify(family)
    for attr, name in FACET_NAMES:
        cls: UncertaintyClass = getattr(result, attr)
        out.write(f"{attr.replace('_', ' ')}: {cls.symbol} ({name} / {cls.cell_name})\n")
    for note in result.notes:
        out.write(f"note: {note}\n")
    return 0


def cmd_aggregate(family, args, out) -> int:
    cells = summary_table(family, _spec(args, family), scope=args.scope)
    if args.format == "json":
        rows = [{"scope": c.label, "value": c.value, "certainty": c.certainty, "n_total": c.n_total,
                 "n_known": c.n_known, "n_flagged": c.n_flagged, "n_missing": c.n_missing}
                for c in cells]
        out.write(json.dumps(rows, indent=2, sort_keys=True) + "\n")
        return 0
    header = ("scope", "value", "certainty", "n_known", "n_flagged", "n_missing")
    rows = [header] + [(c.label, _fmt(c.value), _fmt(c.certainty), str(c.n_known), str(c.n_flagged),
                        str(c.n_missing)) for c in cells]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        out.write("\t".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")
    return 0


def cmd_render(family, args, out) -> int:
    theme = DEFAULT_THEME
    if args.theme:
        with open(args.theme, encoding="utf-8") as fh:
            theme = load_theme(fh.read())
    allowed = VIEW_VARIANTS.get(args.view, ())
    if args.variant and args.variant not in allowed:
        raise UsageError(f"--variant {args.variant} does not apply to --view {args.view}")

    view = args.view
    if view == "bipartite":
        spec = _spec(args, family) if args.attribute else None
        scene = layout_bipartite(family, args.variant or "full-links",
                                 with_aggregate_pies=spec is not None, spec=spec, theme=theme)
    elif view == "membership-matrix":
        scene = layout_membership_matrix(family, args.variant or "plain", theme=theme)
    elif view == "aggregate-matrix":
        if not args.attribute:
            raise UsageError("--view aggregate-matrix needs --attribute")
        scene = layout_aggregate_matrix(family, _spec(args, family), theme=theme)
    elif view == "euler":
        if len(family.sets) > 3 or not family.sets:
            raise UnsupportedSetCount(
                f"Euler view supports 1 to 3 sets, got {len(family.sets)}; use the matrix views instead")
        if args.attribute:
            textured = classify(family).element_attributes is UncertaintyClass.UBinary
            scene = layout_euler(family, "aggregate_textured" if textured else "aggregate",
                                 _spec(args, family), theme=theme)
        else:
            scene = layout_euler(family, "membership", theme=theme)
    else:
        if not args.attribute:
            raise UsageError("--view dotplot needs --attribute")
        scene = layout_dotplot(family, args.attribute, theme=theme)

    doc = render_svg(scene, legend=args.legend == "on", theme=theme)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(doc)
    else:
        out.flush()
        buffer = getattr(out, "buffer", None)
        if buffer is not None:
            buffer.write(doc)
            buffer.flush()
        else:
            out.write(doc.decode("utf-8"))
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "aggregate": cmd_aggregate,
    "render": cmd_render,
}


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            family = parse(_read(args.dataset), "lenient" if args.lenient else "strict")
            code = COMMANDS[args.command](family, args, stdout)
        except UsageError as exc:
            stderr.write(f"usage error: {exc}\n")
            code = 2
        except DatasetError as exc:
            if exc.violations:
                for v in exc.violations:
                    stderr.write(f"error: {v}\n")
            else:
                stderr.write(f"error: {exc}\n")
            code = 1
        except (MembershipUncertain, UnsupportedSetCount) as exc:
            stderr.write(f"error: {type(exc).__name__}: {exc}\n")
            code = 1
        except (OSError, KeyError, TypeError, ValueError) as exc:
            stderr.write(f"error: {exc}\n")
            code = 1
    for message in dict.fromkeys(str(w.message) for w in caught):
        stderr.write(f"warning: {message}\n")
    return code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
