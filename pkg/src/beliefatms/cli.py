"""Command-line interface.

Subcommands::

    beliefatms labels FILE                    print labels and nogoods
    beliefatms belief FILE [options]          print per-literal beliefs
    beliefatms recognize SCENE MODEL [opts]   rank scene interpretations

Exit codes: 0 success, 2 parse error, 3 semantic error, 4 total conflict.
All numbers print with nine decimal places; output is byte-deterministic
for fixed inputs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .atms import AtmsError, Engine
from .belief import (
    MissingMassError,
    TotalConflictError,
    belief_of_label,
    brute_force_belief,
    conditioned_belief,
)
from .clausefile import ClauseFileError, load_clause_file
from .recognition import (
    FormatError,
    interpret,
    load_model,
    load_scene,
    render_svg,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_CONFLICT = 4


def _fmt(value: float) -> str:
    return f"{value:.9f}"


def _load(path: str) -> tuple[Engine, dict[str, float]]:
    return load_clause_file(path)


def _cmd_labels(args: argparse.Namespace) -> int:
    engine, _ = _load(args.file)
    literals = engine.literals()
    if not literals and not engine.nogoods:
        return EXIT_OK
    for name in literals:
        label = engine.label_of(name)
        if label:
            body = ", ".join(engine.format_env(env) for env in label)
        else:
            body = "(none)"
        print(f"{name}: {body}")
    nogoods = engine.nogoods
    if nogoods:
        print("nogoods: " + ", ".join(engine.format_env(env) for env in nogoods))
    else:
        print("nogoods: (none)")
    return EXIT_OK


def _belief_line(engine, masses, name, conditioned, oracle):
    label = engine.label_of(name)
    if conditioned:
        value = conditioned_belief(label, engine.nogoods, masses)
    else:
        value = belief_of_label(label, masses)
    if not oracle:
        return _fmt(value)
    reference = brute_force_belief(engine, masses, name, conditioned=conditioned)
    return f"{_fmt(value)} {_fmt(reference)} {abs(value - reference):.3e}"


def _cmd_belief(args: argparse.Namespace) -> int:
    engine, masses = _load(args.file)
    conditioned = not args.raw
    if args.literal is not None:
        if not engine.has_node(args.literal):
            raise AtmsError(f"unknown literal: {args.literal!r}")
        print(_belief_line(engine, masses, args.literal, conditioned, args.oracle))
        return EXIT_OK
    for name in engine.literals():
        line = _belief_line(engine, masses, name, conditioned, args.oracle)
        print(f"{name} {line}")
    if engine.nogoods:
        print(f"nogood {_fmt(belief_of_label(engine.nogoods, masses))}")
    return EXIT_OK


def _cmd_recognize(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    model = load_model(args.model)
    interpretations = interpret(scene, model)
    shown = interpretations[: args.top] if args.top is not None else interpretations
    if not shown:
        print("no interpretations")
    for rank, result in enumerate(shown, start=1):
        assignments = " ".join(f"{h.rect_id}={h.part}" for h in result.hypotheses)
        status = "complete" if result.complete else "partial"
        print(f"{rank} {_fmt(result.belief)} {status} {assignments}")
    if args.svg is not None:
        top = interpretations[0] if interpretations else None
        Path(args.svg).write_text(render_svg(scene, top), encoding="utf-8")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beliefatms",
        description=(
            "Truth maintenance over weighted Horn clauses with "
            "Dempster-Shafer belief evaluation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    labels = sub.add_parser(
        "labels", help="print each literal's label and the nogood set"
    )
    labels.add_argument("file", help="clause file")
    labels.set_defaults(handler=_cmd_labels)

    belief = sub.add_parser("belief", help="print per-literal belief values")
    belief.add_argument("file", help="clause file")
    belief.add_argument("--literal", help="report only this literal, value only")
    mode = belief.add_mutually_exclusive_group()
    mode.add_argument(
        "--raw", action="store_true", help="skip conditioning on the nogoods"
    )
    mode.add_argument(
        "--conditioned",
        action="store_true",
        help="condition on the nogoods (the default)",
    )
    belief.add_argument(
        "--oracle",
        action="store_true",
        help="also print the enumeration oracle value and the difference",
    )
    belief.set_defaults(handler=_cmd_belief)

    recognize = sub.add_parser(
        "recognize", help="rank figure interpretations of a rectangle scene"
    )
    recognize.add_argument("scene", help="scene JSON file")
    recognize.add_argument("model", help="figure model JSON file")
    recognize.add_argument("--top", type=int, help="show at most this many rows")
    recognize.add_argument("--svg", help="write an SVG of the best interpretation")
    recognize.set_defaults(handler=_cmd_recognize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ClauseFileError, FormatError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (AtmsError, MissingMassError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_SEMANTIC
    except TotalConflictError as err:
        print(f"error: total conflict: {err}", file=sys.stderr)
        return EXIT_CONFLICT


if __name__ == "__main__":
    sys.exit(main())
