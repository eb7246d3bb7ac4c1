"""Command-line interface: ``mmlint check|suggest|scaffold|induce|init``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import golden
from .artifacts import build_epics, emit_persona, emit_stories_table, load_bundle, load_personas, parse_stories_table
from .checks import EPIC_MODES, CheckConfig, compute_links, run_all
from .dsl import emit_model_dsl, load_model
from .errors import MMLintError
from .linker import suggest_links
from .reporting import CheckId, exit_code, render_json, render_text
from .scaffold import induce_model, link_to_draft, scaffold_personas, scaffold_stories

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _check_codes(text: str) -> list[CheckId]:
    codes = []
    for part in text.split(","):
        part = part.strip().upper()
        try:
            codes.append(CheckId(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown check {part!r}") from None
    return codes


def _fail(message: str) -> int:
    print(f"mmlint: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def cmd_check(args: argparse.Namespace) -> int:
    try:
        bundle = load_bundle(args.model, args.stories, args.personas, args.aliases)
    except (OSError, MMLintError) as exc:
        return _fail(str(exc))
    disabled = {code for group in args.disable for code in group}
    config = CheckConfig(enabled=frozenset(CheckId) - disabled, epic_mode=args.epic_mode)
    report = run_all(bundle, config)
    if args.format == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report, lenient=args.lenient))
    return exit_code(report, lenient=args.lenient)


def cmd_suggest(args: argparse.Namespace) -> int:
    try:
        bundle = load_bundle(args.model, args.stories, (), args.aliases)
    except (OSError, MMLintError) as exc:
        return _fail(str(exc))
    links = compute_links(bundle)
    unlinked = [s for s in bundle.stories if not links[s.id].functional]
    if not unlinked:
        print("no unlinked stories")
        return EXIT_OK
    for story in unlinked:
        print(f"{story.id}: {story.statement}")
        for node_id, score in suggest_links(story, bundle.model, bundle.aliases, args.k):
            print(f"  {score:.2f}  {node_id}  {bundle.model.nodes[node_id].label}")
    return EXIT_OK


def cmd_scaffold(args: argparse.Namespace) -> int:
    try:
        model = load_model(args.model)
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.kind == "personas":
            written = []
            for persona in scaffold_personas(model):
                path = out_dir / f"{persona.id}.persona.txt"
                path.write_text(emit_persona(persona), encoding="utf-8")
                written.append(path)
        else:
            path = out_dir / "stories.csv"
            stories = scaffold_stories(model)
            path.write_text(emit_stories_table(stories), encoding="utf-8")
            written = [path]
            print(f"{len(stories)} stories", file=sys.stderr)
    except (OSError, MMLintError) as exc:
        return _fail(str(exc))
    print(f"wrote {len(written)} file{'s' if len(written) != 1 else ''} to {out_dir}")
    return EXIT_OK


def cmd_induce(args: argparse.Namespace) -> int:
    try:
        stories_path = Path(args.stories)
        stories = parse_stories_table(stories_path.read_bytes(), source=str(stories_path))
        if not stories:
            return _fail(f"{stories_path} contains no stories")
        personas = load_personas(args.personas)
        model = induce_model(stories, build_epics(stories), personas)
        out = Path(args.output)
        out.write_text(emit_model_dsl(model), encoding="utf-8")
        written = [out]
        if args.stories_out:
            relinked = Path(args.stories_out)
            relinked.write_text(emit_stories_table(link_to_draft(stories, model)), encoding="utf-8")
            written.append(relinked)
    except (OSError, MMLintError) as exc:
        return _fail(str(exc))
    print(f"wrote {len(written)} file{'s' if len(written) != 1 else ''}: {', '.join(map(str, written))}")
    return EXIT_OK


def cmd_init(args: argparse.Namespace) -> int:
    try:
        written = golden.write_golden(args.out_dir, force=args.force)
    except (OSError, MMLintError) as exc:
        return _fail(str(exc))
    print(f"wrote {len(written)} files to {args.out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmlint",
        description="Cross-check a motivational model against personas and user stories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the consistency checks")
    check.add_argument("model", help=".mm or .mm.json model file")
    check.add_argument("stories", help="stories table (.csv or .tsv)")
    check.add_argument("-p", "--personas", nargs="*", default=[], metavar="PATH",
                       help="persona files or directories of *.persona.txt")
    check.add_argument("--aliases", metavar="PATH", help="alias file")
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.add_argument("--lenient", action="store_true", help="warnings do not fail the run")
    check.add_argument("--disable", type=_check_codes, action="append", default=[], metavar="CPn[,CPn...]")
    check.add_argument("--epic-mode", choices=EPIC_MODES, default="declared")
    check.set_defaults(func=cmd_check)

    suggest = sub.add_parser("suggest", help="suggest goals for stories that link to none")
    suggest.add_argument("model")
    suggest.add_argument("stories")
    suggest.add_argument("--aliases", metavar="PATH")
    suggest.add_argument("-k", type=_positive_int, default=3)
    suggest.set_defaults(func=cmd_suggest)

    scaffold = sub.add_parser("scaffold", help="generate persona or story skeletons from a model")
    scaffold.add_argument("model")
    scaffold.add_argument("kind", choices=("personas", "stories"))
    scaffold.add_argument("out_dir")
    scaffold.set_defaults(func=cmd_scaffold)

    induce = sub.add_parser("induce", help="draft a model from stories, epics and personas")
    induce.add_argument("stories")
    induce.add_argument("-p", "--personas", nargs="*", default=[], metavar="PATH")
    induce.add_argument("-o", "--output", required=True, help="where to write the draft .mm")
    induce.add_argument("--stories-out", metavar="PATH",
                        help="also write the stories relinked to the draft's leaves")
    induce.set_defaults(func=cmd_induce)

    init = sub.add_parser("init", help="write the case-study corpus to a directory")
    init.add_argument("out_dir")
    init.add_argument("--force", action="store_true")
    init.set_defaults(func=cmd_init)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
