"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 malformed compact tree,
3 harness unavailable.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import cast, evalrun, report, syntax, udlir
from .brackets import BracketError, linearize, parse_bracket
from .cast import CAST_LABELS, MalformedCast
from .matcher import DEFAULT_STOPWORDS, MatcherConfig, match_score
from .metrics import DomainError, canonical_json

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MALFORMED = 2
EXIT_HARNESS = 3

HARNESS_ENV = "CASTBRIDGE_HARNESS"


def _read_input(spec: str) -> str:
    if spec == "-":
        return sys.stdin.read()
    return Path(spec).read_text(encoding="utf-8")


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def cmd_code2cast(args: argparse.Namespace) -> int:
    try:
        text = _read_input(args.input)
    except OSError as exc:
        return _fail(f"cannot read input: {exc}", EXIT_INPUT)
    try:
        program = syntax.parse_program(text)
    except syntax.UnsupportedConstruct as exc:
        return _fail(str(exc), EXIT_INPUT)
    except SyntaxError as exc:
        return _fail(f"syntax error: {exc}", EXIT_INPUT)
    tree = cast.compactize(program)
    print(linearize(tree, style=args.style))
    return EXIT_OK


def cmd_cast2code(args: argparse.Namespace) -> int:
    try:
        text = _read_input(args.input)
    except OSError as exc:
        return _fail(f"cannot read input: {exc}", EXIT_INPUT)
    try:
        tree = parse_bracket(text, CAST_LABELS)
        program = cast.expand(tree)
    except (BracketError, MalformedCast) as exc:
        if args.json:
            payload: dict = {"error": type(exc).__name__, "detail": str(exc)}
            if isinstance(exc, MalformedCast):
                payload["path"] = exc.path
            else:
                payload["position"] = exc.position
            print(canonical_json(payload))
        else:
            print(f"malformed tree: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    print(syntax.unparse(program), end="")
    return EXIT_OK


def cmd_ud2lir(args: argparse.Namespace) -> int:
    try:
        text = _read_input(args.input)
    except OSError as exc:
        return _fail(f"cannot read input: {exc}", EXIT_INPUT)
    try:
        trees = udlir.read_conllu(text)
    except (udlir.FormatError, udlir.CycleError, udlir.MultipleRoots) as exc:
        return _fail(f"bad dependency input: {exc}", EXIT_INPUT)
    if not trees:
        return _fail("no sentences in input", EXIT_INPUT)
    documents = []
    for dep in trees:
        ordered = udlir.to_ordered_tree(dep)
        trace: list[udlir.RuleFiring] | None = [] if args.dump_trace else None
        rewritten = udlir.apply_rules(ordered, trace=trace)
        if trace is not None:
            for firing in trace:
                print(f"# {firing.rule}: {firing.detail}", file=sys.stderr)
                print(f"#   {firing.snapshot}", file=sys.stderr)
        documents.append(udlir.lir_to_bracket(rewritten, style=args.style))
    separator = "\n" if args.style == "compact" else "\n\n"
    print(separator.join(documents))
    return EXIT_OK


def cmd_match(args: argparse.Namespace) -> int:
    stopwords = DEFAULT_STOPWORDS
    if args.stopwords is not None:
        try:
            words = Path(args.stopwords).read_text(encoding="utf-8").split()
        except OSError as exc:
            return _fail(f"cannot read stopwords: {exc}", EXIT_INPUT)
        stopwords = frozenset(w.lower() for w in words)
    try:
        cfg = MatcherConfig(stopwords=stopwords, threshold=args.threshold)
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)
    score = match_score(args.candidate, args.reference, cfg)
    print(canonical_json({"score": score, "match": score >= cfg.threshold}))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        manifest = evalrun.load_manifest(Path(args.manifest))
    except OSError as exc:
        return _fail(f"cannot read manifest: {exc}", EXIT_INPUT)
    except DomainError as exc:
        return _fail(f"bad manifest: {exc}", EXIT_INPUT)
    override = os.environ.get(HARNESS_ENV)
    if override:
        manifest = evalrun.EvalManifest(
            manifest.problems, manifest.k_values, override, manifest.timeout_s
        )
    try:
        document = evalrun.run_eval(manifest)
    except evalrun.HarnessUnavailable as exc:
        return _fail(f"harness unavailable: {exc}", EXIT_HARNESS)
    except DomainError as exc:
        return _fail(f"evaluation failed: {exc}", EXIT_INPUT)
    rendered = canonical_json(document)
    if args.out is not None:
        Path(args.out).write_text(rendered + "\n", encoding="utf-8")
    else:
        print(rendered)
    if args.report_dir is not None:
        for path in report.write_report(document, Path(args.report_dir)):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="castbridge",
        description="Compact-tree code transforms, dependency rewrites, "
        "fuzzy span matching and pass@k evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("code2cast", help="source file to compact-tree brackets")
    p.add_argument("input", help="source file, or - for stdin")
    p.add_argument("--style", choices=("compact", "pretty"), default="compact")
    p.set_defaults(func=cmd_code2cast)

    p = sub.add_parser("cast2code", help="compact-tree brackets to source")
    p.add_argument("input", help="bracket file, or - for stdin")
    p.add_argument("--json", action="store_true",
                   help="machine-readable error diagnostics")
    p.set_defaults(func=cmd_cast2code)

    p = sub.add_parser("ud2lir", help="dependency tree file to LIR brackets")
    p.add_argument("input", help=".conllu file, or - for stdin")
    p.add_argument("--style", choices=("compact", "pretty"), default="compact")
    p.add_argument("--dump-trace", action="store_true",
                   help="print one snapshot per rule firing to stderr")
    p.set_defaults(func=cmd_ud2lir)

    p = sub.add_parser("match", help="fuzzy-match two text spans")
    p.add_argument("candidate")
    p.add_argument("reference")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--stopwords", help="file of stopwords, whitespace separated")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("eval", help="run an evaluation manifest")
    p.add_argument("manifest", help="manifest JSON file")
    p.add_argument("--out", help="write results JSON here instead of stdout")
    p.add_argument("--report-dir",
                   help="also render CSV + figures into this directory")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
