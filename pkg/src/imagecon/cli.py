"""Command-line front end.

    imagecon normalize [FILE] [--trace] [--format text|json]
    imagecon questions [FILE] [--lexicon FILE] [--format text|json]
    imagecon ask [FILE] --pair I,J [--label WORD] [--lexicon FILE]
    imagecon graph [FILE] [--pair I,J ...] [--label WORD ...] [--format dot|json]

Exit status is 0 on success, 1 for bad input and 2 for bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

from .core import AssociativePair, IcError, InvalidPairError, NotFoundError, render_pair, render_term
from .graph import export, to_graph
from .ingest import (
    PronounLexicon,
    iter_treebank,
    lookup_label,
    parse_lexicon,
    parse_native,
    split_blocks,
)
from .normalize import EncodedSyntagma, derive, format_trace, to_anf
from .qa import enumerate_questions, linearize, partition, question_record, render_question

COMMANDS = ("normalize", "questions", "ask", "graph")
OUTPUT_FORMATS = {
    "normalize": ("text", "json"),
    "questions": ("text", "json"),
    "ask": ("text", "json"),
    "graph": ("dot", "json"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    input_format: str = "native"
    lexicon_path: str | None = None
    pairs: list[str] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    output_format: str | None = None
    trace: bool = False
    output_path: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.output_format is None:
            self.output_format = OUTPUT_FORMATS[self.command][0]
        if self.output_format not in OUTPUT_FORMATS[self.command]:
            raise UsageError(f"--format {self.output_format} is not available for {self.command}")
        if self.input_format not in ("native", "treebank"):
            raise UsageError(f"unknown input format {self.input_format!r}")
        if self.command == "ask" and len(self.pairs) != 1:
            raise UsageError("ask needs exactly one --pair")
        if self.command in ("ask", "graph") and len(self.labels) > max(len(self.pairs), 1):
            raise UsageError("more --label values than --pair values")


def _resolve_pair(spec: str, s: EncodedSyntagma) -> AssociativePair:
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != 2 or not all(parts):
        raise UsageError(f"--pair expects HEAD,DEPENDENT, got {spec!r}")
    indices = []
    for part in parts:
        if part.isdigit():
            idx = int(part)
        else:
            hits = [i for i, lex in s.lexemes.items() if lex == part]
            if len(hits) != 1:
                raise UsageError(f"--pair word {part!r} matches {len(hits)} images")
            idx = hits[0]
        if not 1 <= idx <= len(s):
            raise UsageError(f"--pair index {idx} out of range 1..{len(s)}")
        indices.append(idx)
    try:
        return AssociativePair(*indices)
    except InvalidPairError as exc:
        raise UsageError(f"--pair {spec!r}: {exc}") from None


def _syntagmas(config: RunConfig, text: str) -> list[EncodedSyntagma]:
    if config.input_format == "treebank":
        return list(iter_treebank(text))
    return [parse_native(block) for block in split_blocks(text)]


def _normalize(s: EncodedSyntagma, config: RunConfig) -> str:
    lexemes = s.lexemes
    if config.output_format == "json":
        steps = derive(s)
        term = steps[-1].term
        doc = {
            "pairs": [{"head": p.head, "dependent": p.dependent, "text": render_pair(p, lexemes)} for p in term.pairs],
            "anf": render_term(term),
        }
        if config.trace:
            doc["trace"] = format_trace(steps).splitlines()
        return json.dumps(doc, ensure_ascii=False)
    if config.trace:
        return format_trace(derive(s))
    return "\n".join(render_pair(p, lexemes) for p in to_anf(s).pairs)


def _label(config: RunConfig, lex: PronounLexicon, pair: AssociativePair, s: EncodedSyntagma, n: int) -> str:
    if n < len(config.labels):
        return config.labels[n]
    return lookup_label(lex, pair, s)


def _ask(s: EncodedSyntagma, config: RunConfig, lex: PronounLexicon) -> str:
    term = to_anf(s)
    pair = _resolve_pair(config.pairs[0], s)
    if pair not in term:
        raise UsageError(f"--pair {render_pair(pair)} is not a pair of the input")
    lq = linearize(partition(term, pair), _label(config, lex, pair, s, 0))
    if config.output_format == "json":
        return json.dumps(question_record(pair, lq, s.lexemes), ensure_ascii=False)
    return render_question(lq, s.lexemes)


def _questions(s: EncodedSyntagma, config: RunConfig, lex: PronounLexicon) -> str:
    found = enumerate_questions(to_anf(s), lambda p: lookup_label(lex, p, s))
    if config.output_format == "json":
        return "\n".join(json.dumps(question_record(p, lq, s.lexemes), ensure_ascii=False) for p, lq in found)
    return "\n".join(render_question(lq, s.lexemes) for _, lq in found)


def _graph(s: EncodedSyntagma, config: RunConfig, lex: PronounLexicon) -> str:
    term = to_anf(s)
    marks = []
    for n, spec in enumerate(config.pairs):
        pair = _resolve_pair(spec, s)
        if pair not in term:
            raise UsageError(f"--pair {render_pair(pair)} is not a pair of the input")
        marks.append((pair, _label(config, lex, pair, s, n)))
    return export(to_graph(term, marks, s.lexemes), config.output_format).rstrip("\n")


_HANDLERS = {"questions": _questions, "ask": _ask, "graph": _graph}


def run(config: RunConfig, text: str, stderr: TextIO | None = None) -> tuple[int, str]:
    """Execute one command over ``text``; returns ``(exit_code, output)``."""
    stderr = stderr if stderr is not None else sys.stderr
    try:
        lex = PronounLexicon()
        if config.lexicon_path:
            lex = parse_lexicon(Path(config.lexicon_path).read_text(encoding="utf-8"))
        syntagmas = _syntagmas(config, text)
        if not syntagmas:
            raise IcError("no sentence found in input")
        chunks = []
        for s in syntagmas:
            if config.command == "normalize":
                chunks.append(_normalize(s, config))
            else:
                chunks.append(_HANDLERS[config.command](s, config, lex))
    except UsageError as exc:
        print(f"imagecon: usage error: {exc}", file=stderr)
        return 2, ""
    except (IcError, OSError) as exc:
        print(f"imagecon: error: {exc}", file=stderr)
        return 1, ""
    return 0, "\n\n".join(chunks) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imagecon", description="Image-construction ANF and question generation.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", help="input file (default: standard input)")
        p.add_argument("--input-format", choices=("native", "treebank"), default="native")
        p.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS[name])
        p.add_argument("--lexicon", help="pronoun lexicon file")
        p.add_argument("--output", "-o", help="write output here instead of standard output")
        if name == "normalize":
            p.add_argument("--trace", action="store_true", help="print each rewrite step")
        if name in ("ask", "graph"):
            p.add_argument("--pair", action="append", default=[], metavar="I,J")
            p.add_argument("--label", action="append", default=[])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            input_format=args.input_format,
            lexicon_path=args.lexicon,
            pairs=getattr(args, "pair", []),
            labels=getattr(args, "label", []),
            output_format=args.output_format,
            trace=getattr(args, "trace", False),
            output_path=args.output,
        )
    except UsageError as exc:
        print(f"imagecon: usage error: {exc}", file=sys.stderr)
        return 2
    try:
        if config.input_path and config.input_path != "-":
            text = Path(config.input_path).read_text(encoding="utf-8")
        else:
            text = sys.stdin.buffer.read().decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"imagecon: error: {exc}", file=sys.stderr)
        return 1
    code, output = run(config, text)
    if code == 0:
        if config.output_path:
            Path(config.output_path).write_text(output, encoding="utf-8")
        else:
            sys.stdout.buffer.write(output.encode("utf-8"))
            sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
