"""Command line: compile, classify and check ontology programs.

    hypernorm compile size.onto
    hypernorm classify exemplar.onto --format machine
    hypernorm check exemplar.onto
    hypernorm exemplar --out build/

Inputs are DSL programs (``.onto``) or axiom dumps (``.jsonl``). Errors are
reported as ``file:line:col: message`` on stderr with exit status 1; usage
errors exit with 2.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import classifier, dsl, exemplar, serializer
from .errors import HypernormError


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".jsonl"):
        return serializer.load_jsonl(text), None
    forms = dsl.parse(text)
    return None, forms


def _ontology(path: str):
    ont, forms = _load(path)
    return ont if ont is not None else dsl.eval_program(forms)


def _compile(args, out, err) -> int:
    ont, forms = _load(args.input)
    if ont is None:
        if args.trace:
            for form, axioms in dsl.expand_trace(forms):
                head = dsl.to_source(form.items[0]) if form.items else "()"
                err.write(f"{args.input}:{form.line}:{form.col}: {head}: {len(axioms)} axioms\n")
                for ax in axioms:
                    err.write(f"    {serializer.format_axiom(ax)}\n")
        ont = dsl.eval_program(forms)
    if args.jsonl:
        text = serializer.dump_jsonl(ont)
    else:
        opts = serializer.RenderOptions(
            include_annotations=args.annotations,
            include_properties=args.properties,
            include_header=args.header,
        )
        text = serializer.render(ont, opts)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def _classify(args, out, err) -> int:
    ont = _ontology(args.input)
    dag = classifier.classify(ont, ont.facets, skip_non_fragment=args.skip_non_fragment)
    if dag.skipped:
        for cls, why in dag.skipped.items():
            err.write(f"{args.input}: skipped {cls}: {why}\n")
    out.write(dag.to_json() if args.format == "machine" else dag.to_text())
    return 0


def _check(args, out, err) -> int:
    ont = _ontology(args.input)
    report = classifier.check_against_oracle(ont, ont.facets, open_world_pad=args.open_world_pad)
    for a, b, structural, semantic in report.mismatches:
        err.write(f"{args.input}: mismatch subsumes({a}, {b}): classifier={structural} oracle={semantic}\n")
    out.write(report.summary() + "\n")
    return 0 if report.ok else 1


def _exemplar(args, out, err) -> int:
    rows = exemplar.load_rows(args.rows) if args.rows else None
    ont, registry = exemplar.build_exemplar(rows)
    dest = Path(args.out)
    dest.mkdir(parents=True, exist_ok=True)
    full = serializer.RenderOptions(include_annotations=True, include_properties=True, include_header=True)
    (dest / "aminoacid.omn").write_text(serializer.render(ont, full), encoding="utf-8")
    (dest / "aminoacid.jsonl").write_text(serializer.dump_jsonl(ont), encoding="utf-8")
    dag = classifier.classify(ont, registry)
    (dest / "classification.txt").write_text(dag.to_text(), encoding="utf-8")
    (dest / "classification.json").write_text(dag.to_json(), encoding="utf-8")
    report = classifier.check_against_oracle(ont, registry)
    (dest / "oracle.txt").write_text(report.summary() + "\n", encoding="utf-8")
    out.write(f"wrote {dest}: {len(ont.classes())} classes, {len(ont.axioms)} axioms; {report.summary()}\n")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypernorm", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="render a program as Manchester syntax")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--annotations", action="store_true", help="include Annotations sections")
    p.add_argument("--properties", action="store_true", help="include ObjectProperty frames")
    p.add_argument("--header", action="store_true", help="include Prefix/Ontology header")
    p.add_argument("--jsonl", action="store_true", help="emit the JSON-lines axiom dump instead")
    p.add_argument("--trace", action="store_true", help="print per-form axioms to stderr")
    p.set_defaults(func=_compile)

    p = sub.add_parser("classify", help="print the inferred hierarchy")
    p.add_argument("input")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--skip-non-fragment", action="store_true")
    p.set_defaults(func=_classify)

    p = sub.add_parser("check", help="compare the classifier with the brute-force oracle")
    p.add_argument("input")
    p.add_argument("--open-world-pad", action="store_true")
    p.set_defaults(func=_check)

    p = sub.add_parser("exemplar", help="build the amino-acid ontology and its reports")
    p.add_argument("--rows", help="CSV of amino acids (defaults to the bundled Alanine row)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_exemplar)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    source = getattr(args, "input", None) or getattr(args, "rows", None) or "hypernorm"
    try:
        return args.func(args, out, err)
    except HypernormError as exc:
        where = f"{source}:{exc.line}:{exc.col}" if exc.line is not None else source
        err.write(f"{where}: {exc}\n")
        return 1
    except (OSError, ValueError) as exc:
        err.write(f"{source}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
