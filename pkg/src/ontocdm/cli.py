"""Command-line front door: transform, validate, metrics, emit.

Data artifacts go to files or standard output; summaries and
diagnostics prose go to standard error. Exit codes: 0 success,
1 error-severity findings, 2 usage or input failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cdm, emit, engine, metrics, ontoclean, owl_reader
from .diagnostics import diagnostics_to_json_obj, has_errors
from .errors import ToolkitError

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2


def _load_ontology(path: str, strict: bool) -> owl_reader.ReadReport:
    data = Path(path).read_bytes()
    if path.endswith(".json"):
        return owl_reader.read_json(data)
    config = owl_reader.ReaderConfig(strict=strict)
    return owl_reader.read_rdfxml(data, config)


def _write_output(data: bytes | str, out: str | None):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
            + "\n").encode("utf-8")


def cmd_transform(args) -> int:
    report = _load_ontology(args.input, args.strict)
    for warning in report.warnings:
        print(f"warning: {warning.message}", file=sys.stderr)
    roots = set(args.roots) if args.roots else None
    options = engine.TransformOptions(roots=roots,
                                      drop_builtins=not args.keep_builtins)
    model, trace = engine.transform(report.ontology, options)
    if args.trace:
        Path(args.trace).write_bytes(trace.to_json())
    counts = cdm.model_counts(model)
    print(f"entity types: {counts.entity_types}  "
          f"relationships: {counts.relationships}  "
          f"attributes: {counts.attributes}  "
          f"generalizations: {counts.generalizations}", file=sys.stderr)
    if args.format == "plantuml":
        _write_output(emit.emit_plantuml(model), args.out)
    else:
        _write_output(emit.emit_json(model), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    model = cdm.model_from_json(Path(args.model).read_bytes())
    annotations = ontoclean.load_annotations(args.annotations)
    diagnostics = cdm.validate_model(model)
    structural_errors = has_errors(diagnostics)
    if not structural_errors:
        diagnostics = diagnostics + ontoclean.validate_model(model, annotations)
    payload = _json_bytes(diagnostics_to_json_obj(diagnostics))
    sys.stdout.buffer.write(payload)
    sys.stdout.buffer.flush()
    for diag in diagnostics:
        print(f"{diag.severity}: {diag.code} "
              f"[{', '.join(diag.subjects)}] {diag.message}", file=sys.stderr)
    if args.repairs == "apply":
        if structural_errors:
            print("error: cannot apply repairs to a structurally invalid model",
                  file=sys.stderr)
            return EXIT_USAGE
        repairs = [d.suggested_repair for d in diagnostics
                   if d.suggested_repair is not None]
        repaired = ontoclean.apply_repairs(model, repairs)
        _write_output(cdm.model_to_json(repaired), args.out)
        print(f"applied {len(repairs)} repair(s)", file=sys.stderr)
    elif args.out:
        Path(args.out).write_bytes(payload)
    return EXIT_FINDINGS if has_errors(diagnostics) else EXIT_OK


def _counts_from_pair(entry: dict, base: Path, index: int) -> metrics.ConstructCounts:
    for key in ("ontology_path", "model_path"):
        if key not in entry or not isinstance(entry[key], str):
            raise ToolkitError(f"pairs manifest entry {index} lacks {key}")
    ontology_path = base / entry["ontology_path"]
    model_path = base / entry["model_path"]
    report = _load_ontology(str(ontology_path), strict=False)
    model = cdm.model_from_json(model_path.read_bytes())
    return metrics.count_constructs(report.ontology, model)


def cmd_metrics(args) -> int:
    if not (args.pairs or (args.gold and args.generated) or args.lexicon):
        print("error: nothing to do; pass --pairs, --gold/--generated, "
              "or --lexicon", file=sys.stderr)
        return EXIT_USAGE
    output: dict = {}
    if args.pairs:
        manifest_path = Path(args.pairs)
        try:
            manifest = json.loads(manifest_path.read_bytes())
        except json.JSONDecodeError as exc:
            raise ToolkitError(f"pairs manifest is not valid JSON: {exc}") from exc
        if not isinstance(manifest, list):
            raise ToolkitError("pairs manifest must be a JSON array")
        counts = [_counts_from_pair(entry, manifest_path.parent, i)
                  for i, entry in enumerate(manifest)]
        table = metrics.regression_table(counts)
        output["regression"] = {key: result.to_json_obj()
                                for key, result in sorted(table.items())}
        if args.figures:
            from . import figures
            points = metrics.regression_points(counts)
            written = figures.render_regression_report(points, table, args.figures)
            for path in written:
                print(f"wrote {path}", file=sys.stderr)
    generated_model = None
    if args.generated:
        generated_model = cdm.model_from_json(Path(args.generated).read_bytes())
    if args.gold and args.generated:
        gold_model = cdm.model_from_json(Path(args.gold).read_bytes())
        output["accuracy"] = metrics.compare_models(generated_model,
                                                    gold_model).to_json_obj()
    if args.lexicon:
        if generated_model is None:
            print("error: --lexicon needs --generated for the names to check",
                  file=sys.stderr)
            return EXIT_USAGE
        lexicon = metrics.load_lexicon(args.lexicon)
        names = metrics.model_element_names(generated_model)
        output["lexical"] = metrics.lexical_check(names, lexicon).to_json_obj()
    _write_output(_json_bytes(output), args.out)
    return EXIT_OK


def cmd_emit(args) -> int:
    model = cdm.model_from_json(Path(args.model).read_bytes())
    if args.format == "plantuml":
        opts = emit.EmitOptions(format="plantuml",
                                include_provenance_comments=args.provenance_comments)
        _write_output(emit.emit_plantuml(model, opts), args.out)
    else:
        _write_output(emit.emit_json(model), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontocdm",
        description="Generate, validate, and evaluate conceptual data models "
                    "derived from domain ontologies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform",
                       help="map an ontology to a conceptual data model")
    p.add_argument("input", help="ontology file (.owl/.rdf RDF/XML, or .json)")
    p.add_argument("--roots", nargs="+", metavar="NAME",
                   help="limit the transform to concepts reachable from these")
    p.add_argument("--format", choices=("plantuml", "json"), default="json")
    p.add_argument("--strict", action="store_true",
                   help="fail on unsupported constructs instead of skipping")
    p.add_argument("--keep-builtins", action="store_true",
                   help="map owl:Thing/owl:Nothing instead of dropping them")
    p.add_argument("--trace", metavar="PATH",
                   help="write the transformation trace JSON here")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("validate",
                       help="check a model against the ontological rules")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--annotations", required=True, metavar="PATH",
                   help="meta-annotation sidecar JSON")
    p.add_argument("--repairs", choices=("suggest", "apply"), default="suggest")
    p.add_argument("--out", metavar="PATH",
                   help="with suggest: diagnostics JSON; with apply: "
                        "the repaired model JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("metrics", help="evaluation measures")
    p.add_argument("--pairs", metavar="MANIFEST",
                   help="JSON array of {ontology_path, model_path} for the "
                        "construct-correlation regression")
    p.add_argument("--gold", metavar="PATH", help="gold model JSON")
    p.add_argument("--generated", metavar="PATH", help="generated model JSON")
    p.add_argument("--lexicon", metavar="PATH",
                   help="newline-delimited word list")
    p.add_argument("--figures", metavar="DIR",
                   help="write regression figures and regression.csv here")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("emit", help="render a model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--format", choices=("plantuml", "json"), default="plantuml")
    p.add_argument("--provenance-comments", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
