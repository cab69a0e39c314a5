"""Command-line surface for lexicon building, merging, scoring and evaluation.

Exit codes: 0 success, 2 missing input file, 64 bad flags, 65 malformed data.
Every command that writes files also writes a ``<output>.manifest.json``
recording inputs, outputs, the config snapshot and wall time.
"""

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .attribution import (
    MalformedRow, ValueOutOfRange, accumulate_word_stats, parse_attribution_file,
    postprocess, split_by_polarity,
)
from .builder import build_xlex, read_xlex_csv, write_xlex_csv
from .engine import ModelConfig, sentence_sentiment
from .evaluation import (
    EmptyDataset, benchmark, evaluate, grid_search, render_report, report_to_dict,
)
from .merge import combine, normalize, prepare_lm, read_combined_csv, write_combined_csv
from .textprep import ResourceError, default_resources, load_resources

EXIT_OK = 0
EXIT_MISSING_FILE = 2
EXIT_USAGE = 64
EXIT_DATA = 65

FEATURE_ALIASES = {"avg": "shap_avg", "ratio": "shap_ratio", "count": "count"}

LEXICON_FORMAT_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_config_file(path: Path) -> dict:
    """Read a flat ``key = value`` config file; later flags override these."""
    values = {}
    for i, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{i}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip().strip('"')
    return values


def _parse_features(text: str) -> frozenset:
    features = set()
    for name in text.split(","):
        name = name.strip()
        if name not in FEATURE_ALIASES:
            raise UsageError(f"unknown feature {name!r} (expected avg,ratio,count)")
        features.add(FEATURE_ALIASES[name])
    return frozenset(features)


def _parse_coeffs(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise UsageError("--coeffs expects four comma-separated values")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise UsageError(f"bad coefficient in {text!r}") from None


def _build_model_config(args, file_config: dict) -> ModelConfig:
    selector = args.selector or file_config.get("selector", "combined")
    features_text = args.features or file_config.get("features", "avg")
    coeffs_text = args.coeffs or file_config.get("coeffs", "0.3,0.1,0.1,0.5")
    coeffs = _parse_coeffs(coeffs_text)
    try:
        return ModelConfig(lexicon_selector=selector,
                           decision_features=_parse_features(features_text),
                           c_xlp=coeffs[0], c_xlo=coeffs[1],
                           c_lmp=coeffs[2], c_lmo=coeffs[3])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _resources(args):
    if args.resources:
        return load_resources(args.resources)
    return default_resources()


def _require_files(*paths):
    for path in paths:
        if not Path(path).exists():
            raise FileNotFoundError(path)


def _read_sentences(path: Path):
    """Read one-sentence-per-line text or a ``sentence,label`` CSV.

    Returns (sentences, labels); labels is None for plain text input.
    """
    with open(path, encoding="utf-8", newline="") as f:
        first = f.readline()
        f.seek(0)
        if first.strip().lower().startswith("sentence,label"):
            reader = csv.DictReader(f)
            rows = [(row["sentence"], row["label"].strip().lower()) for row in reader]
            return [r[0] for r in rows], [r[1] for r in rows]
        sentences = [line.rstrip("\n") for line in f if line.strip()]
        return sentences, None


def _write_manifest(command: str, inputs, outputs, config_snapshot: dict,
                    started: float) -> None:
    if not outputs:
        return
    manifest = {
        "command": command,
        "inputs": [str(p) for p in inputs],
        "outputs": [str(p) for p in outputs],
        "config": config_snapshot,
        "wall_time_seconds": time.perf_counter() - started,
    }
    manifest_path = Path(f"{outputs[0]}.manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def cmd_build(args) -> int:
    started = time.perf_counter()
    _require_files(*args.attributions)
    res = _resources(args)

    positive, negative = [], []
    total_records = 0
    for path in args.attributions:
        with open(path, "rb") as f:
            records = parse_attribution_file(f)
        total_records += len(records)
        pos, neg = split_by_polarity(records)
        positive.extend(pos)
        negative.extend(neg)
    if total_records == 0:
        print("warning: attribution input contains no records", file=sys.stderr)

    pos_stats = postprocess(accumulate_word_stats(positive), res)
    neg_stats = postprocess(accumulate_word_stats(negative), res)
    lexicon = build_xlex(pos_stats, neg_stats, res)
    write_xlex_csv(lexicon, args.out)

    n_pos = sum(1 for e in lexicon.values() if e.category == "positive")
    n_neg = len(lexicon) - n_pos
    print(f"lexicon: {len(lexicon)} words ({n_pos} positive, {n_neg} negative) -> {args.out}")
    _write_manifest("build", args.attributions, [args.out],
                    {"resources": args.resources or "bundled"}, started)
    return EXIT_OK


def cmd_merge_lm(args) -> int:
    started = time.perf_counter()
    _require_files(args.xlex, args.lm_positive, args.lm_negative)
    res = _resources(args)

    xlex = read_xlex_csv(args.xlex)
    pos_words = [w for w in Path(args.lm_positive).read_text(encoding="utf-8").split() if w]
    neg_words = [w for w in Path(args.lm_negative).read_text(encoding="utf-8").split() if w]
    lm = prepare_lm(pos_words, neg_words, res)

    combined = combine(xlex, lm, source=args.source)
    standard_path = Path(f"{args.out_prefix}.csv")
    norm_path = Path(f"{args.out_prefix}.norm.csv")
    write_combined_csv(combined, standard_path)
    write_combined_csv(normalize(combined), norm_path)
    print(f"combined lexicon: {len(combined.entries)} words -> {standard_path}, {norm_path}")
    _write_manifest("merge-lm", [args.xlex, args.lm_positive, args.lm_negative],
                    [standard_path, norm_path], {"source": args.source}, started)
    return EXIT_OK


def _config_snapshot(config: ModelConfig) -> dict:
    return {
        "selector": config.lexicon_selector,
        "features": sorted(config.decision_features),
        "coeffs": [config.c_xlp, config.c_xlo, config.c_lmp, config.c_lmo],
    }


def cmd_classify(args, file_config) -> int:
    started = time.perf_counter()
    _require_files(args.lexicon, args.input)
    res = _resources(args)
    config = _build_model_config(args, file_config)
    lexicon = read_combined_csv(args.lexicon)
    sentences, _ = _read_sentences(Path(args.input))

    out_stream = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        writer = csv.writer(out_stream, lineterminator="\n")
        writer.writerow(["sentence_index", "value", "polarity", "matched_words"])
        for i, text in enumerate(sentences):
            verdict = sentence_sentiment(text, lexicon, config, res)
            writer.writerow([i, f"{verdict.value:.12g}", verdict.polarity,
                             verdict.matched_words])
    finally:
        if args.out:
            out_stream.close()
    if args.out:
        _write_manifest("classify", [args.lexicon, args.input], [args.out],
                        _config_snapshot(config), started)
    return EXIT_OK


def cmd_evaluate(args, file_config) -> int:
    started = time.perf_counter()
    _require_files(args.lexicon, args.input)
    res = _resources(args)
    config = _build_model_config(args, file_config)
    lexicon = read_combined_csv(args.lexicon)
    sentences, labels = _read_sentences(Path(args.input))
    if labels is None:
        raise UsageError("evaluate requires a CSV with a sentence,label header")

    report = evaluate(list(zip(sentences, labels)), lexicon, config, res)
    print(render_report(report))
    outputs = []
    if args.out:
        Path(args.out).write_text(json.dumps(report_to_dict(report), indent=2) + "\n",
                                  encoding="utf-8")
        outputs.append(args.out)
    _write_manifest("evaluate", [args.lexicon, args.input], outputs,
                    _config_snapshot(config), started)
    return EXIT_OK


def cmd_grid(args, file_config) -> int:
    started = time.perf_counter()
    _require_files(*args.lexicon, *args.dataset)
    res = _resources(args)
    features_text = args.features or file_config.get("features", "avg")
    features = _parse_features(features_text)
    values = [float(v) for v in args.values.split(",")] if args.values else None

    lexicons = [read_combined_csv(p) for p in args.lexicon]
    datasets = []
    for path in args.dataset:
        sentences, labels = _read_sentences(Path(path))
        if labels is None:
            raise UsageError(f"{path}: grid datasets need a sentence,label header")
        datasets.append(list(zip(sentences, labels)))

    kwargs = {"features": features, "threads": args.threads}
    if values:
        kwargs["values"] = values
    result = grid_search(lexicons, datasets, res, **kwargs)

    cell_keys = [k for k in next(iter(result.table.values())) if k != "aggregated_average"]
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["c_xlp", "c_xlo", "c_lmp", "c_lmo", "aggregated_average"]
                        + cell_keys)
        for quad in sorted(result.table):
            cells = result.table[quad]
            writer.writerow(list(quad) + [f"{cells['aggregated_average']:.12g}"]
                            + [f"{cells[k]:.12g}" for k in cell_keys])
    print(f"best coefficients: {result.best} "
          f"(aggregated average {result.aggregated_average:.4f})")
    _write_manifest("grid", list(args.lexicon) + list(args.dataset), [args.out],
                    {"features": sorted(features)}, started)
    return EXIT_OK


def cmd_bench(args, file_config) -> int:
    started = time.perf_counter()
    _require_files(args.lexicon, args.input)
    res = _resources(args)
    config = _build_model_config(args, file_config)
    sentences, _ = _read_sentences(Path(args.input))

    report = benchmark(sentences, args.lexicon, config, args.reps, res)
    for i, t in enumerate(report.times_seconds, start=1):
        print(f"run {i}: {t:.4f} s")
    print(f"mean: {report.mean_seconds:.4f} s  "
          f"throughput: {report.sentences_per_second:.1f} sentences/s  "
          f"lexicon size: {report.lexicon_bytes} bytes")
    _write_manifest("bench", [args.lexicon, args.input], [],
                    _config_snapshot(config), started)
    return EXIT_OK


def _add_model_flags(parser):
    parser.add_argument("--selector", choices=["xlex", "lm", "combined"])
    parser.add_argument("--features", help="comma list of avg,ratio,count")
    parser.add_argument("--coeffs", help="c_xlp,c_xlo,c_lmp,c_lmo")
    parser.add_argument("--normalized", action="store_true",
                        help="informational flag; normalization state comes from the lexicon metadata")


def build_parser() -> _Parser:
    parser = _Parser(prog="xlex",
                     description="Explainable sentiment lexicon toolkit")
    parser.add_argument("--version", action="version",
                        version=f"xlex {__version__} (lexicon format v{LEXICON_FORMAT_VERSION})")
    parser.add_argument("--resources", help="directory with lemmas.tsv/english.txt/stopwords.txt")
    parser.add_argument("--config", help="key=value config file; flags override")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an explainable lexicon from attribution CSVs")
    p.add_argument("attributions", nargs="+")
    p.add_argument("--out", required=True)

    p = sub.add_parser("merge-lm", help="combine an explainable lexicon with LM word lists")
    p.add_argument("xlex")
    p.add_argument("lm_positive")
    p.add_argument("lm_negative")
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--source", default="", help="source dataset name for the metadata")

    p = sub.add_parser("classify", help="classify sentences with a combined lexicon")
    p.add_argument("input")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--out")
    _add_model_flags(p)

    p = sub.add_parser("evaluate", help="evaluate on a labeled sentence,label CSV")
    p.add_argument("input")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--out", help="write the report as JSON")
    _add_model_flags(p)

    p = sub.add_parser("grid", help="coefficient grid search")
    p.add_argument("--lexicon", action="append", required=True)
    p.add_argument("--dataset", action="append", required=True)
    p.add_argument("--values", help="comma list of coefficient values")
    p.add_argument("--features", help="comma list of avg,ratio,count")
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="timing and model-size benchmark")
    p.add_argument("input")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--reps", type=int, default=10)
    _add_model_flags(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config and not Path(args.config).exists():
            raise FileNotFoundError(args.config)
        file_config = _load_config_file(Path(args.config)) if args.config else {}
        if args.command == "build":
            return cmd_build(args)
        if args.command == "merge-lm":
            return cmd_merge_lm(args)
        if args.command == "classify":
            return cmd_classify(args, file_config)
        if args.command == "evaluate":
            return cmd_evaluate(args, file_config)
        if args.command == "grid":
            return cmd_grid(args, file_config)
        if args.command == "bench":
            return cmd_bench(args, file_config)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"missing file: {exc}", file=sys.stderr)
        return EXIT_MISSING_FILE
    except (MalformedRow, ValueOutOfRange, ResourceError, EmptyDataset, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
