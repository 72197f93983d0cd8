"""Command-line interface.

Subcommands mirror the pipeline stages so each step can be run and inspected
in isolation: ``weigh``, ``smooth``, ``build``, ``eval``, ``sweep``, ``stats``.
A config file of ``key = value`` lines may preload any flag; flags win.

Exit codes: 0 success, 1 validation/parse error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .context import load_pairs
from .errors import ContaxError
from .evaluation import evaluate
from .pipeline import (
    ENGINES,
    PipelineConfig,
    run_pipeline,
    sweep,
    sweep_csv,
)
from .smoothing import SimilarityChoice, SimilarityKind, smooth_table
from .taxonomy import parse_taxonomy, serialize_taxonomy
from .weighting import Measure, dump_weights


def _read_config(path: str) -> dict[str, str]:
    values = {}
    for i, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ContaxError(f"{path}:{i}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file preloading any flag")
    p.add_argument("--pairs", help="dependency pairs TSV")
    p.add_argument("--terms", help="term list, one per line")
    p.add_argument("--gold", help="gold taxonomy (child<TAB>parent lines)")
    p.add_argument("--measure", choices=[m.value for m in Measure],
                   default=None, help="information measure (default conditional)")
    p.add_argument("--smooth", default=None,
                   choices=["off"] + [k.value for k in SimilarityKind],
                   help="mutual-similarity smoothing measure (default off)")
    p.add_argument("--alpha", type=float, default=None,
                   help="skew divergence alpha (default 0.99)")
    p.add_argument("--engine", choices=ENGINES, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--sweep", default=None, help="comma-separated thresholds")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=["isa", "json", "csv"], default=None)


_DEFAULTS = {
    "measure": "conditional",
    "smooth": "off",
    "alpha": 0.99,
    "engine": "fca",
    "threshold": 0.5,
    "sweep": "",
    "seed": 0,
    "runs": 1,
    "format": "isa",
}


def _resolve(args: argparse.Namespace) -> dict:
    """Defaults < config file < explicit flags."""
    merged = dict(_DEFAULTS)
    if args.config:
        merged.update(_read_config(args.config))
    for key in ("pairs", "terms", "gold", "measure", "smooth", "alpha", "engine",
                "threshold", "sweep", "seed", "runs", "out", "format"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    for key, cast in (("alpha", float), ("threshold", float),
                      ("seed", int), ("runs", int)):
        merged[key] = cast(merged[key])
    return merged


def _make_config(opts: dict) -> PipelineConfig:
    if not opts.get("pairs"):
        raise ContaxError("--pairs is required")
    smooth = opts["smooth"]
    sweep_list = tuple(
        float(x) for x in str(opts["sweep"]).split(",") if str(x).strip()
    )
    return PipelineConfig(
        pairs_path=opts["pairs"],
        terms_path=opts.get("terms") or None,
        gold_path=opts.get("gold") or None,
        measure=Measure(opts["measure"]),
        smooth=None if smooth in (None, "off", "") else SimilarityKind(smooth),
        alpha=opts["alpha"],
        engine=opts["engine"],
        threshold=opts["threshold"],
        sweep=sweep_list,
        seed=opts["seed"],
        runs=opts["runs"],
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_weigh(opts: dict) -> None:
    cfg = _make_config(opts)
    with open(cfg.pairs_path, encoding="utf-8") as fh:
        table = load_pairs(fh)
    terms = sorted(table.terms)
    if cfg.terms_path:
        from .pipeline import read_terms

        terms = read_terms(cfg.terms_path)
    _emit(dump_weights(table, terms, cfg.measure), opts.get("out"))


def _cmd_smooth(opts: dict) -> None:
    cfg = _make_config(opts)
    if cfg.smooth is None:
        raise ContaxError("smooth subcommand needs --smooth <measure>")
    with open(cfg.pairs_path, encoding="utf-8") as fh:
        table = load_pairs(fh)
    choice = SimilarityChoice(cfg.smooth, cfg.alpha)
    smoothed, pairs, added = smooth_table(table, choice)
    for a, b in sorted(pairs):
        sys.stderr.write(f"{a}\t{b}\n")
    sys.stderr.write(f"# added cells: {added}\n")
    _emit(smoothed.serialize(), opts.get("out"))


def _cmd_build(opts: dict) -> None:
    cfg = _make_config(opts)
    result = run_pipeline(cfg)
    for term in result.context.dropped_terms:
        sys.stderr.write(f"dropped\t{term}\n")
    if opts["format"] == "json":
        payload = {"taxonomy": result.taxonomy.to_json_dict()}
        if result.report:
            payload["evaluation"] = result.report.to_json_dict()
        _emit(json.dumps(payload, indent=2) + "\n", opts.get("out"))
    else:
        _emit(serialize_taxonomy(result.taxonomy), opts.get("out"))
        if result.report:
            sys.stderr.write(result.report.to_json() + "\n")


def _cmd_eval(opts: dict) -> None:
    if not opts.get("pairs") and not opts.get("taxonomy"):
        raise ContaxError("eval needs --taxonomy (learned) and --gold")
    if not opts.get("gold"):
        raise ContaxError("eval needs --gold")
    with open(opts["taxonomy"], encoding="utf-8") as fh:
        learned = parse_taxonomy(fh)
    with open(opts["gold"], encoding="utf-8") as fh:
        gold = parse_taxonomy(fh)
    _emit(evaluate(learned, gold).to_json() + "\n", opts.get("out"))


def _cmd_sweep(opts: dict) -> None:
    cfg = _make_config(opts)
    _emit(sweep_csv(sweep(cfg)), opts.get("out"))


def _cmd_stats(opts: dict) -> None:
    with open(opts["taxonomy"], encoding="utf-8") as fh:
        tax = parse_taxonomy(fh)
    s = tax.stats()
    payload = {
        "concepts": s.concept_count,
        "leaves": s.leaf_count,
        "avg_depth": s.avg_depth,
        "max_depth": s.max_depth,
        "avg_children": s.avg_children,
        "max_children": s.max_children,
    }
    _emit(json.dumps(payload, indent=2) + "\n", opts.get("out"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contax",
        description="Induce concept hierarchies from dependency pairs and "
        "evaluate them against gold taxonomies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("weigh", "dump raw and normalized weights as TSV"),
        ("smooth", "apply mutual-similarity count smoothing to a pairs file"),
        ("build", "run the full pipeline and emit a taxonomy"),
        ("sweep", "evaluate a list of thresholds, emit CSV"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
    p = sub.add_parser("eval", help="compare a learned taxonomy to a gold one")
    p.add_argument("--taxonomy", required=True, help="learned taxonomy file")
    p.add_argument("--gold", required=True)
    p.add_argument("--out")
    p.add_argument("--config")
    p = sub.add_parser("stats", help="structural statistics of a taxonomy")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--out")
    p.add_argument("--config")
    return parser


_COMMANDS = {
    "weigh": _cmd_weigh,
    "smooth": _cmd_smooth,
    "build": _cmd_build,
    "eval": _cmd_eval,
    "sweep": _cmd_sweep,
    "stats": _cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("eval", "stats"):
            opts = {k: getattr(args, k, None) for k in ("taxonomy", "gold", "out")}
            _COMMANDS[args.command](opts)
        else:
            _COMMANDS[args.command](_resolve(args))
    except (ContaxError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # internal invariant violation
        print(f"internal error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
