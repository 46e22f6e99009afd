"""Command-line pipeline: synth -> code -> select -> saturate -> analyze -> sweep.

Every stochastic command takes a mandatory --seed and writes byte-stable
outputs; timestamps live only in the run_meta.json sidecar. Config files
are flat key = value pairs (TOML-compatible) keyed by flag names with
underscores; command-line flags win over config values.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import __version__
from .coder import (
    FEWSHOT_CHAIN,
    ROUND1_CHAIN,
    SOCRATIC_CHAIN,
    MockCoder,
    RemoteCoder,
    RemoteConfig,
    code_passages,
)
from .corpus import compute_frequencies, fecundity, summary_stats
from .errors import (
    CollectionFormatError,
    FecundError,
    RankDeficiencyError,
    TransportError,
)
from .ingest import load_articles, load_collection, split_passages, write_collection
from .saturation import (
    CountingRegime,
    bootstrap_band,
    cumulative_curve,
    position_trend,
)
from .selection import (
    SelectionBudget,
    ValueFunction,
    interleave_blinded,
    select_greedy,
    select_random,
)
from .stats import (
    QuadraticMap,
    fit_quadratic,
    format_treatment_table,
    length_residual_check,
    superset_sweep,
    treatment_table,
    treatment_table_rows,
)
from .svgplot import line_chart
from .synthetic import synth_articles, synth_corpus

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4
EXIT_REMOTE = 5

CHAINS = {"socratic": SOCRATIC_CHAIN, "fewshot": FEWSHOT_CHAIN, "round1": ROUND1_CHAIN}


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_meta(out: Path, args) -> None:
    meta = {
        "command": args.command,
        "version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "args": {k: v for k, v in sorted(vars(args).items()) if k != "func"},
    }
    (out / "run_meta.json").write_text(
        json.dumps(meta, indent=2, default=str) + "\n", encoding="utf-8"
    )


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(value) -> str:
    # repr keeps float round-trips exact and byte-stable across platforms
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _load(args, need_codes: bool = True):
    codes = [p for p in (args.codes or "").split(",") if p] if need_codes else []
    return load_collection(args.docs, codes or None, getattr(args, "themes", None))


# --- synth -----------------------------------------------------------------


def cmd_synth(args) -> int:
    out = _out_dir(args)
    texts = None
    lengths = None
    if args.with_text:
        articles = synth_articles(args.n_docs, args.seed)
        texts = {a.id: a.full_text for a in articles}
        lengths = [len(a.full_text) for a in articles]
    docs, codebook = synth_corpus(
        args.n_docs,
        seed=args.seed,
        n_codes=args.n_codes,
        zipf_exponent=args.zipf,
        mean_length=args.mean_len,
        codes_per_kchar=args.codes_per_kchar,
        coder_source=args.coder_source,
        n_themes=args.themes_count,
        lengths=lengths,
    )
    write_collection(
        docs,
        codebook,
        out / "documents.jsonl",
        out / "codes.csv",
        (out / "themes.csv") if args.themes_count > 0 else None,
        texts=texts,
    )
    _write_meta(out, args)
    print(f"wrote {len(docs)} documents to {out}")
    return EXIT_OK


# --- ingest ----------------------------------------------------------------


def cmd_ingest(args) -> int:
    docs, codebook = _load(args)
    out = _out_dir(args)
    lengths = [d.text_length for d in docs]
    sources = sorted({s for d in docs for s in d.codes})
    summary = {
        "documents": len(docs),
        "codes": len(codebook.entries),
        "themes": len(codebook.themes or {}),
        "coder_sources": sources,
        "length": vars(summary_stats(lengths)) if lengths else None,
    }
    (out / "collection_summary.json").write_text(
        json.dumps(summary, indent=2) + "\n", encoding="utf-8"
    )
    _write_meta(out, args)
    print(json.dumps(summary, indent=2))
    return EXIT_OK


# --- code ------------------------------------------------------------------


def _load_summaries(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    summaries = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            summaries[row["doc_id"]] = row["summary"]
    return summaries


def _load_fewshot(clusters_path: str | None, exemplars_path: str | None) -> dict[str, str]:
    if not clusters_path or not exemplars_path:
        return {}
    exemplars: dict[str, list[str]] = {}
    with open(exemplars_path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            exemplars.setdefault(row["cluster_id"], []).append(row["code_label"])
    context = {}
    with open(clusters_path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            labels = exemplars.get(row["cluster_id"], [])
            context[row["passage_id"]] = json.dumps(labels, ensure_ascii=False)
    return context


def cmd_code(args) -> int:
    out = _out_dir(args)
    articles = load_articles(args.docs)
    passages = [
        p for a in articles for p in split_passages(a, min_len=args.min_passage_len)
    ]
    summaries = _load_summaries(args.summaries)
    for article in articles:
        # offline stand-in for model-written abstracts
        summaries.setdefault(article.id, article.full_text[:120])
    if args.backend == "mock":
        backend = MockCoder(
            seed=args.seed,
            vocab_size=args.vocab_size,
            zipf_exponent=args.zipf,
            mean_codes_per_kchar=args.codes_per_kchar,
        )
    else:
        if not args.url or not args.model:
            print("error: remote backend requires --url and --model", file=sys.stderr)
            return EXIT_USAGE
        backend = RemoteCoder(
            RemoteConfig(
                url=args.url,
                model=args.model,
                token_env=args.token_env,
                timeout=args.timeout,
                max_retries=args.retries,
                temperature=args.temperature,
                max_in_flight=args.max_in_flight,
            )
        )
    run = code_passages(
        passages,
        backend,
        CHAINS[args.chain],
        summaries=summaries,
        fewshot_context=_load_fewshot(args.clusters, args.exemplars),
    )
    by_key = {f"{p.article_id}:{p.index:04d}": p for p in passages}
    article_len = {a.id: len(a.full_text) for a in articles}
    rows = []
    for key, response in run:
        if response.theme is None:
            continue
        passage = by_key[key]
        midpoint = (passage.char_span[0] + passage.char_span[1]) / 2
        position = midpoint / max(1, article_len[passage.article_id])
        rows.append(
            [passage.article_id, args.coder_source, response.theme, repr(min(1.0, position))]
        )
    _write_csv(out / "ai_codes.csv", ["doc_id", "coder_source", "code_label", "position"], rows)
    if run.errors:
        _write_csv(out / "coding_errors.csv", ["passage_id", "error"], [list(e) for e in run.errors])
        print(f"{len(run.errors)} passage(s) failed; see coding_errors.csv", file=sys.stderr)
    _write_meta(out, args)
    print(f"coded {len(passages)} passages -> {len(rows)} codes ({out / 'ai_codes.csv'})")
    return EXIT_OK if not run.errors else EXIT_REMOTE


# --- select ----------------------------------------------------------------


def cmd_select(args) -> int:
    out = _out_dir(args)
    docs, _ = _load(args)
    vf = ValueFunction(args.value_function)
    if args.budget_chars:
        budget = SelectionBudget(args.budget_chars)
    else:
        budget = SelectionBudget.from_mean_docs(docs, args.budget_docs)
    treatment = select_greedy(
        docs, budget, vf, args.coder_source, cost_benefit=not args.plain_gain
    )
    control = select_random(
        docs, args.control_docs, seed=args.seed, coder_source=args.coder_source,
        value_function=vf,
    )
    reading_order = interleave_blinded(treatment, control, seed=args.seed)

    payload = {
        "selected_ids": list(treatment.selected_ids),
        "objective_value": treatment.objective_value,
        "total_chars": treatment.total_chars,
        "gains": list(treatment.gains),
        "value_function": vf.kind,
        "budget_chars": budget.max_chars,
        "control": {
            "selected_ids": list(control.selected_ids),
            "objective_value": control.objective_value,
            "total_chars": control.total_chars,
        },
        "n_overlap": sum(1 for e in reading_order if e.arm == "overlap"),
    }
    (out / "selection.json").write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8"
    )
    _write_csv(
        out / "manifest.csv",
        ["reading_index", "doc_id"],
        [[i + 1, e.doc_id] for i, e in enumerate(reading_order)],
    )
    _write_csv(
        out / "unblinding.csv",
        ["doc_id", "arm"],
        [[e.doc_id, e.arm] for e in reading_order],
    )
    _write_meta(out, args)
    print(
        f"selected {len(treatment.selected_ids)} docs "
        f"({treatment.total_chars} chars, objective {treatment.objective_value:.4f}); "
        f"manifest of {len(reading_order)} docs written to {out}"
    )
    return EXIT_OK


# --- saturate ----------------------------------------------------------------


def _manifest_order(docs, manifest_path: str):
    by_id = {d.id: d for d in docs}
    ordered = []
    with open(manifest_path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            doc_id = row["doc_id"]
            if doc_id not in by_id:
                raise CollectionFormatError(
                    f"manifest references unknown document {doc_id!r}", manifest_path
                )
            ordered.append(by_id[doc_id])
    return ordered


def cmd_saturate(args) -> int:
    out = _out_dir(args)
    docs, codebook = _load(args)
    order = _manifest_order(docs, args.order) if args.order else docs
    regimes = [r.strip() for r in args.regimes.split(",") if r.strip()]
    for kind in regimes:
        regime = CountingRegime(kind, hf_threshold=args.threshold)
        if args.bootstrap:
            band = bootstrap_band(
                order,
                regime,
                args.coder_source,
                n_iterations=args.iterations,
                seed=args.seed,
                codebook=codebook,
            )
            rows = [
                [s.doc_index, _fmt(s.mean_chars), _fmt(s.mean_count), _fmt(s.lo95), _fmt(s.hi95)]
                for s in band.steps
            ]
            _write_csv(
                out / f"curve_{kind}.csv",
                ["step", "mean_chars", "mean_count", "lo95", "hi95"],
                rows,
            )
            if args.plot:
                line_chart(
                    out / f"curve_{kind}.svg",
                    [s.mean_chars for s in band.steps],
                    [s.mean_count for s in band.steps],
                    band=([s.lo95 for s in band.steps], [s.hi95 for s in band.steps]),
                    title=f"Cumulative {kind} (bootstrap mean, 95% band)",
                    x_label="cumulative characters",
                    y_label="cumulative count",
                )
        else:
            curve = cumulative_curve(order, regime, args.coder_source, codebook=codebook)
            rows = [
                [s.doc_index, doc_id, s.cumulative_chars, s.cumulative_count]
                for s, doc_id in zip(curve.steps, curve.document_order)
            ]
            _write_csv(
                out / f"curve_{kind}.csv",
                ["step", "doc_id", "cumulative_chars", "cumulative_count"],
                rows,
            )
            if args.plot:
                line_chart(
                    out / f"curve_{kind}.svg",
                    [s.cumulative_chars for s in curve.steps],
                    [s.cumulative_count for s in curve.steps],
                    title=f"Cumulative {kind}",
                    x_label="cumulative characters",
                    y_label="cumulative count",
                )
    if args.positions:
        trend = position_trend(order, args.coder_source, window=args.positions_window)
        _write_csv(
            out / "positions.csv",
            ["text_length", "median_position", "moving_average"],
            [[t.text_length, _fmt(t.median_position), _fmt(t.moving_average)] for t in trend],
        )
    _write_meta(out, args)
    print(f"wrote saturation curve(s) for {', '.join(regimes)} to {out}")
    return EXIT_OK


# --- analyze -----------------------------------------------------------------


def _read_rows(path: str) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def cmd_analyze(args) -> int:
    out = _out_dir(args)
    docs, _ = _load(args)
    by_id = {d.id: d for d in docs}
    manifest = _read_rows(args.manifest)
    arms = {row["doc_id"]: row["arm"] for row in _read_rows(args.unblinding)}
    extra = {}
    if args.experiment:
        extra = {row["doc_id"]: row for row in _read_rows(args.experiment)}

    ordered = [by_id[row["doc_id"]] for row in manifest]
    freq = compute_frequencies(ordered, args.outcome_source)
    density_freq = None
    if args.density_source and all(args.density_source in d.codes for d in ordered):
        density_freq = compute_frequencies(ordered, args.density_source)

    data: dict[str, list] = {
        "fecundity": [],
        "ai_selected": [],
        "index": [],
        "length": [],
        "overlap": [],
        "old_random": [],
        "round": [],
        "ai_density": [],
    }
    for i, doc in enumerate(ordered, start=1):
        arm = arms.get(doc.id, "control")
        meta = extra.get(doc.id, {})
        data["fecundity"].append(fecundity(doc, freq, args.outcome_source).fecundity)
        data["ai_selected"].append(1.0 if arm in ("treatment", "overlap") else 0.0)
        data["index"].append(float(i))
        data["length"].append(float(doc.text_length))
        data["overlap"].append(arm == "overlap")
        data["old_random"].append(str(meta.get("old_random", "")).lower() == "true")
        data["round"].append(float(meta.get("round", 0)))
        if density_freq is not None:
            data["ai_density"].append(
                fecundity(doc, density_freq, args.density_source).fecundity
            )

    feasible = [1, 2, 3, 6]
    fits: dict[int, object] = {}
    if len(set(data["round"])) > 1:
        feasible += [4, 5]
    else:
        fits[4] = "round has no variation in the provided data"
        fits[5] = "round has no variation in the provided data"
    for spec_no in feasible:
        try:
            fits.update(treatment_table(data, specs=(spec_no,)))
        except (RankDeficiencyError, ValueError) as exc:
            fits[spec_no] = str(exc)

    table_text = format_treatment_table(fits)
    (out / "treatment_table.txt").write_text(table_text, encoding="utf-8")
    rows = treatment_table_rows(fits)
    header = [
        "spec", "param", "coef", "se", "t", "p", "stars", "n_obs", "r2",
        "adj_r2", "resid_se", "df_resid", "f_stat", "skipped",
    ]
    _write_csv(
        out / "treatment_table.csv",
        header,
        [[_fmt(r.get(h, "")) for h in header] for r in rows],
    )

    if density_freq is not None and 5 in feasible:
        check = length_residual_check(data)
        lines = [
            f"stage-1 R2 (length on AI density): {check.stage1.r2:.3f}",
            "residual regressor dropped: " + str(check.residual_dropped),
            "",
            format_treatment_table({5: check.fit}),
        ]
        (out / "length_residuals.txt").write_text("\n".join(lines), encoding="utf-8")

    arm_rows = []
    for arm in ("control", "treatment", "overlap"):
        members = [i for i, d in enumerate(ordered) if arms.get(d.id, "control") == arm]
        if not members:
            continue
        fec = [data["fecundity"][i] for i in members]
        lens = [ordered[i].text_length for i in members]
        for var, values in (("fecundity", fec), ("text_length", lens)):
            s = summary_stats(values)
            arm_rows.append(
                [arm, var, _fmt(s.mean), s.n, _fmt(s.ci95_lower), _fmt(s.ci95_upper),
                 _fmt(s.p25), _fmt(s.p75)]
            )
    _write_csv(
        out / "arm_summary.csv",
        ["arm", "variable", "mean", "n", "ci95_lower", "ci95_upper", "p25", "p75"],
        arm_rows,
    )
    _write_meta(out, args)
    print(table_text)
    return EXIT_OK


# --- sweep -------------------------------------------------------------------


def cmd_sweep(args) -> int:
    out = _out_dir(args)
    docs, _ = _load(args)
    if args.quadratic:
        a, b, c = (float(v) for v in args.quadratic.split(","))
        qmap = QuadraticMap(a, b, c)
    elif args.pairs:
        pairs = [
            (float(row["ai_density"]), float(row["human_density"]))
            for row in _read_rows(args.pairs)
        ]
        qmap = fit_quadratic(pairs)
    else:
        print("error: sweep requires --quadratic a,b,c or --pairs FILE", file=sys.stderr)
        return EXIT_USAGE
    sizes = None
    if args.sizes:
        sizes = [int(s) for s in args.sizes.split(",")]
    points = superset_sweep(
        docs,
        args.coder_source,
        qmap,
        seed=args.seed,
        sizes=sizes,
        replicates=args.replicates,
        n_budget_docs=args.budget_docs,
        value_function=ValueFunction(args.value_function),
    )
    _write_csv(
        out / "sweep.csv",
        ["size", "mean_ai_density", "predicted_human_density", "normalized_pct"],
        [
            [p.size, _fmt(p.mean_ai_density), _fmt(p.predicted_human_density), _fmt(p.normalized_pct)]
            for p in points
        ],
    )
    if args.plot:
        line_chart(
            out / "sweep.svg",
            [p.size for p in points],
            [p.normalized_pct for p in points],
            title="Predicted benefit vs. superset size",
            x_label="superset size",
            y_label="normalized predicted density (%)",
            points=True,
        )
    _write_meta(out, args)
    for p in points:
        print(f"size {p.size:>6}: density {p.mean_ai_density:.4f} -> {p.normalized_pct:.1f}%")
    return EXIT_OK


# --- wiring ------------------------------------------------------------------


def _parse_flat_config(path: str) -> dict:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if value.startswith(("'", '"')) and value.endswith(value[0]) and len(value) >= 2:
            values[key] = value[1:-1]
        elif value.lower() in ("true", "false"):
            values[key] = value.lower() == "true"
        else:
            try:
                values[key] = int(value)
            except ValueError:
                try:
                    values[key] = float(value)
                except ValueError:
                    values[key] = value
    return values


def _add_common(parser: argparse.ArgumentParser, seed: bool = True) -> None:
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--plot", action="store_true", help="also write SVG plots")
    if seed:
        parser.add_argument("--seed", type=int, required=True, help="RNG seed (mandatory)")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="fecund",
        description="Corpus selection by code diversity and saturation analytics",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    commands: dict[str, argparse.ArgumentParser] = {}

    p = sub.add_parser("synth", help="generate a synthetic coded corpus")
    _add_common(p)
    p.add_argument("--n-docs", type=int, default=60)
    p.add_argument("--n-codes", type=int, default=80)
    p.add_argument("--zipf", type=float, default=1.1)
    p.add_argument("--mean-len", type=int, default=2000)
    p.add_argument("--codes-per-kchar", type=float, default=3.0)
    p.add_argument("--coder-source", default="human")
    p.add_argument("--themes-count", type=int, default=8)
    p.add_argument("--with-text", action="store_true")
    p.set_defaults(func=cmd_synth)
    commands["synth"] = p

    p = sub.add_parser("ingest", help="validate a collection and summarize it")
    _add_common(p, seed=False)
    p.add_argument("--docs", required=True)
    p.add_argument("--codes")
    p.add_argument("--themes")
    p.set_defaults(func=cmd_ingest)
    commands["ingest"] = p

    p = sub.add_parser("code", help="produce AI codes for article passages")
    _add_common(p)
    p.add_argument("--docs", required=True, help="documents.jsonl with text")
    p.add_argument("--backend", choices=("mock", "remote"), default="mock")
    p.add_argument("--chain", choices=sorted(CHAINS), default="socratic")
    p.add_argument("--coder-source", default="ai")
    p.add_argument("--min-passage-len", type=int, default=100)
    p.add_argument("--vocab-size", type=int, default=200)
    p.add_argument("--zipf", type=float, default=1.1)
    p.add_argument("--codes-per-kchar", type=float, default=3.0)
    p.add_argument("--summaries", help="csv: doc_id,summary")
    p.add_argument("--clusters", help="csv: passage_id,cluster_id")
    p.add_argument("--exemplars", help="csv: cluster_id,code_label")
    p.add_argument("--url")
    p.add_argument("--model")
    p.add_argument("--token-env", default="CODER_API_TOKEN")
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--retries", type=int, default=3)
    p.add_argument("--temperature", type=float, default=0.0)
    p.add_argument("--max-in-flight", type=int, default=4)
    p.set_defaults(func=cmd_code)
    commands["code"] = p

    p = sub.add_parser("select", help="select a reading corpus and a blinded order")
    _add_common(p)
    p.add_argument("--docs", required=True)
    p.add_argument("--codes", required=True, help="codes.csv (comma-separate to merge)")
    p.add_argument("--coder-source", default="ai")
    p.add_argument("--value-function", choices=("sqrt", "log1p", "unique"), default="sqrt")
    p.add_argument("--budget-chars", type=int)
    p.add_argument("--budget-docs", type=int, default=20)
    p.add_argument("--control-docs", type=int, default=20)
    p.add_argument("--plain-gain", action="store_true", help="rank by raw gain, not gain/char")
    p.set_defaults(func=cmd_select)
    commands["select"] = p

    p = sub.add_parser("saturate", help="cumulative code/theme curves, optional bootstrap")
    _add_common(p)
    p.add_argument("--docs", required=True)
    p.add_argument("--codes", required=True)
    p.add_argument("--themes")
    p.add_argument("--coder-source", default="human")
    p.add_argument("--regimes", default="unique")
    p.add_argument("--threshold", type=int, default=3)
    p.add_argument("--order", help="manifest.csv fixing the document order")
    p.add_argument("--bootstrap", action="store_true")
    p.add_argument("--iterations", type=int, default=2000)
    p.add_argument("--positions", action="store_true", help="also write positions.csv")
    p.add_argument("--positions-window", type=int, default=5)
    p.set_defaults(func=cmd_saturate)
    commands["saturate"] = p

    p = sub.add_parser("analyze", help="treatment-effect regression tables")
    _add_common(p, seed=False)
    p.add_argument("--docs", required=True)
    p.add_argument("--codes", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--unblinding", required=True)
    p.add_argument("--experiment", help="csv: doc_id,round,old_random")
    p.add_argument("--outcome-source", default="human")
    p.add_argument("--density-source", default="ai")
    p.set_defaults(func=cmd_analyze)
    commands["analyze"] = p

    p = sub.add_parser("sweep", help="predicted benefit vs. superset size")
    _add_common(p)
    p.add_argument("--docs", required=True)
    p.add_argument("--codes", required=True)
    p.add_argument("--coder-source", default="ai")
    p.add_argument("--sizes", help="comma-separated subset sizes")
    p.add_argument("--replicates", type=int, default=10)
    p.add_argument("--budget-docs", type=int, default=20)
    p.add_argument("--value-function", choices=("sqrt", "log1p", "unique"), default="sqrt")
    p.add_argument("--quadratic", help="a,b,c mapping AI density to human density")
    p.add_argument("--pairs", help="csv: ai_density,human_density to fit the quadratic")
    p.set_defaults(func=cmd_sweep)
    commands["sweep"] = p

    return parser, commands


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, commands = build_parser()
    if "--config" in argv:
        config_path = argv[argv.index("--config") + 1]
        try:
            values = _parse_flat_config(config_path)
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_IO
        for sub in commands.values():
            known = {a.dest for a in sub._actions}
            sub.set_defaults(**{k: v for k, v in values.items() if k in known})
            for action in sub._actions:
                if action.dest in values:
                    action.required = False
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except TransportError as exc:
        print(f"error: remote coder: {exc}", file=sys.stderr)
        return EXIT_REMOTE
    except (CollectionFormatError,) as exc:
        print(f"error: invalid collection: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (FecundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
