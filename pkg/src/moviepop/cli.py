"""Command-line pipeline: ingest -> build -> evaluate / rank / correlate.

Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import sys
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from . import ingest
from .builder import Filters, build_dataset1, build_dataset2
from .correlation import (
    EARNINGS,
    budget_series,
    correlate_dataset2,
    render_correlation,
    scatter_plot,
    trend_line,
)
from .dataset import LABELS, Dataset, export_dataset, load_dataset
from .errors import MoviePopError, UndefinedCorrelationError
from .evaluation import LEARNERS, cross_validate, render_report, report_to_dict
from .learners import LearnerParams, part_learn, rank_attributes, render_rules, render_tree, train_c45
from .store import build_store, read_store, write_store

log = logging.getLogger("moviepop")

INPUT_KEYS = ("movies", "ratings", "directors", "actors", "actresses",
              "countries", "languages", "business", "boxoffice")
MANDATORY_INPUTS = ("movies", "ratings")


class UsageError(Exception):
    """Bad invocation or input that fails validation (exit code 2)."""


@dataclass
class RunConfig:
    inputs: dict[str, Path] = field(default_factory=dict)
    out: Path = Path("moviepop-out")
    filters: Filters = Filters()
    params: LearnerParams = LearnerParams()
    folds: int = 10
    seed: int = 1
    rank_universe: str = "all"

    def echo(self) -> list[str]:
        """Effective configuration as ``key=value`` lines."""
        lines = [f"{k}={self.inputs[k]}" for k in INPUT_KEYS if k in self.inputs]
        lines.append(f"out={self.out}")
        lines += [f"{k}={v}" for k, v in asdict(self.filters).items()]
        lines += [f"{k}={v}" for k, v in asdict(self.params).items() if k != "seed"]
        lines += [f"folds={self.folds}", f"seed={self.seed}", f"rank_universe={self.rank_universe}"]
        return lines

    def as_dict(self) -> dict:
        return dict(line.split("=", 1) for line in self.echo())


def _coerce(raw: str, like):
    if isinstance(like, bool):
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {raw!r}")
    return type(like)(raw.strip())


def load_config(path: Path | None, overrides: dict) -> RunConfig:
    values: dict[str, str] = {}
    base = Path.cwd()
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
        try:
            parser.read_string(text if text.lstrip().startswith("[") else "[run]\n" + text)
        except configparser.Error as exc:
            raise UsageError(f"bad config {path}: {exc}") from exc
        for section in parser.sections():
            values.update(parser[section])
        base = path.resolve().parent
    from_cli = {k for k, v in overrides.items() if v is not None}
    values.update({k: str(overrides[k]) for k in from_cli})

    cfg = RunConfig()
    filter_names = {f.name for f in fields(Filters)}
    param_names = {f.name for f in fields(LearnerParams)} - {"seed"}
    filt, params = {}, {}
    try:
        for key, raw in values.items():
            if key in INPUT_KEYS:
                p = Path(raw)
                cfg.inputs[key] = p if p.is_absolute() or key in from_cli else base / p
            elif key == "out":
                p = Path(raw)
                cfg.out = p if p.is_absolute() or "out" in from_cli else base / p
            elif key in filter_names:
                filt[key] = _coerce(raw, getattr(cfg.filters, key))
            elif key in param_names:
                params[key] = _coerce(raw, getattr(cfg.params, key))
            elif key in ("folds", "seed"):
                setattr(cfg, key, int(raw))
            elif key == "rank_universe":
                if raw not in ("all", "candidates"):
                    raise ValueError(f"rank_universe must be 'all' or 'candidates', not {raw!r}")
                cfg.rank_universe = raw
            else:
                raise UsageError(f"unknown config key {key!r}")
        cfg.filters = replace(cfg.filters, **filt)
        cfg.params = replace(cfg.params, seed=cfg.seed, **params)
    except ValueError as exc:
        raise UsageError(f"bad config value: {exc}") from exc
    return cfg


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ingest.IngestError(f"cannot read {path}: {exc}") from exc


def cmd_ingest(cfg: RunConfig) -> Path:
    for key in MANDATORY_INPUTS:
        if key not in cfg.inputs:
            raise UsageError(f"no {key} file configured")
    for key, path in cfg.inputs.items():
        if not path.is_file():
            raise UsageError(f"{key} file not found: {path}")

    parsed = {}
    parsed["movies"] = ingest.parse_movies(_read(cfg.inputs["movies"]))
    parsed["ratings"] = ingest.parse_ratings(_read(cfg.inputs["ratings"]))
    credits, attributes = [], []
    for key, role in (("directors", "director"), ("actors", "actor"), ("actresses", "actress")):
        if key in cfg.inputs:
            parsed[key] = ingest.parse_credits(_read(cfg.inputs[key]), role)
            credits += parsed[key].records
    for key, kind in (("countries", "country"), ("languages", "language"), ("business", "budget-line")):
        if key in cfg.inputs:
            parsed[key] = ingest.parse_attributes(_read(cfg.inputs[key]), kind)
            attributes += parsed[key].records
    finances = []
    if "boxoffice" in cfg.inputs:
        parsed["boxoffice"] = ingest.parse_boxoffice_csv(_read(cfg.inputs["boxoffice"]))
        finances = parsed["boxoffice"].records

    store = build_store(parsed["movies"].records, parsed["ratings"].records, credits, attributes, finances)
    store_dir = write_store(store, cfg.out / "store")

    lines = [f"# config: {line}" for line in cfg.echo()]
    lines += ["", f"{'file':<12}{'records':>9}{'skipped':>9}{'lines':>9}"]
    for key in INPUT_KEYS:
        if key in parsed:
            r = parsed[key]
            lines.append(f"{key:<12}{len(r):>9}{r.skipped:>9}{r.candidates:>9}")
    lines += ["", f"{'table':<12}{'stored':>9}{'dropped':>9}"]
    for table, n in store.counts().items():
        lines.append(f"{table:<12}{n:>9}{store.dropped[table]:>9}")
    summary = "\n".join(lines) + "\n"
    (store_dir / "ingest_summary.txt").write_text(summary, encoding="utf-8")
    print(summary, end="")
    return store_dir


def class_summary(dataset: Dataset) -> str:
    counts = dataset.class_counts()
    rows = [f"{'Class':<12}{'Total no of instances':>24}"]
    rows += [f"{label.value:<12}{counts[label]:>24}" for label in LABELS]
    rows.append(f"{'Total':<12}{len(dataset):>24}")
    return "\n".join(rows) + "\n"


def cmd_build(cfg: RunConfig, which: int) -> Path:
    store_dir = cfg.out / "store"
    if not store_dir.is_dir():
        raise UsageError(f"no store at {store_dir}; run 'ingest' first")
    store = read_store(store_dir)
    if which == 1:
        dataset = build_dataset1(store, cfg.filters, cfg.rank_universe)
    else:
        dataset = build_dataset2(store, cfg.filters)
    if not len(dataset):
        log.warning("dataset %d is empty", which)
    comments = [f"config: {line}" for line in cfg.echo()]
    path = export_dataset(dataset, cfg.out / f"dataset{which}.csv", comments)
    summary = "".join(f"# config: {line}\n" for line in cfg.echo()) + class_summary(dataset)
    (cfg.out / f"dataset{which}_summary.txt").write_text(summary, encoding="utf-8")
    print(f"wrote {path} ({len(dataset)} instances)")
    print(class_summary(dataset), end="")
    return path


def _load(path: Path) -> Dataset:
    if not path.is_file():
        raise UsageError(f"dataset not found: {path}")
    return load_dataset(path)


def cmd_evaluate(cfg: RunConfig, learner: str, dataset_path: Path) -> Path:
    if learner not in LEARNERS:
        raise UsageError(f"unknown learner {learner!r}; choose from {', '.join(LEARNERS)}")
    dataset = _load(dataset_path)
    if not len(dataset):
        raise UsageError(f"{dataset_path} has no instances")
    if not dataset.feature_indices:
        raise UsageError(f"{dataset_path} has no feature columns")
    report = cross_validate(learner, dataset, cfg.folds, cfg.seed, cfg.params)
    stem = f"{dataset_path.stem}_{learner}"
    header = "".join(f"# config: {line}\n" for line in cfg.echo())
    plain = render_report(report, "plain")
    (cfg.out / f"{stem}_report.txt").write_text(header + plain, encoding="utf-8")
    data = report_to_dict(report)
    data["config"] = cfg.as_dict()
    (cfg.out / f"{stem}_report.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n",
                                                encoding="utf-8")
    if learner == "c45":
        model = render_tree(train_c45(dataset, cfg.params), dataset.names)
    else:
        model = render_rules(part_learn(dataset, cfg.params), dataset.names)
    (cfg.out / f"{stem}_model.txt").write_text(model, encoding="utf-8")
    print(plain, end="")
    return cfg.out / f"{stem}_report.json"


def rank_table(dataset: Dataset) -> str:
    rows = [f"{'Attribute Name':<20}{'Attribute Rank':>16}{'Information Gain':>18}{'Percent':>10}"]
    for i, r in enumerate(rank_attributes(dataset), 1):
        rows.append(f"{r.name:<20}{i:>16}{r.gain:>18.3f}{r.percent:>9.2f}%")
    return "\n".join(rows) + "\n"


def cmd_rank(cfg: RunConfig, dataset_path: Path) -> str:
    dataset = _load(dataset_path)
    if not dataset.feature_indices:
        raise UsageError(f"{dataset_path} has no feature columns")
    if not len(dataset):
        raise UsageError(f"{dataset_path} has no instances")
    table = rank_table(dataset)
    header = "".join(f"# config: {line}\n" for line in cfg.echo())
    (cfg.out / f"{dataset_path.stem}_rank.txt").write_text(header + table, encoding="utf-8")
    print(table, end="")
    return table


def cmd_correlate(cfg: RunConfig, dataset_path: Path) -> list[Path]:
    dataset = _load(dataset_path)
    missing = [c for c in ("budget",) + EARNINGS if c not in dataset.names]
    if missing:
        raise UsageError(f"{dataset_path} lacks financial column(s): {', '.join(missing)}")
    report = correlate_dataset2(dataset)
    stem = dataset_path.stem
    header = "".join(f"# config: {line}\n" for line in cfg.echo())
    plain = render_correlation(report)
    (cfg.out / f"{stem}_correlation.txt").write_text(header + plain, encoding="utf-8")
    data = json.loads(render_correlation(report, "json"))
    data["config"] = cfg.as_dict()
    (cfg.out / f"{stem}_correlation.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n",
                                                     encoding="utf-8")
    written = []
    comment = "config: " + "; ".join(cfg.echo())
    for other in EARNINGS:
        series = budget_series(dataset, other)
        if not len(series):
            log.warning("no complete budget/%s pairs to plot", other)
            continue
        try:
            trend = trend_line(series)
        except UndefinedCorrelationError:
            trend = None
        svg, _ = scatter_plot(series, trend, cfg.out / f"{stem}_budget_vs_{other}.svg",
                              title=f"Scatter plot of budget and {other}", comment=comment)
        written.append(svg)
    print(plain, end="")
    return written


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=argparse.SUPPRESS, help="key=value config file")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master random seed")
    common.add_argument("--out", type=Path, default=argparse.SUPPRESS, help="output directory")
    common.add_argument("--folds", type=int, default=argparse.SUPPRESS, help="cross-validation folds")

    parser = argparse.ArgumentParser(prog="moviepop", parents=[common],
                                     description="Movie popularity classification pipeline.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="parse list files into a store")
    for key in INPUT_KEYS:
        p.add_argument(f"--{key}", type=Path, default=None, help=f"{key} input file")

    p = sub.add_parser("build", parents=[common], help="build dataset 1 or 2 from the store")
    p.add_argument("--dataset", type=int, choices=(1, 2), required=True)

    p = sub.add_parser("evaluate", parents=[common], help="cross-validate a learner")
    p.add_argument("--learner", required=True, help="c45 or part")
    p.add_argument("--dataset", type=Path, default=None, help="dataset CSV (default: OUT/dataset1.csv)")

    p = sub.add_parser("rank", parents=[common], help="rank features by information gain")
    p.add_argument("--dataset", type=Path, default=None, help="dataset CSV (default: OUT/dataset1.csv)")

    p = sub.add_parser("correlate", parents=[common], help="budget vs earnings correlation and plots")
    p.add_argument("--dataset", type=Path, default=None, help="dataset CSV (default: OUT/dataset2.csv)")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: getattr(args, k, None) for k in ("seed", "out", "folds")}
    if args.command == "ingest":
        overrides.update({k: getattr(args, k) for k in INPUT_KEYS})
    cfg = load_config(getattr(args, "config", None), overrides)
    cfg.out.mkdir(parents=True, exist_ok=True)

    if args.command == "ingest":
        cmd_ingest(cfg)
    elif args.command == "build":
        cmd_build(cfg, args.dataset)
    else:
        default = "dataset2.csv" if args.command == "correlate" else "dataset1.csv"
        dataset_path = args.dataset or cfg.out / default
        if args.command == "evaluate":
            cmd_evaluate(cfg, args.learner, dataset_path)
        elif args.command == "rank":
            cmd_rank(cfg, dataset_path)
        else:
            cmd_correlate(cfg, dataset_path)
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return run(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except UsageError as exc:
        print(f"moviepop: error: {exc}", file=sys.stderr)
        return 2
    except (MoviePopError, OSError) as exc:
        print(f"moviepop: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
