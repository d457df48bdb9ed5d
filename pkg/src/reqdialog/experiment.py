"""Cooperation-factor sweep over three customers and one engineer.

For every grid factor and every repetition seed, each customer runs one
interaction against a freshly reset engineer; the three interaction results
are compared pairwise by cosine similarity over the merged vocabulary, and
the before/after similarity of each customer/engineer pair is recorded for
the learning check.  Everything is deterministic given the configuration, so
two runs of the same config produce byte-identical report files.

Hypothesis checks:

* trend check - mean pairwise similarity must not drop by more than ``slack``
  between adjacent grid points, must be exactly 1 at factor 1, and the rank
  correlation between factor and mean is reported alongside;
* learning check - every recorded interaction must satisfy
  ``cos_after >= cos_before``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from scipy import stats

from .concepts import Vocabulary, build_vocabulary, cosine_similarity, one_hot
from .nlp import NounSet, build_noun_set
from .protocol import Customer, KnowledgeBase, run_interaction
from .sampling import derive_seed

DEFAULT_FACTOR_GRID = tuple(round(i / 10, 1) for i in range(11))
DEFAULT_SEED_COUNT = 100
DEFAULT_SLACK = 0.02
CUSTOMER_IDS = ("customer_1", "customer_2", "customer_3")


class ConfigError(ValueError):
    """The experiment configuration is invalid."""


@dataclass
class ExperimentConfig:
    customer_sources: tuple[tuple[Path, ...], ...]
    engineer_source: tuple[Path, ...]
    factor_grid: tuple[float, ...] = DEFAULT_FACTOR_GRID
    seeds: tuple[int, ...] = tuple(range(DEFAULT_SEED_COUNT))
    tagger_mode: str = "builtin"
    reaction_threshold: float = 0.8

    def __post_init__(self) -> None:
        if len(self.customer_sources) != 3:
            raise ConfigError(f"exactly three customer sources required, got {len(self.customer_sources)}")
        if not self.engineer_source:
            raise ConfigError("an engineer source is required")
        if not self.factor_grid:
            raise ConfigError("the factor grid is empty")
        if any(not 0.0 <= f <= 1.0 for f in self.factor_grid):
            raise ConfigError(f"factors must lie in [0, 1]: {self.factor_grid}")
        if list(self.factor_grid) != sorted(self.factor_grid):
            raise ConfigError("the factor grid must be sorted ascending")
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        if self.tagger_mode not in ("builtin", "pretagged"):
            raise ConfigError(f"tagger_mode must be 'builtin' or 'pretagged', got {self.tagger_mode!r}")
        if not 0.0 < self.reaction_threshold < 1.0:
            raise ConfigError("reaction_threshold must lie strictly between 0 and 1")

    def to_json_dict(self) -> dict:
        return {
            "customer_sources": [[str(p) for p in group] for group in self.customer_sources],
            "engineer_source": [str(p) for p in self.engineer_source],
            "factor_grid": list(self.factor_grid),
            "seeds": list(self.seeds),
            "tagger_mode": self.tagger_mode,
            "reaction_threshold": self.reaction_threshold,
        }

    def content_hash(self) -> str:
        canonical = json.dumps(self.to_json_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


@dataclass
class PairRecord:
    factor: float
    seed: int
    customer_a: str
    customer_b: str
    cosine: float


@dataclass
class FactorAggregate:
    factor: float
    mean: float
    stddev: float
    n: int


@dataclass
class LearningRecord:
    factor: float
    seed: int
    customer: str
    cos_before: float
    cos_after: float


@dataclass
class ExperimentReport:
    cells: list[PairRecord]
    aggregates: list[FactorAggregate]
    h2_records: list[LearningRecord]
    metadata: dict = field(default_factory=dict)

    def means_by_factor(self) -> dict[float, float]:
        return {agg.factor: agg.mean for agg in self.aggregates}

    def to_json_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "cells": [vars(c) for c in self.cells],
            "aggregates": [vars(a) for a in self.aggregates],
            "h2": [vars(r) for r in self.h2_records],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "ExperimentReport":
        return cls(
            cells=[PairRecord(**c) for c in data["cells"]],
            aggregates=[FactorAggregate(**a) for a in data["aggregates"]],
            h2_records=[LearningRecord(**r) for r in data["h2"]],
            metadata=dict(data["metadata"]),
        )


@dataclass
class TrendVerdict:
    passed: bool
    worst_violation: float
    spearman: float

    def to_json_dict(self) -> dict:
        return {"pass": self.passed, "worst_violation": self.worst_violation, "spearman": self.spearman}


@dataclass
class LearningVerdict:
    passed: bool
    counterexamples: list[LearningRecord]
    warning: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "pass": self.passed,
            "counterexamples": [vars(r) for r in self.counterexamples],
            "warning": self.warning,
        }


def load_config(path: str | Path) -> ExperimentConfig:
    """Read a JSON config; relative source paths resolve against the file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text("utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data, base_dir=path.parent)


def config_from_dict(data: Mapping, base_dir: Path | None = None) -> ExperimentConfig:
    base = base_dir or Path.cwd()

    def resolve(raw: str) -> Path:
        p = Path(raw)
        return p if p.is_absolute() else base / p

    try:
        customers = tuple(tuple(resolve(f) for f in group) for group in data["customer_sources"])
        engineer = tuple(resolve(f) for f in data["engineer_source"])
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"config is missing source lists: {exc}") from exc
    seeds_raw = data.get("seeds", DEFAULT_SEED_COUNT)
    seeds = tuple(range(seeds_raw)) if isinstance(seeds_raw, int) else tuple(int(s) for s in seeds_raw)
    return ExperimentConfig(
        customer_sources=customers,
        engineer_source=engineer,
        factor_grid=tuple(float(f) for f in data.get("factor_grid", DEFAULT_FACTOR_GRID)),
        seeds=seeds,
        tagger_mode=str(data.get("tagger_mode", "builtin")),
        reaction_threshold=float(data.get("reaction_threshold", 0.8)),
    )


def fixture_config(
    factor_grid: Sequence[float] = DEFAULT_FACTOR_GRID,
    seed_count: int = DEFAULT_SEED_COUNT,
) -> ExperimentConfig:
    """Configuration over the bundled four-text corpus."""
    corpus = resources.files("reqdialog.data") / "corpus"
    return ExperimentConfig(
        customer_sources=tuple((Path(str(corpus / f"{cid}.txt")),) for cid in CUSTOMER_IDS),
        engineer_source=(Path(str(corpus / "engineer.txt")),),
        factor_grid=tuple(factor_grid),
        seeds=tuple(range(seed_count)),
    )


def _load_sources(config: ExperimentConfig) -> tuple[list[NounSet], NounSet]:
    pretagged = config.tagger_mode == "pretagged"

    def read_all(paths: Sequence[Path]) -> list[str]:
        return [Path(p).read_text("utf-8") for p in paths]

    customers = [
        build_noun_set(cid, read_all(paths), pretagged=pretagged)
        for cid, paths in zip(CUSTOMER_IDS, config.customer_sources)
    ]
    engineer = build_noun_set("engineer", read_all(config.engineer_source), pretagged=pretagged)
    return customers, engineer


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Sweep the factor grid across all seeds and collect the report."""
    customers, engineer_nouns = _load_sources(config)
    if not engineer_nouns.lemmas:
        raise ConfigError("the engineer source contains no nouns")
    vocabulary = build_vocabulary([*customers, engineer_nouns])
    kb_template = KnowledgeBase.from_noun_set(engineer_nouns)

    cells: list[PairRecord] = []
    h2_records: list[LearningRecord] = []
    for factor in config.factor_grid:
        for seed in config.seeds:
            results: dict[str, frozenset[str]] = {}
            for index, nouns in enumerate(customers):
                kb = kb_template.copy()
                kb.reset()
                customer = Customer(id=nouns.owner, nouns=nouns, cooperation_factor=factor)
                before = _cosine(set(nouns.lemmas), kb.lemma_set, vocabulary)
                transcript = run_interaction(customer, kb, derive_seed(seed, index))
                after = _cosine(set(transcript.result), kb.lemma_set, vocabulary)
                results[nouns.owner] = transcript.result
                h2_records.append(LearningRecord(factor, seed, nouns.owner, before, after))
            for id_a, id_b in combinations(CUSTOMER_IDS, 2):
                cosine = _cosine(set(results[id_a]), set(results[id_b]), vocabulary)
                cells.append(PairRecord(factor, seed, id_a, id_b, cosine))

    aggregates = []
    for factor in config.factor_grid:
        values = np.array([c.cosine for c in cells if c.factor == factor])
        aggregates.append(
            FactorAggregate(
                factor=factor,
                mean=float(values.mean()),
                stddev=float(values.std()),
                n=int(values.size),
            )
        )
    metadata = {
        "config": config.to_json_dict(),
        "config_hash": config.content_hash(),
        "vocabulary_size": len(vocabulary),
        "noun_set_sizes": {
            ns.owner: len(ns.lemmas) for ns in [*customers, engineer_nouns]
        },
    }
    return ExperimentReport(cells=cells, aggregates=aggregates, h2_records=h2_records, metadata=metadata)


def _cosine(a: set[str], b: set[str], vocabulary: Vocabulary) -> float:
    return cosine_similarity(one_hot(a, vocabulary), one_hot(b, vocabulary))


def check_hypothesis_1(report: ExperimentReport, slack: float = DEFAULT_SLACK) -> TrendVerdict:
    """Mean similarity must rise with the cooperation factor."""
    if len(report.aggregates) < 2:
        raise ValueError("the trend check needs at least two grid points")
    factors = [agg.factor for agg in report.aggregates]
    means = [agg.mean for agg in report.aggregates]
    drops = [max(0.0, means[i] - means[i + 1]) for i in range(len(means) - 1)]
    worst = max(drops)
    endpoint_ok = True
    if 1.0 in factors:
        endpoint_ok = means[factors.index(1.0)] == 1.0
    rho = float(stats.spearmanr(factors, means).statistic)
    return TrendVerdict(passed=worst <= slack and endpoint_ok, worst_violation=worst, spearman=rho)


def check_hypothesis_2(report: ExperimentReport) -> LearningVerdict:
    """Every interaction must leave the pair at least as similar as before."""
    if not report.h2_records:
        return LearningVerdict(passed=True, counterexamples=[], warning="no learning records present")
    bad = [r for r in report.h2_records if r.cos_after < r.cos_before]
    return LearningVerdict(passed=not bad, counterexamples=bad)


# --- report files -------------------------------------------------------------


def emit_report(report: ExperimentReport, out_dir: str | Path) -> list[Path]:
    """Write report.json, pairs.csv, h2.csv, aggregate.json and curve.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def write_text(name: str, text: str) -> None:
        path = out / name
        path.write_text(text, "utf-8")
        written.append(path)

    write_text("report.json", json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n")

    pairs = io.StringIO()
    writer = csv.writer(pairs, lineterminator="\n")
    writer.writerow(["factor", "seed", "customer_a", "customer_b", "cosine"])
    for cell in report.cells:
        writer.writerow([cell.factor, cell.seed, cell.customer_a, cell.customer_b, repr(cell.cosine)])
    write_text("pairs.csv", pairs.getvalue())

    h2 = io.StringIO()
    writer = csv.writer(h2, lineterminator="\n")
    writer.writerow(["factor", "seed", "customer", "cos_before", "cos_after"])
    for record in report.h2_records:
        writer.writerow([
            record.factor, record.seed, record.customer,
            repr(record.cos_before), repr(record.cos_after),
        ])
    write_text("h2.csv", h2.getvalue())

    write_text(
        "aggregate.json",
        json.dumps([vars(a) for a in report.aggregates], indent=2, sort_keys=True) + "\n",
    )

    curve = io.StringIO()
    writer = csv.writer(curve, lineterminator="\n")
    writer.writerow(["factor", "mean_cosine"])
    for aggregate in report.aggregates:
        writer.writerow([aggregate.factor, repr(aggregate.mean)])
    write_text("curve.csv", curve.getvalue())

    return written


def load_report(path: str | Path) -> ExperimentReport:
    return ExperimentReport.from_json_dict(json.loads(Path(path).read_text("utf-8")))
