from __future__ import annotations

import json
import math
from pathlib import Path

import pytest

from reqdialog.experiment import (
    ConfigError,
    ExperimentConfig,
    ExperimentReport,
    FactorAggregate,
    LearningRecord,
    check_hypothesis_1,
    check_hypothesis_2,
    config_from_dict,
    emit_report,
    fixture_config,
    load_config,
    load_report,
    run_experiment,
)
from reqdialog.nlp import build_noun_set

CORPUS = Path(__file__).resolve().parents[1] / "src" / "reqdialog" / "data" / "corpus"


@pytest.fixture(scope="module")
def small_report() -> ExperimentReport:
    return run_experiment(fixture_config(factor_grid=(0.0, 0.5, 1.0), seed_count=5))


def corpus_noun_sets() -> tuple[list[set[str]], set[str]]:
    customers = []
    for cid in ("customer_1", "customer_2", "customer_3"):
        ns = build_noun_set(cid, [(CORPUS / f"{cid}.txt").read_text("utf-8")])
        customers.append(set(ns.lemmas))
    engineer = set(build_noun_set("e", [(CORPUS / "engineer.txt").read_text("utf-8")]).lemmas)
    return customers, engineer


# --- configuration -------------------------------------------------------------


def test_config_requires_three_customers() -> None:
    with pytest.raises(ConfigError):
        ExperimentConfig(
            customer_sources=((Path("a"),), (Path("b"),)),
            engineer_source=(Path("e"),),
        )


def test_config_rejects_unsorted_grid() -> None:
    with pytest.raises(ConfigError):
        fixture_config(factor_grid=(0.5, 0.1))


def test_config_rejects_out_of_range_factor() -> None:
    with pytest.raises(ConfigError):
        fixture_config(factor_grid=(0.0, 1.5))


def test_config_rejects_empty_seeds() -> None:
    with pytest.raises(ConfigError):
        fixture_config(seed_count=0)


def test_config_rejects_unknown_tagger_mode() -> None:
    with pytest.raises(ConfigError):
        config_from_dict({
            "customer_sources": [["a"], ["b"], ["c"]],
            "engineer_source": ["e"],
            "tagger_mode": "neural",
        })


def test_load_config_resolves_relative_paths(tmp_path) -> None:
    (tmp_path / "texts").mkdir()
    for name in ("c1", "c2", "c3", "eng"):
        (tmp_path / "texts" / f"{name}.txt").write_text("Akita dogs bark.", "utf-8")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({
        "customer_sources": [["texts/c1.txt"], ["texts/c2.txt"], ["texts/c3.txt"]],
        "engineer_source": ["texts/eng.txt"],
        "seeds": 2,
    }), "utf-8")
    config = load_config(config_path)
    assert config.engineer_source[0] == tmp_path / "texts" / "eng.txt"
    assert config.seeds == (0, 1)
    assert config.factor_grid == tuple(round(i / 10, 1) for i in range(11))


def test_load_config_rejects_malformed_json(tmp_path) -> None:
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", "utf-8")
    with pytest.raises(ConfigError):
        load_config(bad)


def test_config_hash_is_stable() -> None:
    a = fixture_config(seed_count=3)
    b = fixture_config(seed_count=3)
    assert a.content_hash() == b.content_hash()
    assert a.content_hash() != fixture_config(seed_count=4).content_hash()


# --- run_experiment --------------------------------------------------------------


def test_full_cooperation_gives_unit_cosines(small_report: ExperimentReport) -> None:
    ones = [c for c in small_report.cells if c.factor == 1.0]
    assert len(ones) == 3 * 5
    assert all(c.cosine == 1.0 for c in ones)


def test_zero_cooperation_matches_mutual_set_oracle(small_report: ExperimentReport) -> None:
    customers, engineer = corpus_noun_sets()
    mutual = [c & engineer for c in customers]
    expected = {}
    for (i, a), (j, b) in [((0, mutual[0]), (1, mutual[1])),
                           ((0, mutual[0]), (2, mutual[2])),
                           ((1, mutual[1]), (2, mutual[2]))]:
        expected[(f"customer_{i+1}", f"customer_{j+1}")] = len(a & b) / math.sqrt(len(a) * len(b))
    for cell in small_report.cells:
        if cell.factor == 0.0:
            assert cell.cosine == pytest.approx(expected[(cell.customer_a, cell.customer_b)], abs=1e-12)


def test_three_pairs_per_factor_and_seed(small_report: ExperimentReport) -> None:
    for factor in (0.0, 0.5, 1.0):
        for seed in range(5):
            pairs = [c for c in small_report.cells if c.factor == factor and c.seed == seed]
            assert len(pairs) == 3
            assert all(0.0 <= c.cosine <= 1.0 for c in pairs)


def test_mean_lies_between_min_and_max_of_cells(small_report: ExperimentReport) -> None:
    for aggregate in small_report.aggregates:
        values = [c.cosine for c in small_report.cells if c.factor == aggregate.factor]
        assert min(values) <= aggregate.mean <= max(values)
        assert aggregate.n == len(values)


def test_learning_records_never_regress(small_report: ExperimentReport) -> None:
    assert small_report.h2_records
    for record in small_report.h2_records:
        assert record.cos_after >= record.cos_before


def test_reports_are_deterministic() -> None:
    config = fixture_config(factor_grid=(0.0, 1.0), seed_count=2)
    first = run_experiment(config)
    second = run_experiment(config)
    assert first.to_json_dict() == second.to_json_dict()


def test_metadata_describes_the_run(small_report: ExperimentReport) -> None:
    meta = small_report.metadata
    assert meta["vocabulary_size"] > 0
    assert set(meta["noun_set_sizes"]) == {"customer_1", "customer_2", "customer_3", "engineer"}
    assert meta["config_hash"]


def test_missing_source_file_raises_with_context(tmp_path) -> None:
    config = ExperimentConfig(
        customer_sources=((tmp_path / "absent.txt",),) * 3,
        engineer_source=(tmp_path / "absent.txt",),
        seeds=(0,),
    )
    with pytest.raises(OSError):
        run_experiment(config)


# --- hypothesis checks -------------------------------------------------------------


def trend_report(means: list[float]) -> ExperimentReport:
    factors = [round(i / (len(means) - 1), 3) for i in range(len(means))]
    return ExperimentReport(
        cells=[],
        aggregates=[FactorAggregate(f, m, 0.0, 1) for f, m in zip(factors, means)],
        h2_records=[],
    )


def test_trend_check_passes_on_monotone_means() -> None:
    verdict = check_hypothesis_1(trend_report([0.4, 0.6, 1.0]), slack=0.02)
    assert verdict.passed
    assert verdict.spearman == 1.0
    assert verdict.worst_violation == 0.0


def test_trend_check_fails_on_a_real_drop() -> None:
    verdict = check_hypothesis_1(trend_report([0.5, 0.4, 1.0]), slack=0.02)
    assert not verdict.passed
    assert verdict.worst_violation == pytest.approx(0.1)


def test_trend_check_tolerates_drop_within_slack() -> None:
    verdict = check_hypothesis_1(trend_report([0.50, 0.49, 1.0]), slack=0.02)
    assert verdict.passed


def test_trend_check_requires_unit_mean_at_factor_one() -> None:
    verdict = check_hypothesis_1(trend_report([0.4, 0.6, 0.99]), slack=0.02)
    assert not verdict.passed


def test_trend_check_needs_two_grid_points() -> None:
    single = ExperimentReport(
        cells=[], aggregates=[FactorAggregate(1.0, 1.0, 0.0, 3)], h2_records=[],
    )
    with pytest.raises(ValueError):
        check_hypothesis_1(single)


def test_learning_check_passes_on_generated_reports(small_report: ExperimentReport) -> None:
    verdict = check_hypothesis_2(small_report)
    assert verdict.passed
    assert verdict.counterexamples == []
    assert verdict.warning is None


def test_learning_check_flags_forged_regression() -> None:
    report = ExperimentReport(
        cells=[],
        aggregates=[],
        h2_records=[LearningRecord(0.5, 0, "customer_1", cos_before=0.9, cos_after=0.2)],
    )
    verdict = check_hypothesis_2(report)
    assert not verdict.passed
    assert len(verdict.counterexamples) == 1


def test_learning_check_vacuous_pass_with_warning() -> None:
    verdict = check_hypothesis_2(ExperimentReport(cells=[], aggregates=[], h2_records=[]))
    assert verdict.passed
    assert verdict.warning is not None


# --- report files ---------------------------------------------------------------


def test_emit_report_writes_expected_files(tmp_path, small_report: ExperimentReport) -> None:
    written = emit_report(small_report, tmp_path)
    names = {p.name for p in written}
    assert names == {"report.json", "pairs.csv", "h2.csv", "aggregate.json", "curve.csv"}
    pairs = (tmp_path / "pairs.csv").read_text("utf-8").splitlines()
    assert pairs[0] == "factor,seed,customer_a,customer_b,cosine"
    assert len(pairs) == 1 + len(small_report.cells)
    h2 = (tmp_path / "h2.csv").read_text("utf-8").splitlines()
    assert h2[0] == "factor,seed,customer,cos_before,cos_after"
    assert len(h2) == 1 + len(small_report.h2_records)
    aggregate = json.loads((tmp_path / "aggregate.json").read_text("utf-8"))
    assert len(aggregate) == 3


def test_emitted_files_are_byte_identical_across_emits(tmp_path, small_report: ExperimentReport) -> None:
    emit_report(small_report, tmp_path / "one")
    emit_report(small_report, tmp_path / "two")
    for name in ("report.json", "pairs.csv", "h2.csv", "aggregate.json", "curve.csv"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_report_round_trips_through_json(tmp_path, small_report: ExperimentReport) -> None:
    emit_report(small_report, tmp_path)
    loaded = load_report(tmp_path / "report.json")
    assert loaded.to_json_dict() == small_report.to_json_dict()
