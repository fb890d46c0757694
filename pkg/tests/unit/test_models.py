import pytest
from pydantic import ValidationError

from src.models.census import MotifCensus, OpenTriadCounts, TriangleCounts
from src.models.config import ExperimentConfig, GeneratorConfig, SamplingConfig, SweepAxes
from src.models.enums import ExperimentKind, GeneratorModel, JackknifeParameter, Layer
from src.models.observed import Observables
from src.models.report import (
    CSV_COLUMNS,
    TRIAL_COLUMNS,
    EstimateReport,
    JackknifeResult,
    TrialRecord,
    TruthValues,
)


def test_layer_enum():
    """Test Layer enum values."""
    assert Layer.STRONG.value == "s"
    assert Layer.WEAK.value == "w"
    assert Layer.STRONG.other is Layer.WEAK
    assert Layer("w") is Layer.WEAK


def test_jackknife_parameter_enum():
    assert JackknifeParameter.N.is_first_moment
    assert not JackknifeParameter.KSS.is_first_moment
    assert JackknifeParameter("cc_hat") is JackknifeParameter.CC


def test_observables_reject_too_many_seed_links():
    with pytest.raises(ValidationError):
        Observables(n0=3, n1s=0, n1w=0, m0s=4, m1s=0, m0w=0, m1w=0)


def test_observables_reject_negative_counts():
    with pytest.raises(ValidationError):
        Observables(n0=3, n1s=-1, n1w=0, m0s=0, m1s=0, m0w=0, m1w=0)


def test_observables_bound_weak_alter_links_by_budget():
    assert Observables(n0=3, n1s=0, n1w=6, m0s=0, m1s=0, m0w=0, m1w=6, budget=2).m1w == 6

    with pytest.raises(ValidationError):
        Observables(n0=3, n1s=0, n1w=7, m0s=0, m1s=0, m0w=0, m1w=7, budget=2)

    # Without a known budget only the seed-pair bound applies
    assert Observables(n0=3, n1s=0, n1w=7, m0s=0, m1s=0, m0w=0, m1w=7).budget is None


def test_sampling_config_accepts_budget_alias():
    assert SamplingConfig(B=4).budget == 4
    assert SamplingConfig(budget=6).budget == 6


def test_sampling_config_rejects_zero_q():
    with pytest.raises(ValidationError):
        SamplingConfig(q=0)


def test_generator_config_rejects_inverted_range():
    with pytest.raises(ValidationError):
        GeneratorConfig(strong_mean_degree_range=(20.0, 10.0))


def test_sweep_cells_order():
    axes = SweepAxes(node_counts=[100, 200], q_values=[0.1, 0.2], budgets=[5])

    assert axes.cells() == [(100, 0.1, 5), (100, 0.2, 5), (200, 0.1, 5), (200, 0.2, 5)]


def test_sweep_rejects_full_sampling():
    with pytest.raises(ValidationError):
        SweepAxes(q_values=[1.0])


def test_experiment_requires_two_layer_model():
    with pytest.raises(ValidationError):
        ExperimentConfig(generator=GeneratorConfig(model=GeneratorModel.BA))

    config = ExperimentConfig(
        kind=ExperimentKind.APPROX_CHECK, generator=GeneratorConfig(model=GeneratorModel.BA)
    )
    assert config.generator.model is GeneratorModel.BA


def test_experiment_from_toml(tmp_path):
    path = tmp_path / "experiment.toml"
    path.write_text(
        'kind = "mc_sweep"\n'
        "trials = 3\n"
        "master_seed = 9\n"
        "[generator]\n"
        "node_count = 500\n"
        "[sweep]\n"
        "q_values = [0.1, 0.2]\n"
        "budgets = [4]\n"
    )
    config = ExperimentConfig.from_file(path)

    assert config.trials == 3
    assert config.generator.node_count == 500
    assert config.sweep.cells() == [(4000, 0.1, 4), (4000, 0.2, 4)]


def test_shipped_experiment_documents_parse():
    from pathlib import Path

    directory = Path(__file__).parent.parent.parent / "config" / "experiments"
    documents = sorted(directory.glob("*.toml"))

    assert documents
    for path in documents:
        ExperimentConfig.from_file(path)


def test_motif_census_totals():
    census = MotifCensus(TriangleCounts(1, 2, 0, 0), OpenTriadCounts(5, 1, 0))

    assert census.triad_totals == (5 + 3 + 2, 1 + 4, 0)
    assert census.triangle_total == 3
    assert census.to_dict()["t_s2w"] == 2


def _report(**overrides) -> EstimateReport:
    values = dict(N_hat=1000.0, q_hat=0.1, Ks_hat=12.0, Kw_hat=90.0)
    values.update(overrides)
    return EstimateReport(**values)


def test_report_rejects_inconsistent_tau():
    with pytest.raises(ValidationError):
        _report(lam_ss=10.0, T_s3=1.0, T_s2w=1.0, tau_ss=100.0)


@pytest.mark.parametrize(
    "fields",
    [
        dict(lam_sw=4.0, T_s2w=1.0, T_sw2=2.0, tau_sw=11.0),
        dict(lam_ww=4.0, T_w3=1.0, T_sw2=2.0, tau_ww=10.0),
    ],
)
def test_report_rejects_inconsistent_mixed_and_weak_tau(fields):
    with pytest.raises(ValidationError):
        _report(**fields)


def test_report_accepts_consistent_triad_totals():
    report = _report(
        T_s3=1.0, T_s2w=1.0, T_sw2=2.0, T_w3=1.0,
        lam_ss=4.0, lam_sw=4.0, lam_ww=4.0,
        tau_ss=8.0, tau_sw=10.0, tau_ww=9.0,
    )

    assert report.tau_sw == 10.0


def test_report_row_follows_column_order():
    row = _report(warnings=["l_ss:negative:-3", "cc_hat:clamped:1.2"]).to_row()

    assert tuple(row) == CSV_COLUMNS
    assert row["warnings"] == "l_ss:negative:-3;cc_hat:clamped:1.2"
    assert row["Kss_hat"] is None


def test_report_json_condenses_jackknife():
    result = JackknifeResult(
        parameter="N_hat",
        h_full=1000.0,
        h_bar=990.0,
        variance=25.0,
        leave_one_out_values=[985.0, 995.0],
    )
    document = _report(jackknife={"N_hat": result}).to_json_dict()

    assert document["jackknife"] == {"N_hat": {"estimate": 1000.0, "mean": 990.0, "sd": 5.0}}


def test_trial_record_ratios():
    truth = TruthValues(
        N=1000, Ks=10.0, Kw=100.0, Kss=120.0, Ksw=1000.0, Kww=10100.0, cc=0.0,
        T_s3=1, T_s2w=1, T_sw2=1, T_w3=1, lam_ss=1, lam_sw=1, lam_ww=1,
    )
    record = TrialRecord(
        cell=0, trial=1, node_count=1000, q=0.1, budget=10, model="modified_ws",
        truth=truth, report=_report(Ks_hat=12.0, Kw_hat=90.0),
    )
    ratios = record.ratios()

    assert ratios["ratio_N_hat"] == pytest.approx(1.0)
    assert ratios["ratio_q_hat"] == pytest.approx(1.0)
    assert ratios["ratio_Ks_hat"] == pytest.approx(1.2)
    assert ratios["ratio_Kss_hat"] is None
    # Zero truth leaves the ratio undefined
    assert ratios["ratio_cc_hat"] is None


def test_trial_row_columns():
    record = TrialRecord(cell=0, trial=0, node_count=10, q=0.1, budget=2, model="modified_ws")

    assert tuple(record.to_row()) == TRIAL_COLUMNS
    assert tuple(record.to_row(include_timing=True))[-1] == "elapsed"
