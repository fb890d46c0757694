import pytest

from src.models.config import ExperimentFlags
from src.models.enums import JackknifeParameter, Layer
from src.models.observed import ObservedNetwork
from src.services.graph_io import read_survey
from src.services.jackknife import (
    default_parameters,
    jackknife,
    jackknife_variance,
    subsample_estimates,
)
from src.utils.errors import TooFewSeedsError


def test_jackknife_variance_two_values():
    """Values {1, 3}: mean 2, (1/2) * (1 + 1) = 1."""
    assert jackknife_variance([1.0, 3.0]) == pytest.approx(1.0)


def test_jackknife_variance_constant_values():
    assert jackknife_variance([4.0, 4.0, 4.0]) == 0.0


def test_jackknife_variance_empty():
    assert jackknife_variance([]) == 0.0


def test_default_parameters():
    assert default_parameters() == [
        JackknifeParameter.N,
        JackknifeParameter.Q,
        JackknifeParameter.KS,
        JackknifeParameter.KW,
    ]
    extended = default_parameters(ExperimentFlags(second_moment_jackknife=True))
    assert JackknifeParameter.CC in extended
    assert len(extended) == 8


def test_jackknife_example_survey(example_survey_path):
    """Dropping respondent 1 or 7 leaves a singular K_w denominator."""
    observed = read_survey(example_survey_path)
    results = {result.parameter: result for result in jackknife(observed)}

    n_hat = results["N_hat"]
    assert n_hat.h_full == pytest.approx(32 / 3)
    assert n_hat.failed_seeds == [1, 7]
    assert n_hat.leave_one_out_values == pytest.approx([9.0, 9.0])
    assert n_hat.variance == 0.0

    kw_hat = results["Kw_hat"]
    assert kw_hat.leave_one_out_values == pytest.approx([2.0, 2.0])
    assert results["q_hat"].h_bar == pytest.approx(1 / 3)


def test_jackknife_requires_two_respondents():
    observed = ObservedNetwork.from_namings([0], [(0, 1, Layer.WEAK)], budget=1)

    with pytest.raises(TooFewSeedsError):
        jackknife(observed)


def test_jackknife_selected_parameters(example_survey_path):
    observed = read_survey(example_survey_path)
    results = jackknife(observed, parameters=[JackknifeParameter.Q])

    assert [result.parameter for result in results] == ["q_hat"]


def test_jackknife_is_worker_independent(example_survey_path):
    observed = read_survey(example_survey_path)

    serial = jackknife(observed, workers=1)
    parallel = jackknife(observed, workers=2)

    assert [r.model_dump() for r in serial] == [r.model_dump() for r in parallel]


def test_census_path_agrees_on_first_moments(example_survey_path):
    """The full pipeline and the statistics-only shortcut give the same N and K_w."""
    observed = read_survey(example_survey_path)
    flags = ExperimentFlags()

    shortcut = subsample_estimates(observed, 2, flags, needs_census=False)
    full = subsample_estimates(observed, 2, flags, needs_census=True)

    assert full["N_hat"] == pytest.approx(shortcut["N_hat"])
    assert full["Kw_hat"] == pytest.approx(shortcut["Kw_hat"])
    assert set(full) >= {"Kss_hat", "cc_hat"}


def test_jackknife_ignores_seed_and_naming_order(example_survey_path):
    observed = read_survey(example_survey_path)
    shuffled = ObservedNetwork.from_namings(
        sorted(observed.seeds, reverse=True),
        reversed(list(observed.naming_events())),
        budget=observed.budget,
    )

    original = [result.model_dump() for result in jackknife(observed)]
    reordered = [result.model_dump() for result in jackknife(shuffled)]

    assert reordered == original
