import dataclasses

import pytest

from hopfgauge.examples import radford_biproduct_datum, sweedler_datum, taft_datum
from hopfgauge.figures import _as_float, render
from hopfgauge.linalg import Field, InputError
from hopfgauge.pipeline import STAGES, run_pipeline


@pytest.mark.parametrize("make", [lambda: taft_datum(3, 7), radford_biproduct_datum], ids=["taft3", "radford"])
def test_radford_type_data_have_trivial_gauge(make):
    rep = run_pipeline(make())
    assert rep.ok, rep.table()
    assert rep.artifacts["xi_trivial"] and rep.artifacts["reassociator_trivial"]
    assert [s.name for s in rep.stages] == list(STAGES)


def test_stop_after_and_unknown_stage():
    rep = run_pipeline(sweedler_datum(), stop_after="gauge")
    assert [s.name for s in rep.stages] == list(STAGES[:4])
    with pytest.raises(InputError, match="unknown stage"):
        run_pipeline(sweedler_datum(), stop_after="everything")


def test_failure_stops_or_skips():
    S = sweedler_datum()
    bad = dataclasses.replace(S, pi=S.A.field.reduce(2 * S.pi))
    rep = run_pipeline(bad)
    assert not rep.ok and [s.status for s in rep.stages] == ["fail"]
    rep = run_pipeline(bad, keep_going=True)
    assert len(rep.stages) == len(STAGES)
    assert rep.stage("gauge").status == "skipped"
    assert rep.stage("integral").status == "pass"
    assert rep.to_json(timings=False)["verdict"] == "fail"


def test_figures_for_full_and_partial_runs(tmp_path):
    rep = run_pipeline(sweedler_datum())
    assert [p.rsplit("/", 1)[1] for p in render(rep, tmp_path / "full")] == ["stages.png", "gauge.png"]
    S = sweedler_datum()
    bad = dataclasses.replace(S, pi=S.A.field.reduce(2 * S.pi))
    assert [p.rsplit("/", 1)[1] for p in render(run_pipeline(bad), tmp_path / "partial")] == ["stages.png"]


def test_prime_field_values_plot_as_symmetric_residues():
    F = Field(7)
    assert list(_as_float(F, F.asarray([0, 1, 6, 4]))) == [0.0, 1.0, -1.0, -3.0]
    assert list(_as_float(Field(), Field().asarray(["1/2", "-3"]))) == [0.5, -3.0]
