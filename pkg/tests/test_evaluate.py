import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from neuraldecomp.datasets import gen_toy
from neuraldecomp.evaluate import (
    PUBLISHED,
    UndefinedMetricError,
    format_report,
    mape,
    published_reports,
    rmse,
    run_benchmark,
    write_report_csv,
)
from neuraldecomp.timeseries import SplitSpec, TimeSeries
from neuraldecomp.train import TrainConfig


def test_mape_examples():
    assert mape([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert mape([2.0, 4.0], [1.0, 5.0]) == pytest.approx(0.375)


def test_mape_zero_actual():
    with pytest.raises(UndefinedMetricError):
        mape([0.0, 1.0], [0.0, 1.0])


def test_rmse_examples():
    assert rmse([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert rmse([0.0, 0.0], [3.0, 4.0]) == pytest.approx(np.sqrt(12.5))


def test_length_mismatch():
    with pytest.raises(ValueError):
        rmse([1.0, 2.0], [1.0])
    with pytest.raises(ValueError):
        mape([1.0], [1.0, 2.0])


pairs = st.integers(1, 30).flatmap(
    lambda n: st.tuples(
        hnp.arrays(float, n, elements=st.floats(0.1, 1e3)),
        hnp.arrays(float, n, elements=st.floats(-1e3, 1e3)),
    )
)


@settings(max_examples=100, deadline=None)
@given(pairs, st.floats(-1e3, 1e3), st.floats(0.01, 100))
def test_metric_properties(pair, shift, factor):
    a, p = pair
    assert rmse(a, p) >= 0 and mape(a, p) >= 0
    assert rmse(a + shift, p + shift) == pytest.approx(rmse(a, p), rel=1e-6, abs=1e-6)
    assert mape(a * factor, a * factor) == 0.0
    assert (rmse(a, p) == 0) == np.array_equal(a, p)


def test_published_table():
    assert PUBLISHED["labor"]["ND"] == (10.89, 1.09)
    assert PUBLISHED["airline"]["ND"] == (9.52, 45.03)
    assert PUBLISHED["ozone"]["ND"] == (21.59, 0.99)
    assert PUBLISHED["speleothem"]["ND"] == (1.89, 0.214)
    rows = published_reports("speleothem")
    assert all(r.published and r.model_label.endswith("(published)") for r in rows)
    assert rows[0].mape is None


def test_persistence_on_constant_series():
    s = TimeSeries.from_values(np.full(20, 4.0))
    reports = run_benchmark(s, SplitSpec(12, 8), TrainConfig(epochs=2), baselines=["persistence"])
    persistence = [r for r in reports if r.model_label == "persistence"][0]
    assert persistence.mape == 0.0 and persistence.rmse == 0.0


def test_benchmark_rows_and_outputs(tmp_path):
    train, test = gen_toy(32, 16)
    s = TimeSeries(np.r_[train.times, test.times], np.r_[train.values, test.values])
    reports = run_benchmark(s, SplitSpec(32, 16), TrainConfig(epochs=20), reference="airline")
    labels = [r.model_label for r in reports]
    assert labels[:4] == ["ND", "ND (g=0)", "iDFT", "persistence"]
    assert "ND (published)" in labels
    assert all(r.n_test == 16 for r in reports[:4])
    text = format_report(reports)
    assert "MAPE %" in text and "iDFT" in text
    path = tmp_path / "r.csv"
    write_report_csv(reports, path)
    assert path.read_text().splitlines()[0] == "model,mape_percent,rmse"


def test_idft_baseline_repeats_training_window():
    train, test = gen_toy(64, 64)
    s = TimeSeries(np.r_[train.times, test.times[:32]], np.r_[train.values, test.values[:32]])
    reports = run_benchmark(s, SplitSpec(64, 32), TrainConfig(epochs=1), baselines=["idft"])
    idft = [r for r in reports if r.model_label == "iDFT"][0]
    # one period later the iDFT replays the training values, missing the 5t trend by 5
    assert idft.rmse == pytest.approx(5.0, abs=0.3)


def test_benchmark_never_sees_test_values():
    s = TimeSeries.from_values(np.sin(np.arange(40) / 3) + 2)
    altered = TimeSeries(s.times, np.r_[s.values[:30], s.values[30:] * 7 + 1])
    cfg = TrainConfig(epochs=15, seed=3)
    a = run_benchmark(s, SplitSpec(30, 10), cfg, baselines=["nd_no_aug"])
    b = run_benchmark(altered, SplitSpec(30, 10), cfg, baselines=["nd_no_aug"])
    for ra, rb in zip(a, b):
        assert ra.model.params_equal(rb.model)


def test_unknown_baseline():
    s = TimeSeries.from_values(np.arange(1.0, 11.0))
    with pytest.raises(ValueError):
        run_benchmark(s, SplitSpec(5, 5), TrainConfig(epochs=1), baselines=["lstm"])
