"""
Real-world series with user-supplied data
=========================================

The labor, airline, ozone and speleothem series are not shipped. Put them in
a directory as ``labor.csv``, ``airline.csv``, ``ozone.csv`` and
``speleothem.csv`` (``value`` or ``time,value`` columns) and point
``NEURALDECOMP_DATA`` at it. Each found file is split the standard way,
log-filtered where appropriate, and scored next to the published rows.
"""

import os
from pathlib import Path

import neuraldecomp as nd
from neuraldecomp.evaluate import DATASET_SETUPS, format_report, run_benchmark

data_dir = Path(os.environ.get("NEURALDECOMP_DATA", Path(__file__).parents[1] / "tests" / "data"))

for name, (split, log_filter) in DATASET_SETUPS.items():
    path = data_dir / f"{name}.csv"
    if not path.exists():
        print(f"{name}: no {path}, skipped")
        continue
    series = nd.load_csv(path, has_time_column=None)
    reports = run_benchmark(series, split, nd.TrainConfig(log_filter=log_filter),
                            reference=name)
    print(f"\n{name} ({split.train_count} train / {split.test_count} test)")
    print(format_report(reports))
