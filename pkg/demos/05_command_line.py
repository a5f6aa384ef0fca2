"""
Driving the command-line tool from Python
=========================================

``vmf-fading`` writes versioned CSV files whose first line echoes every
parameter.  The same entry point can be called in-process.
"""

import io
import os
import tempfile

from vmf_fading.cli import run
from vmf_fading.csvio import read_table

out = io.StringIO()
run(["moments", "-s", "kappa=10", "-s", "beta_deg=90", "-s", "speed=30"], out)
print(out.getvalue())

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "lcr.csv")
    run(["lcr", "-s", "kappa=3", "-s", "level_step_db=5", "-o", path])
    params, cols, data = read_table(path)
    print("seed in header:", params["seed"], " columns:", cols)
    print(data)

    # a quick check of the whole suite, skipping the Monte-Carlo part
    code = run(["verify", "--no-monte-carlo"], io.StringIO())
    print("verify exit code:", code)
