"""Desk-scale reproduction of the experiment figures, end to end.

Drives the ``slslab figure`` subcommand to produce the fig2/fig3 CSVs at a
shrunk scale (n=100, 20 trials - a couple of minutes), then, if the
``slsplot`` package is installed, renders each CSV to a PNG with the
standalone plotter.  The two packages only talk through the CSV files.

    python3 demos/reproduce_figures.py [OUTPUT_DIR]
"""

import shutil
import subprocess
import sys
from pathlib import Path


def main():
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
    out_dir.mkdir(parents=True, exist_ok=True)
    for which, trials in (("fig2", 20), ("fig3", 20)):
        print(f"running {which} at n=100, {trials} trials ...")
        subprocess.run(
            [
                "slslab", "figure", which, "--out", str(out_dir),
                "--n", "100", "--trials", str(trials), "--seed", "2023",
            ],
            check=True,
        )
        csv_path = out_dir / f"{which}.csv"
        print(f"  wrote {csv_path}")
        if shutil.which("plot") is None:
            print("  (slsplot not installed; skipping image render)")
            continue
        png = out_dir / f"{which}.png"
        subprocess.run(
            [
                "plot", "--csv", str(csv_path), "--x", "sweep_value",
                "--series", "algorithm", "--yerr", "stderr",
                "--title", which, "--out", str(png),
            ],
            check=True,
        )
        print(f"  rendered {png}")


if __name__ == "__main__":
    main()
