#!/usr/bin/env python3
"""Generate the deterministic synthetic datasets into data/synthetic/."""

import argparse
from pathlib import Path

from trkm.synthetic import (
    blobs,
    crossplane,
    sine,
    write_classification_csv,
    write_regression_csv,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    default_dir = Path(__file__).resolve().parent.parent / "data" / "synthetic"
    parser.add_argument("--output-dir", default=str(default_dir))
    args = parser.parse_args()
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    x, y = crossplane()
    write_classification_csv(str(out / "crossplane130.csv"), x, y)
    x, y = blobs(20, 5.0, seed=0)
    write_classification_csv(str(out / "blobs.csv"), x, y)
    x, y = sine(50, seed=3)
    write_regression_csv(str(out / "sine.csv"), x, y)
    print(f"wrote crossplane130.csv, blobs.csv, sine.csv to {out}")


if __name__ == "__main__":
    main()
