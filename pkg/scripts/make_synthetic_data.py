#!/usr/bin/env python3
"""Generate synthetic stand-in ARFF datasets with the published class counts.

Usage: python scripts/make_synthetic_data.py [--out data] [--seed 0]
"""

import argparse
from pathlib import Path

from smelldetect.datasets import SMELL_KINDS
from smelldetect.reference import RAW_CLASS_COUNTS
from smelldetect.synthetic import synthetic_dataset, write_arff

FILENAMES = {
    "GodClass": "god-class.arff",
    "DataClass": "data-class.arff",
    "FeatureEnvy": "feature-envy.arff",
    "LongMethod": "long-method.arff",
    "LongParameterList": "long-parameter-list.arff",
    "SwitchStatements": "switch-statements.arff",
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data", help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, smell in enumerate(SMELL_KINDS):
        dataset = synthetic_dataset(smell, seed=args.seed + i)
        path = out / FILENAMES[smell]
        write_arff(dataset, path)
        pos, neg = RAW_CLASS_COUNTS[smell]
        print(f"{path}  ({pos} smelly / {neg} not smelly)")


if __name__ == "__main__":
    main()
