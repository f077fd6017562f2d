#!/usr/bin/env python3
"""Dumps the classic iris table to tests/data/iris.csv."""

import os

from sklearn.datasets import load_iris

COLS = ["Sepal.Length", "Sepal.Width", "Petal.Length", "Petal.Width"]


def main():
    iris = load_iris()
    out = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "iris.csv")
    os.makedirs(os.path.dirname(out), exist_ok=True)
    with open(out, "w") as f:
        f.write(",".join(COLS + ["Species"]) + "\n")
        for x, y in zip(iris.data, iris.target):
            vals = [f"{v:g}" for v in x] + [iris.target_names[y]]
            f.write(",".join(vals) + "\n")
    print(f"wrote {out}: {len(iris.data)} rows")


if __name__ == "__main__":
    main()
