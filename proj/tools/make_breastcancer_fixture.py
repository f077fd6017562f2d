#!/usr/bin/env python3
"""Builds tests/data/breastcancer.csv, a 699-row synthetic analog of the
UCI breast-cancer table (9 integer predictors in 1..10, benign/malignant
class, 16 missing Bare.nuclei cells).

The blocks are engineered so a Gaussian naive Bayes behaves the same under
any CV split: a large all-quiet benign block with Bare.nuclei=1 and
Normal.nucleoli=1 that is always classified correctly, a handful of
malignant-looking benign rows that always come out malignant, and a dozen
benign-looking malignant rows (single nucleolus) that always come out
benign. Everything else is cleanly separated.
"""

import os
import random

HEADER = [
    "Cl.thickness", "Cell.size", "Cell.shape", "Marg.adhesion", "Epith.c.size",
    "Bare.nuclei", "Bl.cromatin", "Normal.nucleoli", "Mitoses", "Class",
]


def low(rng):
    return rng.choice([1, 1, 1, 2, 2, 3])


def high(rng):
    return rng.choice([6, 7, 7, 8, 8, 9, 10])


def main():
    rng = random.Random(48151623)
    rows = []

    # 360 quiet benign: the Bare.nuclei=1 & Normal.nucleoli=1 subgroup
    for _ in range(360):
        rows.append([low(rng), low(rng), low(rng), low(rng), low(rng),
                     1, low(rng), 1, 1, "benign"])

    # 88 ordinary benign; never both nuclei columns at 1
    for _ in range(88):
        bn = rng.choice([1, 2, 2, 3])
        nn = rng.choice([2, 2, 3]) if bn == 1 else rng.choice([1, 1, 2, 3])
        rows.append([low(rng), low(rng), low(rng), low(rng), low(rng),
                     bn, low(rng), nn, 1, "benign"])

    # 10 hard benign: malignant-looking, mid-range nucleoli
    for _ in range(10):
        rows.append([rng.choice([7, 8, 9]), high(rng), high(rng), high(rng), high(rng),
                     rng.choice([5, 6, 7]), high(rng), rng.choice([5, 6, 7]),
                     rng.choice([4, 5, 6]), "benign"])

    # 229 easy malignant
    for _ in range(229):
        rows.append([high(rng), high(rng), high(rng), high(rng), high(rng),
                     rng.choice([5, 6, 7, 8, 9, 10]), high(rng),
                     rng.choice([3, 4, 5, 6, 7, 8, 9, 10]),
                     rng.choice([2, 3, 4, 5, 6, 7]), "malignant"])

    # 12 hard malignant: benign-looking except Bare.nuclei, single nucleolus
    for _ in range(12):
        rows.append([low(rng), low(rng), low(rng), low(rng), low(rng),
                     rng.choice([4, 5, 6, 7]), low(rng), 1, 1, "malignant"])

    # 16 missing Bare.nuclei cells, confined to the ordinary benign block
    for i in rng.sample(range(360, 448), 16):
        rows[i][5] = "?"

    rng.shuffle(rows)
    first_benign = next(i for i, r in enumerate(rows) if r[-1] == "benign")
    rows[0], rows[first_benign] = rows[first_benign], rows[0]

    out = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "breastcancer.csv")
    os.makedirs(os.path.dirname(out), exist_ok=True)
    with open(out, "w") as f:
        f.write(",".join(HEADER) + "\n")
        for r in rows:
            f.write(",".join(str(v) for v in r) + "\n")
    print(f"wrote {out}: {len(rows)} rows")


if __name__ == "__main__":
    main()
