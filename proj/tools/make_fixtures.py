#!/usr/bin/env python3
# Copyright 2026 The Ranklabel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the synthetic fixture tables into fixtures/.

Output is a pure function of the seeds below, so rerunning reproduces the
committed files byte for byte.
"""

import argparse
import csv
import pathlib
import random
import statistics

REGIONS = ["NE", "MW", "SA", "SC", "W"]


def fmt(x, digits=2):
    return f"{x:.{digits}f}"


def cs_departments(rng):
    rows = []
    for i in range(60):
        faculty = rng.randint(12, 90)
        pubs = max(0.5, faculty * rng.uniform(0.6, 1.4) + rng.gauss(0, 4))
        gre = min(170.0, max(150.0, 158 + 0.05 * faculty + rng.gauss(0, 2.5)))
        rows.append({
            "Department": f"Dept{i + 1:02d}",
            "PubCount": fmt(pubs, 1),
            "Faculty": str(faculty),
            "GRE": fmt(gre, 1),
            "Region": rng.choice(REGIONS),
        })
    median = statistics.median(int(r["Faculty"]) for r in rows)
    for r in rows:
        r["DeptSizeBin"] = "large" if int(r["Faculty"]) > median else "small"
    return rows


def german_credit(rng):
    rows = []
    for _ in range(1000):
        sex = "male" if rng.random() < 0.69 else "female"
        age = rng.randint(19, 75)
        rows.append({
            "Duration": str(rng.choice([6, 9, 12, 15, 18, 24, 30, 36, 48, 60])),
            "CreditAmount": str(int(rng.lognormvariate(7.8, 0.75))),
            "InstallmentRate": str(rng.randint(1, 4)),
            "Age": str(age),
            "ExistingCredits": str(rng.choice([1, 1, 1, 2, 2, 3, 4])),
            "Sex": sex,
            "AgeGroup": "young" if age < 25 else "adult",
            "Housing": rng.choice(["own", "own", "own", "rent", "free"]),
            "CreditScore": fmt(rng.betavariate(5, 2), 4),
        })
    return rows


def compas(rng):
    rows = []
    for _ in range(6889):
        race = "African-American" if rng.random() < 0.6 else "Caucasian"
        sex = "Male" if rng.random() < 0.81 else "Female"
        age = rng.randint(18, 70)
        priors = min(38, int(rng.expovariate(1 / 3.2)))
        decile = min(10, max(1, round(1 + priors * 0.5 + (40 - age) * 0.08
                                      + rng.gauss(0, 2))))
        rows.append({
            "Age": str(age),
            "Priors": str(priors),
            "JuvFelonies": str(min(10, int(rng.expovariate(1 / 0.15)))),
            "DecileScore": str(decile),
            "DaysInJail": "NA" if rng.random() < 0.01 else str(int(rng.expovariate(1 / 14))),
            "Sex": sex,
            "Race": race,
            "ChargeDegree": "F" if rng.random() < 0.64 else "M",
        })
    return rows


def write(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=pathlib.Path(__file__).resolve()
                        .parent.parent / "fixtures", type=pathlib.Path)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    write(args.out / "cs_departments.csv", cs_departments(random.Random(2018)))
    write(args.out / "german_credit.csv", german_credit(random.Random(1994)))
    write(args.out / "compas.csv", compas(random.Random(2016)))


if __name__ == "__main__":
    main()
