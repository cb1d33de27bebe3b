#!/usr/bin/env python3
# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds data/german.csv and data/compas.csv from the raw public files.

German Credit: UCI statlog german.data, 20 attributes. duration, credit_amount
and age are continuous; the remaining 17 attributes are categorical.

COMPAS: ProPublica compas-scores-two-years.csv with the usual ProPublica
filters. days_b_screening_arrest is used only for filtering and then dropped,
jail dates are dropped. Features: age, priors_count (continuous) and age_cat,
c_charge_degree, race, sex (categorical). Label: two_year_recid.
"""

import csv
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(os.path.dirname(HERE), "data")

GERMAN_COLUMNS = [
    "status", "duration", "credit_history", "purpose", "credit_amount",
    "savings", "present_employment", "installment_rate", "status_sex",
    "other_debtors", "present_residence_since", "property", "age",
    "installment_plans", "housing", "number_of_existing_credits", "job",
    "number_of_people_liable_for", "telephone", "foreign_worker", "credit",
]


def build_german():
    rows = []
    with open(os.path.join(DATA, "raw", "german.data")) as f:
        for line in f:
            parts = line.split()
            if not parts:
                continue
            assert len(parts) == len(GERMAN_COLUMNS), line
            rows.append(parts)
    with open(os.path.join(DATA, "german.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(GERMAN_COLUMNS)
        w.writerows(rows)
    return len(rows)


COMPAS_FEATURES = ["age", "priors_count", "age_cat", "c_charge_degree",
                   "race", "sex", "two_year_recid"]


def build_compas():
    out = []
    with open(os.path.join(DATA, "raw", "compas-scores-two-years.csv")) as f:
        reader = csv.reader(f)
        header = next(reader)
        # The raw file repeats some column names; first occurrence wins.
        index = {}
        for i, name in enumerate(header):
            index.setdefault(name, i)
        for r in reader:
            days = r[index["days_b_screening_arrest"]]
            if days == "" or not (-30 <= float(days) <= 30):
                continue
            if r[index["is_recid"]] == "-1":
                continue
            if r[index["c_charge_degree"]] == "O":
                continue
            if r[index["score_text"]] == "N/A":
                continue
            out.append([r[index[c]] for c in COMPAS_FEATURES])
    with open(os.path.join(DATA, "compas.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(COMPAS_FEATURES)
        w.writerows(out)
    return len(out)


if __name__ == "__main__":
    n_german = build_german()
    n_compas = build_compas()
    print(f"german.csv: {n_german} rows", file=sys.stderr)
    print(f"compas.csv: {n_compas} rows", file=sys.stderr)
