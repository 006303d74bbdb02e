#!/usr/bin/env python3
"""Build a 24-feature numeric German credit table from the categorical one.

Input: the 1000-row categorical Statlog German credit table (codes such as
A11, A34, ...), either whitespace separated (german.data) or a CSV with a
header row. Output: whitespace separated rows of 24 integer features and the
label (1 = good, 2 = bad), the layout the sampler's loader expects.

Columns 1-15 are ordinal codes or counts: checking status, duration, credit
history, amount / 100 (rounded), savings, employment, personal status,
installment rate, other debtors, age, other installment plans, existing
credits, people liable, telephone, foreign worker. Columns 16-24 are 0/1
indicators: purpose A40, A41, A43; housing A151, A153; property A121;
job A171, A172, A173. Present residence is dropped.
"""

import argparse
import csv
import sys


def code(value, prefix_len):
    return int(value[prefix_len:])


def convert(row):
    (checking, duration, history, purpose, amount, savings, employment, installment,
     personal, debtors, _residence, prop, age, plans, housing, credits, job, liable,
     phone, foreign, label) = row
    ordinal = [
        code(checking, 2),            # A11..A14 -> 1..4
        int(duration),
        code(history, 2),             # A30..A34 -> 0..4
        int(round(int(amount) / 100)),
        code(savings, 2),             # A61..A65 -> 1..5
        code(employment, 2),          # A71..A75 -> 1..5
        code(personal, 2),            # A91..A95 -> 1..5
        int(installment),
        code(debtors, 3),             # A101..A103 -> 1..3
        int(age),
        code(plans, 3),               # A141..A143 -> 1..3
        int(credits),
        int(liable),
        code(phone, 3),               # A191, A192 -> 1, 2
        code(foreign, 3),             # A201, A202 -> 1, 2
    ]
    indicators = [
        purpose == "A40", purpose == "A41", purpose == "A43",
        housing == "A151", housing == "A153",
        prop == "A121",
        job == "A171", job == "A172", job == "A173",
    ]
    return ordinal + [int(v) for v in indicators] + [int(label)]


def read_rows(path):
    with open(path, newline="") as fh:
        text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if "," in lines[0]:
        rows = list(csv.reader(lines))
        if not rows[0][0].startswith("A"):
            rows = rows[1:]
        return rows
    return [ln.split() for ln in lines]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("source")
    parser.add_argument("output")
    args = parser.parse_args()

    rows = read_rows(args.source)
    if len(rows) != 1000 or any(len(r) != 21 for r in rows):
        sys.exit(f"{args.source}: expected 1000 rows of 21 fields")
    with open(args.output, "w") as out:
        for row in rows:
            out.write("".join(f"{v:4d}" for v in convert(row)) + "\n")


if __name__ == "__main__":
    main()
