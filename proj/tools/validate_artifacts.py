#!/usr/bin/env python3
"""Validate svo-games CLI artifacts against the shipped schemas.

Usage: validate_artifacts.py KIND FILE [FILE ...]
KIND is one of equilibria, curve, blowup, bounds (JSON) or
curve_csv, locus_csv, trajectory_csv.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import jsonschema

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"
JSON_KINDS = {"equilibria", "curve", "blowup", "bounds"}
CSV_KINDS = {"curve_csv", "locus_csv", "trajectory_csv"}


def expected_header(kind, header, layout):
    if "columns" in layout:
        return layout["columns"]
    lead, trail = layout["leading"], layout["trailing"]
    d = len(header) - len(lead) - len(trail)
    return lead + [f"{layout['repeated']}{i}" for i in range(max(d, 0))] + trail


def check_csv(kind, path, layout):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise ValueError("empty CSV")
    header = rows[0]
    want = expected_header(kind, header, layout)
    if header != want:
        raise ValueError(f"header {header} != {want}")
    text_cols = {i for i, name in enumerate(header) if name == "status"}
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValueError(f"line {n}: {len(row)} fields, expected {len(header)}")
        for i, cell in enumerate(row):
            if i in text_cols:
                continue
            value = float(cell)
            if math.isnan(value) and "status" not in header:
                raise ValueError(f"line {n}: NaN in column {header[i]}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("kind", choices=sorted(JSON_KINDS | CSV_KINDS))
    parser.add_argument("files", nargs="+")
    args = parser.parse_args()

    failures = 0
    if args.kind in JSON_KINDS:
        schema = json.loads((SCHEMA_DIR / f"{args.kind}.schema.json").read_text())
        validator = jsonschema.Draft202012Validator(schema)
        for path in args.files:
            errors = list(validator.iter_errors(json.loads(Path(path).read_text())))
            for err in errors:
                print(f"{path}: {err.json_path}: {err.message}", file=sys.stderr)
            failures += bool(errors)
    else:
        layout = json.loads((SCHEMA_DIR / "csv_columns.json").read_text())[args.kind]
        for path in args.files:
            try:
                check_csv(args.kind, path, layout)
            except ValueError as err:
                print(f"{path}: {err}", file=sys.stderr)
                failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
