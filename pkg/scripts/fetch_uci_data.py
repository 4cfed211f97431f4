"""Fetch the UCI datasets that do not ship with scikit-learn.

Downloads seeds, glass, and liver-disorders from the UCI repository,
strips id/label columns, and writes plain numeric CSVs into data/ so the
reference-objective acceptance gate can run on them.  Needs network
access; iris and wine are bundled with scikit-learn and never fetched.

Usage: python scripts/fetch_uci_data.py [name ...]   (default: all)
"""

import sys
import urllib.request
from pathlib import Path

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

# name -> (url, separator, column slice keeping only the features, rows)
SOURCES = {
    # 7 geometric kernel measurements; last column is the variety label
    "seeds": (f"{BASE}/00236/seeds_dataset.txt", None, slice(0, 7), 210),
    # column 0 is a row id, last column the glass type
    "glass": (f"{BASE}/glass/glass.data", ",", slice(1, 10), 214),
    # five blood-test features; drinks and the train/test selector dropped
    "liver": (f"{BASE}/liver-disorders/bupa.data", ",", slice(0, 5), 345),
}

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


def fetch(name):
    url, sep, keep, expected_rows = SOURCES[name]
    print(f"{name}: downloading {url}")
    with urllib.request.urlopen(url, timeout=60) as resp:
        text = resp.read().decode("utf-8")
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        fields = line.split(sep)
        rows.append([float(x) for x in fields[keep]])
    if len(rows) != expected_rows:
        raise SystemExit(f"{name}: expected {expected_rows} rows, parsed {len(rows)}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise SystemExit(f"{name}: ragged rows, widths {sorted(widths)}")
    out = DATA_DIR / f"{name}.csv"
    out.write_text("\n".join(",".join(repr(v) for v in row) for row in rows) + "\n")
    print(f"{name}: wrote {out} ({len(rows)} x {widths.pop()})")


def main(argv):
    names = argv or list(SOURCES)
    unknown = [n for n in names if n not in SOURCES]
    if unknown:
        raise SystemExit(f"unknown dataset(s) {unknown}; choose from {list(SOURCES)}")
    DATA_DIR.mkdir(exist_ok=True)
    for name in names:
        fetch(name)


if __name__ == "__main__":
    main(sys.argv[1:])
