#!/usr/bin/env python3
"""Fetch OR-Library unicost set-cover files into benchmarks/data/.

Network access is required; the benchmark suite treats these files as
optional and skips the desk-scale checks when they are missing.
"""
import argparse
import sys
import urllib.error
import urllib.request
from pathlib import Path

BASE_URL = "https://people.brunel.ac.uk/~mastjjb/jeb/orlib/files"

FAMILIES = {
    "scpe": [f"scpe{i}" for i in range(1, 6)],
    "scpclr": [f"scpclr{i}" for i in range(10, 14)],
    "scpcyc": [f"scpcyc{i:02d}" for i in range(6, 12)],
    "rail": ["rail507", "rail516", "rail582", "rail2536", "rail2586",
             "rail4284", "rail4872"],
}


def fetch(name: str, dest: Path) -> bool:
    url = f"{BASE_URL}/{name}.txt"
    target = dest / f"{name}.txt"
    if target.exists():
        print(f"  {name}: already present")
        return True
    try:
        with urllib.request.urlopen(url, timeout=60) as response:
            target.write_bytes(response.read())
    except (urllib.error.URLError, OSError) as exc:
        print(f"  {name}: FAILED ({exc})")
        return False
    print(f"  {name}: ok ({target.stat().st_size} bytes)")
    return True


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--families", default="scpe,scpclr,scpcyc,rail",
        help="comma-separated subset of: " + ",".join(FAMILIES),
    )
    parser.add_argument(
        "--dest",
        default=str(Path(__file__).resolve().parent.parent / "benchmarks" / "data"),
    )
    args = parser.parse_args()
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    failures = 0
    for family in args.families.split(","):
        family = family.strip()
        if family not in FAMILIES:
            print(f"unknown family {family!r}", file=sys.stderr)
            return 2
        print(f"{family}:")
        for name in FAMILIES[family]:
            if not fetch(name, dest):
                failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
