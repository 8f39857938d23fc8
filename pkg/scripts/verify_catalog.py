"""Check every catalog entry and its attached constructions up to a depth."""
import argparse

from meshpat.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", default="6")
    ap.add_argument("--checks", default="all", choices=["all", "jd"])
    args = ap.parse_args()
    raise SystemExit(main(["verify-tables", "--nmax", args.nmax, "--checks", args.checks]))
