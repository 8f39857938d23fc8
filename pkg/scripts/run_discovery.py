"""Search every minus-antipodal shading of 123/132 and report the passing ones."""
import argparse

from meshpat.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", default="7")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    raise SystemExit(main(["discover", "--nmax", args.nmax] + (["--format", "json"] if args.json else [])))
