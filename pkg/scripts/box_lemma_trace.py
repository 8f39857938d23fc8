"""Print the swap-chain trace of the length-2 box-lemma pair on 263518497."""
import sys

from meshpat.cli import main

if __name__ == "__main__":
    perm = sys.argv[1] if len(sys.argv) > 1 else "263518497"
    raise SystemExit(main(["bijection-trace", "box-lemma", perm]))
