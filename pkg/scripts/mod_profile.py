"""TSV of (-a mod n) and floor(-a/n) for n = 1..n_max."""

import argparse
import sys

from fpfactor.cli import emit_mod_profile

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--a", type=int, default=1000)
parser.add_argument("--n-max", type=int, default=100)
args = parser.parse_args()
emit_mod_profile(args.a, args.n_max, sys.stdout)
