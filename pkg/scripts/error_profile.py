"""TSV of x*RD(z/x) and x*RU(z/x) over every positive float (default: z=1 in (2,4,-4,4))."""

import argparse
import sys

from fpfactor.cli import emit_error_profile, parse_format, parse_value

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--format", default="b=2,p=4,emin=-4,emax=4")
parser.add_argument("--z", default="1")
args = parser.parse_args()
fmt = parse_format(args.format)
emit_error_profile(fmt, parse_value(fmt, args.z), sys.stdout)
