"""Sweep nu along the circle and tally verdicts, as the `sweep` command does."""
from fractions import Fraction

from heisfree.cli import sweep_records

records = list(sweep_records(Fraction(-10), Fraction(10), 41))
free = [r for r in records if r["verdict"] == "CertifiedFree"]
print(f"{len(free)} of {len(records)} sampled nu are certified free")
print("certified nu range:", free[0]["nu"], "to", free[-1]["nu"])  # |nu| <= sqrt(125/3) ~ 6.455
for r in records[::10]:
    print(r["nu"], r["verdict"], r["mu_abs2"])
