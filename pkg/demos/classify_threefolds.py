"""
Classifying three period matrices
=================================

A product of elliptic curves, the special family at s, and a generic symmetric
tau. The verdicts are exact inside the coordinate box and say so when they
depend on it.
"""
import json
from pathlib import Path

from nsdivisor import PolarizedContext, classify, load_document

HERE = Path(__file__).resolve().parent
ctx = PolarizedContext(3)

for name, bound in (("product3", 2), ("family_f3", 4), ("generic3", 4)):
    tau, pns = load_document(json.loads((HERE.parent / "inputs" / f"{name}.json").read_text()))
    print(f"\n{name}: NS rank {pns.rank}, box [-{bound},{bound}]^{pns.quotient_rank}")
    for v in classify(ctx, pns, bound).verdicts:
        first = v.witnesses[0].quotient_coords if v.witnesses else ""
        print(f"  {v.criterion:<24} {v.verdict:<20} {first}")
