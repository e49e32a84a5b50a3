"""
Abelian divisors on a one-parameter family of threefolds
=========================================================

The period matrix tau = s * [[3,-1,-1],[-1,3,-1],[-1,-1,3]] has a Neron-Severi
group of rank 6. We compute it, write the quadratic and cubic forms in the
five quotient coordinates, and list every abelian surface of degree at most 6
whose class lies in the box [-3, 3]^5.
"""
import json
from pathlib import Path

from nsdivisor import (PolarizedContext, SearchQuery, enumerate_divisors, load_document,
                       q_polynomial, reduced_coordinates)

HERE = Path(__file__).resolve().parent
doc = json.loads((HERE.parent / "inputs" / "family_f3.json").read_text())
tau, pns = load_document(doc)
ctx = PolarizedContext(3)

print(f"NS rank {pns.rank}, quotient rank {pns.quotient_rank}")
for k, row in enumerate(pns.quotient_basis, 1):
    print(f"  v{k} = {reduced_coordinates(3, row)}")

###############################################################################
# q_2 and q_3 restricted to the quotient, in coordinates a..e

names = list("abcde")
print("q2 =", q_polynomial(ctx, pns.lift_basis(), 2, names))
print("q3 =", q_polynomial(ctx, pns.lift_basis(), 3, names))

###############################################################################
# The search only keeps primitive classes with q_2 = d^2 and q_3 = -d^3

records = enumerate_divisors(ctx, pns, SearchQuery(3, 6))
print(f"\n{'class':<19} (Z.Theta^2)  (E.Theta)")
for rec in records:
    print(f"{str(rec.quotient_coords):<19} {rec.divisor_degree:>11}  {rec.complement_degree:>9}")
print(f"{len(records)} divisors")
