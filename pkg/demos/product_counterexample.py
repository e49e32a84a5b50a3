"""
Why the cubic form is needed
============================

On a product of three elliptic curves take alpha_k = -k D1 + k(k+1) D2 + (k+1) D3.
Its self-intersection with Theta vanishes, so q_2(alpha_k) is a perfect square,
but q_3 rules it out as the class of an abelian surface.
"""
from nsdivisor import (PolarizedContext, TwoForm, degree, diagonal_period_matrix,
                       intersection_number, mixed_power, ns_basis, q_values, satisfies_target)

ctx = PolarizedContext(3)
pns = ns_basis(diagonal_period_matrix(3))
D = [TwoForm.from_dict(3, {(i, i + 3): -1}) for i in (1, 2, 3)]

print(" k  deg  (a^2.T)  (a^3)     q2      q3  target?")
for k in range(1, 6):
    alpha = -k * D[0] + k * (k + 1) * D[1] + (k + 1) * D[2]
    d = degree(ctx, alpha)
    q2, q3 = q_values(ctx, alpha)
    ok = satisfies_target(ctx, pns, pns.project(alpha), d)
    cells = [k, d, mixed_power(ctx, alpha, 2), intersection_number(ctx, [alpha] * 3), q2, q3]
    print(" ".join(f"{str(c):>{w}}" for c, w in zip(cells, (2, 4, 8, 6, 6, 7))), "", ok)

# -d^3 would be needed: 6^3 = 216 at k = 1 but q3 comes out +216
