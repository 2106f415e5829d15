"""When does a polynomial inequality block open induction at degree p?

A negative-at-zero polynomial P whose real roots all lie outside the
p-real closure of Q gives an obstruction. The sanity bracket checks
Q(0) < 0 < Q(N a) in the Puiseux model.
"""

from weakarith.axioms import oi_obstruction
from weakarith.exactmath import RatPoly

cases = [
    ("t^2 - 2", RatPoly([-2, 0, 1]), 1, None),
    ("t^2 - 4", RatPoly([-4, 0, 1]), 2, None),
    ("t^3 - 2", RatPoly([-2, 0, 0, 1]), 2, ["outside"]),
    ("t^3 - 2", RatPoly([-2, 0, 0, 1]), 2, None),
]
for name, P, p, certs in cases:
    rep = oi_obstruction(P, p, certs)
    print(f"{name:8s} p={p} certs={certs}: {rep.conclusion}; bracket holds: {rep.bracket['holds']}")
