"""Euclidean division and normality in the localized polynomial ring M_B.

The ring has constant terms in Z and higher coefficients in the S-integers of
Q(sqrt 2). Division by n works exactly when every prime of n lies in S.
"""

from weakarith.axioms import normality_check, zr_divide
from weakarith.models import MBConfig
from weakarith.numberfield import NumberField, PrimeSet

cfg = MBConfig(NumberField.preset("sqrt2"), PrimeSet([2, 3]), q=5)

for g, n in [("3*x + 7", 6), ("[0, 1/3]*x^2 + 5", 12), ("x", 5)]:
    res = zr_divide(cfg, g, n)
    if res.is_witness:
        print(f"{g} = {n}*({res.q}) + {res.r}")
    else:
        print(f"{g} is not divisible by {n}: {res.certificate['reason']}")

# sqrt2 = (sqrt2 x^2)/x^2 solves t^2 - 2 = 0 but is not an element: no normality
v = normality_check(cfg, "[0, 1]*x^2", "x^2", ["0", "-2"])
print("u/v for t^2 - 2:", v.outcome, "-", v.reason)

v = normality_check(cfg, "2*x", "x", ["-2"])
print("u/v for t - 2:", v.outcome, "with quotient", v.quotient)
