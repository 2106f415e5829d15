"""Arithmetic, ordering and S-integrality in Q(sqrt 2) and Q(cbrt 2)."""

from fractions import Fraction

from weakarith.numberfield import NumberField, PrimeSet, element_min_poly, nf_compare, s_integrality_check

K = NumberField.preset("sqrt2")
lam = K.gen
a = lam + 1
print("(sqrt2 + 1)(sqrt2 - 1) =", a * (lam - 1))
print("1/(sqrt2 + 1) =", a.inverse())
print("minimal polynomial of sqrt2 + 1:", element_min_poly(a))

# the ordering is exact, even for very close numbers
close = K.coerce(Fraction(1414213, 1000000))
print("sqrt2 > 1.414213 ?", nf_compare(lam, close) == 1)

b = lam / 3
for primes in ([3], [2]):
    res = s_integrality_check(b, PrimeSet(primes))
    print(f"sqrt2/3 in A<{primes}>:", res.member, "" if res.member else f"(prime {res.offending_prime} blocks it)")

L = NumberField.preset("cbrt2")
print("cbrt2^3 =", L.gen * L.gen * L.gen)
