"""Real roots of rational polynomials, located exactly with Sturm chains."""

from fractions import Fraction

from weakarith.exactmath import RatPoly, crt_combine, isolate_roots, refine_interval, sturm_chain

f = RatPoly([-2, 0, 0, 1])  # t^3 - 2
print("Sturm chain of t^3 - 2:")
for g in sturm_chain(f):
    print("   ", g)

(iv,) = isolate_roots(f)
lo, hi = iv.lo, iv.hi
print(f"one real root, isolated in ({lo}, {hi})")
fine = refine_interval(iv, Fraction(1, 10**12))
print(f"refined to width {float(fine.hi - fine.lo):.1e}: {float(fine.lo):.15f}")

# Chinese remaindering: x = 1 mod 4 and x = 2 mod 9
print("CRT(1 mod 4, 2 mod 9) =", crt_combine([(1, 4), (2, 9)]))
