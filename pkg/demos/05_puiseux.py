"""Puiseux series: Newton-Puiseux roots and integer parts."""

from weakarith.puiseux import PuiseuxSeries, SeriesPoly, expand_roots, parse_series, parse_series_poly, plug_back_ok, ps_floor

f = parse_series_poly("y^2 - x")
for r in expand_roots(f, 2, depth=6):
    print("root of y^2 - x:", r.series, "exact" if r.exact else "truncated")

roots = [parse_series("x^(1/2) - 3"), parse_series("x + x^(-1)"), parse_series("-2*x^(3/2)")]
f = SeriesPoly.from_roots(roots)
print("product of three linear factors has degree", f.degree)
for r in expand_roots(f, 3, depth=6):
    print("   recovered", r.series, "plug-back ok:", plug_back_ok(f, r))

a = parse_series("x^(1/2) + 3 - x^(-1)")
rep = ps_floor(a)
print(f"floor({a}) = {rep.integer_part}, remainder {rep.remainder}")
print("x as a series:", PuiseuxSeries.x())
