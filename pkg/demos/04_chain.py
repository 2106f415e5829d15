"""A chain of ring extensions with Bezout identities and exact divisions.

Each F step adjoins x_k, y_k with x_k v + y_k w = 1 for a prime pair (v, w).
Each division step adjoins a/n once the residue table shows n | a.
"""

from weakarith.axioms import bezout_witness, zr_divide
from weakarith.models import chain_f_step, chain_init, chain_zhat_step, register_prime
from weakarith.numberfield import PrimeSet

s = chain_init(PrimeSet([2, 3]), 24)
s = chain_f_step(s)  # first stage: a nonstandard element x1
print("x1 residues:", s.residues["x1"])

s, half = chain_zhat_step(s, "x1 + 1", 2)
print("adjoined", s.fmt(half.poly))

s = chain_f_step(register_prime(s, "2"), "2", "x1")
w = bezout_witness(s, "2", "x1")
print(f"Bezout: ({s.fmt(w.z)})*2 + ({s.fmt(w.t)})*x1 = {s.fmt(w.d)}")

res = zr_divide(s, "x1", 5)
print("x1 / 5:", res.outcome, "(5 is outside S)")
print("invariants:", s.check_invariants() or "all hold")
print(s.dumps()[:400], "...")
