"""
Walking through one field by hand
=================================

K = M(alpha) with M = Q(sqrt 2) and alpha a root of x^3 + 2x + (1 + sqrt 2).
Each stage of the search is run separately so the intermediate numbers
can be inspected.
"""

from sextic_pib.absolute_solver import canonicalize, describe, j_polynomial, scan_k
from sextic_pib.config import load_config
from sextic_pib.relative_solver import solve_all
from sextic_pib.sextic_field import build_embeddings, index
from sextic_pib.sieve import find_split_prime, siegel_sieve
from sextic_pib.unit_bounds import exponent_box, k_range

cfg = load_config("example1")
spec = cfg.spec
print(spec)
print("absolute polynomial (low degree first):", spec.g)
print("field discriminant:", spec.D_K)
print("index of alpha:", index(spec.alpha, spec))

# conjugates of alpha to 250 digits
table = build_embeddings(spec, 250)

# box for the unit exponents k1, k2 when all coordinates stay below C
box = exponent_box(cfg.C, spec, table)
print("bounds (k, k1, k2):", box.exponent_bounds, " B0 =", box.B0)

# the congruence sieve at p = 809
plan = find_split_prime(spec, 809)
print("p =", plan.p, "roots of g mod p:", plan.roots)
for B0 in (152, box.B0):
    surv = siegel_sieve(plan, B0)
    print(f"B0 = {B0}: {len(surv)} of {(2 * B0 + 1) ** 2} tuples survive")

# relative solutions: X0 - theta*Y0 = eps1^k1 eps2^k2
rel = solve_all(surv, spec, table)
for s in rel:
    print("  tuple", s.exponents, "->", s.coords)

# the degree 9 polynomial for gamma = a2*w + alpha
print("P(a2) for alpha, k = 0:", j_polynomial((1, 0), (0, 0), 0, 1, spec))

# scan the admissible powers of eta for every relative solution
records = []
for s in rel:
    lo, hi = k_range(s.X0, s.Y0, spec, table, cfg.C)
    found = scan_k(s, spec, table, cfg.C)
    print(f"  {s.coords}: k in [{lo}, {hi}], {len(found)} hits")
    records += found

for r in canonicalize(records):
    print("generator:", describe(r.coords), " k =", r.provenance["k"])
