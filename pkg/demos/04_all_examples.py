"""
Three fields end to end
=======================

The same pipeline the command line runs, for the three bundled fields.
"""

from sextic_pib.cli import run_solve

for name in ("example1", "example2", "example3"):
    rep = run_solve(name)
    print(name)
    print("  B0 =", rep.bounds["B0_used"], " primes", rep.sieve["primes"],
          " survivors", rep.sieve["survivors"], "of", rep.sieve["box_size"])
    print("  relative solutions:", [r["coords"] for r in rep.relative])
    for g in rep.generators:
        pv = g["provenance"]
        print(f"  {g['element']:<28} k={pv['k']:>3}  a2={pv['a2']:>3}")
    print("  seconds:", round(sum(rep.timings.values()), 2))
