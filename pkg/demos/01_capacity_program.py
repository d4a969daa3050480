"""
Exact capacity from a small covering program
============================================

Every download allocation that lets the user decode must put at least
one full symbol of download weight on each large-enough subset of each
replication group.  Minimizing the total weight is a tiny linear
program over exact rationals, and its reciprocal optimum is the
asymptotic capacity.
"""

from fractions import Fraction

from gxstplc import (
    GRAPH_FOURTEEN,
    GRAPH_SIX,
    asymptotic_capacity,
    build_capacity_lp,
    enumerate_vertices_oracle,
    simplex_min,
)

# the six-server pattern: set 1 lives on servers {1,2,3,5}, set 2 on {3,4,6}
print("pattern:", [list(ms.servers) for ms in GRAPH_SIX.message_sets])

lp = build_capacity_lp(GRAPH_SIX, x=1, t=1)
print(f"\ncovering program: {lp.n_vars} variables, {len(lp.rows)} rows")
for row in lp.rows:
    covered = [n + 1 for n, e in enumerate(row) if e]
    print(f"  sum of D over {covered} >= 1")

sol = simplex_min(lp)
print("\nsimplex optimum:", sol.optimum)
print("optimal allocation:", [str(d) for d in sol.vertex])

# cross-check against brute force: every vertex of the region, found by
# solving all square subsystems of tight constraints
vertices = enumerate_vertices_oracle(lp)
best = min(sum(v, Fraction(0)) for v in vertices)
print(f"\noracle found {len(vertices)} vertices; minimum objective {best}")
assert best == sol.optimum

cap = asymptotic_capacity(GRAPH_SIX, 1, 1)
print(f"\ncapacity = {cap.capacity}  (decode {cap.l_value} symbols "
      f"per {cap.total_downloads} downloaded)")
print("integer download profile tau:", list(cap.tau))

# the fourteen-server pattern from the wider example works the same way
cap14 = asymptotic_capacity(GRAPH_FOURTEEN, 1, 1)
print(f"\nfourteen-server capacity = {cap14.capacity}, "
      f"L = {cap14.l_value}, total downloads = {cap14.total_downloads}")
