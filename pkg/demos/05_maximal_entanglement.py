"""
Maximally entangled states
==========================

E_total reaches (N-1)/(2N), N = min(n, m), exactly when the rows of C are
orthogonal with equal squared norms 1/n (columns when n > m).  This
generates such states and checks how far random states fall short.
"""

import numpy as np

from minorsep import e_total, e_upper_bound, generate_maxent, maxent_check, random_state

print(" n  m   E_total         bound           residual")
for n, m in [(2, 2), (2, 5), (3, 3), (3, 6), (5, 2), (6, 6)]:
    C = generate_maxent(n, m, seed=n * 10 + m)
    ok, res = maxent_check(C)
    print(f"{n:2d} {m:2d}   {e_total(C).total:.12f}  {e_upper_bound(n, m):.12f}  {res:.1e}")

# Random states sit strictly below the bound.
gaps = []
for seed in range(200):
    C = random_state(4, 4, seed)
    gaps.append(e_upper_bound(4, 4) - e_total(C).total)
print(f"\n200 random 4x4 states: bound minus E_total ranges over [{min(gaps):.4f}, {max(gaps):.4f}]")

residuals = [maxent_check(random_state(3, 5, s))[1] for s in range(200)]
print(f"their maximal-entanglement residuals: min {min(residuals):.3f}, median {np.median(residuals):.3f}")
