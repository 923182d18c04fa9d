"""
Per-block entanglement parameters
=================================

Every choice of two rows and two columns picks out a two-qubit block; the
squared modulus of its determinant measures how entangled that block is.
Their sum E_total is zero on product states and bounded by (N-1)/(2N).
"""

import numpy as np

from minorsep import e_total, e_upper_bound, random_state, row_gram, verify_2xm_identity
from minorsep.oracle import e_total_gram

C = random_state(3, 4, seed=2)
rep = e_total(C)
print(f"{C.n} x {C.m} state: {len(rep.params)} blocks")
for sel, val in rep.top(5):
    print(f"  E({sel}) = {val:.6f}")
print(f"E_total = {rep.total:.12f}")
print(f"bound   = {rep.upper_bound:.12f}")

# The same number from the Gram matrix G = C C^H, without any minors.
print(f"Gram formula = {e_total_gram(C):.12f}")

# Local unitaries do not change E_total.
rng = np.random.default_rng(0)
U, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
V, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
print(f"after local unitaries: {e_total(U @ C.data @ V.T).total:.12f}")

# For two rows, E_total is tied to the row norms and their overlap.
D = 3.7 * random_state(2, 6, seed=5).data
g = row_gram(D)
lhs, rhs = verify_2xm_identity(D)
print(f"\n2 x 6 state, row norms {g.L.round(4)}")
print(f"(L1+L2)^2 - 4E       = {lhs:.12f}")
print(f"(L1-L2)^2 + 4|<r1,r2>|^2 = {rhs:.12f}")

# The bound grows towards 1/2 with the smaller dimension.
for N in range(2, 7):
    print(f"N = {N}: largest E_total = {e_upper_bound(N, N):.4f}")
