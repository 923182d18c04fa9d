"""
Partial transpose spectra
=========================

Transposing one subsystem of rho = |psi><psi| leaves a matrix that has a
negative eigenvalue exactly when the pure state is entangled.  For 2 x m
and 3 x 3 states the spectrum also has a closed form in E_total and
|det C|^2.
"""

import numpy as np

from minorsep import closed_form_spectrum_2xm, cubic_spectrum_3x3, ppt_spectrum, random_product_state, random_state

bell = np.eye(2) / np.sqrt(2)
spec = ppt_spectrum(bell)
print("Bell state partial transpose eigenvalues:", spec.eigenvalues.round(12))
print("PPT positive:", spec.ppt_positive, " trace:", spec.trace, " trace of square:", spec.trace_sq)

P = random_product_state(3, 3, seed=1)
print("\nproduct 3x3 eigenvalues:", ppt_spectrum(P).eigenvalues.round(12))

# Closed forms against the Jacobi eigensolver.
C = random_state(2, 4, seed=4)
w = ppt_spectrum(C).eigenvalues
cf = closed_form_spectrum_2xm(C)
print("\n2 x 4 state")
print("  eigensolver:", w.round(8))
print("  closed form:", cf.round(8))
print("  max deviation:", np.max(np.abs(w - cf)))

D = random_state(3, 3, seed=8)
w = ppt_spectrum(D).eigenvalues
cf = cubic_spectrum_3x3(D)
print("\n3 x 3 state")
print("  eigensolver:", w.round(8))
print("  from two cubics:", cf.round(8))
print("  max deviation:", np.max(np.abs(w - cf)))

# Both sides of the bipartition give the same spectrum.
print("\nside A vs side B:", np.max(np.abs(ppt_spectrum(D, "A").eigenvalues - ppt_spectrum(D, "B").eigenvalues)))
