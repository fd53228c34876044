"""
Entanglement across the cuts of three-qubit W states
=====================================================

Two W-class states, one symmetric and one with its third qubit weighted up.
Only the second has a cut carrying a full ebit.
"""

from wclass import catalog
from wclass.analysis import scan_bipartitions, binary_entropy

# the symmetric state: every qubit looks the same from outside
wt = catalog.make_w_tilde123()
for row in scan_bipartitions(wt).rows:
    print(f"~W   cut {row.subset} | rest: {row.entanglement:.6f}")

# each single-qubit reduced state has eigenvalues 1/3 and 2/3
print(f"H(1/3) = {binary_entropy(1 / 3):.6f}")

# weighted version: qubit 2 holds half the excitation probability
w = catalog.make_w123()
for row in scan_bipartitions(w).rows:
    print(f"W    cut {row.subset} | rest: {row.entanglement:.6f}")
print(f"H(1/4) = {binary_entropy(1 / 4):.6f}")
