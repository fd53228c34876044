"""
Teleportation and dense coding with N-qubit W states
=====================================================

The last qubit of |W^N> carries half the weight, so the first N-1 qubits
against the last form one ebit whatever N is.  Alice keeps the N-1 qubits.
"""

import numpy as np

from wclass import catalog, protocols
from wclass.qstate import Bipartition, bipartition_entanglement, random_state

rng = np.random.default_rng(0)
for N in range(2, 9):
    w = catalog.make_w_state_n(N)
    e = bipartition_entanglement(w, Bipartition(set(range(N - 1)), N))
    tele = protocols.w_n_qubit_teleport(N)
    worst = protocols.soundness_check(tele, [random_state((2,), rng) for _ in range(20)])
    dense = protocols.w_n_qubit_dense2(N)
    ok = all(protocols.run_dense_coding(dense, m) == m for m in range(4))
    print(f"N={N}  cut E={e:.6f}  teleport worst fidelity={worst:.12f}  dense 2 bits ok={ok}")

# one run in detail: each outcome is equally likely and fixed up exactly
t = protocols.run_teleportation(protocols.w_n_qubit_teleport(5), random_state((2,), rng))
for o in t.outcomes:
    print(f"outcome {o.index}: p={o.probability:.6f} fidelity={o.fidelity:.12f}")
