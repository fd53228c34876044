"""
Dense coding with qudit W-type states
=====================================

|Omega^N> on d-level wires sends 2 log2 d bits using the d^2 shift-and-clock
operators on the last wire.  With d=2 it is the qubit |W^N> again.
"""

import numpy as np

from wclass import catalog, protocols

for d in (2, 3, 4, 5):
    p = protocols.omega_dense(3, d)
    ok = all(protocols.run_dense_coding(p, m) == m for m in range(d * d))
    print(f"d={d}: {d * d} messages round-trip={ok}, {protocols.capacity_bits(p):.6f} bits")

same = np.allclose(catalog.make_omega(4, 2).amplitudes, catalog.make_w_state_n(4).amplitudes)
print("Omega^4 with d=2 equals W^4:", same)

# the operators are trace-orthogonal: tr(U_a^dagger U_b) = d delta_ab
d = 3
ops = [catalog.generalized_pauli(m, n, d).matrix for m in range(d) for n in range(d)]
gram = np.array([[np.trace(a.conj().T @ b) for b in ops] for a in ops])
print("max deviation from d * identity:", np.abs(gram - d * np.eye(d * d)).max())
