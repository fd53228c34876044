"""
Cutting the symmetric W state, and sending a pair through it
============================================================

For |~W^N> the entanglement across a cut only depends on how many qubits are
on one side: x of N gives H(x/N).  The balanced cut wins; with N=4 it gives
one ebit per side, enough to teleport a restricted family of two-qubit states.
"""

import numpy as np

from wclass import analysis, catalog, protocols
from wclass.qstate import StateVector, random_state

for N in (4, 5, 7, 10):
    scan = analysis.scan_bipartitions(catalog.make_w_tilde_n(N))
    by_size = {x: max(v) - min(v) for x, v in scan.by_size().items()}
    best = analysis.optimal_wtilde_partition(N)
    print(f"N={N}: spread within each size {max(by_size.values()):.1e}, best x={best.ties} E={best.entanglement:.6f}")

# two qubits a, b held against the other two
p = protocols.wtilde4_pair_teleport()
print(p.name, p.outcome_count, "outcomes,", p.classical_bits, "classical bits")

rng = np.random.default_rng(5)
for family, slots in (("a|00>+b|11>", (0, 3)), ("a|01>+b|10>", (1, 2))):
    amps = np.zeros(4, dtype=complex)
    amps[list(slots)] = random_state((2,), rng).amplitudes
    t = protocols.run_teleportation(p, StateVector.normalized(amps, (2, 2)))
    print(f"{family}: outcomes {[o.index for o in t.realized]}, worst fidelity {t.worst_fidelity:.12f}")
