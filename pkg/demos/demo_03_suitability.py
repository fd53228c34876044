"""
Which three-qubit states can replace GHZ?
=========================================

A three-qubit state works for perfect teleportation and two-bit dense coding
exactly when some pair|single cut holds one ebit.  When it does, the Schmidt
vectors hand us the local unitaries that turn GHZ into it.
"""

import numpy as np

from wclass import analysis, catalog, protocols
from wclass.qstate import apply_unitary, random_state, random_unitary

for name, state in [
    ("W123", catalog.make_w123()),
    ("~W123", catalog.make_w_tilde123()),
    ("~GHZ123", catalog.make_ghz_tilde()),
    ("W_n(n=3, g=0.4, d=-1)", catalog.make_w_n(3.0, 0.4, -1.0)),
]:
    v = analysis.classify_suitability(state)
    cut = v.witness_cut if v.suitable else "-"
    print(f"{name:24s} suitable={v.suitable!s:5s} cut={cut!s:6s} max cut E={v.max_single_cut_entanglement:.6f}")

# hide a GHZ behind random local unitaries and get it back
rng = np.random.default_rng(3)
hidden = apply_unitary(catalog.make_ghz(), random_unitary((0, 1), 4, rng))
hidden = apply_unitary(hidden, random_unitary((2,), 2, rng))
verdict = analysis.classify_suitability(hidden)
print("witness reconstruction error:", f"{verdict.reconstruction_error(hidden):.2e}")

# the witness turns straight into a working protocol
tele = protocols.witness_teleport_protocol(verdict)
payloads = [random_state((2,), rng) for _ in range(20)]
print("teleportation through the hidden GHZ, worst fidelity:", protocols.soundness_check(tele, payloads))

# tangle separates the two families
for name, state in [("GHZ", catalog.make_ghz()), ("~W123", catalog.make_w_tilde123())]:
    print(f"{name:6s} tangle={analysis.three_tangle(state):.6f}  W-class={analysis.w_class_membership(state)}")
