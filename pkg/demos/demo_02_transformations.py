"""
Moving protocols between resources with local unitaries
========================================================

A unitary on the sender's qubits (or the receiver's) maps a working protocol
onto a working protocol for the transformed resource.  Starting from GHZ we
land on the weighted W state and get three-bit dense coding for free.
"""

import numpy as np

from wclass import catalog, protocols
from wclass.qstate import random_state, random_unitary

ghz3 = protocols.ghz_dense3()
print(ghz3.name, "capacity", protocols.capacity_bits(ghz3), "bits")

# U12 takes |GHZ> to |W>; the encoders pick up a U12^dagger on the right
w3 = protocols.transform_dense_sender(ghz3, catalog.make_u12())
print("resource is W123:", np.allclose(w3.resource.amplitudes, catalog.make_w123().amplitudes))
print("messages 0..7 decode to", [protocols.run_dense_coding(w3, m) for m in range(8)])

# the encoded states do not move at all
same = all(
    np.allclose(a.amplitudes, b.amplitudes) for a, b in zip(w3.encoded_states(), ghz3.encoded_states())
)
print("encoded states unchanged:", same)

# a random rotation on Bob's qubit: corrections absorb it
rng = np.random.default_rng(11)
tele = protocols.transform_teleport_receiver(protocols.ghz_teleport(), random_unitary((2,), 2, rng))
payloads = [random_state((2,), rng) for _ in range(20)]
print("worst fidelity after a random receiver rotation:", protocols.soundness_check(tele, payloads))
