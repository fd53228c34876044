"""Superdense coding and teleportation as data, their execution engines, the
resource-transformation laws, and builders for the concrete protocols."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import log2, prod
from typing import Sequence

import numpy as np

from . import catalog
from .qstate import (
    QuditRegister,
    StateVector,
    UnitaryOp,
    apply_unitary,
    check_orthonormal,
    compose,
    fidelity,
    ket,
    permute_wires,
    projective_measure,
    superpose,
    tensor_product,
)

DECODE_AMBIGUITY = 1e-6
SOUND_ATOL = 1e-9


class ProtocolError(ValueError):
    """A protocol failed validation or produced an inconsistent run."""


# ---------------------------------------------------------------- dense coding


@dataclass(frozen=True, eq=False)
class DenseCodingProtocol:
    """Shared ``resource``; the sender holds ``sender_wires`` and applies one of
    ``encoders`` (wires are resource wire indices).  ``decoder_basis`` of None
    means the receiver projects onto the encoded states themselves."""

    name: str
    resource: StateVector
    sender_wires: tuple[int, ...]
    encoders: tuple[UnitaryOp, ...]
    decoder_basis: tuple[StateVector, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "sender_wires", tuple(sorted(self.sender_wires)))
        object.__setattr__(self, "encoders", tuple(self.encoders))
        if self.decoder_basis is not None:
            object.__setattr__(self, "decoder_basis", tuple(self.decoder_basis))
        reg = self.resource.register
        try:
            reg.check_wires(self.sender_wires)
        except ValueError as exc:
            raise ProtocolError(str(exc)) from exc
        if not self.sender_wires or len(self.sender_wires) == reg.n_wires:
            raise ProtocolError("sender must hold a non-empty proper subset of the wires")
        if not self.encoders:
            raise ProtocolError("protocol has no encoders")
        for u in self.encoders:
            if not set(u.wires) <= set(self.sender_wires):
                raise ProtocolError(f"encoder on wires {u.wires} leaves the sender's wires")
        try:
            check_orthonormal(self.encoded_states())
            if self.decoder_basis is not None:
                check_orthonormal(self.decoder_basis)
        except ValueError as exc:
            raise ProtocolError(f"{self.name}: {exc}") from exc
        if self.decoder_basis is not None and len(self.decoder_basis) < len(self.encoders):
            raise ProtocolError("decoder basis is smaller than the message set")

    @property
    def receiver_wires(self) -> tuple[int, ...]:
        return tuple(w for w in range(self.resource.n_wires) if w not in self.sender_wires)

    def encode(self, message: int) -> StateVector:
        if not 0 <= message < len(self.encoders):
            raise ValueError(f"message {message} out of range 0..{len(self.encoders) - 1}")
        return apply_unitary(self.resource, self.encoders[message])

    def encoded_states(self) -> list[StateVector]:
        return [self.encode(m) for m in range(len(self.encoders))]

    def decoders(self) -> tuple[StateVector, ...]:
        return self.decoder_basis if self.decoder_basis is not None else tuple(self.encoded_states())


def decode_overlaps(p: DenseCodingProtocol, message: int) -> np.ndarray:
    """Squared overlaps of the encoded state with every decoder basis state."""
    enc = p.encode(message)
    return np.array([abs(d.inner(enc)) ** 2 for d in p.decoders()])


def run_dense_coding(p: DenseCodingProtocol, message: int) -> int:
    overlaps = decode_overlaps(p, message)
    order = np.argsort(overlaps)[::-1]
    if len(order) > 1 and overlaps[order[0]] - overlaps[order[1]] < DECODE_AMBIGUITY:
        raise ProtocolError(f"{p.name}: ambiguous decode of message {message}")
    return int(order[0])


def capacity_bits(p: DenseCodingProtocol) -> float:
    return log2(len(p.encoders))


def transform_dense_sender(p: DenseCodingProtocol, u: UnitaryOp) -> DenseCodingProtocol:
    """Share (u x I)|resource>; encoders become U_x u^dagger and the encoded
    state set is unchanged."""
    if not set(u.wires) <= set(p.sender_wires):
        raise ProtocolError(f"sender transform on wires {u.wires} is not on {p.sender_wires}")
    dims = p.resource.dims
    encoders = [compose(e, u.dagger(), lambda w: dims[w]) for e in p.encoders]
    return DenseCodingProtocol(
        name=p.name,
        resource=apply_unitary(p.resource, u),
        sender_wires=p.sender_wires,
        encoders=encoders,
        decoder_basis=p.decoder_basis,
    )


def transform_dense_receiver(p: DenseCodingProtocol, v: UnitaryOp) -> DenseCodingProtocol:
    """Share (I x v)|resource>; encoders unchanged, decoder basis conjugated by v."""
    if set(v.wires) & set(p.sender_wires) or not set(v.wires) <= set(p.receiver_wires):
        raise ProtocolError(f"receiver transform on wires {v.wires} touches the sender")
    return DenseCodingProtocol(
        name=p.name,
        resource=apply_unitary(p.resource, v),
        sender_wires=p.sender_wires,
        encoders=p.encoders,
        decoder_basis=[apply_unitary(d, v) for d in p.decoders()],
    )


# ---------------------------------------------------------------- teleportation


@dataclass(frozen=True, eq=False)
class TeleportationProtocol:
    """Alice holds the payload (shape ``input_shape``) and ``alice_resource_wires``
    of ``resource``; Bob holds ``bob_wires``.  Measurement state x lives on the
    payload wires followed by Alice's resource wires in the listed order.
    ``corrections[x]`` is U_x in

        |Psi>|resource> = (1/sqrt D) sum_x |Phi_x> (U_x |Psi>)_Bob

    and Bob applies its adjoint.  Corrections act on Bob's wires in ascending
    order, indexed 0..len(bob_wires)-1."""

    name: str
    resource: StateVector
    alice_resource_wires: tuple[int, ...]
    bob_wires: tuple[int, ...]
    input_shape: tuple[int, ...]
    measurement_states: tuple[StateVector, ...]
    corrections: tuple[UnitaryOp, ...]

    def __post_init__(self):
        object.__setattr__(self, "alice_resource_wires", tuple(self.alice_resource_wires))
        object.__setattr__(self, "bob_wires", tuple(sorted(self.bob_wires)))
        object.__setattr__(self, "input_shape", tuple(self.input_shape))
        object.__setattr__(self, "measurement_states", tuple(self.measurement_states))
        object.__setattr__(self, "corrections", tuple(self.corrections))
        reg = self.resource.register
        alice, bob = set(self.alice_resource_wires), set(self.bob_wires)
        if alice & bob or alice | bob != set(range(reg.n_wires)):
            raise ProtocolError("Alice's and Bob's wires must split the resource")
        if len(alice) != len(self.alice_resource_wires) or not bob:
            raise ProtocolError("bad wire assignment")
        if len(self.measurement_states) != len(self.corrections) or not self.corrections:
            raise ProtocolError("need one correction per measurement state")
        meas_dims = self.input_shape + tuple(reg.dims[w] for w in self.alice_resource_wires)
        for s in self.measurement_states:
            if s.dims != meas_dims:
                raise ProtocolError(f"measurement state dims {s.dims} != {meas_dims}")
        bob_dim = prod(reg.dims[w] for w in self.bob_wires)
        for u in self.corrections:
            if u.dim != bob_dim or any(not 0 <= w < len(self.bob_wires) for w in u.wires):
                raise ProtocolError("correction does not act on Bob's register")
        try:
            check_orthonormal(self.measurement_states)
        except ValueError as exc:
            raise ProtocolError(f"{self.name}: {exc}") from exc

    @property
    def outcome_count(self) -> int:
        return len(self.measurement_states)

    @property
    def classical_bits(self) -> float:
        return log2(self.outcome_count)

    @property
    def bob_register(self) -> QuditRegister:
        return self.resource.register.sub(self.bob_wires)


@dataclass(frozen=True)
class OutcomeRecord:
    index: int
    probability: float
    received: StateVector | None = field(repr=False)
    recovered: StateVector | None = field(repr=False)
    fidelity: float | None

    @property
    def realized(self) -> bool:
        return self.received is not None


@dataclass(frozen=True)
class ProtocolTranscript:
    protocol: str
    outcomes: tuple[OutcomeRecord, ...]
    bits: float

    @property
    def realized(self) -> list[OutcomeRecord]:
        return [o for o in self.outcomes if o.realized]

    @property
    def worst_fidelity(self) -> float:
        return min(o.fidelity for o in self.realized)

    @property
    def total_probability(self) -> float:
        return float(sum(o.probability for o in self.outcomes))

    def to_document(self) -> dict:
        return {
            "protocol": self.protocol,
            "outcomes": [
                {
                    "index": o.index,
                    "probability": _g15(o.probability),
                    "fidelity": None if o.fidelity is None else _g15(o.fidelity),
                }
                for o in self.outcomes
            ],
            "worst_fidelity": _g15(self.worst_fidelity),
            "bits": _g15(self.bits),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document())


def _g15(x: float) -> float:
    return float(f"{x:.15g}")


def run_teleportation(p: TeleportationProtocol, payload: StateVector) -> ProtocolTranscript:
    if payload.dims != p.input_shape:
        raise ValueError(f"payload dims {payload.dims} do not match {p.input_shape}")
    k = payload.n_wires
    joint = tensor_product(payload, p.resource)
    measured = tuple(range(k)) + tuple(k + w for w in p.alice_resource_wires)
    outcomes = projective_measure(joint, measured, p.measurement_states)
    total = sum(o.probability for o in outcomes)
    if total < 1 - SOUND_ATOL:
        raise ProtocolError(
            f"{p.name}: measurement states miss part of the joint state (total p = {total:.12f})"
        )
    records = []
    for o, u in zip(outcomes, p.corrections):
        if o.state is None:
            records.append(OutcomeRecord(o.index, o.probability, None, None, None))
            continue
        recovered = apply_unitary(o.state, u.dagger())
        records.append(
            OutcomeRecord(o.index, o.probability, o.state, recovered, fidelity(payload, recovered))
        )
    return ProtocolTranscript(p.name, tuple(records), p.classical_bits)


def _alice_local(p: TeleportationProtocol, u: UnitaryOp) -> UnitaryOp:
    """u (on resource wires) relocated onto the measurement register."""
    k = len(p.input_shape)
    return u.on([k + p.alice_resource_wires.index(w) for w in u.wires])


def _bob_local(p: TeleportationProtocol, v: UnitaryOp) -> UnitaryOp:
    return v.on([p.bob_wires.index(w) for w in v.wires])


def transform_teleport_sender(p: TeleportationProtocol, u: UnitaryOp) -> TeleportationProtocol:
    """Share (u x I_B)|resource>; measurement states become (I_a x u)|Phi_x>."""
    if not set(u.wires) <= set(p.alice_resource_wires):
        raise ProtocolError(f"sender transform on wires {u.wires} is not Alice's")
    local = _alice_local(p, u)
    return TeleportationProtocol(
        name=p.name,
        resource=apply_unitary(p.resource, u),
        alice_resource_wires=p.alice_resource_wires,
        bob_wires=p.bob_wires,
        input_shape=p.input_shape,
        measurement_states=[apply_unitary(s, local) for s in p.measurement_states],
        corrections=p.corrections,
    )


def transform_teleport_receiver(p: TeleportationProtocol, v: UnitaryOp) -> TeleportationProtocol:
    """Share (I_A x v)|resource>; U_x becomes v U_x, so Bob applies U_x^dagger v^dagger."""
    if not set(v.wires) <= set(p.bob_wires):
        raise ProtocolError(f"receiver transform on wires {v.wires} is not Bob's")
    local = _bob_local(p, v)
    bob_dims = p.bob_register.dims
    corrections = []
    for u in p.corrections:
        full_u = u.embed(range(len(bob_dims)), bob_dims)
        full_v = local.embed(range(len(bob_dims)), bob_dims)
        corrections.append(UnitaryOp(tuple(range(len(bob_dims))), full_v @ full_u))
    return TeleportationProtocol(
        name=p.name,
        resource=apply_unitary(p.resource, v),
        alice_resource_wires=p.alice_resource_wires,
        bob_wires=p.bob_wires,
        input_shape=p.input_shape,
        measurement_states=p.measurement_states,
        corrections=corrections,
    )


# ---------------------------------------------------------------- builders

_I, _S1, _S2, _S3 = (catalog.pauli_matrix(k) for k in range(4))


def _one_qubit_corrections(mats) -> list[UnitaryOp]:
    return [UnitaryOp((0,), m) for m in mats]


def epr_dense2() -> DenseCodingProtocol:
    """Sender holds wire 0 of (|00> + |11>)/sqrt 2."""
    return DenseCodingProtocol(
        "epr-2bit", catalog.bell_state("phi+"), (0,), catalog.dense_encoders_1q(0)
    )


def epr_teleport() -> TeleportationProtocol:
    """Standard one-qubit teleportation over (|00> + |11>)/sqrt 2: Alice wire 0, Bob wire 1."""
    states = [catalog.bell_state(b) for b in ("phi+", "phi-", "psi+", "psi-")]
    return TeleportationProtocol(
        "epr",
        catalog.bell_state("phi+"),
        (0,),
        (1,),
        (2,),
        states,
        _one_qubit_corrections([_I, _S3, _S1, -1j * _S2]),
    )


def ghz_dense2() -> DenseCodingProtocol:
    """Two bits: sender holds wire 2 of |GHZ>, applies {I, s1, -i s2, s3}."""
    return DenseCodingProtocol("ghz-2bit", catalog.make_ghz(), (2,), catalog.dense_encoders_1q(2))


def ghz_dense3() -> DenseCodingProtocol:
    """Three bits: sender holds wires 0, 1 of |GHZ> and applies the local set U12."""
    return DenseCodingProtocol("ghz-3bit", catalog.make_ghz(), (0, 1), catalog.u12_encoder_set())


def ghz_teleport() -> TeleportationProtocol:
    """Alice holds wires 0, 1 of |GHZ>, Bob wire 2; measurement on a12 in
    psi_1^+, psi_1^-, psi_2^+, psi_2^-."""
    basis = catalog.eight_state_basis()[:4]
    return TeleportationProtocol(
        "ghz",
        catalog.make_ghz(),
        (0, 1),
        (2,),
        (2,),
        basis,
        _one_qubit_corrections([_I, _S3, _S1, 1j * _S2]),
    )


def w123_dense3() -> DenseCodingProtocol:
    """Three bits over |W>_123: the GHZ protocol moved by U12 on the sender side."""
    p = transform_dense_sender(ghz_dense3(), catalog.make_u12())
    return DenseCodingProtocol("w123-3bit", p.resource, p.sender_wires, p.encoders, p.decoder_basis)


def wn_teleport_via_transform(n: float, gamma: float = 0.0, delta: float = 0.0) -> TeleportationProtocol:
    """Teleportation over |W_n>_123 from the GHZ protocol moved by V12 on Alice's side."""
    p = transform_teleport_sender(ghz_teleport(), catalog.make_v12(n, gamma, delta))
    return _renamed(p, "wn-family")


def wn_dense2_via_transform(n: float, gamma: float = 0.0, delta: float = 0.0) -> DenseCodingProtocol:
    """Two bits over |W_n>_123: sender on wire 2, V12 moves the receiver's basis."""
    p = transform_dense_receiver(ghz_dense2(), catalog.make_v12(n, gamma, delta))
    return DenseCodingProtocol("wn-family-2bit", p.resource, p.sender_wires, p.encoders, p.decoder_basis)


def w123_teleport() -> TeleportationProtocol:
    return _renamed(wn_teleport_via_transform(1.0), "w123")


def w123_dense2() -> DenseCodingProtocol:
    p = wn_dense2_via_transform(1.0)
    return DenseCodingProtocol("w123-2bit", p.resource, p.sender_wires, p.encoders, p.decoder_basis)


def _renamed(p: TeleportationProtocol, name: str) -> TeleportationProtocol:
    return TeleportationProtocol(
        name,
        p.resource,
        p.alice_resource_wires,
        p.bob_wires,
        p.input_shape,
        p.measurement_states,
        p.corrections,
    )


def _w_tilde_any(n: int) -> StateVector:
    return catalog._w_tilde(n)


def w_n_qubit_teleport(N: int) -> TeleportationProtocol:
    """Teleportation over |W^N>: Alice holds wires 0..N-2, Bob wire N-1.

    Measurement states (payload first, then Alice's N-1 qubits)::

        eta^+/- = (|0>|~W^{N-1}> +/- |1>|0...0>)/sqrt 2
        xi^+/-  = (|1>|~W^{N-1}> +/- |0>|0...0>)/sqrt 2
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    wt = _w_tilde_any(N - 1)
    zeros = ket("0" * (N - 1))
    zero_w, one_w = tensor_product(ket("0"), wt), tensor_product(ket("1"), wt)
    zero_z, one_z = tensor_product(ket("0"), zeros), tensor_product(ket("1"), zeros)
    basis = [
        superpose([(1, zero_w), (1, one_z)]),
        superpose([(1, zero_w), (-1, one_z)]),
        superpose([(1, one_w), (1, zero_z)]),
        superpose([(1, one_w), (-1, zero_z)]),
    ]
    return TeleportationProtocol(
        f"w-n-qubit-{N}",
        catalog.make_w_state_n(N),
        tuple(range(N - 1)),
        (N - 1,),
        (2,),
        basis,
        _one_qubit_corrections([_I, _S3, _S1, 1j * _S2]),
    )


def w_n_qubit_dense2(N: int) -> DenseCodingProtocol:
    """Two bits over |W^N>: Alice holds the last qubit and applies {I, s1, -i s2, s3}."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    return DenseCodingProtocol(
        f"w-n-qubit-2bit-{N}",
        catalog.make_w_state_n(N),
        (N - 1,),
        catalog.dense_encoders_1q(N - 1),
    )


def omega_dense(N: int, d: int) -> DenseCodingProtocol:
    """2 log2 d bits over |Omega^N>: Alice holds the last qudit and applies U(m, n),
    message index m*d + n."""
    resource = catalog.make_omega(N, d)
    encoders = [catalog.generalized_pauli(m, n, d, wire=N - 1) for m in range(d) for n in range(d)]
    return DenseCodingProtocol(f"omega-{N}-{d}", resource, (N - 1,), encoders)


def _map_unitary(pairs) -> np.ndarray:
    """sum |image><source| over a complete orthonormal source list."""
    return sum(np.outer(img.amplitudes, src.amplitudes.conj()) for img, src in pairs)


def wtilde4_pair_teleport() -> TeleportationProtocol:
    """Teleport alpha|00> + beta|11> or alpha|01> + beta|10> over |~W^4>.

    Alice holds wires 0, 1 of the resource, Bob and Charlie wires 2, 3.  The
    eight measurement states on (a, b, A1, A2) are mu^+/-, omega^+/-, pi^+/-,
    varpi^+/-, three classical bits in all."""
    vp = catalog.make_varphi(+1)
    vm = catalog.make_varphi(-1)
    k00, k01, k10, k11 = (ket(s) for s in ("00", "01", "10", "11"))

    def pair(x, y, sign):
        return superpose([(1, tensor_product(*x)), (sign, tensor_product(*y))])

    # Each row: the two terms of Phi_x (payload pair, Alice's pair), the payload
    # basis kets the family is built from, Bob's residual for each of them, and
    # how the orthocomplement is completed so that U_x is unitary.
    table = [
        ((k00, vp), (k11, k00), (k00, k11), (k00, vp), (vp, vm), (k11, vm)),  # mu
        ((k00, k00), (k11, vp), (k00, k11), (vp, k00), (vp, vm), (k11, vm)),  # omega
        ((k01, vp), (k10, k00), (k01, k10), (k00, vp), (k00, k11), (k11, vm)),  # pi
        ((k01, k00), (k10, vp), (k01, k10), (vp, k00), (k00, k11), (k11, vm)),  # varpi
    ]
    basis = []
    corrections = []
    for first, second, src, img, rest, spare in table:
        for sign in (+1, -1):
            basis.append(pair(first, second, sign))
            m = _map_unitary(
                [
                    (img[0], src[0]),
                    (_scaled(img[1], sign), src[1]),
                    (spare[0], rest[0]),
                    (spare[1], rest[1]),
                ]
            )
            corrections.append(UnitaryOp((0, 1), m))
    return TeleportationProtocol(
        "wtilde4-pair",
        catalog.make_w_tilde_n(4),
        (0, 1),
        (2, 3),
        (2, 2),
        basis,
        corrections,
    )


def _scaled(s: StateVector, c: complex) -> StateVector:
    return StateVector(s.register, c * s.amplitudes)


# ---------------------------------------------------------------- suitability witness


def witness_teleport_protocol(verdict) -> TeleportationProtocol:
    """Teleportation over the witness state of a suitable three-qubit verdict:
    the GHZ protocol moved by V12 (Alice) and V3 (Bob), laid out on the
    original wire labels."""
    if not verdict.suitable:
        raise ProtocolError("state is not suitable; no witness protocol")
    p = transform_teleport_sender(ghz_teleport(), verdict.witness_v12.on((0, 1)))
    p = transform_teleport_receiver(p, verdict.witness_v3.on((2,)))
    pair = tuple(sorted(verdict.witness_cut.side_a))
    single = tuple(verdict.witness_cut.side_b)
    resource = permute_wires(p.resource, np.argsort(pair + single))
    return TeleportationProtocol(
        "witness", resource, pair, single, p.input_shape, p.measurement_states, p.corrections
    )


def witness_dense_protocol(verdict) -> DenseCodingProtocol:
    """Two-bit dense coding over the witness state: sender holds the singleton."""
    if not verdict.suitable:
        raise ProtocolError("state is not suitable; no witness protocol")
    p = transform_dense_sender(ghz_dense2(), verdict.witness_v3.on((2,)))
    p = transform_dense_receiver(p, verdict.witness_v12.on((0, 1)))
    pair = tuple(sorted(verdict.witness_cut.side_a))
    single = tuple(verdict.witness_cut.side_b)
    inv = np.argsort(pair + single)
    relabel = {0: pair[0], 1: pair[1], 2: single[0]}
    return DenseCodingProtocol(
        "witness-2bit",
        permute_wires(p.resource, inv),
        single,
        [e.on([relabel[w] for w in e.wires]) for e in p.encoders],
        [permute_wires(d, inv) for d in p.decoders()],
    )


def soundness_check(p: TeleportationProtocol, payloads: Sequence[StateVector]) -> float:
    """Worst realized fidelity over ``payloads``; raises ProtocolError when a
    realized outcome fails or realized probabilities are unequal."""
    worst = 1.0
    reference = None
    for psi in payloads:
        t = run_teleportation(p, psi)
        probs = np.array([o.probability for o in t.realized])
        if np.ptp(probs) > SOUND_ATOL:
            raise ProtocolError(f"{p.name}: unequal outcome probabilities {probs}")
        if reference is not None and abs(probs[0] - reference) > SOUND_ATOL:
            raise ProtocolError(f"{p.name}: outcome probabilities depend on the input")
        reference = probs[0]
        worst = min(worst, t.worst_fidelity)
    return worst
