"""Named states and operators: GHZ- and W-class resources, their multi-qubit
and qudit generalizations, Pauli operators and the conversion unitaries."""

from __future__ import annotations

import enum
from math import sqrt

import numpy as np

from .qstate import QuditRegister, StateVector, UnitaryOp, ket

SQRT1_2 = 1 / sqrt(2)


class StateName(enum.Enum):
    GHZ = "ghz"
    GHZ_TILDE = "ghz-tilde"
    W123 = "w123"
    W_TILDE_123 = "w-tilde123"
    W_TILDE_N = "w-tilde-n"
    W_N = "w-n-family"
    W_SUBCLASS_N = "w-state-n"
    XI = "xi"
    OMEGA = "omega"
    EPR_PSI_PLUS = "epr"
    PHI_PLUS = "phi-plus"
    PHI_MINUS = "phi-minus"
    ZERO = "zero"


def _from_terms(dims, terms) -> StateVector:
    """State from exact ``{digits: amplitude}`` terms; no renormalization."""
    reg = QuditRegister(tuple(dims))
    amps = np.zeros(reg.dim, dtype=complex)
    for digits, c in terms.items():
        amps[reg.index(digits)] += c
    return StateVector(reg, amps)


def _single_excitations(n: int, level: int = 1) -> list[tuple[int, ...]]:
    return [tuple(level if k == j else 0 for k in range(n)) for j in range(n)]


def make_ghz() -> StateVector:
    return _from_terms((2, 2, 2), {(0, 0, 0): SQRT1_2, (1, 1, 1): SQRT1_2})


def make_ghz_tilde() -> StateVector:
    return _from_terms((2, 2, 2), {(0, 0, 0): sqrt(2 / 3), (1, 1, 1): sqrt(1 / 3)})


def make_w123() -> StateVector:
    return _from_terms((2, 2, 2), {(1, 0, 0): 0.5, (0, 1, 0): 0.5, (0, 0, 1): SQRT1_2})


def make_w_tilde123() -> StateVector:
    c = 1 / sqrt(3)
    return _from_terms((2, 2, 2), {(1, 0, 0): c, (0, 1, 0): c, (0, 0, 1): c})


def make_w_n(n: float, gamma: float = 0.0, delta: float = 0.0) -> StateVector:
    """The W_n family: (|100> + sqrt(n) e^{i gamma}|010> + sqrt(n+1) e^{i delta}|001>) / sqrt(2+2n)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    s = 1 / sqrt(2 + 2 * n)
    return _from_terms(
        (2, 2, 2),
        {
            (1, 0, 0): s,
            (0, 1, 0): s * sqrt(n) * np.exp(1j * gamma),
            (0, 0, 1): s * sqrt(n + 1) * np.exp(1j * delta),
        },
    )


def _w_tilde(n: int) -> StateVector:
    # n = 1 is allowed here (|1>), it appears inside the N-qubit protocols.
    c = 1 / sqrt(n)
    return _from_terms((2,) * n, {digits: c for digits in _single_excitations(n)})


def make_w_tilde_n(N: int) -> StateVector:
    """Equal superposition of the N single-excitation kets."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    return _w_tilde(N)


def make_w_state_n(N: int) -> StateVector:
    """1/sqrt(2(N-1)) on each excitation of the first N-1 qubits and 1/sqrt(2)
    on |0...01>."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    c = 1 / sqrt(2 * (N - 1))
    terms = {digits: c for digits in _single_excitations(N)[:-1]}
    terms[(0,) * (N - 1) + (1,)] = sqrt(N - 1) * c
    return _from_terms((2,) * N, terms)


def make_xi(N: int, i: int, d: int) -> StateVector:
    """Equal superposition of the N kets with one wire at level i, the rest at 0."""
    if N < 1 or d < 2 or not 1 <= i <= d - 1:
        raise ValueError(f"invalid xi parameters N={N}, i={i}, d={d}")
    c = 1 / sqrt(N)
    return _from_terms((d,) * N, {digits: c for digits in _single_excitations(N, i)})


def make_omega(N: int, d: int) -> StateVector:
    """(1/sqrt d)[sum_{i=1}^{d-1} |xi^{N-1}_(i)>|i-1> + |0...0>|d-1>] on N qudits."""
    if N < 2 or d < 2:
        raise ValueError(f"omega needs N >= 2 and d >= 2, got N={N}, d={d}")
    reg = QuditRegister((d,) * N)
    amps = np.zeros(reg.dim, dtype=complex)
    c = 1 / sqrt(d)
    for i in range(1, d):
        xi = make_xi(N - 1, i, d).amplitudes
        amps += c * np.kron(xi, np.eye(d)[i - 1])
    zeros = np.zeros(d ** (N - 1))
    zeros[0] = 1.0
    amps += c * np.kron(zeros, np.eye(d)[d - 1])
    return StateVector(reg, amps)


def make_epr() -> StateVector:
    """(|01> + |10>)/sqrt 2."""
    return _from_terms((2, 2), {(0, 1): SQRT1_2, (1, 0): SQRT1_2})


def make_varphi(sign: int = +1) -> StateVector:
    """(|10> +/- |01>)/sqrt 2."""
    return _from_terms((2, 2), {(1, 0): SQRT1_2, (0, 1): sign * SQRT1_2})


def bell_state(label: str) -> StateVector:
    """Standard Bell states: ``phi+``, ``phi-`` = (|00> +/- |11>)/sqrt 2 and
    ``psi+``, ``psi-`` = (|01> +/- |10>)/sqrt 2."""
    table = {
        "phi+": {(0, 0): SQRT1_2, (1, 1): SQRT1_2},
        "phi-": {(0, 0): SQRT1_2, (1, 1): -SQRT1_2},
        "psi+": {(0, 1): SQRT1_2, (1, 0): SQRT1_2},
        "psi-": {(0, 1): SQRT1_2, (1, 0): -SQRT1_2},
    }
    return _from_terms((2, 2), table[label])


def make_zero(N: int, d: int = 2) -> StateVector:
    return ket("0" * N, d)


_PAULI = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def pauli(k: int, wire: int = 0) -> UnitaryOp:
    if k not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0..3, got {k}")
    return UnitaryOp((wire,), _PAULI[k])


def pauli_matrix(k: int) -> np.ndarray:
    return _PAULI[k].copy()


# the single-qubit encoders {I, sigma_1, -i sigma_2, sigma_3}
def dense_encoders_1q(wire: int) -> list[UnitaryOp]:
    return [
        UnitaryOp((wire,), _PAULI[0]),
        UnitaryOp((wire,), _PAULI[1]),
        UnitaryOp((wire,), -1j * _PAULI[2]),
        UnitaryOp((wire,), _PAULI[3]),
    ]


def generalized_pauli(m: int, n: int, d: int, wire: int = 0) -> UnitaryOp:
    """U(m, n) = sum_k exp(2 pi i k m / d) |k><k + n mod d|."""
    if d < 2 or not (0 <= m < d and 0 <= n < d):
        raise ValueError(f"invalid generalized Pauli indices m={m}, n={n}, d={d}")
    u = np.zeros((d, d), dtype=complex)
    for k in range(d):
        u[k, (k + n) % d] = np.exp(2j * np.pi * k * m / d)
    return UnitaryOp((wire,), u)


def _outer_sum(pairs) -> np.ndarray:
    """sum |f><e| over (f, e) pairs of StateVectors."""
    return sum(np.outer(f.amplitudes, e.amplitudes.conj()) for f, e in pairs)


def make_u12(wires=(0, 1)) -> UnitaryOp:
    """|varphi+><00| + |11><01| + |varphi-><10| + |00><11|; takes GHZ to W123."""
    m = _outer_sum(
        [
            (make_varphi(+1), ket("00")),
            (ket("11"), ket("01")),
            (make_varphi(-1), ket("10")),
            (ket("00"), ket("11")),
        ]
    )
    return UnitaryOp(tuple(wires), m)


def make_v12(n: float, gamma: float = 0.0, delta: float = 0.0, wires=(0, 1)) -> UnitaryOp:
    """Two-qubit unitary with (V12 x I)|GHZ> = |W_n>."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    s = 1 / sqrt(1 + n)
    phi = _from_terms((2, 2), {(1, 0): s, (0, 1): s * sqrt(n) * np.exp(1j * gamma)})
    phi_perp = _from_terms((2, 2), {(1, 0): s * sqrt(n) * np.exp(-1j * gamma), (0, 1): -s})
    m = _outer_sum(
        [
            (phi, ket("00")),
            (ket("11"), ket("01")),
            (phi_perp, ket("10")),
        ]
    ) + np.exp(1j * delta) * np.outer(ket("00").amplitudes, ket("11").amplitudes)
    return UnitaryOp(tuple(wires), m)


def u12_encoder_set(wires=(0, 1)) -> list[UnitaryOp]:
    """The eight local two-qubit encoders of the GHZ three-bit protocol, in order
    I I, s1 I, (-i s2) I, s3 I, I s1, I (-i s2), s1 s1, s1 (-i s2)."""
    i, s1, ms2, s3 = (_PAULI[0], _PAULI[1], -1j * _PAULI[2], _PAULI[3])
    pairs = [(i, i), (s1, i), (ms2, i), (s3, i), (i, s1), (i, ms2), (s1, s1), (s1, ms2)]
    return [UnitaryOp(tuple(wires), np.kron(a, b)) for a, b in pairs]


def eight_state_basis() -> list[StateVector]:
    """psi_1^+, psi_1^-, ..., psi_4^- on three qubits."""
    pairs = [("000", "111"), ("100", "011"), ("010", "101"), ("110", "001")]
    out = []
    for a, b in pairs:
        for sign in (+1, -1):
            out.append(
                _from_terms((2, 2, 2), {tuple(map(int, a)): SQRT1_2, tuple(map(int, b)): sign * SQRT1_2})
            )
    return out


def make_state(
    name,
    n_qubits: int | None = None,
    n_param: float = 1.0,
    gamma: float = 0.0,
    delta: float = 0.0,
    d: int = 2,
    level: int = 1,
) -> StateVector:
    """Build a catalog state from its CLI name and parameters."""
    name = StateName(name) if not isinstance(name, StateName) else name

    def need_n():
        if n_qubits is None:
            raise ValueError(f"state {name.value} needs --n-qubits")
        return n_qubits

    if name is StateName.GHZ:
        return make_ghz()
    if name is StateName.GHZ_TILDE:
        return make_ghz_tilde()
    if name is StateName.W123:
        return make_w123()
    if name is StateName.W_TILDE_123:
        return make_w_tilde123()
    if name is StateName.W_TILDE_N:
        return make_w_tilde_n(need_n())
    if name is StateName.W_N:
        return make_w_n(n_param, gamma, delta)
    if name is StateName.W_SUBCLASS_N:
        return make_w_state_n(need_n())
    if name is StateName.XI:
        return make_xi(need_n(), level, d)
    if name is StateName.OMEGA:
        return make_omega(need_n(), d)
    if name is StateName.EPR_PSI_PLUS:
        return make_epr()
    if name is StateName.PHI_PLUS:
        return make_varphi(+1)
    if name is StateName.PHI_MINUS:
        return make_varphi(-1)
    if name is StateName.ZERO:
        return make_zero(need_n(), d)
    raise ValueError(f"unknown state {name}")  # pragma: no cover
