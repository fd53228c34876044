"""Dense qudit state vectors and the linear algebra built on them.

Wires are numbered left to right as in ket notation, so wire 0 is the
leftmost symbol of ``|100>``.  Basis indices are big-endian::

    index(|d_0 d_1 ... d_{N-1}>) = sum_w d_w * prod_{w' > w} dims[w']

which is exactly the C-order flattening of an array of shape ``dims``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import prod
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.stats import unitary_group

NORM_ATOL = 1e-12
STRUCT_ATOL = 1e-10
PHASE_ATOL = 1e-10
EIG_CUTOFF = 1e-12
DOC_NORM_ATOL = 1e-6


def _frozen(a, dtype=complex) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class QuditRegister:
    """Ordered per-wire dimensions of a register.

    An empty register (no wires, total dimension 1) is allowed; it is what
    remains after every wire has been measured.
    """

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 2 for d in dims):
            raise ValueError(f"every wire dimension must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def qubits(cls, n: int) -> "QuditRegister":
        return cls((2,) * n)

    @property
    def n_wires(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def index(self, digits: Sequence[int]) -> int:
        if len(digits) != self.n_wires:
            raise ValueError("digit count does not match the register")
        return int(np.ravel_multi_index(tuple(digits), self.dims)) if self.dims else 0

    def digits(self, index: int) -> tuple[int, ...]:
        if not self.dims:
            return ()
        return tuple(int(v) for v in np.unravel_index(index, self.dims))

    def sub(self, wires: Iterable[int]) -> "QuditRegister":
        return QuditRegister(tuple(self.dims[w] for w in wires))

    def check_wires(self, wires: Sequence[int]) -> tuple[int, ...]:
        wires = tuple(int(w) for w in wires)
        for w in wires:
            if not 0 <= w < self.n_wires:
                raise ValueError(f"wire {w} out of range for {self.n_wires} wires")
        if len(set(wires)) != len(wires):
            raise ValueError(f"repeated wire in {wires}")
        return wires


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized pure state on a qudit register."""

    register: QuditRegister
    amplitudes: np.ndarray

    def __post_init__(self):
        if not isinstance(self.register, QuditRegister):
            object.__setattr__(self, "register", QuditRegister(self.register))
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.size != self.register.dim:
            raise ValueError(
                f"{amps.size} amplitudes for a register of dimension {self.register.dim}"
            )
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized (squared norm {norm2!r})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, amplitudes, dims: Sequence[int]) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(QuditRegister(tuple(dims)), amps / norm)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.register.dims

    @property
    def n_wires(self) -> int:
        return self.register.n_wires

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        _check_same_shape(self, other)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self):
        return f"StateVector(dims={self.dims}, amplitudes={np.round(self.amplitudes, 6)!r})"


def basis_state(dims: Sequence[int], digits: Sequence[int]) -> StateVector:
    reg = QuditRegister(tuple(dims))
    amps = np.zeros(reg.dim, dtype=complex)
    amps[reg.index(digits)] = 1.0
    return StateVector(reg, amps)


def ket(label: str, d: int = 2) -> StateVector:
    """``ket("010")`` is the computational basis state |010> on qudits of dimension d."""
    digits = [int(c) for c in label]
    return basis_state((d,) * len(digits), digits)


def superpose(terms: Iterable[tuple[complex, StateVector]]) -> StateVector:
    """Normalized linear combination of states on a common register."""
    terms = list(terms)
    reg = terms[0][1].register
    total = np.zeros(reg.dim, dtype=complex)
    for c, s in terms:
        if s.register != reg:
            raise ValueError("superposed states live on different registers")
        total = total + c * s.amplitudes
    return StateVector.normalized(total, reg.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    register: QuditRegister
    matrix: np.ndarray

    def __post_init__(self):
        if not isinstance(self.register, QuditRegister):
            object.__setattr__(self, "register", QuditRegister(self.register))
        m = _frozen(self.matrix)
        n = self.register.dim
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match dimension {n}")
        if not np.allclose(m, m.conj().T, atol=STRUCT_ATOL, rtol=0):
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > STRUCT_ATOL:
            raise ValueError("density matrix does not have unit trace")
        if np.linalg.eigvalsh(m).min() < -STRUCT_ATOL:
            raise ValueError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    """A unitary matrix acting on an ordered list of wires.

    The matrix uses the same big-endian convention over ``wires`` as the
    state vectors use over the whole register.
    """

    wires: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        wires = tuple(int(w) for w in self.wires)
        if len(set(wires)) != len(wires):
            raise ValueError(f"repeated wire in {wires}")
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"unitary must be square, got shape {m.shape}")
        if not np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=STRUCT_ATOL, rtol=0):
            raise ValueError("matrix is not unitary")
        object.__setattr__(self, "wires", wires)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "UnitaryOp":
        return UnitaryOp(self.wires, self.matrix.conj().T)

    def on(self, wires: Sequence[int]) -> "UnitaryOp":
        """The same matrix retargeted to other wires."""
        return UnitaryOp(tuple(wires), self.matrix)

    def embed(self, wires: Sequence[int], dims: Sequence[int]) -> np.ndarray:
        """Full matrix of this operator on the register ``wires`` (with dims),
        acting as identity on the wires it does not name."""
        wires = tuple(wires)
        pos = [wires.index(w) for w in self.wires]
        n = prod(dims)
        out = np.empty((n, n), dtype=complex)
        eye = np.eye(n, dtype=complex).reshape((n,) + tuple(dims))
        for col in range(n):
            out[:, col] = _apply_tensor(eye[col], self.matrix, pos, dims).reshape(-1)
        return out


def compose(first: UnitaryOp, second: UnitaryOp, dims_of) -> UnitaryOp:
    """The operator ``first @ second`` (second applied first) on the union of
    their wires.  ``dims_of`` maps a wire index to its dimension."""
    wires = tuple(sorted(set(first.wires) | set(second.wires)))
    dims = [dims_of(w) for w in wires]
    return UnitaryOp(wires, first.embed(wires, dims) @ second.embed(wires, dims))


def _apply_tensor(psi: np.ndarray, matrix: np.ndarray, positions, dims) -> np.ndarray:
    k = len(positions)
    target_dims = [dims[p] for p in positions]
    if matrix.shape[0] != prod(target_dims):
        raise ValueError(
            f"operator of dimension {matrix.shape[0]} cannot act on wires with dims {target_dims}"
        )
    op = matrix.reshape(tuple(target_dims) * 2)
    out = np.tensordot(op, psi, axes=(list(range(k, 2 * k)), list(positions)))
    return np.moveaxis(out, list(range(k)), list(positions))


def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    return StateVector(QuditRegister(a.dims + b.dims), np.kron(a.amplitudes, b.amplitudes))


def apply_unitary(state: StateVector, op: UnitaryOp) -> StateVector:
    wires = state.register.check_wires(op.wires)
    out = _apply_tensor(state.tensor(), op.matrix, wires, state.dims)
    amps = out.reshape(-1)
    # Renormalize away rounding drift so repeated application stays within NORM_ATOL.
    return StateVector(state.register, amps / np.linalg.norm(amps))


def _split(state: StateVector, side: Sequence[int]) -> tuple[np.ndarray, tuple, tuple]:
    """Amplitude matrix with rows indexed by ``side`` (in the given order) and
    columns by the remaining wires (ascending)."""
    side = tuple(side)
    rest = tuple(w for w in range(state.n_wires) if w not in side)
    dim_a = prod(state.dims[w] for w in side)
    mat = np.transpose(state.tensor(), side + rest).reshape(dim_a, -1)
    return mat, side, rest


def partial_trace(state: StateVector, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on ``keep`` (sorted ascending); the full set returns the
    pure projector."""
    keep = tuple(sorted(set(keep)))
    if not keep:
        raise ValueError("keep-set must not be empty")
    state.register.check_wires(keep)
    mat, _, _ = _split(state, keep)
    rho = mat @ mat.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(state.register.sub(keep), rho)


def von_neumann_entropy(rho) -> float:
    """Entropy in bits; eigenvalues below ``EIG_CUTOFF`` count as zero."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    lam = np.linalg.eigvalsh(m)
    lam = lam[lam > EIG_CUTOFF]
    s = float(-np.sum(lam * np.log2(lam)))
    return max(s, 0.0)


@dataclass(frozen=True)
class Bipartition:
    side_a: frozenset[int]
    n_wires: int

    def __post_init__(self):
        side_a = frozenset(int(w) for w in self.side_a)
        if not side_a:
            raise ValueError("side A of a cut must be non-empty")
        if any(not 0 <= w < self.n_wires for w in side_a):
            raise ValueError(f"cut {sorted(side_a)} out of range for {self.n_wires} wires")
        if len(side_a) == self.n_wires:
            raise ValueError("side A must be a proper subset of the wires")
        object.__setattr__(self, "side_a", side_a)

    @property
    def side_b(self) -> frozenset[int]:
        return frozenset(range(self.n_wires)) - self.side_a

    def swapped(self) -> "Bipartition":
        return Bipartition(self.side_b, self.n_wires)

    def __str__(self):
        a = "".join(str(w) for w in sorted(self.side_a))
        b = "".join(str(w) for w in sorted(self.side_b))
        return f"{a}|{b}"


def bipartition_entanglement(state: StateVector, cut: Bipartition) -> float:
    """Partial-entropy entanglement E_{A|B} = S(rho_A), in ebits."""
    if cut.n_wires != state.n_wires:
        raise ValueError("cut and state have different wire counts")
    # S(rho_A) = S(rho_B) for a pure state; reduce onto the smaller side
    dim_a = prod(state.dims[w] for w in cut.side_a)
    keep = cut.side_a if dim_a * dim_a <= state.register.dim else cut.side_b
    return von_neumann_entropy(partial_trace(state, keep))


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray
    vectors_a: tuple[StateVector, ...]
    vectors_b: tuple[StateVector, ...]
    cut: Bipartition

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def entropy(self) -> float:
        p = self.coefficients**2
        return max(float(-np.sum(p * np.log2(p))), 0.0)

    def reconstruct(self) -> StateVector:
        """Reassemble the state in the original wire order."""
        total = sum(
            c * np.kron(a.amplitudes, b.amplitudes)
            for c, a, b in zip(self.coefficients, self.vectors_a, self.vectors_b)
        )
        side_a = tuple(sorted(self.cut.side_a))
        side_b = tuple(sorted(self.cut.side_b))
        order = side_a + side_b
        dims_ab = self.vectors_a[0].dims + self.vectors_b[0].dims
        t = np.asarray(total).reshape(dims_ab)
        t = np.transpose(t, np.argsort(order))
        return StateVector.normalized(t.reshape(-1), t.shape)


def schmidt_decompose(state: StateVector, cut: Bipartition) -> SchmidtDecomposition:
    side_a = tuple(sorted(cut.side_a))
    mat, _, side_b = _split(state, side_a)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    keep = s > EIG_CUTOFF
    u, s, vh = u[:, keep], s[keep], vh[keep]
    reg_a = state.register.sub(side_a)
    reg_b = state.register.sub(side_b)
    vecs_a, vecs_b = [], []
    for k in range(len(s)):
        a = u[:, k]
        b = vh[k]
        first = a[np.flatnonzero(np.abs(a) > EIG_CUTOFF)[0]]
        phase = first / abs(first)
        a = a / phase
        b = b * phase
        vecs_a.append(StateVector.normalized(a, reg_a.dims))
        vecs_b.append(StateVector.normalized(b, reg_b.dims))
    return SchmidtDecomposition(_frozen(s, float), tuple(vecs_a), tuple(vecs_b), cut)


class MeasurementOutcome(NamedTuple):
    index: int
    probability: float
    state: StateVector | None  # residual on the unmeasured wires; None if p <= 1e-12


def check_orthonormal(states: Sequence[StateVector], atol: float = STRUCT_ATOL) -> None:
    if not states:
        return
    reg = states[0].register
    if any(s.register != reg for s in states):
        raise ValueError("states live on different registers")
    g = gram_matrix(states)
    if not np.allclose(g, np.eye(len(states)), atol=atol, rtol=0):
        raise ValueError("states are not orthonormal")


def gram_matrix(states: Sequence[StateVector]) -> np.ndarray:
    m = np.stack([s.amplitudes for s in states], axis=1)
    return m.conj().T @ m


def complete_basis(states: Sequence[StateVector]) -> list[StateVector]:
    """Extend an orthonormal set to a full basis by Gram-Schmidt over the
    computational basis in index order."""
    check_orthonormal(states)
    reg = states[0].register
    vecs = [s.amplitudes.copy() for s in states]
    out = list(states)
    for i in range(reg.dim):
        if len(vecs) == reg.dim:
            break
        v = np.zeros(reg.dim, dtype=complex)
        v[i] = 1.0
        for _ in range(2):
            for w in vecs:
                v = v - np.vdot(w, v) * w
        n = np.linalg.norm(v)
        if n > 1e-8:
            v = v / n
            vecs.append(v)
            out.append(StateVector(reg, v))
    return out


def projective_measure(
    state: StateVector, wires: Sequence[int], basis: Sequence[StateVector]
) -> list[MeasurementOutcome]:
    """Measure ``wires`` (in the given order) against orthonormal ``basis``.

    The measured wires are removed from the post-measurement register; the
    remaining wires keep their relative order.
    """
    wires = state.register.check_wires(wires)
    sub = state.register.sub(wires)
    for b in basis:
        if b.register != sub:
            raise ValueError(f"basis state dims {b.dims} do not match measured wires {sub.dims}")
    check_orthonormal(basis)
    mat, _, rest = _split(state, wires)
    rest_reg = state.register.sub(rest)
    outcomes = []
    for x, b in enumerate(basis):
        residual = b.amplitudes.conj() @ mat
        p = float(np.vdot(residual, residual).real)
        post = StateVector.normalized(residual, rest_reg.dims) if p > EIG_CUTOFF else None
        outcomes.append(MeasurementOutcome(x, p, post))
    return outcomes


def fidelity(a: StateVector, b: StateVector) -> float:
    return abs(a.inner(b)) ** 2


def equal_up_to_global_phase(a: StateVector, b: StateVector, atol: float = PHASE_ATOL) -> bool:
    return abs(a.inner(b)) >= 1 - atol


def _check_same_shape(a: StateVector, b: StateVector) -> None:
    if a.dims != b.dims:
        raise ValueError(f"register shapes differ: {a.dims} vs {b.dims}")


def permute_wires(state: StateVector, permutation: Sequence[int]) -> StateVector:
    """Reorder wires: output wire ``i`` carries input wire ``permutation[i]``."""
    perm = tuple(int(p) for p in permutation)
    if sorted(perm) != list(range(state.n_wires)):
        raise ValueError(f"{perm} is not a permutation of {state.n_wires} wires")
    t = np.transpose(state.tensor(), perm)
    return StateVector(QuditRegister(t.shape), t.reshape(-1))


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_state(register, seed=None) -> StateVector:
    """Haar-random pure state; ``seed`` may be an int or a numpy Generator."""
    reg = register if isinstance(register, QuditRegister) else QuditRegister(tuple(register))
    rng = _rng(seed)
    v = rng.standard_normal(reg.dim) + 1j * rng.standard_normal(reg.dim)
    return StateVector.normalized(v, reg.dims)


def random_unitary(wires: Sequence[int], dim: int, seed=None) -> UnitaryOp:
    rng = _rng(seed)
    return UnitaryOp(tuple(wires), unitary_group.rvs(dim, random_state=rng))


# JSON state document: {"dims": [...], "amplitudes": [[re, im], ...]}


def state_to_document(state: StateVector) -> dict:
    return {
        "dims": list(state.dims),
        "amplitudes": [[float(f"{z.real:.15g}"), float(f"{z.imag:.15g}")] for z in state.amplitudes],
    }


def state_from_document(doc: dict) -> StateVector:
    try:
        dims = [int(d) for d in doc["dims"]]
        pairs = doc["amplitudes"]
        amps = np.array([complex(float(re), float(im)) for re, im in pairs], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state document: {exc}") from exc
    reg = QuditRegister(tuple(dims))
    if amps.size != reg.dim:
        raise ValueError(f"document has {amps.size} amplitudes, dims need {reg.dim}")
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > DOC_NORM_ATOL:
        raise ValueError(f"document norm {norm!r} deviates from 1 by more than {DOC_NORM_ATOL}")
    return StateVector.normalized(amps, reg.dims)


def save_state(state: StateVector, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_document(state), fh, indent=1)


def load_state(path) -> StateVector:
    with open(path) as fh:
        return state_from_document(json.load(fh))
