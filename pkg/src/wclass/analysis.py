"""Entanglement across bipartitions, the balanced-cut optimum for |~W^N>,
the three-qubit suitability classifier and a W-class membership test."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import combinations
from math import log2, sqrt
from typing import NamedTuple, Sequence

import numpy as np

from . import catalog
from .qstate import (
    Bipartition,
    StateVector,
    UnitaryOp,
    apply_unitary,
    bipartition_entanglement,
    permute_wires,
    schmidt_decompose,
)

MAX_SCAN_WIRES = 20
SUITABILITY_COEFF_ATOL = 1e-6
SUITABILITY_ENTROPY_ATOL = 1e-9
TANGLE_ATOL = 1e-9


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * log2(p) - (1 - p) * log2(1 - p)


class ScanRow(NamedTuple):
    subset: tuple[int, ...]
    size: int
    entanglement: float


@dataclass(frozen=True)
class PartitionScan:
    n_wires: int
    rows: tuple[ScanRow, ...]
    source: str = ""

    def best(self) -> ScanRow:
        return max(self.rows, key=lambda r: (r.entanglement, -r.size))

    def by_size(self) -> dict[int, list[float]]:
        out: dict[int, list[float]] = {}
        for r in self.rows:
            out.setdefault(r.size, []).append(r.entanglement)
        return out

    def to_csv(self, fh=None) -> str:
        """CSV text; also written to ``fh`` when given."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n_wires", "subset", "size", "entanglement_ebits"])
        for r in self.rows:
            writer.writerow(
                [self.n_wires, "-".join(map(str, r.subset)), r.size, f"{r.entanglement:.15g}"]
            )
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text


def scan_subsets(n: int, max_size: int | None = None) -> list[tuple[int, ...]]:
    """Subsets of size 1..floor(n/2) (capped at max_size); at exactly n/2 only
    the representative containing wire 0.  Lexicographic order."""
    if not 2 <= n <= MAX_SCAN_WIRES:
        raise ValueError(f"exhaustive scan needs 2..{MAX_SCAN_WIRES} wires, got {n}")
    top = n // 2 if max_size is None else min(n // 2, max_size)
    subsets = []
    for k in range(1, top + 1):
        for s in combinations(range(n), k):
            if 2 * k == n and 0 not in s:
                continue
            subsets.append(s)
    return sorted(subsets)


def scan_bipartitions(
    state: StateVector,
    sizes: Sequence[int] | None = None,
    max_size: int | None = None,
    source: str = "",
) -> PartitionScan:
    n = state.n_wires
    if n < 2:
        raise ValueError("need at least two wires to scan")
    if n > MAX_SCAN_WIRES:
        raise ValueError(f"{n} wires exceeds the exhaustive-scan limit of {MAX_SCAN_WIRES}")
    rows = []
    for s in scan_subsets(n, max_size):
        if sizes is not None and len(s) not in sizes:
            continue
        rows.append(ScanRow(s, len(s), bipartition_entanglement(state, Bipartition(s, n))))
    return PartitionScan(n, tuple(rows), source)


def wtilde_partition_entanglement(N: int, x: int) -> float:
    """Entanglement of |~W^N> across any cut with x wires on one side: H(x/N)."""
    if N < 2 or not 1 <= x < N:
        raise ValueError(f"need N >= 2 and 1 <= x < N, got N={N}, x={x}")
    return binary_entropy(x / N)


class OptimalPartition(NamedTuple):
    size: int
    entanglement: float
    ties: tuple[int, ...]


def optimal_wtilde_partition(N: int) -> OptimalPartition:
    """Best subset size for cutting |~W^N>, found by trying every x."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    values = {x: wtilde_partition_entanglement(N, x) for x in range(1, N)}
    best = max(values.values())
    ties = tuple(x for x, v in values.items() if abs(v - best) <= 1e-12)
    return OptimalPartition(ties[0], best, ties)


@dataclass(frozen=True, eq=False)
class SuitabilityVerdict:
    suitable: bool
    witness_cut: Bipartition | None
    witness_v12: UnitaryOp | None
    witness_v3: UnitaryOp | None
    max_single_cut_entanglement: float
    cut_entanglement: dict
    cut_coefficients: dict
    entropy_criterion: bool

    def witness_state(self) -> StateVector:
        """(V12 x V3)|GHZ> with wires put back in the classified state's order."""
        psi = apply_unitary(catalog.make_ghz(), self.witness_v12.on((0, 1)))
        psi = apply_unitary(psi, self.witness_v3.on((2,)))
        order = tuple(sorted(self.witness_cut.side_a)) + tuple(self.witness_cut.side_b)
        return permute_wires(psi, np.argsort(order))

    def reconstruction_error(self, state: StateVector) -> float:
        """1 - |<witness|state>|."""
        return 1.0 - abs(self.witness_state().inner(state))


def _check_three_qubits(state: StateVector) -> None:
    if state.dims != (2, 2, 2):
        raise ValueError(f"expected a three-qubit register, got dims {state.dims}")


def _complete_columns(cols: list[np.ndarray], dim: int) -> np.ndarray:
    """Orthonormal columns extended to a unitary by Gram-Schmidt over the
    computational basis in index order."""
    basis = [c / np.linalg.norm(c) for c in cols]
    for i in range(dim):
        if len(basis) == dim:
            break
        v = np.eye(dim, dtype=complex)[i]
        for _ in range(2):
            for b in basis:
                v = v - np.vdot(b, v) * b
        if np.linalg.norm(v) > 1e-8:
            basis.append(v / np.linalg.norm(v))
    return np.stack(basis, axis=1)


# the two-qubit kets |00> and |11> land in columns 0 and 3
_GHZ_PAIR_COLUMNS = (0, 3)


def classify_suitability(state: StateVector) -> SuitabilityVerdict:
    """Suitable iff some (pair)|(singleton) cut has Schmidt coefficients
    (1/sqrt 2, 1/sqrt 2); then the state is (V12 x V3)|GHZ> up to relabeling
    and the witness unitaries are built from the Schmidt vectors."""
    _check_three_qubits(state)
    ent, coeffs = {}, {}
    chosen = None
    for single in (2, 1, 0):
        cut = Bipartition({w for w in range(3) if w != single}, 3)
        sd = schmidt_decompose(state, cut)
        c = np.zeros(2)
        c[: sd.rank] = sd.coefficients
        coeffs[single] = tuple(c)
        ent[single] = bipartition_entanglement(state, cut)
        if chosen is None and np.all(np.abs(c - 1 / sqrt(2)) <= SUITABILITY_COEFF_ATOL):
            chosen = (cut, sd)
    max_e = max(ent.values())
    entropy_ok = any(abs(e - 1.0) <= SUITABILITY_ENTROPY_ATOL for e in ent.values())
    if chosen is None:
        return SuitabilityVerdict(False, None, None, None, max_e, ent, coeffs, entropy_ok)
    cut, sd = chosen
    v12 = np.zeros((4, 4), dtype=complex)
    a0, a1 = (v.amplitudes for v in sd.vectors_a)
    full = _complete_columns([a0, a1], 4)
    # columns for |00>, |11> are the Schmidt vectors; |01>, |10> take the completion
    v12[:, 0], v12[:, 3] = full[:, 0], full[:, 1]
    v12[:, 1], v12[:, 2] = full[:, 2], full[:, 3]
    v3 = np.stack([v.amplitudes for v in sd.vectors_b], axis=1)
    return SuitabilityVerdict(
        True,
        cut,
        UnitaryOp((0, 1), v12),
        UnitaryOp((2,), v3),
        max_e,
        ent,
        coeffs,
        entropy_ok,
    )


def three_tangle(state: StateVector) -> float:
    """Residual tangle from Cayley's hyperdeterminant: tau = 4 |Det|."""
    _check_three_qubits(state)
    a = state.tensor()
    d1 = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    )
    d2 = (
        a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
        + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1]
    )
    d3 = a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1] + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0]
    return float(min(4 * abs(d1 - 2 * d2 + 4 * d3), 1.0))


def w_class_membership(state: StateVector) -> bool:
    _check_three_qubits(state)
    if three_tangle(state) > TANGLE_ATOL:
        return False
    return all(bipartition_entanglement(state, Bipartition({w}, 3)) > TANGLE_ATOL for w in range(3))
