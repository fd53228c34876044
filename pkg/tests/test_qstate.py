import json
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wclass import catalog
from wclass.qstate import (
    Bipartition,
    DensityMatrix,
    QuditRegister,
    StateVector,
    UnitaryOp,
    apply_unitary,
    basis_state,
    bipartition_entanglement,
    complete_basis,
    equal_up_to_global_phase,
    ket,
    load_state,
    partial_trace,
    permute_wires,
    projective_measure,
    random_state,
    random_unitary,
    save_state,
    schmidt_decompose,
    state_from_document,
    state_to_document,
    tensor_product,
    von_neumann_entropy,
)

import oracles

# frozen from tests/oracles.py
H_1_3 = 0.9182958340544896
H_1_4 = 0.8112781244591328
PAGE_2x2 = 0.4808983469629877


def test_register_big_endian():
    reg = QuditRegister((2, 3, 2))
    assert reg.dim == 12
    for idx in range(reg.dim):
        assert reg.index(reg.digits(idx)) == idx
        assert reg.digits(idx) == oracles.digits_of(idx, reg.dims)
    assert ket("100").amplitudes[4] == 1


def test_register_rejects_small_dims():
    with pytest.raises(ValueError):
        QuditRegister((2, 1))


def test_state_vector_requires_normalization():
    with pytest.raises(ValueError):
        StateVector(QuditRegister((2,)), [1, 1])
    with pytest.raises(ValueError):
        StateVector(QuditRegister((2,)), [1, 0, 0])


def test_state_amplitudes_are_read_only():
    s = ket("01")
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1


# ---------------------------------------------------------------- tensor_product


def test_tensor_product_basis():
    np.testing.assert_array_equal(tensor_product(ket("0"), ket("1")).amplitudes, [0, 1, 0, 0])


def test_tensor_product_payload_ghz():
    alpha, beta = 0.6, 0.8j
    psi = StateVector(QuditRegister((2,)), [alpha, beta])
    out = tensor_product(psi, catalog.make_ghz())
    expected = np.zeros(16, dtype=complex)
    expected[0b0000] = alpha / sqrt(2)
    expected[0b0111] = alpha / sqrt(2)
    expected[0b1000] = beta / sqrt(2)
    expected[0b1111] = beta / sqrt(2)
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)
    assert out.dims == (2, 2, 2, 2)


def test_tensor_product_first_term_of_wtilde4_rewrite():
    out = tensor_product(catalog.make_epr(), ket("00"))
    expected = np.zeros(16)
    expected[0b0100] = expected[0b1000] = 1 / sqrt(2)
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)


# ---------------------------------------------------------------- apply_unitary


def test_u12_takes_ghz_to_w123():
    out = apply_unitary(catalog.make_ghz(), catalog.make_u12())
    assert equal_up_to_global_phase(out, catalog.make_w123())


def test_identity_is_noop():
    s = random_state((2, 3, 2), seed=4)
    out = apply_unitary(s, UnitaryOp((2, 0), np.eye(4)))
    np.testing.assert_allclose(out.amplitudes, s.amplitudes, atol=1e-15)


def test_sigma1_on_last_wire_of_w3():
    out = apply_unitary(catalog.make_w_state_n(3), catalog.pauli(1, wire=2))
    # (1/sqrt2)|~W^2>|1> + (1/sqrt2)|00>|0>
    expected = np.zeros(8)
    expected[0b101] = expected[0b011] = 0.5
    expected[0b000] = 1 / sqrt(2)
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)


def test_apply_unitary_errors():
    s = ket("000")
    with pytest.raises(ValueError):
        apply_unitary(s, catalog.pauli(1, wire=3))
    with pytest.raises(ValueError):
        apply_unitary(s, UnitaryOp((0,), np.eye(4)))


def test_non_unitary_rejected():
    with pytest.raises(ValueError):
        UnitaryOp((0,), [[1, 1], [0, 1]])


@settings(max_examples=40, deadline=None)
@given(
    dims=st.lists(st.integers(2, 3), min_size=1, max_size=4),
    data=st.data(),
)
def test_apply_unitary_matches_elementwise_operator(dims, data):
    n = len(dims)
    k = data.draw(st.integers(1, n))
    wires = data.draw(st.permutations(range(n)))[:k]
    seed = data.draw(st.integers(0, 2**31))
    s = random_state(tuple(dims), seed)
    u = random_unitary(wires, int(np.prod([dims[w] for w in wires])), seed + 1)
    out = apply_unitary(s, u)
    expected = oracles.full_operator(u.matrix, list(wires), dims) @ s.amplitudes
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)
    assert abs(np.linalg.norm(out.amplitudes) - 1) < 1e-12


# ---------------------------------------------------------------- partial_trace / entropy


def test_partial_trace_w123_wire2():
    rho = partial_trace(catalog.make_w123(), {2})
    np.testing.assert_allclose(rho.matrix, np.diag([0.5, 0.5]), atol=1e-15)


def test_partial_trace_wtilde_wire0():
    rho = partial_trace(catalog.make_w_tilde123(), {0})
    np.testing.assert_allclose(rho.matrix, np.diag([2 / 3, 1 / 3]), atol=1e-15)


def test_partial_trace_product_state():
    rho = partial_trace(ket("00"), {0})
    np.testing.assert_allclose(rho.matrix, [[1, 0], [0, 0]], atol=1e-15)


def test_partial_trace_full_set_is_projector():
    s = random_state((2, 2), 3)
    rho = partial_trace(s, {0, 1})
    np.testing.assert_allclose(rho.matrix, np.outer(s.amplitudes, s.amplitudes.conj()), atol=1e-14)


def test_partial_trace_empty_rejected():
    with pytest.raises(ValueError):
        partial_trace(ket("00"), set())


@settings(max_examples=30, deadline=None)
@given(dims=st.lists(st.integers(2, 3), min_size=2, max_size=4), data=st.data())
def test_partial_trace_matches_loop(dims, data):
    n = len(dims)
    keep = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n))
    s = random_state(tuple(dims), data.draw(st.integers(0, 2**31)))
    rho = partial_trace(s, keep)
    np.testing.assert_allclose(rho.matrix, oracles.partial_trace_loop(s.amplitudes, dims, keep), atol=1e-12)


def test_entropy_values():
    assert von_neumann_entropy(np.diag([0.5, 0.5])) == pytest.approx(1.0, abs=1e-12)
    assert von_neumann_entropy(partial_trace(ket("01"), {0})) == 0.0
    assert von_neumann_entropy(np.diag([1 / 3, 2 / 3])) == pytest.approx(0.918296, abs=1e-6)
    assert von_neumann_entropy(np.diag([1 / 3, 2 / 3])) == pytest.approx(H_1_3, abs=1e-12)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(QuditRegister((2,)), np.diag([0.5, 0.6]))
    with pytest.raises(ValueError):
        DensityMatrix(QuditRegister((2,)), [[0.5, 0.1], [0.2, 0.5]])
    with pytest.raises(ValueError):
        DensityMatrix(QuditRegister((2,)), np.diag([1.5, -0.5]))


def test_bipartition_entanglement_w123():
    w = catalog.make_w123()
    assert bipartition_entanglement(w, Bipartition({0, 1}, 3)) == pytest.approx(1.0, abs=1e-12)
    assert bipartition_entanglement(w, Bipartition({0}, 3)) == pytest.approx(H_1_4, abs=1e-12)
    assert bipartition_entanglement(w, Bipartition({0}, 3)) == pytest.approx(0.811278, abs=1e-6)


@pytest.mark.parametrize("N", range(2, 9))
def test_bipartition_entanglement_wtilde_single(N):
    s = catalog.make_w_tilde_n(N)
    for i in range(N):
        assert bipartition_entanglement(s, Bipartition({i}, N)) == pytest.approx(
            oracles.binary_entropy(1 / N), abs=1e-9
        )


def test_bipartition_rejects_bad_cuts():
    with pytest.raises(ValueError):
        Bipartition(set(), 3)
    with pytest.raises(ValueError):
        Bipartition({0, 1, 2}, 3)
    with pytest.raises(ValueError):
        Bipartition({5}, 3)


# ---------------------------------------------------------------- Schmidt


def test_schmidt_w_state_last_cut():
    for N in (2, 3, 5, 8):
        sd = schmidt_decompose(catalog.make_w_state_n(N), Bipartition(set(range(N - 1)), N))
        np.testing.assert_allclose(sd.coefficients, [1 / sqrt(2)] * 2, atol=1e-12)


def test_schmidt_product_state():
    sd = schmidt_decompose(tensor_product(random_state((2,), 1), random_state((3,), 2)), Bipartition({0}, 2))
    np.testing.assert_allclose(sd.coefficients, [1.0], atol=1e-12)


def test_schmidt_wtilde123():
    sd = schmidt_decompose(catalog.make_w_tilde123(), Bipartition({0}, 3))
    np.testing.assert_allclose(sd.coefficients, [sqrt(2 / 3), sqrt(1 / 3)], atol=1e-12)


def test_schmidt_phase_convention():
    sd = schmidt_decompose(random_state((2, 3, 2), 11), Bipartition({1}, 3))
    for a in sd.vectors_a:
        first = a.amplitudes[np.flatnonzero(np.abs(a.amplitudes) > 1e-12)[0]]
        assert abs(first.imag) < 1e-14 and first.real > 0


@settings(max_examples=40, deadline=None)
@given(dims=st.lists(st.integers(2, 3), min_size=2, max_size=4), data=st.data())
def test_schmidt_and_entropy_invariants(dims, data):
    n = len(dims)
    side = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1))
    s = random_state(tuple(dims), data.draw(st.integers(0, 2**31)))
    cut = Bipartition(side, n)
    sd = schmidt_decompose(s, cut)
    c = sd.coefficients
    assert np.all(np.diff(c) <= 1e-15)
    assert abs(np.sum(c**2) - 1) < 1e-10
    for vecs in (sd.vectors_a, sd.vectors_b):
        g = np.array([[u.inner(v) for v in vecs] for u in vecs])
        np.testing.assert_allclose(g, np.eye(len(vecs)), atol=1e-10)
    assert equal_up_to_global_phase(sd.reconstruct(), s)
    e_a = bipartition_entanglement(s, cut)
    e_b = bipartition_entanglement(s, cut.swapped())
    assert abs(e_a - e_b) < 1e-9
    assert abs(sd.entropy() - e_a) < 1e-9
    lam = np.sort(partial_trace(s, side).eigenvalues())[::-1][: len(c)]
    np.testing.assert_allclose(lam, c**2, atol=1e-9)


# ---------------------------------------------------------------- measurement


def test_measure_ghz_teleport_extended_basis():
    psi = random_state((2,), 7)
    joint = tensor_product(psi, catalog.make_ghz())
    basis = complete_basis(catalog.eight_state_basis()[:4])
    assert len(basis) == 8
    outs = projective_measure(joint, (0, 1, 2), basis)
    probs = [o.probability for o in outs]
    np.testing.assert_allclose(probs[:4], [0.25] * 4, atol=1e-12)
    np.testing.assert_allclose(probs[4:], [0] * 4, atol=1e-12)
    assert all(o.state is None for o in outs[4:])
    assert outs[0].state.dims == (2,)


def test_measure_eigenstate():
    basis = [ket(s) for s in ("00", "01", "10", "11")]
    outs = projective_measure(ket("00"), (0, 1), basis)
    assert outs[0].probability == 1.0
    assert outs[0].state.dims == ()
    assert [o.probability for o in outs[1:]] == [0, 0, 0]


def test_measure_wtilde4_pair_set():
    alpha, beta = 0.6, 0.8
    payload = StateVector(QuditRegister((2, 2)), [alpha, 0, 0, beta])
    joint = tensor_product(payload, catalog.make_w_tilde_n(4))
    from wclass.protocols import wtilde4_pair_teleport

    S = wtilde4_pair_teleport().measurement_states
    outs = projective_measure(joint, (0, 1, 2, 3), S)
    np.testing.assert_allclose([o.probability for o in outs], [0.25] * 4 + [0] * 4, atol=1e-12)


def test_measure_rejects_bad_basis():
    with pytest.raises(ValueError):
        projective_measure(ket("00"), (0,), [ket("0"), ket("0")])
    with pytest.raises(ValueError):
        projective_measure(ket("00"), (0,), [ket("00")])


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(2, 4))
def test_measurement_completeness(seed, n):
    s = random_state((2,) * n, seed)
    basis = complete_basis([random_state((2,), seed + 1)])
    outs = projective_measure(s, (n - 1,), basis)
    assert abs(sum(o.probability for o in outs) - 1) < 1e-10


# ---------------------------------------------------------------- phase / permutation


def test_equal_up_to_global_phase():
    assert equal_up_to_global_phase(ket("0"), StateVector(QuditRegister((2,)), [np.exp(1j * np.pi / 3), 0]))
    assert not equal_up_to_global_phase(ket("0"), ket("1"))
    a, b = 0.6, 0.8j
    flipped = StateVector(QuditRegister((2,)), [a, -b])
    target = StateVector(QuditRegister((2,)), [a, b])
    assert equal_up_to_global_phase(apply_unitary(flipped, catalog.pauli(3)), target)
    with pytest.raises(ValueError):
        equal_up_to_global_phase(ket("0"), ket("00"))


def test_permute_wires():
    s = tensor_product(ket("01"), ket("1"))
    out = permute_wires(s, (2, 1, 0))
    np.testing.assert_array_equal(out.amplitudes, ket("110").amplitudes)
    w = catalog.make_w_state_n(4)
    assert np.allclose(permute_wires(w, (1, 0, 2, 3)).amplitudes, w.amplitudes)
    wt = catalog.make_w_tilde_n(4)
    assert np.allclose(permute_wires(wt, (0, 3, 2, 1)).amplitudes, wt.amplitudes)
    with pytest.raises(ValueError):
        permute_wires(s, (0, 0, 1))


def test_permute_wires_mixed_dims():
    s = random_state((2, 3, 4), 5)
    out = permute_wires(s, (2, 0, 1))
    assert out.dims == (4, 2, 3)
    for idx in range(s.register.dim):
        d = s.register.digits(idx)
        assert out.amplitudes[out.register.index((d[2], d[0], d[1]))] == s.amplitudes[idx]


# ---------------------------------------------------------------- random_state


def test_random_state_deterministic_and_normalized():
    a = random_state((2, 2, 2), 42)
    b = random_state((2, 2, 2), 42)
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
    assert abs(np.linalg.norm(a.amplitudes) - 1) < 1e-12


def test_random_state_mean_entropy_matches_haar_average():
    rng = np.random.default_rng(2024)
    vals = [bipartition_entanglement(random_state((2, 2), rng), Bipartition({0}, 2)) for _ in range(1000)]
    mean = float(np.mean(vals))
    assert abs(mean - PAGE_2x2) < 0.05
    assert abs(mean - 0.48) < 0.05


# ---------------------------------------------------------------- JSON documents


def test_document_round_trip(tmp_path):
    s = random_state((2, 3), 9)
    path = tmp_path / "s.json"
    save_state(s, path)
    back = load_state(path)
    assert back.dims == (2, 3)
    np.testing.assert_allclose(back.amplitudes, s.amplitudes, atol=1e-14)
    doc = json.loads(path.read_text())
    assert set(doc) == {"dims", "amplitudes"}


def test_document_index_order():
    doc = state_to_document(catalog.make_w123())
    amps = doc["amplitudes"]
    assert amps[4] == [0.5, 0.0] and amps[2] == [0.5, 0.0]
    assert amps[1][0] == pytest.approx(0.707107, abs=1e-6)


def test_document_rejects_and_renormalizes():
    with pytest.raises(ValueError):
        state_from_document({"dims": [2, 2], "amplitudes": [[1, 0]] * 3})
    with pytest.raises(ValueError):
        state_from_document({"dims": [2], "amplitudes": [[1, 0], [0.1, 0]]})
    s = state_from_document({"dims": [2], "amplitudes": [[1 + 4e-7, 0], [0, 0]]})
    assert abs(np.linalg.norm(s.amplitudes) - 1) < 1e-15
    with pytest.raises(ValueError):
        state_from_document({"dims": [2]})


def test_basis_state_helper():
    s = basis_state((2, 3), (1, 2))
    assert s.amplitudes[5] == 1
