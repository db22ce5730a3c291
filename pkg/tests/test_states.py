import numpy as np
import pytest

from ctxharvest.kernels import DetectorConfig, KernelSet, compute_kernels
from ctxharvest.states import (
    assemble_state,
    ground_state,
    reduce,
    spacelike_ok,
    state_from_json,
    state_to_json,
)


def random_kernels(seed=0):
    rng = np.random.default_rng(seed)
    return KernelSet(
        L=float(rng.uniform(1e-7, 1e-5)),
        Lab=float(rng.uniform(-1e-6, 1e-6)),
        Q=complex(rng.normal(0, 1e-6), rng.normal(0, 1e-6)),
        Mab=complex(rng.normal(0, 1e-6), rng.normal(0, 1e-6)),
        V=complex(rng.normal(0, 1e-6), rng.normal(0, 1e-6)),
    )


def cfg_for(dynamics="SU2"):
    return DetectorConfig(lam=1e-3, omega=1.0, rtilde=0.1, dtilde=4.0, dynamics=dynamics)


# ---------------------------------------------------------------------------
# assembly: entry patterns
# ---------------------------------------------------------------------------

def test_su2_entries_match_displayed_matrix():
    k = random_kernels(1)
    rho = assemble_state(cfg_for("SU2"), k).rho
    expect = np.zeros((9, 9), complex)
    expect[0, 0] = 1 - 2 * k.L
    expect[1, 1] = expect[3, 3] = k.L
    expect[1, 3] = expect[3, 1] = k.Lab
    expect[2, 0] = expect[6, 0] = k.Q
    expect[0, 2] = expect[0, 6] = np.conj(k.Q)
    expect[4, 0] = k.Mab
    expect[0, 4] = np.conj(k.Mab)
    assert np.array_equal(rho, expect)


def test_su2_entry_00_11_is_conjugated_cross_coherence():
    k = random_kernels(2)
    rho = assemble_state(cfg_for("SU2"), k).rho
    assert rho[0, 4] == np.conj(k.Mab)


def test_hw_entries_match_displayed_matrix():
    k = random_kernels(3)
    rho = assemble_state(cfg_for("HW"), k).rho
    expect = np.zeros((9, 9), complex)
    expect[0, 0] = 1 - 4 * k.L
    for i in (1, 2, 3, 6):
        expect[i, 0] = k.V
        expect[0, i] = np.conj(k.V)
    for i in (4, 5, 7, 8):
        expect[i, 0] = k.Mab
        expect[0, i] = np.conj(k.Mab)
    for i in (1, 2):
        for j in (1, 2):
            expect[i, j] = k.L
    for i in (3, 6):
        for j in (3, 6):
            expect[i, j] = k.L
    for i in (1, 2):
        for j in (3, 6):
            expect[i, j] = expect[j, i] = k.Lab
    assert np.array_equal(rho, expect)


def test_su2_has_no_ground_to_single_coherence():
    # superselection: no direct transition amplitude into |01>, |10>
    k = random_kernels(4)
    rho = assemble_state(cfg_for("SU2"), k).rho
    for i in (1, 3):
        assert rho[i, 0] == 0
    rho_hw = assemble_state(cfg_for("HW"), k).rho
    for i in (1, 2, 3, 6):
        assert rho_hw[i, 0] == k.V


@pytest.mark.parametrize("dynamics", ["SU2", "HW"])
def test_trace_one_and_hermitian(dynamics):
    # the diagonal cancels analytically (1 - nL plus n copies of L); only
    # summation rounding remains
    for seed in range(5):
        k = random_kernels(seed)
        rho = assemble_state(cfg_for(dynamics), k).rho
        assert abs(np.trace(rho) - 1.0) < 1e-15
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-14


def test_zero_coupling_limit_is_ground_state():
    k = KernelSet(L=0.0, Lab=0.0, Q=0j, Mab=0j, V=0j)
    for dyn in ("SU2", "HW"):
        rho = assemble_state(cfg_for(dyn), k).rho
        expect = np.zeros((9, 9), complex)
        expect[0, 0] = 1.0
        assert np.array_equal(rho, expect)


def test_assemble_rejects_non_kernelset():
    with pytest.raises(ValueError):
        assemble_state(cfg_for(), {"L": 1.0})


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def test_reduce_su2_matches_displayed_form():
    k = random_kernels(5)
    state = assemble_state(cfg_for("SU2"), k)
    for which in ("A", "B"):
        r = reduce(state, which).rho
        expect = np.array([
            [1 - k.L, 0, np.conj(k.Q)],
            [0, k.L, 0],
            [k.Q, 0, 0],
        ])
        assert np.max(np.abs(r - expect)) < 1e-14


def test_reduce_hw_matches_displayed_form():
    k = random_kernels(6)
    state = assemble_state(cfg_for("HW"), k)
    r = reduce(state, "A").rho
    expect = np.array([
        [1 - 2 * k.L, np.conj(k.V), np.conj(k.V)],
        [k.V, k.L, k.L],
        [k.V, k.L, k.L],
    ])
    assert np.max(np.abs(r - expect)) < 1e-14


def test_reduce_preserves_trace():
    k = random_kernels(7)
    for dyn in ("SU2", "HW"):
        state = assemble_state(cfg_for(dyn), k)
        for which in ("A", "B"):
            assert abs(np.trace(reduce(state, which).rho) - 1) < 1e-14


def test_reduce_ground_state():
    k = KernelSet(L=0.0, Lab=0.0, Q=0j, Mab=0j, V=0j)
    state = assemble_state(cfg_for(), k)
    assert np.array_equal(reduce(state, "A").rho, ground_state())


def test_reduce_rejects_bad_selector():
    k = random_kernels(8)
    with pytest.raises(ValueError):
        reduce(assemble_state(cfg_for(), k), "C")


def test_perturbative_negativity_bounded():
    # most negative eigenvalue of the assembled state is O(lambda^4)
    rng = np.random.default_rng(11)
    for lam in (1e-3, 1e-2):
        for _ in range(4):
            cfg = DetectorConfig(
                lam=lam, omega=float(rng.uniform(0, 3)),
                rtilde=float(rng.uniform(0.05, 1.5)),
                dtilde=float(rng.uniform(1.0, 10.0)),
                dynamics=str(rng.choice(["SU2", "HW"])),
            )
            k = compute_kernels(cfg)
            rho = assemble_state(cfg, k).rho
            assert np.linalg.eigvalsh(rho).min() >= -10 * lam**4


# ---------------------------------------------------------------------------
# spacelike criterion
# ---------------------------------------------------------------------------

def test_spacelike_examples():
    assert spacelike_ok(DetectorConfig(lam=1e-3, omega=1, rtilde=1.0, dtilde=6.0))
    assert not spacelike_ok(DetectorConfig(lam=1e-3, omega=1, rtilde=1.0, dtilde=5.0))
    assert spacelike_ok(DetectorConfig(lam=1e-3, omega=1, rtilde=0.1, dtilde=3.7356))
    assert not spacelike_ok(DetectorConfig(lam=1e-3, omega=1, rtilde=0.1, dtilde=3.7355))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_state_json_roundtrip(acceptance_state):
    text = state_to_json(acceptance_state)
    back = state_from_json(text)
    assert np.array_equal(back.rho, acceptance_state.rho)
    assert back.dynamics == acceptance_state.dynamics
    assert back.config == acceptance_state.config
    assert back.kernels.L == acceptance_state.kernels.L
    assert back.kernels.Q == acceptance_state.kernels.Q


def test_state_json_rejects_unknown_format():
    with pytest.raises(ValueError):
        state_from_json('{"format": "something-else"}')
