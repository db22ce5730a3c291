import itertools

import numpy as np
import pytest

from ctxharvest.gf3 import enumerate_contexts, symplectic_form
from ctxharvest.hwops import (
    OMEGA,
    clock,
    context_projector,
    context_projectors,
    outcome_labels,
    phase_point_operator,
    phase_point_operators,
    projector_stack,
    shift,
    weyl,
)

ATOL = 1e-12
ALL2 = list(itertools.product(range(3), repeat=2))
ALL4 = list(itertools.product(range(3), repeat=4))


# ---------------------------------------------------------------------------
# clock and shift
# ---------------------------------------------------------------------------

def test_clock_eigenvalues():
    z = clock()
    for j in range(3):
        e = np.zeros(3)
        e[j] = 1
        assert np.allclose(z @ e, OMEGA**j * e, atol=ATOL)


def test_shift_cycles_basis():
    x = shift()
    for j in range(3):
        e = np.zeros(3)
        e[j] = 1
        out = np.zeros(3)
        out[(j + 1) % 3] = 1
        assert np.allclose(x @ e, out, atol=ATOL)


def test_clock_shift_commutation():
    assert np.allclose(clock() @ shift(), OMEGA * shift() @ clock(), atol=ATOL)


# ---------------------------------------------------------------------------
# displacement operators
# ---------------------------------------------------------------------------

def test_weyl_identity():
    assert np.allclose(weyl((0, 0)), np.eye(3), atol=ATOL)
    assert np.allclose(weyl((0, 0, 0, 0)), np.eye(9), atol=ATOL)


def test_weyl_unitary():
    for v in ALL4:
        w = weyl(v)
        assert np.allclose(w @ w.conj().T, np.eye(9), atol=ATOL)


def test_weyl_tensor_structure():
    for v in ALL4[::5]:
        assert np.allclose(weyl(v), np.kron(weyl(v[:2]), weyl(v[2:])), atol=ATOL)


def test_commutation_iff_symplectic_orthogonal_exhaustive():
    ws = {v: weyl(v) for v in ALL4}
    for v in ALL4:
        for u in ALL4:
            lhs = ws[v] @ ws[u]
            rhs = OMEGA ** ((2 * symplectic_form(v, u)) % 3) * (ws[u] @ ws[v])
            assert np.allclose(lhs, rhs, atol=ATOL)


def test_composition_on_commuting_pairs():
    ws = {v: weyl(v) for v in ALL4}
    for v in ALL4:
        for u in ALL4:
            if symplectic_form(v, u) != 0:
                continue
            s = tuple((a + b) % 3 for a, b in zip(v, u))
            assert np.allclose(ws[v] @ ws[u], ws[s], atol=ATOL)


def test_weyl_rejects_bad_length():
    with pytest.raises(ValueError):
        weyl((1, 2, 0))


# ---------------------------------------------------------------------------
# context projectors
# ---------------------------------------------------------------------------

def test_projector_count():
    assert projector_stack().shape == (40, 9, 9, 9)


def test_projectors_complete_idempotent_rank1():
    for ctx in enumerate_contexts():
        ps = context_projectors(ctx)
        total = sum(ps)
        assert np.allclose(total, np.eye(9), atol=1e-10)
        for p in ps:
            assert np.allclose(p, p.conj().T, atol=ATOL)
            assert np.allclose(p @ p, p, atol=1e-10)
            assert abs(np.trace(p) - 1) < 1e-10


def test_projectors_mutually_orthogonal():
    ctx = enumerate_contexts()[7]
    ps = context_projectors(ctx)
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            expect = p if i == j else np.zeros((9, 9))
            assert np.allclose(p @ q, expect, atol=1e-10)


def test_zz_context_zero_label_is_ground_projector():
    # the context generated by Z x 1 and 1 x Z with outcome (0, 0) on the
    # generators projects onto |00>
    target = None
    for ctx in enumerate_contexts():
        if ctx.generators == ((0, 1, 0, 0), (0, 0, 0, 1)):
            target = ctx
            break
    assert target is not None
    p = context_projector(target, (0, 0))
    expect = np.zeros((9, 9))
    expect[0, 0] = 1
    assert np.allclose(p, expect, atol=ATOL)


def test_invalid_label_rejected():
    ctx = enumerate_contexts()[0]
    with pytest.raises(ValueError):
        context_projector(ctx, (3, 0))


def test_outcome_label_order():
    assert outcome_labels() == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2),
                                (2, 0), (2, 1), (2, 2)]


# ---------------------------------------------------------------------------
# phase point operators
# ---------------------------------------------------------------------------

def test_phase_point_hermitian_trace_one():
    for x, y in ALL2:
        a = phase_point_operator(x, y)
        assert np.allclose(a, a.conj().T, atol=ATOL)
        assert abs(np.trace(a) - 1) < ATOL


def test_phase_point_sum_is_three_identity():
    total = sum(phase_point_operator(x, y) for x, y in ALL2)
    assert np.allclose(total, 3 * np.eye(3), atol=ATOL)


def test_phase_point_orthogonality():
    ops = phase_point_operators()
    for x1, y1 in ALL2:
        for x2, y2 in ALL2:
            tr = np.trace(ops[x1, y1] @ ops[x2, y2])
            expect = 3.0 if (x1, y1) == (x2, y2) else 0.0
            assert abs(tr - expect) < 1e-10


def test_phase_point_eigenprojector_invariance():
    # building the projectors from numpy eigenvectors (arbitrary phases) must
    # give the same operators as the spectral sums
    for x, y in ALL2:
        a = phase_point_operator(x, y)
        r = (x, y, (x + y) % 3, (x + 2 * y) % 3)
        b = -np.eye(3, dtype=complex)
        for i, v in enumerate([(0, 1), (1, 0), (1, 1), (1, 2)]):
            w = weyl(v)
            vals, vecs = np.linalg.eig(w)
            idx = int(np.argmin(np.abs(vals - OMEGA ** r[i])))
            vec = vecs[:, idx]
            b += np.outer(vec, vec.conj())
        assert np.allclose(a, b, atol=1e-9)


def test_phase_point_rejects_out_of_range():
    with pytest.raises(ValueError):
        phase_point_operator(3, 0)
