"""End-to-end acceptance suite.

Each test covers one acceptance criterion, exercises the library on the
stated corpus at the stated tolerances, and prints a single PASS line on
success (pytest shows the assertion context on failure).
"""

import time

import numpy as np
import pytest

import spinlattice as sl
from spinlattice.worked_example import (
    example_triple,
    phi_closed_form,
    spin_closed_form,
)

SEED = 108331


def _report(number, label):
    print(f"[acceptance {number:02d}] {label}: PASS")


@pytest.fixture(scope="module")
def corpus():
    """100 class FG triples (N <= 6, m <= 3) with lattice states to n = 30."""
    rng = np.random.default_rng(SEED)
    out = []
    for _ in range(100):
        order = int(rng.integers(1, 7))
        m = int(rng.integers(1, 4))
        triple = sl.random_admissible_triple(rng, order, m, h_scale=4.0,
                                             inv_norm_max=0.6)
        out.append((triple, sl.generate(triple, n_max=30)))
    return out


def test_criterion_01_golden_example():
    start = time.time()
    t = example_triple(2.0)
    state = sl.generate(t, 3)
    assert abs(state.sigmas[0][0, 0] - 1.0) <= 1e-12
    assert abs(state.sigmas[1][0, 0] - 1.25) <= 1e-12
    assert abs(state.sigmas[2][0, 0] - 164.0 / 64.0) <= 1e-12
    s0_expected = np.array([[-0.6, 0.8], [0.8, 0.6]])
    assert np.max(np.abs(state.spins[0] - s0_expected)) <= 1e-12

    for tt in (0.0, 0.45, -0.8):
        s0_t, _ = sl.spin_evolution(t, 0, tt)
        assert abs(s0_t[0, 1] - 0.8 * np.exp(-4j * tt / 3)) <= 1e-12
        phi_t = sl.weyl_evolution(t, tt)
        for lam in (2.0 + 1.5j, -1.0 - 2.0j, 3.0):
            assert abs(phi_t(lam)[0, 0]
                       - np.exp(-4j * tt / 3) * 2j / lam) <= 1e-12
    assert time.time() - start < 1.0
    _report(1, "golden example fixture (h = 2)")


def test_criterion_02_involution_suite(corpus):
    for triple, state in corpus:
        i2m = np.eye(2 * triple.m)
        for n in range(30):
            cond_scale = max(1.0, state.conditioning[n]
                             * state.conditioning[n + 1])
            assert state.spin_residuals[n] <= 1e-9 * cond_scale
            raw = sl.signature_matrix(triple.m) + state.xi(n) - state.xi(n + 1)
            assert np.linalg.norm(raw - raw.conj().T) <= 1e-10 * cond_scale
    _report(2, "involution suite, 100 triples, n <= 30")


def test_criterion_03_identity_propagation(corpus):
    for triple, state in corpus:
        a = triple.alpha
        for lam, sig in zip(state.lambdas, state.sigmas):
            res = np.linalg.norm(
                a @ sig - sig @ a.conj().T - 1j * lam @ lam.conj().T
            )
            scale = max(1.0, np.linalg.norm(sig) * np.linalg.norm(a))
            assert res <= 1e-9 * scale
            assert np.linalg.eigvalsh(sig)[0] > 0
    _report(3, "identity propagation and positivity, 100 triples")


def test_criterion_04_transfer_identities(corpus):
    rng = np.random.default_rng(SEED + 1)
    sites = (0, 3, 7, 12, 20)
    for triple, state in corpus:
        transfer = sl.Transfer(state)
        scale = 1.0 + np.linalg.norm(triple.alpha, 2)
        eigs = np.linalg.eigvals(triple.alpha)
        lams = []
        while len(lams) < 20:
            lam = complex(*(2.0 * scale * (rng.random(2) - 0.5)))
            if abs(lam) < 0.2 or np.min(np.abs(eigs - lam)) < 0.2:
                continue
            lams.append(lam)
        for lam in lams:
            n = sites[len(lams) % len(sites)]
            assert transfer.identity_residual(n, lam) <= 1e-9
            assert transfer.unitarity_residual(n, lam) <= 1e-9
            assert transfer.gram_identity_residual(n, lam) <= 1e-9
            if lam.imag < -0.05:
                w = transfer.w(n, lam)
                gram = w.conj().T @ w - np.eye(w.shape[0])
                assert np.linalg.eigvalsh(gram)[-1] <= 1e-9
        for n in sites:
            k_scale = max(1.0, np.linalg.norm(state.lambdas[n])
                          * state.conditioning[n])
            assert sl.k_residual(state, n) <= 1e-9 * k_scale
    _report(4, "transfer identities at 20 random lambda per triple")


def test_criterion_05_fundamental_recursion(corpus):
    for triple, state in corpus[:25]:
        transfer = sl.Transfer(state)
        for lam in sl.lambda_grid(triple.alpha, count=4):
            for n in range(20):
                assert transfer.recursion_residual(n, lam) <= 1e-9
    _report(5, "fundamental solution recursion, n <= 20")


def test_criterion_06_direct_weyl(corpus):
    rng = np.random.default_rng(SEED + 2)
    for triple, state in corpus[:20]:
        phi = sl.weyl(triple)
        transfer = sl.Transfer(state)
        m = triple.m
        for lam in sl.lambda_grid(triple.alpha, count=10):
            w0 = transfer.w(0, lam)
            ratio = w0[:m, m:] @ np.linalg.inv(w0[m:, m:])
            assert np.linalg.norm(phi(lam) - ratio) <= 1e-10
    for _ in range(10):
        t = sl.random_general_sigma_triple(rng, 3, 2)
        phi = sl.weyl(t)
        phi_norm = sl.weyl(sl.normalize_sigma0(t))
        for lam in sl.lambda_grid(t.alpha, count=6):
            assert np.linalg.norm(phi(lam) - phi_norm(lam)) <= 1e-10
    _report(6, "direct Weyl equivalences on the lambda grid")


def test_criterion_07_summability_dichotomy(corpus):
    for triple, _ in corpus[:10]:
        report = sl.summability_diagnostic(triple, -2j, n_terms=30)
        assert report.is_cauchy
        perturbed = sl.summability_diagnostic(
            triple, -2j, n_terms=30,
            phi=sl.weyl(triple)(-2j) + 0.1 * np.eye(triple.m),
        )
        assert not perturbed.is_cauchy
    _report(7, "summability dichotomy at lambda = -2i, 10 triples")


def test_criterion_08_inverse_problem():
    rng = np.random.default_rng(SEED + 3)
    for _ in range(50):
        order = int(rng.integers(1, 6))
        m = int(rng.integers(1, 3))
        r = sl.random_minimal_realization(rng, order, m)
        sol = sl.solve_riccati(r)
        assert sol.min_eigenvalue > 0
        assert sol.residual_norm <= 1e-10 * max(
            1.0, np.linalg.norm(sol.x) ** 2 * np.linalg.norm(r.gamma)
        )
        triple = sl.invert(r)
        beta = triple.alpha - 1j * triple.theta2 @ triple.theta2.conj().T
        sym = beta - beta.conj().T - 1j * (
            triple.theta1 @ triple.theta1.conj().T
            - triple.theta2 @ triple.theta2.conj().T
        )
        assert np.linalg.norm(sym) <= 1e-10
        phi = sl.weyl(triple)
        for lam in sl.lambda_grid(triple.alpha, count=6):
            assert np.linalg.norm(phi(lam) - r(lam)) <= 1e-9
        # well-conditioned similarity: unitary times bounded diagonal
        q_mat, _ = np.linalg.qr(
            rng.standard_normal((order, order))
            + 1j * rng.standard_normal((order, order))
        )
        t_mat = q_mat @ np.diag(rng.uniform(0.5, 2.0, order))
        spins_a = sl.generate(triple, 4).spins
        spins_b = sl.generate(sl.invert(r.similarity(t_mat)), 4).spins
        worst = max(np.linalg.norm(a - b) for a, b in zip(spins_a, spins_b))
        assert worst <= 1e-9
    _report(8, "inverse problem on 50 random minimal realizations")


def test_criterion_09_reduction():
    rng = np.random.default_rng(SEED + 4)
    for which in ("theta1", "theta2"):
        done = 0
        while done < 5:
            base = sl.random_admissible_triple(rng, 3, 1, h_scale=4.0,
                                               inv_norm_max=0.6)
            padded = sl.pad_triple(base, rng, 2, which=which, h_scale=6.0)
            # keep the padded recursion well conditioned over n <= 10
            if np.linalg.norm(np.linalg.inv(padded.alpha), 2) > 0.7:
                continue
            done += 1
            reduced = sl.reduce_triple(padded, which=which)
            assert reduced.order == base.order
            s_padded = sl.generate(padded, 11).spins
            s_reduced = sl.generate(reduced, 11).spins
            worst = max(np.linalg.norm(a - b)
                        for a, b in zip(s_padded, s_reduced))
            assert worst <= 1e-10
    for _ in range(5):
        t = sl.random_general_sigma_triple(rng, 3, 2)
        s_raw = sl.generate(t, 11).spins
        s_norm = sl.generate(sl.normalize_sigma0(t), 11).spins
        worst = max(np.linalg.norm(a - b) for a, b in zip(s_raw, s_norm))
        assert worst <= 1e-9
    _report(9, "reduction and normalization preserve the spin sequence")


def test_criterion_10_ihm_verification():
    rng = np.random.default_rng(SEED + 5)
    triples = [example_triple(2.0)] + [
        sl.random_admissible_triple(rng, 3, 1) for _ in range(2)
    ]
    lam = 2.0 + 0.5j
    times = np.linspace(0.0, 0.5, 6)
    for triple in triples:
        for n in (1, 2):
            for tt in (0.0, 0.3):
                assert sl.zero_curvature_residual(
                    triple, n, tt, lam, h_t=1e-4) <= 1e-6
                assert sl.ihm_residual(triple, n, tt, h_t=1e-4) <= 1e-6
        zc_c = sl.zero_curvature_residual(triple, 1, 0.2, lam, h_t=1e-2)
        zc_f = sl.zero_curvature_residual(triple, 1, 0.2, lam, h_t=5e-3)
        assert np.log2(zc_c / zc_f) >= 1.9
        ihm_c = sl.ihm_residual(triple, 1, 0.2, h_t=1e-2)
        ihm_f = sl.ihm_residual(triple, 1, 0.2, h_t=5e-3)
        assert np.log2(ihm_c / ihm_f) >= 1.9
        for tt in times:
            pair = sl.lax_pair(triple, 1, tt, lam)
            assert pair.equality_plus <= 1e-8
            assert pair.equality_minus <= 1e-8
            assert abs(pair.trace_v_plus - 2.0) <= 1e-9
            assert abs(pair.trace_v_minus - 2.0) <= 1e-9
            trip_t = sl.triple_at(triple, tt)
            assert trip_t.identity_residual() <= 1e-9 * max(
                1.0, trip_t.identity_scale()
            )
            state_t = sl.generate(trip_t, 4)
            for s in state_t.spins:
                assert abs(sl.spin_vector(s).norm - 1.0) <= 1e-9
            a = sl.evolve_sigma0(triple, tt, "sylvester")
            b = sl.evolve_sigma0(triple, tt, "ode")
            assert np.linalg.norm(a - b) <= 1e-7
    _report(10, "IHM evolution, Lax pair and zero curvature")


def test_criterion_11_rank_structure(corpus):
    for triple, state in corpus[:30]:
        m = triple.m
        i2m = np.eye(2 * m)
        transfer = sl.Transfer(state)
        for n, s in enumerate(state.spins[:10]):
            for sign in (1.0, -1.0):
                sv = np.linalg.svd(i2m + sign * s, compute_uv=False)
                assert sv[m] <= 1e-8
            res = transfer.factorization_residuals(n)
            assert max(res.values()) <= 1e-9
    _report(11, "rank-m structure of I +/- S_n and factorization residuals")


def test_criterion_12_monotonicity():
    rng = np.random.default_rng(SEED + 6)
    for _ in range(25):
        order = int(rng.integers(1, 5))
        m = int(rng.integers(1, 3))
        triple = sl.random_admissible_triple(
            rng, order, m, h_scale=16.0, inv_norm_max=0.15
        )
        diag = sl.monotone_diagnostics(sl.generate(triple, 20))
        assert diag.r_sequence is not None and diag.q_sequence is not None
        assert min(diag.r_increments_min_eig) >= -1e-10
        assert max(diag.q_increments_max_eig) <= 1e-10
        assert max(diag.r_cross_residuals) <= 1e-10
        assert max(diag.q_cross_residuals) <= 1e-10
    _report(12, "monotone R (non-decreasing) and Q (non-increasing), n <= 20")
