import numpy as np
import pytest

from spinlattice import (
    ParameterTriple,
    TripleClass,
    generate,
    normalize_sigma0,
    pad_triple,
    random_admissible_triple,
    random_general_sigma_triple,
    reduce_triple,
    signature_matrix,
    validate,
)
from spinlattice.errors import DimensionError


def test_signature_matrix():
    j = signature_matrix(2)
    assert np.allclose(j @ j, np.eye(4))
    assert np.trace(j) == 0


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        ParameterTriple(
            alpha=np.eye(2, dtype=complex),
            theta1=np.ones((3, 1), dtype=complex),
            theta2=np.ones((2, 1), dtype=complex),
        )


def test_random_triple_is_fg(rng):
    for _ in range(5):
        t = random_admissible_triple(rng, 4, 2)
        rep = validate(t)
        assert rep.triple_class is TripleClass.FG
        assert rep.identity_ok
        assert rep.spectrum.min_imag_part > 0


def test_identity_violation_is_invalid():
    t = ParameterTriple(
        alpha=np.array([[1.0 + 0.0j]]),
        theta1=np.array([[1.0]], dtype=complex),
        theta2=np.array([[1.0]], dtype=complex),
    )
    assert validate(t).triple_class is TripleClass.INVALID


def test_alpha_i_theta1_zero_not_fg():
    # scalar alpha = i with theta1 = 0 satisfies the identity with
    # |theta2|^2 = 2 but is not full range in the first factor
    t = ParameterTriple(
        alpha=np.array([[1j]]),
        theta1=np.array([[0.0]], dtype=complex),
        theta2=np.array([[np.sqrt(2)]], dtype=complex),
    )
    rep = validate(t)
    assert rep.identity_ok
    assert rep.triple_class is not TripleClass.FG
    assert not rep.theta1_full_range


def test_normalize_sigma0_preserves_spins(rng):
    t = random_general_sigma_triple(rng, 3, 1)
    assert not t.sigma0_is_identity()
    tn = normalize_sigma0(t)
    assert tn.sigma0_is_identity()
    s_raw = generate(t, 8).spins
    s_norm = generate(tn, 8).spins
    worst = max(np.linalg.norm(a - b) for a, b in zip(s_raw, s_norm))
    assert worst <= 1e-9


@pytest.mark.parametrize("which", ["theta1", "theta2"])
def test_pad_then_reduce_roundtrip(rng, which):
    base = random_admissible_triple(rng, 3, 1)
    padded = pad_triple(base, rng, 2, which=which)
    rep = validate(padded)
    assert rep.identity_ok
    assert not (rep.theta1_full_range and rep.theta2_full_range)
    reduced = reduce_triple(padded, which=which)
    assert reduced.order == base.order
    s_padded = generate(padded, 11).spins
    s_reduced = generate(reduced, 11).spins
    worst = max(np.linalg.norm(a - b) for a, b in zip(s_padded, s_reduced))
    assert worst <= 1e-10


def test_reduce_full_range_is_identity(rng):
    t = random_admissible_triple(rng, 3, 1)
    assert reduce_triple(t, "theta2") is t
