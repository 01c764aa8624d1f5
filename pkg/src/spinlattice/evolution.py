"""Time-dependent triples and explicit solutions of the isotropic
Heisenberg magnet lattice: Lambda_0(t), Sigma_0(t), spin vectors, the Lax
pair with its V = H equality, and residual checks for the zero-curvature
and IHM equations.

IHM semantics are fixed to 2x2 spin matrices (m = 1); the time evolution of
Lambda_0 and Sigma_0 is implemented for general m.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import linalg
from .config import DEFAULT, Tolerances
from .errors import DegeneracyError, DimensionError, NumericError, SpectrumError
from .lattice import generate
from .transfer import Transfer
from .triples import ParameterTriple, projectors, signature_matrix
from .weyl import WeylFunction

__all__ = [
    "evolve_lambda0",
    "lambda_n_at",
    "evolve_sigma0",
    "triple_at",
    "state_at",
    "SpinVector",
    "spin_vector",
    "spin_evolution",
    "LaxPair",
    "lax_pair",
    "zero_curvature_residual",
    "ihm_residual",
    "weyl_evolution",
    "positivity_interval",
    "monodromy_residual",
]


def _check_spectrum(triple, tol, need_zero=True):
    spec = linalg.spectrum(triple.alpha, tol)
    if spec.contains_plus_i or spec.contains_minus_i:
        raise SpectrumError(
            "time evolution requires +/-i not in the spectrum of alpha",
            eigenvalue=1j if spec.contains_plus_i else -1j,
        )
    if need_zero and spec.contains_zero:
        raise SpectrumError(
            "time evolution requires alpha invertible", eigenvalue=0.0
        )
    return spec


def _exp_factors(alpha, t):
    """e^{-2t(alpha - iI)^{-1}} and e^{-2t(alpha + iI)^{-1}}."""
    i_n = np.eye(alpha.shape[0], dtype=complex)
    e_minus = scipy.linalg.expm(-2.0 * t * linalg.inv(alpha - 1j * i_n))
    e_plus = scipy.linalg.expm(-2.0 * t * linalg.inv(alpha + 1j * i_n))
    return e_minus, e_plus


def evolve_lambda0(triple: ParameterTriple, t, tol: Tolerances = DEFAULT):
    """Lambda_0(t) = [e^{-2t(a - iI)^{-1}} theta1, e^{-2t(a + iI)^{-1}} theta2]."""
    _check_spectrum(triple, tol, need_zero=False)
    e_minus, e_plus = _exp_factors(triple.alpha, t)
    return np.hstack([e_minus @ triple.theta1, e_plus @ triple.theta2])


def lambda_n_at(triple: ParameterTriple, n, t, tol: Tolerances = DEFAULT):
    """Closed-form Lambda_n(t): lattice powers applied to Lambda_0(t)."""
    _check_spectrum(triple, tol)
    a_inv = linalg.inv(triple.alpha, "alpha")
    i_n = np.eye(triple.order, dtype=complex)
    e_minus, e_plus = _exp_factors(triple.alpha, t)
    plus = np.linalg.matrix_power(i_n + 1j * a_inv, n)
    minus = np.linalg.matrix_power(i_n - 1j * a_inv, n)
    return np.hstack([
        plus @ e_minus @ triple.theta1,
        minus @ e_plus @ triple.theta2,
    ])


def _sigma_rhs(alpha, sigma, lam, j):
    """Right-hand side of the Sigma_0 evolution equation."""
    i_n = np.eye(alpha.shape[0], dtype=complex)
    r_minus = linalg.inv(alpha - 1j * i_n)
    r_plus = linalg.inv(alpha + 1j * i_n)
    sq = linalg.inv(alpha @ alpha + i_n)
    core = lam @ j @ lam.conj().T
    term = sq @ (alpha @ core + core @ alpha.conj().T) @ sq.conj().T
    return -(
        r_minus @ sigma
        + r_plus @ sigma
        + sigma @ r_plus.conj().T
        + sigma @ r_minus.conj().T
        + 2.0 * term
    )


def evolve_sigma0(triple: ParameterTriple, t, method="sylvester",
                  rk_step=1e-3, tol: Tolerances = DEFAULT):
    """Sigma_0(t), by the algebraic route or by integrating the flow.

    ``sylvester``: unique solution of a Sig - Sig a* = i Lam0(t) Lam0(t)*
    (requires the spectrum of alpha strictly inside the upper half plane).
    ``ode``: fixed-step RK4 on the Sigma_0 flow from Sigma_0(0).
    Both results are symmetrized.
    """
    if method == "sylvester":
        spec = _check_spectrum(triple, tol, need_zero=False)
        if spec.min_imag_part <= tol.spec_tol:
            raise SpectrumError(
                "sylvester route needs the spectrum of alpha strictly in the "
                "open upper half plane"
            )
        lam_t = evolve_lambda0(triple, t, tol)
        sigma, _ = linalg.sigma_from_identity(triple.alpha, lam_t, tol)
        return sigma
    if method != "ode":
        raise ValueError(f"unknown method {method!r}")
    _check_spectrum(triple, tol, need_zero=False)
    j = signature_matrix(triple.m)
    alpha = triple.alpha
    steps = max(1, int(np.ceil(abs(t) / rk_step)))
    h = t / steps
    sigma = triple.sigma0.copy()
    s = 0.0
    for _ in range(steps):
        k1 = _sigma_rhs(alpha, sigma, evolve_lambda0(triple, s, tol), j)
        k2 = _sigma_rhs(alpha, sigma + h / 2 * k1,
                        evolve_lambda0(triple, s + h / 2, tol), j)
        k3 = _sigma_rhs(alpha, sigma + h / 2 * k2,
                        evolve_lambda0(triple, s + h / 2, tol), j)
        k4 = _sigma_rhs(alpha, sigma + h * k3,
                        evolve_lambda0(triple, s + h, tol), j)
        sigma = sigma + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        s += h
    return linalg.herm(sigma)


def triple_at(triple: ParameterTriple, t, method="sylvester",
              tol: Tolerances = DEFAULT):
    """The parameter triple carrying Lambda_0(t) and Sigma_0(t)."""
    if t == 0:
        return triple
    lam_t = evolve_lambda0(triple, t, tol)
    m = triple.m
    sigma_t = evolve_sigma0(triple, t, method=method, tol=tol)
    return ParameterTriple(
        alpha=triple.alpha,
        theta1=lam_t[:, :m],
        theta2=lam_t[:, m:],
        sigma0=sigma_t,
    )


def state_at(triple: ParameterTriple, t, n_max, method="sylvester",
             tol: Tolerances = DEFAULT, overflow_limit=None):
    return generate(triple_at(triple, t, method, tol), n_max=n_max, tol=tol,
                    overflow_limit=overflow_limit)


@dataclass(frozen=True)
class SpinVector:
    s1: float
    s2: float
    s3: float

    def as_array(self):
        return np.array([self.s1, self.s2, self.s3])

    @property
    def norm(self):
        return float(np.linalg.norm(self.as_array()))


def spin_vector(s, tol: Tolerances = DEFAULT, norm_tol=1e-9):
    """Extract (s1, s2, s3) from a 2x2 spin matrix.

    s3 is the (1,1) entry, s1 + i s2 the (2,1) entry.  Enforces the unit
    norm and rejects S ~ +/- I (the degenerate poles of the IHM equation).
    """
    s = linalg.as_matrix(s, "spin matrix")
    if s.shape != (2, 2):
        raise DimensionError(f"spin matrix must be 2x2, got {s.shape}")
    i2 = np.eye(2)
    if min(linalg.frob(s - i2), linalg.frob(s + i2)) < tol.degeneracy_tol:
        raise DegeneracyError("spin matrix degenerates to +/- I")
    vec = SpinVector(
        s1=float(s[1, 0].real), s2=float(s[1, 0].imag), s3=float(s[0, 0].real)
    )
    if abs(vec.norm - 1.0) > norm_tol:
        raise NumericError(
            f"spin vector norm {vec.norm} deviates from 1 beyond {norm_tol}"
        )
    return vec


def _require_ihm(triple):
    if triple.m != 1:
        raise DimensionError(
            f"IHM semantics require 2x2 spin matrices (m = 1), got m = {triple.m}"
        )


def spin_evolution(triple: ParameterTriple, n, t, method="sylvester",
                   tol: Tolerances = DEFAULT):
    """(S_n(t), spin vector) from the time-t triple."""
    _require_ihm(triple)
    state = state_at(triple, t, n_max=n + 1, method=method, tol=tol)
    s = state.spins[n]
    return s, spin_vector(s, tol)


def _spin_vectors(state, tol):
    return [spin_vector(s, tol) for s in state.spins]


@dataclass(frozen=True)
class LaxPair:
    g: np.ndarray               # G_n(t, lambda)
    f: np.ndarray               # F_n(t, lambda)
    v_plus: np.ndarray
    v_minus: np.ndarray
    h_plus: np.ndarray
    h_minus: np.ndarray
    equality_plus: float        # ||V+ - H+||
    equality_minus: float
    trace_v_plus: complex
    trace_v_minus: complex


def _v_pair(vectors, spins, n, tol: Tolerances):
    dot = float(np.dot(vectors[n - 1].as_array(), vectors[n].as_array()))
    denom = 1.0 + dot
    if abs(denom) < tol.degeneracy_tol:
        raise DegeneracyError(
            f"1 + s_{n - 1}.s_{n} = {denom:.3e} vanishes; V_n undefined"
        )
    i2 = np.eye(2, dtype=complex)
    v_plus = (i2 + spins[n]) @ (i2 + spins[n - 1]) / denom
    v_minus = (i2 - spins[n]) @ (i2 - spins[n - 1]) / denom
    return v_plus, v_minus


def lax_pair(triple: ParameterTriple, n, t, lam, method="sylvester",
             tol: Tolerances = DEFAULT):
    """Lax pair at site n and time t, with the V = H equality report.

    H_n^+ = 2 W(n, i) P_+ W(n, -i)*, H_n^- = 2 W(n, -i) P_- W(n, i)*.
    Requires n >= 1 (V_n involves S_{n-1}).
    """
    _require_ihm(triple)
    if n < 1:
        raise ValueError("lax_pair needs n >= 1 (V_n involves S_{n-1})")
    lam = complex(lam)
    state = state_at(triple, t, n_max=n + 1, method=method, tol=tol)
    vectors = _spin_vectors(state, tol)
    v_plus, v_minus = _v_pair(vectors, state.spins, n, tol)
    transfer = Transfer(state, tol)
    p_plus, p_minus = projectors(1)
    h_plus = 2.0 * transfer.w(n, 1j) @ p_plus @ transfer.w(n, -1j).conj().T
    h_minus = 2.0 * transfer.w(n, -1j) @ p_minus @ transfer.w(n, 1j).conj().T
    g = np.eye(2, dtype=complex) - (1j / lam) * state.spins[n]
    f = v_plus / (lam - 1j) + v_minus / (lam + 1j)
    return LaxPair(
        g=g,
        f=f,
        v_plus=v_plus,
        v_minus=v_minus,
        h_plus=h_plus,
        h_minus=h_minus,
        equality_plus=linalg.frob(v_plus - h_plus),
        equality_minus=linalg.frob(v_minus - h_minus),
        trace_v_plus=complex(np.trace(v_plus)),
        trace_v_minus=complex(np.trace(v_minus)),
    )


def _g_matrix(spins, n, lam):
    return np.eye(2, dtype=complex) - (1j / lam) * spins[n]


def _f_matrix(vectors, spins, n, lam, tol):
    v_plus, v_minus = _v_pair(vectors, spins, n, tol)
    return v_plus / (lam - 1j) + v_minus / (lam + 1j)


def zero_curvature_residual(triple: ParameterTriple, n, t, lam, h_t=1e-4,
                            method="sylvester", tol: Tolerances = DEFAULT):
    """|| dG_n/dt - (F_{n+1} G_n - G_n F_n) || with a central difference.

    Exact zero curvature makes this O(h_t^2).  Needs n >= 1 and sites up to
    n + 1.
    """
    _require_ihm(triple)
    if n < 1:
        raise ValueError("zero-curvature check needs n >= 1")
    lam = complex(lam)
    if lam == 0 or abs(lam - 1j) < tol.degeneracy_tol or abs(lam + 1j) < tol.degeneracy_tol:
        raise SpectrumError("lambda must avoid {0, i, -i}")
    state = state_at(triple, t, n_max=n + 2, method=method, tol=tol)
    vectors = _spin_vectors(state, tol)
    g_mid = _g_matrix(state.spins, n, lam)
    f_n = _f_matrix(vectors, state.spins, n, lam, tol)
    f_n1 = _f_matrix(vectors, state.spins, n + 1, lam, tol)
    plus = state_at(triple, t + h_t, n_max=n + 1, method=method, tol=tol)
    minus = state_at(triple, t - h_t, n_max=n + 1, method=method, tol=tol)
    dg = (_g_matrix(plus.spins, n, lam) - _g_matrix(minus.spins, n, lam)) / (2 * h_t)
    return linalg.frob(dg - (f_n1 @ g_mid - g_mid @ f_n))


def ihm_residual(triple: ParameterTriple, n, t, h_t=1e-4, method="sylvester",
                 tol: Tolerances = DEFAULT):
    """Residual of the IHM lattice equation at site n, central difference in t:

    ds_n/dt = 2 s_n x ( s_{n+1} / (1 + s_n.s_{n+1})
                        + s_{n-1} / (1 + s_{n-1}.s_n) ).
    """
    _require_ihm(triple)
    if n < 1:
        raise ValueError("the IHM site equation needs n >= 1 (boundary has no S_{n-1})")
    state = state_at(triple, t, n_max=n + 2, method=method, tol=tol)
    vectors = [v.as_array() for v in _spin_vectors(state, tol)]
    s_prev, s_mid, s_next = vectors[n - 1], vectors[n], vectors[n + 1]
    d_next = 1.0 + float(np.dot(s_mid, s_next))
    d_prev = 1.0 + float(np.dot(s_prev, s_mid))
    if min(abs(d_next), abs(d_prev)) < tol.degeneracy_tol:
        raise DegeneracyError("vanishing 1 + s.s denominator in the IHM equation")
    rhs = 2.0 * np.cross(s_mid, s_next / d_next + s_prev / d_prev)
    plus = state_at(triple, t + h_t, n_max=n + 1, method=method, tol=tol)
    minus = state_at(triple, t - h_t, n_max=n + 1, method=method, tol=tol)
    dvec = (
        spin_vector(plus.spins[n], tol).as_array()
        - spin_vector(minus.spins[n], tol).as_array()
    ) / (2 * h_t)
    return float(np.linalg.norm(dvec - rhs))


def weyl_evolution(triple: ParameterTriple, t, method="sylvester",
                   tol: Tolerances = DEFAULT):
    """Weyl function at time t from the explicit evolution formula.

    phi(t, lam) = i theta1* E_-* Sigma_0(t)^{-1} (lam I - beta(t))^{-1} E_+ theta2
    with E_-* = (e^{-2t(a - iI)^{-1}})*, E_+ = e^{-2t(a + iI)^{-1}} and
    beta(t) = a - i E_+ theta2 theta2* E_+* Sigma_0(t)^{-1}.
    """
    _check_spectrum(triple, tol, need_zero=False)
    sigma_t = evolve_sigma0(triple, t, method=method, tol=tol)
    e_minus, e_plus = _exp_factors(triple.alpha, t)
    theta1_t = e_minus @ triple.theta1
    theta2_t = e_plus @ triple.theta2
    beta_t = triple.alpha - 1j * theta2_t @ theta2_t.conj().T @ linalg.inv(sigma_t)
    return WeylFunction(
        beta=beta_t, theta1=theta1_t, theta2=theta2_t, sigma0=sigma_t
    )


def positivity_interval(triple: ParameterTriple, t_max=5.0, step=0.05,
                        min_eig=1e-10, method="sylvester",
                        tol: Tolerances = DEFAULT):
    """Empirical positivity interval of Sigma_0(t) around t = 0.

    Marches outward in both directions until the minimal eigenvalue drops
    below ``min_eig`` (or ``t_max`` is reached); returns the last good
    bracketing times ``(t_minus, t_plus)``.
    """
    edges = []
    for sign in (-1.0, 1.0):
        good = 0.0
        steps = int(np.floor(t_max / step))
        for k in range(1, steps + 1):
            t = sign * k * step
            try:
                sigma = evolve_sigma0(triple, t, method=method, tol=tol)
                if np.linalg.eigvalsh(sigma)[0] < min_eig:
                    break
            except Exception:
                break
            good = t
        edges.append(good)
    return edges[0], edges[1]


def monodromy_residual(triple: ParameterTriple, n, t, lam,
                       method="sylvester", tol: Tolerances = DEFAULT):
    """Residual of the discrete half of the auxiliary linear system for the
    normalized family

    What_n = lam^{-n} W(n, t, lam) diag((lam - i)^n e^{2t/(lam - i)} I_m,
                                        (lam + i)^n e^{2t/(lam + i)} I_m):

    returns ||What_{n+1} - G_n What_n||_F.
    """
    lam = complex(lam)
    if lam == 0 or lam == 1j or lam == -1j:
        raise SpectrumError("lambda must avoid {0, i, -i}")
    state = state_at(triple, t, n_max=n + 1, method=method, tol=tol)
    transfer = Transfer(state, tol)
    m = triple.m

    def what(k):
        d = np.zeros((2 * m, 2 * m), dtype=complex)
        d[:m, :m] = (lam - 1j) ** k * np.exp(2 * t / (lam - 1j)) * np.eye(m)
        d[m:, m:] = (lam + 1j) ** k * np.exp(2 * t / (lam + 1j)) * np.eye(m)
        return lam ** (-k) * transfer.w(k, lam) @ d

    g = np.eye(2 * m, dtype=complex) - (1j / lam) * state.spins[n]
    return linalg.frob(what(n + 1) - g @ what(n))
