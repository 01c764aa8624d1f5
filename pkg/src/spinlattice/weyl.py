"""Direct Weyl function of a class-FG system, block decomposition of
W(0, lambda), and the summability diagnostic that defines the Weyl
function.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .config import DEFAULT, Tolerances
from .errors import AdmissibilityError, PoleError
from .lattice import LatticeState, generate
from .transfer import Transfer, j_power_factor
from .triples import ParameterTriple, TripleClass, validate

__all__ = [
    "WeylFunction",
    "weyl",
    "BlockDecomposition",
    "block_decomposition",
    "SummabilityReport",
    "summability_diagnostic",
    "lambda_grid",
]


@dataclass(frozen=True)
class WeylFunction:
    """phi(lambda) = i theta1* sigma0^{-1} (lambda I - beta)^{-1} theta2.

    For sigma0 = I this is the admissible-triple formula with
    beta = alpha - i theta2 theta2*; the general-sigma0 variant uses
    beta = alpha - i theta2 theta2* sigma0^{-1}.
    """

    beta: np.ndarray
    theta1: np.ndarray
    theta2: np.ndarray
    sigma0: np.ndarray

    @property
    def order(self):
        return self.beta.shape[0]

    @property
    def m(self):
        return self.theta1.shape[1]

    def __call__(self, lam, tol: Tolerances = DEFAULT):
        lam = complex(lam)
        eigs = np.linalg.eigvals(self.beta)
        dist = float(np.min(np.abs(eigs - lam))) if eigs.size else np.inf
        scale = max(1.0, float(np.linalg.norm(self.beta, 2)))
        if dist <= tol.pole_tol * scale:
            raise PoleError(f"lambda = {lam} is a pole of the Weyl function")
        # theta1* sigma0^{-1} via a Hermitian solve
        left = linalg.solve(self.sigma0, self.theta1, "sigma0").conj().T
        resolvent = linalg.solve(
            lam * np.eye(self.order, dtype=complex) - self.beta, self.theta2
        )
        return 1j * left @ resolvent


def weyl(triple: ParameterTriple, tol: Tolerances = DEFAULT):
    """Weyl function of the system generated by a triple.

    Accepts class FG triples (and FG-tilde, through the general-sigma0
    formula, which reduces to the FG formula when sigma0 = I).
    """
    report = validate(triple, tol)
    if report.triple_class in (TripleClass.INVALID, TripleClass.IDENTITY_ONLY):
        raise AdmissibilityError(
            f"triple of class {report.triple_class.value} has no Weyl function"
        )
    sigma_inv_t2 = linalg.solve(triple.sigma0, triple.theta2, "sigma0")
    beta = triple.alpha - 1j * triple.theta2 @ sigma_inv_t2.conj().T
    return WeylFunction(
        beta=beta,
        theta1=triple.theta1,
        theta2=triple.theta2,
        sigma0=triple.sigma0,
    )


@dataclass(frozen=True)
class BlockDecomposition:
    """The m x m blocks a, b, c, d of W(0, lambda)."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray


def block_decomposition(triple: ParameterTriple, lam, tol: Tolerances = DEFAULT,
                        state: LatticeState = None):
    """Split W(0, lambda) into its m x m blocks."""
    if state is None:
        state = generate(triple, n_max=0, tol=tol)
    w0 = Transfer(state, tol).w(0, lam)
    m = triple.m
    return BlockDecomposition(
        a=w0[:m, :m], b=w0[:m, m:], c=w0[m:, :m], d=w0[m:, m:]
    )


@dataclass(frozen=True)
class SummabilityReport:
    partial_sums: list
    is_cauchy: bool
    tail_increment: float
    column_identity_residual: float


def summability_diagnostic(triple: ParameterTriple, lam, n_terms=40,
                           phi=None, tol: Tolerances = DEFAULT,
                           cauchy_factor=1e-8, state: LatticeState = None,
                           overflow_limit=None):
    """Partial sums of sum_n ||W_n(lam) [phi; I]||_F^2.

    For the true Weyl function on Im(lam) < -1/2 the series converges; any
    other strictly proper candidate diverges.  ``phi`` may override the m x m
    value tested at ``lam`` (e.g. a perturbed candidate).  The Cauchy flag is
    a truncation heuristic: the increment over the last quarter of terms must
    stay below ``cauchy_factor`` times the first term.

    Also verifies the column identity
    W_n [phi; I] = ((lam + i)/lam)^n W(n, lam) [0; d(lam)^{-1}].
    """
    lam = complex(lam)
    if lam.imag >= -0.5:
        raise PoleError(
            f"summability is defined on Im(lambda) < -1/2, got {lam}"
        )
    if state is None:
        state = generate(triple, n_max=n_terms, tol=tol,
                         overflow_limit=overflow_limit)
    transfer = Transfer(state, tol)
    m = triple.m
    true_phi = weyl(triple, tol)(lam, tol)
    if phi is None:
        phi = true_phi
    stack = np.vstack([phi, np.eye(m, dtype=complex)])

    column_residual = 0.0
    if np.allclose(phi, true_phi):
        blocks = block_decomposition(triple, lam, tol)
        d_inv = linalg.inv(blocks.d, "d(lambda)")
        rhs_stack = np.vstack([np.zeros((m, m), dtype=complex), d_inv])
        for n in range(min(n_terms, 5) + 1):
            wn = transfer.fundamental(n, lam)
            rhs = ((lam + 1j) / lam) ** n * transfer.w(n, lam) @ rhs_stack
            column_residual = max(column_residual, linalg.frob(wn @ stack - rhs))

    partial = []
    total = 0.0
    first = None
    for n in range(n_terms):
        term = linalg.frob(transfer.fundamental(n, lam) @ stack) ** 2
        if first is None:
            first = term
        total += term
        partial.append(total)
    quarter = max(1, (3 * n_terms) // 4)
    tail = partial[-1] - partial[quarter - 1]
    is_cauchy = tail < cauchy_factor * max(first, np.finfo(float).tiny)
    return SummabilityReport(
        partial_sums=partial,
        is_cauchy=bool(is_cauchy),
        tail_increment=float(tail),
        column_identity_residual=float(column_residual),
    )


def lambda_grid(alpha, count=20, radius=None, center=0.0,
                tol: Tolerances = DEFAULT):
    """Sampling grid on a circle away from the spectrum of alpha.

    Default radius 2(1 + ||alpha||); points within the pole threshold of the
    spectrum are dropped.
    """
    alpha = np.asarray(alpha, dtype=complex)
    if radius is None:
        radius = 2.0 * (1.0 + float(np.linalg.norm(alpha, 2)))
    eigs = np.linalg.eigvals(alpha)
    scale = max(1.0, float(np.linalg.norm(alpha, 2)))
    pts = []
    for k in range(count):
        lam = complex(center) + radius * np.exp(2j * np.pi * (k + 0.37) / count)
        if eigs.size and np.min(np.abs(eigs - lam)) <= 10 * tol.pole_tol * scale:
            continue
        pts.append(lam)
    return pts
