"""Quadratic forms, variational constants, eigenstructure and conductance.

State functions are plain numpy vectors (one real value per state).  The two
quadratic forms measured against the stationary edge weights pi(x)P(x,y) are

    dirichlet_form:  (1/2) sum_xy pi(x)P(x,y) (phi(x) - phi(y))^2
    f_form:          (1/2) sum_xy pi(x)P(x,y) (phi(x) + phi(y))^2

and their infima over non-constant phi, normalised by the variance, are the
spectral constants returned by :func:`lambda_constants`.  For a reversible
chain these equal the gaps of the second-highest and lowest eigenvalues; for
any other chain they are computed on the additive reversibilization, whose
forms coincide with the original ones because both integrands are symmetric
under swapping x and y.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import Chain, classify, reversibilize
from .errors import DimensionMismatch, NotErgodic, NotReversible, TooLarge

#: brute-force conductance limit
MAX_CONDUCTANCE_STATES = 24


def _check_phi(chain: Chain, phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (chain.n,):
        raise DimensionMismatch(f"state function has shape {phi.shape}, chain has {chain.n} states")
    if not np.all(np.isfinite(phi)):
        raise DimensionMismatch("state function has non-finite entries")
    return phi


def dirichlet_form(chain: Chain, phi) -> float:
    """(1/2) sum over state pairs of pi(x)P(x,y)(phi(x) - phi(y))^2; >= 0."""
    phi = _check_phi(chain, phi)
    q = chain.pi[:, None] * chain.P
    d = phi[:, None] - phi[None, :]
    return 0.5 * float(np.sum(q * d * d))


def f_form(chain: Chain, phi) -> float:
    """(1/2) sum over state pairs of pi(x)P(x,y)(phi(x) + phi(y))^2; >= 0."""
    phi = _check_phi(chain, phi)
    q = chain.pi[:, None] * chain.P
    s = phi[:, None] + phi[None, :]
    return 0.5 * float(np.sum(q * s * s))


def variance(pi, phi) -> float:
    """Variance of phi under the distribution pi."""
    pi = np.asarray(pi, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if pi.shape != phi.shape:
        raise DimensionMismatch("pi and phi lengths differ")
    mu = float(pi @ phi)
    d = phi - mu
    return float(pi @ (d * d))


@dataclass(frozen=True)
class SpectralSummary:
    """Eigenstructure of the symmetrised matrix of a reversible chain.

    ``betas`` holds the (real) eigenvalues sorted descending, so
    ``betas[0] == 1``.  ``vectors[i]`` is the orthonormal left eigenvector of
    ``A = D P D^{-1}`` (D = diag(sqrt(pi))) for ``betas[i]``; the first one
    equals sqrt(pi) up to sign (fixed positive here).  ``beta_max`` is
    ``max(betas[1], |betas[-1]|)``.
    """

    betas: np.ndarray
    vectors: np.ndarray
    beta_max: float

    def to_dict(self) -> dict:
        return {
            "betas": [float(b) for b in self.betas],
            "vectors": [[float(v) for v in row] for row in self.vectors],
            "beta_max": float(self.beta_max),
        }


def eigendecompose(chain: Chain) -> SpectralSummary:
    """Symmetric eigensolve of A = D P D^{-1} for a reversible chain.

    Requires an irreducible, reversible chain (detailed balance within
    1e-12).  Eigenvalues come back sorted descending with orthonormal
    vectors; the leading vector's sign is fixed so it matches sqrt(pi).
    """
    cls = classify(chain)
    if not cls.irreducible:
        raise NotErgodic("eigendecompose requires an irreducible chain")
    if not cls.reversible:
        raise NotReversible("eigendecompose requires a reversible chain")
    d = np.sqrt(chain.pi)
    A = (d[:, None] / d[None, :]) * chain.P
    A = 0.5 * (A + A.T)  # kill the <=1e-12 asymmetry left by detailed balance
    w, V = np.linalg.eigh(A)
    order = np.argsort(w)[::-1]
    betas = w[order]
    vectors = np.ascontiguousarray(V[:, order].T)
    if vectors[0] @ d < 0:
        vectors[0] = -vectors[0]
    beta_max = float(max(betas[1], abs(betas[-1])))
    return SpectralSummary(betas=betas, vectors=vectors, beta_max=beta_max)


def lambda_constants(chain: Chain) -> tuple[float, float]:
    """The two variational spectral constants (gap from 1, gap from -1).

    Reversible chain: ``1 - betas[1]`` and ``1 + betas[-1]``.  Otherwise both
    are computed on the additive reversibilization, which has the same
    quadratic forms (asserted by the test suite, not assumed silently).
    """
    cls = classify(chain)
    if not cls.irreducible:
        raise NotErgodic("lambda_constants requires an irreducible chain")
    summary = eigendecompose(chain if cls.reversible else reversibilize(chain))
    lam1 = float(1.0 - summary.betas[1])
    lam_bottom = float(1.0 + summary.betas[-1])
    return lam1, lam_bottom


def reconstruct_power(summary: SpectralSummary, pi, n: int) -> np.ndarray:
    """n-step transition matrix rebuilt from the spectral data.

    Entry (j, k) is  pi(k) + sqrt(pi_k / pi_j) * sum_{i>=1} betas_i^n e_j^(i) e_k^(i).
    Matches the direct matrix power within 1e-9 for moderate n.
    """
    if n < 0:
        raise DimensionMismatch("n must be >= 0")
    pi = np.asarray(pi, dtype=float)
    B = summary.vectors[1:]
    coef = summary.betas[1:] ** n
    term = (B * coef[:, None]).T @ B
    root = np.sqrt(pi)
    return pi[None, :] + (root[None, :] / root[:, None]) * term


def conductance(chain: Chain) -> tuple[float, float, tuple[int, ...]]:
    """Exact conductance by brute force over cuts (N <= 24).

    For a cut S the conductance is the stationary flow from S to its
    complement divided by pi(S) pi(S-bar); under stationarity the flow is the
    same in both directions, which is asserted here to 1e-12.  Returns the
    minimum over cuts, the asymmetric variant (the same ratio additionally
    multiplied by pi(S-bar), minimised over cuts with pi(S) <= 1/2), and the
    minimising cut for the symmetric version (smallest bitmask on ties).
    """
    n = chain.n
    if n > MAX_CONDUCTANCE_STATES:
        raise TooLarge(f"conductance brute force is limited to {MAX_CONDUCTANCE_STATES} states")
    cls = classify(chain)
    if not cls.irreducible:
        raise NotErgodic("conductance requires an irreducible chain")

    Q = chain.pi[:, None] * chain.P
    pi = chain.pi
    best = np.inf
    best_asym = np.inf
    best_set: tuple[int, ...] = ()
    all_states = np.arange(n)
    # every unordered cut exactly once: enumerate subsets containing state 0
    for mask in range(0, (1 << (n - 1)) - 1):
        members = np.zeros(n, dtype=bool)
        members[0] = True
        m = mask
        while m:
            b = m & -m
            members[b.bit_length()] = True
            m ^= b
        idx = all_states[members]
        cidx = all_states[~members]
        cross = Q[np.ix_(idx, cidx)].sum()
        cross_back = Q[np.ix_(cidx, idx)].sum()
        if abs(cross - cross_back) > 1e-12:
            raise AssertionError(
                f"stationary cut flows disagree by {abs(cross - cross_back):.3e}"
            )
        pi_s = pi[idx].sum()
        pi_c = 1.0 - pi_s
        denom = pi_s * pi_c
        symmetric = (cross + cross_back) / (2.0 * denom)
        single = cross / denom
        if abs(symmetric - single) > 1e-12:
            raise AssertionError("symmetric and single-sum cut values disagree")
        if single < best:
            best = single
            best_set = tuple(int(i) for i in idx)
        if pi_s <= 0.5 + 1e-12:
            best_asym = min(best_asym, single * pi_c)
        if pi_c <= 0.5 + 1e-12:
            best_asym = min(best_asym, single * pi_s)
    return float(best), float(best_asym), best_set
