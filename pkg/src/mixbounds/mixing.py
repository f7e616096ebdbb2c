"""Total-variation distance, exact mixing times, and continuization.

Discrete mixing times are found by iterating the distribution one step at a
time (never materialising matrix powers), relying on the fact that the
distance to stationarity is non-increasing; that monotonicity is re-checked
at every step so a violation surfaces as a bug rather than a wrong answer.
The continuized chain has rate matrix Q = P - I and distribution
``v expm(Q t)``; its mixing time is found by doubling and bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import Chain, classify
from .errors import BadEpsilon, BadParams, DimensionMismatch, NoConvergence, NotErgodic, NotIrreducible

MAX_DISCRETE_STEPS = 1_000_000
MAX_PROFILE_STEPS = 10_000
MONOTONE_TOL = 1e-12
#: continuous-time probes may disagree by at most this (matrix exponential noise)
MONOTONE_TOL_CONTINUOUS = 1e-10
BISECTION_REL = 1e-6


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not (0.0 < eps < 1.0):
        raise BadEpsilon(f"epsilon must lie in (0, 1), got {eps}")
    if eps < 1e-12:
        raise BadEpsilon("epsilon below 1e-12 is numerically meaningless")
    return eps


def tv_distance(theta1, theta2) -> float:
    """Total-variation distance: half the l1 distance between the vectors.

    Cross-checked against the worst-event form (the sum of positive parts of
    the difference); for genuine distributions the two are equal up to half
    the difference of the totals.
    """
    t1 = np.asarray(theta1, dtype=float)
    t2 = np.asarray(theta2, dtype=float)
    if t1.shape != t2.shape:
        raise DimensionMismatch("distributions have different lengths")
    d = t1 - t2
    half_l1 = 0.5 * float(np.abs(d).sum())
    positive_part = float(d[d > 0].sum())
    slack = 1e-12 + 0.5 * abs(float(d.sum()))
    if abs(half_l1 - positive_part) > slack:
        raise AssertionError("half-l1 and worst-event forms of TV disagree")
    return half_l1


@dataclass(frozen=True)
class MixingResult:
    """Outcome of a mixing-time computation.

    ``from_state`` is a state index, or None for the worst case over all
    starts.  ``time`` is an integer step count for discrete chains and a real
    for continuized ones; ``achieved_tv`` is the distance actually attained
    at that time (always <= epsilon).
    """

    from_state: int | None
    epsilon: float
    time: int | float
    achieved_tv: float


def _start_matrix(chain: Chain, x: int | None) -> np.ndarray:
    if x is None:
        return np.eye(chain.n)
    x = chain.index(x)
    v = np.zeros((1, chain.n))
    v[0, x] = 1.0
    return v


def _rows_tv(rows: np.ndarray, pi: np.ndarray) -> float:
    return float(0.5 * np.abs(rows - pi[None, :]).sum(axis=1).max())


def discrete_mixing_time(chain: Chain, x, eps, max_steps: int = MAX_DISCRETE_STEPS) -> MixingResult:
    """Smallest t > 0 with TV(P^t(x, .), pi) <= eps, by row iteration.

    ``x`` may be a state index/label or None for the worst case over all
    starting states.  Raises NoConvergence after ``max_steps`` steps, which
    signals near-periodicity or an epsilon below reach.
    """
    eps = _check_eps(eps)
    cls = classify(chain)
    if not cls.ergodic:
        raise NotErgodic("discrete mixing time requires an ergodic chain")
    x_idx = None if x is None else chain.index(x)
    rows = _start_matrix(chain, x_idx)
    prev = _rows_tv(rows, chain.pi)
    for t in range(1, max_steps + 1):
        rows = rows @ chain.P
        cur = _rows_tv(rows, chain.pi)
        if cur > prev + MONOTONE_TOL:
            raise AssertionError(
                f"TV to stationarity increased at step {t}: {prev!r} -> {cur!r}"
            )
        prev = cur
        if cur <= eps:
            return MixingResult(from_state=x_idx, epsilon=eps, time=t, achieved_tv=cur)
    raise NoConvergence(f"no mixing within {max_steps} steps (TV still {prev:.3e})")


def d_profile(chain: Chain, t_max: int) -> list[float]:
    """Worst-start TV profile d(t) = max_j TV(P^t(j, .), pi) for t = 1 .. t_max."""
    if t_max > MAX_PROFILE_STEPS:
        raise BadParams(f"t_max is capped at {MAX_PROFILE_STEPS}")
    cls = classify(chain)
    if not cls.ergodic:
        raise NotErgodic("d_profile requires an ergodic chain")
    rows = np.eye(chain.n)
    out = []
    for _ in range(t_max):
        rows = rows @ chain.P
        out.append(_rows_tv(rows, chain.pi))
    return out


def matrix_exponential(Q, t: float) -> np.ndarray:
    """expm(Q t) by scaling and squaring with a truncated Taylor series.

    Q is expected to be a transition rate matrix (P - I for a stochastic P),
    so the result is again row-stochastic; this is verified before returning.
    The argument is scaled until its induced 1-norm is at most 1/2, the
    series is summed until the next term drops below 1e-16, and the result is
    squared back up.
    """
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise DimensionMismatch("rate matrix must be square")
    if t < 0:
        raise BadParams("time must be nonnegative")
    n = Q.shape[0]
    X = Q * float(t)
    norm = float(np.linalg.norm(X, 1))
    s = 0 if norm <= 0.5 else int(np.ceil(np.log2(norm / 0.5)))
    X = X / (2.0**s)
    E = np.eye(n)
    term = np.eye(n)
    k = 1
    while True:
        term = term @ X / k
        E = E + term
        if float(np.abs(term).max()) < 1e-16 or k > 64:
            break
        k += 1
    for _ in range(s):
        E = E @ E
    row_err = float(np.abs(E.sum(axis=1) - 1.0).max())
    if row_err > 1e-9 or float(E.min()) < -1e-12:
        raise AssertionError(f"matrix exponential lost stochasticity (row err {row_err:.3e})")
    return E


def _continuous_tv(chain: Chain, x_idx: int | None, t: float) -> float:
    E = matrix_exponential(chain.P - np.eye(chain.n), t)
    rows = E if x_idx is None else E[x_idx : x_idx + 1]
    rows = np.where(rows < 0.0, 0.0, rows)  # clamp the <=1e-12 negatives
    return _rows_tv(rows, chain.pi)


def continuous_mixing_time(chain: Chain, x, eps) -> MixingResult:
    """Mixing time of the continuized chain (rate matrix P - I).

    Only irreducibility is required: continuization removes periodicity.  The
    crossing time is bracketed by doubling until the distance falls below
    eps/2 and then bisected to absolute precision 1e-6 (relative for large
    times); the returned time is the safe side of the bracket.  The distance
    is checked to be non-increasing across all probe points.
    """
    eps = _check_eps(eps)
    cls = classify(chain)
    if not cls.irreducible:
        raise NotIrreducible("continuization needs an irreducible chain")
    x_idx = None if x is None else chain.index(x)

    probes: list[tuple[float, float]] = []

    def probe(t: float) -> float:
        val = _continuous_tv(chain, x_idx, t)
        probes.append((t, val))
        return val

    if probe(0.0) <= eps:
        return MixingResult(from_state=x_idx, epsilon=eps, time=0.0, achieved_tv=probes[0][1])
    hi = 1.0
    while probe(hi) > 0.5 * eps:
        hi *= 2.0
        if hi > 2.0**60:
            raise NoConvergence("continuized chain failed to mix (internal bug)")
    lo = 0.0
    hi_tv = probes[-1][1]
    while hi - lo > BISECTION_REL * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        val = probe(mid)
        if val <= eps:
            hi, hi_tv = mid, val
        else:
            lo = mid
    probes.sort()
    for (t1, v1), (t2, v2) in zip(probes, probes[1:]):
        if t2 > t1 and v2 > v1 + MONOTONE_TOL_CONTINUOUS:
            raise AssertionError(
                f"continuous TV increased between t={t1} and t={t2} ({v1!r} -> {v2!r})"
            )
    return MixingResult(from_state=x_idx, epsilon=eps, time=float(hi), achieved_tv=hi_tv)
