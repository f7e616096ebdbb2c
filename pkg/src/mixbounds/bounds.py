"""Catalogue of mixing-time, spectral-gap and conductance bounds, with verdicts.

Every bound in the catalogue is evaluated next to the exactly computed
quantity it constrains, and the report records whether it holds.  The exact
side always comes from the mixing module (step iteration, bisection on the
continuized chain), never from spectral formulas, so the two sides of each
inequality stay independent.

Entry identifiers (T5, C6, T7, T8, I5, T10, O13, O14, O16, T17, T18, T19,
C20d/C20c, T22, T23, T24c/T24d, T25, T26) are stable tokens used in the JSON
report; the suffixes c/d distinguish continuous- and discrete-time variants
of the same bound.  Non-applicability is data, not an error: a report on a
periodic chain, or with a flow of the wrong kind, simply carries the gating
reason for the affected entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chains import Chain, classify, lazy, multiply, time_reversal
from .errors import (
    BadDelta,
    InvalidFlow,
    MixboundsError,
    NotErgodic,
    NotIrreducible,
    NotReversible,
    StationaryMismatch,
    WrongFlowBase,
)
from .flows import Flow, edge_congestion, validate_flow
from .mixing import continuous_mixing_time, discrete_mixing_time, _check_eps
from .spectral import MAX_CONDUCTANCE_STATES, conductance, eigendecompose, lambda_constants

#: bound-vs-exact comparisons allow this much slack
HOLD_TOL = 1e-9
#: the constant (1/2 - 1/2e) appearing in the conductance bounds
GAP_CONST = 0.5 - 0.5 / math.e
#: default comparison delta; at this value the log factor equals one
DELTA_DEFAULT = 0.5 / math.e
#: deltas evaluated when a sweep is requested
DELTA_SWEEP = (DELTA_DEFAULT, 0.1, 0.05, 0.01)

CATALOG = (
    "T5", "C6", "T7", "T8", "I5", "T10", "O13", "O14", "O16",
    "T17", "T18", "T19", "C20d", "C20c", "T22", "T23",
    "T24c", "T24d", "T25", "T26",
)

_DIRECTION = {
    "T5": "lower", "C6": "lower", "T7": "upper", "T8": "upper", "I5": "upper",
    "T10": "upper", "O13": "upper", "O14": "upper", "O16": "upper",
    "T17": "lower", "T18": "lower", "T19": "lower", "C20d": "lower",
    "C20c": "lower", "T22": "upper", "T23": "upper", "T24c": "upper",
    "T24d": "upper", "T25": "upper", "T26": "upper",
}

_QUANTITY = {
    "T5": "worst-start discrete mixing time",
    "C6": "worst-start discrete mixing time at 1/(2e)",
    "T7": "discrete mixing time from x",
    "T8": "discrete mixing time from x",
    "I5": "discrete mixing time from x",
    "T10": "discrete mixing time from x",
    "O13": "discrete mixing time from x",
    "O14": "discrete mixing time from x of the lazy chain",
    "O16": "spectral gap",
    "T17": "conductance",
    "T18": "conductance",
    "T19": "spectral gap",
    "C20d": "spectral gap",
    "C20c": "spectral gap",
    "T22": "continuous mixing time from x",
    "T23": "discrete mixing time from x",
    "T24c": "continuous mixing time from x",
    "T24d": "continuous mixing time from x",
    "T25": "discrete mixing time from x",
    "T26": "continuous mixing time from x",
}


@dataclass(frozen=True)
class BoundEntry:
    theorem: str
    direction: str
    quantity: str
    bound: float | None
    exact: float | None
    applicable: bool
    holds: bool | None
    reason: str | None

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "direction": self.direction,
            "quantity": self.quantity,
            "bound": self.bound,
            "exact": self.exact,
            "holds": self.holds,
            "applicable": self.applicable,
            "reason": self.reason,
        }


def _entry(tid: str, bound: float, exact: float) -> BoundEntry:
    if not (math.isfinite(bound) and math.isfinite(exact)):
        raise AssertionError(f"entry {tid}: non-finite bound or exact value")
    if _DIRECTION[tid] == "lower":
        holds = bound <= exact + HOLD_TOL
    else:
        holds = bound >= exact - HOLD_TOL
    return BoundEntry(tid, _DIRECTION[tid], _QUANTITY[tid], float(bound), float(exact), True, holds, None)


def _skip(tid: str, reason: str) -> BoundEntry:
    return BoundEntry(tid, _DIRECTION[tid], _QUANTITY[tid], None, None, False, None, reason)


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if not 0.0 < delta < 0.5:
        raise BadDelta(f"delta must lie in (0, 1/2), got {delta}")
    return delta


def _mix_factor(tau_prime: float, delta: float) -> float:
    """tau'(delta) / ln(1/(2 delta)) + 1, the slowdown factor of the comparison."""
    return tau_prime / math.log(1.0 / (2.0 * delta)) + 1.0


def _log_term(eps: float, pi_x: float) -> float:
    return math.log(1.0 / (eps * pi_x))


def _log_term_sq(eps: float, pi_x: float) -> float:
    return math.log(1.0 / (eps * eps * pi_x))


def _same_chain(a: Chain, b: Chain) -> bool:
    return (
        a.n == b.n
        and float(np.abs(a.P - b.P).max()) <= 1e-12
        and float(np.abs(a.pi - b.pi).max()) <= 1e-12
    )


def spectral_bounds_reversible(chain: Chain, x, eps: float) -> list[BoundEntry]:
    """Eigenvalue bounds for a reversible ergodic chain.

    Lower bounds the worst-start mixing time by ``bm/(1-bm) ln(1/(2 eps))``
    (T5; at eps = 1/(2e) the log factor is one, C6) and upper bounds the
    mixing time from x by ``ln(1/(eps pi(x))) / (1 - bm)`` (T7), where bm is
    the largest nontrivial eigenvalue modulus.
    """
    eps = _check_eps(eps)
    cls = classify(chain)
    if not cls.reversible:
        raise NotReversible("spectral mixing bounds need a reversible chain")
    if not cls.ergodic:
        raise NotErgodic("spectral mixing bounds need an ergodic chain")
    x = chain.index(x)
    bm = eigendecompose(chain).beta_max
    entries = []
    if eps < 0.5:
        exact_worst = discrete_mixing_time(chain, None, eps).time
        entries.append(_entry("T5", bm / (1.0 - bm) * math.log(1.0 / (2.0 * eps)), exact_worst))
    else:
        entries.append(_skip("T5", "eps >= 1/2 makes the lower bound vacuous"))
    exact_worst_e = discrete_mixing_time(chain, None, DELTA_DEFAULT).time
    entries.append(_entry("C6", bm / (1.0 - bm), exact_worst_e))
    exact_x = discrete_mixing_time(chain, x, eps).time
    entries.append(_entry("T7", _log_term(eps, chain.pi[x]) / (1.0 - bm), exact_x))
    return entries


def comparison_reversible(
    base: Chain,
    target: Chain,
    flow: Flow,
    x,
    eps: float,
    delta: float = DELTA_DEFAULT,
    sweep: bool = False,
) -> list[BoundEntry]:
    """Comparison bounds between two reversible ergodic chains sharing pi.

    The flow's congestion transfers the target's mixing time to the base
    chain.  The odd-flow bound (T8) and its default-delta form (I5) gate on
    the flow being odd; the even-spectrum variant (T10) applies to any flow
    when the base's largest eigenvalue modulus is the second eigenvalue;
    O13 trades oddness for a positive floor on self-loops, and O14 bounds the
    lazy chain instead.  With ``sweep`` the delta-dependent bounds report
    their minimum over ``DELTA_SWEEP``.
    """
    eps = _check_eps(eps)
    delta = _check_delta(delta)
    for c, who in ((base, "base"), (target, "target")):
        cls = classify(c)
        if not cls.reversible:
            raise NotReversible(f"{who} chain is not reversible")
        if not cls.ergodic:
            raise NotErgodic(f"{who} chain is not ergodic")
    if not _same_chain(flow.base, base) or not _same_chain(flow.target, target):
        raise WrongFlowBase("flow does not connect the given base and target chains")
    valid, odd, violations = validate_flow(flow)
    if not valid:
        raise InvalidFlow("; ".join(violations[:5]))
    x = base.index(x)
    _, A = edge_congestion(flow)
    log_term = _log_term(eps, base.pi[x])
    deltas = sorted(set(DELTA_SWEEP) | {delta}) if sweep else [delta]
    factors = [_mix_factor(discrete_mixing_time(target, None, d).time, d) for d in deltas]
    best_factor = min(factors)
    tau_prime_e = discrete_mixing_time(target, None, DELTA_DEFAULT).time
    exact_x = discrete_mixing_time(base, x, eps).time

    entries = []
    if odd:
        entries.append(_entry("T8", A * best_factor * log_term, exact_x))
        entries.append(_entry("I5", A * (tau_prime_e + 1.0) * log_term, exact_x))
    else:
        entries.append(_skip("T8", "flow is not odd"))
        entries.append(_skip("I5", "flow is not odd"))

    summary = eigendecompose(base)
    if summary.betas[1] >= abs(summary.betas[-1]) - 1e-12:
        entries.append(_entry("T10", A * best_factor * log_term, exact_x))
    else:
        entries.append(_skip("T10", "largest eigenvalue modulus is the negative end"))

    c = classify(base).min_self_loop
    if c > 0.0:
        bound = max(A * best_factor, 1.0 / (2.0 * c)) * log_term
        entries.append(_entry("O13", bound, exact_x))
    else:
        entries.append(_skip("O13", "some state has no self-loop"))

    lazy_exact = discrete_mixing_time(lazy(base), x, eps).time
    entries.append(_entry("O14", 2.0 * A * (tau_prime_e + 1.0) * log_term, lazy_exact))
    return entries


def conductance_bounds(
    chain: Chain,
    discrete_tau: float | None,
    continuous_tau: float | None,
) -> list[BoundEntry]:
    """Cut bounds: conductance vs mixing time, and the gap sandwich.

    ``discrete_tau`` / ``continuous_tau`` are worst-start mixing times at
    eps = 1/(2e) (pass None when undefined, e.g. a periodic chain has no
    discrete one).  Emits the two mixing-time lower bounds on the conductance
    (T17 discrete, T18 continuous), the quadratic lower bound on the spectral
    gap (T19) with its trivial upper companion (O16), and the two mixing-time
    lower bounds on the gap that do not need the conductance at all
    (C20d, C20c).
    """
    cls = classify(chain)
    if not cls.irreducible:
        raise NotErgodic("conductance bounds need an irreducible chain")
    lam1, _ = lambda_constants(chain)
    entries = []
    if chain.n <= MAX_CONDUCTANCE_STATES:
        phi, _, _ = conductance(chain)
        if discrete_tau is not None:
            entries.append(_entry("T17", GAP_CONST / discrete_tau, phi))
        else:
            entries.append(_skip("T17", "chain is periodic: no discrete mixing time"))
        if continuous_tau is not None:
            entries.append(_entry("T18", GAP_CONST / continuous_tau, phi))
        else:
            entries.append(_skip("T18", "no continuous mixing time supplied"))
        entries.append(_entry("T19", phi * phi / 8.0, lam1))
        entries.append(_entry("O16", phi, lam1))
    else:
        reason = f"more than {MAX_CONDUCTANCE_STATES} states: exact conductance skipped"
        entries.extend(_skip(tid, reason) for tid in ("T17", "T18", "T19", "O16"))
    if discrete_tau is not None:
        entries.append(_entry("C20d", GAP_CONST**2 / (8.0 * discrete_tau**2), lam1))
    else:
        entries.append(_skip("C20d", "chain is periodic: no discrete mixing time"))
    if continuous_tau is not None:
        entries.append(_entry("C20c", GAP_CONST**2 / (8.0 * continuous_tau**2), lam1))
    else:
        entries.append(_skip("C20c", "no continuous mixing time supplied"))
    return entries


def nonreversible_bounds(chain: Chain, x, eps: float) -> list[BoundEntry]:
    """Upper bounds that survive without reversibility.

    T22 bounds the continuized mixing time from x by
    ``ln(1/(eps^2 pi(x))) / (2 lambda_1)``.  T23 bounds the discrete one by
    ``ln(1/(eps^2 pi(x))) / lambda_1(R(M) M)`` using the reversal product;
    when that product is reducible its gap is zero and no discrete bound of
    this kind exists, which the entry reports instead of failing.
    """
    eps = _check_eps(eps)
    cls = classify(chain)
    if not cls.irreducible:
        raise NotIrreducible("nonreversible bounds need an irreducible chain")
    x = chain.index(x)
    lam1, _ = lambda_constants(chain)
    log2 = _log_term_sq(eps, chain.pi[x])
    entries = [
        _entry("T22", log2 / (2.0 * lam1), continuous_mixing_time(chain, x, eps).time)
    ]
    product = multiply(time_reversal(chain), chain)
    if not classify(product).irreducible:
        entries.append(_skip("T23", "reversal-product chain is reducible (gap 0)"))
    elif not cls.aperiodic:
        entries.append(_skip("T23", "chain is periodic: no discrete mixing time"))
    else:
        lam_prod, _ = lambda_constants(product)
        exact_x = discrete_mixing_time(chain, x, eps).time
        entries.append(_entry("T23", log2 / lam_prod, exact_x))
    return entries


def comparison_general(base: Chain, target: Chain, flow: Flow, x, eps: float) -> list[BoundEntry]:
    """Comparison bounds with no reversibility assumption on the base chain.

    A flow routed over the base chain yields bounds on the continuized
    mixing time from the target's continuous (T24c) or discrete (T24d)
    mixing time, sharpened to T26 when the target is reversible.  A flow
    routed over the base's reversal product instead bounds the discrete
    mixing time (T25).  The flow's base decides which family applies.
    """
    eps = _check_eps(eps)
    for c, who in ((base, "base"), (target, "target")):
        if not classify(c).irreducible:
            raise NotIrreducible(f"{who} chain is reducible")
    if np.abs(base.pi - target.pi).max() > 1e-10:
        raise StationaryMismatch("base and target stationary distributions differ")
    x = base.index(x)

    if _same_chain(flow.base, base):
        kind = "direct"
    else:
        product = multiply(time_reversal(base), base)
        if _same_chain(flow.base, product):
            kind = "product"
        else:
            raise WrongFlowBase("flow is routed over neither the base chain nor its reversal product")
    if not _same_chain(flow.target, target):
        raise WrongFlowBase("flow target does not match the given target chain")
    valid, _, violations = validate_flow(flow)
    if not valid:
        raise InvalidFlow("; ".join(violations[:5]))
    _, A = edge_congestion(flow)

    cls = classify(base)
    cls_t = classify(target)
    log2 = _log_term_sq(eps, base.pi[x])
    tau_t_cont = continuous_mixing_time(target, None, DELTA_DEFAULT).time
    tau_t_disc = discrete_mixing_time(target, None, DELTA_DEFAULT).time if cls_t.ergodic else None

    entries = []
    if kind == "direct":
        exact_cont = continuous_mixing_time(base, x, eps).time
        entries.append(_entry("T24c", 4.0 * A * tau_t_cont**2 / GAP_CONST**2 * log2, exact_cont))
        if tau_t_disc is not None:
            entries.append(_entry("T24d", 4.0 * A * tau_t_disc**2 / GAP_CONST**2 * log2, exact_cont))
        else:
            entries.append(_skip("T24d", "target is periodic: no discrete mixing time"))
        entries.append(_skip("T25", "flow is routed over the base chain, not its reversal product"))
        if not cls_t.reversible:
            entries.append(_skip("T26", "target chain is not reversible"))
        elif tau_t_disc is None:
            entries.append(_skip("T26", "target is periodic: no discrete mixing time"))
        else:
            entries.append(_entry("T26", 0.5 * A * (tau_t_disc + 1.0) * log2, exact_cont))
    else:
        reason = "flow is routed over the reversal product"
        entries.append(_skip("T24c", reason))
        entries.append(_skip("T24d", reason))
        if not cls.aperiodic:
            entries.append(_skip("T25", "base chain is periodic: no discrete mixing time"))
        elif tau_t_disc is None:
            entries.append(_skip("T25", "target is periodic: no discrete mixing time"))
        else:
            exact_disc = discrete_mixing_time(base, x, eps).time
            entries.append(_entry("T25", 8.0 * A * tau_t_disc**2 / GAP_CONST**2 * log2, exact_disc))
        entries.append(_skip("T26", reason))
    return entries


@dataclass
class BoundReport:
    """Everything known about one chain (and optionally one comparison pair)."""

    base_name: str
    target_name: str | None
    from_label: str
    from_index: int
    epsilon: float
    delta: float
    exact_discrete: int | None
    exact_continuous: float
    entries: list[BoundEntry] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        ok = all(e.holds for e in self.entries if e.applicable)
        return "pass" if ok else "fail"

    def to_dict(self) -> dict:
        return {
            "chain": self.base_name,
            "target": self.target_name,
            "from": self.from_label,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "exact": {
                "discrete_tau_x": self.exact_discrete,
                "continuous_tau_x": self.exact_continuous,
            },
            "entries": [e.to_dict() for e in self.entries],
            "verdict": self.verdict,
        }


def _comparison_skips(reason: str) -> list[BoundEntry]:
    ids = ("T8", "I5", "T10", "O13", "O14", "T24c", "T24d", "T25", "T26")
    return [_skip(tid, reason) for tid in ids]


def full_report(
    base: Chain,
    target: Chain | None = None,
    flow: Flow | None = None,
    *,
    x=0,
    eps: float = 0.25,
    delta: float = DELTA_DEFAULT,
    sweep: bool = False,
) -> BoundReport:
    """Evaluate every applicable bound of the catalogue against exact values.

    The base chain must be irreducible (a reducible chain has no meaningful
    report and raises).  A periodic chain still gets its continuized
    quantities; every entry that needs a discrete mixing time is then marked
    non-applicable.  Comparison entries need both a target chain and a flow;
    a flow routed over the base's reversal product activates the discrete
    product bound instead of the direct family.
    """
    eps = _check_eps(eps)
    delta = _check_delta(delta)
    if (target is None) != (flow is None):
        raise MixboundsError("supply target and flow together, or neither")
    cls = classify(base)
    if not cls.irreducible:
        raise NotIrreducible("no report for a reducible chain")
    x_idx = base.index(x)

    exact_disc = discrete_mixing_time(base, x_idx, eps).time if cls.ergodic else None
    exact_cont = continuous_mixing_time(base, x_idx, eps).time
    tau_worst_disc = (
        discrete_mixing_time(base, None, DELTA_DEFAULT).time if cls.ergodic else None
    )
    tau_worst_cont = continuous_mixing_time(base, None, DELTA_DEFAULT).time

    entries: list[BoundEntry] = []
    if cls.reversible and cls.ergodic:
        entries += spectral_bounds_reversible(base, x_idx, eps)
    elif not cls.reversible:
        entries += [_skip(t, "chain is not reversible") for t in ("T5", "C6", "T7")]
    else:
        entries += [_skip(t, "chain is periodic") for t in ("T5", "C6", "T7")]

    entries += conductance_bounds(base, tau_worst_disc, tau_worst_cont)
    entries += nonreversible_bounds(base, x_idx, eps)

    if target is None:
        entries += _comparison_skips("no target chain and flow supplied")
    else:
        both_rev_erg = (
            cls.reversible
            and cls.ergodic
            and classify(target).reversible
            and classify(target).ergodic
        )
        direct = _same_chain(flow.base, base)
        if direct and both_rev_erg:
            entries += comparison_reversible(base, target, flow, x_idx, eps, delta, sweep)
        elif direct:
            entries += [
                _skip(t, "comparison pair is not reversible ergodic")
                for t in ("T8", "I5", "T10", "O13", "O14")
            ]
        else:
            entries += [
                _skip(t, "flow is routed over the reversal product")
                for t in ("T8", "I5", "T10", "O13", "O14")
            ]
        entries += comparison_general(base, target, flow, x_idx, eps)

    order = {tid: i for i, tid in enumerate(CATALOG)}
    entries.sort(key=lambda e: order[e.theorem])
    return BoundReport(
        base_name=base.name,
        target_name=None if target is None else target.name,
        from_label=base.labels[x_idx],
        from_index=x_idx,
        epsilon=eps,
        delta=delta,
        exact_discrete=None if exact_disc is None else int(exact_disc),
        exact_continuous=float(exact_cont),
        entries=entries,
    )
