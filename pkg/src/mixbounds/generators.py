"""Chain generators for the worked examples and for seeded test families."""

from __future__ import annotations

import numpy as np

from .chains import Chain, build_chain, lazy
from .errors import BadParams
from .flows import Flow, FlowPath

KINDS = ("two_state", "dhn", "uniform_walk", "directed_cycle", "random_reversible", "lazy_of")


def two_state(delta: float) -> Chain:
    """Two states {a, b}; flip with probability 1 - delta, stay with delta.

    For small delta this chain is nearly periodic and mixes slowly even
    though its stationary distribution (uniform) is reached instantly by the
    uniform walk on the same two states.
    """
    if not 0.0 < delta < 1.0:
        raise BadParams(f"two_state needs 0 < delta < 1, got {delta}")
    P = [[delta, 1.0 - delta], [1.0 - delta, delta]]
    return build_chain(["a", "b"], P, name=f"two_state(delta={delta:g})")


def dhn(n: int) -> Chain:
    """The Diaconis-Holmes-Neal non-reversible walk on 2n states.

    States are the integers -(n-1) .. n; from i the walk moves to i+1
    (mod 2n) with probability 1 - 1/n and to -i (mod 2n) with probability
    1/n.  The stationary distribution is uniform.  The two destinations never
    coincide (their congruence would need 2i = -1 mod 2n), but assignments
    are accumulated defensively and the rows validated anyway.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise BadParams(f"dhn needs an integer n >= 2, got {n}")
    m = 2 * n
    values = list(range(-(n - 1), n + 1))
    index = {v: i for i, v in enumerate(values)}

    def to_value(residue: int) -> int:
        return ((residue + n - 1) % m) - (n - 1)

    flip = 1.0 / n
    ahead = 1.0 - flip
    P = np.zeros((m, m))
    for v in values:
        P[index[v], index[to_value(v + 1)]] += ahead
        P[index[v], index[to_value(-v)]] += flip
    return build_chain([str(v) for v in values], P, name=f"dhn(n={n})")


def uniform_walk(N: int, labels=None) -> Chain:
    """Constant-row walk: every step lands uniformly; mixes in one step."""
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise BadParams(f"uniform_walk needs an integer N >= 2, got {N}")
    P = np.full((N, N), 1.0 / N)
    if labels is None:
        labels = [f"s{i}" for i in range(N)]
    return build_chain(labels, P, name=f"uniform_walk(N={N})")


def directed_cycle(k: int) -> Chain:
    """Deterministic walk around a directed k-cycle (irreducible, period k)."""
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise BadParams(f"directed_cycle needs an integer k >= 2, got {k}")
    P = np.zeros((k, k))
    for i in range(k):
        P[i, (i + 1) % k] = 1.0
    return build_chain([f"s{i}" for i in range(k)], P, name=f"directed_cycle(k={k})")


def random_reversible(N: int, seed: int = 0) -> Chain:
    """Metropolis chain for a random positive weight vector (complete proposal).

    Propose uniformly among the other states, accept with min(1, w_y / w_x);
    the leftover mass stays put.  Detailed balance with respect to the
    normalised weights holds by construction.
    """
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise BadParams(f"random_reversible needs an integer N >= 2, got {N}")
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.5, 2.0, size=N)
    P = np.zeros((N, N))
    for x in range(N):
        for y in range(N):
            if x != y:
                P[x, y] = min(1.0, w[y] / w[x]) / (N - 1)
        P[x, x] = 1.0 - P[x].sum()
    return build_chain([f"s{i}" for i in range(N)], P, name=f"random_reversible(N={N},seed={seed})")


def generate(kind: str, **params) -> Chain:
    """Dispatch on a generator kind; unknown kinds or parameters raise BadParams."""
    builders = {
        "two_state": (two_state, ("delta",)),
        "dhn": (dhn, ("n",)),
        "uniform_walk": (uniform_walk, ("N",)),
        "directed_cycle": (directed_cycle, ("k",)),
        "random_reversible": (random_reversible, ("N", "seed")),
    }
    if kind == "lazy_of":
        inner = params.pop("of", None)
        if inner is None:
            raise BadParams("lazy_of needs 'of', the kind of the wrapped chain")
        wrapped = generate(inner, **params)
        out = lazy(wrapped)
        return Chain(out.labels, out.P, out.pi, name=f"lazy_of({wrapped.name})")
    if kind not in builders:
        raise BadParams(f"unknown generator kind {kind!r} (known: {', '.join(KINDS)})")
    fn, allowed = builders[kind]
    cleaned = {k: v for k, v in params.items() if v is not None}
    extra = set(cleaned) - set(allowed)
    if extra:
        raise BadParams(f"{kind} does not take parameters {sorted(extra)}")
    missing = [k for k in allowed if k not in cleaned and k != "seed"]
    if missing:
        raise BadParams(f"{kind} requires parameters {missing}")
    return fn(**cleaned)


def two_state_uniform_flow(delta: float) -> Flow:
    """The explicit four-path flow from the two-state chain to the uniform walk.

    Cross demands ride the matching length-1 path; each self-loop demand of
    the uniform walk detours through the other state on a length-2 path, so
    the flow is not odd.  With the uniform stationary law all four masses are
    pi(a) P'(a, .) = 1/4.
    """
    base = two_state(delta)
    target = uniform_walk(2, labels=["a", "b"])
    a, b = 0, 1
    pi, Pt = target.pi, target.P
    paths = [
        FlowPath((a, b), float(pi[a] * Pt[a, b])),
        FlowPath((b, a), float(pi[b] * Pt[b, a])),
        FlowPath((a, b, a), float(pi[a] * Pt[a, a])),
        FlowPath((b, a, b), float(pi[b] * Pt[b, b])),
    ]
    return Flow(base, target, paths)
