"""Build chains, classify them, and play with the chain-level transforms.

Run:  python3 demos/01_chains_and_stationarity.py
"""

import numpy as np

from mixbounds import (
    build_chain,
    classify,
    dhn,
    directed_cycle,
    lazy,
    multiply,
    reversibilize,
    time_reversal,
    two_state,
)

# A chain is a labelled row-stochastic matrix; the stationary distribution is
# solved at construction time and cached.
weather = build_chain(["sunny", "rainy"], [[0.9, 0.1], [0.5, 0.5]], name="weather")
print("weather chain stationary law:", dict(zip(weather.labels, weather.pi.round(4))))
print(classify(weather))

# The nearly periodic two-state chain: flips with probability 1 - delta.
slow = two_state(0.05)
print("\nnearly periodic chain:", classify(slow))

# A deterministic cycle is irreducible but periodic; its lazy version is not.
cycle = directed_cycle(3)
print("\ndirected 3-cycle:", classify(cycle))
print("lazy 3-cycle:", classify(lazy(cycle)))

# Time reversal runs the chain backwards in stationarity. For the cycle it is
# the opposite rotation, and composing the two gives the identity matrix,
# which is reducible; the classifier reports that rather than crashing.
back = time_reversal(cycle)
print("\nreversal of the cycle:\n", back.P)
both = multiply(back, cycle)
print("reversal followed by the cycle is the identity:", np.array_equal(both.P, np.eye(3)))
print(classify(both))

# The non-reversible Diaconis-Holmes-Neal walk and its additive
# reversibilization, which shares all of the quadratic-form structure.
walk = dhn(4)
print("\nDHN walk on 8 states:", classify(walk))
sym = reversibilize(walk)
print("reversibilized:", classify(sym))
flows = sym.pi[:, None] * sym.P
print("detailed balance residual:", np.abs(flows - flows.T).max())
