"""Reproducible random-number streams.

All randomness in the package flows through :func:`substream`. The splitting
rule: a stream is identified by a base seed plus an integer key tuple, mapped
to ``numpy.random.SeedSequence(entropy=seed, spawn_key=key)``. Streams with
distinct keys are statistically independent, and a (seed, key) pair always
yields the same generator, regardless of process, thread count, or the order
in which streams are created. Campaign replication r of size n draws from
key (n, r); a redraw after a degenerate sample bumps the key to (n, r, a)
with attempt index a >= 1.
"""

import numpy as np


def substream(seed, *key):
    """Return an independent, reproducible generator for (seed, key)."""
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(seq)
