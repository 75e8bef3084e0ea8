"""Seeded, splittable random streams.

Every random quantity in the package is drawn from a Philox (counter-based)
generator keyed by a ``SeedSequence`` with an explicit spawn path, so any
component can be reproduced in isolation and results do not depend on
worker scheduling.  Conventions:

* ``substream(seed, *path)`` — the generator for one component.  The path
  is a tuple of small non-negative integers, e.g. ``(LANE_INNOVATION, rep)``
  for the innovations of replication ``rep``.
* ``derive_seed(seed, *path)`` — a child integer seed, used when a whole
  sub-experiment (which does its own splitting) must be keyed off a master
  seed.

Standard-normal blocks are filled in C order, so a draw of shape
``(n, k)`` is a prefix of the draw of shape ``(n', k)`` for ``n' > n``
from the same substream.  Longer simulations therefore extend shorter
ones sample-for-sample.
"""

from __future__ import annotations

import numpy as np

# Path lanes used by this package.
LANE_COEFF = 0
LANE_INNOVATION = 1
LANE_NOISE = 2


def substream(seed: int, *path: int) -> np.random.Generator:
    """Return the Philox generator for the given seed and spawn path."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *path: int) -> int:
    """Derive a child integer seed from ``seed`` and a spawn path."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
