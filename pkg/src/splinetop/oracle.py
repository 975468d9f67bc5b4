"""Independent modular cross-check of exact dimensions.

Each space is rebuilt from its smoothness systems with arithmetic mod p
(kernel, projection, sum) and the rank compared against the exact one.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .linalg import BadPrimeError, random_primes


class OracleMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class OracleCheck:
    exact: int
    modular: tuple[tuple[int, int], ...]   # (prime, rank)

    @property
    def ok(self) -> bool:
        return all(m == self.exact for _, m in self.modular)

    @property
    def tag(self) -> str:
        return "ok" if self.ok else "MISMATCH"


def check(space, count: int = 3) -> OracleCheck:
    seed = os.environ.get("SPLINETOP_SEED")
    rng = random.Random(int(seed)) if seed is not None else random.Random()
    out = []
    while len(out) < count:
        for p in random_primes(count - len(out), rng=rng):
            if any(p == q for q, _ in out):
                continue
            try:
                out.append((p, space.modular_dim(p)))
            except BadPrimeError:
                continue
    return OracleCheck(space.dim, tuple(out))


def confirm(space, count: int = 3) -> int:
    """Return ``space.dim`` after the modular check; raise on disagreement."""
    res = check(space, count)
    if not res.ok:
        raise OracleMismatch(f"{space!r}: exact {res.exact}, modular {res.modular}")
    return res.exact
