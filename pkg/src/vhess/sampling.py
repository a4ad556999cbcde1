"""Sampling configuration and the deterministic random-stream contract.

Every random draw comes from ``stream(seed, label, index)``: a
``random.Random`` seeded with the first 8 bytes of
``blake2b(f"{seed}:{label}:{index}")``.  Streams for different trials are
independent of scheduling order, so reports are reproducible bit-for-bit.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, replace

DEFAULT_PRIME = 2305843009213693951  # 2^61 - 1
PRIME_1MOD4 = 2305843009213693921  # largest 61-bit prime with p = 1 (mod 4)


def _is_probable_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class SampleConfig:
    prime: int = DEFAULT_PRIME
    trials: int = 20
    seed: int = 0
    points: int = 100  # hypersurface points used by sampled rank mod f

    def __post_init__(self):
        if not _is_probable_prime(self.prime) or self.prime == 2:
            raise ValueError(f"{self.prime} is not an odd prime")
        if self.trials < 1 or self.points < 1:
            raise ValueError("trials and points must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def with_prime(self, prime):
        return replace(self, prime=prime)

    def echo(self):
        return {"prime": self.prime, "trials": self.trials, "seed": self.seed,
                "points": self.points}


def stream(seed, label, index=0):
    h = hashlib.blake2b(f"{seed}:{label}:{index}".encode(), digest_size=8)
    return random.Random(int.from_bytes(h.digest(), "big"))


def random_point(rng, n, p):
    return [rng.randrange(p) for _ in range(n)]


def failure_bound(degree, prime, trials):
    """``(D/p)^t`` as ``(log10 value, display string)``; D=0 means exact."""
    if degree <= 0:
        return float("-inf"), "0"
    lg = trials * (math.log10(degree) - math.log10(prime))
    exp = math.floor(lg)
    mant = 10 ** (lg - exp)
    return lg, f"{mant:.3f}e{exp}"
