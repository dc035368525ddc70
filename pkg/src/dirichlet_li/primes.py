"""Prime sieve, prime powers with von Mangoldt weights, primality testing."""

from __future__ import annotations

import numpy as np

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic to 3.3e24


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid far beyond the 64-bit range)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as int64."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if flags[p]:
            flags[p * p:: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def prime_powers(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """All prime powers k = p^m <= limit with weights Lambda(k) = log p.

    Returns (k, log_p) sorted ascending in k.
    """
    primes = sieve_primes(limit)
    ks = [primes]
    logs = [np.log(primes.astype(np.float64))]
    root = primes[primes * primes <= limit] if primes.size else primes
    for p in root.tolist():
        lp = np.log(float(p))
        v = p * p
        while v <= limit:
            ks.append(np.array([v], dtype=np.int64))
            logs.append(np.array([lp]))
            v *= p
    k = np.concatenate(ks)
    lp = np.concatenate(logs)
    order = np.argsort(k, kind="stable")
    return k[order], lp[order]
