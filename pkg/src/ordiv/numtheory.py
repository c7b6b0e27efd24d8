"""Elementary number theory used by the group and lattice constructions.

Everything here is plain trial division; the inputs we care about are small.
"""

from __future__ import annotations

from math import gcd, isqrt

INT64_MAX = 2**63 - 1


def _check(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    if n > INT64_MAX:
        raise OverflowError(f"{n} does not fit in 64 bits")


def factorize(n: int) -> list[tuple[int, int]]:
    """Return ``[(prime, exponent), ...]`` with primes ascending; ``[]`` for 1."""
    _check(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    _check(n)
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    _check(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def is_prime(n: int) -> bool:
    if n > INT64_MAX:
        raise OverflowError(f"{n} does not fit in 64 bits")
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, k)`` if ``n == p**k`` with ``k >= 1``, else None."""
    if n < 2:
        return None
    f = factorize(n)
    return f[0] if len(f) == 1 else None


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
