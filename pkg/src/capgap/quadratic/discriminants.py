"""Fundamental discriminants and their prime-discriminant factorizations."""

from __future__ import annotations


def _odd_prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    while n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    if n % 4 == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1 if p == 2 else 2
    return True


def is_fundamental(d: int) -> bool:
    """d = 1 mod 4 squarefree, or d = 4m with m = 2,3 mod 4 squarefree (d != 1)."""
    if d == 1 or d == 0:
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminants(lo: int, hi: int) -> list[int]:
    """All fundamental discriminants in [lo, hi], ascending."""
    return [d for d in range(lo, hi + 1) if is_fundamental(d)]


def prime_discriminant(p: int) -> int:
    """p* = (-1)^((p-1)/2) p for an odd prime."""
    if p % 2 == 0 or not is_squarefree(p) or _odd_prime_factors(p) != [p]:
        raise ValueError(f"{p} is not an odd prime")
    return p if p % 4 == 1 else -p


def factor_into_prime_discriminants(d: int) -> tuple[int, ...]:
    """Unique factorization of a fundamental discriminant into prime
    discriminants (-4, 8, -8, or p* = (-1)^((p-1)/2) p), sorted by |.|."""
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    factors = [prime_discriminant(p) for p in _odd_prime_factors(d)]
    rest = d
    for f in factors:
        rest //= f
    if rest != 1:
        if rest not in (-4, 8, -8):
            raise AssertionError(f"unexpected 2-part {rest} for d={d}")
        factors.append(rest)
    factors.sort(key=abs)
    prod = 1
    for f in factors:
        if not is_fundamental(f):
            raise AssertionError(f"factor {f} of d={d} is not fundamental")
        prod *= f
    if prod != d:
        raise AssertionError(f"factorization of {d} does not multiply back")
    return tuple(factors)


def genus_two_rank(d: int) -> int:
    """t - 1, with t the number of prime-discriminant factors of d."""
    return len(factor_into_prime_discriminants(d)) - 1
