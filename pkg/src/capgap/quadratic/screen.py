"""Screening of discriminants d = -4pq, p < q primes congruent 1 mod 4.

These are the negative fundamental discriminants whose 2-class group has
rank exactly 2 and whose factorization contains -4; each candidate record
carries the class group data and the norm of the fundamental unit of
Q(sqrt(pq)).  Candidates with unit norm +1 are flagged as excluded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forms import class_group
from .selmer import e4_plus_index
from .units import fundamental_unit_norm


@dataclass(frozen=True)
class CandidateRecord:
    d: int
    p: int
    q: int
    h: int
    invariants: tuple[int, ...]
    two_rank: int
    e4_index: int
    unit_norm: int
    excluded: bool


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = b"\x00" * len(sieve[p * p::p])
    return [i for i in range(2, n + 1) if sieve[i]]


def screen_candidates(bound: int) -> list[CandidateRecord]:
    """All d = -4pq with |d| <= bound, p < q primes = 1 mod 4, by |d|."""
    if bound < 4:
        return []
    primes = [p for p in _primes_up_to(bound // 4) if p % 4 == 1]
    pairs = []
    for i, p in enumerate(primes):
        for q in primes[i + 1:]:
            if 4 * p * q <= bound:
                pairs.append((p, q))
    pairs.sort(key=lambda pq: pq[0] * pq[1])
    records = []
    for p, q in pairs:
        d = -4 * p * q
        cg = class_group(d)
        if cg.two_rank != 2:
            raise AssertionError(f"d={d} should have 2-rank 2, got {cg.two_rank}")
        e4 = e4_plus_index(d)
        if e4 != 2:
            raise AssertionError(f"d={d} should have e4 index 2, got {e4}")
        unit = fundamental_unit_norm(p * q)
        records.append(CandidateRecord(
            d=d, p=p, q=q, h=cg.h, invariants=cg.invariants,
            two_rank=cg.two_rank, e4_index=e4, unit_norm=unit.norm,
            excluded=unit.norm == 1,
        ))
    return records
