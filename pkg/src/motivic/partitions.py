"""Partitions, compositions and brute-force counts of d-dimensional partitions."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import LimitExceeded, NonIntegralSolution

# desk-scale bound on count_d_partitions: n <= MAX_ORDER_IDEAL_N for d <= MAX_D
MAX_ORDER_IDEAL_N = int(os.environ.get("MOTIVIC_MAX_IDEAL_N", "10"))
MAX_D = 4


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]
    n: int = field(init=False)
    length: int = field(init=False)
    b: dict = field(init=False, compare=False, hash=False)
    gcd_parts: int = field(init=False)

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        mult: dict[int, int] = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", sum(parts))
        object.__setattr__(self, "length", len(parts))
        object.__setattr__(self, "b", mult)
        object.__setattr__(self, "gcd_parts", math.gcd(*parts) if parts else 0)

    def multiplicity(self, m: int) -> int:
        return self.b.get(m, 0)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return self.length


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def suffix_sums(self) -> tuple[int, ...]:
        """s_i = r_i + r_(i+1) + ... + r_l."""
        out, acc = [], 0
        for r in reversed(self.parts):
            acc += r
            out.append(acc)
        return tuple(reversed(out))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(n, n))


def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _partitions_cached(n)


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def compositions_of(n: int) -> tuple[Composition, ...]:
    """All 2^(n-1) compositions of ``n``; first part descending, then recursively."""
    if n < 1:
        raise ValueError("compositions_of needs n >= 1")
    return tuple(Composition(c) for c in _compositions(n))


# ----------------------------------------------------------------------------
# order ideals in N^d


def _addable(ideal: set, cell: tuple[int, ...]) -> bool:
    for i, ci in enumerate(cell):
        if ci and cell[:i] + (ci - 1,) + cell[i + 1:] not in ideal:
            return False
    return True


def count_d_partitions(d: int, n: int, limit: int | None = None) -> int:
    """Number of downward-closed subsets of N^d with ``n`` elements.

    Exhaustive backtracking: cells are added in lexicographically increasing
    order, which is a linear extension of the product order, so every ideal
    arises from exactly one such sequence.
    """
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    limit = MAX_ORDER_IDEAL_N if limit is None else limit
    if n > limit or d > MAX_D and n > 1:
        raise LimitExceeded(f"count_d_partitions({d}, {n}) exceeds the configured desk-scale bound")
    return _count_ideals(d, n)


@lru_cache(maxsize=None)
def _count_ideals(d: int, n: int) -> int:
    if n == 0:
        return 1
    origin = (0,) * d
    ideal = {origin}
    count = 0

    def extend(last: tuple[int, ...], size: int) -> None:
        nonlocal count
        if size == n:
            count += 1
            return
        candidates = set()
        for cell in ideal:
            for i in range(d):
                nxt = cell[:i] + (cell[i] + 1,) + cell[i + 1:]
                if nxt > last and nxt not in ideal and _addable(ideal, nxt):
                    candidates.add(nxt)
        for cell in sorted(candidates):
            ideal.add(cell)
            extend(cell, size + 1)
            ideal.remove(cell)

    extend(origin, 1)
    return count


def solve_wk(d: int, N: int, counts: list[int] | None = None) -> tuple[int, ...]:
    """Exponents w_1..w_N with prod (1 - t^k)^(-w_k) = sum P_d(n) t^n.

    The logarithm a_n of the counting series satisfies n a_n = sum_{k | n} k w_k,
    which is triangular in w.  Everything runs over the rationals and the
    final integrality is checked, not assumed.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    P = list(counts) if counts is not None else [count_d_partitions(d, k) for k in range(N + 1)]
    if P[0] != 1:
        raise ValueError("counting series must start with 1")
    # n a_n = n P_n - sum_{k<n} k a_k P_{n-k}
    a = [Fraction(0)] * (N + 1)
    for m in range(1, N + 1):
        acc = Fraction(m * P[m])
        for k in range(1, m):
            acc -= k * a[k] * P[m - k]
        a[m] = acc / m
    w: list[Fraction] = [Fraction(0)] * (N + 1)
    for m in range(1, N + 1):
        acc = m * a[m]
        for k in range(1, m):
            if m % k == 0:
                acc -= k * w[k]
        w[m] = acc / m
    out = []
    for k in range(1, N + 1):
        if w[k].denominator != 1:
            raise NonIntegralSolution(f"w_{k} = {w[k]} is not an integer (d={d})")
        out.append(int(w[k]))
    return tuple(out)


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]
