"""Partitions, multipartitions and their statistics.

A partition is a weakly decreasing tuple of positive ints; () is the empty
partition.  A multipartition is a tuple of partitions, one per vertex.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .exact_algebra import RatFun, var

Partition = tuple[int, ...]
MultiPartition = tuple[Partition, ...]


def make_partition(parts: Sequence[int]) -> Partition:
    """Sort and drop zero parts; rejects negatives."""
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts!r}")
    return tuple(sorted((p for p in parts if p), reverse=True))


def parse_partition(text: str) -> Partition:
    """Accepts "3+2+1", "[3,2,1]", "" or "0"."""
    text = text.strip()
    if text.startswith("["):
        return make_partition(json.loads(text))
    if text in ("", "0"):
        return ()
    return make_partition([int(x) for x in text.split("+")])


def format_partition(lam: Partition) -> str:
    return "+".join(map(str, lam)) if lam else "0"


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n, in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


@dataclass(frozen=True)
class CellStats:
    arm: int
    leg: int

    @property
    def hook(self) -> int:
        return self.arm + self.leg + 1


def cell_stats(lam: Partition) -> list[CellStats]:
    """Arm and leg of every cell, row by row."""
    conj = conjugate(lam)
    return [CellStats(lam[i] - j - 1, conj[j] - i - 1) for i in range(len(lam)) for j in range(lam[i])]


def multiplicities(lam: Partition) -> Counter:
    return Counter(lam)


def z_stat(lam: Partition) -> int:
    return prod(j ** m * factorial(m) for j, m in Counter(lam).items())


def n_stat(lam: Partition) -> int:
    return sum(i * p for i, p in enumerate(lam))


def dominates(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def hook_polynomial(lam: Partition, t: RatFun | None = None) -> RatFun:
    """prod over cells of (1 - t**hook)."""
    t = var("t") if t is None else t
    out = RatFun(1)
    for c in cell_stats(lam):
        out = out * (1 - t ** c.hook)
    return out


def lr_coefficient(nu: Partition, lam: Partition, mu: Partition) -> int:
    """Littlewood-Richardson coefficient via iterated Pieri rules."""
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    from .symmetric_functions import schur_product

    return schur_product(lam, mu).get(nu, 0)


# multipartitions


def mp_size(mp: MultiPartition) -> tuple[int, ...]:
    return tuple(sum(lam) for lam in mp)


def mp_n(mp: MultiPartition) -> int:
    return sum(n_stat(lam) for lam in mp)


def mp_is_zero(mp: MultiPartition) -> bool:
    return all(not lam for lam in mp)


def one_column(alpha: Sequence[int]) -> MultiPartition:
    """The multipartition (1^alpha)."""
    return tuple((1,) * a for a in alpha)


def one_row(alpha: Sequence[int]) -> MultiPartition:
    """The multipartition (alpha)."""
    return tuple((a,) if a else () for a in alpha)


def multipartitions(alpha: Sequence[int]) -> Iterator[MultiPartition]:
    """All multipartitions of size vector alpha."""
    if not alpha:
        yield ()
        return
    for head in partitions(alpha[0]):
        for tail in multipartitions(alpha[1:]):
            yield (head,) + tail
