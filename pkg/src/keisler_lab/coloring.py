"""Weighted hypergraph colouring with the exact r!/r^r guarantee.

A colouring with r colours splits an r-set when its vertices receive
pairwise distinct colours.  Averaged over all colourings the split weight
equals (r!/r^r) times the total weight, and colouring vertices greedily
by conditional expectation always reaches that bound.  All weights and
expectations are exact rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm, perm
from typing import Iterable, Mapping, Optional, Sequence


@dataclass(frozen=True)
class WeightedHypergraph:
    """Nonnegative rational weights on r-subsets of 0..n-1.

    Absent subsets carry weight zero.  Keys are sorted tuples of r
    distinct vertices.
    """

    n: int
    r: int
    weights: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("arity must be at least 2")
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        for key, w in self.weights:
            if (len(key) != self.r or len(set(key)) != self.r
                    or list(key) != sorted(key)):
                raise ValueError(f"key {key} is not a sorted {self.r}-subset")
            if key and (key[0] < 0 or key[-1] >= self.n):
                raise ValueError(f"key {key} out of range")
            if key in seen:
                raise ValueError(f"duplicate key {key}")
            if w < 0:
                raise ValueError(f"negative weight on {key}")
            seen.add(key)
        ordered = tuple(sorted(self.weights))
        object.__setattr__(self, "weights", ordered)

    @cached_property
    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def weight(self, key: Iterable[int]) -> Fraction:
        key = tuple(sorted(key))
        for k, w in self.weights:
            if k == key:
                return w
        return Fraction(0)


def weighted_hypergraph(n: int, r: int,
                        items: Iterable[tuple[Sequence[int], Fraction]]
                        ) -> WeightedHypergraph:
    """Convenience factory accepting unsorted keys and any rational weights."""
    weights = tuple((tuple(sorted(int(v) for v in key)), Fraction(w))
                    for key, w in items)
    return WeightedHypergraph(n, r, weights)


Coloring = tuple[int, ...]


def _check_coloring(h: WeightedHypergraph, coloring: Sequence[int]) -> Coloring:
    chi = tuple(int(c) for c in coloring)
    if len(chi) != h.n:
        raise ValueError(f"colouring covers {len(chi)} of {h.n} vertices")
    if any(not 1 <= c <= h.r for c in chi):
        raise ValueError(f"colours must lie in 1..{h.r}")
    return chi


def weight_of(h: WeightedHypergraph, coloring: Sequence[int]) -> Fraction:
    """Total weight of the r-sets split (rainbow) under the colouring."""
    chi = _check_coloring(h, coloring)
    total = Fraction(0)
    for key, w in h.weights:
        colors = {chi[v] for v in key}
        if len(colors) == h.r:
            total += w
    return total


def guarantee_value(h: WeightedHypergraph) -> Fraction:
    """The derandomization target (r!/r^r) * w(V)."""
    return Fraction(factorial(h.r), h.r ** h.r) * h.total_weight


def _split_probability(r: int, used: int, distinct: int, repeat: bool,
                       uncolored: int) -> Fraction:
    # conditional probability that an r-set becomes rainbow when the
    # uncoloured vertices are coloured independently and uniformly
    if repeat:
        return Fraction(0)
    free = r - distinct
    if uncolored > free:
        return Fraction(0)
    return Fraction(perm(free, uncolored), r ** uncolored)


def conditional_expectation(h: WeightedHypergraph,
                            partial: Mapping[int, int]) -> Fraction:
    """Expected split weight when the unassigned vertices are uniform."""
    for v, c in partial.items():
        if not 0 <= v < h.n:
            raise ValueError(f"vertex {v} out of range")
        if not 1 <= c <= h.r:
            raise ValueError(f"colour {c} out of range")
    total = Fraction(0)
    for key, w in h.weights:
        assigned = [partial[v] for v in key if v in partial]
        distinct = len(set(assigned))
        repeat = distinct < len(assigned)
        p = _split_probability(h.r, len(assigned), distinct, repeat,
                               len(key) - len(assigned))
        if p:
            total += w * p
    return total


def greedy_coloring(h: WeightedHypergraph) -> Coloring:
    """Colour vertices in ascending order, keeping conditional expectation
    maximal; ties resolve to the smallest colour.  The finished colouring
    splits at least (r!/r^r) * w(V)."""
    partial: dict[int, int] = {}
    for v in range(h.n):
        best_color = 1
        best_value: Optional[Fraction] = None
        for c in range(1, h.r + 1):
            partial[v] = c
            value = conditional_expectation(h, partial)
            if best_value is None or value > best_value:
                best_color, best_value = c, value
        partial[v] = best_color
    return tuple(partial[v] for v in range(h.n))


@dataclass(frozen=True)
class BruteResult:
    """Exact optimum over all r^n colourings plus the exact mean."""

    best_coloring: Coloring
    best_weight: Fraction
    average_weight: Fraction
    colorings: int


def brute_best(h: WeightedHypergraph, cap: int = 12) -> BruteResult:
    """Enumerate every colouring; also returns the exact average split
    weight, which independently witnesses the r!/r^r identity."""
    if h.n > cap:
        raise ValueError(f"brute force capped at {cap} vertices")
    scale = lcm(*(w.denominator for _, w in h.weights)) if h.weights else 1
    scaled = [(key, int(w * scale)) for key, w in h.weights]
    best = -1
    best_chi: Coloring = ()
    total = 0
    count = 0
    for chi in itertools.product(range(1, h.r + 1), repeat=h.n):
        count += 1
        acc = 0
        for key, w in scaled:
            if len({chi[v] for v in key}) == h.r:
                acc += w
        total += acc
        if acc > best:
            best, best_chi = acc, chi
    return BruteResult(best_chi, Fraction(best, scale),
                       Fraction(total, scale * count), count)
