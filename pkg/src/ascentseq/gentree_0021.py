"""Generating tree for ascent sequences avoiding 0021.

Once a digit repeats, every later digit larger than the smallest repeated
digit must appear in increasing order, or a 0021 occurrence is formed.  The
appendable set of an avoider therefore splits into an unrestricted lower
part and an increasing upper part, and each avoider is labelled by a
triple (p, q, r): the reduced last digit, the size of the unrestricted
part, and the size of the increasing part.  Labels always satisfy
p in {q-2, q-1, q}, giving three succession rules:

    (q-2, q, 0) -> (q-1, q+1, 0), (i, i+1, q-1-i)     for i = 0..q-2
    (q-1, q, r) -> (q-1, q, r),   (i, i+1, q+r-1-i)   for i = 0..q-2,
                   (q, q, i)                          for i = 2..r+1
    (q, q, r)   -> (q, q, r),     (i, i+1, q+r-1-i)   for i = 0..q-1,
                   (q, q, i)                          for i = 2..r

rooted at (0, 2, 0).  Level counts are classified by the three cases into
tables g0 (p = q), g1 (p = q-1), and the single g2 node (p = q-2) per
level, mirrored by bottom-up recurrences.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import contains, valid_append_set

__all__ = [
    "QUAD_PATTERN",
    "AppendSplit",
    "TripleLevelTables",
    "split_sets",
    "triple_label",
    "triple_children",
    "simulate_0021_levels",
    "triple_recurrence_levels",
    "triple_recurrence_tables",
    "dense_a0",
    "dense_a1",
    "csv_rows",
]

QUAD_PATTERN = (0, 0, 2, 1)


@dataclass(frozen=True)
class AppendSplit:
    """Appendable digits of an avoider, split at its smallest repeated digit."""

    unrestricted: tuple[int, ...]
    increasing: tuple[int, ...]


@dataclass(frozen=True)
class TripleLevelTables:
    """Label counts at one level, classified by the three label shapes."""

    n: int
    g0: dict[tuple[int, int], int]
    g1: dict[tuple[int, int], int]
    g2_q: int

    def total(self) -> int:
        return sum(self.g0.values()) + sum(self.g1.values()) + 1

    def value0(self, q: int, r: int) -> int:
        return self.g0.get((q, r), 0)

    def value1(self, q: int, r: int) -> int:
        return self.g1.get((q, r), 0)


def _check_avoider(seq: Sequence[int]) -> tuple[int, ...]:
    w = tuple(seq)
    if contains(w, QUAD_PATTERN):
        raise ValueError(f"{w} contains 0021; it is outside the avoidance class")
    return w


def split_sets(seq: Sequence[int]) -> AppendSplit:
    """Appendable digits split into the unrestricted and increasing parts.

    The increasing part holds the appendable digits larger than the
    smallest repeated digit of seq; it is empty when no digit repeats.
    """
    w = _check_avoider(seq)
    appendable = valid_append_set(w, (QUAD_PATTERN,))
    repeated = [d for d in set(w) if w.count(d) > 1]
    if repeated:
        srd = min(repeated)
        inc = tuple(d for d in appendable if d > srd)
    else:
        inc = ()
    unr = tuple(d for d in appendable if d not in inc)
    return AppendSplit(unr, inc)


def triple_label(seq: Sequence[int]) -> tuple[int, int, int]:
    """Label (p, q, r): reduced last digit, |unrestricted|, |increasing|.

    The reduction relabels the union of the two appendable parts and the
    last digit jointly.
    """
    w = _check_avoider(seq)
    split = split_sets(w)
    union = sorted(set(split.unrestricted) | set(split.increasing) | {w[-1]})
    rank = {v: i for i, v in enumerate(union)}
    return rank[w[-1]], len(split.unrestricted), len(split.increasing)


def _classify(label: tuple[int, int, int]) -> int:
    """Return 0, 1 or 2 for p = q, p = q-1, p = q-2; raise otherwise."""
    p, q, r = label
    if p < 0 or q < 0 or r < 0:
        raise ValueError(f"invalid label {label}: negative component")
    if p == q - 2:
        if r != 0:
            raise ValueError(f"invalid label {label}: increasing part must be empty")
        return 2
    if p == q - 1:
        if q < 1 or r < 1:
            raise ValueError(f"invalid label {label}: need q >= 1 and r >= 1")
        return 1
    if p == q:
        if q < 1 or r < 2:
            raise ValueError(f"invalid label {label}: need q >= 1 and r >= 2")
        return 0
    raise ValueError(f"invalid label {label}: p must be q-2, q-1 or q")


def triple_children(label: tuple[int, int, int]) -> Counter:
    """Multiset of child labels under the matching succession rule."""
    kind = _classify(label)
    p, q, r = label
    children: Counter = Counter()
    if kind == 2:
        children[(q - 1, q + 1, 0)] += 1
        for i in range(0, q - 1):
            children[(i, i + 1, q - 1 - i)] += 1
    elif kind == 1:
        children[(q - 1, q, r)] += 1
        for i in range(0, q - 1):
            children[(i, i + 1, q + r - 1 - i)] += 1
        for i in range(2, r + 2):
            children[(q, q, i)] += 1
    else:
        children[(q, q, r)] += 1
        for i in range(0, q):
            children[(i, i + 1, q + r - 1 - i)] += 1
        for i in range(2, r + 1):
            children[(q, q, i)] += 1
    return children


def _classify_level(n: int, labels: Counter) -> TripleLevelTables:
    g0: dict[tuple[int, int], int] = {}
    g1: dict[tuple[int, int], int] = {}
    g2 = []
    for (p, q, r), count in labels.items():
        kind = _classify((p, q, r))
        if kind == 0:
            g0[(q, r)] = g0.get((q, r), 0) + count
        elif kind == 1:
            g1[(q, r)] = g1.get((q, r), 0) + count
        else:
            g2.extend([q] * count)
    if g2 != [n + 1]:
        raise ValueError(
            f"level {n}: expected one (q-2, q, 0) node with q = {n + 1}, got {g2}"
        )
    return TripleLevelTables(n, g0, g1, g2[0])


def simulate_0021_levels(n_max: int) -> list[TripleLevelTables]:
    """Classified label counts for levels 1..n_max, grown from the root."""
    if n_max < 1:
        return []
    labels: Counter = Counter({(0, 2, 0): 1})
    out = [_classify_level(1, labels)]
    for n in range(2, n_max + 1):
        nxt: Counter = Counter()
        for label, count in labels.items():
            for child, mult in triple_children(label).items():
                nxt[child] += count * mult
        labels = nxt
        out.append(_classify_level(n, labels))
    return out


def triple_recurrence_levels(n_max: int) -> list[TripleLevelTables]:
    """Classified label counts computed bottom-up from the recurrences.

    Case order follows the recurrences as stated: zero guards first, then
    the boundary ones on q + r = n, then the two-level sums.  Empty sums
    are zero.
    """
    if n_max < 1:
        return []
    out = [TripleLevelTables(1, {}, {}, 2)]
    for n in range(2, n_max + 1):
        prev = out[-1]
        g1: dict[tuple[int, int], int] = {}
        for q in range(1, n + 1):
            for r in range(0, n - q + 1):
                if q == n and r == 0:
                    continue
                if n == q == r == 1:
                    continue
                if q + r == n and r > 0:
                    g1[(q, r)] = 1
                elif q + r < n:
                    s = q + r
                    val = sum(prev.value1(i, s - i) for i in range(q, s))
                    val += sum(prev.value0(i, s - i) for i in range(q, s - 1))
                    if val:
                        g1[(q, r)] = val
        g0: dict[tuple[int, int], int] = {}
        if n > 2:
            for q in range(1, n + 1):
                for r in range(2, n - q + 1):
                    if q + r == n and n >= q + 2:
                        g0[(q, r)] = 1
                    elif q + r < n:
                        val = prev.value0(q, r)
                        val += sum(prev.value0(q, i) for i in range(r, n - q))
                        val += sum(prev.value1(q, i) for i in range(r - 1, n - q))
                        if val:
                            g0[(q, r)] = val
        out.append(TripleLevelTables(n, g0, g1, n + 1))
    return out


def triple_recurrence_tables(n: int) -> TripleLevelTables:
    """Level-n classified label counts from the recurrences."""
    if n < 1:
        raise ValueError("level must be at least 1")
    return triple_recurrence_levels(n)[-1]


def dense_a0(tables: TripleLevelTables) -> list[list[int]]:
    """g0 as a dense array: row q, column r-1, square of side n-2."""
    side = max(tables.n - 2, 0)
    return [
        [tables.value0(q, r) for r in range(2, side + 2)] for q in range(1, side + 1)
    ]


def dense_a1(tables: TripleLevelTables) -> list[list[int]]:
    """g1 as a dense array: row q, column r, square of side n-1."""
    side = max(tables.n - 1, 0)
    return [
        [tables.value1(q, r) for r in range(1, side + 1)] for q in range(1, side + 1)
    ]


def csv_rows(n: int) -> list[tuple[int, str, int, int, int]]:
    """Nonzero level-n entries as (n, class, q, r, count) rows.

    Classes are emitted in the order g0, g1, g2, each sorted by (q, r).
    """
    tables = triple_recurrence_tables(n)
    rows: list[tuple[int, str, int, int, int]] = []
    for (q, r) in sorted(tables.g0):
        rows.append((n, "g0", q, r, tables.g0[(q, r)]))
    for (q, r) in sorted(tables.g1):
        rows.append((n, "g1", q, r, tables.g1[(q, r)]))
    rows.append((n, "g2", tables.g2_q, 0, 1))
    return rows
