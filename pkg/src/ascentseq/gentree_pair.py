"""Generating tree for ascent sequences avoiding 201 and 210.

Every avoider is labelled by a pair (p, q): reduce the pair (last digit,
set of appendable digits); q is the largest reduced appendable digit and p
the reduced last digit.  The label of a sequence determines the labels of
all its one-step extensions, so the whole class is generated by the rule

    (p, q)  ->  (0, 1+q-p) taken p times,  (p, q),  (p+1, q+1), ..., (q, q+1)

rooted at (0, 1).  This module simulates the tree level by level, computes
the same level tables bottom-up from the label-count recurrence, derives
the column sums c and diagonal entries d of each level array, and checks
the seven cross-level identities that those arrays satisfy.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import contains, valid_append_set

__all__ = [
    "PAIR_PATTERNS",
    "PairLevelTable",
    "CDTable",
    "RelationViolation",
    "RelationReport",
    "RELATION_NAMES",
    "pair_label",
    "pair_children",
    "simulate_pair_levels",
    "pair_recurrence_levels",
    "pair_recurrence_table",
    "cd_tables",
    "cd_tables_from",
    "check_structure_relations",
    "dense_array",
    "csv_rows",
]

PAIR_PATTERNS = ((2, 0, 1), (2, 1, 0))


@dataclass(frozen=True)
class PairLevelTable:
    """Counts of (p, q) labels at one level of the generating tree."""

    n: int
    g: dict[tuple[int, int], int]

    def total(self) -> int:
        return sum(self.g.values())

    def value(self, p: int, q: int) -> int:
        return self.g.get((p, q), 0)

    def dense(self) -> list[list[int]]:
        """n x n array with the (p, q) count in row p, column q-1."""
        return [[self.value(p, q) for q in range(1, self.n + 1)] for p in range(self.n)]


@dataclass(frozen=True)
class CDTable:
    """Column sums c and diagonal entries d of one level array (1-indexed)."""

    n: int
    c: tuple[int, ...]
    d: tuple[int, ...]


def pair_label(seq: Sequence[int]) -> tuple[int, int]:
    """Label (p, q): rank of the last digit inside the appendable set and
    the size of that set minus one."""
    w = tuple(seq)
    for p in PAIR_PATTERNS:
        if contains(w, p):
            raise ValueError(f"{w} contains {p}; it is outside the avoidance class")
    appendable = valid_append_set(w, PAIR_PATTERNS)
    return appendable.index(w[-1]), len(appendable) - 1


def _check_label(label: tuple[int, int]) -> tuple[int, int]:
    p, q = label
    if not 0 <= p < q:
        raise ValueError(f"invalid label {label}: need 0 <= p < q")
    return p, q


def pair_children(label: tuple[int, int]) -> Counter:
    """Multiset of child labels under the succession rule."""
    p, q = _check_label(label)
    children: Counter = Counter()
    if p:
        children[(0, 1 + q - p)] += p
    children[(p, q)] += 1
    for i in range(p + 1, q + 1):
        children[(i, q + 1)] += 1
    return children


def simulate_pair_levels(n_max: int) -> list[PairLevelTable]:
    """Label counts for levels 1..n_max by expanding the rule from the root."""
    if n_max < 1:
        return []
    levels = [PairLevelTable(1, {(0, 1): 1})]
    for n in range(2, n_max + 1):
        nxt: Counter = Counter()
        for label, count in levels[-1].g.items():
            for child, mult in pair_children(label).items():
                nxt[child] += count * mult
        levels.append(PairLevelTable(n, dict(nxt)))
    return levels


def pair_recurrence_levels(n_max: int) -> list[PairLevelTable]:
    """Label counts for levels 1..n_max computed bottom-up from the recurrence.

    A level-n node with p = 0 comes from a (0, q) node one level down or, i
    times over, from an (i, q-1+i) node; one with p > 0 comes from a (p, q)
    node or from an (i, q-1) node with i < p.  Empty sums are zero.
    """
    if n_max < 1:
        return []
    levels = [PairLevelTable(1, {(0, 1): 1})]
    for n in range(2, n_max + 1):
        prev = levels[-1].g
        g: dict[tuple[int, int], int] = {}
        for q in range(1, n + 1):
            for p in range(0, q):
                if p == 0:
                    val = prev.get((0, q), 0)
                    for i in range(1, n - q + 1):
                        val += i * prev.get((i, q - 1 + i), 0)
                else:
                    val = prev.get((p, q), 0)
                    for i in range(0, p):
                        val += prev.get((i, q - 1), 0)
                if val:
                    g[(p, q)] = val
        levels.append(PairLevelTable(n, g))
    return levels


def pair_recurrence_table(n: int) -> PairLevelTable:
    """Level-n label counts from the recurrence."""
    if n < 1:
        raise ValueError("level must be at least 1")
    return pair_recurrence_levels(n)[-1]


def cd_tables_from(table: PairLevelTable) -> CDTable:
    """c/d summary computed from an existing level table."""
    n = table.n
    c = tuple(sum(table.value(k, i) for k in range(i)) for i in range(1, n + 1))
    d = tuple(table.value(i - 1, i) for i in range(1, n + 1))
    return CDTable(n, c, d)


def cd_tables(n: int) -> CDTable:
    """Column sums c_{n,i} and diagonals d_{n,i} = g(i-1, i) at level n."""
    return cd_tables_from(pair_recurrence_table(n))


@dataclass(frozen=True)
class RelationViolation:
    relation: str
    n: int
    where: tuple[int, ...]
    lhs: int
    rhs: int


@dataclass(frozen=True)
class RelationReport:
    n_max: int
    violations: tuple[RelationViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


#: The seven identities the level arrays satisfy, keyed by short name.
RELATION_NAMES = (
    "diagonal_step",      # d_{n,i} = d_{n-1,i} + c_{n-1,i-1} for 2 <= i <= n
    "last_column_zero",   # g(i, n) = 0 at level n unless i = n-1
    "corner_ones",        # g(0,1) = d_1 = c_1 = d_n = c_n = 1
    "interior_shift",     # g(p, q) = g(p+2, q+1) for 3 <= p+2 < q+1 <= n
    "first_row_step",     # g(0, q) = g(0,q+1) + g(1,q+1) + g(2,q+1), 2 <= q <= n-1
    "partial_sum_shift",  # sum_{i<=k} g(i,q) = sum_{i<=k+2} g(i,q+1) for k <= q-2
    "column_difference",  # c_{n,i} = c_{n,i-1} - d_{n,i-1} for 3 <= i <= n
)


def check_structure_relations(
    n_max: int, levels: list[PairLevelTable] | None = None
) -> RelationReport:
    """Check the seven cross-level identities for all levels up to n_max.

    Violations are collected rather than raised so a regression reports
    every failing instance.  A precomputed list of level tables may be
    supplied (useful for checking deliberately corrupted data).
    """
    if n_max < 2:
        raise ValueError("need n_max >= 2 to compare adjacent levels")
    if levels is None:
        levels = pair_recurrence_levels(n_max)
    cds = [cd_tables_from(levels[n - 1]) for n in range(1, n_max + 1)]
    bad: list[RelationViolation] = []

    def check(rel: str, n: int, where: tuple[int, ...], lhs: int, rhs: int) -> None:
        if lhs != rhs:
            bad.append(RelationViolation(rel, n, where, lhs, rhs))

    for n in range(1, n_max + 1):
        tab = levels[n - 1]
        c, d = cds[n - 1].c, cds[n - 1].d
        check("corner_ones", n, (0, 1), tab.value(0, 1), 1)
        check("corner_ones", n, (1,), d[0], 1)
        check("corner_ones", n, (1,), c[0], 1)
        check("corner_ones", n, (n,), d[n - 1], 1)
        check("corner_ones", n, (n,), c[n - 1], 1)
        for i in range(0, n):
            if i != n - 1:
                check("last_column_zero", n, (i, n), tab.value(i, n), 0)
        if n >= 2:
            cp, dp = cds[n - 2].c, cds[n - 2].d
            for i in range(2, n + 1):
                prev_d = dp[i - 1] if i <= n - 1 else 0
                prev_c = cp[i - 2]
                check("diagonal_step", n, (i,), d[i - 1], prev_d + prev_c)
        for p in range(1, n):
            for q in range(p + 2, n):
                check(
                    "interior_shift", n, (p, q), tab.value(p, q), tab.value(p + 2, q + 1)
                )
        for q in range(2, n):
            check(
                "first_row_step",
                n,
                (0, q),
                tab.value(0, q),
                tab.value(0, q + 1) + tab.value(1, q + 1) + tab.value(2, q + 1),
            )
        for q in range(2, n):
            for k in range(0, q - 1):
                lhs = sum(tab.value(i, q) for i in range(k + 1))
                rhs = sum(tab.value(i, q + 1) for i in range(k + 3))
                check("partial_sum_shift", n, (k, q), lhs, rhs)
        for i in range(3, n + 1):
            check("column_difference", n, (i,), c[i - 1], c[i - 2] - d[i - 2])

    return RelationReport(n_max, tuple(bad))


def dense_array(n: int) -> list[list[int]]:
    """Level-n counts as a dense n x n array (row p, column q-1)."""
    return pair_recurrence_table(n).dense()


def csv_rows(n: int) -> list[tuple[int, int, int, int]]:
    """Nonzero level-n entries as (n, p, q, count) rows, sorted by (p, q)."""
    table = pair_recurrence_table(n)
    return [(n, p, q, table.g[(p, q)]) for (p, q) in sorted(table.g)]
