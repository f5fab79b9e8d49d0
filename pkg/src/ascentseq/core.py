"""Ascent sequences, patterns, and avoidance-class enumeration.

An ascent sequence is a string of non-negative integers whose first entry
is 0 and whose every later entry is at most one more than the number of
ascents (strict rises between adjacent entries) among the entries before
it.  A pattern is a reduced integer string; a sequence contains the
pattern if some subsequence of it is order-isomorphic to the pattern.

Everything here works from those definitions alone: validity, reduction,
containment, the set of digits that can legally extend a sequence without
creating a forbidden pattern, and depth-first enumeration/counting of the
avoidance class of a pattern set.  Containment uses a dynamic program over
pattern prefixes (partial assignments of sequence values to pattern
values); a naive scan over all index subsequences is kept as a test
oracle in the test suite.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "asc_count",
    "is_valid_ascent_sequence",
    "reduce",
    "is_reduced",
    "contains",
    "contains_naive",
    "extends_without_pattern",
    "valid_append_set",
    "enumerate_avoiders",
    "count_avoiders",
    "parse_sequence",
    "format_sequence",
    "parse_patterns",
    "format_patterns",
]

Word = tuple[int, ...]


def asc_count(word: Sequence[int]) -> int:
    """Number of positions j with word[j] < word[j+1]."""
    if len(word) == 0:
        raise ValueError("ascent count of an empty word is undefined")
    return sum(1 for a, b in zip(word, word[1:]) if a < b)


def is_valid_ascent_sequence(word: Sequence[int]) -> bool:
    """True iff word starts at 0 and respects the ascent growth bound."""
    if len(word) == 0 or word[0] != 0:
        return False
    asc = 0
    for i in range(1, len(word)):
        if word[i] < 0 or word[i] > asc + 1:
            return False
        if word[i] > word[i - 1]:
            asc += 1
    return True


def reduce(word: Sequence[int]) -> Word:
    """Replace the i-th smallest distinct value of word by i-1.

    The result is order-isomorphic to the input and idempotent under
    repeated application.
    """
    if len(word) == 0:
        raise ValueError("cannot reduce an empty word")
    rank = {v: i for i, v in enumerate(sorted(set(word)))}
    return tuple(rank[v] for v in word)


def is_reduced(word: Sequence[int]) -> bool:
    """True iff the distinct values of word are exactly 0..m."""
    return len(word) > 0 and set(word) == set(range(len(set(word))))


def _check_pattern(pattern: Sequence[int]) -> Word:
    p = tuple(pattern)
    if not p:
        raise ValueError("empty pattern")
    if not is_reduced(p):
        raise ValueError(f"pattern {p} is not in reduced form")
    return p


def _normalize_patterns(patterns: Iterable[Sequence[int]]) -> tuple[Word, ...]:
    """Canonical sorted tuple of reduced patterns; empty set means no constraint."""
    out = sorted({_check_pattern(p) for p in patterns})
    return tuple(out)


# ---------------------------------------------------------------------------
# Containment: dynamic program over pattern prefixes.
#
# A partial match of pattern p is an assignment pm of sequence values to the
# distinct pattern values used by a prefix of p, realised by some increasing
# index subsequence.  pm is stored as a tuple indexed by pattern value, with
# None for values not yet assigned.  Extending a match that has j positions
# filled consumes one more sequence element as position j; the element must
# equal pm[p[j]] if that value is already assigned, and otherwise must lie
# strictly between the nearest assigned values below and above p[j].
# ---------------------------------------------------------------------------


def _accepts(pm: tuple, c: int, x: int) -> bool:
    v = pm[c]
    if v is not None:
        return x == v
    for cc in range(c - 1, -1, -1):
        w = pm[cc]
        if w is not None:
            if x <= w:
                return False
            break
    for cc in range(c + 1, len(pm)):
        w = pm[cc]
        if w is not None:
            if x >= w:
                return False
            break
    return True


def _extend(pm: tuple, c: int, x: int) -> tuple:
    if pm[c] is not None:
        return pm
    return pm[:c] + (x,) + pm[c + 1 :]


def _prefix_states(word: Word, pattern: Word) -> list[set]:
    """Sets of partial-match assignments of pattern against word, by prefix length."""
    k = len(pattern)
    empty = (None,) * (max(pattern) + 1)
    levels: list[set] = [set() for _ in range(k)]
    for x in word:
        for j in range(k - 1, 0, -1):
            cj = pattern[j]
            grown = {_extend(pm, cj, x) for pm in levels[j] if _accepts(pm, cj, x)}
            if j + 1 < k:
                levels[j + 1] |= grown
        levels[1].add(_extend(empty, pattern[0], x))
    return levels


def contains(word: Sequence[int], pattern: Sequence[int]) -> bool:
    """True iff some subsequence of word reduces to pattern."""
    w = tuple(word)
    p = _check_pattern(pattern)
    k = len(p)
    if len(w) < k:
        return False
    if k == 1:
        return True
    empty = (None,) * (max(p) + 1)
    levels: list[set] = [set() for _ in range(k)]
    for x in w:
        for j in range(k - 1, 0, -1):
            cj = p[j]
            hits = [pm for pm in levels[j] if _accepts(pm, cj, x)]
            if j == k - 1:
                if hits:
                    return True
            else:
                levels[j + 1].update(_extend(pm, cj, x) for pm in hits)
        levels[1].add(_extend(empty, p[0], x))
    return False


def contains_naive(word: Sequence[int], pattern: Sequence[int]) -> bool:
    """Containment by exhaustive scan over index subsequences (test oracle)."""
    w = tuple(word)
    p = _check_pattern(pattern)
    if len(w) < len(p):
        return False
    return any(reduce(sub) == p for sub in combinations(w, len(p)))


def extends_without_pattern(
    seq: Sequence[int], d: int, patterns: Iterable[Sequence[int]]
) -> bool:
    """Can digit d be appended to seq without creating any pattern in B?

    Assumes seq itself avoids every pattern in B, so only occurrences that
    end at the appended digit need to be ruled out.
    """
    w = tuple(seq)
    if d < 0 or d > asc_count(w) + 1:
        raise ValueError(f"digit {d} is outside the ascent bound for {w}")
    for p in _normalize_patterns(patterns):
        k = len(p)
        if k == 1:
            return False
        if len(w) + 1 < k:
            continue
        levels = _prefix_states(w, p)
        ck = p[k - 1]
        if any(_accepts(pm, ck, d) for pm in levels[k - 1]):
            return False
    return True


def valid_append_set(
    seq: Sequence[int], patterns: Iterable[Sequence[int]]
) -> tuple[int, ...]:
    """All digits whose append keeps the sequence inside the avoidance class.

    Returns the digits in increasing order.  The last digit of seq is always
    a member: repeating it creates no ascent and no new pattern occurrence.
    """
    w = tuple(seq)
    B = _normalize_patterns(patterns)
    cands = range(asc_count(w) + 2)
    if any(len(p) == 1 for p in B):
        return ()
    keep = set(cands)
    for p in B:
        k = len(p)
        if len(w) + 1 < k:
            continue
        levels = _prefix_states(w, p)
        ck = p[k - 1]
        keep -= {d for d in cands if any(_accepts(pm, ck, d) for pm in levels[k - 1])}
    return tuple(sorted(keep))


# ---------------------------------------------------------------------------
# Depth-first enumeration.
#
# The DFS keeps, for every pattern, the full set of partial matches against
# the current sequence, bucketed by the digit each match would consume next.
# The structure only grows when a digit is appended (old subsequences stay
# subsequences), so backtracking just pops the additions recorded on a per-
# push trail.  A shared counter per digit tells in O(1) whether appending it
# would complete any forbidden pattern.
# ---------------------------------------------------------------------------


class _PatternTracker:
    __slots__ = ("pattern", "k", "empty", "accept", "seen")

    def __init__(self, pattern: Word, max_digit: int):
        self.pattern = pattern
        self.k = len(pattern)
        self.empty = (None,) * (max(pattern) + 1)
        # accept[j][d]: partial matches with j positions filled that can
        # consume d as position j.  Level k-1 feeds the shared forbid count.
        self.accept = [[[] for _ in range(max_digit + 1)] for _ in range(self.k)]
        self.seen = [set() for _ in range(self.k)]

    def window(self, pm: tuple, c: int, max_digit: int) -> tuple[int, int]:
        v = pm[c]
        if v is not None:
            return v, v
        lo, hi = 0, max_digit
        for cc in range(c - 1, -1, -1):
            w = pm[cc]
            if w is not None:
                lo = w + 1
                break
        for cc in range(c + 1, len(pm)):
            w = pm[cc]
            if w is not None:
                hi = w - 1
                break
        return lo, hi

    def push(self, d: int, max_digit: int, forbid: list[int]) -> list:
        """Append digit d; returns a trail for undo."""
        k = self.k
        p = self.pattern
        fresh = [(1, _extend(self.empty, p[0], d))]
        for j in range(1, k - 1):
            bucket = self.accept[j][d]
            cj = p[j]
            # snapshot length: states added during this push must not
            # consume the same appended digit
            for idx in range(len(bucket)):
                fresh.append((j + 1, _extend(bucket[idx], cj, d)))
        trail = []
        last = k - 1
        for j2, pm2 in fresh:
            seen = self.seen[j2]
            if pm2 in seen:
                continue
            seen.add(pm2)
            lo, hi = self.window(pm2, p[j2], max_digit)
            trail.append((j2, pm2, lo, hi))
            level = self.accept[j2]
            for dd in range(lo, hi + 1):
                level[dd].append(pm2)
            if j2 == last:
                for dd in range(lo, hi + 1):
                    forbid[dd] += 1
        return trail

    def undo(self, trail: list, forbid: list[int]) -> None:
        last = self.k - 1
        for j2, pm2, lo, hi in reversed(trail):
            self.seen[j2].remove(pm2)
            level = self.accept[j2]
            for dd in range(lo, hi + 1):
                level[dd].pop()
            if j2 == last:
                for dd in range(lo, hi + 1):
                    forbid[dd] -= 1


def _walk(n_max: int, patterns: tuple[Word, ...], want_length: int | None):
    """DFS over the avoidance class up to length n_max.

    Returns (counts, collected): counts[n] is the number of avoiders of
    length n; collected holds the avoiders of length want_length in
    lexicographic order (empty when want_length is None).
    """
    counts = [0] * (n_max + 1)
    collected: list[Word] = []
    if n_max < 1:
        return counts, collected
    if any(len(p) == 1 for p in patterns):
        return counts, collected  # the single-value pattern occurs in every word
    max_digit = n_max - 1
    trackers = [_PatternTracker(p, max_digit) for p in patterns if len(p) <= n_max]
    forbid = [0] * (max_digit + 1)
    seq = [0]
    for t in trackers:
        t.push(0, max_digit, forbid)
    counts[1] = 1
    if want_length == 1:
        collected.append((0,))

    def rec(depth: int, asc: int) -> None:
        last = seq[-1]
        for d in range(asc + 2):
            if forbid[d]:
                continue
            counts[depth + 1] += 1
            if want_length == depth + 1:
                collected.append(tuple(seq) + (d,))
            if depth + 1 < n_max:
                trails = [t.push(d, max_digit, forbid) for t in trackers]
                seq.append(d)
                rec(depth + 1, asc + 1 if d > last else asc)
                seq.pop()
                for t, tr in zip(trackers, trails):
                    t.undo(tr, forbid)

    if n_max > 1:
        rec(1, 0)
    return counts, collected


_COUNT_CACHE: dict[tuple[Word, ...], list[int]] = {}


def enumerate_avoiders(
    n: int, patterns: Iterable[Sequence[int]]
) -> list[Word]:
    """All avoiders of length n, in lexicographic order."""
    if n < 1:
        return []
    B = _normalize_patterns(patterns)
    _, collected = _walk(n, B, want_length=n)
    return collected


def count_avoiders(n_max: int, patterns: Iterable[Sequence[int]]) -> list[int]:
    """Sizes of the avoidance class for lengths 1..n_max.

    Counting walks the extension tree without materialising the sequences;
    results are cached per pattern set.
    """
    if n_max < 1:
        return []
    B = _normalize_patterns(patterns)
    cached = _COUNT_CACHE.get(B)
    if cached is None or len(cached) < n_max:
        counts, _ = _walk(n_max, B, want_length=None)
        cached = counts[1:]
        _COUNT_CACHE[B] = cached
    return list(cached[:n_max])


# ---------------------------------------------------------------------------
# Text formats: sequences and patterns are bare digit strings ("0120102"),
# pattern sets comma-separated ("201,210").  Pattern digits are restricted
# to 0-9; sequences whose digits exceed 9 use a dotted form ("0.1.2.10").
# ---------------------------------------------------------------------------


def parse_sequence(text: str) -> Word:
    s = text.strip()
    if not s:
        raise ValueError("empty sequence text")
    if "." in s:
        return tuple(int(part) for part in s.split("."))
    return tuple(int(ch) for ch in s)


def format_sequence(seq: Sequence[int]) -> str:
    if any(d > 9 for d in seq):
        return ".".join(str(d) for d in seq)
    return "".join(str(d) for d in seq)


def parse_patterns(text: str) -> tuple[Word, ...]:
    parts = [part.strip() for part in text.split(",")]
    if not any(parts):
        raise ValueError("empty pattern set")
    patterns = []
    for part in parts:
        if not part:
            raise ValueError(f"empty pattern in {text!r}")
        if not part.isdigit():
            raise ValueError(f"pattern {part!r} must be a digit string (0-9)")
        patterns.append(_check_pattern(tuple(int(ch) for ch in part)))
    return _normalize_patterns(patterns)


def format_patterns(patterns: Iterable[Sequence[int]]) -> str:
    return ",".join("".join(str(d) for d in p) for p in _normalize_patterns(patterns))
