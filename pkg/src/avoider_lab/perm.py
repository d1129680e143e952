"""Standard permutations in one-line form.

A permutation of length n is represented as a tuple of the integers 1..n.
Positions and values are 1-indexed in every public signature.  All values
are immutable and safe to share between workers.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import InvalidInputError

Perm = tuple[int, ...]


def check_perm(p: Sequence[int]) -> Perm:
    """Validate that ``p`` is a rearrangement of 1..n and return it as a tuple."""
    t = tuple(p)
    n = len(t)
    if n and (min(t) != 1 or max(t) != n or len(set(t)) != n):
        raise InvalidInputError(f"{t} is not a permutation of 1..{n}")
    return t


def parse_perm(text: str) -> Perm:
    """Parse a permutation from text.

    Accepts the comma form "2,7,3,5,1,6,4" and, when every value is a
    single digit, the compact form "2735164".  The empty string denotes
    the empty permutation.
    """
    text = text.strip()
    if not text:
        return ()
    try:
        if "," in text:
            values = tuple(int(tok) for tok in text.split(","))
        else:
            values = tuple(int(ch) for ch in text)
    except ValueError:
        raise InvalidInputError(f"cannot parse permutation from {text!r}") from None
    return check_perm(values)


def format_perm(p: Sequence[int]) -> str:
    """One-line comma form; emission always uses commas."""
    return ",".join(str(v) for v in p)


def standardize(values: Sequence[int]) -> Perm:
    """Relabel distinct positive integers by rank: smallest becomes 1, and so on."""
    vals = tuple(values)
    if len(set(vals)) != len(vals):
        raise InvalidInputError(f"values {vals} are not pairwise distinct")
    if any(v < 1 for v in vals):
        raise InvalidInputError(f"values {vals} must be positive")
    rank = {v: r for r, v in enumerate(sorted(vals), start=1)}
    return tuple(rank[v] for v in vals)


def find_pattern(p: Sequence[int], pattern: Sequence[int]) -> tuple[int, ...] | None:
    """Return the lexicographically least occurrence of ``pattern`` in ``p``
    as 1-based positions, or None when ``p`` avoids the pattern.

    An occurrence is a subsequence of ``p`` order-isomorphic to the pattern.
    Depth-first search over positions with early pruning; fine for the
    pattern lengths (<= 4) and permutation sizes (<= ~12) this library targets.
    """
    p = tuple(p)
    pat = check_perm(pattern)
    if not pat:
        raise InvalidInputError("pattern must be non-empty")
    n, k = len(p), len(pat)
    if n < k:
        return None
    chosen_vals: list[int] = []
    chosen_pos: list[int] = []

    def dfs(start: int, j: int) -> bool:
        if j == k:
            return True
        pj = pat[j]
        for i in range(start, n - (k - 1 - j)):
            v = p[i]
            ok = True
            for t in range(j):
                if (pat[t] < pj) != (chosen_vals[t] < v):
                    ok = False
                    break
            if ok:
                chosen_vals.append(v)
                chosen_pos.append(i)
                if dfs(i + 1, j + 1):
                    return True
                chosen_vals.pop()
                chosen_pos.pop()
        return False

    if dfs(0, 0):
        return tuple(i + 1 for i in chosen_pos)
    return None


def contains_pattern(p: Sequence[int], pattern: Sequence[int]) -> bool:
    """True iff some subsequence of ``p`` is order-isomorphic to ``pattern``."""
    return find_pattern(p, pattern) is not None


def components(p: Sequence[int]) -> list[Perm]:
    """Split ``p`` at every prefix that is closed under {1..j}; blocks standardized.

    The empty permutation has no components.
    """
    p = check_perm(p)
    blocks: list[Perm] = []
    start = 0
    running_max = 0
    for j, v in enumerate(p, start=1):
        if v > running_max:
            running_max = v
        if running_max == j:
            blocks.append(tuple(v - start for v in p[start:j]))
            start = j
    return blocks


def is_indecomposable(p: Sequence[int]) -> bool:
    """True iff ``p`` has exactly one component.

    The permutation (1,) is indecomposable; the empty permutation is not.
    """
    p = tuple(p)
    if not p:
        return False
    running_max = 0
    for j, v in enumerate(p[:-1], start=1):
        if v > running_max:
            running_max = v
        if running_max == j:
            return False
    return True


def delete_entry(p: Sequence[int], y: int) -> Perm:
    """Erase the value ``y`` and decrement every entry above it."""
    p = check_perm(p)
    if not 1 <= y <= len(p):
        raise InvalidInputError(f"cannot delete value {y} from a permutation of length {len(p)}")
    return tuple(v - 1 if v > y else v for v in p if v != y)


def insert_entry(p: Sequence[int], i: int, y: int) -> Perm:
    """Increment every entry >= ``y``, then place ``y`` at position ``i``.

    Inverse of :func:`delete_entry`: deleting ``y`` again recovers ``p``.
    """
    p = check_perm(p)
    n = len(p)
    if not 1 <= y <= n + 1:
        raise InvalidInputError(f"inserted value {y} out of range 1..{n + 1}")
    if not 1 <= i <= n + 1:
        raise InvalidInputError(f"insertion position {i} out of range 1..{n + 1}")
    shifted = [v + 1 if v >= y else v for v in p]
    shifted.insert(i - 1, y)
    return tuple(shifted)


def left_to_right_maxima(p: Sequence[int]) -> set[int]:
    """Values strictly greater than everything to their left."""
    p = check_perm(p)
    out: set[int] = set()
    best = 0
    for v in p:
        if v > best:
            out.add(v)
            best = v
    return out


def _occurrence_ends_at_last(seq: Sequence[int], pat: Perm) -> bool:
    """Does ``seq`` (distinct integers) contain an occurrence of ``pat``
    whose final pattern letter is the last element of ``seq``?

    This is the incremental complement used for prefix pruning: a prefix
    with no occurrence gains one only if the new element completes it.
    """
    k = len(pat)
    m = len(seq) - 1
    if m < k - 1:
        return False
    last = seq[m]
    p_last = pat[k - 1]
    chosen: list[int] = []

    def dfs(start: int, j: int) -> bool:
        if j == k - 1:
            return True
        pj = pat[j]
        below_last = pj < p_last
        for i in range(start, m - (k - 2 - j)):
            v = seq[i]
            if below_last != (v < last):
                continue
            ok = True
            for t in range(j):
                if (pat[t] < pj) != (chosen[t] < v):
                    ok = False
                    break
            if ok:
                chosen.append(v)
                if dfs(i + 1, j + 1):
                    return True
                chosen.pop()
        return False

    return dfs(0, 0)


def _normalize_patterns(patterns: Iterable[Sequence[int]]) -> tuple[Perm, ...]:
    pats = tuple(sorted(check_perm(q) for q in patterns))
    if any(len(q) == 0 for q in pats):
        raise InvalidInputError("patterns must have length >= 1")
    return pats


def enumerate_avoiders(
    n: int,
    patterns: Iterable[Sequence[int]],
    indecomposable_only: bool = False,
    first_entry: int | None = None,
) -> Iterator[Perm]:
    """Yield, in lexicographic order, every permutation of length ``n``
    avoiding all ``patterns``, optionally only the indecomposable ones.

    Depth-first search over one-line prefixes.  A prefix that already
    contains a pattern is never extended, and when ``indecomposable_only``
    is set a prefix closed under {1..j} (j < n) is likewise abandoned.

    ``first_entry`` restricts the stream to permutations starting with
    that value; running one worker per first entry and concatenating the
    streams in increasing first-entry order reproduces the full stream.
    """
    if n < 0:
        raise InvalidInputError("length must be >= 0")
    pats = _normalize_patterns(patterns)
    if first_entry is not None and not (n == 0 or 1 <= first_entry <= n):
        raise InvalidInputError(f"first entry {first_entry} out of range 1..{n}")
    return _avoider_stream(n, pats, indecomposable_only, first_entry)


def _avoider_stream(
    n: int,
    pats: tuple[Perm, ...],
    indecomposable_only: bool,
    first_entry: int | None,
) -> Iterator[Perm]:
    if n == 0:
        if not indecomposable_only:
            yield ()
        return

    prefix: list[int] = []
    used = [False] * (n + 1)

    def dfs(depth: int, running_max: int) -> Iterator[Perm]:
        if depth == n:
            yield tuple(prefix)
            return
        start = first_entry if depth == 0 and first_entry is not None else 1
        stop = first_entry if depth == 0 and first_entry is not None else n
        for v in range(start, stop + 1):
            if used[v]:
                continue
            prefix.append(v)
            new_max = v if v > running_max else running_max
            if (not (indecomposable_only and new_max == depth + 1 and depth + 1 < n)) and not any(
                _occurrence_ends_at_last(prefix, q) for q in pats
            ):
                used[v] = True
                yield from dfs(depth + 1, new_max)
                used[v] = False
            prefix.pop()

    yield from dfs(0, 0)


def count_avoiders(
    n: int,
    patterns: Iterable[Sequence[int]],
    indecomposable_only: bool = False,
) -> int:
    """Number of length-``n`` avoiders of ``patterns``; see enumerate_avoiders."""
    return sum(1 for _ in enumerate_avoiders(n, patterns, indecomposable_only))
