"""The height-list bijection for indecomposable {4321,3241}-avoiders.

Throughout this module "avoider" means an indecomposable permutation
avoiding both 4321 and 3241.  Each avoider with k blue entries maps to a
pair (q, L): an indecomposable 321-avoider q of length n-k together with
a height sequence L of length k and bound n-k-2.  The map deletes the
peak blue entry one step at a time, recording as its height the position
of the deleted value in the peak-insertion list of the shrunken avoider;
the inverse replays the heights left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .errors import DomainError, InvalidHeightError, InvalidInputError
from .paths import Heights, check_height_sequence
from .perm import (
    Perm,
    check_perm,
    delete_entry,
    find_pattern,
    format_perm,
    insert_entry,
    is_indecomposable,
    left_to_right_maxima,
)

PATTERN_4321: Perm = (4, 3, 2, 1)
PATTERN_3241: Perm = (3, 2, 4, 1)
PATTERN_321: Perm = (3, 2, 1)
AVOIDED_PATTERNS: tuple[Perm, ...] = (PATTERN_4321, PATTERN_3241)


@dataclass(frozen=True)
class Triple:
    """The (a, b, c) triple associated with an avoider.

    For a 321-containing avoider: ``a`` is the last "1" of a 321, ``b``
    the rightmost entry left of ``a`` exceeding it, and ``c`` the first
    non-left-to-right-maximum after ``a``, with ``c = None`` meaning
    infinite.  For a 321-avoider the triple is degenerate: c = 1 and
    ``a`` and ``b`` are absent.
    """

    a: int | None
    b: int | None
    c: int | None
    degenerate: bool

    @property
    def c_infinite(self) -> bool:
        return self.c is None

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "degenerate": self.degenerate}


class MapImage(NamedTuple):
    q: Perm
    heights: Heights


def _pattern_name(pat: Perm) -> str:
    return "".join(str(v) for v in pat) if all(v <= 9 for v in pat) else format_perm(pat)


@lru_cache(maxsize=None)
def _validate_avoider(p: Perm) -> None:
    for pat in AVOIDED_PATTERNS:
        occ = find_pattern(p, pat)
        if occ is not None:
            raise DomainError(
                f"{format_perm(p)} contains {_pattern_name(pat)} at positions {format_perm(occ)}"
            )
    if not is_indecomposable(p):
        if not p:
            raise DomainError("the empty permutation is not indecomposable")
        raise DomainError(f"{format_perm(p)} is decomposable")


def check_avoider(p: Sequence[int]) -> Perm:
    """Validate that ``p`` is an indecomposable {4321,3241}-avoider.

    Raises DomainError naming the violated precondition, including a
    witness occurrence for pattern containment.
    """
    p = check_perm(p)
    _validate_avoider(p)
    return p


def is_avoider(p: Sequence[int]) -> bool:
    """Non-raising form of :func:`check_avoider`."""
    p = tuple(p)
    return (
        is_indecomposable(p)
        and find_pattern(p, PATTERN_4321) is None
        and find_pattern(p, PATTERN_3241) is None
    )


def _descending_pair_above_before(p: Perm, bound: int, stop: int) -> bool:
    """Is there i1 < i2 < stop with p[i1] > p[i2] > bound (0-based)?"""
    best = 0
    for i in range(stop):
        v = p[i]
        if v > bound:
            if best > v:
                return True
            best = v
    return False


@lru_cache(maxsize=None)
def _last_one_of_321(p: Perm) -> tuple[int, int] | None:
    """Rightmost entry serving as the "1" of a 321, as (value, 0-based
    position); None when p avoids 321."""
    for j in range(len(p) - 1, -1, -1):
        if _descending_pair_above_before(p, p[j], j):
            return p[j], j
    return None


@lru_cache(maxsize=None)
def _blue_set(p: Perm) -> frozenset[int]:
    """Entries serving as the "2" of a 321 or of a 4312 (assumes avoider)."""
    blues: set[int] = set()
    n = len(p)
    for j in range(n):
        v = p[j]
        # "2" of a 321: some larger entry before, some smaller entry after.
        if any(p[i] > v for i in range(j)) and any(p[i] < v for i in range(j + 1, n)):
            blues.add(v)
            continue
        # "2" of a 4312: a descending pair above v, then an entry below v, all before j.
        for i3 in range(j):
            if p[i3] < v and _descending_pair_above_before(p, v, i3):
                blues.add(v)
                break
    return frozenset(blues)


def blue_entries(p: Sequence[int]) -> frozenset[int]:
    """The blue (key-2) entries of an avoider: entries that serve as the
    "2" of a 321 or of a 4312 occurrence.  Empty iff ``p`` avoids 321."""
    return _blue_set(check_avoider(p))


def peak_blue(p: Sequence[int]) -> int:
    """The larger of the last "1" of a 321 and its immediate predecessor."""
    p = check_avoider(p)
    last_one = _last_one_of_321(p)
    if last_one is None:
        raise DomainError(f"{format_perm(p)} avoids 321: no peak blue entry")
    value, pos = last_one
    return max(value, p[pos - 1])


@lru_cache(maxsize=None)
def _associated_triple(p: Perm) -> Triple:
    last_one = _last_one_of_321(p)
    if last_one is None:
        return Triple(a=None, b=None, c=1, degenerate=True)
    a, pos_a = last_one
    b = next(p[i] for i in range(pos_a - 1, -1, -1) if p[i] > a)
    lrmax = left_to_right_maxima(p)
    c = next((v for v in p[pos_a + 1 :] if v not in lrmax), None)
    assert c is None or c > b, f"triple of {p}: finite c={c} must exceed b={b}"
    return Triple(a=a, b=b, c=c, degenerate=False)


def associated_triple(p: Sequence[int]) -> Triple:
    """The (a, b, c) triple of an avoider; degenerate (c=1) when it avoids 321."""
    return _associated_triple(check_avoider(p))


def _split_runs(values: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Split an increasing sequence into maximal runs of consecutive integers."""
    runs: list[tuple[int, ...]] = []
    current: list[int] = []
    for v in values:
        if current and v != current[-1] + 1:
            runs.append(tuple(current))
            current = []
        current.append(v)
    if current:
        runs.append(tuple(current))
    return tuple(runs)


def order_runs(
    a: int | None,
    b: int | None,
    c: int | None,
    n: int,
    a_runs: Sequence[Sequence[int]],
    b_runs: Sequence[Sequence[int]],
) -> tuple[int, ...]:
    """Arrange the peak-insertion set into its list order.

    ``a_runs`` holds the maximal consecutive runs of the left-to-right
    maxima above c, ``b_runs`` those of the non-maxima from c up (each
    B-run given in full, head included).  With t runs apiece the order is
    A_t, reverse(B_t minus head), then for i = t-1..1: A_i, head of
    B_{i+1}, reverse(B_i minus head); the head of B_1 (= c) is dropped.
    A terminal segment b, b-1, ..., a+1, b+1 follows unless ``a`` and
    ``b`` are absent (the 321-avoiding case); c = None means the runs
    part is empty (c infinite).
    """
    if (a is None) != (b is None):
        raise InvalidInputError("a and b must be both present or both absent")
    ar = tuple(tuple(run) for run in a_runs)
    br = tuple(tuple(run) for run in b_runs)
    for run in ar + br:
        if not run or any(y != x + 1 for x, y in zip(run, run[1:])):
            raise InvalidInputError(f"{run} is not a run of consecutive integers")
    if c is None:
        if ar or br:
            raise InvalidInputError("infinite c admits no runs")
        if a is None:
            raise InvalidInputError("nothing to order: no runs and no terminal segment")
    else:
        if len(ar) != len(br) or not br:
            raise InvalidInputError("need equally many A-runs and B-runs, at least one each")
        covered = sorted(v for run in ar + br for v in run)
        if covered != list(range(c, n + 1)):
            raise InvalidInputError(f"runs must partition [{c}, {n}]")
        if br[0][0] != c or ar[-1][-1] != n:
            raise InvalidInputError("the smallest run must start at c (from B) and the largest end at n (from A)")
        merged = sorted(ar + br, key=lambda run: run[0])
        for lo, hi in zip(merged, merged[1:]):
            if (lo in ar) == (hi in ar):
                raise InvalidInputError("A-runs and B-runs must alternate")
    if a is not None:
        if not (b is not None and 1 <= a < b and (c is None or c > b)):
            raise InvalidInputError(f"need a < b < c; got a={a}, b={b}, c={c}")

    out: list[int] = []
    t = len(br)
    if t:
        out.extend(ar[-1])
        out.extend(reversed(br[-1][1:]))
        for i in range(t - 2, -1, -1):
            out.extend(ar[i])
            out.append(br[i + 1][0])
            out.extend(reversed(br[i][1:]))
    if a is not None and b is not None:
        out.extend(range(b, a, -1))
        out.append(b + 1)
    return tuple(out)


@lru_cache(maxsize=None)
def _peak_insertion_list_impl(p: Perm) -> tuple[int, ...]:
    n = len(p)
    if n <= 1:
        return ()
    triple = _associated_triple(p)
    if triple.degenerate:
        a = b = None
        c = 1
    elif triple.c_infinite:
        return order_runs(triple.a, triple.b, None, n, (), ())
    else:
        a, b, c = triple.a, triple.b, triple.c
    lrmax = left_to_right_maxima(p)
    list_a = [v for v in p if v in lrmax and v > c]
    list_b = [v for v in p if v not in lrmax and v >= c]
    assert all(y > x for x, y in zip(list_b, list_b[1:])), f"B not increasing for {p}"
    return order_runs(a, b, c, n, _split_runs(list_a), _split_runs(list_b))


def peak_insertion_list(p: Sequence[int]) -> tuple[int, ...]:
    """The peak-insertion set of an avoider, [a+1,b+1] u [c+1,n] (or [2,n]
    when it avoids 321), in list order.  Empty for the length-1 avoider.

    The height of a deleted peak blue entry is its 1-based position in
    the peak-insertion list of the shrunken permutation, and conversely
    the h-th list element is the unique value insertable with height h.
    """
    return _peak_insertion_list_impl(check_avoider(p))


def peak_insertion_set(p: Sequence[int]) -> frozenset[int]:
    return frozenset(peak_insertion_list(p))


def _insertion_position_impl(p: Perm, y: int) -> int:
    n = len(p)
    triple = _associated_triple(p)
    if triple.degenerate:
        if not 2 <= y <= n:
            raise DomainError(f"{y} is not in the peak-insertion set [2, {n}] of {format_perm(p)}")
        return _position_of_rightmost_below(p, y)
    a, b, c = triple.a, triple.b, triple.c
    if c is not None and c + 1 <= y <= n:
        return _position_of_rightmost_below(p, y)
    if y == b + 1:
        return p.index(a) + 1
    if a + 1 <= y <= b:
        return p.index(a) + 2
    raise DomainError(
        f"{y} is not in the peak-insertion set of {format_perm(p)} (triple a={a}, b={b}, c={c})"
    )


def _position_of_rightmost_below(p: Perm, y: int) -> int:
    return max(i for i in range(len(p)) if p[i] < y) + 1


def insertion_position(p: Sequence[int], y: int) -> int:
    """The unique position where inserting ``y`` yields an avoider whose
    peak blue entry is ``y`` with exactly one new blue entry.

    For y in [c+1, n] (all of [2, n] in the 321-avoiding case), y goes
    immediately left of the rightmost entry below it; y = b+1 goes just
    before a; y in [a+1, b] goes just after a.  Values outside the
    peak-insertion set raise DomainError.
    """
    return _insertion_position_impl(check_avoider(p), y)


def forward_map(p: Sequence[int]) -> MapImage:
    """Map an avoider to (q, L): repeatedly delete the current peak blue
    entry, prepending its height, until a 321-avoider q remains.

    The height recorded for a deleted value is its position in the
    peak-insertion list of the resulting permutation.  A 321-avoiding
    input returns (p, ()) unchanged.
    """
    current = check_avoider(p)
    heights: list[int] = []
    while True:
        last_one = _last_one_of_321(current)
        if last_one is None:
            return MapImage(q=current, heights=tuple(heights))
        value, pos = last_one
        y = max(value, current[pos - 1])
        shrunk = delete_entry(current, y)
        insertion_list = peak_insertion_list(shrunk)
        if y not in insertion_list:
            raise AssertionError(
                f"peak blue {y} of {format_perm(current)} missing from the "
                f"peak-insertion list of {format_perm(shrunk)}"
            )
        heights.insert(0, insertion_list.index(y) + 1)
        current = shrunk


def inverse_map(q: Sequence[int], heights: Sequence[int]) -> Perm:
    """Rebuild the avoider from (q, L): replay the heights left to right,
    at each step inserting the h-th element of the current peak-insertion
    list at its unique insertion position.  Exact inverse of
    :func:`forward_map`.
    """
    q = check_perm(q)
    occ = find_pattern(q, PATTERN_321)
    if occ is not None:
        raise DomainError(f"{format_perm(q)} contains 321 at positions {format_perm(occ)}")
    if not is_indecomposable(q):
        if not q:
            raise DomainError("the empty permutation is not indecomposable")
        raise DomainError(f"{format_perm(q)} is decomposable")
    heights = check_height_sequence(heights, len(q) - 2)
    current = q
    for h in heights:
        insertion_list = peak_insertion_list(current)
        if h > len(insertion_list):
            raise InvalidHeightError(
                f"height {h} exceeds the peak-insertion list length "
                f"{len(insertion_list)} of {format_perm(current)}"
            )
        y = insertion_list[h - 1]
        current = insert_entry(current, _insertion_position_impl(current, y), y)
    return current


def analyze(p: Sequence[int]) -> dict:
    """Full analysis dump of an avoider, JSON-ready.

    Fields: blue, peak_blue (null for 321-avoiders), triple, insertion_list,
    image (q and heights).
    """
    p = check_avoider(p)
    last_one = _last_one_of_321(p)
    image = forward_map(p)
    return {
        "perm": list(p),
        "blue": sorted(_blue_set(p)),
        "peak_blue": None if last_one is None else max(last_one[0], p[last_one[1] - 1]),
        "triple": _associated_triple(p).as_dict(),
        "insertion_list": list(peak_insertion_list(p)),
        "image": {"q": list(image.q), "heights": list(image.heights)},
    }
