"""Nonnegative lattice paths, ballot numbers, and height sequences.

A lattice path is a string over 'U' (up, (1,1)) and 'D' (down, (1,-1)).
Ground level is the height of the initial vertex.  A height sequence
(a_1,...,a_k) with bound r satisfies 1 <= a_1 <= r+1 and
1 <= a_i <= a_{i-1}+1; deleting first peaks of a nonnegative path and
prepending their apex heights lands exactly on these sequences.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple, Sequence

from .errors import InvalidInputError

Heights = tuple[int, ...]


def ballot(n: int, m: int) -> int:
    """Number of nonnegative paths with n downsteps and n+m upsteps.

    Exact value of (m+1)/(2n+m+1) * binom(2n+m+1, n), with the m = -1
    convention: 1 when n = 0, else 0.  ballot(n, 0) is the Catalan number.
    """
    if n < 0 or m < -1:
        raise InvalidInputError(f"ballot({n}, {m}) undefined: need n >= 0, m >= -1")
    if m == -1:
        return 1 if n == 0 else 0
    top = 2 * n + m + 1
    numerator = (m + 1) * math.comb(top, n)
    q, r = divmod(numerator, top)
    assert r == 0, f"ballot({n}, {m}): {numerator} not divisible by {top}"
    return q


def catalan_number(n: int) -> int:
    return ballot(n, 0)


def parse_path(text: str) -> str:
    """Validate a path string: characters 'U' and 'D' only, no whitespace."""
    if any(ch not in "UD" for ch in text):
        raise InvalidInputError(f"path {text!r} must use only 'U' and 'D'")
    return text


class PathClass(NamedTuple):
    nonnegative: bool
    dyck: bool
    component_count: int


def classify_path(path: str) -> PathClass:
    """Classify a path: nonnegative (never dips below ground level),
    Dyck (nonnegative with equal step counts), and for Dyck paths the
    number of returns to ground level, which is its component count.
    Non-Dyck paths report 0 components.
    """
    path = parse_path(path)
    height = 0
    lowest = 0
    returns = 0
    for ch in path:
        height += 1 if ch == "U" else -1
        if height < lowest:
            lowest = height
        if height == 0 and ch == "D":
            returns += 1
    nonnegative = lowest >= 0
    dyck = nonnegative and height == 0
    return PathClass(nonnegative, dyck, returns if dyck else 0)


def path_to_heights(path: str) -> Heights:
    """Repeatedly delete the first peak (UD), recording its apex height
    above ground level; each recorded height is prepended to the list.

    Stops when no peak remains (an all-U path).  A path with n downsteps
    and n+m upsteps yields a height sequence of length n with bound m.
    """
    path = parse_path(path)
    if not classify_path(path).nonnegative:
        raise InvalidInputError(f"path {path!r} dips below ground level")
    steps = list(path)
    heights: list[int] = []
    while True:
        peak = next((i for i in range(len(steps) - 1) if steps[i] == "U" and steps[i + 1] == "D"), None)
        if peak is None:
            assert all(s == "U" for s in steps)
            return tuple(heights)
        apex = steps[: peak + 1].count("U") - steps[: peak + 1].count("D")
        heights.insert(0, apex)
        del steps[peak : peak + 2]


def check_height_sequence(heights: Sequence[int], r: int) -> Heights:
    """Validate the growth condition for bound ``r`` and return a tuple."""
    hs = tuple(heights)
    for i, a in enumerate(hs):
        if not isinstance(a, int):
            raise InvalidInputError(f"height {a!r} is not an integer")
        upper = r + 1 if i == 0 else hs[i - 1] + 1
        if not 1 <= a <= upper:
            raise InvalidInputError(
                f"height sequence {hs} invalid at index {i + 1}: need 1 <= {a} <= {upper}"
            )
    return hs


def heights_to_path(heights: Sequence[int], ups: int) -> str:
    """Rebuild the nonnegative path with surplus ``ups``: starting from a
    path of that many upsteps, successively insert a peak with apex at
    each listed height into the initial ascent.  Exact inverse of
    :func:`path_to_heights`.
    """
    if ups < 0:
        raise InvalidInputError("surplus upstep count must be >= 0")
    hs = check_height_sequence(heights, ups)
    steps = ["U"] * ups
    for a in hs:
        assert all(s == "U" for s in steps[: a - 1])
        steps[a - 1 : a - 1] = ["U", "D"]
    return "".join(steps)


def enumerate_height_sequences(k: int, r: int) -> Iterator[Heights]:
    """All height sequences of length ``k`` with bound ``r``, lexicographically.

    k = 0 yields the single empty sequence (also under the r = -1
    convention); for k >= 1 and r = -1 there are none.  The count always
    equals ballot(k, r).
    """
    if k < 0 or r < -1:
        raise InvalidInputError(f"height sequences need k >= 0, r >= -1; got ({k}, {r})")
    return _height_stream(k, r)


def _height_stream(k: int, r: int) -> Iterator[Heights]:
    current: list[int] = []

    def dfs(i: int) -> Iterator[Heights]:
        if i == k:
            yield tuple(current)
            return
        upper = r + 1 if i == 0 else current[-1] + 1
        for a in range(1, upper + 1):
            current.append(a)
            yield from dfs(i + 1)
            current.pop()

    return dfs(0)


def count_height_sequences(k: int, r: int) -> int:
    return sum(1 for _ in enumerate_height_sequences(k, r))
