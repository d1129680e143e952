"""Exhaustive invariant suites and the machine-readable verification report.

Every proposition the bijection relies on is re-expressed here as a
runtime check swept over exhaustively enumerated domains.  The expensive
sweeps (everything driven by {4321,3241}-avoider enumeration) run at the
requested scale, capped at the scale each statement is certified for;
cheap structural suites always run in full.

The avoider-driven work is partitioned into cells by (length, first
entry) and the pair-driven work by (length, blue count), so it can be
spread over a process pool; aggregation is order-deterministic, making
the report byte-identical for any worker count except its duration field.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from typing import Iterable

from . import bijection, paths, perm, series

SERIES_ORDER = 40
EXAMPLE_CAP = 5

INSERT_DELETE_CAP = 6
COMPONENTS_CAP = 7
FACTORIAL_CAP = 7
PATH_STEPS_CAP = 12
HEIGHT_COUNT_CAP = 10
DYCK_SIZE_CAP = 8
I321_COUNT_CAP = 10
DELETION_STABILITY_CAP = 8
UNIQUENESS_CAP = 7
GROWTH_CAP = 8
TRIPLE_FACTS_CAP = 9


def _failure_bucket() -> dict:
    return {"count": 0, "examples": []}


def _record(bucket: dict, example: str) -> None:
    bucket["count"] += 1
    if len(bucket["examples"]) < EXAMPLE_CAP:
        bucket["examples"].append(example)


def _merge(target: dict, source: dict) -> None:
    target["count"] += source["count"]
    for ex in source["examples"]:
        if len(target["examples"]) < EXAMPLE_CAP:
            target["examples"].append(ex)


# ---------------------------------------------------------------------------
# cheap structural suites


def _suite_insert_delete(max_n: int) -> dict:
    scale = min(max_n, INSERT_DELETE_CAP)
    bucket = _failure_bucket()
    for n in range(scale + 1):
        for p in permutations(range(1, n + 1)):
            for y in range(1, n + 2):
                for i in range(1, n + 2):
                    q = perm.insert_entry(p, i, y)
                    if perm.delete_entry(q, y) != p:
                        _record(bucket, f"{perm.format_perm(p)} +({i},{y})")
            for y in range(1, n + 1):
                pos = p.index(y) + 1
                if perm.insert_entry(perm.delete_entry(p, y), pos, y) != p:
                    _record(bucket, f"{perm.format_perm(p)} -{y}")
    return {"passed": bucket["count"] == 0, "scale": scale, **bucket}


def _suite_components(max_n: int) -> dict:
    scale = min(max_n, COMPONENTS_CAP)
    bucket = _failure_bucket()
    for n in range(scale + 1):
        for p in permutations(range(1, n + 1)):
            blocks = perm.components(p)
            rebuilt: list[int] = []
            for block in blocks:
                offset = len(rebuilt)
                rebuilt.extend(v + offset for v in block)
            ok = tuple(rebuilt) == p and perm.is_indecomposable(p) == (len(blocks) == 1)
            avoidance_blockwise = all(
                not perm.contains_pattern(b, pat)
                for b in blocks
                for pat in bijection.AVOIDED_PATTERNS
            )
            avoidance_whole = all(
                not perm.contains_pattern(p, pat) for pat in bijection.AVOIDED_PATTERNS
            )
            if not ok or avoidance_blockwise != avoidance_whole:
                _record(bucket, perm.format_perm(p))
    return {"passed": bucket["count"] == 0, "scale": scale, **bucket}


def _suite_factorial(max_n: int) -> dict:
    scale = min(max_n, FACTORIAL_CAP)
    bucket = _failure_bucket()
    expected = 1
    for n in range(scale + 1):
        if n:
            expected *= n
        if perm.count_avoiders(n, ()) != expected:
            _record(bucket, f"n={n}")
    return {"passed": bucket["count"] == 0, "scale": scale, **bucket}


def _nonnegative_paths(length: int) -> Iterable[str]:
    def dfs(steps: list[str], height: int) -> Iterable[str]:
        if len(steps) == length:
            yield "".join(steps)
            return
        for ch, d in (("D", -1), ("U", 1)):
            if height + d >= 0:
                steps.append(ch)
                yield from dfs(steps, height + d)
                steps.pop()

    return dfs([], 0)


def _suite_path_round_trip() -> dict:
    bucket = _failure_bucket()
    for length in range(PATH_STEPS_CAP + 1):
        for path in _nonnegative_paths(length):
            ups = path.count("U")
            downs = length - ups
            heights = paths.path_to_heights(path)
            if len(heights) != downs or paths.heights_to_path(heights, ups - downs) != path:
                _record(bucket, path)
    return {"passed": bucket["count"] == 0, "scale": PATH_STEPS_CAP, **bucket}


def _suite_height_counts() -> dict:
    bucket = _failure_bucket()
    for k in range(HEIGHT_COUNT_CAP + 2):
        for r in range(-1, HEIGHT_COUNT_CAP - k + 1):
            if paths.count_height_sequences(k, r) != paths.ballot(k, r):
                _record(bucket, f"k={k},r={r}")
    return {"passed": bucket["count"] == 0, "scale": HEIGHT_COUNT_CAP, **bucket}


def _suite_indecomposable_dyck() -> dict:
    bucket = _failure_bucket()
    for size in range(1, DYCK_SIZE_CAP + 1):
        count = 0
        for path in _nonnegative_paths(2 * size):
            cls = paths.classify_path(path)
            if cls.dyck and cls.component_count == 1:
                count += 1
        if count != paths.catalan_number(size - 1):
            _record(bucket, f"size={size}")
    return {"passed": bucket["count"] == 0, "scale": DYCK_SIZE_CAP, **bucket}


def _suite_indecomposable_321_count() -> dict:
    bucket = _failure_bucket()
    for n in range(1, I321_COUNT_CAP + 1):
        if perm.count_avoiders(n, (bijection.PATTERN_321,), True) != paths.catalan_number(n - 1):
            _record(bucket, f"n={n}")
    return {"passed": bucket["count"] == 0, "scale": I321_COUNT_CAP, **bucket}


def _suite_series_reciprocal() -> dict:
    f = series.f_series(SERIES_ORDER)
    g = series.g_series(SERIES_ORDER)
    product = f * (series.IntSeries.constant(1, SERIES_ORDER) - g)
    passed = product == series.IntSeries.constant(1, SERIES_ORDER)
    return {"passed": passed, "scale": SERIES_ORDER, "count": 0 if passed else 1, "examples": []}


def _suite_series_summation() -> dict:
    bucket = _failure_bucket()
    g = series.g_series(SERIES_ORDER)
    for n in range(SERIES_ORDER + 1):
        if g.coefficient(n) != series.u_by_formula(n):
            _record(bucket, f"n={n}")
    return {"passed": bucket["count"] == 0, "scale": SERIES_ORDER, **bucket}


# ---------------------------------------------------------------------------
# avoider-driven cells


def _check_deletion_stability(p: perm.Perm, failures: dict) -> None:
    last_one = bijection._last_one_of_321(p)
    if last_one is None:
        return
    y = max(last_one[0], p[last_one[1] - 1])
    shrunk = perm.delete_entry(p, y)
    expected_blue = frozenset(v - 1 if v > y else v for v in bijection._blue_set(p) if v != y)
    if (
        not bijection.is_avoider(shrunk)
        or bijection._blue_set(shrunk) != expected_blue
        or y not in bijection.peak_insertion_list(shrunk)
    ):
        _record(failures, perm.format_perm(p))


def _check_uniqueness(p: perm.Perm, failures: dict) -> None:
    n = len(p)
    expected = {
        (y, bijection.insertion_position(p, y)) for y in bijection.peak_insertion_list(p)
    }
    passing = set()
    for y in range(1, n + 2):
        for i in range(1, n + 2):
            q = perm.insert_entry(p, i, y)
            if not bijection.is_avoider(q):
                continue
            last_one = bijection._last_one_of_321(q)
            if last_one is None:
                continue
            if max(last_one[0], q[last_one[1] - 1]) != y:
                continue
            if len(bijection._blue_set(q)) != len(bijection._blue_set(p)) + 1:
                continue
            passing.add((y, i))
    if passing != expected:
        _record(failures, perm.format_perm(p))


def _check_growth(p: perm.Perm, failures: dict) -> None:
    insertion_list = bijection.peak_insertion_list(p)
    for h, y in enumerate(insertion_list, start=1):
        try:
            q = perm.insert_entry(p, bijection.insertion_position(p, y), y)
            grown = bijection.peak_insertion_list(q)
        except Exception:
            _record(failures, f"{perm.format_perm(p)} h={h}")
            continue
        if len(grown) != h + 1:
            _record(failures, f"{perm.format_perm(p)} h={h}")


def _check_triple_facts(p: perm.Perm, witness_failures: dict, structure_failures: dict) -> None:
    if bijection._last_one_of_321(p) is None:
        return
    triple = bijection._associated_triple(p)
    a, b, c = triple.a, triple.b, triple.c
    n = len(p)
    pos_a = p.index(a)
    pos_b = p.index(b)
    # witness w with w > b left of b, and c > b whenever finite
    if not any(p[i] > b for i in range(pos_b)) or (c is not None and c <= b):
        _record(witness_failures, perm.format_perm(p))
    ok = True
    if c is not None and any(v < c for v in p[pos_a + 1 :]):
        ok = False
    if c is None or c > b + 1:
        if b + 1 > n or p.index(b + 1) > pos_b:
            ok = False
    if c is None and pos_a != n - 1:
        ok = False
    lrmax = perm.left_to_right_maxima(p)
    pos_c = p.index(c) if c is not None else n
    for i, z in enumerate(p):
        if z > b and i < pos_c and z not in lrmax:
            ok = False
    if not ok:
        _record(structure_failures, perm.format_perm(p))


def _cell_worker(args: tuple[int, int]) -> dict:
    n, first = args
    result = {
        "n": n,
        "first": first,
        "total": 0,
        "indecomposable": 0,
        "per_k": {},
        "forward_inverse": _failure_bucket(),
        "blue_count": _failure_bucket(),
        "deletion_stability": _failure_bucket(),
        "uniqueness": _failure_bucket(),
        "growth": _failure_bucket(),
        "witness": _failure_bucket(),
        "structure": _failure_bucket(),
    }
    for p in perm.enumerate_avoiders(n, bijection.AVOIDED_PATTERNS, False, first_entry=first):
        result["total"] += 1
        if not perm.is_indecomposable(p):
            continue
        result["indecomposable"] += 1
        k = len(bijection._blue_set(p))
        result["per_k"][k] = result["per_k"].get(k, 0) + 1
        try:
            image = bijection.forward_map(p)
            if bijection.inverse_map(image.q, image.heights) != p:
                _record(result["forward_inverse"], perm.format_perm(p))
            if len(image.heights) != k:
                _record(result["blue_count"], perm.format_perm(p))
        except Exception:
            # a crash while mapping is itself a failed round trip
            _record(result["forward_inverse"], perm.format_perm(p))
        if n <= DELETION_STABILITY_CAP:
            _check_deletion_stability(p, result["deletion_stability"])
        if n <= UNIQUENESS_CAP:
            try:
                _check_uniqueness(p, result["uniqueness"])
            except Exception:
                _record(result["uniqueness"], perm.format_perm(p))
        if n <= GROWTH_CAP:
            _check_growth(p, result["growth"])
        if n <= TRIPLE_FACTS_CAP:
            _check_triple_facts(p, result["witness"], result["structure"])
    return result


def _pairs_worker(args: tuple[int, int]) -> dict:
    n, k = args
    m = n - k
    result = {"n": n, "k": k, "pairs": 0, "inverse_forward": _failure_bucket()}
    for q in perm.enumerate_avoiders(m, (bijection.PATTERN_321,), True):
        for heights in paths.enumerate_height_sequences(k, m - 2):
            result["pairs"] += 1
            try:
                p = bijection.inverse_map(q, heights)
                ok = len(p) == n and bijection.forward_map(p) == (q, heights)
            except Exception:
                ok = False
            if not ok:
                _record(result["inverse_forward"], f"{perm.format_perm(q)} | {heights}")
    return result


# ---------------------------------------------------------------------------
# orchestration


def _run_cells(cells: list, worker, threads: int) -> list:
    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, cells))
    return [worker(cell) for cell in cells]


def run_verification(max_n: int, threads: int | None = None) -> dict:
    """Run every invariant suite up to length ``max_n`` and assemble the report.

    Returns the report as a JSON-ready dict; report["all_passed"] is the
    overall verdict.  Worker count affects only the duration field.
    """
    threads = 1 if threads is None else max(1, threads)
    started = time.perf_counter()

    suites = {
        "perm_insert_delete_round_trip": _suite_insert_delete(max_n),
        "perm_components_reassembly_and_avoidance": _suite_components(max_n),
        "perm_factorial_enumeration": _suite_factorial(max_n),
        "paths_peak_deletion_round_trip": _suite_path_round_trip(),
        "paths_height_sequence_counts": _suite_height_counts(),
        "paths_indecomposable_dyck_catalan": _suite_indecomposable_dyck(),
        "perm_indecomposable_321_catalan": _suite_indecomposable_321_count(),
        "series_reciprocal_identity": _suite_series_reciprocal(),
        "series_coefficients_match_summation": _suite_series_summation(),
    }

    cells = [(n, first) for n in range(1, max_n + 1) for first in range(1, n + 1)]
    cell_results = _run_cells(cells, _cell_worker, threads)
    pair_cells = [(n, k) for n in range(2, max_n + 1) for k in range(n - 1)]
    pair_results = _run_cells(pair_cells, _pairs_worker, threads)

    totals = {0: 1 if max_n >= 0 else 0}
    indec = {0: 0}
    per_k: dict[int, dict[int, int]] = {}
    sweep_buckets = {
        name: _failure_bucket()
        for name in (
            "forward_inverse",
            "blue_count",
            "deletion_stability",
            "uniqueness",
            "growth",
            "witness",
            "structure",
        )
    }
    for cell in cell_results:
        n = cell["n"]
        totals[n] = totals.get(n, 0) + cell["total"]
        indec[n] = indec.get(n, 0) + cell["indecomposable"]
        bucket = per_k.setdefault(n, {})
        for k, count in cell["per_k"].items():
            bucket[k] = bucket.get(k, 0) + count
        for name in sweep_buckets:
            _merge(sweep_buckets[name], cell[name])

    pairs_by_nk: dict[tuple[int, int], int] = {}
    inverse_forward = _failure_bucket()
    for cell in pair_results:
        pairs_by_nk[(cell["n"], cell["k"])] = cell["pairs"]
        _merge(inverse_forward, cell["inverse_forward"])

    cardinality = _failure_bucket()
    per_n_rows = []
    for n in range(2, max_n + 1):
        rows = []
        for k in range(n - 1):
            avoiders = per_k.get(n, {}).get(k, 0)
            product = paths.catalan_number(n - 1 - k) * paths.ballot(k, n - k - 2)
            enumerated = pairs_by_nk.get((n, k), 0)
            rows.append({"k": k, "avoiders": avoiders, "product": product})
            if avoiders != product or enumerated != product:
                _record(cardinality, f"n={n},k={k}")
        stray = set(per_k.get(n, {})) - set(range(n - 1))
        for k in sorted(stray):
            _record(cardinality, f"n={n},k={k} (outside 0..n-2)")
        per_n_rows.append({"n": n, "per_k": rows})

    counts_bucket = _failure_bucket()
    order = max(max_n, 1)
    f = series.f_series(order)
    g = series.g_series(order)
    for n in range(max_n + 1):
        if totals.get(n, 0) != f.coefficient(n):
            _record(counts_bucket, f"all,n={n}")
        if indec.get(n, 0) != g.coefficient(n) or indec.get(n, 0) != series.u_by_formula(n):
            _record(counts_bucket, f"indecomposable,n={n}")

    suites["bijection_per_k_cardinalities"] = {
        "passed": cardinality["count"] == 0,
        "scale": max_n,
        **cardinality,
    }
    suites["bijection_forward_then_inverse_identity"] = {
        "passed": sweep_buckets["forward_inverse"]["count"] == 0,
        "scale": max_n,
        **sweep_buckets["forward_inverse"],
    }
    suites["bijection_inverse_then_forward_identity"] = {
        "passed": inverse_forward["count"] == 0,
        "scale": max_n,
        **inverse_forward,
    }
    suites["bijection_height_count_equals_blue_count"] = {
        "passed": sweep_buckets["blue_count"]["count"] == 0,
        "scale": max_n,
        **sweep_buckets["blue_count"],
    }
    suites["bijection_peak_deletion_stability"] = {
        "passed": sweep_buckets["deletion_stability"]["count"] == 0,
        "scale": min(max_n, DELETION_STABILITY_CAP),
        **sweep_buckets["deletion_stability"],
    }
    suites["bijection_insertion_position_uniqueness"] = {
        "passed": sweep_buckets["uniqueness"]["count"] == 0,
        "scale": min(max_n, UNIQUENESS_CAP),
        **sweep_buckets["uniqueness"],
    }
    suites["bijection_insertion_growth_law"] = {
        "passed": sweep_buckets["growth"]["count"] == 0,
        "scale": min(max_n, GROWTH_CAP),
        **sweep_buckets["growth"],
    }
    suites["bijection_witness_and_finite_c_exceeds_b"] = {
        "passed": sweep_buckets["witness"]["count"] == 0,
        "scale": min(max_n, TRIPLE_FACTS_CAP),
        **sweep_buckets["witness"],
    }
    suites["bijection_structure_facts"] = {
        "passed": sweep_buckets["structure"]["count"] == 0,
        "scale": min(max_n, TRIPLE_FACTS_CAP),
        **sweep_buckets["structure"],
    }
    suites["series_counts_match_enumeration"] = {
        "passed": counts_bucket["count"] == 0,
        "scale": max_n,
        **counts_bucket,
    }

    round_trip_failures = sweep_buckets["forward_inverse"]["count"] + inverse_forward["count"]
    report = {
        "schema": "v1",
        "max_n": max_n,
        "threads": threads,
        "all_passed": all(s["passed"] for s in suites.values()),
        "round_trip_failures": round_trip_failures,
        "counts": [
            {"n": n, "avoiders": totals.get(n, 0), "indecomposable": indec.get(n, 0)}
            for n in range(max_n + 1)
        ],
        "bijection": {"per_n": per_n_rows},
        "suites": suites,
        "duration_seconds": round(time.perf_counter() - started, 6),
    }
    return report
