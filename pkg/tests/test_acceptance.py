"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the PASS
lines as they happen).  The randomized criteria use fixed seeds throughout,
so the whole suite is reproducible.
"""

from __future__ import annotations

import itertools
import json
import multiprocessing
import os
import random
from fractions import Fraction
from functools import lru_cache

import pytest

from polyenum import (
    Digraph,
    EnumerationSink,
    ErrorBudget,
    Hypergraph3,
    Monomial,
    RandomStream,
    SparsePolynomial,
    another_monomial,
    arborescence_blackbox,
    cycle_cover_blackbox,
    determinant,
    enumerate_amplified,
    explicit_blackbox,
    has_monomial_between,
    has_monomial_between_onecall,
    hypertree_blackbox,
    iter_multilinear,
    matching_blackbox,
    pfaffian,
    probably_nonzero,
    run_with_metrics,
)
from polyenum.harness import brute_force_interpolate, brute_force_structures

from conftest import orient_for_matchings

COEFF_BOUND = 1 << 64


def _ok(name: str) -> None:
    print(f"ACCEPTANCE PASS  {name}")


# ---------------------------------------------------------------------------
# instance generators (exact term counts, fixed seeds)
# ---------------------------------------------------------------------------


def _nonzero(rnd, bound=COEFF_BOUND) -> Fraction:
    c = 0
    while c == 0:
        c = rnd.randint(-bound, bound)
    return Fraction(c)


def _multilinear_exact(rnd, n, terms_wanted):
    terms = {}
    while len(terms) < terms_wanted:
        exps = tuple(rnd.randint(0, 1) for _ in range(n))
        if exps not in terms:
            terms[exps] = _nonzero(rnd)
    return SparsePolynomial(n, terms)


def _distinct_supports_exact(rnd, n, terms_wanted, max_exp):
    terms = {}
    supports = set()
    while len(terms) < terms_wanted:
        support = frozenset(i + 1 for i in range(n) if rnd.random() < 0.45)
        if support in supports:
            continue
        supports.add(support)
        exps = tuple(rnd.randint(1, max_exp) if i + 1 in support else 0 for i in range(n))
        terms[exps] = _nonzero(rnd)
    return SparsePolynomial(n, terms)


def _degree2_exact(rnd, n, terms_wanted):
    terms = {}
    while len(terms) < terms_wanted:
        exps = tuple(rnd.choice((0, 0, 1, 2)) for _ in range(n))
        if exps not in terms:
            terms[exps] = _nonzero(rnd, 1 << 32)
    return SparsePolynomial(n, terms)


@lru_cache(maxsize=None)
def _criterion1_runs():
    runs = []
    for i in range(100):
        rnd = random.Random(51_000 + i)
        if i == 0:
            n, t = 12, 30
        elif i == 1:
            n, t = 12, 25
        else:
            n = rnd.randint(1, 12)
            t = rnd.randint(1, min(30, 1 << n))
        target = _multilinear_exact(rnd, n, t)
        box = explicit_blackbox(target)  # multilinear default: D = n
        result, report = run_with_metrics("multilinear", box, ErrorBudget(40), seed=i)
        truth = brute_force_interpolate(explicit_blackbox(target), 1)
        runs.append((target, truth, result, report))
    return runs


@lru_cache(maxsize=None)
def _criterion2_runs():
    runs = []
    for i in range(100):
        rnd = random.Random(52_000 + i)
        if i == 0:
            n, max_exp = 10, 2
            t = 25
        else:
            n = rnd.randint(1, 10)
            max_exp = 3 if n <= 6 else 2
            t = rnd.randint(1, min(30, (1 << n) - 0))
        target = _distinct_supports_exact(rnd, n, t, max_exp)
        box = explicit_blackbox(target)
        result, report = run_with_metrics("incremental", box, ErrorBudget(40), seed=i)
        truth = brute_force_interpolate(explicit_blackbox(target), target.max_var_degree)
        runs.append((target, truth, result, report))
    return runs


@lru_cache(maxsize=None)
def _criterion3_runs():
    runs = []
    for i in range(100):
        rnd = random.Random(53_000 + i)
        if i == 0:
            n, t = 8, 12
        else:
            n = rnd.randint(1, 8)
            t = rnd.randint(1, min(12, 3**n - 1))
        target = _degree2_exact(rnd, n, t)
        box = explicit_blackbox(target)
        result, report = run_with_metrics("degree2", box, ErrorBudget(40), seed=i)
        truth = brute_force_interpolate(explicit_blackbox(target), 2)
        runs.append((target, truth, result, report))
    return runs


def test_criterion_01_multilinear_exact_interpolation():
    exact = sum(1 for target, truth, result, _ in _criterion1_runs() if result == truth == target)
    assert exact == 100
    _ok("criterion 1: multilinear enumeration exact on 100/100 random instances (b=40)")


def test_criterion_02_distinct_supports_exact_interpolation():
    exact = sum(1 for target, truth, result, _ in _criterion2_runs() if result == truth == target)
    assert exact == 100
    _ok("criterion 2: incremental enumeration exact on 100/100 distinct-support instances (b=40)")


def test_criterion_03_degree2_exact_interpolation():
    exact = sum(1 for target, truth, result, _ in _criterion3_runs() if result == truth == target)
    assert exact == 100
    _ok("criterion 3: degree-2 enumeration matches dense grid interpolation on 100/100 instances (b=40)")


def test_criterion_04_call_count_ledgers():
    checked = 0
    for runs in (_criterion1_runs(), _criterion2_runs(), _criterion3_runs()):
        for _, _, _, report in runs:
            bound = report.gap_call_bound()
            for gap in report.gap_calls():
                assert gap <= bound, (report.algorithm, report.n_vars, gap, bound)
                checked += 1
    _ok(f"criterion 4: every per-gap oracle-call count within its exact ledger bound ({checked} gaps)")


def test_criterion_05_point_size_bounds():
    for runs in (_criterion1_runs(), _criterion2_runs(), _criterion3_runs()):
        for _, _, _, report in runs:
            assert report.max_point_abs <= max(2 * report.degree_bound, report.n_vars)
    # the plain randomized zero test keeps every coordinate within 2D
    for seed in range(200):
        rnd = random.Random(54_000 + seed)
        target = _multilinear_exact(rnd, rnd.randint(1, 8), 5)
        box = explicit_blackbox(target)
        probably_nonzero(box, ErrorBudget(10), RandomStream(seed))
        assert box.stats.max_point_abs <= 2 * box.degree_bound
    _ok("criterion 5: evaluation points within max(2D, n); plain zero test within 2D")


def test_criterion_06_one_sided_error():
    false_counts = {"plain": 0, "interp": 0, "onecall": 0}
    for seed in range(1000):
        box = explicit_blackbox(SparsePolynomial.zero(3))
        if not probably_nonzero(box, ErrorBudget(10), RandomStream(seed)):
            false_counts["plain"] += 1
        if not has_monomial_between(box, {1}, {2}, ErrorBudget(6), RandomStream(seed)):
            false_counts["interp"] += 1
        if not has_monomial_between_onecall(box, {1}, {2}, ErrorBudget(6), RandomStream(seed)):
            false_counts["onecall"] += 1
    assert false_counts == {"plain": 1000, "interp": 1000, "onecall": 1000}
    _ok("criterion 6: all three zero tests answer false on the zero box, 1000/1000 seeds each")


def test_criterion_07_failure_rate_calibration():
    # X1 X3 - X2 X3 with D = 2: a single trial draws from [1,4]^3 and misses
    # exactly when x1 == x2.
    target = SparsePolynomial(3, {(1, 0, 1): Fraction(1), (0, 1, 1): Fraction(-1)})
    vanishing = sum(
        1 for pt in itertools.product(range(1, 5), repeat=3) if target.evaluate(pt) == 0
    )
    exact_rate = Fraction(vanishing, 4**3)
    assert exact_rate == Fraction(1, 4)
    misses = 0
    runs = 10_000
    for seed in range(runs):
        box = explicit_blackbox(target, degree_bound=2)
        if not probably_nonzero(box, ErrorBudget(1), RandomStream(seed)):
            misses += 1
    assert abs(misses / runs - 0.25) <= 0.02
    _ok(f"criterion 7: single-trial false-negative rate {misses / runs:.4f} within 1/4 +- 0.02")


# ---------------------------------------------------------------------------
# criterion 8: combinatorial bijections
# ---------------------------------------------------------------------------

_SWEEP_BUDGET_SMALL = 12
_SWEEP_BUDGET_N4 = 10


def _supports_of_run(box, seed, b):
    out = set()
    coefficients_unit = True
    for m in iter_multilinear(box, ErrorBudget(b), RandomStream(seed)):
        out.add(m.support)
        if m.coefficient not in (1, -1):
            coefficients_unit = False
    return out, coefficients_unit


def _sweep_cycle_covers(args):
    n, mask, b = args
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)]
    edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
    graph = Digraph(n, edges)
    got, _ = _supports_of_run(cycle_cover_blackbox(graph), seed=mask * 7 + n, b=b)
    want = brute_force_structures(graph, "cycle-covers")
    return None if got == want else ("cycle-covers", n, mask)


def _sweep_arborescences(args):
    n, mask, root, b = args
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
    graph = Digraph(n, edges)
    got, _ = _supports_of_run(arborescence_blackbox(graph, root), seed=mask * 11 + root, b=b)
    want = brute_force_structures(graph, "arborescences", root=root)
    return None if got == want else ("arborescences", n, mask, root)


def _pool():
    procs = min(2, os.cpu_count() or 1)
    return multiprocessing.get_context("fork").Pool(procs)


def test_criterion_08a_exhaustive_cycle_covers():
    tasks = []
    for n in range(1, 4):
        for mask in range(1 << (n * n)):
            tasks.append((n, mask, _SWEEP_BUDGET_SMALL))
    for mask in range(1 << 16):
        tasks.append((4, mask, _SWEEP_BUDGET_N4))
    failures = []
    with _pool() as pool:
        for res in pool.imap_unordered(_sweep_cycle_covers, tasks, chunksize=512):
            if res is not None:
                failures.append(res)
    assert not failures, failures[:5]
    _ok(f"criterion 8a: cycle-cover supports match exhaustively on all {len(tasks)} digraphs with <= 4 vertices")


def test_criterion_08b_exhaustive_arborescences():
    tasks = []
    for n in range(1, 5):
        b = _SWEEP_BUDGET_N4 if n == 4 else _SWEEP_BUDGET_SMALL
        m = n * (n - 1)
        for mask in range(1 << m):
            for root in range(1, n + 1):
                tasks.append((n, mask, root, b))
    failures = []
    with _pool() as pool:
        for res in pool.imap_unordered(_sweep_arborescences, tasks, chunksize=512):
            if res is not None:
                failures.append(res)
    assert not failures, failures[:5]
    _ok(
        "criterion 8b: arborescence supports match exhaustively on all loopless digraphs "
        f"with <= 4 vertices, every root ({len(tasks)} runs; self-loops are inert and covered by 8e)"
    )


def test_criterion_08c_exhaustive_matchings():
    runs = 0
    for n in range(1, 5):
        vertex_pairs = list(itertools.combinations(range(1, n + 1), 2))
        for mask in range(1 << len(vertex_pairs)):
            edges = [p for i, p in enumerate(vertex_pairs) if mask >> i & 1]
            oriented = orient_for_matchings(n, edges)
            assert oriented is not None  # every graph this small is orientable
            got, unit = _supports_of_run(
                matching_blackbox(oriented), seed=mask * 13 + n, b=_SWEEP_BUDGET_SMALL
            )
            assert unit
            want = brute_force_structures(oriented, "matchings")
            assert got == want, (n, mask, got, want)
            runs += 1
    _ok(f"criterion 8c: perfect-matching supports match exhaustively on all graphs with <= 4 vertices ({runs} runs)")


def test_criterion_08d_exhaustive_hypertrees():
    runs = 0
    for n in range(3, 5):
        triples = list(itertools.combinations(range(1, n + 1), 3))
        for mask in range(1 << len(triples)):
            edges = tuple(t for i, t in enumerate(triples) if mask >> i & 1)
            graph = Hypergraph3(n, edges)
            got, unit = _supports_of_run(
                hypertree_blackbox(graph), seed=mask * 17 + n, b=_SWEEP_BUDGET_SMALL
            )
            assert unit
            want = brute_force_structures(graph, "hypertrees")
            assert got == want, (n, mask, got, want)
            runs += 1
    _ok(f"criterion 8d: spanning-hypertree supports match exhaustively on all 3-uniform hypergraphs with <= 4 vertices ({runs} runs)")


def test_criterion_08e_random_instances_up_to_seven_vertices():
    rnd = random.Random(58_000)
    b = 12

    done = 0
    while done < 50:  # cycle covers, self-loops included
        n = rnd.randint(5, 7)
        edges = tuple(
            (u, v)
            for u in range(1, n + 1)
            for v in range(1, n + 1)
            if rnd.random() < 1.9 / n
        )
        try:
            graph = Digraph(n, edges)
        except ValueError:
            continue
        want = brute_force_structures(graph, "cycle-covers")
        if len(want) > 12:
            continue
        got, _ = _supports_of_run(cycle_cover_blackbox(graph), seed=58_100 + done, b=b)
        assert got == want, (edges, got, want)
        done += 1

    done = 0
    while done < 50:  # arborescences
        n = rnd.randint(5, 7)
        edges = tuple(
            (u, v)
            for u in range(1, n + 1)
            for v in range(1, n + 1)
            if u != v and rnd.random() < 2.4 / n
        )
        if rnd.random() < 0.3:  # sprinkle inert self-loops
            edges = edges + tuple((v, v) for v in range(1, n + 1) if rnd.random() < 0.2)
        graph = Digraph(n, edges)
        root = rnd.randint(1, n)
        want = brute_force_structures(graph, "arborescences", root=root)
        if len(want) > 16:
            continue
        got, unit = _supports_of_run(
            arborescence_blackbox(graph, root), seed=58_200 + done, b=b
        )
        assert unit
        assert got == want, (edges, root, got, want)
        done += 1

    done = 0
    while done < 50:  # matchings with solved valid orientations
        n = rnd.choice((4, 5, 6))
        edges = [p for p in itertools.combinations(range(1, n + 1), 2) if rnd.random() < 0.55]
        oriented = orient_for_matchings(n, edges)
        if oriented is None:
            continue
        want = brute_force_structures(oriented, "matchings")
        got, unit = _supports_of_run(matching_blackbox(oriented), seed=58_300 + done, b=b)
        assert unit
        assert got == want, (oriented.edges, got, want)
        done += 1

    done = 0
    units_checked = 0
    while done < 50:  # spanning hypertrees
        n = rnd.choice((5, 7))
        p = 0.45 if n == 5 else 0.3
        edges = tuple(t for t in itertools.combinations(range(1, n + 1), 3) if rnd.random() < p)
        graph = Hypergraph3(n, edges)
        want = brute_force_structures(graph, "hypertrees")
        if len(want) > 20:
            continue
        got, unit = _supports_of_run(hypertree_blackbox(graph), seed=58_400 + done, b=b)
        assert unit
        units_checked += len(got)
        assert got == want, (edges, got, want)
        done += 1
    assert units_checked > 0  # the +-1 coefficient check really saw hypertrees

    _ok("criterion 8e: 50 random instances per family on <= 7 vertices all match brute force; hypertree coefficients all +-1")


def test_criterion_09_monotone_determinism():
    cases = []
    rnd = random.Random(59_000)
    terms = {}
    for _ in range(8):
        exps = tuple(rnd.randint(0, 1) for _ in range(6))
        terms[exps] = Fraction(rnd.randint(1, 1 << 40))
    cases.append(("explicit-positive", explicit_blackbox(SparsePolynomial(6, terms)), "multilinear"))
    negative = {e: -c for e, c in terms.items()}
    cases.append(("explicit-negative", explicit_blackbox(SparsePolynomial(6, negative)), "multilinear"))
    cases.append(("explicit-incremental", explicit_blackbox(SparsePolynomial(6, terms)), "incremental"))
    graph = Digraph(4, ((1, 2), (2, 3), (3, 4), (1, 3), (2, 4)))
    cases.append(("arborescence", arborescence_blackbox(graph, 1), "multilinear"))
    oriented = orient_for_matchings(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    cases.append(("matching", matching_blackbox(oriented), "multilinear"))

    for label, box, algorithm in cases:
        streams = []
        for seed in (1, 987_654_321):
            result, report = run_with_metrics(algorithm, box, ErrorBudget(30), seed, monotone=True)
            assert report.total_bits == 0, label
            stream = "\n".join(
                json.dumps({"coefficient": str(m.coefficient), "exponents": list(m.exponents)})
                for m in result.monomials()
            )
            streams.append(stream)
        assert streams[0] == streams[1], label
    _ok("criterion 9: monotone runs byte-identical across seeds with zero random bits (5 box kinds)")


def test_criterion_10_pfaffian_identity():
    rnd = random.Random(60_000)
    for i in range(100):
        n = rnd.randint(1, 10)
        m = [[Fraction(0)] * n for _ in range(n)]
        for r in range(n):
            for c in range(r + 1, n):
                v = Fraction(rnd.randint(-99, 99), rnd.randint(1, 9) if i % 3 == 0 else 1)
                m[r][c] = v
                m[c][r] = -v
        assert pfaffian(m) ** 2 == determinant(m)
    _ok("criterion 10: pfaffian(M)^2 == det(M) exact on 100 random skew matrices up to 10x10")


def test_criterion_11_another_solution_and_amplification():
    rnd = random.Random(61_000)
    for i in range(100):
        n = rnd.randint(1, 6)
        t = rnd.randint(1, min(8, 1 << n))
        target = _multilinear_exact(rnd, n, t)
        monomials = target.monomials()
        k = rnd.randint(0, t)
        known = rnd.sample(monomials, k)
        box = explicit_blackbox(target)
        got = another_monomial(box, ErrorBudget(25), known, RandomStream(61_500 + i))
        if k == t:
            assert got is None
        else:
            assert got is not None
            assert got in monomials
            assert got not in known

    matched = 0
    for i in range(30):
        n = rnd.randint(2, 6)
        t = rnd.randint(1, min(6, (1 << n) - 1))
        target = _multilinear_exact(rnd, n, t)
        base_seed = 62_000 + i
        control_box = explicit_blackbox(target)
        control = SparsePolynomial.from_monomials(
            n,
            iter_multilinear(control_box, ErrorBudget(20), RandomStream(base_seed).split()),
        )
        box = explicit_blackbox(target)
        sink = EnumerationSink()  # the sink itself rejects any duplicate
        enumerate_amplified(box, ErrorBudget(20), 3, RandomStream(base_seed), sink)
        amplified = SparsePolynomial.from_monomials(n, sink.monomials)
        if control == target:
            assert amplified == target
            matched += 1
    assert matched >= 25  # b=20 single runs essentially never fail
    _ok("criterion 11: another-solution correct on 100/100; k=3 amplification complete and duplicate-free")
