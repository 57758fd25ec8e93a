"""Shared instance generators and independent oracles for the test suite.

The oracles here (permutation-expansion determinant, pairing-sum Pfaffian,
Möbius inversion) are deliberately written differently from the library
code so the two routes check each other.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from polyenum import Digraph, Hypergraph3, OrientedGraph, SparsePolynomial


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_multilinear(
    rnd: random.Random,
    n: int,
    max_terms: int,
    coeff_bound: int = 1 << 20,
    allow_constant: bool = True,
) -> SparsePolynomial:
    terms: dict[tuple[int, ...], Fraction] = {}
    want = rnd.randint(1, max_terms)
    attempts = 0
    while len(terms) < want and attempts < 20 * max_terms:
        attempts += 1
        exps = tuple(rnd.randint(0, 1) for _ in range(n))
        if not allow_constant and not any(exps):
            continue
        if exps in terms:
            continue
        c = 0
        while c == 0:
            c = rnd.randint(-coeff_bound, coeff_bound)
        terms[exps] = Fraction(c)
    return SparsePolynomial(n, terms)


def random_distinct_supports(
    rnd: random.Random,
    n: int,
    max_terms: int,
    max_exp: int = 3,
    coeff_bound: int = 1 << 20,
) -> SparsePolynomial:
    terms: dict[tuple[int, ...], Fraction] = {}
    supports: set[frozenset[int]] = set()
    want = rnd.randint(1, max_terms)
    attempts = 0
    while len(terms) < want and attempts < 30 * max_terms:
        attempts += 1
        support = frozenset(i + 1 for i in range(n) if rnd.random() < 0.4)
        if support in supports:
            continue
        exps = tuple(rnd.randint(1, max_exp) if i + 1 in support else 0 for i in range(n))
        c = 0
        while c == 0:
            c = rnd.randint(-coeff_bound, coeff_bound)
        supports.add(support)
        terms[exps] = Fraction(c)
    return SparsePolynomial(n, terms)


def random_degree2(
    rnd: random.Random, n: int, max_terms: int, coeff_bound: int = 1 << 16
) -> SparsePolynomial:
    terms: dict[tuple[int, ...], Fraction] = {}
    want = rnd.randint(1, max_terms)
    attempts = 0
    while len(terms) < want and attempts < 30 * max_terms:
        attempts += 1
        exps = tuple(rnd.choice((0, 0, 1, 2)) for _ in range(n))
        if exps in terms:
            continue
        c = 0
        while c == 0:
            c = rnd.randint(-coeff_bound, coeff_bound)
        terms[exps] = Fraction(c)
    return SparsePolynomial(n, terms)


def random_digraph(rnd: random.Random, n: int, p: float, loops: bool = True) -> Digraph:
    edges = []
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u == v and not loops:
                continue
            if rnd.random() < p:
                edges.append((u, v))
    return Digraph(n, tuple(edges))


def random_hypergraph(rnd: random.Random, n: int, p: float) -> Hypergraph3:
    edges = [e for e in itertools.combinations(range(1, n + 1), 3) if rnd.random() < p]
    return Hypergraph3(n, tuple(edges))


# ---------------------------------------------------------------------------
# independent linear-algebra oracles
# ---------------------------------------------------------------------------


def det_by_permutations(rows):
    """Sum over permutations: the textbook determinant definition."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = _perm_sign(perm)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _pairings(items):
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1 :]
        for sub in _pairings(rest):
            yield [(first, items[k])] + sub


def pfaffian_by_pairings(rows):
    """Sum over perfect pairings with permutation signs (independent oracle)."""
    n = len(rows)
    if n % 2 == 1:
        return 0
    total = 0
    for pairing in _pairings(tuple(range(n))):
        flat = [x for pair in pairing for x in pair]
        term = _perm_sign(_as_perm(flat))
        for i, j in pairing:
            term *= rows[i][j]
        total += term
    return total


def _as_perm(flat):
    order = sorted(range(len(flat)), key=lambda k: flat[k])
    inverse = [0] * len(flat)
    for pos, k in enumerate(order):
        inverse[k] = pos
    return inverse


def mobius_multilinear(eval_fn, n: int) -> dict[tuple[int, ...], Fraction]:
    """Subset Möbius inversion on the {0,1}^n grid; d = 1 dense oracle."""
    values = {}
    for bits in itertools.product((0, 1), repeat=n):
        values[bits] = Fraction(eval_fn(bits))
    coeffs = {}
    for s in itertools.product((0, 1), repeat=n):
        ones = [i for i, b in enumerate(s) if b]
        total = Fraction(0)
        for sub in itertools.product(*[(0, 1) if i in ones else (0,) for i in range(n)]):
            parity = (sum(s) - sum(sub)) % 2
            total += -values[sub] if parity else values[sub]
        if total:
            coeffs[s] = total
    return coeffs


# ---------------------------------------------------------------------------
# Pfaffian orientations by GF(2) solving
# ---------------------------------------------------------------------------


def _matching_sign(pairs) -> int:
    flat = [x for pair in sorted(pairs) for x in pair]
    return _perm_sign(_as_perm(flat))


def _all_matchings(n, edge_set):
    def extend(unmatched):
        if not unmatched:
            yield []
            return
        u = min(unmatched)
        for v in sorted(unmatched - {u}):
            if (u, v) in edge_set or (v, u) in edge_set:
                for rest in extend(unmatched - {u, v}):
                    yield [(u, v)] + rest

    yield from extend(frozenset(range(1, n + 1)))


def orient_for_matchings(n: int, undirected_edges) -> OrientedGraph | None:
    """An orientation under which all perfect-matching signs agree.

    Solved as a GF(2) linear system (one constraint per matching relative
    to a base matching).  Returns None when no such orientation exists
    (e.g. K3,3-like graphs).
    """
    edges = [tuple(sorted(e)) for e in undirected_edges]
    edge_index = {e: i for i, e in enumerate(edges)}
    edge_set = set(edges)
    matchings = list(_all_matchings(n, edge_set))
    if len(matchings) <= 1:
        return OrientedGraph(n, tuple(edges))

    def row_of(matching):
        bits = 0
        for u, v in matching:
            bits ^= 1 << edge_index[(u, v)]
        return bits

    base = matchings[0]
    base_row = row_of(base)
    base_sign = _matching_sign(base)
    # flip_e = 1 means edge e is oriented high->low.  Constraint per matching:
    # sum of flips over the symmetric difference with the base == sign parity.
    system = []
    for m in matchings[1:]:
        lhs = row_of(m) ^ base_row
        rhs = 0 if _matching_sign(m) == base_sign else 1
        system.append((lhs, rhs))

    # Gaussian elimination over GF(2); each stored row's pivot is its top bit.
    pivots: dict[int, tuple[int, int]] = {}
    for lhs, rhs in system:
        while lhs:
            col = lhs.bit_length() - 1
            if col not in pivots:
                pivots[col] = (lhs, rhs)
                lhs = rhs = 0
                break
            plhs, prhs = pivots[col]
            lhs ^= plhs
            rhs ^= prhs
        if lhs == 0 and rhs:
            return None

    # Back-substitute bottom-up: a row's non-pivot bits are all lower columns.
    flips = 0
    for pcol in sorted(pivots):
        plhs, prhs = pivots[pcol]
        acc = prhs
        rest = plhs & ~(1 << pcol)
        while rest:
            col = rest.bit_length() - 1
            acc ^= flips >> col & 1
            rest &= ~(1 << col)
        if acc:
            flips |= 1 << pcol
    oriented = []
    for i, (u, v) in enumerate(edges):
        oriented.append((v, u) if flips >> i & 1 else (u, v))
    return OrientedGraph(n, tuple(oriented))
