"""Delay metrics and independent brute-force oracles.

The metrics side runs an enumerator with an instrumented sink and reports,
per output: the wall-clock time stamp, the oracle calls made since the
previous output and the random bits consumed since then.  Oracle-call delay
is the asserted quantity (the per-gap ledger bounds below are constructive,
not statistical); wall-clock delay is reported but never asserted.

The brute-force side gives ground truth two ways: dense grid interpolation
for any black box whose per-variable degree is bounded, and exhaustive
combinatorial search for the graph families.  These are the oracles every
randomized run is judged against.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .arith import RandomStream, ceil_log2, interpolate_univariate
from .algorithms import ErrorBudget, iter_algorithm
from .blackbox import BlackBox
from .families import Digraph, Hypergraph3, OrientedGraph
from .sparsepoly import Monomial, SparsePolynomial


class ResourceLimitError(RuntimeError):
    """An exhaustive oracle would exceed its configured search budget."""


# ---------------------------------------------------------------------------
# per-gap oracle-call bounds (exact, integer arithmetic)
# ---------------------------------------------------------------------------


def find_monomial_call_bound(n: int, b: int) -> int:
    """Calls used by the monomial finder at budget 2^-b: n+1 zero tests plus recovery."""
    return (n + 1) * (b + ceil_log2(n + 1)) + n + 1


def incremental_gap_call_bound(n: int, b: int) -> int:
    """Calls between consecutive outputs of the incremental enumerator."""
    return (n + 2) * (b + n + 1 + ceil_log2(n + 1)) + n + 1


def multilinear_gap_call_bound(n: int, b: int, degree_bound: int) -> int:
    """Calls between consecutive outputs of the multilinear enumerator."""
    if n == 0:
        return 1
    return 2 * n * (b + n + ceil_log2(n)) * (degree_bound + 1) + (degree_bound + 1)


def degree2_gap_call_bound(n: int, b: int) -> int:
    """Calls between consecutive outputs of the degree-2 enumerator.

    Derived from the construction: one outer zero test at exponent b+n+1,
    a shrink phase of n+1 zero tests at exponent b+n+1+ceil(log2(n+1)),
    at most n greedy support tests on the quotient box, each at exponent
    b+n+1+ceil(log2 n) with at most |L|+1 <= n+1 samples per repetition,
    the coefficient read-off (n+1 calls), and the constant-strip call.
    """
    if n == 0:
        return 2
    outer = b + n + 1
    shrink = (n + 1) * (b + n + 1 + ceil_log2(n + 1))
    greedy = n * (n + 1) * (b + n + 1 + ceil_log2(n))
    return outer + shrink + greedy + (n + 1) + 1


GAP_BOUNDS = {
    "incremental": lambda n, b, d: incremental_gap_call_bound(n, b),
    "multilinear": lambda n, b, d: multilinear_gap_call_bound(n, b, d),
    "degree2": lambda n, b, d: degree2_gap_call_bound(n, b),
}


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OutputRecord:
    index: int
    elapsed: float
    calls_since_previous: int
    bits_since_previous: int


@dataclass
class MetricsReport:
    """Everything measured during one instrumented enumeration run."""

    algorithm: str
    n_vars: int
    degree_bound: int
    budget_exponent: int
    seed: int
    records: list[OutputRecord] = field(default_factory=list)
    trailing_calls: int = 0
    total_calls: int = 0
    total_bits: int = 0
    max_point_abs: int = 0
    elapsed_total: float = 0.0

    def gap_calls(self) -> list[int]:
        """Oracle calls per gap, including the gap after the last output."""
        return [r.calls_since_previous for r in self.records] + [self.trailing_calls]

    def max_gap_calls(self) -> int:
        return max(self.gap_calls())

    def gap_call_bound(self) -> int:
        return GAP_BOUNDS[self.algorithm](self.n_vars, self.budget_exponent, self.degree_bound)

    @property
    def max_point_bits(self) -> int:
        return self.max_point_abs.bit_length()

    def summary(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "n_vars": self.n_vars,
            "degree_bound": self.degree_bound,
            "budget_exponent": self.budget_exponent,
            "seed": self.seed,
            "outputs": len(self.records),
            "total_calls": self.total_calls,
            "trailing_calls": self.trailing_calls,
            "total_random_bits": self.total_bits,
            "max_point_abs": str(self.max_point_abs),
            "max_point_bits": self.max_point_bits,
            "max_gap_calls": self.max_gap_calls(),
            "gap_call_bound": self.gap_call_bound(),
            "elapsed_seconds": self.elapsed_total,
        }

    def to_lines(self) -> list[str]:
        """Line-oriented serialization: one record per output, then a summary."""
        lines = [
            "output {index} elapsed {elapsed:.6f} calls {calls} bits {bits}".format(
                index=r.index,
                elapsed=r.elapsed,
                calls=r.calls_since_previous,
                bits=r.bits_since_previous,
            )
            for r in self.records
        ]
        s = self.summary()
        lines.append(
            "summary outputs {outputs} total_calls {total_calls} trailing_calls "
            "{trailing_calls} random_bits {total_random_bits} max_point_bits "
            "{max_point_bits} elapsed {elapsed_seconds:.6f}".format(**s)
        )
        return lines


def run_with_metrics(
    algorithm: str,
    box: BlackBox,
    eps: ErrorBudget,
    seed: int,
    *,
    monotone: bool = False,
    variant: str = "interp",
    on_output=None,
) -> tuple[SparsePolynomial, MetricsReport]:
    """Run an enumerator under instrumentation.

    Returns the emitted polynomial and the populated report.  The box's
    call counter may have been used before; only the delta is reported.
    ``on_output(monomial, record)`` is invoked as each monomial arrives.
    """
    rng = RandomStream(seed)
    report = MetricsReport(
        algorithm=algorithm,
        n_vars=box.n,
        degree_bound=box.degree_bound,
        budget_exponent=eps.b,
        seed=seed,
    )
    stats = box.stats
    calls_before = stats.total_calls
    start = time.perf_counter()
    last_calls = calls_before
    last_bits = 0
    emitted: list[Monomial] = []

    for monomial in iter_algorithm(algorithm, box, eps, rng, monotone=monotone, variant=variant):
        now = time.perf_counter()
        stats.note_output()
        record = OutputRecord(
            index=len(emitted) + 1,
            elapsed=now - start,
            calls_since_previous=stats.total_calls - last_calls,
            bits_since_previous=rng.bits_consumed - last_bits,
        )
        report.records.append(record)
        last_calls = stats.total_calls
        last_bits = rng.bits_consumed
        emitted.append(monomial)
        if on_output is not None:
            on_output(monomial, record)

    report.elapsed_total = time.perf_counter() - start
    report.total_calls = stats.total_calls - calls_before
    report.trailing_calls = stats.total_calls - last_calls
    report.total_bits = rng.bits_consumed
    # The stats object tracks the box's lifetime maximum; on a fresh box
    # that is exactly this run's maximum.
    report.max_point_abs = stats.max_point_abs
    return SparsePolynomial.from_monomials(box.n, emitted), report


# ---------------------------------------------------------------------------
# dense interpolation oracle
# ---------------------------------------------------------------------------


def brute_force_interpolate(
    box: BlackBox, per_var_degree: int, *, max_evals: int = 1 << 20
) -> SparsePolynomial:
    """Exact dense interpolation over the grid {0..d}^n.

    Evaluates everywhere, then applies univariate interpolation along one
    axis at a time; for d = 1 this is subset Möbius inversion.  Refuses to
    run past ``max_evals`` grid points.
    """
    n = box.n
    d = per_var_degree
    if d < 0:
        raise ValueError("per-variable degree bound must be nonnegative")
    if (d + 1) ** n > max_evals:
        raise ResourceLimitError(
            f"grid of size {(d + 1) ** n} exceeds the budget of {max_evals} evaluations"
        )
    axis_points = list(range(d + 1))
    values: dict[tuple[int, ...], Fraction] = {
        pt: Fraction(box.evaluate(pt)) for pt in itertools.product(axis_points, repeat=n)
    }
    # Convert one axis at a time: value grids become coefficient grids.
    zero = Fraction(0)
    for axis in range(n):
        converted: dict[tuple[int, ...], Fraction] = {}
        others = [axis_points] * n
        others[axis] = [0]
        for base in itertools.product(*others):
            samples = []
            for y in axis_points:
                key = base[:axis] + (y,) + base[axis + 1 :]
                samples.append((y, values.get(key, zero)))
            poly = interpolate_univariate(samples)
            for e in range(d + 1):
                c = poly.coefficient(e)
                if c:
                    key = base[:axis] + (e,) + base[axis + 1 :]
                    converted[key] = c
        values = converted
    terms = {exps: c for exps, c in values.items() if c != 0}
    return SparsePolynomial(n, terms)


# ---------------------------------------------------------------------------
# exhaustive combinatorial oracles
# ---------------------------------------------------------------------------

_STRUCTURE_VERTEX_LIMIT = 8


def _cycle_covers(graph: Digraph) -> set[frozenset[int]]:
    n = graph.vertices
    index = {edge: i + 1 for i, edge in enumerate(graph.edges)}
    covers = set()
    for perm in itertools.permutations(range(1, n + 1)):
        edges = [(u, perm[u - 1]) for u in range(1, n + 1)]
        if all(e in index for e in edges):
            covers.add(frozenset(index[e] for e in edges))
    return covers


def _arborescences(graph: Digraph, root: int) -> set[frozenset[int]]:
    n = graph.vertices
    in_edges: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, n + 1)}
    for i, (u, v) in enumerate(graph.edges):
        if u != v:
            in_edges[v].append((i + 1, u))
    if n == 1:
        return {frozenset()}
    non_roots = [v for v in range(1, n + 1) if v != root]
    total = 1
    for v in non_roots:
        total *= len(in_edges[v])
        if total == 0:
            return set()
    if total > 1 << 22:
        raise ResourceLimitError(f"{total} parent choices exceed the search budget")
    found = set()
    for choice in itertools.product(*(in_edges[v] for v in non_roots)):
        parent = {v: c[1] for v, c in zip(non_roots, choice)}
        # Every vertex must reach the root by following parents (no cycles).
        ok = True
        for v in non_roots:
            seen = {v}
            w = v
            while w != root:
                w = parent[w]
                if w in seen:
                    ok = False
                    break
                seen.add(w)
            if not ok:
                break
        if ok:
            found.add(frozenset(c[0] for c in choice))
    return found


def _perfect_matchings(graph: OrientedGraph) -> set[frozenset[int]]:
    n = graph.vertices
    if n % 2 == 1:
        return set()
    index = {frozenset(e): i + 1 for i, e in enumerate(graph.edges)}
    adjacency = {v: set() for v in range(1, n + 1)}
    for u, v in graph.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)

    found = set()

    def extend(unmatched: frozenset[int], chosen: frozenset[int]):
        if not unmatched:
            found.add(chosen)
            return
        u = min(unmatched)
        for v in adjacency[u]:
            if v in unmatched and v != u:
                extend(unmatched - {u, v}, chosen | {index[frozenset((u, v))]})

    extend(frozenset(range(1, n + 1)), frozenset())
    return found


def _incidence_is_tree(n_vertices: int, edges: Iterable[tuple[int, int, int]]) -> bool:
    """The bipartite vertex-edge incidence graph is connected and acyclic."""
    edges = list(edges)
    k = len(edges)
    # Nodes: vertices 1..n, edges n+1..n+k; incidence links each edge node
    # to its 3 vertices, so there are 3k links; a tree needs 3k = n + k - 1
    # and connectivity.
    if 3 * k != n_vertices + k - 1:
        return False
    adjacency: dict[int, list[int]] = {v: [] for v in range(1, n_vertices + k + 1)}
    for j, e in enumerate(edges):
        node = n_vertices + j + 1
        for v in e:
            adjacency[node].append(v)
            adjacency[v].append(node)
    seen = {1}
    stack = [1]
    while stack:
        x = stack.pop()
        for y in adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n_vertices + k


def _spanning_hypertrees(graph: Hypergraph3) -> set[frozenset[int]]:
    n = graph.vertices
    if n % 2 == 0 or n < 1:
        return set()
    k = (n - 1) // 2
    found = set()
    for combo in itertools.combinations(range(len(graph.edges)), k):
        edges = [graph.edges[i] for i in combo]
        covered = set()
        for e in edges:
            covered.update(e)
        if len(covered) == n and _incidence_is_tree(n, edges):
            found.add(frozenset(i + 1 for i in combo))
    return found


def brute_force_structures(
    instance, family: str, *, root: int | None = None
) -> set[frozenset[int]]:
    """Exhaustively enumerate a family's objects as sets of edge indices.

    ``family`` is one of "cycle-covers", "arborescences" (needs ``root``),
    "matchings", "hypertrees".  Edge indices are 1-based in input order,
    matching the corresponding black box's variable numbering.
    """
    if instance.vertices > _STRUCTURE_VERTEX_LIMIT:
        raise ResourceLimitError(
            f"{instance.vertices} vertices exceed the exhaustive limit of {_STRUCTURE_VERTEX_LIMIT}"
        )
    if family == "cycle-covers":
        return _cycle_covers(instance)
    if family == "arborescences":
        if root is None:
            raise ValueError("arborescences need a root vertex")
        return _arborescences(instance, root)
    if family == "matchings":
        return _perfect_matchings(instance)
    if family == "hypertrees":
        return _spanning_hypertrees(instance)
    raise ValueError(f"unknown family {family!r}")
