"""The evaluation-oracle abstraction and its evaluation-preserving wrappers.

A :class:`BlackBox` hides a polynomial in n variables behind a pure
evaluation function.  The enumeration algorithms only ever interact with the
hidden polynomial through :meth:`BlackBox.evaluate`, so the number of calls
and the size of the points sent to the oracle are the honest cost measures.

Wrappers (restriction to a variable subset, subtraction of an explicit
polynomial, constant stripping, collapse to one variable) build new boxes on
top of an existing one.  They share the root box's call counter: evaluating
a wrapper at one point costs exactly one call to the true oracle, and that
is what gets counted.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .sparsepoly import SparsePolynomial

Point = tuple[int, ...]
SupportSet = frozenset[int]


class OracleStats:
    """Mutable call ledger attached to a root black box.

    Counters only ever grow.  ``max_point_abs`` tracks the largest absolute
    coordinate ever sent to the oracle; ``max_point_bits`` is its bit size.
    """

    __slots__ = ("total_calls", "calls_at_last_output", "max_point_abs", "_lock")

    def __init__(self):
        self.total_calls = 0
        self.calls_at_last_output = 0
        self.max_point_abs = 0
        self._lock = None

    def enable_thread_safety(self) -> None:
        """Serialize the counter; needed only for concurrent evaluation."""
        if self._lock is None:
            self._lock = threading.Lock()

    def record(self, point: Point) -> None:
        if self._lock is not None:
            with self._lock:
                self._record(point)
        else:
            self._record(point)

    def _record(self, point: Point) -> None:
        self.total_calls += 1
        if point:
            hi = max(point)
            lo = min(point)
            a = hi if hi > -lo else -lo
            if a > self.max_point_abs:
                self.max_point_abs = a

    def note_output(self) -> None:
        self.calls_at_last_output = self.total_calls

    @property
    def max_point_bits(self) -> int:
        return self.max_point_abs.bit_length()


class BlackBox:
    """Evaluation oracle for a hidden n-variate polynomial.

    Parameters
    ----------
    n: number of variables.
    degree_bound: an upper bound D on the total degree of the hidden
        polynomial (caller contract; clamped to at least 1 so randomized
        tests always have a nonempty draw range).
    eval_fn: pure function from an n-tuple of ints to an exact number
        (int or Fraction).  Same point, same value.
    per_var_degree: optional bound d on every single variable's degree
        (1 for multilinear boxes).
    coeff_bits: optional bound C with every coefficient's absolute value
        < 2^C; required only by the one-call zero-test variant.
    monotone: the hidden polynomial's coefficients all share one sign,
        enabling the deterministic mode.
    positive_vars: coordinates that must stay strictly positive in every
        evaluation (used by derived quotient boxes that divide by them).
    """

    __slots__ = (
        "n",
        "degree_bound",
        "per_var_degree",
        "coeff_bits",
        "monotone",
        "positive_vars",
        "stats",
        "_eval",
        "_records",
    )

    def __init__(
        self,
        n: int,
        degree_bound: int,
        eval_fn: Callable[[Point], Fraction | int],
        *,
        per_var_degree: int | None = None,
        coeff_bits: int | None = None,
        monotone: bool = False,
        positive_vars: SupportSet = frozenset(),
        _stats: OracleStats | None = None,
        _records: bool = True,
    ):
        if n < 0:
            raise ValueError("variable count must be nonnegative")
        self.n = n
        self.degree_bound = max(1, degree_bound)
        self.per_var_degree = per_var_degree
        self.coeff_bits = coeff_bits
        self.monotone = monotone
        self.positive_vars = frozenset(positive_vars)
        self._eval = eval_fn
        self.stats = _stats if _stats is not None else OracleStats()
        self._records = _records

    def evaluate(self, point: Iterable[int]) -> Fraction | int:
        pt = tuple(point)
        if len(pt) != self.n:
            raise ValueError(f"point has arity {len(pt)}, box expects {self.n}")
        if self._records:
            self.stats.record(pt)
        return self._eval(pt)

    def _derived(self, eval_fn, **overrides) -> "BlackBox":
        """A wrapper box: shares this box's stats, does not double-count."""
        kwargs = dict(
            n=self.n,
            degree_bound=self.degree_bound,
            per_var_degree=self.per_var_degree,
            coeff_bits=self.coeff_bits,
            monotone=self.monotone,
            positive_vars=self.positive_vars,
        )
        kwargs.update(overrides)
        return BlackBox(eval_fn=eval_fn, _stats=self.stats, _records=False, **kwargs)

    def check_support(self, vars_: Iterable[int]) -> SupportSet:
        s = frozenset(vars_)
        for i in s:
            if not 1 <= i <= self.n:
                raise ValueError(f"variable index {i} out of range 1..{self.n}")
        return s


def restrict(box: BlackBox, keep: Iterable[int]) -> BlackBox:
    """Box for the polynomial with every variable outside ``keep`` set to 0.

    Keeps exactly the monomials whose support is contained in ``keep``.
    """
    keep_set = box.check_support(keep)
    mask = tuple(i + 1 in keep_set for i in range(box.n))

    def ev(pt: Point):
        return box.evaluate(tuple(x if m else 0 for x, m in zip(pt, mask)))

    return box._derived(ev)


def subtract(box: BlackBox, known: SparsePolynomial) -> BlackBox:
    """Box for (hidden polynomial) - ``known``.

    ``known`` is evaluated explicitly term by term; each evaluation costs
    exactly one call to the underlying oracle.  The derived box inherits the
    monotone flag, which stays truthful when ``known`` is a subset of the
    hidden polynomial's monomials (the only way the enumerators use it).
    """
    if known.n != box.n:
        raise ValueError("explicit polynomial arity differs from the box")

    def ev(pt: Point):
        return box.evaluate(pt) - known.evaluate(pt)

    return box._derived(ev)


def strip_constant(box: BlackBox) -> tuple[BlackBox, Fraction]:
    """Split off the constant term with a single oracle call at the origin.

    Returns (box for the polynomial minus its constant term, the constant).
    """
    constant = box.evaluate((0,) * box.n)

    if constant == 0:
        stripped = box._derived(lambda pt: box.evaluate(pt))
    else:
        # Removing the constant leaves the other coefficients untouched, so
        # the monotone flag survives.
        def ev(pt: Point):
            return box.evaluate(pt) - constant

        stripped = box._derived(ev)
    return stripped, Fraction(constant)


def collapse_to_univariate(
    box: BlackBox,
    assignment: Mapping[int, int],
    y_vars: Iterable[int],
) -> Callable[[int], Fraction | int]:
    """One-variable view of the hidden polynomial.

    Returns H with H(y) = hidden polynomial evaluated at the point that has
    ``assignment[i]`` on the assigned coordinates, ``y`` on every coordinate
    in ``y_vars`` and 0 elsewhere.  Each invocation costs one oracle call.
    """
    assigned = box.check_support(assignment.keys())
    ys = box.check_support(y_vars)
    if assigned & ys:
        raise ValueError(f"assigned and Y variables overlap: {sorted(assigned & ys)}")
    base = [0] * box.n
    for i, v in assignment.items():
        base[i - 1] = v
    y_positions = [i - 1 for i in sorted(ys)]

    def h(y: int) -> Fraction | int:
        pt = list(base)
        for p in y_positions:
            pt[p] = y
        return box.evaluate(tuple(pt))

    return h
