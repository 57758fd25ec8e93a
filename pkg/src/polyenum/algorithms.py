"""Enumeration of the monomials of a black-box polynomial.

Every procedure here sees the hidden polynomial only through oracle calls.
The central primitives are one-sided randomized zero tests: they never claim
"nonzero" for the zero polynomial, and miss a nonzero polynomial with
probability at most 2^-b for an explicit integer budget b (:class:`ErrorBudget`).
All probability bookkeeping is done on budget exponents, never on floats:
a budget of eps/m becomes the exponent b + ceil(log2(m)).

Three enumerators are provided:

* :func:`iter_incremental` -- polynomials whose monomials have pairwise
  distinct supports; finds one monomial at a time and subtracts it.
* :func:`iter_multilinear` -- multilinear polynomials; walks a binary tree of
  (undecided variables, required variables) nodes depth first and emits a
  monomial at each reachable leaf, giving polynomially bounded delay between
  outputs.  Optionally walks the two top-level subtrees in parallel.
* :func:`iter_degree2` -- per-variable degree at most 2; reduces to the
  multilinear machinery through an exact quotient box.

Each ``iter_*`` generator yields monomials the moment they are decided; the
``enumerate_*`` wrappers drain them into an :class:`EnumerationSink`.

On monotone polynomials (all coefficients of one sign) every test degrades
to a single deterministic evaluation at positive points, consuming zero
random bits.
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .arith import RandomStream, ceil_log2, interpolate_univariate, leading_coefficient_if_degree
from .blackbox import BlackBox, SupportSet, collapse_to_univariate, restrict, strip_constant, subtract
from .sparsepoly import Monomial, SparsePolynomial


class ConfigurationError(ValueError):
    """A run was configured inconsistently with the box's declared bounds."""


class InconsistentOracleError(RuntimeError):
    """An internal consistency check failed mid-run.

    This signals that an earlier randomized zero test gave a wrong answer
    (or that the black box violates its contract); the run aborts rather
    than emit a monomial it cannot vouch for.
    """


@dataclass(frozen=True)
class ErrorBudget:
    """Failure probability expressed as 2^(-b) for an integer b >= 0."""

    b: int

    def __post_init__(self):
        if self.b < 0:
            raise ValueError("the budget exponent must be nonnegative")

    def divided_by(self, m: int) -> "ErrorBudget":
        """Budget for eps/m, computed exactly as b + ceil(log2 m)."""
        return ErrorBudget(self.b + ceil_log2(m))


@dataclass(frozen=True)
class EnumeratorConfig:
    """How a run draws randomness and tests for zero.

    mode: "randomized" or "monotone" (deterministic; requires the box's
    monotone flag).  zero_test_variant: "interp" (univariate sampling) or
    "onecall" (single huge-point evaluation; requires the box's C bound).
    """

    mode: str = "randomized"
    zero_test_variant: str = "interp"
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("randomized", "monotone"):
            raise ConfigurationError(f"unknown mode {self.mode!r}")
        if self.zero_test_variant not in ("interp", "onecall"):
            raise ConfigurationError(f"unknown zero-test variant {self.zero_test_variant!r}")

    @property
    def monotone(self) -> bool:
        return self.mode == "monotone"

    def validate_for(self, box: BlackBox) -> None:
        if self.monotone and not box.monotone:
            raise ConfigurationError("monotone mode requires a monotone-flagged box")
        if self.zero_test_variant == "onecall" and box.coeff_bits is None:
            raise ConfigurationError("the one-call variant needs the box's coefficient bitsize bound")


class EnumerationSink:
    """Receives monomials as they are produced.

    Keeps the emission order, forwards each monomial to an optional
    callback, and asserts that no exponent vector is ever emitted twice.
    """

    def __init__(self, callback: Callable[[Monomial], None] | None = None):
        self.monomials: list[Monomial] = []
        self._seen: set[tuple[int, ...]] = set()
        self._callback = callback

    def emit(self, monomial: Monomial) -> None:
        if monomial.exponents in self._seen:
            raise InconsistentOracleError(f"duplicate monomial emitted: {monomial}")
        self._seen.add(monomial.exponents)
        self.monomials.append(monomial)
        if self._callback is not None:
            self._callback(monomial)

    def as_polynomial(self, n: int) -> SparsePolynomial:
        return SparsePolynomial.from_monomials(n, self.monomials)


def _require_monotone(box: BlackBox) -> None:
    if not box.monotone:
        raise ConfigurationError("monotone mode requires a monotone-flagged box")


# ---------------------------------------------------------------------------
# zero tests
# ---------------------------------------------------------------------------


def probably_nonzero(
    box: BlackBox, eps: ErrorBudget, rng: RandomStream, *, monotone: bool = False
) -> bool:
    """One-sided randomized zero test.

    Draws b points uniformly from [1, 2D]^n, one oracle call each, and
    reports nonzero iff some value was nonzero.  Never wrong on the zero
    polynomial; misses a nonzero one with probability at most 2^-b.

    Always performs exactly b calls (the call-count ledger pins this number;
    there is no early exit).  In monotone mode: one deterministic call at
    the all-ones point, no randomness.
    """
    if monotone:
        _require_monotone(box)
        return box.evaluate((1,) * box.n) != 0
    hi = 2 * box.degree_bound
    nonzero = False
    for _ in range(eps.b):
        point = tuple(rng.uniform_int(hi) for _ in range(box.n))
        if box.evaluate(point) != 0:
            nonzero = True
    return nonzero


def _sampled_leading_coefficient(
    box: BlackBox, assignment: dict[int, int], y_vars: SupportSet, degree: int
) -> Fraction:
    """Degree-``degree`` coefficient of the collapsed one-variable view.

    Uses degree+1 oracle calls.  Boxes that must be kept strictly positive
    on some coordinates are sampled at Y = 1..degree+1 (with an exact
    interpolation); everything else at Y = 0..degree (finite differences).
    """
    h = collapse_to_univariate(box, assignment, y_vars)
    if box.positive_vars:
        samples = [(y, h(y)) for y in range(1, degree + 2)]
        return interpolate_univariate(samples).coefficient(degree)
    values = [h(y) for y in range(degree + 1)]
    return leading_coefficient_if_degree(values, degree)


def has_monomial_between(
    box: BlackBox,
    free_vars: Iterable[int],
    required_vars: Iterable[int],
    eps: ErrorBudget,
    rng: RandomStream,
    *,
    monotone: bool = False,
) -> bool:
    """Test for a monomial M with required ⊆ supp(M) ⊆ free ∪ required.

    Requires a multilinear box.  Per repetition: fix random values from
    [1, 2D] on the free variables, substitute one variable Y for every
    required variable, sample the resulting univariate polynomial at
    |required|+1 points and check whether its degree-|required| coefficient
    is nonzero.  One-sided; with a qualifying monomial present the answer
    is "yes" with probability at least 1 - 2^-b.  Repetitions stop at the
    first success.  Monotone mode: a single repetition with all-ones.
    """
    free = box.check_support(free_vars)
    required = box.check_support(required_vars)
    if free & required:
        raise ValueError(f"free and required variables overlap: {sorted(free & required)}")
    degree = len(required)
    if degree > box.degree_bound:
        # A support larger than the total-degree bound cannot occur.
        return False
    if monotone:
        _require_monotone(box)
        assignment = {i: 1 for i in free}
        return _sampled_leading_coefficient(box, assignment, required, degree) != 0
    hi = 2 * box.degree_bound
    for _ in range(eps.b):
        assignment = {i: rng.uniform_int(hi) for i in sorted(free)}
        if _sampled_leading_coefficient(box, assignment, required, degree) != 0:
            return True
    return False


def _alpha_exponent(box: BlackBox, eps: ErrorBudget) -> int:
    if box.coeff_bits is None:
        raise ConfigurationError(
            "the one-call variant needs the box's coefficient bitsize bound"
        )
    d = box.degree_bound
    return 2 * (box.n + box.coeff_bits + d * (ceil_log2(2 * d) + eps.b))


def has_monomial_between_onecall(
    box: BlackBox,
    free_vars: Iterable[int],
    required_vars: Iterable[int],
    eps: ErrorBudget,
    rng: RandomStream,
    *,
    monotone: bool = False,
) -> bool:
    """Single-evaluation variant of :func:`has_monomial_between`.

    Places a huge constant alpha on the required variables, random values
    from [1, 2D * 2^b] on the free ones and 0 elsewhere, then decides by
    magnitude: the answer is "yes" iff value^2 > alpha^(2l-1), compared
    exactly.  Needs the box's coefficient bitsize bound and assumes integer
    coefficients.  Never wrong when no qualifying monomial exists.
    """
    free = box.check_support(free_vars)
    required = box.check_support(required_vars)
    if free & required:
        raise ValueError(f"free and required variables overlap: {sorted(free & required)}")
    degree = len(required)
    if degree > box.degree_bound:
        return False
    if monotone:
        _require_monotone(box)
    a_exp = _alpha_exponent(box, eps)
    alpha = 1 << a_exp
    hi = (2 * box.degree_bound) << eps.b
    point = [0] * box.n
    for i in sorted(free):
        point[i - 1] = 1 if monotone else rng.uniform_int(hi)
    for i in required:
        point[i - 1] = alpha
    for i in box.positive_vars - free - required:
        point[i - 1] = 1
    value = Fraction(box.evaluate(tuple(point)))
    threshold_exp = a_exp * (2 * degree - 1)
    if threshold_exp >= 0:
        return value * value > (1 << threshold_exp)
    return value * value > Fraction(1, 1 << -threshold_exp)


def coefficient_of_support(
    box: BlackBox,
    support: Iterable[int],
    *,
    variant: str = "interp",
    eps: ErrorBudget | None = None,
) -> Fraction:
    """Coefficient of the multilinear term whose support is exactly ``support``.

    Deterministic and exact for a multilinear box (zero if no such
    monomial).  Uses |support|+1 oracle calls, or a single call in the
    "onecall" variant (which needs ``eps`` for its point size and assumes
    integer coefficients).

    For positive-only boxes the remaining mandatory coordinates are pinned
    to 1, which is exact provided no monomial's support strictly contains
    ``support`` (the degree-2 path guarantees this by maximality).
    """
    sup = box.check_support(support)
    degree = len(sup)
    if degree > box.degree_bound:
        return Fraction(0)
    if variant == "onecall":
        return _coefficient_onecall(box, sup, eps if eps is not None else ErrorBudget(0))
    assignment = {i: 1 for i in box.positive_vars - sup}
    return Fraction(_sampled_leading_coefficient(box, assignment, sup, degree))


def _coefficient_onecall(box: BlackBox, sup: SupportSet, eps: ErrorBudget) -> Fraction:
    a_exp = _alpha_exponent(box, eps)
    alpha = 1 << a_exp
    point = [0] * box.n
    for i in box.positive_vars - sup:
        point[i - 1] = 1
    for i in sup:
        point[i - 1] = alpha
    value = Fraction(box.evaluate(tuple(point)))
    # value = coeff * alpha^l + noise with |noise| < alpha^l / 2: round back.
    return Fraction(round(value / Fraction(alpha) ** len(sup)))


# ---------------------------------------------------------------------------
# finding a single monomial
# ---------------------------------------------------------------------------


def recover_monomial(box: BlackBox, support: Iterable[int]) -> Monomial:
    """Read off the unique monomial of a single-monomial restriction.

    Precondition: restricting the box to ``support`` leaves exactly one
    monomial, whose support is exactly ``support``.  One call at all-ones
    gives the coefficient; one call with a single 2 gives each exponent as
    an exact power-of-two ratio.  |support|+1 calls total.  Raises
    :class:`InconsistentOracleError` when the values cannot come from a
    single monomial (which means an earlier zero test erred).
    """
    sup = box.check_support(support)
    restricted = restrict(box, sup)
    ones = (1,) * box.n
    coeff = restricted.evaluate(ones)
    if coeff == 0:
        raise InconsistentOracleError(
            "restriction evaluates to zero at all-ones; not a single monomial"
        )
    exponents = [0] * box.n
    for i in sorted(sup):
        point = list(ones)
        point[i - 1] = 2
        ratio = Fraction(restricted.evaluate(tuple(point))) / Fraction(coeff)
        num = ratio.numerator
        if ratio.denominator != 1 or num <= 1 or num & (num - 1):
            raise InconsistentOracleError(
                f"evaluation ratio {ratio} for variable {i} is not a power of two >= 2"
            )
        exponents[i - 1] = num.bit_length() - 1
    return Monomial(Fraction(coeff), tuple(exponents))


def find_monomial(
    box: BlackBox, eps: ErrorBudget, rng: RandomStream, *, monotone: bool = False
) -> Monomial | None:
    """Find one monomial of a distinct-supports, constant-free polynomial.

    Greedily shrinks the variable set: variable i is dropped iff the
    restriction without it still tests nonzero.  The surviving set is then
    support-minimal, so the restriction is a single monomial (distinct
    supports), handed to :func:`recover_monomial`.  Returns None when the
    initial test already says zero.  Total failure probability at most eps;
    each of the n+1 zero tests runs at eps/(n+1).
    """
    n = box.n
    budget = eps.divided_by(n + 1)
    if not probably_nonzero(box, budget, rng, monotone=monotone):
        return None
    keep = set(range(1, n + 1))
    for i in range(1, n + 1):
        if probably_nonzero(restrict(box, keep - {i}), budget, rng, monotone=monotone):
            keep.discard(i)
    return recover_monomial(box, frozenset(keep))


# ---------------------------------------------------------------------------
# incremental enumeration (distinct supports)
# ---------------------------------------------------------------------------


def iter_incremental(
    box: BlackBox, eps: ErrorBudget, rng: RandomStream, *, monotone: bool = False
) -> Iterator[Monomial]:
    """Yield all monomials of a distinct-supports polynomial.

    Strips the constant term first (emitting it if nonzero), then loops:
    test the difference "hidden minus found-so-far" for zero, find one more
    monomial of it, emit, repeat.  Each iteration runs its two calls at
    budget eps / 2^(n+1), so the whole run succeeds with probability at
    least 1 - eps for up to 2^n monomials.
    """
    if monotone:
        _require_monotone(box)
    n = box.n
    stripped, constant = strip_constant(box)
    if constant != 0:
        yield Monomial(constant, (0,) * n)
    budget = ErrorBudget(eps.b + n + 1)
    found = SparsePolynomial.zero(n)
    while True:
        remainder = subtract(stripped, found) if found.num_terms else stripped
        if not probably_nonzero(remainder, budget, rng, monotone=monotone):
            return
        monomial = find_monomial(remainder, budget, rng, monotone=monotone)
        if monomial is None:
            # The two tests disagreed; treat as exhausted (within budget).
            return
        yield monomial
        try:
            found = found.with_monomial(monomial)
        except ValueError as exc:
            raise InconsistentOracleError(
                f"monomial {monomial} was found twice; an earlier test must have erred"
            ) from exc


def enumerate_incremental(
    box: BlackBox,
    eps: ErrorBudget,
    rng: RandomStream,
    out: EnumerationSink,
    *,
    monotone: bool = False,
) -> None:
    for monomial in iter_incremental(box, eps, rng, monotone=monotone):
        out.emit(monomial)


# ---------------------------------------------------------------------------
# polynomial-delay enumeration (multilinear)
# ---------------------------------------------------------------------------


def _support_test(variant: str):
    return has_monomial_between if variant == "interp" else has_monomial_between_onecall


def _walk(
    box: BlackBox,
    budget: ErrorBudget,
    rng: RandomStream,
    index: int,
    required: frozenset[int],
    monotone: bool,
    variant: str,
) -> Iterator[Monomial]:
    """Depth-first search over (undecided, required) splits from ``index`` on.

    At depth i the undecided variables are {i+1..n}; the branch excluding
    variable i is explored before the branch including it, which makes the
    emission order the lexicographic order of characteristic vectors with
    absent < present.
    """
    n = box.n
    if index > n:
        coeff = coefficient_of_support(box, required, variant=variant, eps=budget)
        if coeff != 0:
            exponents = tuple(1 if j + 1 in required else 0 for j in range(n))
            yield Monomial(coeff, exponents)
        return
    test = _support_test(variant)
    undecided = frozenset(range(index + 1, n + 1))
    if test(box, undecided, required, budget, rng, monotone=monotone):
        yield from _walk(box, budget, rng, index + 1, required, monotone, variant)
    if test(box, undecided, required | {index}, budget, rng, monotone=monotone):
        yield from _walk(box, budget, rng, index + 1, required | {index}, monotone, variant)


def _walk_parallel(
    box: BlackBox,
    budget: ErrorBudget,
    rng: RandomStream,
    monotone: bool,
    variant: str,
) -> Iterator[Monomial]:
    """Expand the two top-level subtrees concurrently, one thread each.

    Each subtree gets its own child random stream and streams into its own
    queue; draining the exclude queue before the include queue reproduces
    the canonical order, so on success the output sequence is identical to
    the sequential walk's.
    """
    box.stats.enable_thread_safety()
    n = box.n
    test = _support_test(variant)
    undecided = frozenset(range(2, n + 1))
    branches = []
    for required in (frozenset(), frozenset({1})):
        if test(box, undecided, required, budget, rng, monotone=monotone):
            branches.append((required, rng.split()))

    sentinel = object()
    feeds: list[queue.SimpleQueue] = []
    threads: list[threading.Thread] = []
    for required, child_rng in branches:
        feed: queue.SimpleQueue = queue.SimpleQueue()

        def run(required=required, child_rng=child_rng, feed=feed):
            try:
                for m in _walk(box, budget, child_rng, 2, required, monotone, variant):
                    feed.put(m)
                feed.put(sentinel)
            except BaseException as exc:  # surfaced in the consuming thread
                feed.put(exc)

        thread = threading.Thread(target=run, daemon=True)
        thread.start()
        feeds.append(feed)
        threads.append(thread)

    try:
        for feed in feeds:
            while True:
                item = feed.get()
                if item is sentinel:
                    break
                if isinstance(item, BaseException):
                    raise item
                yield item
    finally:
        for thread in threads:
            thread.join()


def iter_multilinear(
    box: BlackBox,
    eps: ErrorBudget,
    rng: RandomStream,
    *,
    monotone: bool = False,
    variant: str = "interp",
    parallel: bool = False,
) -> Iterator[Monomial]:
    """Yield all monomials of a multilinear polynomial, polynomial delay.

    Strips the constant term first (emitting it if nonzero).  Every support
    test runs at budget eps / (2^n * n), i.e. exponent b + n + ceil(log2 n),
    so the emitted set equals the hidden polynomial with probability at
    least 1 - eps.  Emission follows the lexicographic order of
    characteristic vectors (absent < present).
    """
    if monotone:
        _require_monotone(box)
    if variant == "onecall" and box.coeff_bits is None:
        raise ConfigurationError("the one-call variant needs the box's coefficient bitsize bound")
    n = box.n
    stripped, constant = strip_constant(box)
    if constant != 0:
        yield Monomial(constant, (0,) * n)
    if n == 0:
        return
    budget = ErrorBudget(eps.b + n + ceil_log2(n))
    if parallel:
        yield from _walk_parallel(stripped, budget, rng, monotone, variant)
    else:
        yield from _walk(stripped, budget, rng, 1, frozenset(), monotone, variant)


def enumerate_multilinear(
    box: BlackBox,
    eps: ErrorBudget,
    rng: RandomStream,
    out: EnumerationSink,
    *,
    monotone: bool = False,
    variant: str = "interp",
    parallel: bool = False,
) -> None:
    for monomial in iter_multilinear(
        box, eps, rng, monotone=monotone, variant=variant, parallel=parallel
    ):
        out.emit(monomial)


# ---------------------------------------------------------------------------
# degree-2 enumeration
# ---------------------------------------------------------------------------


def _quotient_box(box: BlackBox, support: SupportSet) -> BlackBox:
    """Box for (restriction to ``support``) divided by the product X^support.

    Valid whenever every monomial of the restriction contains X^support as
    a factor (true for a support-minimal set).  The division forces every
    evaluation to keep the support coordinates strictly positive; the box
    is marked accordingly and the zero-coordinate case is a hard error
    (unreachable through the public callers).
    """
    positions = tuple(i - 1 for i in sorted(support))
    mask = tuple(i + 1 in support for i in range(box.n))

    def ev(pt):
        denominator = 1
        for p in positions:
            denominator *= pt[p]
        if denominator == 0:
            raise InconsistentOracleError(
                "quotient box evaluated with a zero coordinate on its support"
            )
        masked = tuple(x if keep else 0 for x, keep in zip(pt, mask))
        value = box.evaluate(masked)
        if isinstance(value, Fraction):
            return value / denominator
        return Fraction(value, denominator)

    return box._derived(
        ev,
        degree_bound=max(1, len(support)),
        per_var_degree=1,
        positive_vars=frozenset(support),
    )


def find_monomial_degree2(
    box: BlackBox,
    eps: ErrorBudget,
    rng: RandomStream,
    *,
    monotone: bool = False,
    variant: str = "interp",
) -> Monomial | None:
    """Find one monomial of a constant-free polynomial of per-variable degree <= 2.

    Distinct supports are not required.  First shrinks to a support-minimal
    variable set L (as in :func:`find_monomial`, budget split over the n+1
    tests); every monomial of the restriction then has support exactly L,
    so the restriction factors as X^L times a multilinear polynomial, which
    is exposed as an exact quotient box.  A greedy pass (one support test
    per variable of L, budget eps/n each) grows the set of variables of L
    that appear squared; the resulting set is the exact support of one
    monomial of the quotient, whose coefficient is read off exactly.
    """
    n = box.n
    shrink_budget = eps.divided_by(n + 1)
    if not probably_nonzero(box, shrink_budget, rng, monotone=monotone):
        return None
    keep = set(range(1, n + 1))
    for i in range(1, n + 1):
        if probably_nonzero(restrict(box, keep - {i}), shrink_budget, rng, monotone=monotone):
            keep.discard(i)
    support = frozenset(keep)
    quotient = _quotient_box(box, support)
    grow_budget = eps.divided_by(max(n, 1))
    test = _support_test(variant)
    doubled: frozenset[int] = frozenset()
    for i in sorted(support):
        candidate = doubled | {i}
        if test(quotient, support - candidate, candidate, grow_budget, rng, monotone=monotone):
            doubled = candidate
    coeff = coefficient_of_support(quotient, doubled, variant=variant, eps=grow_budget)
    if coeff == 0:
        raise InconsistentOracleError("degree-2 coefficient recovery returned zero")
    exponents = [0] * n
    for i in support:
        exponents[i - 1] = 1
    for i in doubled:
        exponents[i - 1] += 1
    return Monomial(coeff, tuple(exponents))


def iter_degree2(
    box: BlackBox,
    eps: ErrorBudget,
    rng: RandomStream,
    *,
    monotone: bool = False,
    variant: str = "interp",
) -> Iterator[Monomial]:
    """Yield all monomials of a polynomial of per-variable degree <= 2.

    The incremental subtract-and-find loop with
    :func:`find_monomial_degree2` as the finder; per-iteration budgets as
    in :func:`iter_incremental`.
    """
    if monotone:
        _require_monotone(box)
    n = box.n
    stripped, constant = strip_constant(box)
    if constant != 0:
        yield Monomial(constant, (0,) * n)
    budget = ErrorBudget(eps.b + n + 1)
    found = SparsePolynomial.zero(n)
    while True:
        remainder = subtract(stripped, found) if found.num_terms else stripped
        if not probably_nonzero(remainder, budget, rng, monotone=monotone):
            return
        monomial = find_monomial_degree2(remainder, budget, rng, monotone=monotone, variant=variant)
        if monomial is None:
            return
        yield monomial
        try:
            found = found.with_monomial(monomial)
        except ValueError as exc:
            raise InconsistentOracleError(
                f"monomial {monomial} was found twice; an earlier test must have erred"
            ) from exc


def enumerate_degree2(
    box: BlackBox,
    eps: ErrorBudget,
    rng: RandomStream,
    out: EnumerationSink,
    *,
    monotone: bool = False,
    variant: str = "interp",
) -> None:
    for monomial in iter_degree2(box, eps, rng, monotone=monotone, variant=variant):
        out.emit(monomial)


# ---------------------------------------------------------------------------
# selection, another-solution and amplification
# ---------------------------------------------------------------------------

ALGORITHMS = ("incremental", "multilinear", "degree2")


def default_algorithm(box: BlackBox) -> str:
    """Pick the strongest enumerator the box's declared bounds allow."""
    if box.per_var_degree == 1:
        return "multilinear"
    if box.per_var_degree == 2:
        return "degree2"
    return "incremental"


def iter_algorithm(
    algorithm: str,
    box: BlackBox,
    eps: ErrorBudget,
    rng: RandomStream,
    *,
    monotone: bool = False,
    variant: str = "interp",
    parallel: bool = False,
) -> Iterator[Monomial]:
    if algorithm == "incremental":
        return iter_incremental(box, eps, rng, monotone=monotone)
    if algorithm == "multilinear":
        return iter_multilinear(box, eps, rng, monotone=monotone, variant=variant, parallel=parallel)
    if algorithm == "degree2":
        return iter_degree2(box, eps, rng, monotone=monotone, variant=variant)
    raise ConfigurationError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")


def another_monomial(
    box: BlackBox,
    eps: ErrorBudget,
    known: SparsePolynomial | Iterable[Monomial],
    rng: RandomStream,
    *,
    algorithm: str | None = None,
    monotone: bool = False,
    variant: str = "interp",
) -> Monomial | None:
    """A monomial of the hidden polynomial not yet in ``known``, or None.

    Runs the applicable enumerator until it has produced |known|+1
    monomials or terminated; by then either a fresh monomial appeared or
    the enumeration ended inside the known set (return None: exhausted).
    """
    if isinstance(known, SparsePolynomial):
        known_exponents = set(known.as_dict().keys())
    else:
        known_exponents = {m.exponents for m in known}
    algorithm = algorithm or default_algorithm(box)
    run = iter_algorithm(algorithm, box, eps, rng, monotone=monotone, variant=variant)
    for _ in range(len(known_exponents) + 1):
        try:
            monomial = next(run)
        except StopIteration:
            return None
        if monomial.exponents not in known_exponents:
            return monomial
    return None


def enumerate_amplified(
    box: BlackBox,
    eps_per_run: ErrorBudget,
    k: int,
    rng: RandomStream,
    out: EnumerationSink,
    *,
    algorithm: str | None = None,
    monotone: bool = False,
    variant: str = "interp",
) -> None:
    """Interleave k independent runs, suppressing duplicates globally.

    Each run gets its own child stream.  The scheduler advances every live
    run by one output per round; a run's gap between outputs is bounded by
    the per-gap call ledger, so one output is exactly the bounded-step
    quantum.  If any single run computes the full monomial set, so does the
    combined output: the failure probability drops to (per-run failure)^k.
    A run that aborts on an internal inconsistency is dropped; the others
    carry on.
    """
    if k < 1:
        raise ValueError("need at least one run")
    algorithm = algorithm or default_algorithm(box)
    runs = [
        iter_algorithm(algorithm, box, eps_per_run, rng.split(), monotone=monotone, variant=variant)
        for _ in range(k)
    ]
    seen: set[tuple[int, ...]] = set()
    active = runs
    while active:
        alive = []
        for run in active:
            try:
                monomial = next(run)
            except StopIteration:
                continue
            except InconsistentOracleError:
                continue
            alive.append(run)
            if monomial.exponents not in seen:
                seen.add(monomial.exponents)
                out.emit(monomial)
        active = alive
