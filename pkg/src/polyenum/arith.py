"""Exact scalar arithmetic, univariate interpolation and seeded randomness.

All numbers in this package are exact: integers are Python ints (arbitrary
precision) and rationals are ``fractions.Fraction`` (always reduced, positive
denominator).  Nothing in here ever rounds.

The univariate layer represents a polynomial in one variable Y as a tuple of
Fraction coefficients indexed by degree (``UniPoly``).  Interpolation uses
Newton divided differences, which is incremental and O(k^2) with exact
arithmetic.

``RandomStream`` is the single source of randomness for every probabilistic
procedure in the package.  It is a SplitMix64 generator: portable, seedable,
and cheap.  It counts exactly how many pseudo-random bits have been served,
so "consumed randomness" is a measurable quantity and a deterministic mode
can assert it stayed at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def ceil_log2(m: int) -> int:
    """Smallest k with 2**k >= m, for m >= 1 (exact integer arithmetic)."""
    if m < 1:
        raise ValueError(f"ceil_log2 needs a positive argument, got {m}")
    return (m - 1).bit_length()


@dataclass(frozen=True)
class UniPoly:
    """A univariate polynomial; ``coeffs[k]`` is the coefficient of Y^k.

    Normalized so the stored leading coefficient is nonzero; the zero
    polynomial is the empty tuple.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(coeffs: Iterable[Fraction | int]) -> "UniPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return UniPoly(tuple(cs))

    @property
    def degree(self) -> int:
        """Degree of the polynomial, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def evaluate(self, y: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc


def interpolate_univariate(
    samples: Sequence[tuple[int, Fraction | int]],
) -> UniPoly:
    """Unique polynomial of degree <= k-1 through k samples (exact).

    Newton divided differences; the sample points must be pairwise distinct.
    """
    points = [p for p, _ in samples]
    if len(set(points)) != len(points):
        raise ValueError("interpolation points must be pairwise distinct")
    if not samples:
        return UniPoly(())

    values = [Fraction(v) for _, v in samples]
    # Divided-difference table, kept as the Newton coefficients in place.
    dd = list(values)
    k = len(samples)
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - j])

    # Expand the Newton form to the monomial basis.
    coeffs = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        # multiply current polynomial by (Y - points[i]) and add dd[i]
        for d in range(k - 1, 0, -1):
            coeffs[d] = coeffs[d - 1] - points[i] * coeffs[d]
        coeffs[0] = dd[i] - points[i] * coeffs[0]
    return UniPoly.from_coeffs(coeffs)


def leading_coefficient_if_degree(
    values: Sequence[Fraction | int], degree: int
) -> Fraction:
    """Coefficient of Y^degree of the polynomial sampled at Y = 0..degree.

    ``values`` must hold exactly ``degree + 1`` samples, taken at the points
    0, 1, ..., degree, of a polynomial of degree at most ``degree``.  Returns
    zero iff the true degree is smaller.  Computed as the degree-th forward
    finite difference divided by degree!.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if len(values) != degree + 1:
        raise ValueError(
            f"need exactly {degree + 1} samples at 0..{degree}, got {len(values)}"
        )
    diffs = [Fraction(v) for v in values]
    for _ in range(degree):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    fact = 1
    for i in range(2, degree + 1):
        fact *= i
    return diffs[0] / fact


_MASK64 = (1 << 64) - 1


class RandomStream:
    """Deterministic seeded random source (SplitMix64).

    Identical seeds yield identical draw sequences on any platform.  The
    stream counts the pseudo-random bits it has served through
    ``uniform_int``; splitting off child streams is deterministic and does
    not count as consumed randomness.

    A stream is single-owner: concurrent users must each take their own
    child via :meth:`split`.
    """

    __slots__ = ("_state", "_bitbuf", "_bitcnt", "bits_consumed", "seed")

    def __init__(self, seed: int):
        self.seed = seed
        self._state = seed & _MASK64
        self._bitbuf = 0
        self._bitcnt = 0
        self.bits_consumed = 0

    def _next64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def _bits(self, k: int) -> int:
        """Serve k raw bits, counting them."""
        while self._bitcnt < k:
            self._bitbuf |= self._next64() << self._bitcnt
            self._bitcnt += 64
        out = self._bitbuf & ((1 << k) - 1)
        self._bitbuf >>= k
        self._bitcnt -= k
        self.bits_consumed += k
        return out

    def uniform_int(self, m: int) -> int:
        """Uniformly distributed integer in [1, m] (rejection sampling)."""
        if m < 1:
            raise ValueError(f"uniform_int needs m >= 1, got {m}")
        if m == 1:
            return 1
        k = (m - 1).bit_length()
        while True:
            v = self._bits(k)
            if v < m:
                return v + 1

    def split(self) -> "RandomStream":
        """Detach an independent child stream.

        Deterministic: the child's seed is drawn from this stream's state,
        advancing it.  Not counted in ``bits_consumed``.
        """
        return RandomStream(self._next64())

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RandomStream(seed={self.seed}, bits_consumed={self.bits_consumed})"


def uniform_int(stream: RandomStream, m: int) -> int:
    """Module-level alias for :meth:`RandomStream.uniform_int`."""
    return stream.uniform_int(m)
