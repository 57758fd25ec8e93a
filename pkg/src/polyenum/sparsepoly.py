"""Explicit sparse multivariate polynomials over the rationals.

A monomial is an exponent tuple (one nonnegative int per variable) with a
nonzero Fraction coefficient.  A sparse polynomial is a set of monomials
with pairwise distinct exponent vectors; the zero polynomial has no terms.

Variables are numbered 1..n in every public-facing set of indices (the
*support* of a monomial is the set of variable indices with a positive
exponent), while exponent tuples are positional: entry ``i`` of the tuple
belongs to variable ``i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exponents = tuple[int, ...]


def support_of(exponents: Exponents) -> frozenset[int]:
    """Set of 1-based variable indices appearing in the exponent vector."""
    return frozenset(i + 1 for i, e in enumerate(exponents) if e > 0)


@dataclass(frozen=True)
class Monomial:
    """coefficient * X1^e1 * ... * Xn^en with a nonzero coefficient."""

    coefficient: Fraction
    exponents: Exponents

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("a monomial's coefficient must be nonzero")
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        object.__setattr__(self, "exponents", tuple(self.exponents))

    @property
    def support(self) -> frozenset[int]:
        return support_of(self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def evaluate(self, point) -> Fraction:
        value = self.coefficient
        for x, e in zip(point, self.exponents):
            if e == 1:
                value *= x
            elif e:
                value *= x ** e
        return value

    def __str__(self) -> str:
        parts = [str(self.coefficient)]
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"X{i + 1}")
            elif e:
                parts.append(f"X{i + 1}^{e}")
        return "*".join(parts)


class SparsePolynomial:
    """Immutable set of monomials with pairwise distinct exponent vectors."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Exponents, Fraction] | None = None):
        self.n = n
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} has arity != {n}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[exps] = coeff
        self._terms = clean

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SparsePolynomial":
        return cls(n, {})

    @classmethod
    def from_monomials(cls, n: int, monomials: Iterable[Monomial]) -> "SparsePolynomial":
        terms: dict[Exponents, Fraction] = {}
        for m in monomials:
            if m.exponents in terms:
                raise ValueError(f"duplicate exponent vector {m.exponents}")
            terms[m.exponents] = m.coefficient
        return cls(n, terms)

    def with_monomial(self, m: Monomial) -> "SparsePolynomial":
        """A new polynomial with one extra monomial (exponents must be new)."""
        if m.exponents in self._terms:
            raise ValueError(f"exponent vector {m.exponents} already present")
        terms = dict(self._terms)
        terms[m.exponents] = m.coefficient
        return SparsePolynomial(self.n, terms)

    # -- queries -----------------------------------------------------------

    def monomials(self) -> list[Monomial]:
        return [Monomial(c, e) for e, c in sorted(self._terms.items())]

    def coefficient(self, exponents: Exponents) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def supports(self) -> set[frozenset[int]]:
        return {support_of(e) for e in self._terms}

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int:
        """Max total degree over the terms (0 for the zero polynomial)."""
        return max((sum(e) for e in self._terms), default=0)

    @property
    def max_var_degree(self) -> int:
        """Max exponent of any single variable (0 for the zero polynomial)."""
        return max((max(e, default=0) for e in self._terms), default=0)

    def has_distinct_supports(self) -> bool:
        return len({support_of(e) for e in self._terms}) == len(self._terms)

    def coefficient_bitsize(self) -> int | None:
        """Bound C with |coefficient| <= 2^C, or None for non-integer coefficients."""
        bits = 0
        for c in self._terms.values():
            if c.denominator != 1:
                return None
            bits = max(bits, abs(c.numerator).bit_length())
        return max(bits, 1)

    def evaluate(self, point) -> Fraction | int:
        if len(point) != self.n:
            raise ValueError(f"point has arity {len(point)}, expected {self.n}")
        total: Fraction | int = 0
        for exps, coeff in self._terms.items():
            v = coeff
            for x, e in zip(point, exps):
                if e == 1:
                    v *= x
                elif e:
                    v *= x ** e
            total += v
        return total

    def as_dict(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    # -- dunder ------------------------------------------------------------

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"SparsePolynomial(n={self.n}, 0)"
        body = " + ".join(str(m) for m in self.monomials())
        return f"SparsePolynomial(n={self.n}, {body})"
