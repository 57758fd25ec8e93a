"""Built-in black boxes: explicit polynomials and graph-derived families.

Each constructor returns a :class:`~polyenum.blackbox.BlackBox` whose hidden
polynomial has one variable per input object (monomial per input line order):

* cycle covers of a digraph -- determinant of the variable adjacency matrix,
* spanning out-arborescences of a digraph -- a signed minor of the variable
  Laplace matrix,
* perfect matchings of an orientation-carrying graph -- Pfaffian of the
  signed variable adjacency matrix,
* spanning hypertrees of a 3-uniform hypergraph -- Pfaffian of a signed
  incidence-derived matrix.

All of these polynomials are multilinear with coefficients ±1, so the
monomial supports are exactly the combinatorial objects.  The linear algebra
is exact: fraction-free (Bareiss) elimination for determinants, expansion or
skew elimination for Pfaffians, over Python ints / Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .blackbox import BlackBox
from .sparsepoly import SparsePolynomial


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _det4(m):
    (a, b, c, d), (e, f, g, h), (i, j, k, l), (mm, n, o, p) = m
    kp_lo = k * p - l * o
    jp_ln = j * p - l * n
    jo_kn = j * o - k * n
    ip_lm = i * p - l * mm
    io_km = i * o - k * mm
    in_jm = i * n - j * mm
    return (
        a * (f * kp_lo - g * jp_ln + h * jo_kn)
        - b * (e * kp_lo - g * ip_lm + h * io_km)
        + c * (e * jp_ln - f * ip_lm + h * in_jm)
        - d * (e * jo_kn - f * io_km + g * in_jm)
    )


def _det_bareiss_int(rows):
    """Fraction-free elimination; exact for integer matrices."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_fraction(rows):
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    sign = 1
    det = Fraction(1)
    for k in range(n):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        det *= pivot
        for i in range(k + 1, n):
            f = m[i][k] / pivot
            if f == 0:
                continue
            row_i = m[i]
            row_k = m[k]
            for j in range(k, n):
                row_i[j] -= f * row_k[j]
    return sign * det


def determinant(rows) -> Fraction | int:
    """Exact determinant of a square matrix of ints or Fractions."""
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    all_int = all(isinstance(x, int) for r in rows for x in r)
    if all_int:
        if n == 2:
            return _det2(rows)
        if n == 3:
            return _det3(rows)
        if n == 4:
            return _det4(rows)
        return _det_bareiss_int(rows)
    return _det_fraction(rows)


def _check_skew(rows) -> int:
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError("pfaffian needs a square matrix")
    for i in range(n):
        if rows[i][i] != 0:
            raise ValueError("pfaffian needs a zero diagonal")
        for j in range(i + 1, n):
            if rows[i][j] != -rows[j][i]:
                raise ValueError(f"matrix is not skew-symmetric at ({i},{j})")
    return n


def _pfaffian_expand(rows, index_set):
    """Expansion along the first live row; fine for small dimensions."""
    if not index_set:
        return 1
    i = index_set[0]
    rest = index_set[1:]
    total = 0
    sign = 1
    for pos, j in enumerate(rest):
        a = rows[i][j]
        if a != 0:
            sub = rest[:pos] + rest[pos + 1 :]
            total += sign * a * _pfaffian_expand(rows, sub)
        sign = -sign
    return total


def _pfaffian_eliminate(rows):
    """Skew-symmetric elimination with exact pivoting and sign tracking."""
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    result = Fraction(1)
    for k in range(0, n, 2):
        # Need a nonzero entry in row k to the right of k.
        pivot_col = None
        for j in range(k + 1, n):
            if m[k][j] != 0:
                pivot_col = j
                break
        if pivot_col is None:
            return Fraction(0)
        if pivot_col != k + 1:
            # Swap row/column pivot_col <-> k+1; each pair swap flips the sign.
            m[k + 1], m[pivot_col] = m[pivot_col], m[k + 1]
            for row in m:
                row[k + 1], row[pivot_col] = row[pivot_col], row[k + 1]
            result = -result
        pivot = m[k][k + 1]
        result *= pivot
        # Zero out the rest of rows/columns k and k+1 by congruence updates,
        # which leave the Pfaffian of the remaining block unchanged.
        for i in range(k + 2, n):
            c = m[k][i] / pivot
            if c != 0:
                for j in range(n):
                    m[i][j] -= c * m[k + 1][j]
                for row in m:
                    row[i] -= c * row[k + 1]
            c2 = m[k + 1][i] / pivot
            if c2 != 0:
                for j in range(n):
                    m[i][j] += c2 * m[k][j]
                for row in m:
                    row[i] += c2 * row[k]
    return result


def pfaffian(rows) -> Fraction | int:
    """Exact Pfaffian of a skew-symmetric matrix; 0 for odd dimension.

    Satisfies pfaffian(M)**2 == determinant(M).
    """
    n = _check_skew(rows)
    if n % 2 == 1:
        return 0
    if n == 0:
        return 1
    if n <= 8:
        return _pfaffian_expand(rows, tuple(range(n)))
    return _pfaffian_eliminate(rows)


# ---------------------------------------------------------------------------
# variable matrices
# ---------------------------------------------------------------------------


class AffineMatrix:
    """Square matrix whose entries are integer combinations of variables.

    Entry (i, j) holds a list of (variable index 0-based, coefficient)
    pairs; :meth:`substitute` turns a point into a plain numeric matrix.
    """

    def __init__(self, size: int):
        self.size = size
        self.entries: list[list[list[tuple[int, int]]]] = [
            [[] for _ in range(size)] for _ in range(size)
        ]

    def add(self, i: int, j: int, var0: int, coeff: int) -> None:
        self.entries[i][j].append((var0, coeff))

    def add_skew(self, i: int, j: int, var0: int, coeff: int) -> None:
        self.add(i, j, var0, coeff)
        self.add(j, i, var0, -coeff)

    def minor(self, drop_row: int, drop_col: int) -> "AffineMatrix":
        keep_r = [r for r in range(self.size) if r != drop_row]
        keep_c = [c for c in range(self.size) if c != drop_col]
        out = AffineMatrix(self.size - 1)
        for a, r in enumerate(keep_r):
            for b, c in enumerate(keep_c):
                out.entries[a][b] = list(self.entries[r][c])
        return out

    def substitute(self, point):
        rows = []
        for entry_row in self.entries:
            row = []
            for terms in entry_row:
                v = 0
                for var0, coeff in terms:
                    v += coeff * point[var0]
                row.append(v)
            rows.append(row)
        return rows


# ---------------------------------------------------------------------------
# graph containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Digraph:
    """Directed graph; edges are ordered pairs, self-loops allowed."""

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (1 <= u <= self.vertices and 1 <= v <= self.vertices):
                raise ValueError(f"edge ({u},{v}) out of range 1..{self.vertices}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))


@dataclass(frozen=True)
class OrientedGraph:
    """Undirected graph with an orientation flag per edge: (u, v) means u -> v.

    The caller asserts that the orientation makes all perfect-matching
    signs agree (e.g. one obtained externally for a planar graph).
    """

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (1 <= u <= self.vertices and 1 <= v <= self.vertices) or u == v:
                raise ValueError(f"edge ({u},{v}) invalid for 1..{self.vertices}")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {{{u},{v}}}")
            seen.add(key)


@dataclass(frozen=True)
class Hypergraph3:
    """3-uniform hypergraph: edges are distinct 3-element vertex sets."""

    vertices: int
    edges: tuple[tuple[int, int, int], ...] = field(default=())

    def __post_init__(self):
        seen = set()
        normalized = []
        for e in self.edges:
            trio = tuple(sorted(e))
            if len(set(trio)) != 3:
                raise ValueError(f"hyperedge {e} must have 3 distinct vertices")
            if not all(1 <= v <= self.vertices for v in trio):
                raise ValueError(f"hyperedge {e} out of range 1..{self.vertices}")
            if trio in seen:
                raise ValueError(f"duplicate hyperedge {trio}")
            seen.add(trio)
            normalized.append(trio)
        object.__setattr__(self, "edges", tuple(normalized))


# ---------------------------------------------------------------------------
# black-box constructors
# ---------------------------------------------------------------------------


def explicit_blackbox(poly: SparsePolynomial, degree_bound: int | None = None) -> BlackBox:
    """Oracle that evaluates an explicit sparse polynomial directly.

    The monotone flag is set automatically when all coefficients share a
    sign; the coefficient bitsize bound is filled in for integer
    coefficients.  When no degree bound is given, multilinear polynomials
    default to D = n (the generic bound for the class) and everything else
    to the actual total degree.
    """
    if degree_bound is None:
        degree_bound = poly.n if poly.max_var_degree <= 1 else max(poly.total_degree, 1)
    elif degree_bound < poly.total_degree:
        raise ValueError(
            f"declared degree bound {degree_bound} is below the actual total degree {poly.total_degree}"
        )
    coeffs = [c for _, c in poly.as_dict().items()]
    monotone = bool(coeffs) and (all(c > 0 for c in coeffs) or all(c < 0 for c in coeffs))
    # Precompile (coefficient, [(position, exponent), ...]) for fast evaluation.
    compiled = [
        (coeff, tuple((p, e) for p, e in enumerate(exps) if e))
        for exps, coeff in poly.as_dict().items()
    ]

    def ev(pt):
        total = 0
        for coeff, factors in compiled:
            v = coeff
            for p, e in factors:
                if e == 1:
                    v *= pt[p]
                else:
                    v *= pt[p] ** e
            total += v
        return total

    return BlackBox(
        poly.n,
        degree_bound,
        ev,
        per_var_degree=max(poly.max_var_degree, 1),
        coeff_bits=poly.coefficient_bitsize(),
        monotone=monotone,
    )


def cycle_cover_blackbox(graph: Digraph) -> BlackBox:
    """One variable per edge; the value is det of the variable adjacency matrix.

    The monomials are in bijection with the cycle covers of the digraph
    (vertex-disjoint directed cycles, self-loops allowed, covering every
    vertex); each coefficient is the ±1 sign of the underlying permutation.
    """
    n = graph.vertices
    template = [[-1] * n for _ in range(n)]
    for idx, (u, v) in enumerate(graph.edges):
        template[u - 1][v - 1] = idx
    template = [tuple(r) for r in template]

    def ev(pt):
        rows = [[0 if v < 0 else pt[v] for v in row] for row in template]
        return determinant(rows)

    return BlackBox(
        len(graph.edges),
        max(n, 1),
        ev,
        per_var_degree=1,
        coeff_bits=1,
    )


def arborescence_blackbox(graph: Digraph, root: int, col: int | None = None) -> BlackBox:
    """One variable per edge; spanning arborescences oriented away from ``root``.

    The value is a signed minor of the variable Laplace matrix: entry (i,j)
    is -X_e for each edge e = (i,j), the diagonal entry (i,i) sums the
    variables of the edges entering i, row ``col`` (defaults to the root)
    and column ``root`` are deleted, and the determinant is multiplied by
    (-1)^(root+col).  All coefficients are +1, so the box is monotone.
    Self-loops are ignored: they cannot occur in an arborescence.
    """
    n = graph.vertices
    if not 1 <= root <= n:
        raise ValueError(f"root {root} out of range 1..{n}")
    if col is None:
        col = root
    elif not 1 <= col <= n:
        raise ValueError(f"column index {col} out of range 1..{n}")

    full = AffineMatrix(n)
    for idx, (u, v) in enumerate(graph.edges):
        if u == v:
            continue
        full.add(u - 1, v - 1, idx, -1)
        full.add(v - 1, v - 1, idx, 1)
    minor = full.minor(col - 1, root - 1)
    sign = -1 if (root + col) % 2 else 1

    def ev(pt):
        return sign * determinant(minor.substitute(pt))

    return BlackBox(
        len(graph.edges),
        max(n - 1, 1),
        ev,
        per_var_degree=1,
        coeff_bits=1,
        monotone=True,
    )


def matching_blackbox(graph: OrientedGraph) -> BlackBox:
    """One variable per edge; the value is the Pfaffian of the signed adjacency.

    Entry (u,v) is +X_e when the edge is oriented u -> v and -X_e the other
    way.  Monomial supports are exactly the perfect matchings; with a valid
    supplied orientation all coefficients share one sign, so the box is
    flagged monotone (an odd vertex count gives the zero box).
    """
    n = graph.vertices
    matrix = AffineMatrix(n)
    for idx, (u, v) in enumerate(graph.edges):
        matrix.add_skew(u - 1, v - 1, idx, 1)

    if n % 2 == 1:

        def ev(pt):
            return 0

    else:

        def ev(pt):
            return pfaffian(matrix.substitute(pt))

    return BlackBox(
        len(graph.edges),
        max(n // 2, 1),
        ev,
        per_var_degree=1,
        coeff_bits=1,
        monotone=True,
    )


def hypertree_blackbox(graph: Hypergraph3) -> BlackBox:
    """One variable per hyperedge; spanning hypertrees of a 3-uniform hypergraph.

    For each hyperedge {a,b,c} (a < b < c) the skew matrix gets +y on the
    (a,b) and (b,c) entries and -y on (a,c): the sign of the permutation
    sorting pair-plus-remaining-vertex.  The last row and column are
    deleted and the Pfaffian taken.  The monomial supports are the
    Berge-acyclic spanning hypertrees and every coefficient is ±1
    (possible only when the vertex count is odd; otherwise the box is
    identically zero).
    """
    n = graph.vertices
    matrix = AffineMatrix(n)
    for idx, (a, b, c) in enumerate(graph.edges):
        matrix.add_skew(a - 1, b - 1, idx, 1)
        matrix.add_skew(b - 1, c - 1, idx, 1)
        matrix.add_skew(a - 1, c - 1, idx, -1)
    minor = matrix.minor(n - 1, n - 1)

    if (n - 1) % 2 == 1:

        def ev(pt):
            return 0

    else:

        def ev(pt):
            return pfaffian(minor.substitute(pt))

    return BlackBox(
        len(graph.edges),
        max((n - 1) // 2, 1),
        ev,
        per_var_degree=1,
        coeff_bits=1,
    )
