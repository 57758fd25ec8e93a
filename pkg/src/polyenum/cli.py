"""Command-line interface.

Reads a polynomial / graph / hypergraph from a whitespace-separated text
file, builds the corresponding black box, runs the selected enumerator and
streams one JSON record per monomial to stdout the moment it is found.

Input formats ('#' starts a comment, blank lines ignored):

    poly n [D] [C]          header, then one monomial per line:
    <coefficient> <e1> ... <en>
    digraph n               then one "u v" line per directed edge (1-based)
    graph n                 then one "u v" line per edge, oriented u -> v
    hypergraph3 n           then one "a b c" line per hyperedge

Exit codes: 0 success, 2 input parse error, 3 configuration error,
4 run aborted on an internal inconsistency, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .algorithms import (
    ALGORITHMS,
    ConfigurationError,
    ErrorBudget,
    InconsistentOracleError,
    default_algorithm,
    iter_algorithm,
)
from .arith import RandomStream
from .blackbox import BlackBox
from .families import (
    Digraph,
    Hypergraph3,
    OrientedGraph,
    arborescence_blackbox,
    cycle_cover_blackbox,
    explicit_blackbox,
    hypertree_blackbox,
    matching_blackbox,
)
from .harness import ResourceLimitError, brute_force_interpolate, brute_force_structures, run_with_metrics
from .sparsepoly import SparsePolynomial

FAMILIES = ("explicit", "cycle-covers", "arborescences", "matchings", "hypertrees")

_HEADER_FAMILY = {
    "poly": ("explicit",),
    "digraph": ("cycle-covers", "arborescences"),
    "graph": ("matchings",),
    "hypergraph3": ("hypertrees",),
}


class InputParseError(Exception):
    pass


@dataclass
class ParsedInput:
    kind: str
    poly: SparsePolynomial | None = None
    degree_bound: int | None = None
    coeff_bits: int | None = None
    digraph: Digraph | None = None
    graph: OrientedGraph | None = None
    hypergraph: Hypergraph3 | None = None


def _tokens(path: str) -> list[list[str]]:
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputParseError(f"cannot read {path}: {exc}") from exc
    rows = []
    for line in raw.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise InputParseError(f"{path} holds no data")
    return rows


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise InputParseError(f"bad {what}: {token!r}") from exc


def parse_input(path: str) -> ParsedInput:
    rows = _tokens(path)
    header, body = rows[0], rows[1:]
    kind = header[0]
    if kind not in _HEADER_FAMILY:
        raise InputParseError(f"unknown input kind {kind!r}")
    if len(header) < 2:
        raise InputParseError(f"{kind} header needs a size")
    n = _int(header[1], "size")

    if kind == "poly":
        if len(header) > 4:
            raise InputParseError("poly header takes at most: poly n [D] [C]")
        degree_bound = _int(header[2], "degree bound") if len(header) > 2 else None
        coeff_bits = _int(header[3], "coefficient bitsize") if len(header) > 3 else None
        terms: dict[tuple[int, ...], Fraction] = {}
        for row in body:
            if len(row) != n + 1:
                raise InputParseError(f"monomial line needs coefficient + {n} exponents: {' '.join(row)}")
            try:
                coeff = Fraction(row[0])
            except (ValueError, ZeroDivisionError) as exc:
                raise InputParseError(f"bad coefficient {row[0]!r}") from exc
            exps = tuple(_int(t, "exponent") for t in row[1:])
            if any(e < 0 for e in exps):
                raise InputParseError(f"negative exponent in {' '.join(row)}")
            if exps in terms:
                raise InputParseError(f"duplicate exponent vector {exps}")
            if coeff != 0:
                terms[exps] = coeff
        return ParsedInput("poly", poly=SparsePolynomial(n, terms),
                           degree_bound=degree_bound, coeff_bits=coeff_bits)

    pairs = []
    for row in body:
        want = 3 if kind == "hypergraph3" else 2
        if len(row) != want:
            raise InputParseError(f"{kind} edge line needs {want} vertices: {' '.join(row)}")
        pairs.append(tuple(_int(t, "vertex") for t in row))
    try:
        if kind == "digraph":
            return ParsedInput("digraph", digraph=Digraph(n, tuple(pairs)))
        if kind == "graph":
            return ParsedInput("graph", graph=OrientedGraph(n, tuple(pairs)))
        return ParsedInput("hypergraph3", hypergraph=Hypergraph3(n, tuple(pairs)))
    except ValueError as exc:
        raise InputParseError(str(exc)) from exc


def build_box(parsed: ParsedInput, family: str, root: int, col: int | None,
              coeff_bits: int | None) -> BlackBox:
    if family not in _HEADER_FAMILY[parsed.kind]:
        raise ConfigurationError(
            f"family {family!r} does not apply to a {parsed.kind!r} input"
        )
    if family == "explicit":
        box = explicit_blackbox(parsed.poly, parsed.degree_bound)
        bits = coeff_bits if coeff_bits is not None else parsed.coeff_bits
        if bits is not None:
            box.coeff_bits = bits
        return box
    if family == "cycle-covers":
        return cycle_cover_blackbox(parsed.digraph)
    if family == "arborescences":
        return arborescence_blackbox(parsed.digraph, root, col)
    if family == "matchings":
        return matching_blackbox(parsed.graph)
    return hypertree_blackbox(parsed.hypergraph)


def _print_varmap(parsed: ParsedInput, family: str) -> None:
    if family == "explicit":
        return
    edges = (parsed.digraph or parsed.graph or parsed.hypergraph).edges
    for i, e in enumerate(edges, start=1):
        print(f"# x{i} = edge {tuple(e)}", file=sys.stderr)


def _check_algorithm(algorithm: str, parsed: ParsedInput) -> None:
    if parsed.kind != "poly":
        return  # the graph families are all multilinear: any algorithm applies
    poly = parsed.poly
    d = poly.max_var_degree
    if algorithm == "multilinear" and d > 1:
        raise ConfigurationError("the multilinear enumerator needs per-variable degree <= 1")
    if algorithm == "degree2" and d > 2:
        raise ConfigurationError("the degree-2 enumerator needs per-variable degree <= 2")
    if algorithm == "incremental" and not poly.has_distinct_supports():
        raise ConfigurationError("the incremental enumerator needs pairwise distinct supports")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polyenum",
        description="Enumerate the monomials of a black-box polynomial.",
    )
    p.add_argument("input", help="input file (poly / digraph / graph / hypergraph3)")
    p.add_argument("--algorithm", choices=ALGORITHMS, default=None,
                   help="enumerator; default picks the strongest one the input allows")
    p.add_argument("--family", choices=FAMILIES, default=None,
                   help="how to interpret the input; default follows the file header")
    p.add_argument("--epsilon-exp", type=int, default=40, metavar="B",
                   help="failure probability 2^-B (default 40)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=("interp", "onecall"), default="interp",
                   help="zero-test flavour; onecall needs a coefficient bitsize bound")
    p.add_argument("--monotone", action="store_true",
                   help="deterministic mode; requires a monotone box")
    p.add_argument("--parallel", action="store_true",
                   help="expand the top-level subtrees of the multilinear walk concurrently "
                        "(per-record call attribution is omitted)")
    p.add_argument("--root", type=int, default=1, help="arborescence root vertex (default 1)")
    p.add_argument("--col", type=int, default=None,
                   help="free index of the arborescence minor (default: the root)")
    p.add_argument("--metrics-out", default=None, metavar="PATH",
                   help="write the per-output delay report here")
    p.add_argument("--verify", action="store_true",
                   help="also run the exhaustive oracle and compare; exit 5 on mismatch")
    return p


_DEFAULT_FAMILY = {"poly": "explicit", "digraph": "cycle-covers",
                   "graph": "matchings", "hypergraph3": "hypertrees"}


def cmd_enumerate(args, parsed: ParsedInput, family: str, box: BlackBox) -> int:
    eps = ErrorBudget(args.epsilon_exp)
    algorithm = args.algorithm or default_algorithm(box)
    _check_algorithm(algorithm, parsed)
    _print_varmap(parsed, family)

    def record(index: int, monomial, calls) -> None:
        print(
            json.dumps(
                {
                    "index": index,
                    "coefficient": str(monomial.coefficient),
                    "exponents": list(monomial.exponents),
                    "calls_since_previous": calls,
                }
            ),
            flush=True,
        )

    if args.parallel:
        rng = RandomStream(args.seed)
        count = 0
        monomials = []
        for monomial in iter_algorithm(
            algorithm, box, eps, rng, monotone=args.monotone,
            variant=args.variant, parallel=True,
        ):
            count += 1
            monomials.append(monomial)
            record(count, monomial, None)
        if args.metrics_out:
            summary = {
                "algorithm": algorithm, "outputs": count,
                "total_calls": box.stats.total_calls,
                "max_point_bits": box.stats.max_point_bits,
                "parallel": True,
            }
            with open(args.metrics_out, "w") as fh:
                fh.write(json.dumps(summary) + "\n")
        result = SparsePolynomial.from_monomials(box.n, monomials)
    else:
        emitted = []

        def on_output(monomial, rec):
            emitted.append(monomial)
            record(rec.index, monomial, rec.calls_since_previous)

        result, report = run_with_metrics(
            algorithm, box, eps, args.seed,
            monotone=args.monotone, variant=args.variant, on_output=on_output,
        )
        if args.metrics_out:
            with open(args.metrics_out, "w") as fh:
                for line in report.to_lines():
                    fh.write(line + "\n")
                fh.write(json.dumps(report.summary()) + "\n")

    if args.verify:
        return _verify(parsed, family, args, result)
    return 0


def _diff_exit(kind: str, expected, got) -> int:
    missing = sorted(expected - got)
    extra = sorted(got - expected)
    print(f"verification mismatch ({kind})", file=sys.stderr)
    for item in missing:
        print(f"  missing: {item}", file=sys.stderr)
    for item in extra:
        print(f"  extra:   {item}", file=sys.stderr)
    return 5


def _verify(parsed: ParsedInput, family: str, args, result: SparsePolynomial) -> int:
    if family == "explicit":
        fresh = explicit_blackbox(parsed.poly, parsed.degree_bound)
        truth = brute_force_interpolate(fresh, parsed.poly.max_var_degree)
        if truth == result:
            print("verify: enumerated polynomial matches dense interpolation", file=sys.stderr)
            return 0
        expected = {(e, c) for e, c in truth.as_dict().items()}
        got = {(e, c) for e, c in result.as_dict().items()}
        return _diff_exit("explicit polynomial", expected, got)

    instance = parsed.digraph or parsed.graph or parsed.hypergraph
    truth_supports = brute_force_structures(
        instance, family, root=args.root if family == "arborescences" else None
    )
    got_supports = result.supports()
    if truth_supports == got_supports:
        print(f"verify: {len(truth_supports)} {family} supports match", file=sys.stderr)
        return 0
    expected = {tuple(sorted(s)) for s in truth_supports}
    got = {tuple(sorted(s)) for s in got_supports}
    return _diff_exit(family, expected, got)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        parsed = parse_input(args.input)
    except InputParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    family = args.family or _DEFAULT_FAMILY[parsed.kind]
    try:
        box = build_box(parsed, family, args.root, args.col, None)
        if args.monotone and not box.monotone:
            raise ConfigurationError("the monotone flag needs a monotone-flagged box")
        if args.variant == "onecall" and box.coeff_bits is None:
            raise ConfigurationError(
                "the onecall variant needs a coefficient bitsize bound (poly header C)"
            )
        return cmd_enumerate(args, parsed, family, box)
    except (ConfigurationError, ResourceLimitError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 3
    except InconsistentOracleError as exc:
        print(f"run aborted: {exc}", file=sys.stderr)
        return 4


def main_entry() -> None:  # console-script shim
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main_entry()
