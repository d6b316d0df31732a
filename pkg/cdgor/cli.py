"""
cli.py - Command-Line Front End

Subcommands:
    realize-cd   --alpha A1,A2,A3,A13 [--out FILE] [--verify]
    realize-d    --rank {5,6} --d 1,X,Y [--out FILE] [--verify]
    flag-sphere  --gamma 1,X,Y [--out FILE] [--verify]
    invariants   FILE
    verify       FILE [--homology]
    feasible     --rank5-cd A1,A2,A3,A13 | --rank5-d X,Y | --rank6-d X,Y | --gamma4 X,Y
    grid         --suite {rank5-cd,rank5-d,rank6-d,gamma4} --max N [--workers K]
    compare      --k {3,4} --max N

Common options: --format {text,json}, --quiet, --budget N.

Exit status: 0 success / feasible / true, 1 infeasible / false / mismatch,
2 error (one line "error: <Name>: <message>" on stderr).

Usage:
    python -m cdgor feasible --rank5-cd 1,0,1,1
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence, Union

from . import __version__
from .errors import (
    BudgetExceeded,
    HNotSymmetric,
    InfeasibleTarget,
    NotCdExpressible,
)
from .export import (
    canonical_dumps,
    construction_to_json,
    export_construction,
    load_object,
    write_json,
)
from .flagvec import (
    Rank5Coeffs,
    ab_index,
    cd_index,
    d_vector,
    flag_f,
    flag_h,
    format_cd,
)
from .grid import SUITES, GridRunner, compare_predicates
from .homology import SphereReport, certify_sphere, reduced_homology
from .poset import GradedPoset, is_thin
from .realize import (
    Construction,
    SphereConstruction,
    feasible_gamma4,
    feasible_rank5_cd,
    feasible_rank5_d,
    feasible_rank6_d,
    flag_gamma4_construction,
    gamma4_route,
    product_witness,
    rank5_cd_construction,
    rank5_d_construction,
    rank6_d_construction,
    rank6_route,
)
from .simplicial import (
    SimplicialComplex,
    f_vector,
    gamma_vector,
    h_vector,
    is_flag,
    order_complex,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2

CD_TEXT_NOTE = ("cd-indices print with unit coefficients omitted, e.g. 'c^4 + cdc'; "
                "the form 'c^4 + 1*cdc' is read as the same polynomial.")


class UsageError(Exception):
    """Raised by the parsers in place of argparse's print-and-exit."""


# =============================================================================
# ARGUMENT PARSING
# =============================================================================

def int_list(length: int, leading_one: bool = False):
    """argparse type for comma-separated nonnegative integers of a fixed length."""
    def parse(text: str) -> List[int]:
        try:
            values = [int(part) for part in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")
        if len(values) != length:
            raise argparse.ArgumentTypeError(f"expected {length} values, got {len(values)}")
        if any(v < 0 for v in values):
            raise argparse.ArgumentTypeError(f"values must be nonnegative: {text!r}")
        if leading_one and values[0] != 1:
            raise argparse.ArgumentTypeError(f"first entry must be 1: {text!r}")
        return values
    return parse


def nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def positive(text: str) -> int:
    value = nonnegative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as UsageError instead of exiting."""

    def error(self, message: str) -> None:
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="Report format (default: text)")
    common.add_argument("--quiet", "-q", action="store_true", help="Minimal output")
    common.add_argument("--budget", type=positive, default=None,
                        help="Face budget for homology (default: $CDGOR_BUDGET or 50000)")

    parser = _Parser(
        prog="cdgor",
        description="cd-indices, unzipping and Gorenstein* realizations",
    )
    parser.add_argument("--version", action="version", version=f"cdgor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("realize-cd", parents=[common],
                       help="Build a rank-5 Gorenstein* poset with a given cd-index",
                       epilog=CD_TEXT_NOTE)
    p.add_argument("--alpha", type=int_list(4), required=True, help="A1,A2,A3,A13")
    p.add_argument("--out", "-o", default=None, help="Output poset file")
    p.add_argument("--verify", action="store_true", help="Recompute and certify")

    p = sub.add_parser("realize-d", parents=[common],
                       help="Build a rank-5 or rank-6 poset with a given d-vector")
    p.add_argument("--rank", type=int, choices=(5, 6), required=True)
    p.add_argument("--d", type=int_list(3, leading_one=True), required=True, help="1,X,Y")
    p.add_argument("--out", "-o", default=None, help="Output poset file")
    p.add_argument("--verify", action="store_true", help="Recompute and certify")

    p = sub.add_parser("flag-sphere", parents=[common],
                       help="Build a flag homology 4-sphere with a given γ-vector")
    p.add_argument("--gamma", type=int_list(3, leading_one=True), required=True, help="1,X,Y")
    p.add_argument("--out", "-o", default=None, help="Output complex file")
    p.add_argument("--verify", action="store_true", help="Recompute and certify")

    p = sub.add_parser("invariants", parents=[common], help="Print invariants of a file")
    p.add_argument("file")

    p = sub.add_parser("verify", parents=[common], help="Validate a poset or complex file")
    p.add_argument("file")
    p.add_argument("--homology", action="store_true", help="Certify a homology sphere")

    p = sub.add_parser("feasible", parents=[common], help="Feasibility predicates")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rank5-cd", type=int_list(4), metavar="A1,A2,A3,A13")
    group.add_argument("--rank5-d", type=int_list(2), metavar="X,Y")
    group.add_argument("--rank6-d", type=int_list(2), metavar="X,Y")
    group.add_argument("--gamma4", type=int_list(2), metavar="X,Y")

    p = sub.add_parser("grid", parents=[common], help="Run an acceptance grid")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max", type=nonnegative, required=True, dest="max_value")
    p.add_argument("--workers", type=positive, default=1)
    p.add_argument("--no-homology", action="store_true", help="Skip homology certification")
    p.add_argument("--out", "-o", default=None, help="Write the JSON report here")

    p = sub.add_parser("compare", parents=[common],
                       help="Compare γ-vectors of flag spheres with d-vectors of posets")
    p.add_argument("--k", type=int, choices=(3, 4), required=True)
    p.add_argument("--max", type=nonnegative, required=True, dest="max_value")
    return parser


# =============================================================================
# REPORTING
# =============================================================================

class Reporter:
    """Collects report fields, printing text lines as it goes unless JSON or quiet."""

    def __init__(self, fmt: str, quiet: bool):
        self.json = fmt == "json"
        self.quiet = quiet
        self.data: Dict[str, Any] = {}

    def line(self, text: str) -> None:
        if not self.json and not self.quiet:
            print(text)

    def result(self, text: str) -> None:
        """Final verdict line; printed even with --quiet."""
        if not self.json:
            print(text)

    def field(self, key: str, value: Any, label: Optional[str] = None) -> None:
        self.data[key] = value
        if label is not None:
            self.line(f"  {label:<18}{value}")

    def finish(self) -> None:
        if self.json:
            sys.stdout.write(canonical_dumps(self.data))


def _homology_summary(report: SphereReport) -> Dict[str, Any]:
    return {
        "passed": report.passed,
        "homology": report.profile.describe(),
        "links_checked": report.links_checked,
        "failures": [{"face": list(face), "link": prof.describe()}
                     for face, prof in report.failures],
    }


def _certify(out: Reporter, d: SimplicialComplex, budget: Optional[int]) -> bool:
    """Run the all-links test; over budget it is reported as skipped and does not fail."""
    try:
        report = certify_sphere(d, budget)
    except BudgetExceeded as exc:
        out.field("certification", {"skipped": str(exc)})
        out.line(f"  {'homology:':<18}skipped ({exc})")
        return True
    out.field("certification", _homology_summary(report))
    out.line(f"  {'homology:':<18}{report.profile.describe()}")
    out.line(f"  {'links checked:':<18}{report.links_checked}")
    for face, prof in report.failures:
        out.line(f"  ✗ link of {list(face)}: {prof.describe()}")
    return report.passed


# =============================================================================
# REALIZATION COMMANDS
# =============================================================================

def _emit_construction(out: Reporter, c: Union[Construction, SphereConstruction],
                       path: Optional[str]) -> None:
    out.data.update(construction_to_json(c))
    obj = c.poset if isinstance(c, Construction) else c.complex
    if isinstance(obj, GradedPoset):
        out.line(f"  {'elements:':<18}{len(obj)}")
        out.line(f"  {'rank:':<18}{obj.rank}")
    else:
        out.line(f"  {'vertices:':<18}{len(obj.vertices)}")
        out.line(f"  {'facets:':<18}{len(obj.facets)}")
    for step in c.trace:
        out.line(f"  step: {step}")
    if path:
        obj_path, trace = export_construction(c, path)
        out.field("files", [str(obj_path), str(trace)])
        out.line(f"\nSaved to {obj_path} (trace: {trace})")
    else:
        out.data["object"] = obj.to_description()


def _reload(c: Union[Construction, SphereConstruction], path: Optional[str]):
    if path:
        return load_object(path)
    return c.poset if isinstance(c, Construction) else c.complex


def cmd_realize_cd(args, out: Reporter) -> int:
    alpha = Rank5Coeffs(*args.alpha)
    out.line("=" * 60)
    out.line(f"REALIZE cd-INDEX  {format_cd(alpha.to_cd())}")
    out.line("=" * 60)
    c = rank5_cd_construction(alpha)
    out.line(f"  {'case:':<18}{c.target['verdict']}")
    _emit_construction(out, c, args.out)
    if not args.verify:
        return EXIT_OK

    p = _reload(c, args.out)
    phi = cd_index(p)
    out.field("cd_index", format_cd(phi), "recomputed:")
    ok = phi == alpha.to_cd()
    ok = _certify(out, order_complex(p), args.budget) and ok
    out.result("✓ verified" if ok else "✗ verification failed")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_realize_d(args, out: Reporter) -> int:
    _, x, y = args.d
    out.line("=" * 60)
    out.line(f"REALIZE RANK {args.rank} d-VECTOR  (1, {x}, {y})")
    out.line("=" * 60)
    build = rank5_d_construction if args.rank == 5 else rank6_d_construction
    c = build(x, y)
    _emit_construction(out, c, args.out)
    if not args.verify:
        return EXIT_OK

    p = _reload(c, args.out)
    d = d_vector(cd_index(p))
    out.field("d_vector", list(d), "recomputed:")
    ok = d == (1, x, y) and p.rank == args.rank
    ok = _certify(out, order_complex(p), args.budget) and ok
    out.result("✓ verified" if ok else "✗ verification failed")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_flag_sphere(args, out: Reporter) -> int:
    _, x, y = args.gamma
    out.line("=" * 60)
    out.line(f"FLAG 4-SPHERE  γ = (1, {x}, {y})")
    out.line("=" * 60)
    c = flag_gamma4_construction(x, y)
    _emit_construction(out, c, args.out)
    if not args.verify:
        return EXIT_OK

    k = _reload(c, args.out)
    gamma = gamma_vector(k)
    out.field("gamma", list(gamma), "recomputed:")
    flag = is_flag(k)
    out.field("flag", flag, "flag:")
    ok = gamma == (1, x, y) and flag and k.dim == 4
    ok = _certify(out, k, args.budget) and ok
    out.result("✓ verified" if ok else "✗ verification failed")
    return EXIT_OK if ok else EXIT_FALSE


# =============================================================================
# FILE COMMANDS
# =============================================================================

def _format_ab(psi) -> str:
    terms = [f"{c}*{w}" for w, c in sorted(psi.coeffs.items())]
    return " + ".join(terms) if terms else "0"


def cmd_invariants(args, out: Reporter) -> int:
    obj = load_object(args.file)
    if isinstance(obj, GradedPoset):
        out.field("kind", "poset", "kind:")
        out.field("rank", obj.rank, "rank:")
        f = flag_f(obj)
        h = flag_h(f)
        out.field("flag_f", {",".join(map(str, s)) or "-": v for s, v in f.items()})
        out.field("flag_h", {",".join(map(str, s)) or "-": v for s, v in h.items()})
        for s, v in f.items():
            out.line(f"  f_{{{','.join(map(str, s))}}} = {v}, h = {h[s]}")
        psi = ab_index(h)
        out.field("ab_index", _format_ab(psi), "ab-index:")
        try:
            phi = cd_index(obj)
        except NotCdExpressible as exc:
            out.field("cd_index", None)
            out.line(f"  {'cd-index:':<18}not cd-expressible ({exc})")
        else:
            out.field("cd_index", format_cd(phi), "cd-index:")
            out.field("d_vector", list(d_vector(phi)), "d-vector:")
    else:
        out.field("kind", "complex", "kind:")
        out.field("dim", obj.dim, "dim:")
        out.field("f_vector", list(f_vector(obj)), "f-vector:")
        out.field("h_vector", list(h_vector(obj)), "h-vector:")
        try:
            out.field("gamma", list(gamma_vector(obj)), "γ-vector:")
        except HNotSymmetric:
            out.field("gamma", None, "γ-vector:")
    return EXIT_OK


def cmd_verify(args, out: Reporter) -> int:
    obj = load_object(args.file)
    out.line(f"✓ {args.file} is a valid {'poset' if isinstance(obj, GradedPoset) else 'complex'}")
    ok = True
    if isinstance(obj, GradedPoset):
        thin = is_thin(obj)
        out.field("thin", thin, "thin:")
        try:
            cd_index(obj)
            expressible = True
        except NotCdExpressible:
            expressible = False
        out.field("cd_expressible", expressible, "cd-expressible:")
        ok = thin and expressible
        complex_ = order_complex(obj)
    else:
        pure = obj.is_pure()
        out.field("pure", pure, "pure:")
        out.field("flag", is_flag(obj), "flag:")
        ok = pure
        complex_ = obj

    if args.homology:
        if complex_.is_pure():
            ok = _certify(out, complex_, args.budget) and ok
        else:
            out.field("reduced_homology", reduced_homology(complex_, args.budget).describe(),
                      "homology:")
            ok = False
    out.field("passed", ok)
    out.result("✓ passed" if ok else "✗ failed")
    return EXIT_OK if ok else EXIT_FALSE


# =============================================================================
# PREDICATES AND GRIDS
# =============================================================================

def cmd_feasible(args, out: Reporter) -> int:
    if args.rank5_cd is not None:
        feas = feasible_rank5_cd(Rank5Coeffs(*args.rank5_cd))
        verdict = feas.verdict.value if feas.feasible else "infeasible"
        out.field("verdict", verdict)
        if feas.witness is not None:
            out.field("witness", {"b": list(feas.witness.b), "c": list(feas.witness.c)},
                      "witness:")
        out.result(verdict)
        return EXIT_OK if feas.feasible else EXIT_FALSE

    if args.rank5_d is not None:
        x, y = args.rank5_d
        feasible = feasible_rank5_d(x, y)
        witness = product_witness(x, y)
        if witness is not None:
            out.field("witness", {"a": witness[0], "b": witness[1]}, "witness:")
    elif args.rank6_d is not None:
        x, y = args.rank6_d
        feasible = feasible_rank6_d(x, y)
        if feasible:
            out.field("witness", rank6_route(x, y), "witness:")
    else:
        x, y = args.gamma4
        feasible = feasible_gamma4(x, y)
        if feasible:
            out.field("witness", gamma4_route(x, y), "witness:")
    verdict = "feasible" if feasible else "infeasible"
    out.field("verdict", verdict)
    out.result(verdict)
    return EXIT_OK if feasible else EXIT_FALSE


def cmd_grid(args, out: Reporter) -> int:
    runner = GridRunner(args.suite, args.max_value, workers=args.workers,
                        homology=not args.no_homology, budget=args.budget)
    report = runner.run(verbose=not out.json and not out.quiet)
    out.data.update(report.to_json())
    if args.out:
        write_json(report.to_json(), args.out)
        out.line(f"\nReport saved to {args.out}")
    if out.quiet:
        out.result("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FALSE


def cmd_compare(args, out: Reporter) -> int:
    rows = compare_predicates(args.k, args.max_value)
    out.line(f"  {'x':>3} {'y':>3}  {'gamma':<7}{'d':<7}")
    for r in rows:
        mark = "" if r.gamma == r.d else "  <-"
        out.line(f"  {r.x:>3} {r.y:>3}  {str(r.gamma):<7}{str(r.d):<7}{mark}")
    differ = [[r.x, r.y] for r in rows if r.gamma != r.d]
    out.field("k", args.k)
    out.field("rows", [[r.x, r.y, r.gamma, r.d] for r in rows])
    out.field("differ", differ)
    out.result(f"{len(rows)} pairs, {len(differ)} differ")
    return EXIT_OK


COMMANDS = {
    "realize-cd": cmd_realize_cd,
    "realize-d": cmd_realize_d,
    "flag-sphere": cmd_flag_sphere,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
    "feasible": cmd_feasible,
    "grid": cmd_grid,
    "compare": cmd_compare,
}


# =============================================================================
# MAIN
# =============================================================================

def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run one subcommand and return its exit status.

    Infeasible targets exit 1; domain, I/O and usage errors exit 2.
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_ERROR

    out = Reporter(args.format, args.quiet)
    try:
        status = COMMANDS[args.command](args, out)
    except InfeasibleTarget as exc:
        out.field("verdict", "infeasible")
        out.finish()
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out.finish()
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
