"""
grid.py - Acceptance Grid Runner

Sweeps a family of targets, realizes every feasible one, and recomputes its
invariants from scratch:

    rank5-cd   α1, α2, α3 <= N, α13 <= α1·α3 + 2
               cd-index matches, f_{2,3} = α13 + 2(α1 + α2 + α3) + 4
    rank5-d    x <= N, 0 <= y <= x²/4 + 1
               feasibility iff 4y <= (x-1)² or (x, y) = (a+b, ab); d-vector matches
    rank6-d    x <= N, 4y <= x²
               d-vector matches, α13 <= α1α3, α14 <= α1α4, α24 <= α2α4
    gamma4     x <= N, 4y <= x²
               flag, symmetric h, homology 4-sphere, γ = (1, x, y)

Every realized poset with d-vector (1, x, y) also has Φ >= 0 and an order
complex with symmetric h-vector and γ = (1, 2x, 4y).

Posets with every coordinate <= HOMOLOGY_GRID_LIMIT are also certified
Gorenstein* (spheres always are). Anything over the face budget is marked
"skipped", never "passed".

Usage:
    python -m cdgor grid --suite rank5-cd --max 4 [--workers 4]
"""

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Tuple

from .config import HOMOLOGY_GRID_LIMIT
from .errors import BudgetExceeded, CdgorError
from .flagvec import (
    CdPolynomial,
    Rank5Coeffs,
    cd_index,
    d_vector,
    flag_f,
    rank6_coeffs,
    rank6_inequalities_hold,
)
from .homology import is_gorenstein_star, is_homology_sphere
from .poset import GradedPoset
from .realize import (
    build_flag_gamma4,
    feasible_gamma4,
    feasible_rank5_cd,
    feasible_rank5_d,
    feasible_rank6_d,
    lambda3_lower_bound,
    product_witness,
    realize_rank5_cd,
    realize_rank5_d,
    realize_rank6_d,
)
from .simplicial import gamma_from_h, h_vector, is_flag, order_complex

SUITES = ("rank5-cd", "rank5-d", "rank6-d", "gamma4")

Target = Tuple[int, ...]


class GridEntry(NamedTuple):
    """
    Outcome for one target.

    Attributes:
        target: Coordinates (α's, or (x, y))
        feasible: Verdict of the feasibility predicate
        status: "passed", "failed" or "infeasible"
        homology: "certified", "failed", "skipped" or "not-run"
        detail: Case name or first failed check
    """
    target: Target
    feasible: bool
    status: str
    homology: str
    detail: str

    def to_json(self) -> Dict:
        return {
            "target": list(self.target),
            "feasible": self.feasible,
            "status": self.status,
            "homology": self.homology,
            "detail": self.detail,
        }


# =============================================================================
# TARGET ENUMERATION
# =============================================================================

def targets_for(suite: str, max_value: int) -> List[Target]:
    """Targets of a suite, sorted."""
    if suite == "rank5-cd":
        return sorted(
            (a1, a2, a3, a13)
            for a1 in range(max_value + 1)
            for a2 in range(max_value + 1)
            for a3 in range(max_value + 1)
            for a13 in range(a1 * a3 + 3)
        )
    if suite == "rank5-d":
        return [(x, y) for x in range(max_value + 1) for y in range(x * x // 4 + 2)]
    if suite in ("rank6-d", "gamma4"):
        return [(x, y) for x in range(max_value + 1) for y in range(x * x // 4 + 1)]
    raise ValueError(f"unknown suite {suite!r}, expected one of {SUITES}")


# =============================================================================
# PER-TARGET CHECKS
# =============================================================================

def _certify(check, obj, budget: Optional[int]) -> str:
    try:
        return "certified" if check(obj, budget) else "failed"
    except BudgetExceeded:
        return "skipped"


def _palindromic_gamma(h: Tuple[int, ...], expected: Tuple[int, ...]) -> str:
    if h != tuple(reversed(h)):
        return f"h-vector {h} not symmetric"
    gamma = gamma_from_h(h)
    if gamma != expected:
        return f"gamma {gamma}, expected {expected}"
    return ""


def _poset_shape(p: GradedPoset, phi: CdPolynomial, delta: Tuple[int, ...]) -> str:
    """First failed shape check of a realized poset, or "" if none fails."""
    if not phi.is_nonnegative():
        return f"negative cd coefficient in {phi}"
    expected = tuple(2 ** i * d for i, d in enumerate(delta))
    failure = _palindromic_gamma(h_vector(order_complex(p)), expected)
    return f"order complex: {failure}" if failure else ""


def _check_rank5_cd(t: Target, homology: bool, budget: Optional[int]) -> GridEntry:
    alpha = Rank5Coeffs(*t)
    feas = feasible_rank5_cd(alpha)
    if not feas.feasible:
        return GridEntry(t, False, "infeasible", "not-run", feas.verdict.value)
    p = realize_rank5_cd(alpha)
    phi = cd_index(p)
    if phi != alpha.to_cd():
        return GridEntry(t, True, "failed", "not-run", f"cd-index {phi}")
    f23 = flag_f(p)[(2, 3)]
    expected = alpha.alpha13 + 2 * (alpha.alpha1 + alpha.alpha2 + alpha.alpha3) + 4
    if f23 != expected:
        return GridEntry(t, True, "failed", "not-run", f"f_23 = {f23}, expected {expected}")
    x = alpha.alpha1 + alpha.alpha2 + alpha.alpha3
    failure = _poset_shape(p, phi, (1, x, alpha.alpha13))
    if failure:
        return GridEntry(t, True, "failed", "not-run", failure)
    hom = "not-run"
    if homology and max(t) <= HOMOLOGY_GRID_LIMIT:
        hom = _certify(is_gorenstein_star, p, budget)
    status = "failed" if hom == "failed" else "passed"
    return GridEntry(t, True, status, hom, feas.verdict.value)


def _check_rank5_d(t: Target, homology: bool, budget: Optional[int]) -> GridEntry:
    x, y = t
    feasible = feasible_rank5_d(x, y)
    if feasible != (4 * y <= (x - 1) ** 2 or product_witness(x, y) is not None):
        return GridEntry(t, feasible, "failed", "not-run", "predicate disagrees")
    if not feasible:
        return GridEntry(t, False, "infeasible", "not-run", "")
    p = realize_rank5_d(x, y)
    phi = cd_index(p)
    d = d_vector(phi)
    if d != (1, x, y):
        return GridEntry(t, True, "failed", "not-run", f"d-vector {d}")
    failure = _poset_shape(p, phi, d)
    if failure:
        return GridEntry(t, True, "failed", "not-run", failure)
    return GridEntry(t, True, "passed", "not-run", "")


def _check_rank6_d(t: Target, homology: bool, budget: Optional[int]) -> GridEntry:
    x, y = t
    if not feasible_rank6_d(x, y):
        return GridEntry(t, False, "infeasible", "not-run", "")
    p = realize_rank6_d(x, y)
    phi = cd_index(p)
    d = d_vector(phi)
    if d != (1, x, y):
        return GridEntry(t, True, "failed", "not-run", f"d-vector {d}")
    if not rank6_inequalities_hold(rank6_coeffs(phi)):
        return GridEntry(t, True, "failed", "not-run", f"inequalities fail for {phi}")
    failure = _poset_shape(p, phi, d)
    if failure:
        return GridEntry(t, True, "failed", "not-run", failure)
    hom = "not-run"
    if homology and x <= HOMOLOGY_GRID_LIMIT:
        hom = _certify(is_gorenstein_star, p, budget)
    status = "failed" if hom == "failed" else "passed"
    return GridEntry(t, True, status, hom, "")


def _check_gamma4(t: Target, homology: bool, budget: Optional[int]) -> GridEntry:
    x, y = t
    if not feasible_gamma4(x, y):
        return GridEntry(t, False, "infeasible", "not-run", "")
    k = build_flag_gamma4(x, y)
    if not is_flag(k):
        return GridEntry(t, True, "failed", "not-run", "not flag")
    failure = _palindromic_gamma(h_vector(k), (1, x, y))
    if failure:
        return GridEntry(t, True, "failed", "not-run", failure)
    hom = _certify(is_homology_sphere, k, budget) if homology else "not-run"
    status = "failed" if hom == "failed" else "passed"
    return GridEntry(t, True, status, hom, f"{len(k.vertices)} vertices")


_CHECKS = {
    "rank5-cd": _check_rank5_cd,
    "rank5-d": _check_rank5_d,
    "rank6-d": _check_rank6_d,
    "gamma4": _check_gamma4,
}


def check_target(suite: str, target: Target, homology: bool = True,
                 budget: Optional[int] = None) -> GridEntry:
    """Run one suite check; domain errors become a failed entry."""
    try:
        return _CHECKS[suite](target, homology, budget)
    except CdgorError as exc:
        return GridEntry(target, True, "failed", "not-run", f"{type(exc).__name__}: {exc}")


def _check_packed(args: Tuple[str, Target, bool, Optional[int]]) -> GridEntry:
    return check_target(*args)


# =============================================================================
# RUNNER
# =============================================================================

class GridReport(NamedTuple):
    suite: str
    max_value: int
    entries: List[GridEntry]

    @property
    def failures(self) -> List[GridEntry]:
        return [e for e in self.entries if e.status == "failed"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for e in self.entries:
            counts[e.status] = counts.get(e.status, 0) + 1
            if e.homology != "not-run":
                key = f"homology-{e.homology}"
                counts[key] = counts.get(key, 0) + 1
        return counts

    def to_json(self) -> Dict:
        return {
            "suite": self.suite,
            "max": self.max_value,
            "passed": self.passed,
            "counts": self.counts(),
            "entries": [e.to_json() for e in self.entries],
        }


class GridRunner:
    """
    Runs one acceptance suite, optionally over a process pool.

    Attributes:
        suite: Suite name (one of SUITES)
        max_value: Grid bound N
        workers: Process count; 1 runs inline
        homology: Whether to run homology certification
        budget: Face budget override
    """

    def __init__(self, suite: str, max_value: int, workers: int = 1,
                 homology: bool = True, budget: Optional[int] = None):
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}, expected one of {SUITES}")
        if max_value < 0:
            raise ValueError(f"--max must be nonnegative, got {max_value}")
        self.suite = suite
        self.max_value = max_value
        self.workers = max(1, workers)
        self.homology = homology
        self.budget = budget
        self.targets = targets_for(suite, max_value)
        self.start_time: Optional[float] = None

    def run(self, verbose: bool = True) -> GridReport:
        self.start_time = time.time()
        if verbose:
            print(f"Running suite {self.suite} up to {self.max_value}: "
                  f"{len(self.targets)} targets, {self.workers} worker(s)")

        jobs = [(self.suite, t, self.homology, self.budget) for t in self.targets]
        if self.workers > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                entries = list(pool.map(_check_packed, jobs, chunksize=8))
        else:
            entries = []
            for i, job in enumerate(jobs, start=1):
                entries.append(_check_packed(job))
                if verbose and i % 100 == 0:
                    print(f"  Progress: {i}/{len(jobs)} targets, "
                          f"{time.time() - self.start_time:.1f}s")

        entries.sort(key=lambda e: e.target)
        report = GridReport(self.suite, self.max_value, entries)
        if verbose:
            self._print_table(report)
            self._print_summary(report)
        return report

    def _print_table(self, report: GridReport) -> None:
        print()
        print(f"  {'target':<22}{'status':<12}{'homology':<12}detail")
        for e in report.entries:
            target = ",".join(map(str, e.target))
            print(f"  {target:<22}{e.status:<12}{e.homology:<12}{e.detail}")

    def _print_summary(self, report: GridReport) -> None:
        elapsed = time.time() - self.start_time
        counts = report.counts()
        print("\n" + "=" * 60)
        print(f"GRID SUMMARY: {self.suite} (max {self.max_value})")
        print("=" * 60)
        for key in sorted(counts):
            print(f"  {key + ':':<28}{counts[key]}")
        print(f"  {'Total time:':<28}{elapsed:.2f}s")
        print(f"  {'Result:':<28}{'PASS' if report.passed else 'FAIL'}")
        print("=" * 60)


# =============================================================================
# FLAG-SPHERE γ-VECTORS VERSUS POSET d-VECTORS
# =============================================================================

class CompareRow(NamedTuple):
    x: int
    y: int
    gamma: bool
    d: bool


def compare_predicates(k: int, max_x: int) -> List[CompareRow]:
    """
    Tabulate γ-vectors of flag homology k-spheres against d-vectors of
    rank k+2 Gorenstein* posets, for k in {3, 4}.

    For k = 3 the γ side is the known lower bound (products and 4y <= (x-1)²).
    """
    if k == 3:
        gamma_side, d_side = lambda3_lower_bound, feasible_rank5_d
    elif k == 4:
        gamma_side, d_side = feasible_gamma4, feasible_rank6_d
    else:
        raise ValueError(f"k must be 3 or 4, got {k}")
    return [CompareRow(x, y, gamma_side(x, y), d_side(x, y))
            for x in range(max_x + 1) for y in range(x * x // 4 + 2)]


# =============================================================================
# VERIFICATION / TESTING
# =============================================================================

def verify_grid() -> None:
    """Run the smallest grids of every suite inline."""
    print("Verifying grid module...")
    for suite in SUITES:
        report = GridRunner(suite, 1).run(verbose=False)
        assert report.passed, f"{suite}: {report.failures}"
        print(f"✓ {suite} up to 1: {report.counts()}")
    rows = compare_predicates(4, 4)
    assert all(r.gamma == r.d for r in rows)
    print(f"✓ 4-sphere γ and rank-6 d predicates agree on {len(rows)} pairs")
    print("\n✓ Grid verification complete!")


if __name__ == "__main__":
    verify_grid()
