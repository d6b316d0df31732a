"""
homology.py - Integer Simplicial Homology and Sphere Certification

Mathematical Foundation:
========================
Reduced simplicial homology of Δ over ℤ comes from the augmented chain
complex  ... -> C_k -> C_(k-1) -> ... -> C_0 -> C_(-1) = ℤ{∅} -> 0  with

    ∂(v_0 < ... < v_k) = Σ_i (-1)^i (v_0 .. v̂_i .. v_k)

If ∂_k has rank r_k and nontrivial invariant factors t_(k,1) | t_(k,2) | ...,

    H̃_k ≅ ℤ^(f_k - r_k - r_(k+1)) ⊕ ⊕_j ℤ/t_(k+1,j)

Conventions:
- {∅} has H̃_(-1) = ℤ, the (-1)-sphere; every facet link is {∅}
- the void complex has zero homology and is not a sphere of any dimension

Elimination:
Boundary matrices of the complexes we build are sparse with entries ±1,
so most of the rank comes from pivoting on unit entries. Each unit pivot
contributes rank 1 and a trivial invariant factor. Whatever block has no
unit entry left goes to sympy's Smith normal form over ZZ.

Certification:
Δ of dimension n is a homology sphere if every face F, ∅ included, has
a link with the reduced homology of S^(n - |F|) and no torsion.
"""

from math import gcd
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .config import face_budget
from .errors import BudgetExceeded, NotPure
from .poset import GradedPoset
from .simplicial import Face, SimplicialComplex, order_complex


# =============================================================================
# HOMOLOGY PROFILE
# =============================================================================

class HomologyProfile(NamedTuple):
    """
    Reduced integer homology in dimensions -1 .. dim.

    Attributes:
        dim: Dimension of the complex (-2 for the void complex)
        betti: betti[i] = free rank of H̃_i, for i = -1 .. dim
        torsion: torsion[i] = invariant factors > 1 of H̃_i
    """
    dim: int
    betti: Dict[int, int]
    torsion: Dict[int, Tuple[int, ...]]

    def is_sphere(self, k: int) -> bool:
        """True iff this is the homology of S^k (k = -1 allowed)."""
        if self.dim < -1:
            return False
        if any(self.torsion.values()):
            return False
        return all(b == (1 if i == k else 0) for i, b in self.betti.items()) \
            and self.betti.get(k, 0) == 1

    def euler_characteristic(self) -> int:
        """Σ (-1)^i betti_i over i >= -1."""
        return sum((-1) ** (i % 2) * b for i, b in self.betti.items())

    def describe(self) -> str:
        parts = []
        for i in sorted(self.betti):
            group = []
            if self.betti[i]:
                group.append("Z" if self.betti[i] == 1 else f"Z^{self.betti[i]}")
            group += [f"Z/{t}" for t in self.torsion.get(i, ())]
            parts.append(f"H{i}={' + '.join(group) if group else '0'}")
        return ", ".join(parts) if parts else "void"


# =============================================================================
# SMITH NORMAL FORM
# =============================================================================

def invariant_factors(diagonal: Sequence[int]) -> List[int]:
    """
    Normalize a diagonal to an invariant-factor chain d_1 | d_2 | ...

    Zero entries are dropped; signs are discarded.
    """
    factors = sorted(abs(int(v)) for v in diagonal if v != 0)
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            a, b = factors[i], factors[j]
            g = gcd(a, b)
            factors[i], factors[j] = g, a * b // g
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0, f"invariant factors {factors} are not a divisibility chain"
    return factors


def elementary_divisors(rows: List[Dict[int, int]]) -> Tuple[int, List[int]]:
    """
    Rank and nontrivial invariant factors of a sparse integer matrix.

    Args:
        rows: Each row as {column: nonzero entry}

    Returns:
        (rank, invariant factors > 1)
    """
    live: Dict[int, Dict[int, int]] = {i: dict(r) for i, r in enumerate(rows) if r}
    columns: Dict[int, Set[int]] = {}
    for i, row in live.items():
        for c in row:
            columns.setdefault(c, set()).add(i)

    rank = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(live, key=lambda k: len(live[k])):
            row = live.get(i)
            if row is None:
                continue
            units = [c for c, v in row.items() if v in (1, -1)]
            if not units:
                continue
            pivot_col = min(units, key=lambda c: len(columns[c]))
            pivot_val = row[pivot_col]
            for j in list(columns[pivot_col]):
                if j == i:
                    continue
                other = live[j]
                factor = other[pivot_col] * pivot_val
                for c, v in row.items():
                    updated = other.get(c, 0) - factor * v
                    if updated:
                        if c not in other:
                            columns[c].add(j)
                        other[c] = updated
                    elif c in other:
                        del other[c]
                        columns[c].discard(j)
                if not other:
                    del live[j]
            for c in row:
                columns[c].discard(i)
            del live[i]
            rank += 1
            progress = True

    if not live:
        return rank, []

    # Residual block without unit entries.
    cols = sorted({c for row in live.values() for c in row})
    index = {c: k for k, c in enumerate(cols)}
    block = np.zeros((len(live), len(cols)), dtype=object)
    for r, row in enumerate(live.values()):
        for c, v in row.items():
            block[r, index[c]] = v
    snf = smith_normal_form(Matrix(block.tolist()), domain=ZZ)
    diagonal = [snf[k, k] for k in range(min(snf.shape))]
    factors = invariant_factors(diagonal)
    return rank + len(factors), [t for t in factors if t > 1]


def boundary_rows(faces_k: List[Face], index_lower: Dict[Face, int]) -> List[Dict[int, int]]:
    """Rows of ∂_k, one per k-face, indexed by the (k-1)-faces."""
    rows = []
    for face in faces_k:
        row = {}
        for i in range(len(face)):
            row[index_lower[face[:i] + face[i + 1:]]] = -1 if i % 2 else 1
        rows.append(row)
    return rows


# =============================================================================
# REDUCED HOMOLOGY
# =============================================================================

def _check_budget(d: SimplicialComplex, budget: Optional[int]) -> None:
    limit = face_budget(budget)
    count = len(d.faces())
    if count > limit:
        raise BudgetExceeded(count, limit)


def reduced_homology(d: SimplicialComplex, budget: Optional[int] = None) -> HomologyProfile:
    """
    Reduced integer homology of Δ.

    Args:
        d: Complex
        budget: Face budget override (defaults to $CDGOR_BUDGET or 50,000)

    Raises:
        BudgetExceeded: Δ has more faces than the budget
    """
    _check_budget(d, budget)
    return _homology(d)


def _homology(d: SimplicialComplex) -> HomologyProfile:
    if d.is_void:
        return HomologyProfile(-2, {}, {})
    by_dim = d.faces_by_dim()
    top = d.dim
    ranks: Dict[int, int] = {}
    torsion_of: Dict[int, List[int]] = {}
    for k in range(0, top + 1):
        index_lower = {f: i for i, f in enumerate(by_dim[k - 1])}
        ranks[k], torsion_of[k] = elementary_divisors(boundary_rows(by_dim[k], index_lower))

    betti: Dict[int, int] = {}
    torsion: Dict[int, Tuple[int, ...]] = {}
    for k in range(-1, top + 1):
        betti[k] = len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        torsion[k] = tuple(torsion_of.get(k + 1, []))
    return HomologyProfile(top, betti, torsion)


# =============================================================================
# SPHERE CERTIFICATION
# =============================================================================

class SphereReport(NamedTuple):
    """
    Outcome of the all-links homology-sphere test.

    Attributes:
        passed: True iff every link is a homology sphere of the right dimension
        profile: Homology of the whole complex
        links_checked: Number of faces whose link was examined
        failures: (face, link profile) pairs, sorted by face
    """
    passed: bool
    profile: HomologyProfile
    links_checked: int
    failures: List[Tuple[Face, HomologyProfile]]


def certify_sphere(d: SimplicialComplex, budget: Optional[int] = None,
                   stop_early: bool = False) -> SphereReport:
    """
    Check that every face link is a homology sphere of dimension dim - |F|.

    Args:
        d: Pure complex
        budget: Face budget override
        stop_early: Return at the first failing link

    Raises:
        NotPure: Facets of different sizes
        BudgetExceeded: Too many faces
    """
    if not d.is_pure():
        raise NotPure(f"facet sizes {sorted({len(f) for f in d.facets})}")
    _check_budget(d, budget)

    profile = _homology(d)
    if not profile.is_sphere(d.dim):
        return SphereReport(False, profile, 1, [((), profile)])

    incident: Dict[int, Set[int]] = {}
    for idx, facet in enumerate(d.facets):
        for v in facet:
            incident.setdefault(v, set()).add(idx)

    failures: List[Tuple[Face, HomologyProfile]] = []
    checked = 1
    for face in sorted(d.faces(), key=lambda f: (len(f), f)):
        if not face:
            continue
        checked += 1
        expected = d.dim - len(face)
        star = set.intersection(*(incident[v] for v in face))
        lk = SimplicialComplex(tuple(v for v in d.facets[idx] if v not in face) for idx in star)
        if expected == -1:
            ok = lk.facets == ((),)
        elif expected == 0:
            # A 0-dimensional link is a homology 0-sphere iff it is two points.
            ok = lk.dim == 0 and len(lk.facets) == 2
        else:
            ok = _homology(lk).is_sphere(expected)
        if not ok:
            failures.append((face, _homology(lk)))
            if stop_early:
                break
    return SphereReport(not failures, profile, checked, failures)


def is_homology_sphere(d: SimplicialComplex, budget: Optional[int] = None) -> bool:
    """True iff Δ is a homology sphere over ℤ (all links, ∅ included)."""
    if d.is_void:
        return False
    return certify_sphere(d, budget, stop_early=True).passed


def is_gorenstein_star(p: GradedPoset, budget: Optional[int] = None) -> bool:
    """P is Gorenstein* iff its order complex is a homology sphere."""
    return is_homology_sphere(order_complex(p), budget)


# =============================================================================
# VERIFICATION / TESTING
# =============================================================================

def verify_homology() -> None:
    """
    Verify homology on spheres and a non-sphere.

    Checks:
    1. The 4-cycle has the homology of S¹
    2. The octahedron is a homology 2-sphere
    3. Two disjoint triangles are not a sphere
    4. A non-unit block is reduced by the Smith normal form
    """
    from .simplicial import cycle_complex, simplicial_join, zero_sphere

    print("Verifying homology module...")

    square = reduced_homology(cycle_complex(4))
    assert square.is_sphere(1), f"4-cycle: {square.describe()}"
    print(f"✓ 4-cycle: {square.describe()}")

    octahedron = simplicial_join(simplicial_join(zero_sphere(0, 1), zero_sphere(2, 3)),
                                 zero_sphere(4, 5))
    assert is_homology_sphere(octahedron)
    print("✓ Octahedron is a homology 2-sphere")

    two_circles = SimplicialComplex([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_homology_sphere(two_circles)
    print("✓ Two disjoint circles rejected")

    rank, torsion = elementary_divisors([{0: 2, 1: 4}, {0: 6, 1: 8}])
    assert (rank, torsion) == (2, [2, 4]), f"got rank {rank}, torsion {torsion}"
    print("✓ Smith normal form of [[2,4],[6,8]] is diag(2,4)")

    print("\n✓ Homology verification complete!")


if __name__ == "__main__":
    verify_homology()
