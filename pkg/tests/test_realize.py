"""Tests for feasibility predicates and the explicit constructions."""

import random

import pytest

from cdgor.errors import DegenerateCycle, InfeasibleTarget, KTooSmall
from cdgor.flagvec import Rank5Coeffs, cd_index, d_vector, parse_cd
from cdgor.homology import is_gorenstein_star, is_homology_sphere
from cdgor.poset import is_isomorphic, is_thin, join
from cdgor.realize import (
    Verdict,
    build_boolean2,
    build_cycle_poset,
    build_flag_gamma4,
    cycle_block,
    feasible_gamma4,
    feasible_rank5_cd,
    feasible_rank5_d,
    feasible_rank6_d,
    find_case_witness,
    flag_gamma4_construction,
    gamma4_route,
    lambda3_lower_bound,
    product_witness,
    rank5_cd_construction,
    rank6_d_construction,
    rank6_route,
    rank6_split,
    realize_rank5_cd,
    realize_rank5_d,
    realize_rank6_d,
)
from cdgor.simplicial import (
    gamma_vector,
    h_vector,
    is_flag,
    is_isomorphic_complex,
    order_complex,
    simplicial_join,
    zero_sphere,
)


def cross_polytope(n):
    """Join of n zero-spheres on vertices 0..2n-1."""
    d = zero_sphere(0, 1)
    for i in range(1, n):
        d = simplicial_join(d, zero_sphere(2 * i, 2 * i + 1))
    return d


class TestBlocks:

    def test_cycle_too_small(self):
        with pytest.raises(KTooSmall):
            build_cycle_poset(2)

    def test_two_gon_stand_in(self):
        name, p = cycle_block(2)
        assert name == "B2*B2"
        assert cd_index(p) == parse_cd("c^2")

    def test_degenerate_cycle(self):
        with pytest.raises(DegenerateCycle):
            cycle_block(1)

    def test_boolean_ids(self):
        b = build_boolean2()
        assert (b.bottom, b.top) == (0, 3)


class TestRank5CdFeasibility:

    def test_case_one(self):
        assert feasible_rank5_cd(Rank5Coeffs(1, 0, 1, 1)).verdict is Verdict.CASE_I

    def test_case_two_witness(self):
        feas = feasible_rank5_cd(Rank5Coeffs(1, 1, 1, 1))
        assert feas.verdict is Verdict.CASE_II
        assert feas.witness.b == (0, 0, 1)
        assert feas.witness.c == (0, 1, 0)

    def test_case_three(self):
        assert feasible_rank5_cd(Rank5Coeffs(2, 3, 2, 4)).verdict is Verdict.CASE_III

    def test_infeasible(self):
        feas = feasible_rank5_cd(Rank5Coeffs(2, 0, 2, 3))
        assert feas.verdict is Verdict.INFEASIBLE
        assert not feas.feasible

    def test_too_many_d_squared(self):
        assert not feasible_rank5_cd(Rank5Coeffs(1, 2, 1, 2)).feasible

    def test_negative(self):
        assert not feasible_rank5_cd(Rank5Coeffs(-1, 0, 0, 0)).feasible

    def test_witness_sum_too_large(self):
        assert find_case_witness(1, 1, 2) is None
        assert find_case_witness(1, 1, -1) is None

    def test_construction_raises(self):
        with pytest.raises(InfeasibleTarget):
            realize_rank5_cd(Rank5Coeffs(2, 0, 2, 3))


class TestRank5CdRealization:

    @pytest.mark.parametrize("alpha, expected", [
        ((0, 0, 0, 0), "c^4"),
        ((1, 0, 1, 1), "c^4 + dc^2 + c^2d + d^2"),
        ((0, 2, 0, 0), "c^4 + 2*cdc"),
    ])
    def test_small_targets(self, alpha, expected):
        assert cd_index(realize_rank5_cd(Rank5Coeffs(*alpha))) == parse_cd(expected)

    def test_triangle_join(self, blocks):
        assert is_isomorphic(realize_rank5_cd(Rank5Coeffs(1, 0, 1, 1)), blocks["C3*C3"])

    @pytest.mark.parametrize("alpha", [
        (1, 1, 1, 1), (2, 1, 1, 0), (1, 1, 2, 2), (0, 1, 3, 0),
        (2, 2, 2, 1), (2, 2, 2, 4), (3, 3, 2, 5), (0, 4, 2, 0), (2, 2, 0, 0),
    ])
    def test_hits_target(self, alpha):
        t = Rank5Coeffs(*alpha)
        p = realize_rank5_cd(t)
        assert is_thin(p)
        assert cd_index(p) == t.to_cd()

    def test_case_two_trace(self):
        c = rank5_cd_construction(Rank5Coeffs(1, 1, 1, 1))
        assert c.trace[0] == {"step": "join", "blocks": ["B2", "C3", "B2"]}
        unzips = [(s["upper"], s["lower"], s["times"]) for s in c.trace if s["step"] == "unzip"]
        assert unzips == [("tau3", "rho", 1), ("pi", "sigma2", 1)]
        assert c.target["verdict"] == "CaseII"
        assert c.target["witness"] == [0, 0, 1, 0, 1, 0]

    def test_case_three_labels(self):
        c = rank5_cd_construction(Rank5Coeffs(2, 3, 2, 4))
        assert {"rho", "pi", "tau1", "tau4", "sigma1", "sigma4"} <= set(c.labels)
        assert c.target == {"alpha": [2, 3, 2, 4], "verdict": "CaseIII"}

    def test_gorenstein(self):
        assert is_gorenstein_star(realize_rank5_cd(Rank5Coeffs(1, 1, 1, 1)))
        assert is_gorenstein_star(realize_rank5_cd(Rank5Coeffs(0, 2, 1, 0)))


class TestRank5D:

    def test_predicate(self):
        assert feasible_rank5_d(4, 4)
        assert not feasible_rank5_d(3, 3)
        assert feasible_rank5_d(0, 0)
        assert not feasible_rank5_d(-1, 0)

    def test_product_witness(self):
        assert product_witness(4, 4) == (2, 2)
        assert product_witness(4, 2) is None
        assert product_witness(0, 0) == (0, 0)

    @pytest.mark.parametrize("x, y", [(4, 4), (4, 2), (0, 0), (5, 6), (6, 5), (3, 1)])
    def test_hits_target(self, x, y):
        p = realize_rank5_d(x, y)
        assert is_thin(p)
        assert d_vector(cd_index(p)) == (1, x, y)

    def test_infeasible(self):
        with pytest.raises(InfeasibleTarget):
            realize_rank5_d(3, 3)

    def test_order_complex_gamma_doubles_d(self):
        assert gamma_vector(order_complex(realize_rank5_d(4, 2))) == (1, 8, 8)


class TestRank6D:

    def test_predicate(self):
        assert feasible_rank6_d(4, 4)
        assert not feasible_rank6_d(3, 3)
        assert feasible_rank6_d(5, 6)

    @pytest.mark.parametrize("x, y", [(4, 4), (5, 6), (3, 1)])
    def test_join_path(self, x, y):
        c = rank6_d_construction(x, y)
        assert "alpha" in c.target
        assert c.trace[-1] == {"step": "join", "blocks": ["P", "B2"]}
        assert d_vector(cd_index(c.poset)) == (1, x, y)

    @pytest.mark.parametrize("x, y, a, r", [(5, 5, 2, 1), (6, 7, 2, 1)])
    def test_unzip_path(self, x, y, a, r):
        assert not feasible_rank5_d(x, y)
        c = rank6_d_construction(x, y)
        assert (c.target["a"], c.target["r"]) == (a, r)
        assert is_thin(c.poset)
        assert d_vector(cd_index(c.poset)) == (1, x, y)

    def test_direct_rank6_is_not_a_rank5_join(self):
        assert not feasible_rank5_d(5, 5)
        p = realize_rank6_d(5, 5)
        assert p.rank == 6
        phi = cd_index(p)
        assert phi.is_nonnegative()
        assert phi.leading_coefficient() == 1

    def test_order_complex_gamma_doubles_d(self):
        assert gamma_vector(order_complex(realize_rank6_d(5, 5))) == (1, 10, 20)

    def test_infeasible(self):
        with pytest.raises(InfeasibleTarget):
            realize_rank6_d(3, 3)

    def test_join_with_boolean_keeps_d(self):
        p = realize_rank5_d(4, 4)
        assert d_vector(cd_index(join(p, build_boolean2()))) == (1, 4, 4)

    def test_split(self):
        assert rank6_split(5, 5) == (2, 3, 1)
        assert rank6_split(4, 4) == (2, 2, 0)
        assert rank6_split(0, 0) is None

    def test_routes(self):
        assert rank6_route(5, 5) == {"path": "unzip", "a": 2, "b": 3, "r": 1}
        assert rank6_route(4, 4) == {"path": "join", "alpha": [2, 0, 2, 4]}
        with pytest.raises(InfeasibleTarget):
            rank6_route(3, 3)


class TestFlagGamma4:

    def test_predicates(self):
        assert feasible_gamma4(4, 4)
        assert not feasible_gamma4(3, 3)
        assert lambda3_lower_bound(4, 4)
        assert not lambda3_lower_bound(3, 3)

    def test_direct_path(self):
        c = flag_gamma4_construction(4, 4)
        assert c.target == {"gamma": [1, 4, 4], "a": 2, "b": 2, "r": 0, "path": "direct"}
        assert len(c.complex.vertices) == 6 + 2 + 5 + 1
        assert is_flag(c.complex)
        assert gamma_vector(c.complex) == (1, 4, 4)

    def test_zero_is_cross_polytope(self):
        d = build_flag_gamma4(0, 0)
        assert is_isomorphic_complex(d, cross_polytope(5))

    def test_suspension_path(self):
        c = flag_gamma4_construction(3, 1)
        assert c.target["path"] == "suspension"
        assert [s["step"] for s in c.trace] == ["join", "subdivide", "suspend"]
        assert gamma_vector(c.complex) == (1, 3, 1)

    def test_no_witness_falls_back_to_direct(self):
        # 4y <= (x-1)² holds for (7, 7), but 7 = ab has no split with a + b <= 7.
        c = flag_gamma4_construction(7, 7)
        assert c.target == {"gamma": [1, 7, 7], "a": 5, "b": 2, "r": 3, "path": "direct",
                            "suspension": "no product witness"}
        assert is_flag(c.complex)
        assert gamma_vector(c.complex) == (1, 7, 7)

    def test_routes(self):
        assert gamma4_route(3, 1) == {"path": "suspension", "a": 1, "b": 1}
        assert gamma4_route(4, 4) == {"path": "direct", "a": 2, "b": 2, "r": 0}
        with pytest.raises(InfeasibleTarget):
            gamma4_route(3, 3)

    @pytest.mark.parametrize("x, y", [(5, 6), (5, 5), (5, 4), (6, 7), (2, 1), (3, 0), (1, 0)])
    def test_hits_target(self, x, y):
        d = build_flag_gamma4(x, y)
        assert is_flag(d)
        assert d.dim == 4
        assert gamma_vector(d) == (1, x, y)

    def test_h_is_symmetric(self):
        h = h_vector(build_flag_gamma4(5, 6))
        assert h == tuple(reversed(h))

    def test_infeasible(self):
        with pytest.raises(InfeasibleTarget):
            build_flag_gamma4(3, 3)
        with pytest.raises(InfeasibleTarget):
            build_flag_gamma4(-1, 0)

    def test_sphere(self):
        assert is_homology_sphere(build_flag_gamma4(1, 0))


@pytest.mark.slow
class TestSmallGrids:

    def test_rank5_cd_box(self):
        for a1 in range(3):
            for a2 in range(4):
                for a3 in range(3):
                    for a13 in range(a1 * a3 + 2):
                        t = Rank5Coeffs(a1, a2, a3, a13)
                        if feasible_rank5_cd(t).feasible:
                            assert cd_index(realize_rank5_cd(t)) == t.to_cd(), t

    def test_rank6_d_box(self):
        for x in range(7):
            for y in range(x * x // 4 + 1):
                assert d_vector(cd_index(realize_rank6_d(x, y))) == (1, x, y)

    def test_gamma4_box(self):
        for x in range(6):
            for y in range(x * x // 4 + 1):
                d = build_flag_gamma4(x, y)
                assert is_flag(d) and gamma_vector(d) == (1, x, y)

    def test_gorenstein_samples(self):
        for t in [(1, 0, 1, 1), (1, 1, 1, 0), (0, 2, 0, 0), (1, 2, 1, 1)]:
            assert is_gorenstein_star(realize_rank5_cd(Rank5Coeffs(*t))), t
        assert is_homology_sphere(build_flag_gamma4(2, 1))

    def test_gorenstein_random_alpha_up_to_four(self):
        rng = random.Random(20240517)
        targets = set()
        while len(targets) < 10:
            a1, a2, a3 = rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 4)
            t = Rank5Coeffs(a1, a2, a3, rng.randint(0, a1 * a3))
            if feasible_rank5_cd(t).feasible:
                targets.add(t)
        for t in sorted(targets):
            assert is_gorenstein_star(rank5_cd_construction(t).poset, budget=2_000_000), t
