"""Tests for integer homology and sphere certification."""

import pytest

from cdgor.config import BUDGET_ENV_VAR, DEFAULT_FACE_BUDGET, face_budget
from cdgor.errors import BudgetExceeded, NotPure
from cdgor.homology import (
    certify_sphere,
    elementary_divisors,
    invariant_factors,
    is_gorenstein_star,
    is_homology_sphere,
    reduced_homology,
)
from cdgor.poset import join
from cdgor.realize import build_boolean2, build_cycle_poset
from cdgor.simplicial import (
    SimplicialComplex,
    cycle_complex,
    order_complex,
    reduced_euler_characteristic,
)


def real_projective_plane():
    """Six-vertex triangulation of RP²."""
    return SimplicialComplex([
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5),
    ])


class TestSmithNormalForm:

    def test_invariant_factors_chain(self):
        assert invariant_factors([4, 6]) == [2, 12]
        assert invariant_factors([0, -3, 1]) == [1, 3]

    def test_non_unit_block(self):
        assert elementary_divisors([{0: 2, 1: 4}, {0: 6, 1: 8}]) == (2, [2, 4])

    def test_unit_pivots(self):
        assert elementary_divisors([{0: 1, 1: -1}, {1: 1, 2: -1}, {0: 1, 2: -1}]) == (2, [])

    def test_empty(self):
        assert elementary_divisors([]) == (0, [])


class TestReducedHomology:

    def test_circle(self):
        h = reduced_homology(cycle_complex(4))
        assert h.betti == {-1: 0, 0: 0, 1: 1}
        assert not any(h.torsion.values())

    def test_octahedron(self, octahedron):
        h = reduced_homology(octahedron)
        assert h.betti[2] == 1 and h.is_sphere(2)

    def test_triangle_join_is_three_sphere(self, blocks):
        d = order_complex(blocks["C3*C3"])
        assert len(d.facets) == 36
        assert reduced_homology(d).is_sphere(3)

    def test_two_circles(self):
        d = SimplicialComplex([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        h = reduced_homology(d)
        assert h.betti[0] == 1 and h.betti[1] == 2

    def test_projective_plane_torsion(self):
        h = reduced_homology(real_projective_plane())
        assert h.torsion[1] == (2,)
        assert h.betti == {-1: 0, 0: 0, 1: 0, 2: 0}

    def test_empty_face_complex(self):
        h = reduced_homology(SimplicialComplex.empty())
        assert h.betti == {-1: 1}
        assert h.is_sphere(-1)

    def test_void_complex(self):
        h = reduced_homology(SimplicialComplex.void())
        assert h.dim == -2 and not h.is_sphere(-1)

    def test_euler_characteristic_agrees(self, octahedron):
        for d in [octahedron, cycle_complex(7), real_projective_plane()]:
            assert reduced_homology(d).euler_characteristic() == reduced_euler_characteristic(d)

    def test_describe(self):
        assert reduced_homology(cycle_complex(4)).describe() == "H-1=0, H0=0, H1=Z"


class TestSpheres:

    def test_octahedron(self, octahedron):
        assert is_homology_sphere(octahedron)

    def test_two_circles(self):
        d = SimplicialComplex([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert not is_homology_sphere(d)

    def test_projective_plane(self):
        assert not is_homology_sphere(real_projective_plane())

    def test_pendant_edge_fails_at_its_leaf(self):
        # A square with a whisker has the homology of S¹ but a one-point link.
        d = SimplicialComplex(list(cycle_complex(4).facets) + [(0, 9)])
        report = certify_sphere(d)
        assert report.profile.is_sphere(1)
        assert not report.passed
        assert (9,) in [face for face, _ in report.failures]

    def test_report_lists_failures(self):
        d = SimplicialComplex([(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 2, 3), (1, 2, 4)])
        with pytest.raises(NotPure):
            certify_sphere(SimplicialComplex([(0, 1, 2), (3, 4)]))
        report = certify_sphere(d)
        assert report.profile.is_sphere(2)
        assert not report.passed
        assert (1, 2) in [face for face, _ in report.failures]

    def test_void_is_not_a_sphere(self):
        assert not is_homology_sphere(SimplicialComplex.void())

    def test_empty_face_complex_is_minus_one_sphere(self):
        assert is_homology_sphere(SimplicialComplex.empty())

    def test_budget(self, octahedron):
        with pytest.raises(BudgetExceeded):
            certify_sphere(octahedron, budget=10)


class TestGorensteinStar:

    def test_boolean(self):
        assert is_gorenstein_star(build_boolean2())

    @pytest.mark.parametrize("k", range(3, 7))
    def test_polygons(self, k):
        assert is_gorenstein_star(build_cycle_poset(k))

    def test_chain(self, chain3):
        assert not is_gorenstein_star(chain3)

    def test_joins(self):
        assert is_gorenstein_star(join(build_cycle_poset(3), build_cycle_poset(4)))


class TestBudgetConfig:

    def test_default(self, monkeypatch):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        assert face_budget() == DEFAULT_FACE_BUDGET

    def test_environment(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "123")
        assert face_budget() == 123
        assert face_budget(7) == 7

    def test_bad_environment(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "lots")
        with pytest.raises(ValueError):
            face_budget()

    def test_environment_reaches_homology(self, monkeypatch, octahedron):
        monkeypatch.setenv(BUDGET_ENV_VAR, "5")
        with pytest.raises(BudgetExceeded):
            reduced_homology(octahedron)
