"""
simplicial.py - Simplicial Complexes, Order Complexes and f/h/γ-Vectors

Mathematical Foundation:
========================
A simplicial complex Δ on a vertex set V is stored by its facets
(inclusion-maximal faces). Two degenerate complexes are kept apart:

    void complex    no faces at all                  facets = ()
    empty complex   {∅}, the (-1)-sphere             facets = ((),)

For Δ of dimension n-1 with f-vector (1, f_0, ..., f_{n-1}):

    Σ h_i x^(n-i) = Σ f_(i-1) (x-1)^(n-i)                (h-vector)
    Σ h_i x^i     = Σ γ_i x^i (1+x)^(n-2i)               (γ-vector, h palindromic)

The order complex O(P) of a graded poset has the chains of P - {0̂, 1̂}
as faces; stellar edge subdivision and edge contraction on O(P) mirror
unzipping and zipping on P.
"""

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_node_match
from sympy import Poly, symbols

from .config import DEFAULT_ISO_BUDGET
from .errors import HNotSymmetric, NotAFace, NotAnEdge, TooLarge, VertexCollision
from .poset import GradedPoset

# Type aliases for clarity
Vertex = int
Face = Tuple[Vertex, ...]     # always sorted

_X = symbols("x")


def _face(vertices: Iterable[Vertex]) -> Face:
    return tuple(sorted(set(vertices)))


# =============================================================================
# SIMPLICIAL COMPLEX
# =============================================================================

class SimplicialComplex:
    """
    Immutable simplicial complex in facet representation.

    Attributes:
        vertices: Sorted tuple of vertex ids
        facets: Sorted tuple of sorted facet tuples
    """

    __slots__ = ("vertices", "facets", "_faces")

    def __init__(self, facets: Iterable[Iterable[Vertex]]):
        maximal = _maximal_faces(_face(f) for f in facets)
        self.facets: Tuple[Face, ...] = tuple(sorted(maximal))
        self.vertices: Tuple[Vertex, ...] = tuple(sorted({v for f in self.facets for v in f}))
        self._faces: Optional[FrozenSet[Face]] = None

    @classmethod
    def void(cls) -> "SimplicialComplex":
        return cls([])

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        """The complex {∅}."""
        return cls([()])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return (f"SimplicialComplex(dim={self.dim}, |V|={len(self.vertices)}, "
                f"facets={len(self.facets)})")

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """Dimension; -1 for {∅} and -2 for the void complex."""
        if self.is_void:
            return -2
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self) -> FrozenSet[Face]:
        """Every face, ∅ included (none for the void complex)."""
        if self._faces is None:
            acc: Set[Face] = set()
            for facet in self.facets:
                for size in range(len(facet) + 1):
                    acc.update(combinations(facet, size))
            self._faces = frozenset(acc)
        return self._faces

    def faces_by_dim(self) -> Dict[int, List[Face]]:
        """Faces grouped by dimension (-1 holds ∅), each list sorted."""
        grouped: Dict[int, List[Face]] = {}
        for f in self.faces():
            grouped.setdefault(len(f) - 1, []).append(f)
        for faces in grouped.values():
            faces.sort()
        return grouped

    def has_face(self, face: Iterable[Vertex]) -> bool:
        return _face(face) in self.faces()

    def edges(self) -> List[Face]:
        return sorted(f for f in self.faces() if len(f) == 2)

    def graph(self) -> nx.Graph:
        """1-skeleton as an undirected graph on all vertices."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges())
        return g

    def relabel(self, offset: int) -> "SimplicialComplex":
        return SimplicialComplex(tuple(v + offset for v in f) for f in self.facets)

    def to_description(self) -> Dict:
        return {
            "vertices": list(self.vertices),
            "facets": [list(f) for f in self.facets],
        }


def _maximal_faces(faces: Iterable[Face]) -> List[Face]:
    """Drop duplicates and faces contained in another face."""
    unique = sorted(set(faces), key=lambda f: (-len(f), f))
    kept: List[Face] = []
    by_vertex: Dict[Vertex, List[FrozenSet[Vertex]]] = {}
    for f in unique:
        fs = frozenset(f)
        if f:
            candidates = by_vertex.get(f[0], [])
        else:
            candidates = [frozenset(k) for k in kept]
        if any(fs <= other for other in candidates):
            continue
        kept.append(f)
        for v in f:
            by_vertex.setdefault(v, []).append(fs)
    return kept


# =============================================================================
# CONSTRUCTIONS
# =============================================================================

def order_complex(p: GradedPoset) -> SimplicialComplex:
    """
    Order complex: faces are chains of P - {0̂, 1̂}, facets are maximal chains.

    Each maximal chain 0̂ ⋖ x_1 ⋖ ... ⋖ x_n ⋖ 1̂ gives the facet {x_1..x_n}.
    """
    chains: List[Face] = []
    stack: List[Tuple[int, Tuple[int, ...]]] = [(p.bottom, ())]
    while stack:
        node, path = stack.pop()
        for nxt in p.upper_covers(node):
            if nxt == p.top:
                chains.append(path)
            else:
                stack.append((nxt, path + (nxt,)))
    return SimplicialComplex(chains)


def link(d: SimplicialComplex, f: Iterable[Vertex]) -> SimplicialComplex:
    """
    lk(F) = {G : G ∩ F = ∅, G ∪ F ∈ Δ}.

    Raises:
        NotAFace: F is not a face of Δ
    """
    face = frozenset(f)
    if not d.has_face(face):
        raise NotAFace(f"{sorted(face)} is not a face")
    return SimplicialComplex(tuple(v for v in facet if v not in face)
                             for facet in d.facets if face <= set(facet))


def edge_subdivision(d: SimplicialComplex, e: Sequence[Vertex],
                     v: Vertex) -> SimplicialComplex:
    """
    Stellar subdivision of the edge {i, j} by the new vertex v.

    Every facet G ⊇ {i, j} is replaced by G - {i} + {v} and G - {j} + {v};
    all other facets are kept.

    Raises:
        NotAnEdge: {i, j} is not an edge of Δ
        VertexCollision: v is already a vertex
    """
    i, j = _edge(d, e)
    if v in d.vertices:
        raise VertexCollision(f"vertex {v} already exists")
    facets: List[Face] = []
    for g in d.facets:
        if i in g and j in g:
            facets.append(_face([w for w in g if w != i] + [v]))
            facets.append(_face([w for w in g if w != j] + [v]))
        else:
            facets.append(g)
    return SimplicialComplex(facets)


def edge_contraction(d: SimplicialComplex, i: Vertex, j: Vertex) -> SimplicialComplex:
    """
    Identify vertex i with vertex j.

    Faces F ∌ i are kept, F ∋ i becomes (F - {i}) ∪ {j}; the Link Condition
    is not required here.

    Raises:
        NotAFace: i or j is not a vertex
    """
    for w in (i, j):
        if w not in d.vertices:
            raise NotAFace(f"{w} is not a vertex")
    return SimplicialComplex(
        _face(j if w == i else w for w in g) for g in d.facets)


def link_condition(d: SimplicialComplex, i: Vertex, j: Vertex) -> bool:
    """
    True iff lk({i}) ∩ lk({j}) = lk({i, j}) as sets of faces.

    Raises:
        NotAnEdge: {i, j} is not an edge of Δ
    """
    i, j = _edge(d, (i, j))
    common = link(d, (i,)).faces() & link(d, (j,)).faces()
    return common == link(d, (i, j)).faces()


def simplicial_join(d1: SimplicialComplex, d2: SimplicialComplex) -> SimplicialComplex:
    """
    Join Δ1 * Δ2: facets are unions of one facet from each side.

    If the vertex sets overlap, Δ2 is shifted past max(Δ1).
    """
    if set(d1.vertices) & set(d2.vertices):
        d2 = d2.relabel(max(d1.vertices) + 1 - min(d2.vertices))
    return SimplicialComplex(f1 + f2 for f1 in d1.facets for f2 in d2.facets)


def is_flag(d: SimplicialComplex) -> bool:
    """True iff every clique of the 1-skeleton is a face."""
    faces = d.faces()
    return all(_face(c) in faces for c in nx.find_cliques(d.graph()))


def _edge(d: SimplicialComplex, e: Sequence[Vertex]) -> Tuple[Vertex, Vertex]:
    if len(set(e)) != 2 or not d.has_face(e):
        raise NotAnEdge(f"{tuple(e)} is not an edge")
    i, j = e
    return i, j


def is_isomorphic_complex(d1: SimplicialComplex, d2: SimplicialComplex,
                          budget: int = DEFAULT_ISO_BUDGET) -> bool:
    """
    Combinatorial isomorphism via the vertex-facet incidence graph.

    Raises:
        TooLarge: Either incidence graph has more than `budget` nodes
    """
    sizes = (len(d1.vertices) + len(d1.facets), len(d2.vertices) + len(d2.facets))
    if max(sizes) > budget:
        raise TooLarge(f"complex isomorphism limited to {budget} vertices+facets, got {sizes}")
    if sizes[0] != sizes[1] or f_vector(d1) != f_vector(d2):
        return False
    return nx.is_isomorphic(_incidence_graph(d1), _incidence_graph(d2),
                            node_match=categorical_node_match("kind", None))


def _incidence_graph(d: SimplicialComplex) -> nx.Graph:
    g = nx.Graph()
    for v in d.vertices:
        g.add_node(("v", v), kind="vertex")
    for idx, facet in enumerate(d.facets):
        g.add_node(("f", idx), kind="facet")
        g.add_edges_from((("f", idx), ("v", v)) for v in facet)
    return g


# =============================================================================
# f, h AND γ VECTORS
# =============================================================================

def f_vector(d: SimplicialComplex) -> Tuple[int, ...]:
    """(f_-1, f_0, ..., f_dim) with f_-1 = 1; (0,) for the void complex."""
    if d.is_void:
        return (0,)
    counts = [0] * (d.dim + 2)
    for f in d.faces():
        counts[len(f)] += 1
    return tuple(counts)


def h_from_f(f: Sequence[int]) -> Tuple[int, ...]:
    """h-vector of a complex whose f-vector (f_-1 first) is given."""
    n = len(f) - 1
    poly = Poly(sum(f[i] * (_X - 1) ** (n - i) for i in range(n + 1)), _X)
    return _coefficients_high_first(poly, n)


def f_from_h(h: Sequence[int]) -> Tuple[int, ...]:
    """Inverse of h_from_f: Σ f_(i-1) x^(n-i) = Σ h_i (x+1)^(n-i)."""
    n = len(h) - 1
    poly = Poly(sum(h[i] * (_X + 1) ** (n - i) for i in range(n + 1)), _X)
    return _coefficients_high_first(poly, n)


def h_vector(d: SimplicialComplex) -> Tuple[int, ...]:
    return h_from_f(f_vector(d))


def gamma_from_h(h: Sequence[int]) -> Tuple[int, ...]:
    """
    γ-vector of a palindromic h-vector.

    Peels γ_i x^i (1+x)^(n-2i) off the low end of h(x) for i = 0..⌊n/2⌋.

    Raises:
        HNotSymmetric: h_i != h_(n-i) for some i
    """
    n = len(h) - 1
    if tuple(h) != tuple(reversed(h)):
        raise HNotSymmetric(f"h = {tuple(h)} is not palindromic")
    remainder = Poly(sum(c * _X ** i for i, c in enumerate(h)), _X)
    gamma: List[int] = []
    for i in range(n // 2 + 1):
        g = int(remainder.coeff_monomial(_X ** i))
        gamma.append(g)
        remainder = remainder - Poly(g * _X ** i * (1 + _X) ** (n - 2 * i), _X)
    assert remainder.is_zero, f"γ peeling left remainder {remainder.as_expr()}"
    return tuple(gamma)


def h_from_gamma(gamma: Sequence[int], n: int) -> Tuple[int, ...]:
    """h-vector of length n+1 from Σ γ_i x^i (1+x)^(n-2i)."""
    poly = Poly(sum(g * _X ** i * (1 + _X) ** (n - 2 * i) for i, g in enumerate(gamma)), _X)
    return _coefficients_low_first(poly, n)


def gamma_vector(d: SimplicialComplex) -> Tuple[int, ...]:
    return gamma_from_h(h_vector(d))


def reduced_euler_characteristic(d: SimplicialComplex) -> int:
    """Σ_{i ≥ -1} (-1)^i f_i."""
    return sum((-1) ** (k - 1) * fk for k, fk in enumerate(f_vector(d)))


def _coefficients_high_first(poly: Poly, n: int) -> Tuple[int, ...]:
    # Coefficient of x^(n-i) is entry i.
    return tuple(int(poly.coeff_monomial(_X ** (n - i))) for i in range(n + 1))


def _coefficients_low_first(poly: Poly, n: int) -> Tuple[int, ...]:
    return tuple(int(poly.coeff_monomial(_X ** i)) for i in range(n + 1))


# =============================================================================
# STANDARD COMPLEXES
# =============================================================================

def cycle_complex(m: int, start: int = 0) -> SimplicialComplex:
    """The m-cycle on vertices start .. start+m-1 (m >= 3)."""
    if m < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {m}")
    return SimplicialComplex((start + i, start + (i + 1) % m) for i in range(m))


def zero_sphere(u: int, v: int) -> SimplicialComplex:
    return SimplicialComplex([(u,), (v,)])


# =============================================================================
# VERIFICATION / TESTING
# =============================================================================

def verify_simplicial() -> None:
    """
    Verify the simplicial module on the square and the octahedron.

    Checks:
    1. The 4-cycle has f = (1,4,4), h = (1,2,1), γ = (1,0)
    2. Subdividing one edge of the 4-cycle gives the 5-cycle
    3. The octahedron is flag and its edges satisfy the Link Condition
    4. The hollow triangle is not flag
    """
    print("Verifying simplicial module...")

    square = cycle_complex(4)
    assert f_vector(square) == (1, 4, 4), f"f(square) = {f_vector(square)}"
    assert h_vector(square) == (1, 2, 1), f"h(square) = {h_vector(square)}"
    assert gamma_vector(square) == (1, 0), f"γ(square) = {gamma_vector(square)}"
    print("✓ 4-cycle: f = (1,4,4), h = (1,2,1), γ = (1,0)")

    pentagon = edge_subdivision(square, (0, 1), 10)
    assert is_isomorphic_complex(pentagon, cycle_complex(5))
    print("✓ Edge subdivision of the 4-cycle is a 5-cycle")

    octahedron = simplicial_join(simplicial_join(zero_sphere(0, 1), zero_sphere(2, 3)),
                                 zero_sphere(4, 5))
    assert is_flag(octahedron)
    assert all(link_condition(octahedron, *e) for e in octahedron.edges())
    print(f"✓ Octahedron: {len(octahedron.facets)} facets, flag, Link Condition holds")

    hollow = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    assert not is_flag(hollow)
    print("✓ Hollow triangle is not flag")

    print("\n✓ Simplicial verification complete!")


if __name__ == "__main__":
    verify_simplicial()
