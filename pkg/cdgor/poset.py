"""
poset.py - Graded Posets, Joins, Zipping and Unzipping

Mathematical Foundation:
========================
A graded poset P of rank n+1 has a unique minimum 0̂ (rank 0), a unique
maximum 1̂ (rank n+1), and every cover u ⋖ v satisfies r(v) = r(u) + 1.

We store P by its Hasse diagram (the cover relations) together with the
rank function. The full order x ≤ y is derived on demand as up-sets.

Operations:
- interval [x, y]        closed interval, ranks shifted so x has rank 0
- dual P*                order reversed, r'(x) = (n+1) - r(x)
- join P * Q             (P - 1̂) ⊔ (Q - 0̂), everything of P below Q
- unzip U(P; x, y)       split the cover y ⋖ x by adding x', y'
- zip Z(P; x, y, z)      merge y into z when x covers exactly y and z

Unzipping adds Φ[0̂,y]·d·Φ[x,1̂] to the cd-index; zipping removes it.
Zip undoes unzip exactly: Z(U(P; x, y); x', y', y) = P, ids included.

Element ids are plain integers. Fresh elements created by unzip get the
two next ids above the current maximum, so iterated schedules are fully
deterministic.
"""

from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Set, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_node_match

from .config import DEFAULT_ISO_BUDGET
from .errors import (
    Cyclic,
    MalformedFile,
    NoUniqueBottomTop,
    NotACover,
    NotComparable,
    NotGraded,
    ResultNotGraded,
    TooLarge,
    ZipPreconditionViolated,
)

# Type aliases for clarity
Element = int
Cover = Tuple[Element, Element]  # (lower, upper)


# =============================================================================
# GRADED POSET
# =============================================================================

class GradedPoset:
    """
    Immutable finite graded poset with 0̂ and 1̂.

    Attributes:
        elements: Frozen set of element ids
        rank_of: Rank function
        covers: Frozen set of (lower, upper) cover pairs
        bottom: The element 0̂
        top: The element 1̂
        n: Rank of 1̂ minus one
    """

    __slots__ = ("elements", "rank_of", "covers", "bottom", "top", "n",
                 "_up", "_down", "_above")

    def __init__(self, rank_of: Dict[Element, int], covers: Iterable[Cover],
                 bottom: Element, top: Element):
        # Callers go through validate(); this constructor trusts its input.
        self.rank_of: Dict[Element, int] = dict(rank_of)
        self.elements: FrozenSet[Element] = frozenset(self.rank_of)
        self.covers: FrozenSet[Cover] = frozenset(covers)
        self.bottom = bottom
        self.top = top
        self.n = self.rank_of[top] - 1

        up: Dict[Element, Set[Element]] = {e: set() for e in self.elements}
        down: Dict[Element, Set[Element]] = {e: set() for e in self.elements}
        for lower, upper in self.covers:
            up[lower].add(upper)
            down[upper].add(lower)
        self._up = {e: frozenset(s) for e, s in up.items()}
        self._down = {e: frozenset(s) for e, s in down.items()}
        self._above: Optional[Dict[Element, FrozenSet[Element]]] = None

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoset):
            return NotImplemented
        return (self.rank_of == other.rank_of and self.covers == other.covers
                and self.bottom == other.bottom and self.top == other.top)

    def __hash__(self) -> int:
        return hash((self.covers, self.bottom, self.top))

    def __repr__(self) -> str:
        return f"GradedPoset(|P|={len(self)}, rank={self.n + 1})"

    @property
    def rank(self) -> int:
        """Rank of the poset, i.e. r(1̂)."""
        return self.n + 1

    def upper_covers(self, x: Element) -> FrozenSet[Element]:
        return self._up[x]

    def lower_covers(self, x: Element) -> FrozenSet[Element]:
        return self._down[x]

    def covers_pair(self, upper: Element, lower: Element) -> bool:
        """True iff `upper` covers `lower`."""
        return (lower, upper) in self.covers

    def rank_layer(self, r: int) -> List[Element]:
        """Elements of rank r in increasing id order."""
        return sorted(e for e, rk in self.rank_of.items() if rk == r)

    def above(self, x: Element) -> FrozenSet[Element]:
        """Principal filter {y : y ≥ x}, including x."""
        if self._above is None:
            self._above = self._build_up_sets()
        return self._above[x]

    def below(self, y: Element) -> FrozenSet[Element]:
        """Principal ideal {x : x ≤ y}, including y."""
        return frozenset(x for x in self.elements if y in self.above(x))

    def leq(self, x: Element, y: Element) -> bool:
        return y in self.above(x)

    def _build_up_sets(self) -> Dict[Element, FrozenSet[Element]]:
        # Top-down over ranks: the filter of x is x plus the filters of its covers.
        result: Dict[Element, FrozenSet[Element]] = {}
        for e in sorted(self.elements, key=lambda v: -self.rank_of[v]):
            acc: Set[Element] = {e}
            for u in self._up[e]:
                acc |= result[u]
            result[e] = frozenset(acc)
        return result

    def interior(self) -> List[Element]:
        """Elements other than 0̂ and 1̂, sorted by (rank, id)."""
        return sorted((e for e in self.elements if e not in (self.bottom, self.top)),
                      key=lambda e: (self.rank_of[e], e))

    def interior_covers(self) -> List[Cover]:
        """Cover pairs with both ends interior, sorted."""
        ends = (self.bottom, self.top)
        return sorted((lo, hi) for lo, hi in self.covers
                      if lo not in ends and hi not in ends)

    def to_description(self) -> Dict:
        """Raw description accepted by validate()."""
        return {
            "elements": [{"id": e, "rank": self.rank_of[e]} for e in sorted(self.elements)],
            "covers": [[lo, hi] for lo, hi in sorted(self.covers)],
            "bottom": self.bottom,
            "top": self.top,
        }

    def hasse_graph(self) -> nx.DiGraph:
        """Hasse diagram as a DiGraph with a 'rank' node attribute."""
        g = nx.DiGraph()
        for e, r in self.rank_of.items():
            g.add_node(e, rank=r)
        g.add_edges_from(self.covers)
        return g


class PosetInterval(NamedTuple):
    """Closed interval [lower, upper] of an ambient poset."""
    lower: Element
    upper: Element
    poset: GradedPoset


class Unzipped(NamedTuple):
    """Result of unzip/unzip_k: the new poset and the last created pair."""
    poset: GradedPoset
    x_new: Element
    y_new: Element


# =============================================================================
# VALIDATION
# =============================================================================

def validate(description: Dict) -> GradedPoset:
    """
    Build a GradedPoset from a raw description, checking every invariant.

    The description has the poset file shape: `elements` (list of
    {id, rank}), `covers` (list of [lower, upper]), `bottom`, `top`.

    Args:
        description: Raw poset description

    Returns:
        Validated GradedPoset

    Raises:
        MalformedFile: Missing fields, duplicate ids, unknown ids in covers
        Cyclic: The covers contain a directed cycle
        NoUniqueBottomTop: Minimum/maximum missing, not unique, or mislabelled
        NotGraded: A cover skips a rank or r(0̂) != 0
    """
    try:
        raw_elements = description["elements"]
        raw_covers = description["covers"]
        bottom = description["bottom"]
        top = description["top"]
    except (KeyError, TypeError) as exc:
        raise MalformedFile(f"poset description lacks field {exc}")

    rank_of: Dict[Element, int] = {}
    for item in raw_elements:
        try:
            e, r = item["id"], item["rank"]
        except (KeyError, TypeError):
            raise MalformedFile(f"bad element entry {item!r}")
        if not isinstance(e, int) or not isinstance(r, int) or isinstance(e, bool):
            raise MalformedFile(f"element id and rank must be integers: {item!r}")
        if e in rank_of:
            raise MalformedFile(f"duplicate element id {e}")
        rank_of[e] = r

    covers: Set[Cover] = set()
    for pair in raw_covers:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise MalformedFile(f"bad cover entry {pair!r}")
        lo, hi = pair
        if lo not in rank_of or hi not in rank_of:
            raise MalformedFile(f"cover {pair!r} mentions an unknown element")
        covers.add((lo, hi))

    return make_poset(rank_of, covers, bottom, top)


def make_poset(rank_of: Dict[Element, int], covers: Iterable[Cover],
               bottom: Optional[Element] = None,
               top: Optional[Element] = None) -> GradedPoset:
    """
    Validate a rank function and cover set directly.

    When bottom/top are omitted they are taken to be the unique minimal
    and maximal elements.
    """
    covers = set(covers)
    graph = nx.DiGraph()
    graph.add_nodes_from(rank_of)
    graph.add_edges_from(covers)
    if not nx.is_directed_acyclic_graph(graph):
        raise Cyclic(f"cycle through {nx.find_cycle(graph)[0]}")

    minimal = sorted(e for e in rank_of if graph.in_degree(e) == 0)
    maximal = sorted(e for e in rank_of if graph.out_degree(e) == 0)
    if len(minimal) != 1 or len(maximal) != 1:
        raise NoUniqueBottomTop(f"minimal elements {minimal}, maximal elements {maximal}")
    if bottom is None:
        bottom = minimal[0]
    if top is None:
        top = maximal[0]
    if bottom != minimal[0] or top != maximal[0]:
        raise NoUniqueBottomTop(
            f"declared bottom/top ({bottom}, {top}) but extremes are ({minimal[0]}, {maximal[0]})")
    if bottom == top:
        raise NoUniqueBottomTop("bottom and top coincide")

    if rank_of[bottom] != 0:
        raise NotGraded(f"bottom has rank {rank_of[bottom]}, expected 0")
    for lo, hi in covers:
        if rank_of[hi] != rank_of[lo] + 1:
            raise NotGraded(
                f"cover {lo} < {hi} goes from rank {rank_of[lo]} to rank {rank_of[hi]}")

    return GradedPoset(rank_of, covers, bottom, top)


# =============================================================================
# INTERVALS, DUALS, JOINS
# =============================================================================

def interval(p: GradedPoset, x: Element, y: Element) -> PosetInterval:
    """
    Closed interval [x, y] as a poset with x at rank 0.

    Raises:
        NotComparable: x is not below y
    """
    if x not in p.elements or y not in p.elements or not p.leq(x, y):
        raise NotComparable(f"{x} is not below {y}")
    if x == y:
        raise NotComparable(f"interval [{x}, {y}] is a single element")
    members = p.above(x) & p.below(y)
    base = p.rank_of[x]
    rank_of = {e: p.rank_of[e] - base for e in members}
    covers = [(lo, hi) for lo, hi in p.covers if lo in members and hi in members]
    return PosetInterval(x, y, GradedPoset(rank_of, covers, x, y))


def dual(p: GradedPoset) -> GradedPoset:
    """Order-reversed poset with ranks complemented."""
    rank_of = {e: p.rank - r for e, r in p.rank_of.items()}
    covers = [(hi, lo) for lo, hi in p.covers]
    return GradedPoset(rank_of, covers, p.top, p.bottom)


def shift_ids(p: GradedPoset, offset: int) -> GradedPoset:
    """Relabel every element e as e + offset."""
    if offset == 0:
        return p
    rank_of = {e + offset: r for e, r in p.rank_of.items()}
    covers = [(lo + offset, hi + offset) for lo, hi in p.covers]
    return GradedPoset(rank_of, covers, p.bottom + offset, p.top + offset)


def join(p: GradedPoset, q: GradedPoset) -> GradedPoset:
    """
    Join P * Q on (P - {1̂}) ⊔ (Q - {0̂}).

    Q is relabelled by offsetting its ids past max(P). Every coatom of P
    becomes covered by every atom of Q, so rank(P*Q) = rank(P) + rank(Q) - 1.

    Args:
        p: Lower factor, keeps its ids and its 0̂
        q: Upper factor, contributes 1̂

    Returns:
        The join as a new GradedPoset
    """
    offset = max(p.elements) + 1 - min(q.elements)
    q = shift_ids(q, offset)

    coatoms = p.lower_covers(p.top)
    atoms = q.upper_covers(q.bottom)
    lift = p.rank - 1

    rank_of = {e: r for e, r in p.rank_of.items() if e != p.top}
    for e, r in q.rank_of.items():
        if e != q.bottom:
            rank_of[e] = r + lift

    covers = [(lo, hi) for lo, hi in p.covers if hi != p.top]
    covers += [(lo, hi) for lo, hi in q.covers if lo != q.bottom]
    covers += [(c, a) for c in coatoms for a in atoms]
    return GradedPoset(rank_of, covers, p.bottom, q.top)


def join_all(*posets: GradedPoset) -> GradedPoset:
    """Left-associated join of one or more posets."""
    if not posets:
        raise ValueError("join_all needs at least one poset")
    result = posets[0]
    for q in posets[1:]:
        result = join(result, q)
    return result


# =============================================================================
# THINNESS
# =============================================================================

def is_thin(p: GradedPoset) -> bool:
    """True iff every rank-2 interval has exactly two middle elements."""
    for y in p.elements:
        middles: Dict[Element, int] = {}
        for z in p.upper_covers(y):
            for x in p.upper_covers(z):
                middles[x] = middles.get(x, 0) + 1
        if any(count != 2 for count in middles.values()):
            return False
    return True


# =============================================================================
# UNZIPPING
# =============================================================================

def unzip(p: GradedPoset, x: Element, y: Element) -> Unzipped:
    """
    Unzip the cover y ⋖ x.

    Deletes y < x and adds x' (rank of x) and y' (rank of y) with covers
    x' < w for each w covering x, w < y' for each w covered by y, and
    y' < x', y < x', y' < x.

    Args:
        p: Poset to unzip
        x: Upper end of the cover
        y: Lower end of the cover

    Returns:
        Unzipped(poset, x', y') with x' = max id + 1, y' = max id + 2

    Raises:
        NotACover: y ⋖ x is not a cover with both ends interior
    """
    if x in (p.bottom, p.top) or y in (p.bottom, p.top):
        raise NotACover(f"({x}, {y}) touches 0̂ or 1̂")
    if not p.covers_pair(x, y):
        raise NotACover(f"{x} does not cover {y}")

    x_new = max(p.elements) + 1
    y_new = x_new + 1

    rank_of = dict(p.rank_of)
    rank_of[x_new] = p.rank_of[x]
    rank_of[y_new] = p.rank_of[y]

    covers = set(p.covers)
    covers.discard((y, x))
    covers.update((x_new, w) for w in p.upper_covers(x))
    covers.update((w, y_new) for w in p.lower_covers(y))
    covers.update({(y_new, x_new), (y, x_new), (y_new, x)})

    return Unzipped(GradedPoset(rank_of, covers, p.bottom, p.top), x_new, y_new)


def unzip_k(p: GradedPoset, x: Element, y: Element, k: int) -> Unzipped:
    """
    Unzip (x, y), then the freshly created pair, k times in total.

    k = 0 returns p itself with (x, y) as the "last pair".

    Raises:
        NotACover: y ⋖ x is not an interior cover
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if not p.covers_pair(x, y) or x in (p.bottom, p.top) or y in (p.bottom, p.top):
        raise NotACover(f"{x} does not cover {y} in the interior")
    result = Unzipped(p, x, y)
    for _ in range(k):
        result = unzip(result.poset, result.x_new, result.y_new)
    return result


# =============================================================================
# ZIPPING
# =============================================================================

def check_zip(p: GradedPoset, x: Element, y: Element, z: Element) -> None:
    """
    Raise ZipPreconditionViolated unless Z(P; x, y, z) is allowed.

    (i)   x covers exactly y and z
    (ii)  x is the unique minimal upper bound of y and z
    (iii) y and z cover exactly the same elements
    and P must be thin.
    """
    ends = (p.bottom, p.top)
    for e in (x, y, z):
        if e not in p.elements:
            raise ZipPreconditionViolated("i", f"unknown element {e}")
        if e in ends:
            raise ZipPreconditionViolated("i", f"{e} is 0̂ or 1̂")
    if len({x, y, z}) != 3:
        raise ZipPreconditionViolated("i", "x, y, z must be distinct")
    if p.lower_covers(x) != frozenset((y, z)):
        raise ZipPreconditionViolated(
            "i", f"{x} covers {sorted(p.lower_covers(x))}, not exactly {{{y}, {z}}}")
    common = p.above(y) & p.above(z)
    minimal = [u for u in common if not any(v != u and p.leq(v, u) for v in common)]
    if minimal != [x]:
        raise ZipPreconditionViolated(
            "ii", f"minimal upper bounds of {y}, {z} are {sorted(minimal)}")
    if p.lower_covers(y) != p.lower_covers(z):
        raise ZipPreconditionViolated(
            "iii", f"{y} and {z} cover different elements")
    if not is_thin(p):
        raise ZipPreconditionViolated("thin", "zipping requires a thin poset")


def zip_poset(p: GradedPoset, x: Element, y: Element, z: Element) -> GradedPoset:
    """
    Zip: delete x and y, and make every w > y lie above z instead.

    The order is rebuilt on the full relation and reduced back to covers,
    so the result keeps the ids of every surviving element.

    Raises:
        ZipPreconditionViolated: One of the zip conditions fails
        ResultNotGraded: The rebuilt relation is not a graded poset
    """
    check_zip(p, x, y, z)
    removed = {x, y}

    relation = nx.DiGraph()
    survivors = [e for e in p.elements if e not in removed]
    relation.add_nodes_from(survivors)
    for a in survivors:
        for b in p.above(a):
            if b != a and b not in removed:
                relation.add_edge(a, b)
    for w in p.above(y):
        if w not in removed:
            relation.add_edge(z, w)

    hasse = nx.transitive_reduction(nx.transitive_closure_dag(relation))
    rank_of = {e: p.rank_of[e] for e in survivors}
    try:
        return make_poset(rank_of, hasse.edges(), p.bottom, p.top)
    except (NotGraded, NoUniqueBottomTop, Cyclic) as exc:
        raise ResultNotGraded(str(exc))


# =============================================================================
# ISOMORPHISM
# =============================================================================

def is_isomorphic(p: GradedPoset, q: GradedPoset,
                  budget: int = DEFAULT_ISO_BUDGET) -> bool:
    """
    True iff a rank-preserving order isomorphism P -> Q exists.

    Cheap invariants (size, rank profile, cover count) are compared first;
    the remaining cases go to a VF2 search on the rank-labelled Hasse
    diagrams.

    Raises:
        TooLarge: Either poset has more than `budget` elements
    """
    if len(p) > budget or len(q) > budget:
        raise TooLarge(f"isomorphism test limited to {budget} elements "
                       f"(got {len(p)} and {len(q)})")
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return False
    if sorted(p.rank_of.values()) != sorted(q.rank_of.values()):
        return False
    return nx.is_isomorphic(p.hasse_graph(), q.hasse_graph(),
                            node_match=categorical_node_match("rank", None))


# =============================================================================
# VERIFICATION / TESTING
# =============================================================================

def verify_poset() -> None:
    """
    Verify the poset core on small hand-checkable examples.

    Checks:
    1. B̂_2 validates with n = 1 and is self-dual
    2. A rank-skipping cover is rejected
    3. Join of two B̂_2 has rank 3
    4. Unzip adds two elements and zip undoes it exactly
    """
    print("Verifying poset module...")

    b2 = make_poset({0: 0, 1: 1, 2: 1, 3: 2}, [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert b2.n == 1, f"B̂_2 should have n = 1, got {b2.n}"
    assert dual(b2) == GradedPoset({0: 2, 1: 1, 2: 1, 3: 0},
                                   [(1, 0), (2, 0), (3, 1), (3, 2)], 3, 0)
    print("✓ B̂_2 validates and dualizes")

    try:
        make_poset({0: 0, 1: 1, 2: 3}, [(0, 1), (1, 2)])
        raise AssertionError("rank skip was accepted")
    except NotGraded:
        pass
    print("✓ Rank-skipping cover rejected")

    square = join(b2, b2)
    assert square.rank == 3 and len(square) == 6, f"unexpected join {square}"
    assert is_thin(square)
    print(f"✓ B̂_2 * B̂_2 has rank {square.rank} and {len(square)} elements")

    lo, hi = square.interior_covers()[0]
    opened = unzip(square, hi, lo)
    assert len(opened.poset) == len(square) + 2
    closed = zip_poset(opened.poset, opened.x_new, opened.y_new, lo)
    assert closed == square, "zip did not undo unzip"
    print("✓ Zip undoes unzip exactly")

    print("\n✓ Poset verification complete!")


if __name__ == "__main__":
    verify_poset()
