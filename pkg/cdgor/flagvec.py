"""
flagvec.py - Flag Vectors, ab-Index and cd-Index

Mathematical Foundation:
========================
For a graded poset P of rank n+1 and S ⊆ [n] = {1..n}:

    f_S  = number of chains in P - {0̂, 1̂} whose rank set is exactly S
    h_S  = Σ_{T ⊆ S} (-1)^{|S|-|T|} f_T
    Ψ_P  = Σ_S h_S u_S,   u_S = u_1..u_n,  u_i = b if i ∈ S else a

For Eulerian (in particular Gorenstein*) posets Ψ_P is a polynomial
Φ_P(c, d) in c = a + b and d = ab + ba, the cd-index. Setting c = 1
gives the d-vector (δ_0, δ_1, ...): δ_i sums the coefficients of the
cd-words with exactly i letters d. For the order complex,

    Σ h_i x^i = Σ 2^i δ_i x^i (1+x)^(n-2i)

Rewriting ab -> cd:
The lexicographically least ab-word (a < b) in the expansion of a
cd-word is obtained by c -> a, d -> ab. So the least surviving word of
Ψ names the next cd-word uniquely; subtract its expansion and repeat.

Flag f-vector computation:
With L_r the elements of rank r and M_(r,s) the 0/1 matrix of x ≤ y
between layers r < s,

    f_{s_1 < ... < s_k} = 1ᵀ M_(s_1,s_2) M_(s_2,s_3) ... M_(s_(k-1),s_k) 1

Matrices use dtype=object so products stay exact Python integers.
"""

import re
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, symbols

from .errors import LeadingCoeffNotOne, MalformedFile, NotCdExpressible, WrongDegree
from .poset import GradedPoset

# Type aliases for clarity
RankSet = Tuple[int, ...]     # sorted subset of [n]

_X = symbols("x")


# =============================================================================
# FLAG VECTORS
# =============================================================================

class FlagVector:
    """
    Map S ⊆ [n] -> integer, total on all 2^n subsets.

    Attributes:
        n: Size of the ground set [n]
        values: RankSet -> value
        kind: "f" or "h"
    """

    __slots__ = ("n", "values", "kind")

    def __init__(self, n: int, values: Dict[RankSet, int], kind: str):
        self.n = n
        self.values = {tuple(sorted(s)): int(v) for s, v in values.items()}
        self.kind = kind
        missing = [s for s in all_subsets(n) if s not in self.values]
        assert not missing, f"flag vector missing subsets {missing[:3]}"

    def __getitem__(self, s: Iterable[int]) -> int:
        return self.values[tuple(sorted(s))]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlagVector):
            return NotImplemented
        return (self.n, self.kind, self.values) == (other.n, other.kind, other.values)

    def __repr__(self) -> str:
        return f"FlagVector({self.kind}, n={self.n})"

    def items(self) -> List[Tuple[RankSet, int]]:
        """(S, value) pairs ordered by (|S|, S)."""
        return [(s, self.values[s]) for s in all_subsets(self.n)]


def all_subsets(n: int) -> List[RankSet]:
    """All subsets of [n] ordered by size then lexicographically."""
    return [s for k in range(n + 1) for s in combinations(range(1, n + 1), k)]


def _layer_matrix(p: GradedPoset, lower: List[int], upper: List[int]) -> np.ndarray:
    m = np.zeros((len(lower), len(upper)), dtype=object)
    for i, x in enumerate(lower):
        up = p.above(x)
        for j, y in enumerate(upper):
            if y in up:
                m[i, j] = 1
    return m


def flag_f(p: GradedPoset) -> FlagVector:
    """
    Flag f-vector of P by chain products over rank layers.

    Args:
        p: Graded poset of rank n+1

    Returns:
        FlagVector of kind "f" with f_∅ = 1
    """
    n = p.n
    layers = {r: p.rank_layer(r) for r in range(1, n + 1)}
    matrices: Dict[Tuple[int, int], np.ndarray] = {}
    values: Dict[RankSet, int] = {(): 1}
    for s in all_subsets(n):
        if not s:
            continue
        vec = np.ones(len(layers[s[0]]), dtype=object)
        for r, t in zip(s, s[1:]):
            if (r, t) not in matrices:
                matrices[(r, t)] = _layer_matrix(p, layers[r], layers[t])
            vec = vec.dot(matrices[(r, t)])
        values[s] = int(sum(vec))
    return FlagVector(n, values, "f")


def flag_h(f: FlagVector) -> FlagVector:
    """h_S = Σ_{T ⊆ S} (-1)^{|S|-|T|} f_T."""
    values = {}
    for s in all_subsets(f.n):
        total = 0
        for k in range(len(s) + 1):
            sign = -1 if (len(s) - k) % 2 else 1
            total += sign * sum(f.values[t] for t in combinations(s, k))
        values[s] = total
    return FlagVector(f.n, values, "h")


def flag_f_from_h(h: FlagVector) -> FlagVector:
    """Inverse transform f_S = Σ_{T ⊆ S} h_T."""
    values = {s: sum(h.values[t] for k in range(len(s) + 1) for t in combinations(s, k))
              for s in all_subsets(h.n)}
    return FlagVector(h.n, values, "f")


def flag_h_to_h_vector(h: FlagVector) -> Tuple[int, ...]:
    """h-vector of the order complex: h_i = Σ_{|S| = i} h_S."""
    totals = [0] * (h.n + 1)
    for s, v in h.values.items():
        totals[len(s)] += v
    return tuple(totals)


# =============================================================================
# ab-POLYNOMIALS
# =============================================================================

class AbPolynomial:
    """Integer combination of words of length n over {a, b}."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Dict[str, int]):
        self.n = n
        self.coeffs = {w: c for w, c in coeffs.items() if c != 0}
        for w in self.coeffs:
            if len(w) != n or set(w) - {"a", "b"}:
                raise WrongDegree(f"ab-word {w!r} does not have length {n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbPolynomial):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*{w or '1'}" for w, c in sorted(self.coeffs.items()))
        return f"AbPolynomial({terms or '0'})"

    def coefficient(self, word: str) -> int:
        return self.coeffs.get(word, 0)


def ab_index(h: FlagVector) -> AbPolynomial:
    """Ψ = Σ h_S u_S."""
    coeffs = {}
    for s, v in h.values.items():
        word = "".join("b" if i in s else "a" for i in range(1, h.n + 1))
        coeffs[word] = v
    return AbPolynomial(h.n, coeffs)


# =============================================================================
# cd-POLYNOMIALS
# =============================================================================

_WEIGHT = {"c": 1, "d": 2}


def cd_weight(word: str) -> int:
    return sum(_WEIGHT[ch] for ch in word)


def cd_word_key(word: str) -> Tuple[int, str]:
    """Canonical order: fewer d's first, then lexicographic with d < c."""
    return word.count("d"), word.replace("d", "0").replace("c", "1")


class CdPolynomial:
    """
    Integer combination of cd-words of one weighted degree (c = 1, d = 2).

    Multiplication is concatenation of words, so Φ_(P*Q) = Φ_P * Φ_Q.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Optional[Dict[str, int]] = None):
        self.degree = degree
        self.coeffs: Dict[str, int] = {}
        for w, c in (coeffs or {}).items():
            if set(w) - {"c", "d"}:
                raise MalformedFile(f"cd-word {w!r} has letters other than c, d")
            if cd_weight(w) != degree:
                raise WrongDegree(f"cd-word {w!r} has degree {cd_weight(w)}, expected {degree}")
            if c != 0:
                self.coeffs[w] = int(c)

    @classmethod
    def monomial(cls, word: str, coefficient: int = 1) -> "CdPolynomial":
        return cls(cd_weight(word), {word: coefficient})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CdPolynomial):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other: "CdPolynomial") -> "CdPolynomial":
        if self.degree != other.degree:
            raise WrongDegree(f"cannot add degrees {self.degree} and {other.degree}")
        coeffs = dict(self.coeffs)
        for w, c in other.coeffs.items():
            coeffs[w] = coeffs.get(w, 0) + c
        return CdPolynomial(self.degree, coeffs)

    def __neg__(self) -> "CdPolynomial":
        return CdPolynomial(self.degree, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "CdPolynomial") -> "CdPolynomial":
        return self + (-other)

    def __mul__(self, other: object) -> "CdPolynomial":
        if isinstance(other, int):
            return CdPolynomial(self.degree, {w: c * other for w, c in self.coeffs.items()})
        if not isinstance(other, CdPolynomial):
            return NotImplemented
        coeffs: Dict[str, int] = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                coeffs[w1 + w2] = coeffs.get(w1 + w2, 0) + c1 * c2
        return CdPolynomial(self.degree + other.degree, coeffs)

    __rmul__ = __mul__

    def coefficient(self, word: str) -> int:
        return self.coeffs.get(word, 0)

    def leading_coefficient(self) -> int:
        """Coefficient of c^degree."""
        return self.coefficient("c" * self.degree)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def reversed(self) -> "CdPolynomial":
        """Reverse every word; the cd-index of the dual poset."""
        return CdPolynomial(self.degree, {w[::-1]: c for w, c in self.coeffs.items()})

    def terms(self) -> List[Tuple[str, int]]:
        return [(w, self.coeffs[w]) for w in sorted(self.coeffs, key=cd_word_key)]

    def __str__(self) -> str:
        return format_cd(self)

    def __repr__(self) -> str:
        return f"CdPolynomial({format_cd(self)!r})"


def cd_from_terms(terms: Dict[str, int]) -> CdPolynomial:
    """Build a cd-polynomial, inferring the degree from any word."""
    if not terms:
        raise WrongDegree("cannot infer the degree of an empty term list")
    return CdPolynomial(cd_weight(next(iter(terms))), terms)


# =============================================================================
# TEXT FORMAT
# =============================================================================

def _compress(word: str) -> str:
    out = []
    for run in re.finditer(r"c+|d+", word):
        letter, length = run.group()[0], len(run.group())
        out.append(letter if length == 1 else f"{letter}^{length}")
    return "".join(out)


def format_cd(phi: CdPolynomial) -> str:
    """
    Canonical text: `c^4 + dc^2 + 2*cdc - d^2`, terms in canonical word order.

    A coefficient of 1 is omitted; the zero polynomial prints as `0`.
    """
    parts: List[str] = []
    for w, c in phi.terms():
        magnitude = abs(c)
        if not w:
            term = str(magnitude)
        elif magnitude == 1:
            term = _compress(w)
        else:
            term = f"{magnitude}*{_compress(w)}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {term}")
    return " ".join(parts) if parts else "0"


_TERM = re.compile(r"^(?:(\d+)\s*\*?\s*)?((?:[cd](?:\^\d+)?)*)$")


def parse_cd(text: str, degree: Optional[int] = None) -> CdPolynomial:
    """
    Parse the canonical text form (coefficients `k*w` or `kw`, runs `c^k`).

    Args:
        text: e.g. "c^4 + 1*cdc" or "c^2 + 2d"
        degree: Required only for "0"

    Raises:
        MalformedFile: Unparseable text
        WrongDegree: Words of different degrees
    """
    compact = text.replace(" ", "")
    if not compact:
        raise MalformedFile("empty cd-polynomial")
    if compact == "0":
        if degree is None:
            raise WrongDegree("degree of the zero polynomial must be given")
        return CdPolynomial(degree)
    if compact[0] not in "+-":
        compact = "+" + compact
    coeffs: Dict[str, int] = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", compact):
        m = _TERM.match(body)
        if not m or (m.group(1) is None and not m.group(2)):
            raise MalformedFile(f"cannot parse cd-term {body!r}")
        coefficient = int(m.group(1)) if m.group(1) is not None else 1
        word = "".join(
            letter * (int(power) if power else 1)
            for letter, power in re.findall(r"([cd])(?:\^(\d+))?", m.group(2)))
        coeffs[word] = coeffs.get(word, 0) + (coefficient if sign == "+" else -coefficient)
    if "".join(s + b for s, b in re.findall(r"([+-])([^+-]+)", compact)) != compact:
        raise MalformedFile(f"cannot parse cd-polynomial {text!r}")
    degrees = {cd_weight(w) for w in coeffs}
    if len(degrees) != 1:
        raise WrongDegree(f"mixed degrees {sorted(degrees)} in {text!r}")
    found = degrees.pop()
    if degree is not None and degree != found:
        raise WrongDegree(f"expected degree {degree}, got {found}")
    return CdPolynomial(found, coeffs)


# =============================================================================
# REWRITING
# =============================================================================

_LETTER_EXPANSION = {"c": (("a", 1), ("b", 1)), "d": (("ab", 1), ("ba", 1))}


def expand_word(word: str) -> Dict[str, int]:
    """Expansion of one cd-word with c = a+b, d = ab+ba."""
    current: Dict[str, int] = {"": 1}
    for letter in word:
        nxt: Dict[str, int] = {}
        for prefix, c in current.items():
            for piece, k in _LETTER_EXPANSION[letter]:
                nxt[prefix + piece] = nxt.get(prefix + piece, 0) + c * k
        current = nxt
    return current


def cd_expand(phi: CdPolynomial) -> AbPolynomial:
    """Substitute c = a+b, d = ab+ba."""
    coeffs: Dict[str, int] = {}
    for w, c in phi.coeffs.items():
        for ab, k in expand_word(w).items():
            coeffs[ab] = coeffs.get(ab, 0) + c * k
    return AbPolynomial(phi.degree, coeffs)


def _decode_least_word(word: str) -> str:
    # Inverse of c -> a, d -> ab on least words.
    out: List[str] = []
    i = 0
    while i < len(word):
        if word[i] == "b":
            raise NotCdExpressible(f"ab-word {word!r} is not a least word of any cd-word")
        if i + 1 < len(word) and word[i + 1] == "b":
            out.append("d")
            i += 2
        else:
            out.append("c")
            i += 1
    return "".join(out)


def cd_rewrite(psi: AbPolynomial) -> CdPolynomial:
    """
    Rewrite an ab-polynomial in c = a+b and d = ab+ba.

    Raises:
        NotCdExpressible: psi is not in the image of cd_expand
    """
    remaining = dict(psi.coeffs)
    result: Dict[str, int] = {}
    while remaining:
        least = min(remaining)
        coefficient = remaining[least]
        cd_word = _decode_least_word(least)
        result[cd_word] = coefficient
        for ab, k in expand_word(cd_word).items():
            left = remaining.get(ab, 0) - coefficient * k
            if left:
                remaining[ab] = left
            else:
                remaining.pop(ab, None)
    return CdPolynomial(psi.n, result)


def cd_index(p: GradedPoset) -> CdPolynomial:
    """Φ_P = cd_rewrite(Ψ_P)."""
    return cd_rewrite(ab_index(flag_h(flag_f(p))))


# =============================================================================
# d-VECTORS
# =============================================================================

def d_vector(phi: CdPolynomial) -> Tuple[int, ...]:
    """(δ_0, ..., δ_⌊n/2⌋) from Φ(1, d)."""
    delta = [0] * (phi.degree // 2 + 1)
    for w, c in phi.coeffs.items():
        delta[w.count("d")] += c
    return tuple(delta)


def h_from_d(d: Sequence[int], n: int) -> Tuple[int, ...]:
    """
    h-vector (h_0..h_n) of the order complex from the d-vector.

    Raises:
        WrongDegree: len(d) != ⌊n/2⌋ + 1
    """
    if len(d) != n // 2 + 1:
        raise WrongDegree(f"d-vector of length {len(d)} does not fit n = {n}")
    poly = Poly(sum(2 ** i * di * _X ** i * (1 + _X) ** (n - 2 * i)
                    for i, di in enumerate(d)), _X)
    return tuple(int(poly.coeff_monomial(_X ** i)) for i in range(n + 1))


# =============================================================================
# RANK 5 AND RANK 6 COEFFICIENTS
# =============================================================================

class Rank5Coeffs(NamedTuple):
    """Φ = c⁴ + α1·dc² + α2·cdc + α3·c²d + α13·d²."""
    alpha1: int
    alpha2: int
    alpha3: int
    alpha13: int

    def to_cd(self) -> CdPolynomial:
        return CdPolynomial(4, dict(zip(RANK5_WORDS, (1,) + tuple(self))))

    def d_vector(self) -> Tuple[int, int, int]:
        return (1, self.alpha1 + self.alpha2 + self.alpha3, self.alpha13)


class Rank6Coeffs(NamedTuple):
    """Φ = c⁵ + α1·dc³ + α2·cdc² + α3·c²dc + α4·c³d + α13·d²c + α14·dcd + α24·cd²."""
    alpha1: int
    alpha2: int
    alpha3: int
    alpha4: int
    alpha13: int
    alpha14: int
    alpha24: int

    def to_cd(self) -> CdPolynomial:
        return CdPolynomial(5, dict(zip(RANK6_WORDS, (1,) + tuple(self))))


RANK5_WORDS = ("cccc", "dcc", "cdc", "ccd", "dd")
RANK6_WORDS = ("ccccc", "dccc", "cdcc", "ccdc", "cccd", "ddc", "dcd", "cdd")


def _extract(phi: CdPolynomial, degree: int, words: Sequence[str]) -> Tuple[int, ...]:
    if phi.degree != degree:
        raise WrongDegree(f"expected degree {degree}, got {phi.degree}")
    if phi.leading_coefficient() != 1:
        raise LeadingCoeffNotOne(f"coefficient of c^{degree} is {phi.leading_coefficient()}")
    return tuple(phi.coefficient(w) for w in words[1:])


def rank5_coeffs(phi: CdPolynomial) -> Rank5Coeffs:
    return Rank5Coeffs(*_extract(phi, 4, RANK5_WORDS))


def rank6_coeffs(phi: CdPolynomial) -> Rank6Coeffs:
    return Rank6Coeffs(*_extract(phi, 5, RANK6_WORDS))


def rank5_inequality_holds(t: Rank5Coeffs) -> bool:
    """α13 <= α1·α3."""
    return t.alpha13 <= t.alpha1 * t.alpha3


def rank6_inequalities_hold(t: Rank6Coeffs) -> bool:
    """α13 <= α1·α3, α14 <= α1·α4 and α24 <= α2·α4."""
    return (t.alpha13 <= t.alpha1 * t.alpha3
            and t.alpha14 <= t.alpha1 * t.alpha4
            and t.alpha24 <= t.alpha2 * t.alpha4)


# =============================================================================
# VERIFICATION / TESTING
# =============================================================================

def verify_flagvec() -> None:
    """
    Verify the ab/cd machinery on the 4-gon.

    Checks:
    1. C_4 has f_1 = f_2 = 4, f_12 = 8
    2. Ψ(C_4) = aa + 3ab + 3ba + bb
    3. Φ(C_4) = c² + 2d
    4. Text format round trip
    """
    from .poset import make_poset

    print("Verifying flagvec module...")

    # C_4: vertices 1-4, edges 5-8, top 9.
    ranks = {0: 0, 9: 3}
    ranks.update({v: 1 for v in range(1, 5)})
    ranks.update({e: 2 for e in range(5, 9)})
    covers = [(0, v) for v in range(1, 5)] + [(e, 9) for e in range(5, 9)]
    covers += [(1 + i, 5 + i) for i in range(4)] + [(1 + (i + 1) % 4, 5 + i) for i in range(4)]
    c4 = make_poset(ranks, covers)

    f = flag_f(c4)
    assert (f[(1,)], f[(2,)], f[(1, 2)]) == (4, 4, 8), f"f(C_4) = {f.items()}"
    print("✓ Flag f-vector of C_4")

    psi = ab_index(flag_h(f))
    assert psi.coeffs == {"aa": 1, "ab": 3, "ba": 3, "bb": 1}, f"Ψ(C_4) = {psi}"
    print("✓ ab-index of C_4")

    phi = cd_rewrite(psi)
    assert phi == parse_cd("c^2 + 2d"), f"Φ(C_4) = {phi}"
    print(f"✓ cd-index of C_4 is {phi}")

    assert parse_cd(format_cd(phi)) == phi
    print("✓ Text format round trip")

    print("\n✓ Flagvec verification complete!")


if __name__ == "__main__":
    verify_flagvec()
