"""The Lie algebra of the pure braid group and the map induced by cabling.

Normal form: an element of ``gr(P_n)`` is a tuple of free Lie elements, one
per strand ``k = 2..n`` over the letters ``B(1,k) .. B(k-1,k)``.  Brackets
inside one component are free brackets.  A lower component ``j`` acts on a
higher component ``t`` by derivations, fixed on generators by

    B(i,j) . B(s,t) = 0              for s not in {i, j}
    B(i,j) . B(i,t) = [B(i,t), B(j,t)]
    B(i,j) . B(j,t) = [B(j,t), B(i,t)]

and extended to brackets of lower generators as commutators of derivations.
Soundness of this decomposition is checked against the raw presentation by
:func:`presentation_oracle`.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .freelie import (
    Alphabet,
    DerivationTable,
    LieElement,
    bracket_terms,
    format_terms,
    lie_bracket,
    lyndon_words,
    standard_factorization,
    witt_rank,
)
from .linalg import Echelon, matrix_rank, smith_normal_form

__all__ = [
    "KohnoElement",
    "RelationWitness",
    "BudgetExceeded",
    "component_alphabet",
    "kohno_generator",
    "kohno_bracket",
    "kohno_rank",
    "presentation_oracle",
    "relation_instances",
    "relations_check",
    "gr_theta",
    "gr_theta_generator",
    "gr_theta_matrix",
    "delta_example_check",
    "default_assignment",
    "derivation_rep",
]

Word = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    pass


@lru_cache(maxsize=None)
def component_alphabet(k: int) -> Alphabet:
    return Alphabet("B", k - 1, tuple(f"B({i},{k})" for i in range(1, k)))


def _add(acc: dict, terms: Mapping[Word, int], k: int = 1) -> None:
    for w, c in terms.items():
        acc[w] += k * c


class KohnoElement:
    """Element of ``gr(P_n)`` in component normal form."""

    __slots__ = ("n", "comps")

    def __init__(self, n: int, comps: Mapping[int, Mapping[Word, int]] | None = None):
        if n < 1:
            raise ValueError("need at least one strand")
        self.n = n
        clean: dict[int, dict[Word, int]] = {}
        for k, terms in (comps or {}).items():
            if not 2 <= k <= n:
                raise IndexError(f"component {k} invalid for n={n}")
            t = {w: c for w, c in terms.items() if c}
            for w in t:
                if max(w) > k - 1:
                    raise IndexError(f"letter outside component {k}")
            if t:
                clean[k] = t
        self.comps = clean

    @classmethod
    def zero(cls, n: int) -> KohnoElement:
        return cls(n)

    def component(self, k: int) -> LieElement:
        return LieElement(component_alphabet(k), self.comps.get(k, {}))

    def is_zero(self) -> bool:
        return not self.comps

    def degrees(self) -> set[int]:
        return {len(w) for terms in self.comps.values() for w in terms}

    def _check(self, other: KohnoElement) -> None:
        if self.n != other.n:
            raise ValueError(f"strand counts differ: {self.n} vs {other.n}")

    def __add__(self, other: KohnoElement) -> KohnoElement:
        self._check(other)
        out = {k: dict(t) for k, t in self.comps.items()}
        for k, t in other.comps.items():
            d = out.setdefault(k, {})
            for w, c in t.items():
                d[w] = d.get(w, 0) + c
        return KohnoElement(self.n, out)

    def __neg__(self) -> KohnoElement:
        return KohnoElement(self.n, {k: {w: -c for w, c in t.items()} for k, t in self.comps.items()})

    def __sub__(self, other: KohnoElement) -> KohnoElement:
        return self + (-other)

    def __rmul__(self, k: int) -> KohnoElement:
        return KohnoElement(self.n, {j: {w: k * c for w, c in t.items()} for j, t in self.comps.items()})

    __mul__ = __rmul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KohnoElement):
            return NotImplemented
        return self.n == other.n and self.comps == other.comps

    def __hash__(self) -> int:
        return hash((self.n, frozenset((k, frozenset(t.items())) for k, t in self.comps.items())))

    def bracket(self, other: KohnoElement) -> KohnoElement:
        return kohno_bracket(self, other)

    def coordinates(self, m: int) -> list[int]:
        """Coefficients in the concatenated degree-``m`` component bases (k = 2..n)."""
        out = []
        for k in range(2, self.n + 1):
            terms = self.comps.get(k, {})
            out.extend(terms.get(w, 0) for w in lyndon_words(k - 1, m))
        return out

    def __str__(self) -> str:
        if not self.comps:
            return "0"
        pieces = []
        for k in sorted(self.comps):
            terms = sorted(self.comps[k].items(), key=lambda wc: (len(wc[0]), wc[0]))
            pieces.append(format_terms(terms, component_alphabet(k)))
        s = pieces[0]
        for p in pieces[1:]:
            s += p if p.startswith("-") else "+" + p
        return s

    def __repr__(self) -> str:
        return f"KohnoElement(n={self.n}, {self})"


@dataclass(frozen=True)
class RelationWitness:
    family: int
    indices: tuple
    residue: KohnoElement

    @property
    def ok(self) -> bool:
        return self.residue.is_zero()


def kohno_generator(i: int, j: int, n: int) -> KohnoElement:
    if not 1 <= i < j <= n:
        raise IndexError(f"B({i},{j}) invalid for n={n}")
    return KohnoElement(n, {j: {(i,): 1}})


def kohno_sum(pairs: Iterable[tuple[int, int]], n: int) -> KohnoElement:
    out = KohnoElement.zero(n)
    for i, j in pairs:
        out = out + kohno_generator(min(i, j), max(i, j), n)
    return out


# -- the bracket ------------------------------------------------------------


@lru_cache(maxsize=None)
def _gen_act(i: int, j: int, w: Word) -> Mapping[Word, int]:
    # derivation B(i,j) applied to basis element b(w) of a higher component
    if len(w) == 1:
        s = w[0]
        if s == i:
            return bracket_terms({(i,): 1}, {(j,): 1})
        if s == j:
            return bracket_terms({(j,): 1}, {(i,): 1})
        return {}
    u, v = standard_factorization(w)
    acc: dict[Word, int] = defaultdict(int)
    _add(acc, bracket_terms(_gen_act(i, j, u), {v: 1}))
    _add(acc, bracket_terms({u: 1}, _gen_act(i, j, v)))
    return {x: c for x, c in acc.items() if c}


def _act_terms(j: int, wa: Word, terms: Mapping[Word, int]) -> dict[Word, int]:
    acc: dict[Word, int] = defaultdict(int)
    for w, c in terms.items():
        _add(acc, _act(j, wa, w), c)
    return {x: c for x, c in acc.items() if c}


@lru_cache(maxsize=None)
def _act(j: int, wa: Word, wb: Word) -> Mapping[Word, int]:
    # basis element b(wa) of component j acting on b(wb) of a higher component
    if len(wa) == 1:
        return _gen_act(wa[0], j, wb)
    a1, a2 = standard_factorization(wa)
    acc: dict[Word, int] = defaultdict(int)
    _add(acc, _act_terms(j, a1, _act(j, a2, wb)))
    _add(acc, _act_terms(j, a2, _act(j, a1, wb)), -1)
    return {x: c for x, c in acc.items() if c}


def kohno_bracket(a: KohnoElement, b: KohnoElement) -> KohnoElement:
    a._check(b)
    out: dict[int, dict[Word, int]] = defaultdict(lambda: defaultdict(int))
    for j, ta in a.comps.items():
        for t, tb in b.comps.items():
            if j == t:
                _add(out[j], bracket_terms(ta, tb))
            elif j < t:
                for wa, ca in ta.items():
                    for wb, cb in tb.items():
                        _add(out[t], _act(j, wa, wb), ca * cb)
            else:
                for wb, cb in tb.items():
                    for wa, ca in ta.items():
                        _add(out[j], _act(t, wb, wa), -ca * cb)
    return KohnoElement(a.n, out)


def kohno_rank(n: int, m: int) -> int:
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    return sum(witt_rank(k - 1, m) for k in range(2, n + 1))


# -- relations --------------------------------------------------------------


def _pair(i: int, j: int) -> tuple[int, int]:
    return (min(i, j), max(i, j))


def relation_instances(n: int) -> list[tuple[int, tuple, tuple[int, int], list[tuple[int, int]]]]:
    """Every instance ``(family, indices, lhs pair, rhs pairs)`` of the three relation families.

    Family 1: ``[B(i,j), B(s,t)]`` for disjoint pairs.  Family 2:
    ``[B(i,j), B(i,s) + B(s,j)]`` for any third index ``s`` (with
    ``B(a,b) = B(b,a)``).  Family 3: ``[B(i,j), B(i,t) + B(j,t)]`` for
    ``i < j < t``.
    """
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    out = []
    for p, q in itertools.combinations(pairs, 2):
        if not set(p) & set(q):
            out.append((1, p + q, p, [q]))
    for i, j in pairs:
        for s in range(1, n + 1):
            if s not in (i, j):
                out.append((2, (i, j, s), (i, j), [_pair(i, s), _pair(s, j)]))
    for i, j, t in itertools.combinations(range(1, n + 1), 3):
        out.append((3, (i, j, t), (i, j), [(i, t), (j, t)]))
    return out


def relations_check(n: int) -> list[RelationWitness]:
    if n < 2:
        raise ValueError("need n >= 2")
    out = []
    for family, idx, lhs, rhs in relation_instances(n):
        residue = kohno_bracket(kohno_generator(*lhs, n), kohno_sum(rhs, n))
        out.append(RelationWitness(family, idx, residue))
    return out


# -- presentation oracle ----------------------------------------------------


@dataclass
class PresentationOracle:
    """Degree-``m`` piece of the free Lie algebra on all ``B(i,j)`` modulo the relation ideal."""

    n: int
    m: int
    gens: list[tuple[int, int]]
    free_rank: int
    ideal: Echelon
    basis_words: list[Word]

    @property
    def ideal_rank(self) -> int:
        return len(self.ideal)

    @property
    def rank(self) -> int:
        return self.free_rank - self.ideal_rank

    def vector(self, terms: Mapping[Word, int]) -> dict[int, int]:
        index = {w: i for i, w in enumerate(self.basis_words)}
        return {index[w]: c for w, c in terms.items() if c}

    def lift(self, x: KohnoElement) -> dict[Word, int]:
        """Free Lie element (over all generators) representing ``x``'s degree-``m`` part."""
        pos = {g: i + 1 for i, g in enumerate(self.gens)}
        out: dict[Word, int] = {}
        for k, terms in x.comps.items():
            relabel = {i: pos[(i, k)] for i in range(1, k)}
            for w, c in terms.items():
                if len(w) == self.m:
                    out[tuple(relabel[a] for a in w)] = c
        return out

    def equivalent(self, free_terms: Mapping[Word, int], x: KohnoElement) -> bool:
        """Whether a free Lie element and a normal-form element agree modulo the ideal."""
        diff = defaultdict(int, free_terms)
        for w, c in self.lift(x).items():
            diff[w] -= c
        return self.ideal.contains(self.vector(diff))

    def normal_form_basis_is_basis(self) -> bool:
        """Whether the component Lyndon bases map bijectively onto a basis of the quotient."""
        E = Echelon()
        E.rows = dict(self.ideal.rows)
        count = 0
        for k in range(2, self.n + 1):
            for w in lyndon_words(k - 1, self.m):
                x = KohnoElement(self.n, {k: {w: 1}})
                if not E.add(self.vector(self.lift(x))):
                    return False
                count += 1
        return count == self.rank

    def generator_index(self, i: int, j: int) -> int:
        return self.gens.index((i, j)) + 1


def presentation_oracle(n: int, m: int, budget: tuple[int, int] = (4, 4)) -> PresentationOracle:
    """Rank of ``gr_m(P_n)`` computed from the raw presentation.

    The ideal's degree-``d`` part is spanned by brackets of generators with a
    spanning set of its degree ``d-1`` part, starting from the relation
    elements in degree 2.
    """
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    if n > budget[0] or m > budget[1]:
        raise BudgetExceeded(f"presentation oracle budget is n<={budget[0]}, m<={budget[1]}")
    gens = sorted(itertools.combinations(range(1, n + 1), 2), key=lambda p: (p[1], p[0]))
    pos = {g: i + 1 for i, g in enumerate(gens)}
    N = len(gens)
    layer: list[dict[Word, int]] = []
    for _family, _idx, lhs, rhs in relation_instances(n):
        r = bracket_terms({(pos[lhs],): 1}, {(pos[p],): 1 for p in rhs})
        if r:
            layer.append(r)
    words = list(lyndon_words(N, m))
    index = {w: i for i, w in enumerate(words)}
    ideal = Echelon()
    if m >= 2:
        for d in range(2, m + 1):
            if d > 2:
                layer = [bracket_terms({(g,): 1}, v) for g in range(1, N + 1) for v in layer]
            E = Echelon()
            idx_d = {w: i for i, w in enumerate(lyndon_words(N, d))}
            kept = []
            for v in layer:
                if E.add({idx_d[w]: c for w, c in v.items() if c}):
                    kept.append(v)
            layer = kept
        for v in layer:
            ideal.add({index[w]: c for w, c in v.items()})
    return PresentationOracle(n, m, gens, len(words), ideal, words)


# -- the cabling map on Lie algebras ---------------------------------------


def theta_pairs(n: int, q: int) -> list[tuple[int, int]]:
    """Index pairs ``1 <= i <= n-q+1 < j <= n+1`` of the generators in the image of ``y_q``."""
    return [(i, j) for j in range(n - q + 2, n + 2) for i in range(1, n - q + 2)]


@lru_cache(maxsize=None)
def gr_theta_generator(n: int, q: int) -> KohnoElement:
    if not 1 <= q <= n:
        raise IndexError(f"y{q} invalid at rank {n}")
    return kohno_sum(theta_pairs(n, q), n + 1)


@lru_cache(maxsize=None)
def _gr_theta_basis(n: int, w: Word) -> KohnoElement:
    if len(w) == 1:
        return gr_theta_generator(n, w[0])
    u, v = standard_factorization(w)
    return kohno_bracket(_gr_theta_basis(n, u), _gr_theta_basis(n, v))


def gr_theta(n: int, e: LieElement) -> KohnoElement:
    """Image of ``e`` in ``L[y_1..y_n]`` under the graded cabling map into ``gr(P_{n+1})``."""
    if e.alphabet.rank != n:
        raise ValueError(f"element over rank {e.alphabet.rank}, expected {n}")
    out = KohnoElement.zero(n + 1)
    for w, c in e.terms.items():
        out = out + c * _gr_theta_basis(n, w)
    return out


@dataclass
class ThetaCertificate:
    n: int
    m: int
    matrix: list[list[int]]
    rank: int
    elementary_divisors: list[int]
    witt_rank: int

    @property
    def injective(self) -> bool:
        return self.rank == self.witt_rank

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "rows": len(self.matrix),
            "cols": len(self.matrix[0]) if self.matrix else kohno_rank(self.n + 1, self.m),
            "rank": self.rank,
            "witt_rank": self.witt_rank,
            "injective": self.injective,
            "elementary_divisors": self.elementary_divisors,
            "matrix": self.matrix,
        }


def gr_theta_matrix(n: int, m: int, budget: tuple[int, int] = (5, 6)) -> ThetaCertificate:
    """Matrix of ``gr(theta_n)`` in degree ``m`` (rows: Lyndon basis of the source)."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if n > budget[0] or m > budget[1]:
        raise BudgetExceeded(f"theta matrix budget is n<={budget[0]}, m<={budget[1]}")
    rows = [_gr_theta_basis(n, w).coordinates(m) for w in lyndon_words(n, m)]
    S = smith_normal_form(rows, transforms=False)
    return ThetaCertificate(n, m, rows, S.rank, S.invariant_factors, witt_rank(n, m))


# -- the worked degree-four example ----------------------------------------


@dataclass
class DeltaReport:
    image: KohnoElement
    t1: KohnoElement
    t2: KohnoElement
    delta: KohnoElement
    coefficients: tuple[int, int]
    rank: int
    elementary_divisors: list[int]

    @property
    def passed(self) -> bool:
        return not self.delta.is_zero() and self.rank == 3

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        c1, c2 = self.coefficients
        return f"{status} (coefficients {c1}, {c2}; independence rank {self.rank})"

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "coefficients": list(self.coefficients),
            "independence_rank": self.rank,
            "elementary_divisors": self.elementary_divisors,
            "image": str(self.image),
            "t1": str(self.t1),
            "t2": str(self.t2),
            "delta": str(self.delta),
        }


def delta_example_check(coefficients: tuple[int, int] = (-1, 2)) -> DeltaReport:
    """Decompose the image of ``[[[y1,y2],y3],y2]`` against two explicit brackets.

    With ``g1 = B(1,4)+B(2,4)+B(3,4)``, ``g2 = B(3,4)``, ``g3 = B(2,4)+B(3,4)``,
    ``T1 = [[[g1,g2],g3],g2]`` and ``T2 = [[[g1,g3],g2],g2]``, the remainder
    ``delta = E - c1*T1 - c2*T2`` is required to be nonzero and independent of
    ``T1`` and ``T2`` over the rationals.
    """
    Y = Alphabet("y", 3)
    y = [None] + [LieElement.generator(Y, i) for i in (1, 2, 3)]
    E = gr_theta(3, lie_bracket(lie_bracket(lie_bracket(y[1], y[2]), y[3]), y[2]))
    g1 = kohno_sum([(1, 4), (2, 4), (3, 4)], 4)
    g2 = kohno_generator(3, 4, 4)
    g3 = kohno_sum([(2, 4), (3, 4)], 4)
    br = kohno_bracket
    T1 = br(br(br(g1, g2), g3), g2)
    T2 = br(br(br(g1, g3), g2), g2)
    c1, c2 = coefficients
    delta = E - c1 * T1 - c2 * T2
    rows = [v.coordinates(4) for v in (T1, T2, delta)]
    S = smith_normal_form(rows, transforms=False)
    return DeltaReport(E, T1, T2, delta, (c1, c2), matrix_rank(rows), S.invariant_factors)


# -- derivation representation ---------------------------------------------


class RelationFailure(AssertionError):
    def __init__(self, family: int, indices: tuple, residue: DerivationTable):
        super().__init__(f"relation family {family} fails at {indices}")
        self.family = family
        self.indices = indices
        self.residue = residue


def default_assignment(n: int, include_last: bool = True) -> dict[tuple[int, int], DerivationTable]:
    """Derivations of ``L[x_1..x_n]`` attached to the ``B(i,j)``.

    For ``j <= n``: ``x_i -> [x_i, x_j]``, ``x_j -> [x_j, x_i]``, other
    generators to zero.  With ``include_last``, ``B(i, n+1)`` acts as the
    inner derivation ``ad(x_i)``.
    """
    X = Alphabet("x", n)
    x = [None] + [LieElement.generator(X, i) for i in range(1, n + 1)]
    out = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        imgs = [LieElement.zero(X)] * n
        imgs[i - 1] = x[i].bracket(x[j])
        imgs[j - 1] = x[j].bracket(x[i])
        out[(i, j)] = DerivationTable(X, tuple(imgs))
    if include_last:
        for i in range(1, n + 1):
            out[(i, n + 1)] = DerivationTable.ad(x[i])
    return out


@dataclass
class DerivationRepresentation:
    n: int
    assignment: dict[tuple[int, int], DerivationTable]
    checked: list[tuple[int, tuple]] = field(default_factory=list)

    def generator_image(self, q: int) -> DerivationTable:
        X = Alphabet("x", self.n)
        out = DerivationTable.zero(X)
        for p in theta_pairs(self.n, q):
            if p not in self.assignment:
                raise KeyError(f"no derivation assigned to B{p}")
            out = out + self.assignment[p]
        return out

    def evaluate(self, e: LieElement) -> DerivationTable:
        """Image of ``e`` in ``L[y_1..y_n]`` under Ad composed with ``gr(theta_n)``."""
        memo: dict[Word, DerivationTable] = {}

        def on_basis(w: Word) -> DerivationTable:
            if w not in memo:
                if len(w) == 1:
                    memo[w] = self.generator_image(w[0])
                else:
                    u, v = standard_factorization(w)
                    memo[w] = on_basis(u).commutator(on_basis(v))
            return memo[w]

        out = DerivationTable.zero(Alphabet("x", self.n))
        for w, c in e.terms.items():
            out = out + c * on_basis(w)
        return out

    def injectivity_rank(self, m: int) -> tuple[int, int]:
        """(rank of the degree-``m`` matrix, rank of ``L_m[y_1..y_n]``)."""
        Y = Alphabet("y", self.n)
        target = lyndon_words(self.n, m + 1)
        rows = []
        for w in lyndon_words(self.n, m):
            D = self.evaluate(LieElement(Y, {w: 1}))
            rows.append([img.terms.get(t, 0) for img in D.images for t in target])
        rank = smith_normal_form(rows, transforms=False).rank if rows else 0
        return rank, witt_rank(self.n, m)


def derivation_rep(
    n: int,
    assignment: Mapping[tuple[int, int], DerivationTable] | None = None,
) -> DerivationRepresentation:
    """Validate that an assignment ``B(i,j) -> derivation`` respects the relations.

    Every relation instance whose generators all have assigned derivations is
    evaluated as a commutator of derivations on ``x_1..x_n``; a nonzero
    residue raises :class:`RelationFailure`.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    assignment = dict(default_assignment(n) if assignment is None else assignment)
    checked = []
    for family, idx, lhs, rhs in relation_instances(n + 1):
        if lhs not in assignment or any(p not in assignment for p in rhs):
            continue
        right = assignment[rhs[0]]
        for p in rhs[1:]:
            right = right + assignment[p]
        residue = assignment[lhs].commutator(right)
        if not residue.is_zero():
            raise RelationFailure(family, idx, residue)
        checked.append((family, idx))
    return DerivationRepresentation(n, assignment, checked)
