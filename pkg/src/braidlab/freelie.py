"""Free Lie algebras over the integers in the Lyndon basis.

A basis element is identified with its Lyndon word (a tuple of 1-based
generator indices); the element it stands for is the standard bracketing
obtained by splitting off the longest proper Lyndon suffix.  Brackets of two
basis elements are rewritten into the basis with antisymmetry and Jacobi
only, so all coefficients stay integral.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Alphabet",
    "LieElement",
    "Bracket",
    "Combination",
    "DerivationTable",
    "is_lyndon",
    "lyndon_words",
    "standard_factorization",
    "lyndon_basis",
    "witt_rank",
    "lie_normal_form",
    "lie_bracket",
    "lie_to_associative",
    "apply_derivation",
    "substitute",
    "left_normed",
]

Word = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Named, ordered set of generators ``1..rank``.

    ``labels`` overrides the default rendering ``f"{name}{i}"``.
    """

    name: str
    rank: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if self.labels is not None and len(self.labels) != self.rank:
            raise ValueError("one label per generator")

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i - 1]
        return f"{self.name}{i}"


class AlphabetMismatch(ValueError):
    pass


# -- Lyndon words -----------------------------------------------------------


def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return len(w) > 0 and all(w < w[k:] for k in range(1, len(w)))


@lru_cache(maxsize=None)
def lyndon_words(r: int, m: int) -> tuple[Word, ...]:
    """All Lyndon words of length ``m`` over ``1..r`` in lexicographic order (Duval)."""
    if r < 1 or m < 1:
        return ()
    out = []
    w = [0]
    while w:
        if len(w) == m:
            out.append(tuple(x + 1 for x in w))
        k = len(w)
        while len(w) < m:
            w.append(w[len(w) - k])
        while w and w[-1] == r - 1:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def standard_factorization(w: Word) -> tuple[Word, Word]:
    """Split a Lyndon word of length >= 2 as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("letters have no factorization")
    for k in range(1, len(w)):
        if is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise AssertionError("unreachable for Lyndon input")


def witt_rank(r: int, m: int) -> int:
    """Rank of the degree-``m`` part of the free Lie algebra on ``r`` generators."""
    if r < 0 or m < 1:
        raise ValueError("need r >= 0 and m >= 1")
    total = 0
    for d in range(1, m + 1):
        if m % d == 0:
            total += _mobius(d) * r ** (m // d)
    return total // m


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


# -- elements ---------------------------------------------------------------


class LieElement:
    """Integer combination of Lyndon basis brackets over an :class:`Alphabet`."""

    __slots__ = ("alphabet", "terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, int] | None = None):
        self.alphabet = alphabet
        self.terms: dict[Word, int] = {w: c for w, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def zero(cls, alphabet: Alphabet) -> LieElement:
        return cls(alphabet)

    @classmethod
    def generator(cls, alphabet: Alphabet, i: int) -> LieElement:
        if not 1 <= i <= alphabet.rank:
            raise IndexError(f"generator {i} outside alphabet of rank {alphabet.rank}")
        return cls(alphabet, {(i,): 1})

    @classmethod
    def basis(cls, alphabet: Alphabet, word: Sequence[int]) -> LieElement:
        word = tuple(word)
        if not is_lyndon(word) or not all(1 <= x <= alphabet.rank for x in word):
            raise ValueError(f"{word} is not a Lyndon word over {alphabet}")
        return cls(alphabet, {word: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def homogeneous_part(self, m: int) -> LieElement:
        return LieElement(self.alphabet, {w: c for w, c in self.terms.items() if len(w) == m})

    def _check(self, other: LieElement) -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")

    def __add__(self, other: LieElement) -> LieElement:
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return LieElement(self.alphabet, out)

    def __sub__(self, other: LieElement) -> LieElement:
        return self + (-other)

    def __neg__(self) -> LieElement:
        return LieElement(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __rmul__(self, k: int) -> LieElement:
        return LieElement(self.alphabet, {w: k * c for w, c in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self.terms.items())))
        return self._hash

    def bracket(self, other: LieElement) -> LieElement:
        return lie_bracket(self, other)

    def sorted_terms(self) -> list[tuple[Word, int]]:
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0]))

    def __str__(self) -> str:
        return format_terms(self.sorted_terms(), self.alphabet)

    def __repr__(self) -> str:
        return f"LieElement({self})"


def bracket_string(w: Word, alphabet: Alphabet) -> str:
    if len(w) == 1:
        return alphabet.label(w[0])
    u, v = standard_factorization(w)
    return f"[{bracket_string(u, alphabet)},{bracket_string(v, alphabet)}]"


def format_terms(terms: Iterable[tuple[Word, int]], alphabet: Alphabet) -> str:
    parts = []
    for w, c in terms:
        body = bracket_string(w, alphabet)
        if c == 1:
            parts.append(f"+{body}")
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{c:+d}*{body}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


# -- bracket rewriting ------------------------------------------------------


def _add_into(acc: dict[Word, int], terms: Mapping[Word, int], k: int = 1) -> None:
    for w, c in terms.items():
        acc[w] += k * c


@lru_cache(maxsize=None)
def _bracket_words(u: Word, v: Word) -> Mapping[Word, int]:
    # [b(u), b(v)] in the Lyndon basis; frozen dict semantics (never mutate results)
    if u == v:
        return {}
    if u > v:
        return {w: -c for w, c in _bracket_words(v, u).items()}
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return {u + v: 1}
    u1, u2 = standard_factorization(u)
    # [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]]
    acc: dict[Word, int] = defaultdict(int)
    for w, c in _bracket_words(u1, v).items():
        _add_into(acc, _bracket_words(w, u2), c)
    for w, c in _bracket_words(u2, v).items():
        _add_into(acc, _bracket_words(u1, w), c)
    return {w: c for w, c in acc.items() if c}


def bracket_terms(a: Mapping[Word, int], b: Mapping[Word, int]) -> dict[Word, int]:
    acc: dict[Word, int] = defaultdict(int)
    for u, cu in a.items():
        for v, cv in b.items():
            _add_into(acc, _bracket_words(u, v), cu * cv)
    return {w: c for w, c in acc.items() if c}


def lie_bracket(a: LieElement, b: LieElement) -> LieElement:
    a._check(b)
    return LieElement(a.alphabet, bracket_terms(a.terms, b.terms))


def left_normed(alphabet: Alphabet, word: Sequence[int]) -> LieElement:
    """``[[..[y_{w1}, y_{w2}], ..], y_{wk}]`` in the Lyndon basis."""
    terms = _left_normed_terms(tuple(word))
    return LieElement(alphabet, terms)


@lru_cache(maxsize=None)
def _left_normed_terms(word: Word) -> Mapping[Word, int]:
    if len(word) == 1:
        return {word: 1}
    return bracket_terms(_left_normed_terms(word[:-1]), {(word[-1],): 1})


# -- expression trees -------------------------------------------------------


@dataclass(frozen=True)
class Bracket:
    left: "LieExpr"
    right: "LieExpr"


@dataclass(frozen=True)
class Combination:
    terms: tuple[tuple[int, "LieExpr"], ...]


LieExpr = Union[int, Bracket, Combination, LieElement]


def lie_normal_form(alphabet: Alphabet, expr: LieExpr) -> LieElement:
    """Evaluate a bracket expression tree into the Lyndon basis.

    Leaves are generator indices (ints) or :class:`LieElement` values;
    interior nodes are :class:`Bracket` and :class:`Combination`.
    """
    if isinstance(expr, bool):
        raise TypeError("malformed Lie expression")
    if isinstance(expr, int):
        return LieElement.generator(alphabet, expr)
    if isinstance(expr, LieElement):
        if expr.alphabet != alphabet:
            raise AlphabetMismatch("leaf over a different alphabet")
        return expr
    if isinstance(expr, Bracket):
        return lie_bracket(lie_normal_form(alphabet, expr.left), lie_normal_form(alphabet, expr.right))
    if isinstance(expr, Combination):
        out = LieElement.zero(alphabet)
        for c, sub in expr.terms:
            if not isinstance(c, int):
                raise TypeError("coefficients must be integers")
            out = out + c * lie_normal_form(alphabet, sub)
        return out
    raise TypeError(f"malformed Lie expression: {expr!r}")


# -- associative model ------------------------------------------------------


@lru_cache(maxsize=None)
def _assoc_terms(w: Word) -> Mapping[Word, int]:
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    pu, pv = _assoc_terms(u), _assoc_terms(v)
    acc: dict[Word, int] = defaultdict(int)
    for x, cx in pu.items():
        for y, cy in pv.items():
            acc[x + y] += cx * cy
            acc[y + x] -= cx * cy
    return {k: c for k, c in acc.items() if c}


def lie_to_associative(e: LieElement, D: int):
    """Expand brackets as ``xy - yx`` into an :class:`~braidlab.words.NCPolynomial`."""
    from .words import NCPolynomial

    if e.terms and max(e.degrees()) > D:
        raise ValueError(f"element of degree {max(e.degrees())} exceeds bound {D}")
    acc: dict[Word, int] = defaultdict(int)
    for w, c in e.terms.items():
        _add_into(acc, _assoc_terms(w), c)
    return NCPolynomial(D, acc)


# -- derivations ------------------------------------------------------------


@dataclass(frozen=True)
class DerivationTable:
    """Derivation of a free Lie algebra, fixed by the images of the generators."""

    alphabet: Alphabet
    images: tuple[LieElement, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.alphabet.rank:
            raise ValueError("one image per generator")
        for img in self.images:
            if img.alphabet != self.alphabet:
                raise AlphabetMismatch("derivation image over a different alphabet")

    @classmethod
    def zero(cls, alphabet: Alphabet) -> DerivationTable:
        return cls(alphabet, tuple(LieElement.zero(alphabet) for _ in range(alphabet.rank)))

    @classmethod
    def ad(cls, x: LieElement) -> DerivationTable:
        """Inner derivation ``y -> [x, y]``."""
        A = x.alphabet
        return cls(A, tuple(lie_bracket(x, LieElement.generator(A, i)) for i in range(1, A.rank + 1)))

    def __call__(self, e: LieElement) -> LieElement:
        return apply_derivation(self, e)

    def __add__(self, other: DerivationTable) -> DerivationTable:
        return DerivationTable(self.alphabet, tuple(a + b for a, b in zip(self.images, other.images)))

    def __sub__(self, other: DerivationTable) -> DerivationTable:
        return DerivationTable(self.alphabet, tuple(a - b for a, b in zip(self.images, other.images)))

    def __rmul__(self, k: int) -> DerivationTable:
        return DerivationTable(self.alphabet, tuple(k * a for a in self.images))

    def commutator(self, other: DerivationTable) -> DerivationTable:
        """``[D1, D2] = D1 D2 - D2 D1``, again a derivation."""
        return DerivationTable(
            self.alphabet,
            tuple(self(b) - other(a) for a, b in zip(self.images, other.images)),
        )

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)


def apply_derivation(D: DerivationTable, e: LieElement) -> LieElement:
    if D.alphabet != e.alphabet:
        raise AlphabetMismatch("derivation and element over different alphabets")
    memo: dict[Word, dict[Word, int]] = {}

    def on_basis(w: Word) -> dict[Word, int]:
        if w in memo:
            return memo[w]
        if len(w) == 1:
            res = dict(D.images[w[0] - 1].terms)
        else:
            u, v = standard_factorization(w)
            res = defaultdict(int)
            _add_into(res, bracket_terms(on_basis(u), {v: 1}))
            _add_into(res, bracket_terms({u: 1}, on_basis(v)))
        memo[w] = res
        return res

    acc: dict[Word, int] = defaultdict(int)
    for w, c in e.terms.items():
        _add_into(acc, on_basis(w), c)
    return LieElement(D.alphabet, acc)


def substitute(e: LieElement, target: Alphabet, images: Sequence[int | None]) -> LieElement:
    """Lie map induced by sending ``y_q`` to ``y_{images[q-1]}`` (``None`` sends it to zero)."""
    if len(images) != e.alphabet.rank:
        raise ValueError(f"need {e.alphabet.rank} images, got {len(images)}")
    for x in images:
        if x is not None and not 1 <= x <= target.rank:
            raise IndexError(f"image {x} outside alphabet of rank {target.rank}")
    acc: dict[Word, int] = defaultdict(int)
    for w, c in e.terms.items():
        _add_into(acc, _substitute_word(w, tuple(images)), c)
    return LieElement(target, acc)


@lru_cache(maxsize=None)
def _substitute_word(w: Word, images: tuple[int | None, ...]) -> Mapping[Word, int]:
    if len(w) == 1:
        x = images[w[0] - 1]
        return {} if x is None else {(x,): 1}
    u, v = standard_factorization(w)
    a = _substitute_word(u, images)
    if not a:
        return {}
    return bracket_terms(a, _substitute_word(v, images))


def lyndon_basis(r: int, m: int, alphabet: Alphabet | None = None) -> list[LieElement]:
    """Standard bracketings of the Lyndon words of length ``m`` over ``r`` letters."""
    if r < 1 or m < 1:
        raise ValueError("need r >= 1 and m >= 1")
    A = alphabet or Alphabet("y", r)
    return [LieElement(A, {w: 1}) for w in lyndon_words(r, m)]
