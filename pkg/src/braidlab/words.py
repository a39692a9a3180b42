"""Free groups: reduced words, homomorphisms, commutators and the Magnus expansion.

Words are stored run-length encoded as ``(generator, exponent)`` pairs with
1-based generator indices.  The Magnus expansion sends ``g_i`` to ``1 + a_i``
inside truncated noncommutative power series over the integers; its lowest
nonconstant degree detects the position of a word in the lower central
series, and the Dynkin map turns that leading term back into a Lie element.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping

from .freelie import Alphabet, AlphabetMismatch, LieElement, left_normed

__all__ = [
    "FreeWord",
    "GroupHom",
    "NCPolynomial",
    "reduce",
    "multiply",
    "invert",
    "commutator",
    "apply_hom",
    "magnus_expand",
    "lcs_degree",
    "gr_leading_term",
]


def _reduce_letters(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for g, e in letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced element of the free group on ``alphabet``.

    Use :func:`reduce` (or :meth:`from_letters`) to build a word from an
    arbitrary letter sequence; the constructor only accepts reduced input.
    """

    alphabet: Alphabet
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for g, e in self.letters:
            if not 1 <= g <= self.alphabet.rank:
                raise IndexError(f"generator {g} outside alphabet of rank {self.alphabet.rank}")
            if e == 0 or g == prev:
                raise ValueError("letters are not freely reduced")
            prev = g

    @classmethod
    def identity(cls, alphabet: Alphabet) -> FreeWord:
        return cls(alphabet, ())

    @classmethod
    def generator(cls, alphabet: Alphabet, i: int, power: int = 1) -> FreeWord:
        return reduce(alphabet, [(i, power)])

    @classmethod
    def from_letters(cls, alphabet: Alphabet, letters: Iterable[tuple[int, int]]) -> FreeWord:
        return reduce(alphabet, letters)

    @classmethod
    def from_flat(cls, alphabet: Alphabet, flat: Iterable[int]) -> FreeWord:
        """Build from a sequence of signed generator indices (``-2`` is ``g2^-1``)."""
        return reduce(alphabet, [(abs(x), 1 if x > 0 else -1) for x in flat])

    def flat(self) -> tuple[int, ...]:
        out: list[int] = []
        for g, e in self.letters:
            out.extend([g if e > 0 else -g] * abs(e))
        return tuple(out)

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        return multiply(self, other)

    def __invert__(self) -> FreeWord:
        return invert(self)

    def __pow__(self, k: int) -> FreeWord:
        if k < 0:
            return invert(self) ** (-k)
        out = FreeWord.identity(self.alphabet)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        name = self.alphabet.name
        return " ".join(f"{name}{g}" if e == 1 else f"{name}{g}^{e}" for g, e in self.letters)


def reduce(alphabet: Alphabet, letters: Iterable[tuple[int, int]]) -> FreeWord:
    """Freely reduce a raw ``(generator, exponent)`` sequence."""
    letters = list(letters)
    for g, _ in letters:
        if not 1 <= g <= alphabet.rank:
            raise IndexError(f"generator {g} outside alphabet of rank {alphabet.rank}")
    return FreeWord(alphabet, _reduce_letters(letters))


def _check_same(u: FreeWord, v: FreeWord) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet} vs {v.alphabet}")


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    _check_same(u, v)
    return FreeWord(u.alphabet, _reduce_letters(u.letters + v.letters))


def invert(w: FreeWord) -> FreeWord:
    return FreeWord(w.alphabet, tuple((g, -e) for g, e in reversed(w.letters)))


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """``u v u^-1 v^-1``."""
    _check_same(u, v)
    return FreeWord(u.alphabet, _reduce_letters(u.letters + v.letters + invert(u).letters + invert(v).letters))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism out of a free group, given by the images of its generators."""

    source: Alphabet
    target: Alphabet
    images: tuple[FreeWord, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.rank:
            raise ValueError(f"need {self.source.rank} images, got {len(self.images)}")
        for w in self.images:
            if w.alphabet != self.target:
                raise AlphabetMismatch("image outside target alphabet")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> GroupHom:
        return cls(alphabet, alphabet, tuple(FreeWord.generator(alphabet, i) for i in range(1, alphabet.rank + 1)))

    def __call__(self, w: FreeWord) -> FreeWord:
        return apply_hom(self, w)

    def compose(self, inner: GroupHom) -> GroupHom:
        """``self ∘ inner``."""
        return GroupHom(inner.source, self.target, tuple(self(w) for w in inner.images))


def apply_hom(h: GroupHom, w: FreeWord) -> FreeWord:
    if w.alphabet != h.source:
        raise AlphabetMismatch(f"word over {w.alphabet}, hom from {h.source}")
    out: list[tuple[int, int]] = []
    inverses: dict[int, tuple[tuple[int, int], ...]] = {}
    for g, e in w.letters:
        img = h.images[g - 1].letters
        if e < 0:
            if g not in inverses:
                inverses[g] = invert(h.images[g - 1]).letters
            img = inverses[g]
        out.extend(img * abs(e))
    return FreeWord(h.target, _reduce_letters(out))


@dataclass(frozen=True)
class NCPolynomial:
    """Truncated polynomial in noncommuting ``a_1 .. a_r`` with integer coefficients.

    ``terms`` maps words (tuples of 1-based symbol indices, ``()`` is the
    constant term) to nonzero integers; nothing above ``degree`` is stored.
    """

    degree: int
    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {w: c for w, c in self.terms.items() if c and len(w) <= self.degree}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def one(cls, degree: int) -> NCPolynomial:
        return cls(degree, {(): 1})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: NCPolynomial) -> NCPolynomial:
        out = defaultdict(int, self.terms)
        for w, c in other.terms.items():
            out[w] += c
        return NCPolynomial(min(self.degree, other.degree), out)

    def __neg__(self) -> NCPolynomial:
        return NCPolynomial(self.degree, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: NCPolynomial) -> NCPolynomial:
        return self + (-other)

    def __rmul__(self, k: int) -> NCPolynomial:
        return NCPolynomial(self.degree, {w: k * c for w, c in self.terms.items()})

    def __mul__(self, other: NCPolynomial) -> NCPolynomial:
        D = min(self.degree, other.degree)
        out: dict[tuple[int, ...], int] = defaultdict(int)
        for w1, c1 in self.terms.items():
            room = D - len(w1)
            for w2, c2 in other.terms.items():
                if len(w2) <= room:
                    out[w1 + w2] += c1 * c2
        return NCPolynomial(D, out)

    def bracket(self, other: NCPolynomial) -> NCPolynomial:
        return self * other - other * self

    def homogeneous(self, m: int) -> dict[tuple[int, ...], int]:
        return {w: c for w, c in self.terms.items() if len(w) == m}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = "".join(f"a{i}" for i in w) or "1"
            if not w:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{mono}")
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c:+d}*{mono}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _power_series(g: int, e: int, D: int) -> NCPolynomial:
    # (1 + a)^e, truncated; negative e uses the binomial series of (1 + a)^-k
    if e > 0:
        coeffs = [comb(e, k) for k in range(min(e, D) + 1)]
    else:
        k0 = -e
        coeffs = [(-1) ** k * comb(k0 + k - 1, k) for k in range(D + 1)]
    return NCPolynomial(D, {(g,) * k: c for k, c in enumerate(coeffs)})


def magnus_expand(w: FreeWord, D: int) -> NCPolynomial:
    """Magnus expansion of ``w`` truncated above degree ``D``."""
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    out = NCPolynomial.one(D)
    for g, e in w.letters:
        out = out * _power_series(g, e, D)
    return out


def lcs_degree(w: FreeWord) -> int | None:
    """Lower central series degree of ``w``; ``None`` for the identity.

    For a nontrivial word this is the smallest ``m`` such that the Magnus
    expansion has a nonzero term in degree ``m``.
    """
    if w.is_identity():
        return None
    D = 2
    while True:
        poly = magnus_expand(w, D)
        degrees = [len(t) for t in poly.terms if t]
        if degrees:
            return min(degrees)
        D *= 2


def gr_leading_term(w: FreeWord) -> LieElement:
    """Image of ``w`` in ``gr_m`` of the free group, written in the Lyndon basis.

    The degree-``m`` part of the Magnus expansion is a Lie polynomial; the
    Dynkin map sends it to ``m`` times the corresponding Lie element.
    """
    m = lcs_degree(w)
    if m is None:
        raise ValueError("identity has no leading term")
    lead = magnus_expand(w, m).homogeneous(m)
    total = LieElement.zero(w.alphabet)
    for word, c in lead.items():
        total = total + c * left_normed(w.alphabet, word)
    out = {}
    for key, c in total.terms.items():
        q, r = divmod(c, m)
        if r:
            raise ArithmeticError(f"Dynkin image of {w} not divisible by {m}")
        out[key] = q
    return LieElement(w.alphabet, out)

