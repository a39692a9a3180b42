"""Braid words on crossing generators, the Artin action, and strand operations.

A crossing word is a tuple of ``(i, sign)`` with ``1 <= i < n``.  Braid
equality is decided with Artin's faithful action on the free group
``F[x_1..x_n]``: ``s_i`` sends ``x_i -> x_i x_{i+1} x_i^-1`` and
``x_{i+1} -> x_i``.  Strand deletion and strand doubling are done directly on
crossing words by tracking the position of the affected strand; together
they give the face and degeneracy maps of the simplicial group of pure braid
groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .freelie import Alphabet
from .words import FreeWord, GroupHom

__all__ = [
    "SigmaBraid",
    "PureBraid",
    "NotPure",
    "permutation",
    "a_generator",
    "artin_action",
    "braid_is_trivial",
    "braids_equal",
    "delete_strand",
    "double_strand",
    "linking_matrix",
    "theta",
    "theta_generator",
    "is_brunnian",
    "is_qbrunnian",
]

Crossing = tuple[int, int]


class NotPure(ValueError):
    pass


@dataclass(frozen=True)
class SigmaBraid:
    n: int
    word: tuple[Crossing, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a braid needs at least one strand")
        object.__setattr__(self, "word", tuple((int(i), int(e)) for i, e in self.word))
        for i, e in self.word:
            if not 1 <= i < self.n:
                raise IndexError(f"crossing s{i} invalid on {self.n} strands")
            if e not in (1, -1):
                raise ValueError("crossing signs must be +1 or -1")

    @classmethod
    def identity(cls, n: int):
        return cls(n, ())

    def _same_n(self, other: SigmaBraid) -> None:
        if self.n != other.n:
            raise ValueError(f"strand counts differ: {self.n} vs {other.n}")

    def __mul__(self, other: SigmaBraid) -> SigmaBraid:
        self._same_n(other)
        cls = PureBraid if isinstance(self, PureBraid) and isinstance(other, PureBraid) else SigmaBraid
        return cls(self.n, self.word + other.word)

    def inverse(self):
        return type(self)(self.n, tuple((i, -e) for i, e in reversed(self.word)))

    __invert__ = inverse

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        return type(self)(self.n, base.word * abs(k))

    def __len__(self) -> int:
        return len(self.word)

    def permutation(self) -> tuple[int, ...]:
        return permutation(self)

    def is_pure(self) -> bool:
        return permutation(self) == tuple(range(1, self.n + 1))

    def as_pure(self) -> PureBraid:
        return PureBraid(self.n, self.word)

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.word)


class PureBraid(SigmaBraid):
    """A braid word whose induced permutation is trivial (checked on construction)."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_pure():
            raise NotPure(f"braid {self} on {self.n} strands is not pure")


def commutator(a: SigmaBraid, b: SigmaBraid) -> SigmaBraid:
    return a * b * a.inverse() * b.inverse()


def permutation(b: SigmaBraid) -> tuple[int, ...]:
    """Final position of each strand: entry ``k-1`` is where strand ``k`` ends."""
    at = list(range(1, b.n + 1))  # at[pos] = strand occupying pos
    for i, _ in b.word:
        at[i - 1], at[i] = at[i], at[i - 1]
    ends = [0] * b.n
    for pos, strand in enumerate(at, start=1):
        ends[strand - 1] = pos
    return tuple(ends)


def a_generator(r: int, s: int, n: int) -> PureBraid:
    """Artin generator ``A_{r,s}``: ``(s_{s-1}..s_{r+1}) s_r^2 (s_{r+1}^-1..s_{s-1}^-1)``."""
    if not 1 <= r < s <= n:
        raise IndexError(f"A({r},{s}) invalid on {n} strands")
    down = [(k, 1) for k in range(s - 1, r, -1)]
    up = [(k, -1) for k in range(r + 1, s)]
    return PureBraid(n, tuple(down + [(r, 1), (r, 1)] + up))


# -- Artin action -----------------------------------------------------------


def _mul(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    k, lu, m = 0, len(u), min(len(u), len(v))
    while k < m and u[lu - 1 - k] == -v[k]:
        k += 1
    return u[: lu - k] + v[k:]


def _inv(u: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(u))


def _artin_images(n: int, word: Iterable[Crossing]) -> list[tuple[int, ...]]:
    # images of x_1..x_n as flat signed-letter tuples; letters applied as h_w1 ∘ h_w2 ∘ ...
    T = [(j,) for j in range(1, n + 1)]
    for i, e in word:
        a, b = T[i - 1], T[i]
        if e > 0:
            T[i - 1] = _mul(_mul(a, b), _inv(a))
            T[i] = a
        else:
            T[i - 1] = b
            T[i] = _mul(_mul(_inv(b), a), b)
    return T


def artin_action(b: SigmaBraid) -> GroupHom:
    """Automorphism of ``F[x_1..x_n]`` induced by ``b`` (a homomorphism ``B_n -> Aut(F_n)``)."""
    X = Alphabet("x", b.n)
    return GroupHom(X, X, tuple(FreeWord.from_flat(X, img) for img in _artin_images(b.n, b.word)))


def braid_is_trivial(b: SigmaBraid) -> bool:
    return all(img == (j,) for j, img in enumerate(_artin_images(b.n, b.word), start=1))


def braids_equal(a: SigmaBraid, b: SigmaBraid) -> bool:
    a._same_n(b)
    return braid_is_trivial(SigmaBraid(a.n, a.word + b.inverse().word))


# -- strand operations ------------------------------------------------------


def delete_strand(b: SigmaBraid, k: int) -> SigmaBraid:
    """Remove the strand starting at position ``k`` (1-based)."""
    if not 1 <= k <= b.n:
        raise IndexError(f"strand {k} invalid on {b.n} strands")
    if b.n == 1:
        return type(b)(1, ())
    p = k
    out = []
    for i, e in b.word:
        if p == i:
            p = i + 1
        elif p == i + 1:
            p = i
        else:
            out.append((i - 1 if i > p else i, e))
    return type(b)(b.n - 1, tuple(out))


def double_strand(b: SigmaBraid, k: int) -> SigmaBraid:
    """Replace the strand starting at position ``k`` by two parallel copies."""
    if not 1 <= k <= b.n:
        raise IndexError(f"strand {k} invalid on {b.n} strands")
    p = k
    out: list[Crossing] = []
    for i, e in b.word:
        if i + 1 < p:
            out.append((i, e))
        elif i > p:
            out.append((i + 1, e))
        elif i == p:
            out += [(p + 1, e), (p, e)]
            p += 1
        else:
            out += [(p - 1, e), (p, e)]
            p -= 1
    return type(b)(b.n + 1, tuple(out))


def linking_matrix(b: SigmaBraid) -> np.ndarray:
    """Pairwise linking numbers of a pure braid (half the signed crossing counts)."""
    if not b.is_pure():
        raise NotPure("linking numbers need a pure braid")
    counts = np.zeros((b.n, b.n), dtype=np.int64)
    at = list(range(b.n))
    for i, e in b.word:
        s, t = at[i - 1], at[i]
        counts[s, t] += e
        counts[t, s] += e
        at[i - 1], at[i] = t, s
    if (counts % 2).any():
        raise ArithmeticError("odd crossing count between a pair of strands")
    return counts // 2


# -- the cabling embedding --------------------------------------------------


@lru_cache(maxsize=None)
def theta_generator(n: int, q: int) -> PureBraid:
    """Image of ``y_q`` in ``P_{n+1}``: ``S_0^{n-q} S_{q-1} .. S_1 (A_{1,2})``."""
    if not 1 <= q <= n:
        raise IndexError(f"y{q} invalid at rank {n}")
    b: SigmaBraid = a_generator(1, 2, 2)
    for j in range(1, q):
        b = double_strand(b, j + 1)
    for _ in range(n - q):
        b = double_strand(b, 1)
    return b.as_pure()


def theta(n: int, w: FreeWord) -> PureBraid:
    """Evaluate the cabling homomorphism ``F[y_1..y_n] -> P_{n+1}`` on a word."""
    if n < 1:
        raise ValueError("rank must be positive")
    if w.alphabet.rank != n:
        raise ValueError(f"word over rank {w.alphabet.rank}, expected {n}")
    word: list[Crossing] = []
    for g, e in w.letters:
        gen = theta_generator(n, g)
        piece = gen.word if e > 0 else gen.inverse().word
        word.extend(piece * abs(e))
    return PureBraid(n + 1, tuple(word))


def is_brunnian(b: SigmaBraid) -> bool:
    return all(braid_is_trivial(delete_strand(b, k)) for k in range(1, b.n + 1))


def is_qbrunnian(b: SigmaBraid) -> bool:
    """Trivial after deleting any strand except the first."""
    return all(braid_is_trivial(delete_strand(b, k)) for k in range(2, b.n + 1))


def projection_to_p2(b: SigmaBraid, keep: Sequence[int]) -> SigmaBraid:
    """Delete every strand outside the pair ``keep`` (highest index first)."""
    for k in sorted(set(range(1, b.n + 1)) - set(keep), reverse=True):
        b = delete_strand(b, k)
    return b


def projection_gcd(n: int, pair: Sequence[int]) -> int:
    """gcd of the ``A_{1,2}`` exponents of the ``theta(n, y_q)`` projected onto ``pair``."""
    g = 0
    for q in range(1, n + 1):
        image = projection_to_p2(theta_generator(n, q), pair)
        g = gcd(g, int(linking_matrix(image)[0, 1]))
    return g
