"""Simplicial groups at finite level: Milnor's F[S^1] and the pure braid groups AP.

Level ``t`` of F[S^1] is the free group on ``y_1..y_t`` where ``y_q`` names
the simplex ``<0^{t+1-q}, 1^q>`` of the simplicial circle; faces delete a
coordinate and degeneracies repeat one.  Level ``t`` of AP is ``P_{t+1}``
with faces deleting strand ``i+1`` and degeneracies doubling it.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator

from .braid import (
    PureBraid,
    a_generator,
    braid_is_trivial,
    braids_equal,
    delete_strand,
    double_strand,
    theta,
)
from .freelie import Alphabet
from .words import FreeWord, GroupHom, commutator

__all__ = [
    "face_fs1",
    "degeneracy_fs1",
    "SimplicialGroupSpec",
    "FreeCircle",
    "PureBraidAP",
    "instance_fs1",
    "instance_ap",
    "IdentityReport",
    "verify_simplicial_identities",
    "is_moore_cycle",
    "check_boundary_certificate",
    "search_boundary_preimage",
    "theta_simplicial_check",
    "fs1_cycle_seeds",
    "random_moore_cycles",
]


def _y(t: int) -> Alphabet:
    return Alphabet("y", t)


@lru_cache(maxsize=None)
def face_fs1(n: int, i: int) -> GroupHom:
    """``d_i : F_n -> F_{n-1}``; each ``y_q`` goes to ``y_q``, ``y_{q-1}`` or 1."""
    if n < 1 or not 0 <= i <= n:
        raise IndexError(f"face d{i} invalid at level {n}")
    src, dst = _y(n), _y(n - 1)
    images = []
    for q in range(1, n + 1):
        if i >= n + 1 - q:
            target = q - 1
        elif q <= n - 1:
            target = q
        else:
            target = 0
        images.append(FreeWord.generator(dst, target) if target else FreeWord.identity(dst))
    return GroupHom(src, dst, tuple(images))


@lru_cache(maxsize=None)
def degeneracy_fs1(n: int, j: int) -> GroupHom:
    """``s_j : F_n -> F_{n+1}``."""
    if n < 0 or not 0 <= j <= n:
        raise IndexError(f"degeneracy s{j} invalid at level {n}")
    src, dst = _y(n), _y(n + 1)
    images = tuple(FreeWord.generator(dst, q if j <= n - q else q + 1) for q in range(1, n + 1))
    return GroupHom(src, dst, images)


class SimplicialGroupSpec:
    """Interface of a simplicial group given level by level.

    Subclasses realise the group at each level, the faces and degeneracies,
    and a triviality test; equality is ``is_trivial(x * y^-1)``.
    """

    name = "abstract"

    def level_group(self, t: int) -> str:
        raise NotImplementedError

    def generators(self, t: int) -> list:
        raise NotImplementedError

    def identity(self, t: int):
        raise NotImplementedError

    def face(self, t: int, i: int, x):
        raise NotImplementedError

    def degeneracy(self, t: int, j: int, x):
        raise NotImplementedError

    def is_trivial(self, t: int, x) -> bool:
        raise NotImplementedError

    def multiply(self, x, y):
        return x * y

    def inverse(self, x):
        return ~x

    def equal(self, t: int, x, y) -> bool:
        return self.is_trivial(t, self.multiply(x, self.inverse(y)))

    def random_element(self, t: int, rng: random.Random, length: int = 6):
        gens = self.generators(t)
        x = self.identity(t)
        if not gens:
            return x
        for _ in range(rng.randint(1, length)):
            g = rng.choice(gens)
            x = self.multiply(x, g if rng.random() < 0.5 else self.inverse(g))
        return x

    def __repr__(self) -> str:
        return f"<simplicial group {self.name}>"


class FreeCircle(SimplicialGroupSpec):
    """Milnor's construction on the simplicial circle."""

    name = "fs1"

    def level_group(self, t: int) -> str:
        return f"F{t}"

    def rank(self, t: int) -> int:
        return t

    def generators(self, t: int) -> list[FreeWord]:
        return [FreeWord.generator(_y(t), q) for q in range(1, t + 1)]

    def identity(self, t: int) -> FreeWord:
        return FreeWord.identity(_y(t))

    def face(self, t: int, i: int, x: FreeWord) -> FreeWord:
        return face_fs1(t, i)(x)

    def degeneracy(self, t: int, j: int, x: FreeWord) -> FreeWord:
        return degeneracy_fs1(t, j)(x)

    def is_trivial(self, t: int, x: FreeWord) -> bool:
        return x.is_identity()


class PureBraidAP(SimplicialGroupSpec):
    """Pure braid groups with strand deletion and strand doubling."""

    name = "ap"

    def level_group(self, t: int) -> str:
        return f"P{t + 1}"

    def generators(self, t: int) -> list[PureBraid]:
        n = t + 1
        return [a_generator(i, j, n) for i, j in itertools.combinations(range(1, n + 1), 2)]

    def identity(self, t: int) -> PureBraid:
        return PureBraid(t + 1, ())

    def face(self, t: int, i: int, x: PureBraid) -> PureBraid:
        if not 0 <= i <= t:
            raise IndexError(f"face d{i} invalid at level {t}")
        return delete_strand(x, i + 1)

    def degeneracy(self, t: int, j: int, x: PureBraid) -> PureBraid:
        if not 0 <= j <= t:
            raise IndexError(f"degeneracy s{j} invalid at level {t}")
        return double_strand(x, j + 1)

    def inverse(self, x: PureBraid) -> PureBraid:
        return x.inverse()

    def is_trivial(self, t: int, x: PureBraid) -> bool:
        return braid_is_trivial(x)

    def equal(self, t: int, x, y) -> bool:
        return braids_equal(x, y)


def instance_fs1() -> FreeCircle:
    return FreeCircle()


def instance_ap() -> PureBraidAP:
    return PureBraidAP()


# -- identity sweeps --------------------------------------------------------


@dataclass
class IdentityReport:
    instance: str
    max_level: int
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)

    def record(self, name: str, ok: bool, witness: dict[str, Any] | None = None) -> None:
        c = self.counts.setdefault(name, {"pass": 0, "fail": 0})
        c["pass" if ok else "fail"] += 1
        if not ok and witness is not None:
            self.failures.append({"identity": name, **witness})

    @property
    def passed(self) -> bool:
        return not self.failures and all(c["fail"] == 0 for c in self.counts.values())

    @property
    def total(self) -> int:
        return sum(c["pass"] + c["fail"] for c in self.counts.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "max_level": self.max_level,
            "passed": self.passed,
            "counts": self.counts,
            "failures": self.failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _identity_instances(t: int) -> Iterator[tuple[str, tuple[int, int]]]:
    for i, j in itertools.combinations(range(t + 1), 2):
        if t >= 2:
            yield "d_i d_j = d_(j-1) d_i", (i, j)
    for j in range(t + 1):
        for i in range(j + 1):
            yield "s_i s_j = s_(j+1) s_i", (i, j)
    for j in range(t + 1):
        for i in range(t + 2):
            if i < j and t == 0:
                continue
            yield "d_i s_j", (i, j)


def _check_instance(spec: SimplicialGroupSpec, t: int, name: str, i: int, j: int, x) -> bool:
    d, s = spec.face, spec.degeneracy
    if name.startswith("d_i d_j"):
        return spec.equal(t - 2, d(t - 1, i, d(t, j, x)), d(t - 1, j - 1, d(t, i, x)))
    if name.startswith("s_i s_j"):
        return spec.equal(t + 2, s(t + 1, i, s(t, j, x)), s(t + 1, j + 1, s(t, i, x)))
    lhs = d(t + 1, i, s(t, j, x))
    if i < j:
        rhs = s(t - 1, j - 1, d(t, i, x))
    elif i in (j, j + 1):
        rhs = x
    else:
        rhs = s(t - 1, j, d(t, i - 1, x))
    return spec.equal(t, lhs, rhs)


def verify_simplicial_identities(
    spec: SimplicialGroupSpec,
    N: int,
    samples: int = 100,
    seed: int = 0,
    word_length: int = 6,
) -> IdentityReport:
    """Check every simplicial identity on elements of levels ``0..N``.

    Each level contributes its generators (all identity instances) and
    ``samples`` random spot checks: a random element paired with a random
    identity instance.
    """
    if N < 0:
        raise ValueError("level must be nonnegative")
    rng = random.Random(seed)
    report = IdentityReport(spec.name, N)
    for t in range(N + 1):
        instances = list(_identity_instances(t))
        for x in [spec.identity(t)] + spec.generators(t):
            for name, (i, j) in instances:
                ok = _check_instance(spec, t, name, i, j, x)
                report.record(name, ok, None if ok else {"level": t, "indices": [i, j], "element": str(x)})
        for _ in range(samples):
            x = spec.random_element(t, rng, word_length)
            name, (i, j) = rng.choice(instances)
            ok = _check_instance(spec, t, name, i, j, x)
            report.record(name, ok, None if ok else {"level": t, "indices": [i, j], "element": str(x)})
    return report


# -- Moore complex ----------------------------------------------------------


def is_moore_cycle(spec: SimplicialGroupSpec, t: int, x) -> bool:
    """All faces of ``x`` trivial (for AP this is being Brunnian)."""
    if t < 1:
        return spec.is_trivial(t, x)
    return all(spec.is_trivial(t - 1, spec.face(t, i, x)) for i in range(t + 1))


def check_boundary_certificate(spec: SimplicialGroupSpec, t: int, z, w) -> bool:
    """True certifies ``w`` is a Moore boundary: ``d_i z = 1`` for ``i >= 1`` and ``d_0 z = w``."""
    if _level_of(spec, z) not in (None, t + 1) or _level_of(spec, w) not in (None, t):
        raise ValueError("level mismatch between certificate and target")
    if not all(spec.is_trivial(t, spec.face(t + 1, i, z)) for i in range(1, t + 2)):
        return False
    return spec.equal(t, spec.face(t + 1, 0, z), w)


def _level_of(spec: SimplicialGroupSpec, x) -> int | None:
    if isinstance(x, FreeWord):
        return x.alphabet.rank
    if isinstance(x, PureBraid):
        return x.n - 1
    return None


def search_boundary_preimage(spec: SimplicialGroupSpec, t: int, w, max_length: int = 4):
    """Bounded search for ``z`` at level ``t+1`` certifying ``w`` as a boundary.

    Enumerates products of at most ``max_length`` generators and inverses;
    returns the first certificate found or None.  A None result proves nothing.
    """
    gens = spec.generators(t + 1)
    letters = gens + [spec.inverse(g) for g in gens]
    frontier = [spec.identity(t + 1)]
    seen = set()
    for _ in range(max_length + 1):
        nxt = []
        for z in frontier:
            key = str(z)
            if key in seen:
                continue
            seen.add(key)
            if check_boundary_certificate(spec, t, z, w):
                return z
            nxt.extend(spec.multiply(z, g) for g in letters)
        frontier = nxt
    return None


def face_kernel_generators(t: int) -> list[FreeWord]:
    """One element of ``ker d_i`` for each ``i = 0..t`` at level ``t >= 1`` of F[S^1]."""
    A = _y(t)
    y = [None] + [FreeWord.generator(A, q) for q in range(1, t + 1)]
    out = [y[t]]
    for i in range(1, t):
        out.append(y[t + 1 - i] * ~y[t - i])
    out.append(y[1])
    return out


def fs1_cycle_seeds(t: int) -> list[FreeWord]:
    """Moore cycles of F[S^1] at level ``t``: iterated commutators of the face-kernel elements.

    A bracket of elements that together contain one kernel element per face
    is killed by every face.
    """
    if t < 1:
        return []
    K = face_kernel_generators(t)
    if t == 1:
        return [K[0]]  # both faces of F1 are trivial
    seeds = []
    for perm in itertools.permutations(range(t + 1)):
        c = K[perm[0]]
        for k in perm[1:]:
            c = commutator(c, K[k])
        if not c.is_identity():
            seeds.append(c)
    if t == 2:
        A = _y(2)
        seeds.append(commutator(FreeWord.generator(A, 1), FreeWord.generator(A, 2, -1)))
    return seeds


def random_moore_cycles(t: int, count: int, rng: random.Random, max_factors: int = 3, conj_length: int = 3) -> list[FreeWord]:
    """Random products of conjugates of :func:`fs1_cycle_seeds`, filtered by :func:`is_moore_cycle`."""
    spec = instance_fs1()
    seeds = fs1_cycle_seeds(t)
    out = []
    while len(out) < count:
        z = spec.identity(t)
        for _ in range(rng.randint(1, max_factors)):
            c = rng.choice(seeds)
            if rng.random() < 0.5:
                c = ~c
            g = spec.random_element(t, rng, conj_length)
            z = z * g * c * ~g
        if not z.is_identity() and is_moore_cycle(spec, t, z):
            out.append(z)
    return out


def _theta_any(n: int, w: FreeWord) -> PureBraid:
    return PureBraid(1, ()) if n == 0 else theta(n, w)


def theta_simplicial_check(N: int) -> IdentityReport:
    """Naturality of theta with faces and degeneracies on all generators up to level ``N``."""
    if N < 1:
        raise ValueError("level must be positive")
    report = IdentityReport("theta", N)
    base = theta(1, FreeWord.generator(_y(1), 1))
    report.record("theta_1(y1) = A(1,2)", braids_equal(base, a_generator(1, 2, 2)))
    for n in range(1, N + 1):
        for q in range(1, n + 1):
            yq = FreeWord.generator(_y(n), q)
            image = theta(n, yq)
            for i in range(n + 1):
                ok = braids_equal(delete_strand(image, i + 1), _theta_any(n - 1, face_fs1(n, i)(yq)))
                report.record("d_i theta = theta d_i", ok, None if ok else {"level": n, "indices": [i, q], "element": str(yq)})
            for j in range(n + 1):
                ok = braids_equal(double_strand(image, j + 1), theta(n + 1, degeneracy_fs1(n, j)(yq)))
                report.record("s_j theta = theta s_j", ok, None if ok else {"level": n, "indices": [j, q], "element": str(yq)})
    return report
