"""Chain complexes from the lower central series filtration of F[S^1].

In Lie degree ``m`` the associated graded of F[S^1] is the simplicial abelian
group ``t -> L_m[y_1..y_t]``; faces act by substituting generators with a
generator or zero.  Its alternating-sum complex and its normalized (Moore)
complex are built here with integer matrices, and homology is read off from
Smith normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .freelie import Alphabet, LieElement, bracket_string, lyndon_words, substitute, witt_rank
from .kohno import BudgetExceeded, gr_theta_matrix
from .linalg import (
    format_matrix,
    integer_kernel,
    matmul,
    matrix_rank,
    smith_normal_form,
    solve_integer,
)
from .simplicial import face_fs1

__all__ = [
    "IntegerChainComplex",
    "AbelianInvariants",
    "lie_degree_complex",
    "normalized_complex",
    "homology",
    "e1_report",
    "smith_normal_form",
]

Matrix = list[list[int]]

MAX_BASIS = 4000


@dataclass
class AbelianInvariants:
    """``Z^free_rank`` plus cyclic torsion summands (each factor divides the next)."""

    free_rank: int
    torsion: list[int] = field(default_factory=list)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


@dataclass
class IntegerChainComplex:
    """Chain groups ``C_0..C_N`` with ``boundaries[t]: C_t -> C_{t-1}``.

    ``boundaries[t]`` has shape ``(len(bases[t-1]), len(bases[t]))``; entry
    ``boundaries[0]`` is the zero map to the zero group.
    """

    lie_degree: int
    bases: list[list[str]]
    boundaries: list[Matrix]

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def rank(self, t: int) -> int:
        return len(self.bases[t])

    def boundary(self, t: int) -> Matrix:
        if not 0 <= t <= self.top:
            raise IndexError(f"no boundary stored in degree {t}")
        return self.boundaries[t]

    def boundary_rank(self, t: int) -> int:
        return matrix_rank(self.boundary(t))

    def squares_to_zero(self) -> bool:
        for t in range(2, self.top + 1):
            if any(any(row) for row in matmul(self.boundaries[t - 1], self.boundaries[t])):
                return False
        return True

    def export(self, t: int) -> str:
        """Boundary matrix in degree ``t`` as plain text (one row per line)."""
        return format_matrix(self.boundary(t))


def _check_budget(m: int, N: int) -> None:
    if m < 1 or N < 1:
        raise BudgetExceeded("Lie degree and level must be positive")
    size = witt_rank(N, m)
    if size > MAX_BASIS:
        raise BudgetExceeded(f"degree {m} at level {N} needs {size} basis elements (cap {MAX_BASIS})")


@lru_cache(maxsize=None)
def _face_images(t: int, i: int) -> tuple[int | None, ...]:
    out = []
    for w in face_fs1(t, i).images:
        out.append(w.letters[0][0] if w.letters else None)
    return tuple(out)


def _face_matrix(m: int, t: int, i: int) -> Matrix:
    src = lyndon_words(t, m) if t else ()
    dst = lyndon_words(t - 1, m) if t > 1 else ()
    index = {w: k for k, w in enumerate(dst)}
    M = [[0] * len(src) for _ in dst]
    images = _face_images(t, i)
    for col, w in enumerate(src):
        img = substitute(LieElement(Alphabet("y", t), {w: 1}), Alphabet("y", t - 1), images)
        for u, c in img.terms.items():
            M[index[u]][col] += c
    return M


def _labels(m: int, t: int) -> list[str]:
    if t == 0:
        return []
    A = Alphabet("y", t)
    return [bracket_string(w, A) for w in lyndon_words(t, m)]


def lie_degree_complex(m: int, N: int) -> IntegerChainComplex:
    """Alternating-sum complex of ``L_m`` of F[S^1] in simplicial degrees ``0..N``."""
    _check_budget(m, N)
    bases = [_labels(m, t) for t in range(N + 1)]
    boundaries: list[Matrix] = [[]]
    for t in range(1, N + 1):
        rows, cols = len(bases[t - 1]), len(bases[t])
        total = [[0] * cols for _ in range(rows)]
        for i in range(t + 1):
            sign = -1 if i % 2 else 1
            for r, row in enumerate(_face_matrix(m, t, i)):
                for c, x in enumerate(row):
                    if x:
                        total[r][c] += sign * x
        boundaries.append(total)
    return IntegerChainComplex(m, bases, boundaries)


def normalized_complex(m: int, N: int) -> IntegerChainComplex:
    """Moore complex: ``N_t`` is the common kernel of the faces ``d_1..d_t``, with boundary ``d_0``.

    Bases are integer kernel vectors written in the Lyndon coordinates of ``C_t``.
    """
    _check_budget(m, N)
    kernels: list[Matrix] = [[]]  # kernel basis vectors in C_t coordinates
    for t in range(1, N + 1):
        stacked = [row for i in range(1, t + 1) for row in _face_matrix(m, t, i)]
        kernels.append(integer_kernel(stacked, len(lyndon_words(t, m))))
    bases = [[" ".join(map(str, v)) for v in K] for K in kernels]
    boundaries: list[Matrix] = [[]]
    for t in range(1, N + 1):
        d0 = _face_matrix(m, t, 0)
        P = [list(col) for col in zip(*kernels[t - 1])]  # columns are the Moore basis of degree t-1
        cols = []
        for v in kernels[t]:
            if not P:
                break
            x = solve_integer(P, [sum(a * b for a, b in zip(row, v)) for row in d0])
            if x is None:
                raise ArithmeticError("d0 of a Moore chain left the Moore subgroup")
            cols.append(x)
        boundaries.append([[x[r] for x in cols] for r in range(len(kernels[t - 1]))])
    return IntegerChainComplex(m, bases, boundaries)


def homology(cplx: IntegerChainComplex, t: int) -> AbelianInvariants:
    """``ker d_t / im d_{t+1}`` as abelian group invariants."""
    if not 0 <= t < cplx.top:
        raise ValueError(f"homology in degree {t} needs boundaries up to {t + 1}; complex stops at {cplx.top}")
    dim = cplx.rank(t)
    S = smith_normal_form(cplx.boundary(t + 1), transforms=False)
    return AbelianInvariants(dim - cplx.boundary_rank(t) - S.rank, S.torsion)


def e1_report(m_max: int, N: int, theta_levels: int = 4) -> dict:
    """Homology table of the Lie-degree complexes plus ``gr(theta)`` injectivity certificates."""
    if m_max < 1 or N < 1:
        raise BudgetExceeded("Lie degree and level must be positive")
    cells = []
    for m in range(1, m_max + 1):
        cplx = lie_degree_complex(m, N + 1)
        for t in range(1, N + 1):
            h = homology(cplx, t)
            cells.append({
                "lie_degree": m,
                "simplicial_degree": t,
                "free_rank": h.free_rank,
                "invariant_factors": h.torsion,
                "basis_size": cplx.rank(t),
                "boundary_rank": cplx.boundary_rank(t),
            })
    certificates = []
    for n in range(1, min(N, theta_levels) + 1):
        for m in range(1, m_max + 1):
            cert = gr_theta_matrix(n, m).to_dict()
            cert.pop("matrix")
            certificates.append(cert)
    return {"homology": cells, "theta_certificates": certificates}
