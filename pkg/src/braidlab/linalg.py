"""Exact integer linear algebra: Smith normal form, ranks, kernels, solving.

Matrices are plain lists of lists of Python ints so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Sequence

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "Echelon",
    "matrix_rank",
    "integer_kernel",
    "solve_integer",
    "matmul",
    "format_matrix",
    "parse_matrix",
]

Matrix = list[list[int]]


def _identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    if not cols:
        return [[] for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


@dataclass
class SmithForm:
    """Result of :func:`smith_normal_form`.

    ``U @ M @ V == D`` with ``U`` and ``V`` unimodular when transforms were
    requested; ``invariant_factors`` are the positive diagonal entries of
    ``D``, each dividing the next.
    """

    invariant_factors: list[int]
    rank: int
    shape: tuple[int, int]
    D: Matrix | None = None
    U: Matrix | None = None
    V: Matrix | None = None

    def verify(self, M: Sequence[Sequence[int]]) -> bool:
        if self.U is None or self.V is None or self.D is None:
            raise ValueError("no transformation certificates recorded")
        m, n = self.shape
        if m == 0 or n == 0:
            return True
        return matmul(matmul(self.U, M), self.V) == self.D

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.invariant_factors if d > 1]


def smith_normal_form(M: Sequence[Sequence[int]], transforms: bool = True) -> SmithForm:
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[int(x) for x in row] for row in M]
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            A[i], A[j] = A[j], A[i]
            if U is not None:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            if V is not None:
                for row in V:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, k: int) -> None:
        # row_dst += k * row_src
        rs, rd = A[src], A[dst]
        for c in range(n):
            if rs[c]:
                rd[c] += k * rs[c]
        if U is not None:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] += k * us[c]

    def add_col(dst: int, src: int, k: int) -> None:
        for row in A:
            if row[src]:
                row[dst] += k * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += k * row[src]

    factors: list[int] = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # bring the smallest remainder in row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            if abs(p) > 1:
                bad = next(
                    (i for i in range(t + 1, m) if any(x % p for x in A[i][t + 1:])),
                    None,
                )
                if bad is not None:
                    add_row(t, bad, 1)
                    continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        factors.append(A[t][t])
    return SmithForm(factors, len(factors), (m, n), A if transforms else None, U, V)


class Echelon:
    """Incremental row echelon basis over the rationals with primitive integer rows.

    Rows are sparse dicts ``column -> value``; each stored row is keyed by its
    lowest nonzero column.
    """

    def __init__(self) -> None:
        self.rows: dict[int, dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping[int, int]) -> dict[int, int]:
        v = {c: x for c, x in v.items() if x}
        while v:
            c = min(v)
            row = self.rows.get(c)
            if row is None:
                return v
            a, b = row[c], v[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            out = {k: fa * x for k, x in v.items()}
            for k, x in row.items():
                out[k] = out.get(k, 0) - fb * x
            v = {k: x for k, x in out.items() if x}
            if v:
                g = 0
                for x in v.values():
                    g = gcd(g, x)
                if g > 1:
                    v = {k: x // g for k, x in v.items()}
        return v

    def add(self, v: Mapping[int, int]) -> bool:
        """Insert ``v``; return True if it was independent of the stored rows."""
        r = self.reduce(v)
        if not r:
            return False
        self.rows[min(r)] = r
        return True

    def contains(self, v: Mapping[int, int]) -> bool:
        return not self.reduce(v)


def matrix_rank(M: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by fraction-free elimination (independent of the SNF code)."""
    E = Echelon()
    for row in M:
        E.add({j: x for j, x in enumerate(row) if x})
    return len(E)


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Z-basis of ``{x : M x = 0}``, returned as a list of column vectors."""
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    if not M:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    S = smith_normal_form(M)
    return [[S.V[i][j] for i in range(n)] for j in range(S.rank, n)]


def solve_integer(M: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``M x = b``, or None when there is none."""
    m = len(M)
    n = len(M[0]) if m else 0
    S = smith_normal_form(M)
    Ub = [sum(u * x for u, x in zip(row, b)) for row in S.U]
    y = [0] * n
    for i in range(m):
        d = S.invariant_factors[i] if i < S.rank else 0
        if d == 0:
            if Ub[i]:
                return None
        else:
            q, r = divmod(Ub[i], d)
            if r:
                return None
            y[i] = q
    return [sum(S.V[i][j] * y[j] for j in range(n)) for i in range(n)]


def format_matrix(M: Sequence[Sequence[int]]) -> str:
    """Plain text export: one row per line, space-separated integers."""
    return "\n".join(" ".join(str(x) for x in row) for row in M)


def parse_matrix(text: str) -> Matrix:
    return [[int(x) for x in line.split()] for line in text.strip().splitlines() if line.strip()]
