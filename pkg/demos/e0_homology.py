"""Integral homology of the Lie-degree pieces of the graded free circle group."""

from braidlab.homology import homology, lie_degree_complex

for m, N in ((1, 6), (2, 5), (3, 5)):
    cplx = lie_degree_complex(m, N + 1)
    cells = ", ".join(f"t={t}: {homology(cplx, t)}" for t in range(N + 1))
    print(f"m={m}  {cells}")
