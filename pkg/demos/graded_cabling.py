"""The cabling map on associated graded Lie algebras and its injectivity certificates."""

from braidlab.freelie import Alphabet, LieElement, witt_rank
from braidlab.kohno import delta_example_check, derivation_rep, gr_theta, gr_theta_matrix, kohno_rank

Y = Alphabet("y", 3)
for q in (1, 2, 3):
    print(f"gr_theta(3, y{q}) = {gr_theta(3, LieElement.generator(Y, q))}")

print("ranks of the degree 1..4 pieces for 4 strands:", [kohno_rank(4, m) for m in range(1, 5)])

for n in (2, 3):
    for m in (2, 3, 4):
        c = gr_theta_matrix(n, m)
        print(f"n={n} m={m}: rank {c.rank} of {witt_rank(n, m)}, divisors {c.elementary_divisors}")

print("degree four example:", delta_example_check().summary())

rep = derivation_rep(3)
print(f"derivation assignment for n=3 checked on {len(rep.checked)} relations;",
      "ranks", [rep.injectivity_rank(m) for m in (1, 2, 3)])
