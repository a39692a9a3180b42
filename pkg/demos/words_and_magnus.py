"""Free group words, the Magnus expansion, and lower central series degree."""

from braidlab.freelie import Alphabet
from braidlab.words import FreeWord, commutator, gr_leading_term, lcs_degree, magnus_expand

G = Alphabet("g", 3)
g1, g2, g3 = (FreeWord.generator(G, i) for i in (1, 2, 3))

w = g1 * g2 * ~g1
print("w =", w, " w*w^-1 =", w * ~w)

c = commutator(commutator(g1, g2), g3)
print("c =", c)
print("Magnus expansion of c to degree 3:", magnus_expand(c, 3))
# the first nonconstant terms sit in degree 3, so c lies in the third term of the series
print("lcs degree:", lcs_degree(c))
print("leading Lie term:", gr_leading_term(c))
