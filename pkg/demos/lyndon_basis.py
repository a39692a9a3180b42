"""A Lyndon basis for the free Lie algebra and bracket normal forms."""

from braidlab.freelie import Alphabet, LieElement, lie_bracket, lie_to_associative, lyndon_basis, witt_rank

for m in range(1, 6):
    print(f"degree {m}: {witt_rank(2, m)} basis elements ->", ", ".join(str(b) for b in lyndon_basis(2, m)))

Y = Alphabet("y", 3)
y1, y2, y3 = (LieElement.generator(Y, i) for i in (1, 2, 3))
e = lie_bracket(lie_bracket(y2, y1), y3)
print("[[y2,y1],y3] in normal form:", e)
jac = lie_bracket(lie_bracket(y1, y2), y3) + lie_bracket(lie_bracket(y2, y3), y1) + lie_bracket(lie_bracket(y3, y1), y2)
print("Jacobi sum:", jac)
print("as a polynomial:", lie_to_associative(lie_bracket(y1, y2), 2))
