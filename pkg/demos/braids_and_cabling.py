"""Pure braids, strand operations, and the cabling map from free words."""

from braidlab.braid import a_generator, commutator, delete_strand, double_strand, is_brunnian, linking_matrix, theta
from braidlab.parsing import parse_word

A12, A13 = a_generator(1, 2, 3), a_generator(1, 3, 3)
print("A(1,3) =", A13)
print("delete strand 2 from A(1,3):", delete_strand(A13, 2))
print("double strand 2 of A(1,2) in P2:", double_strand(a_generator(1, 2, 2), 2))

b = commutator(A12, A13)
print("[A(1,2),A(1,3)] is Brunnian:", is_brunnian(b))

for q in (1, 2):
    t = theta(2, parse_word(f"y{q}", 2))
    print(f"theta_2(y{q}) = {t}\n{linking_matrix(t)}")

z = parse_word("[y1,y2^-1]", 2)
print("theta_2([y1,y2^-1]) is Brunnian:", is_brunnian(theta(2, z)))
