"""Simplicial identities for the free circle group and the pure braid groups."""

import random

from braidlab.braid import is_brunnian, theta
from braidlab.simplicial import (
    instance_ap,
    instance_fs1,
    is_moore_cycle,
    random_moore_cycles,
    theta_simplicial_check,
    verify_simplicial_identities,
)

for spec, N in ((instance_fs1(), 4), (instance_ap(), 3)):
    rep = verify_simplicial_identities(spec, N, samples=20, seed=1)
    print(f"{spec.name}: {rep.total} identity checks, passed={rep.passed}")

print("theta commutes with faces and degeneracies:", theta_simplicial_check(3).passed)

rng = random.Random(3)
fs1 = instance_fs1()
for z in random_moore_cycles(3, 3, rng):
    print(f"cycle of length {len(z)}: moore={is_moore_cycle(fs1, 3, z)} brunnian image={is_brunnian(theta(3, z))}")
