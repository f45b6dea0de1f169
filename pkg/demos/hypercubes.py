"""Boosting to higher dimension, and the two orders where squares fail but cubes succeed."""
from ninf import boost, build_hypercube, cyclic_square, find_proper_subhypercube, fixtures
from ninf.errors import NoSuchObject

for n in (4, 6):
    try:
        build_hypercube(n, 2)
    except NoSuchObject as exc:
        print(f"order {n}, dim 2: {exc}")
    H = build_hypercube(n, 3)
    print(f"order {n}, dim 3: subcube = {find_proper_subhypercube(H)}")

print("boost(E, 4):", find_proper_subhypercube(boost(fixtures.square('E'), 4)))
print("boost(cyclic 4, 3):", find_proper_subhypercube(boost(cyclic_square(4), 3)))
