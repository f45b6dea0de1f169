"""Find subsquares with the closure detector and cross-check against brute force."""
from ninf import brute_force_subsquares, cyclic_square, find_proper_subsquare, fixtures

for name in ("E", "A8", "A9"):
    L = fixtures.square(name)
    print(f"{name}: order {L.order}, proper subsquare: {find_proper_subsquare(L)}")

C4 = cyclic_square(4)
print("cyclic order 4, detector:", find_proper_subsquare(C4))
print("cyclic order 4, brute force smallest:", brute_force_subsquares(C4)[0])
