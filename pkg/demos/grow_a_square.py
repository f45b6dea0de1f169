"""Build an order-96 subsquare-free square: base 12, then one step with the 8x8 pair."""
import time

from ninf import base_square, extend, find_proper_subsquare, plan_order

print("plan for 96:", plan_order(96))
base = base_square(12)
print("base 12 witnesses:", base.w_ii, base.w_iii, base.cert_level.label)

t = time.perf_counter()
big = extend(base, 8, verify_threshold=0)
print(f"extended to {big.order} with shift {big.shift} in {time.perf_counter() - t:.1f} s; "
      f"witnesses {big.w_ii}, {big.w_iii}")

t = time.perf_counter()
print("proper subsquare:", find_proper_subsquare(big.square), f"({time.perf_counter() - t:.1f} s)")
