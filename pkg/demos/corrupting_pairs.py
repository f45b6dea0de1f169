"""Check both embedded corrupting pairs and their structural properties."""
from ninf import check_corrupting_pair, check_properties, corrupter

for alpha in (8, 9):
    data = corrupter(alpha)
    pair = check_corrupting_pair(data.A, data.B)
    props = check_properties(data)
    print(f"alpha={alpha} d={data.d_triple} p3={data.p3}")
    print("  pair checks:", pair.checks)
    print("  properties: ", props.checks)
