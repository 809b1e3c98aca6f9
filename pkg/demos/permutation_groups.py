"""Permutation groups: composition, parity, group orders, generation tests.

    python3 demos/permutation_groups.py
"""
from math import factorial

from loopforge.permgroup import (Permutation, classify_group, compose, format_cycles, n_cycle,
                                 parse_permutation, piccard_alternating, piccard_symmetric,
                                 sgs_from_generators)

f = parse_permutation("(0 1 2)(3 4)", 5)
g = parse_permutation("(1 3)", 5)
# compose(f, g) applies g first, then f
print("f     =", format_cycles(f), " parity", f.parity().name)
print("g     =", format_cycles(g))
print("f.g   =", format_cycles(compose(f, g)))

# <(0 1 ... 6), (0 1 3)>: distances 1 and 3 share no factor with 7
n = 7
gd = sgs_from_generators([n_cycle(n), Permutation.from_cycles(n, (0, 1, 3))])
print(f"order {gd.order} = 7!/2 = {factorial(n) // 2}: {classify_group(gd)}")
print("3-cycle criterion agrees:", piccard_alternating(n, 0, 1, 3))

# a 3-cycle on points spaced 3 apart in Z_9 stays inside a proper subgroup
gd = sgs_from_generators([n_cycle(9), Permutation.from_cycles(9, (0, 3, 6))])
print("Z_9 with (0 3 6):", classify_group(gd), " criterion:", piccard_alternating(9, 0, 3, 6))

# even degree: an n-cycle is odd, so a 5-cycle can lift the pair to S_n
n = 10
pts = (0, 1, 2, 4, 7)
gd = sgs_from_generators([n_cycle(n), Permutation.from_cycles(n, pts)])
print(f"n=10 with 5-cycle {pts}: {classify_group(gd)}  criterion: {piccard_symmetric(n, pts)}")
