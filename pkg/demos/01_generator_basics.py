"""Combination generation by level stores, and colex ranking.

Walks the unfused machinery that the exact solver fuses: building all
combinations of n indices grouped by size, the merge operator that grows
them one point at a time, and the rank/unrank bijection onto colex order.
"""

from math import comb

from ekmedoids import cross_join, gen_combs, merge, rank_colex, unrank_colex

# A level store is a list [S_0, S_1, ..., S_k]: S_j holds every size-j
# combination of the points seen so far.  gen_combs(n, k) builds the store
# for points 0..n-1.
store = gen_combs(4, 2)
print("gen_combs(4, 2) levels:")
for j, level in enumerate(store.levels):
    print(f"  size {j}: {level}")

# Level sizes follow the binomial coefficients.
print("sizes:", store.sizes(), "== C(4, j):", [comb(4, j) for j in range(3)])

# The store grows by merging in one singleton at a time.  Merging {4} into
# the store above appends the combinations that contain 4 after the ones
# that do not, which is exactly colexicographic order.
grown = merge(merge([4], 2), store.levels, 2)
print("\nafter merging point 4, size-2 level:")
print(" ", grown[2])

# cross_join is the product underneath merge: all pairwise unions of two
# disjoint level lists.
print("\ncross_join([(0,), (1,)], [(2,), (3,)]):")
print(" ", cross_join([(0,), (1,)], [(2,), (3,)]))

# Each size-k level is sorted by colex rank, the sum of C(c_i, i) over
# 1-based positions.  rank and unrank are inverse bijections.
print("\ncolex ranks of the size-2 level of gen_combs(5, 2):")
for c in gen_combs(5, 2)[2]:
    r = rank_colex(c)
    assert unrank_colex(r, 2) == c
    print(f"  {c} -> {r}")
