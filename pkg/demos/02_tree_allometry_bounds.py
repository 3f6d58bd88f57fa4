"""Reproduce the classical tree-allometry bounds that anchor the exponent.

On a rooted directed tree, a node's "throughflow" analogue is its subtree
node count and its "impact" analogue the sum of those counts over the
subtree.  The flattest tree (a star) fits a slope of log(2N-1)/log(N),
which tends to 1; the most hierarchical tree (a directed chain) tends to 2.
General flow networks are not confined to [1, 2], but the two extremes give
the exponent its reading: the higher the slope, the longer the chains.
"""

import math

import flowallometry as fa

print("star networks: slope -> 1 from above")
for n in (10, 100, 1000):
    counts, sums = fa.tree_allometry(fa.star(n))
    fit = fa.fit(counts, sums)
    closed = math.log(2 * n - 1) / math.log(n)
    print(f"  n={n:5d}  slope={fit.eta:.6f}  closed form={closed:.6f}  "
          f"difference={abs(fit.eta - closed):.1e}")

print("\ndirected chains: slope -> 2 from below")
for n in (10, 100, 1000):
    counts, sums = fa.tree_allometry(fa.chain(n))
    fit = fa.fit(counts, sums)
    print(f"  n={n:5d}  slope={fit.eta:.6f}  R^2={fit.r2:.5f}")

print("\nrandom recursive trees stay between the two extremes")
for seed in range(6):
    net = fa.random_tree(150, seed=seed)
    counts, sums = fa.tree_allometry(net)
    fit = fa.fit(counts, sums)
    print(f"  seed={seed}  slope={fit.eta:.4f}")

# A uniform chain treated as a *flow* network is the degenerate edge case:
# every node moves the same volume, so the regressor has no variance.
try:
    result = fa.analyze(fa.chain(50, 5.0))
    fa.fit(result.throughflow, result.impact)
except fa.DegenerateFit as err:
    print(f"\nuniform chain flow network: DegenerateFit ({err})")
