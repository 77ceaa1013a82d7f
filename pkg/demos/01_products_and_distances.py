# Weighted Cartesian products and their metric.
#
# A product vertex is a tuple with one coordinate per factor. Two tuples are
# adjacent when they differ in one coordinate along an edge of that factor, and
# the product edge copies that edge's weight. Distances add up coordinatewise.

import numpy as np

from wgfactor import WeightedGraph, apsp, cartesian_product
from wgfactor.graph import product_coordinates

path = WeightedGraph(["a", "b", "c"], [(0, 1, 2), (1, 2, 1)])  # a -2- b -1- c
edge = WeightedGraph(["x", "y"], [(0, 1, 3)])

ladder = cartesian_product([path, edge])
print("ladder:", ladder.n, "vertices,", ladder.m, "edges")
for u, v, w in ladder.edges:
    print("  ", ladder.labels[u], "--", ladder.labels[v], "w =", w)

# distance between two corners: walk the path (3) then cross the rung (3)
d = apsp(ladder)
a_x = ladder.index(("a", "x"))
c_y = ladder.index(("c", "y"))
print("d((a,x), (c,y)) =", d[a_x, c_y])

# the same number from the factors alone
dp, de = apsp(path), apsp(edge)
summed = np.zeros_like(d.matrix)
for s in range(ladder.n):
    for t in range(ladder.n):
        (i, j), (k, l) = product_coordinates([path, edge], s), product_coordinates([path, edge], t)
        summed[s, t] = dp[i, k] + de[j, l]
print("additive over factors:", np.array_equal(summed, d.matrix))
