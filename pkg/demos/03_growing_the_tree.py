# The spanning-tree route to theta classes.
#
# Testing theta on every pair of edges costs O(m^2) tests. Restricting it to
# pairs that touch a spanning tree is cheaper, but on a bad tree the classes
# come out too fine. The tree-growing procedure swaps edges into the tree
# until the restricted classes match the full ones.

import random

from wgfactor import apsp, build_relation_graph, equivalence_classes, theta_classes
from wgfactor.corpus import grid_graph
from wgfactor.treefast import TreeState, run_theta_tree

rng = random.Random(7)
g = grid_graph(3, 4, rng)
d = apsp(g)
print(f"3x4 weighted grid: n={g.n} m={g.m}")

start = TreeState(g, d).tree
restricted = equivalence_classes(build_relation_graph(g, d, "theta_t", tree=start))
full = theta_classes(g, d)
print("BFS tree:", sorted(start))
print("classes on the BFS tree:", len(restricted), "- all pairs give", len(full))

state = run_theta_tree(g, d, check_invariant=True)
print("after growing:", sorted(state.tree))
print("swaps made:", state.swaps, "(budget n-1 =", g.n - 1, ")")
for k, members in enumerate(state.classes().classes):
    print(f"  class {k}: {[g.edges[e] for e in members]}")
print("identical to all pairs:", state.classes() == full)
