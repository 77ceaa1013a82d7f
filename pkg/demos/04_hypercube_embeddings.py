# Hypercube embeddings, one pseudofactor at a time.
#
# A graph embeds isometrically in a hypercube exactly when each of its
# pseudofactors does, and the embeddings concatenate. The number of
# non-equivalent embeddings multiplies across pseudofactors.

from wgfactor import (
    WeightedGraph,
    compose_from_pseudofactors,
    count_hypercube_embeddings,
    hypercube_embed_bruteforce,
    pseudofactorize,
)
from wgfactor.corpus import complete_graph, cycle_graph
from wgfactor.embed import enumerate_hypercube_embeddings

star = WeightedGraph(["center", "x", "y", "z"], [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
dec = pseudofactorize(star)
parts = [hypercube_embed_bruteforce(f) for f in dec.factors]
e = compose_from_pseudofactors(star, dec, parts)
for label, s in zip(star.labels, e.as_text()):
    print(f"  {label:>6} -> {s}")

# K3 with unit weights has odd triangles and cannot embed
print("unit K3:", hypercube_embed_bruteforce(complete_graph(3)))
print("K3 with weight 2:", hypercube_embed_bruteforce(complete_graph(3, 2)).as_text())

# scaled K4: 2k K4 has k + 1 embeddings
for k in (1, 2, 3):
    print(f"{2 * k}K4 ->", count_hypercube_embeddings(complete_graph(4, 2 * k)), "embeddings")
for emb in enumerate_hypercube_embeddings(complete_graph(4, 2)):
    print("  2K4:", emb.as_text())

# the 6-cycle needs only 3 coordinates
print("C6:", hypercube_embed_bruteforce(cycle_graph([1] * 6)).as_text())
