# Pseudofactors versus prime factors.
#
# A pseudofactorization only asks for an isometric embedding into a product,
# so even a path breaks up: P3 sits inside the 4-cycle K2 x K2. A
# factorization asks for the product itself, so P3 is prime.

from wgfactor import WeightedGraph, cartesian_product, factorize, minimalize, pseudofactorize
from wgfactor.errors import NonMinimalGraphError


def show(title, dec):
    print(title)
    for i, f in enumerate(dec.factors):
        print(f"  factor {i}: n={f.n} edges={[(u, v, w) for u, v, w in f.edges]}")
    print("  map:", dec.map)


p3 = WeightedGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, 1)])
show("P3 pseudofactors", pseudofactorize(p3))
show("P3 factors", factorize(p3))

# the star K_{1,3} lands in the 3-cube
star = WeightedGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
print("star pseudofactors:", len(pseudofactorize(star)))

# a triangle with a tight long side is already irreducible
tri = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 2)])
print("triangle 1,1,2 pseudofactors:", len(pseudofactorize(tri)))

# ... but with a slack side it is not even a valid input
slack = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])
try:
    pseudofactorize(slack)
except NonMinimalGraphError as exc:
    print("refused:", exc)
print("after minimalize:", len(pseudofactorize(minimalize(slack))), "pseudofactors")

# factoring a product gives the pieces back
a = WeightedGraph(3, [(0, 1, 2), (1, 2, 1)])
b = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
show("factors of (weighted P3) x K3", factorize(cartesian_product([a, b])))
