"""Tour 2: a triangulation flip realized as a mutation sequence.

Flipping the diagonal of a quadrilateral is (n^3 - n)/6 mutations swept
layer by layer through the interior grid; the resulting quiver equals the
quiver of the flipped triangulation under the canonical re-identification.
"""

from qcaw import PolygonTriangulation, build_qbar, flip_sequence, reduced_seed
from qcaw.polygon import flip_identification, flip_layers
from qcaw.quiver import mutate_word

n = 3
tri = PolygonTriangulation(4, [(1, 3)])
word = flip_sequence(tri, n, (1, 3))
print(f"flip of (1,3) at n={n}: {len(word)} mutations "
      f"(= (n^3-n)/6 = {(n**3 - n)//6})")
print("layers:", flip_layers(n))
print("word:", word)

q0 = build_qbar(tri, n)
q1 = mutate_word(q0, word)
new_tri, ident = flip_identification(tri, n, (1, 3))
target = build_qbar(new_tri, n)
relabeled = q1.relabel(ident)
match = all(relabeled.adj2(a, b) == target.adj2(a, b)
            for a in target.vertices for b in target.vertices)
print("mutated quiver == quiver of the flipped triangulation:", match)

# the same word transports the full quantum seed (variables and Pi)
seed = reduced_seed(tri, n, labels={})
s1 = seed.mutate_word(word)
print("all flipped variables positive:",
      all(s1.vars[v].all_coeffs_nonneg() for v in s1.quiver.vertices))
print("g-vector at the old diagonal midpoint row:",
      dict(sorted(s1.gvecs[word[0]].items())))
