"""Tour 3: the SL3 bigon and its type-D4 cluster combinatorics.

The bigon's extended seed has 4 frozen and 4 mutable vertices; its
exchange graph closes at 50 clusters and 16 exchangeable variables, in
bijection with maximal compatible systems of labeled arcs and with tagged
triangulations of the once-punctured quadrilateral.
"""

from collections import Counter

from qcaw import bigon_seed, enumerate_exchange_graph, enumerate_systems
from qcaw.sl3bigon import (bigon_catalogue, cluster_to_system,
                           enumerate_clusters_combinatorial,
                           enumerate_tagged_triangulations)

seed = bigon_seed()
print("bigon vertices:", list(seed.quiver.vertices),
      "mutable:", sorted(seed.quiver.mutable))

graph = enumerate_exchange_graph(seed, max_seeds=200)
print(f"\nexchange graph: {graph.num_clusters} clusters, "
      f"{len(graph.exchangeable_variables())} exchangeable variables")

systems = enumerate_systems()
print("systems:", len(systems), dict(Counter(s.case() for s in systems)))
print("tagged triangulations:", len(enumerate_tagged_triangulations()))

clusters = enumerate_clusters_combinatorial()
images = {cluster_to_system(c) for c in clusters}
print("cluster -> system map is a bijection:", images == set(systems))

cat = bigon_catalogue(seed)
print("\ncatalogue (variable, tagged arc, mutation word):")
for vid in sorted(cat):
    arc, word, el = cat[vid]
    print(f"  {vid:7s} {str(arc):8s} word={','.join(word) or '-'}  "
          f"{el.num_terms()} Laurent terms")
