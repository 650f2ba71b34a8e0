"""Exact-arithmetic workbench for quantum cluster algebras of polygons."""

from .scalar import LaurentScalar, scalar_is_nonneg, scalar_pow_xi
from .qtorus import (CommutationContext, ExponentVector, NotExactlyDivisible,
                     NotQuasiCommutative, TorusElement,
                     quasi_commutation_exponent, torus_left_divide, torus_mul,
                     weyl_monomial)
from .quiver import (FrozenVertexError, WeightedQuiver, build_family_quiver,
                     concat_quivers, framed_quiver, is_green, is_red,
                     mutate_framed, mutate_quiver, quiver_to_dot,
                     quiver_to_json, sign_coherent, stack_quivers)
from .qseed import (QuantumSeed, check_compatibility,
                    check_quasi_homomorphism, cluster_monomial,
                    enumerate_exchange_graph, mutate_seed, seed_from_matrices)
from .polygon import (PolygonTriangulation, apply_flip, build_extended,
                      build_pbar, build_qbar, flip_sequence, pbar_p3,
                      qc_star_data, reduced_seed, skeleton)
from .sequences import named_sequence
from .sl3bigon import (LabeledArc, arc_compatible, bigon_catalogue,
                       bigon_seed, enumerate_systems, tagged_arc_compatible,
                       variables_compatible,
                       weighted_system_to_cluster_monomial)
from .verify import run_suite

__version__ = "0.1.0"
