"""Exact-arithmetic computations with strongly regular partitions and
generalised orbit algebras on the powerset of a finite ground set."""

from goa.subsets import GroundSet
from goa.poly import Poly, from_function, format_poly
from goa.partition import (Partition, coeff_matrix, merge_blocks,
                           partition_from_polys, structure_constants,
                           verify_goa_closure, verify_strongly_regular)
from goa.perms import (PermGroup, close_generators, orbit_partition,
                       parse_permutation, partition_stabilizer)
from goa.srp import build_counterexample, enumerate_strongly_regular, is_orbit_partition

__all__ = [
    "GroundSet", "Poly", "from_function", "format_poly",
    "Partition", "coeff_matrix", "merge_blocks", "partition_from_polys",
    "structure_constants", "verify_goa_closure", "verify_strongly_regular",
    "PermGroup", "close_generators", "orbit_partition", "parse_permutation",
    "partition_stabilizer",
    "build_counterexample", "enumerate_strongly_regular", "is_orbit_partition",
]
