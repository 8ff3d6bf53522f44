"""Generalized splines on edge-labeled graphs over Z/mZ and Z."""

from .arith import (
    PrimePowerDecomposition,
    Residue,
    crt_combine,
    factorize,
    min_coset_rep,
    solve_linear_congruence,
)
from .graph import (
    Edge,
    EdgeLabeledGraph,
    ZeroComponentPartition,
    parse_graph,
    reduce_labels,
    validate_graph,
    zero_components,
)
from .ring import (
    GeneralCombination,
    MultiplicationTable,
    ScalarMultiple,
    Zero,
    multable_distinct_primes,
    multable_general,
    multable_prime_power,
    multiplication_table,
    multiply,
    support,
)
from .splines import (
    GeneratingSet,
    Generator,
    Spline,
    component_indicator_spline,
    forced_equal_classes,
    gens_mod_m,
    gens_mod_p,
    gens_mod_prime_power,
    integer_basis,
    is_spline,
    lift_spline,
    minimize_leading,
    prime_power_tower,
    rank,
    reduce_integer_basis,
)

__version__ = "0.1.0"
