"""Cohen-Macaulayness of permutation invariant rings.

Decide whether k[x_1,..,x_n]^G is Cohen-Macaulay for every coefficient
field (it is iff G is generated by transpositions, double
transpositions, and 3-cycles), certify bad primes with explicit
witnesses from minimal orbit partitions, and double-check verdicts with
two independent engines: link homology of the quotient of the subset
order complex, and a graded coinvariant freeness test over F_p.
"""

from .catalog import CATALOG, GroupSpec, build, lookup
from .complexes import (
    QuotientComplex,
    ReisnerResult,
    SimplicialComplexView,
    SubsetChain,
    barycentric_subdivision,
    build_delta,
    homology,
    quotient_by_group,
    reisner_cm_test,
)
from .linalg import PrimeFieldMatrix, kernel_dimension, rank
from .oracle import (
    GradedInvariantBasis,
    OracleVerdict,
    cm_verdict,
    coinvariant_dimensions,
    default_truncation,
    invariant_dimension,
)
from .partitions import (
    BadPrimeCertificate,
    blockwise_stabilizer,
    certified_bad_primes,
    inertia_image_order,
    minimal_outside_partitions,
    refines,
)
from .permgroup import (
    CycleParseError,
    DegreeMismatchError,
    GenerationCapExceeded,
    InternalConsistencyError,
    OrbitPartition,
    Permutation,
    PermutationGroup,
    compose,
    cycle_type,
    element_order,
    format_cycles,
    generate,
    identity,
    is_transitive,
    orbit_partition,
    parse_cycles,
)
from .reflections import (
    HuffmanClass,
    NotTwoReflectionGroupError,
    ReflectionReport,
    analyze,
    classify_transitive_reflection_group,
    is_two_reflection,
    prime_divisors,
    two_reflection_subgroup,
)

__version__ = "0.1.0"
