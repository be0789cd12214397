"""weylsum: exponential sums with multiplicative coefficients over
polynomial phases, and the experiments built on them."""

from .arith import FactoredInteger, PrimeSieve, big_omega, build_sieve, factorize, von_mangoldt
from .backend import USING_NUMBA
from .characters import (
    CharGroup,
    DirichletCharacter,
    complete_twisted_sum,
    conductor,
    enumerate_characters,
    mixed_char_sum,
    pretentious_decompose,
    pretentious_witness,
    principal_character,
)
from .congruence import (
    IntPoly,
    RatioSequence,
    RootTable,
    build_root_table,
    discriminant,
    irreducibility_check,
    lift_roots,
    parse_poly,
    rho_stats,
    roots_mod_prime,
    twisted_rho_mean,
)
from .equidist import (
    DiscrepancyReport,
    JointSequence,
    hooley_average,
    joint_sequence,
    joint_weyl_sum,
    star_discrepancy_2d,
)
from .errors import EvaluationError, ParameterError, ResourceError, WeylsumError
from .multfunc import (
    ExtremalResult,
    MultiplicativeFunction,
    NormProfile,
    extremal_construct,
    liouville,
    mobius,
    norm_stats,
    reconstruct_extremal_sum,
    sieve_values,
    unit,
)
from .partition import (
    PartitionScheme,
    Rectangle,
    build_partition,
    exceptional_points,
    main_rectangle,
    sub_rectangle,
    verify_partition,
    width_count,
)
from .phase import (
    FracFixed,
    PolyPhase,
    RationalApprox,
    classify_arc,
    dirichlet_approx,
    frac_eval,
    parse_phase,
    phase_exp,
    phase_values,
)
from .sums import (
    BoundReport,
    RectFamily,
    hyperbola_bilinear,
    log_weighted_sum,
    rect_bilinear,
    theorem1_report,
    weyl_sum,
)
from .vinogradov import (
    TupleCountTable,
    brute_force_jrd,
    brute_force_jrd_full,
    count_tuples,
    jrd,
    jrd_intervals,
    jrd_primes,
    slope_estimate,
)

__version__ = "0.1.0"
