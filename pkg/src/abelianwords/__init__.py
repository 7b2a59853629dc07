"""Morphic infinite words, Abelian complexity and balance, Abelian power
scanning, and integer-word block-sum constructions."""

from .words import (
    BINARY,
    Alphabet,
    FactorIndex,
    FiniteStream,
    InsufficientPrefixError,
    PeriodicStream,
    PrefixStream,
    PrependStream,
    RuleStream,
    Word,
    abelian_equivalent,
    as_stream,
    binary_word,
    block_sum,
    factor_parikh,
    parikh,
    word,
)
from .morphisms import (
    BUILTIN_MORPHISMS,
    BoundednessCertificate,
    F,
    FIBONACCI,
    G,
    H,
    ImageBoundReport,
    ImageStream,
    MU,
    Morphism,
    MorphicStream,
    apply,
    fixed_point,
    forces_bounded_complexity,
    image_complexity_bound,
    incidence_matrix,
    is_primitive,
    load_morphism,
    parse_morphism_text,
    resolve_morphism,
)
from .analysis import (
    AbelianPowerWitness,
    BalanceReport,
    ComplexityProfile,
    PositionSet,
    RecurrenceReport,
    RepetitivityReport,
    abelian_complexity,
    avoids_abelian_squares_at,
    balance,
    complexity_profile,
    density,
    everywhere_k_repetitive,
    is_overlap_free,
    recurrence_gap,
    shortest_abelian_power_at,
    subword_complexity,
    verify_power,
)
from .thuemorse import (
    BinaryExpansion,
    CubeDesubstitution,
    SpecialPositionCubeScan,
    cube_desubstitute,
    expansion_lemma_check,
    special_position_cube_period,
    suffix_kpower_witness,
    thue_morse_arithmetic_stream,
    thue_morse_stream,
    tm_letter,
)
from .constructions import (
    BlockBoundaryInstance,
    LemmaCheck,
    PrefixPatternReport,
    builtin_stream,
    check_adjacent_sum_property,
    check_sum_length_congruence,
    check_v_sum_lemma,
    check_w_lemma,
    descend_square_g,
    enumerate_overlap_free,
    pvhh_check,
    replay_f_square_lemma,
    scan_prefix_pattern,
    search_pvhh_word,
    tau_block_boundaries,
    tau_boundary_instance,
    tau_encode,
    v_stream,
    w_stream,
    w_word,
    z_stream,
)

__version__ = "0.1.0"
