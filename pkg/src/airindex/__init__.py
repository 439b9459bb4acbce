"""Rate bounds and verified vector-linear encoders for cyclic-interference index coding."""

from .air import (
    AirMatrix,
    StructureChain,
    VerificationReport,
    build_air,
    stacked_identity,
    structure_chain,
    verify_adjacent_independence,
)
from .codec import (
    Encoder,
    SimReport,
    build_encoder,
    decodable,
    decode,
    encode,
    interference_set,
    receiver_ranks,
    simulate,
)
from .linalg import (
    det_exact,
    is_prime,
    left_kernel_mod_p,
    rank_mod_p,
    require_prime,
    solve_left,
)
from .rates import (
    BezoutTriple,
    ProblemInstance,
    RateSolution,
    extended_bezout,
    find_min_rate,
    find_min_rate_scan,
    is_feasible,
    known_broadcast_rate,
    oracle_min_rate,
    rate_upper_bound,
    solution_for_pair,
    truncated_decimal,
)

__version__ = "0.1.0"

__all__ = [
    "AirMatrix",
    "BezoutTriple",
    "Encoder",
    "ProblemInstance",
    "RateSolution",
    "SimReport",
    "StructureChain",
    "VerificationReport",
    "build_air",
    "build_encoder",
    "decodable",
    "decode",
    "det_exact",
    "encode",
    "extended_bezout",
    "find_min_rate",
    "find_min_rate_scan",
    "interference_set",
    "is_feasible",
    "is_prime",
    "known_broadcast_rate",
    "left_kernel_mod_p",
    "oracle_min_rate",
    "rank_mod_p",
    "rate_upper_bound",
    "receiver_ranks",
    "require_prime",
    "simulate",
    "solution_for_pair",
    "solve_left",
    "stacked_identity",
    "structure_chain",
    "truncated_decimal",
    "verify_adjacent_independence",
]
