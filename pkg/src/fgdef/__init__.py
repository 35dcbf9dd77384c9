"""fgdef: executable word combinatorics in free groups.

Reduced-word arithmetic, piece detection, exact genericity measurements,
cancellation-free parametrization patterns, cut equations with the
single-occurrence elimination cascade, and the classical rank-2
definability tests (bases, primitivity, system-to-one-equation folding).
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .cuteq import (Base, CutEquation, EliminationTrace, GeneralizedEquation,
                    Interval, Removal, SolutionCheck, build_cut_equation,
                    check_solution, eliminate_single_occurrence,
                    example_cut_equation, ge_check_solution,
                    induced_cut_solution, variable_occurrence_counts)
from .definable import (EquationExpr, check_trivial_only,
                        combine_system_to_single, is_basis_pair_f2,
                        is_primitive_f2, nielsen_neighbors, parse_equation)
from .errors import FgdefError, InputError, ResourceLimitError
from .genericity import (BallSpec, DensityReport, DensityRow, ball_size,
                         count_piece_rich, density_report, enumerate_sphere,
                         piece_threshold, power_sum_linear,
                         power_sum_quadratic, sphere_count, write_density_csv)
from .patterns import (MatchResult, NegligibilityReport, PatternSystem,
                       load_pattern_system, match_pattern,
                       member_of_multipattern, negligibility_report,
                       pattern_ratio_bound, pattern_system_to_json,
                       validate_pattern, witness_family)
from .pieces import (Occurrence, PieceReport, is_piece, longest_piece,
                     longest_piece_tuple, occurrences)
from .words import Alphabet, Word, commutator

__version__ = "0.1.0"
