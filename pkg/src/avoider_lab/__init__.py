"""avoider-lab: indecomposable {4321,3241}-avoiding permutations.

Implements the height-list bijection onto pairs (indecomposable
321-avoider, bounded-growth height sequence), the lattice-path and
ballot-number machinery behind it, exact truncated series realizing the
counting identity F = 1/(1 - x*C(x*C(x))), and an exhaustive verifier.
"""

from .bijection import (
    MapImage,
    Triple,
    analyze,
    associated_triple,
    blue_entries,
    check_avoider,
    forward_map,
    insertion_position,
    inverse_map,
    is_avoider,
    order_runs,
    peak_blue,
    peak_insertion_list,
    peak_insertion_set,
)
from .errors import DomainError, InvalidHeightError, InvalidInputError
from .paths import (
    PathClass,
    ballot,
    catalan_number,
    check_height_sequence,
    classify_path,
    count_height_sequences,
    enumerate_height_sequences,
    heights_to_path,
    parse_path,
    path_to_heights,
)
from .perm import (
    Perm,
    components,
    contains_pattern,
    count_avoiders,
    delete_entry,
    enumerate_avoiders,
    find_pattern,
    format_perm,
    insert_entry,
    is_indecomposable,
    left_to_right_maxima,
    parse_perm,
    standardize,
)
from .series import (
    IntSeries,
    bfile_lines,
    catalan_series,
    catalan_transform,
    f_series,
    g_series,
    invert_transform,
    transforms,
    u_by_formula,
)
from .verify import run_verification

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "InvalidHeightError",
    "InvalidInputError",
    "IntSeries",
    "MapImage",
    "PathClass",
    "Perm",
    "Triple",
    "analyze",
    "associated_triple",
    "ballot",
    "bfile_lines",
    "blue_entries",
    "catalan_number",
    "catalan_series",
    "catalan_transform",
    "check_avoider",
    "check_height_sequence",
    "classify_path",
    "components",
    "contains_pattern",
    "count_avoiders",
    "count_height_sequences",
    "delete_entry",
    "enumerate_avoiders",
    "enumerate_height_sequences",
    "f_series",
    "find_pattern",
    "format_perm",
    "forward_map",
    "g_series",
    "heights_to_path",
    "insert_entry",
    "insertion_position",
    "inverse_map",
    "invert_transform",
    "is_avoider",
    "is_indecomposable",
    "left_to_right_maxima",
    "order_runs",
    "parse_path",
    "parse_perm",
    "path_to_heights",
    "peak_blue",
    "peak_insertion_list",
    "peak_insertion_set",
    "run_verification",
    "standardize",
    "transforms",
    "u_by_formula",
]
