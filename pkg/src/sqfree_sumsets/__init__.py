"""Sets of integers whose sumset avoids the squarefree numbers: constructions, constants, exhaustive checks."""

__version__ = "0.1.0"

from .sieve import SquarefreeTable, build_squarefree_table, count_squarefree_in_class, is_squarefree  # noqa: E402
from .sets import IntegerSet, density, from_members, h_fold_sumset, subset_sums, sumset  # noqa: E402
from .construct import build_A, build_paired, q_of  # noqa: E402

__all__ = [
    "SquarefreeTable",
    "build_squarefree_table",
    "count_squarefree_in_class",
    "is_squarefree",
    "IntegerSet",
    "density",
    "from_members",
    "h_fold_sumset",
    "subset_sums",
    "sumset",
    "build_A",
    "build_paired",
    "q_of",
]
