"""Finite structural Ramsey computations on binary trees.

Strong-subtree enumeration, embedding/tuple/weak-tuple type censuses,
Joyce orders and graphs with their coded forms, and exhaustive finitary
Halpern-Lauchli / Milliken searches with verifiable certificates.
"""

__version__ = "0.1.0"

from .words import cmp_q, lt_q, meet, q_between, q_value, words_upto  # noqa: F401
from .trees import (FiniteTree, StrongSubtreeWitness,  # noqa: F401
                    enumerate_strong_subtrees,
                    enumerate_strong_subtrees_with_leaves, full_binary_tree,
                    is_strong_subtree)
from .sigs import (classify_weak_type, embedding_signature,  # noqa: F401
                   full_closure, render_signature, tuple_signature,
                   weak_signature)
from .census import census as census_row  # noqa: F401
from .census import (count_types, embedding_types_of_height,  # noqa: F401
                     type_catalog)
from .minimizer import (minimal_type_census, minimizer_tree,  # noqa: F401
                        tree_census)
from .joyce import (count_joyce_graphs, count_joyce_trees,  # noqa: F401
                    dlo_prefix, encode_coded_graph, encode_coded_order, epn,
                    generate_blossom, hat_encode, joyce_tree_of, rado_extend,
                    validate_blossom, validate_coded_joyce_graph,
                    validate_coded_joyce_order, validate_joyce_graph,
                    validate_joyce_order)
from .hl import (BoundParams, BudgetExceeded, hl_iteration_bound,  # noqa: F401
                 find_dense_matrix, milliken_search, min_hl_height,
                 search_level_product_mono, verify_certificate)
from .colorings import (ApproxOracle, EnumOrder, colors_used,  # noqa: F401
                        devlin_f0, f_lt_q, jockusch_f_levels,
                        jockusch_f_pairs, product_coloring,
                        tuple_type_coloring)
