"""p-bases of finite groups.

A p-base of G is a set of p-elements generating a p-group whose centralizer
in G is p-nilpotent.  The package builds such sets by explicit recipes for
symmetric, alternating and linear groups, certifies any candidate by brute
force, and searches small groups exhaustively for minimal ones.
"""

from .algebra import FieldSpec, Matrix, Polynomial, companion_matrix, field_make, field_of_order, minimal_polynomial
from .constructors import (alternating_base, gl_base, project_base, psl_base, self_centralizing_base, sl_base,
                           symmetric_base)
from .cyclotomy import FactorSystem, cyclo_factor, verify_factor_system
from .groups import (BaseCertificate, BudgetExceeded, Group, Perm, Subgroup, centralizer, enumerate_group,
                     is_p_nilpotent, sylow, verify_p_base)
from .search import CatalogEntry, SearchReport, catalog, minimal_p_base, run_harness

__version__ = "0.1.0"
