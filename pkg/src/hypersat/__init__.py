"""hypersat: 3-SAT sub-clause decomposition, thresholds, assignment
heuristics, 2-SAT reductions and hypernodal implication graphs.
"""

from .assignments import (CurveSeries, ExclusionReport, Thresholds, consumption_rate,
                          excluded_literals, generate_greedy, generate_heuristic,
                          random_assignment, subclause_count, subclause_total,
                          thresholds, unsolved_curve)
from .dimacs import DimacsError, emit_dimacs, parse_dimacs
from .formula import (Assignment, Clause, EvalReport, Formula, GuardrailError, Literal,
                      check_consistent, evaluate, formula, is_complete, literal_str,
                      make_clause, make_literal, negate, parse_literal, random_formula,
                      satisfied, solve_exhaustive, var_of)
from .hypernodal import (Digraph, ExpansionTree, HypernodalGraph, LiteralGraph,
                         build_hypernodal, build_literal_graph, expand_literal,
                         expansion_to_json, export_dot, find_contradictions,
                         merge_active, strongly_connected_components, transitive_closure)
from .reduction import (Decomposition, HypothesisError, TwoSatFormula, TwoSatResult,
                        assignment_satisfies_2sat, decompose, reduce_ksat,
                        reduce_to_2sat, solve_2sat, verify_corollary1, verify_theorem)
from .subclauses import (InteractionMatrix, SubClauseSpace, build_space,
                         interaction_matrix, space_census)

__version__ = "0.1.0"
