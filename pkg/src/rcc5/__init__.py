"""RCC-5 constraint networks: tractable-fragment solvers and the complete tractability map."""
from .algebra import (BOTTOM, TOP, BasicRelation, CompositionTable, DerivedRelation, Relation,
                      Subclass, closure, compose, converse, default_table,
                      derive_composition_table, intersect, is_subalgebra)
from .catalog import C1, C2, MAXIMAL_TRACTABLE, R5_9, R5_14, R5_17, R5_20, R5_28
from .classifier import classify, verify_maximality, verify_theorem_4_2
from .models import Interpretation, oracle_satisfiable, relation_of, satisfies
from .network import Formula, Network, normalize, parse, relation_set, serialize
from .solvers import SolveResult, Verdict, dispatch, solve

__version__ = "0.1.0"
