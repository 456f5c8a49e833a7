"""revxdt — reversible two-way finite-state transducers.

Core model and execution (machine, semantics), a brute-force oracle
(oracle), the tree-outline reversibilization (tree_outline), reversible
composition (compose), one-way reversibilization pipelines (oneway),
uniformization of nondeterministic two-way transducers (uniformize), and
copyless streaming string transducers (sst).
"""

from .machine import (BEGIN, END, BACKWARD, FORWARD, State, Transducer,
                      Transition, trim, validate, word, wrap_input)
from .semantics import (Configuration, PropertyReport, Run, RunOutcome,
                        check_properties, predecessors, run_deterministic,
                        successors)
from .oracle import (check_equiv, check_uniformizes, enumerate_accepting_runs,
                     longrun, minimal_run, relation)
from .compose import compose_reversible, end_to_end_runs
from .tree_outline import tree_outline
from .oneway import (build_desync, build_mirror, build_mult,
                     codet1ft_to_reversible, det1ft_to_reversible,
                     reverse_1ft, reversibilize)
from .uniformize import (behavior_step, build_follower, build_right_oracle,
                         build_uniformizer, slice_update, uniformize)
from .sst import (Sst, Substitution, build_navigator, check_copyless,
                  compose_substitutions, eval_sst, sst_to_reversible,
                  strip_sst)
from .fixtures import (fix_a1, fix_a2, fix_id, fix_rel, fix_sst_id,
                       fix_sst_pal, fix_t1)

__version__ = "0.1.0"
