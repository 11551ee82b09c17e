"""Assumption-based truth maintenance with Dempster-Shafer belief evaluation.

The package has three layers:

* :mod:`beliefatms.atms` — a Horn-clause engine that maintains minimal,
  consistent labels (assumption-set supports) for every literal;
* :mod:`beliefatms.belief` together with :mod:`beliefatms.reliability` —
  the numeric layer that turns weighted labels into belief values via
  network-reliability evaluation and conditions them on the nogoods;
* :mod:`beliefatms.recognition` — a demo that detects puppet figures in
  overlapping-rectangle scenes and ranks interpretations by belief.
"""

from .atms import (
    CONTRADICTION,
    AtmsError,
    DuplicateNameError,
    Engine,
    Env,
    UnknownLiteralError,
    combine_antecedent_labels,
    env_union,
    filter_consistent,
    minimize,
)
from .belief import (
    FrameMass,
    MissingMassError,
    TotalConflictError,
    belief_of_label,
    brute_force_belief,
    conditioned_belief,
    ds_combine,
    env_mass,
    frame_belief,
)
from .clausefile import ClauseFileError, load_clause_file, load_clause_text
from .reliability import (
    DisjointDnf,
    Dnf,
    prob_enum,
    prob_inclusion_exclusion,
    to_disjoint,
)

__version__ = "0.1.0"

__all__ = [
    "CONTRADICTION",
    "AtmsError",
    "DuplicateNameError",
    "Engine",
    "Env",
    "UnknownLiteralError",
    "combine_antecedent_labels",
    "env_union",
    "filter_consistent",
    "minimize",
    "FrameMass",
    "MissingMassError",
    "TotalConflictError",
    "belief_of_label",
    "brute_force_belief",
    "conditioned_belief",
    "ds_combine",
    "env_mass",
    "frame_belief",
    "ClauseFileError",
    "load_clause_file",
    "load_clause_text",
    "DisjointDnf",
    "Dnf",
    "prob_enum",
    "prob_inclusion_exclusion",
    "to_disjoint",
    "__version__",
]
