"""Workbench for finitely-valued Lukasiewicz modal logics.

Truth values are exact fractions k/(n-1); models are finite possibilistic
Kripke structures.  See the README for the command line surface.
"""

from .values import TruthValue, all_values, one, parse_value, tv, zero
from .formula import (
    Atom, Bot, Box, Coef, CoefCmp, Comp, CompP, Dia, Formula, FormulaClass,
    Iff, Imp, Max, Mec, Min, Neg, SConj, SDisj, Top, atoms_of, classify,
    desugar, mec_enumerate, parse, to_text,
)
from .kripke import (
    MVS5Model, PossibilisticModel, World, load_model, model_from_dict,
    model_to_dict, p_extension, p_restriction, save_model, validate,
)
from .semantics import SemanticsVariant, eval_formula, global_value, necessity, possibility
from .measures import (
    PossibilityAssignment, check_measure, load_assignment, measure_from_model,
    measure_of, reconstruct_model, save_assignment,
)
from .translate import (
    faithfulness_experiment, model_correspondence, star_mvkd45, star_mvs5,
    star_star_mvs5,
)
from .decide import (
    Verdict, axiom_suite, entails, equiv_check, is_ln_tautology, is_one_tautology,
)
from .proofs import CATALOG, Proof, ProofLine, check_proof, instantiate, load_proof, soundness_spotcheck

__version__ = "0.1.0"
