"""
Registry of the calculus rules, shared by the main loop and the REPL.
"""
# builtins
from typing import Dict, List

# local
from hol_prover.calculus import InferenceRule
from hol_prover.calculus.choice_ops import DetectChoiceRule, ChoiceRule
from hol_prover.calculus.equality_ops import LeibEqRule, AndrEqRule
from hol_prover.calculus.prim_subst_ops import PrimSubstRule
from hol_prover.calculus.resolution_ops import (
    ResolveRule, FactoriseRule, EqualityResolutionRule, UnifyRule,
)


RULES: Dict[str, InferenceRule] = {
    rule.name: rule for rule in (
        DetectChoiceRule(),
        ChoiceRule(),
        LeibEqRule(),
        AndrEqRule(),
        PrimSubstRule(),
        ResolveRule(),
        FactoriseRule(),
        EqualityResolutionRule(),
        UnifyRule(),
    )
}

# unary rules applied to every given clause, in this order
GENERATING_RULES: List[str] = ["factorise", "eq_res", "choice", "LeibEQ", "AndrEQ", "prim_subst"]


def get_rule(name: str) -> InferenceRule:
    '''
    Raises:
        KeyError: unknown rule name.
    '''
    try:
        return RULES[name]
    except KeyError:
        raise KeyError(f"unknown rule '{name}', expected one of {', '.join(sorted(RULES))}")
