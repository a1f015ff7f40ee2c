"""Constructive translations between the temporal and first-order fragments."""

from .bridges import cosafetyfo_to_ebfo, ebfo_to_cosafetyfo, fo_to_cosafetyfo
from .finite import eliminate_for_finite_to_cosafety, eliminate_for_finite_to_safety
from .ltl_fo import ltl_to_fo
from .normal_form import (
    ExistsForm,
    NormalForm,
    NormalFormBudgetError,
    NormalFormError,
    cosafetyfo_to_ltl,
    eval_normal_form,
    normal_form,
    normal_form_to_fo,
    normalform_to_ltl,
)

__all__ = [
    "ExistsForm",
    "NormalForm",
    "NormalFormBudgetError",
    "NormalFormError",
    "cosafetyfo_to_ebfo",
    "cosafetyfo_to_ltl",
    "ebfo_to_cosafetyfo",
    "eliminate_for_finite_to_cosafety",
    "eliminate_for_finite_to_safety",
    "eval_normal_form",
    "fo_to_cosafetyfo",
    "ltl_to_fo",
    "normal_form",
    "normal_form_to_fo",
    "normalform_to_ltl",
]
