from . import fo, ltl
from .parse import FormulaSyntaxError, UnknownAtomError, parse_fo, parse_ltl

__all__ = ["fo", "ltl", "parse_fo", "parse_ltl", "FormulaSyntaxError", "UnknownAtomError"]
