"""From co-safety LTL to first-order logic, through the normal form, and back.

Run with ``python3 demos/02_ltl_to_fo_and_back.py``.
"""

# %%
from safetyfo import check
from safetyfo.fragments import classify_fo
from safetyfo.syntax import fo, parse_fo, parse_ltl
from safetyfo.translate import (
    NormalFormError,
    cosafetyfo_to_ltl,
    ltl_to_fo,
    normal_form,
    normalform_to_ltl,
)

# %% LTL to FO is syntax directed; X needs an empty gap because there is no successor symbol
for text in ["X p", "a U b", "F (a & X b)"]:
    f = parse_ltl(text)
    g = ltl_to_fo(f, "x", "finite")
    print(f"{text:12} -> {g}")
    print(f"{'':12}    size {fo.size(g)}, coSafetyFO: {classify_fo(g)['coSafetyFO']}")

# %% The normal form: a disjunction of chains x0 < x1 < ... with a letter class at each point
f = parse_fo("P(x) & exists y . (x < y & Q(y) & forall z . (x < z & z < y -> !P(z)))")
nf = normal_form(f)
print(nf.to_structured())
print("as LTL:", normalform_to_ltl(nf))

# %% Some co-safety languages are not a union of chains; the engine says so
hard = ltl_to_fo(parse_ltl("(X a | b) U c"), "x", "finite")
try:
    normal_form(hard)
except NormalFormError as exc:
    print("normal form:", exc)

# %% The round trip still succeeds: nested guarded universals are translated first and abstracted
back = cosafetyfo_to_ltl(hard)
print("round trip:", back)
print(check.lang_equiv_fin(parse_ltl("(X a | b) U c"), back, ("a", "b", "c"), 5))
