"""Fragments, finite-word semantics and the weak tomorrow operator.

Run with ``python3 demos/01_fragments_and_finite_words.py``.
"""

# %% Parse a couple of formulas and ask which fragments they live in
from safetyfo import check
from safetyfo.fragments import classify_ltl
from safetyfo.semantics import eval_ltl_fin, parse_word
from safetyfo.syntax import parse_ltl
from safetyfo.translate import eliminate_for_finite_to_cosafety, eliminate_for_finite_to_safety

for text in ["a U b", "G a", "a U wX b", "F (a S b)"]:
    verdict = classify_ltl(parse_ltl(text))
    member = [name for name, ok in verdict.flags.items() if ok]
    print(f"{text:12} -> {', '.join(member)}")

# %% wX false holds exactly at the last position of a finite word
last = parse_ltl("wX false")
w = parse_word("{a};{};{a,b}")
print([eval_ltl_fin(last, w, i) for i in range(len(w))])

# %% On finite words G and F can be traded for U and R
g = parse_ltl("G a")
print("G a  ==", eliminate_for_finite_to_cosafety(g))
print("F a  ==", eliminate_for_finite_to_safety(parse_ltl("F a")))
print(check.lang_equiv_fin(g, eliminate_for_finite_to_cosafety(g), ("a",), 5))

# %% The price: a formula whose only model is {a}{a}
aa = check.AA_FORMULA
print("Lfin up to length 4:", [str(x) for x in check.enumerate_language(aa, ("a",), 4)])
print(check.prefix_closure_check(aa, ("a",), 4, 2))

# %% Without wX, satisfying words stay satisfying when extended
print(check.prefix_closure_check(parse_ltl("a U (b & X a)"), ("a", "b"), 4, 2))

# %% Yet read as good prefixes of infinite words, {a}{a} means the same as a & X a
print(check.separation_witness_aa())
