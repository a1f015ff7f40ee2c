"""Prefix closure of arbitrary FO, and the bridge to existential bounded FO.

Run with ``python3 demos/03_bridges.py``.
"""

# %%
import numpy as np

from safetyfo import check
from safetyfo.fragments import classify_fo
from safetyfo.semantics import all_codes, eval_cosafetyfo_lasso, fo_truth_at, parse_lasso
from safetyfo.syntax import parse_fo, parse_ltl
from safetyfo.translate import cosafetyfo_to_ebfo, ebfo_to_cosafetyfo, fo_to_cosafetyfo

# %% "a holds from x on" is not co-safety; its prefix closure is
f = parse_fo("forall z . (x <= z -> A(z))")
g = fo_to_cosafetyfo(f, "x")
print(g, "| coSafetyFO:", classify_fo(g)["coSafetyFO"])

# %% g accepts a word iff some prefix of it satisfies f
letters = ("a",)
for n in range(1, 5):
    codes = all_codes(1, n)
    closure = np.zeros(len(codes), dtype=bool)
    for m in range(1, n + 1):
        closure |= fo_truth_at(f, np.ascontiguousarray(codes[:, :m]), letters, "x")[:, 0]
    assert np.array_equal(closure, fo_truth_at(g, codes, letters, "x")[:, 0])
print("prefix closure agrees on all words up to length 4")

# %% Close the free variable at position 0 to get an EBFO sentence, then reopen it
h = parse_fo("exists y . (x < y & P(y) & forall z . (x < z & z < y -> !P(z)))")
e = cosafetyfo_to_ebfo(h)
back = ebfo_to_cosafetyfo(e, "x")
print("EBFO:", e)
print("back:", back)

# %% On infinite words the language is witnessed by a finite prefix
for text in ["{} | {p}", "{};{};{} | {p};{}", "{p} | {}"]:
    w = parse_lasso(text)
    print(f"{text:18}", eval_cosafetyfo_lasso(h, w, {"x": 0}, 8), "|", eval_cosafetyfo_lasso(back, w, {"x": 0}, 8))

# %% A good prefix for F a, and none for G a
print(check.good_prefix_evidence(parse_ltl("F a"), parse_lasso("{};{a} | {a}"), 3))
print(check.good_prefix_evidence(parse_ltl("G a"), parse_lasso("{a} | {a}"), 3))
