"""
How caret counts move under x0
==============================

Right multiplication by ``x0`` changes the caret count by at most one, and
along a run of powers the count stays flat until the left branch is used up.
"""

import random

from bvgroup import FINITE_ALPHABET, GenWord, eval_word, n_carets, x_gen
from bvgroup.diagrams import ell0

rng = random.Random(1)
x0 = x_gen(0)

# pick a random element with at least three carets
while True:
    w = GenWord(rng.choice(FINITE_ALPHABET) for _ in range(8))
    w = w.free_reduce()
    g = eval_word(w)
    if n_carets(g) >= 3:
        break
print("g =", w, " N =", n_carets(g), " l0 =", ell0(g))

# walk along g x0^i and watch N and l0
c = g
for i in range(8):
    print(f"i={i}  N={n_carets(c):2d}  l0={ell0(c)}")
    c = c * x0
