"""
Tree-braid-tree diagrams in a few lines
=======================================

Generators, products, reduction and equality.
"""

from bvgroup import eval_word, n_carets, x_gen, sigma_gen, tau_gen

# each generator is a small reduced diagram
for name, d in [("x0", x_gen(0)), ("s1", sigma_gen(1)), ("t1", tau_gen(1))]:
    print(f"{name:3s} N={n_carets(d)}  {d}")

# words are multiplied left to right and reduced as they go
g = eval_word("x0 s1 x1^-1 t1")
print("g =", g.canonical)

# equality is group equality, whatever the spelling
print(eval_word("x2 x0") == eval_word("x0 x3"))
print(eval_word("s1 s2 s1") == eval_word("s2 s1 s2"))

# a diagram times its inverse collapses to the trivial tree
print(n_carets(g * ~g))
