"""The (q,t)-coefficient of h_(n-1,1) in nabla e_n.

As a polynomial it is the staircase: every monomial q^a t^b with
a + b <= n - 1 appears once, so the value at q = t = 1 is binom(n+1, 2).
The grids below put the power of q on the horizontal axis.
"""
from math import comb

from rcatalan import dim_qt_DR_typeA

for n in range(2, 7):
    coeff = dim_qt_DR_typeA(n, (n - 1, 1))
    print(f"n = {n}: value at q=t=1 is {coeff.evaluate(1, 1)}, binom({n + 1}, 2) = {comb(n + 1, 2)}")
    grid = coeff.numerator_dict()
    for b in range(n - 1, -1, -1):
        print("    " + " ".join(str(grid.get((a, b), ".")) for a in range(n)))
