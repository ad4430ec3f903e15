"""Two computations of nabla e_n.

One goes through modified Macdonald polynomials and the nabla eigenoperator.
The other sums q^area t^dinv over word parking functions.  Both land in the
monomial basis, where they can be compared term by term.
"""
import time

from rcatalan import convert, enumerate_parking_functions, hall_inner, nabla, shuffle_sum
from rcatalan.symfunc import e, p

for n in range(1, 6):
    t0 = time.perf_counter()
    via_nabla = convert(nabla(e(n)), "m")
    t1 = time.perf_counter()
    via_paths = shuffle_sum(n)
    t2 = time.perf_counter()
    agree = via_nabla == via_paths
    print(f"n = {n}: agree={agree}  nabla {t1 - t0:.2f} s, parking functions {t2 - t1:.2f} s")

n = 3
print(f"\nnabla e_{n} =", convert(nabla(e(n)), "s"))
hilb = hall_inner(nabla(e(n)), p(*[1] * n))
print(f"Hilbert series (coefficient of p_1^{n}): {hilb}")
print(f"parking functions of size {n}: {len(enumerate_parking_functions(n))}, value at q=t=1: {hilb.evaluate(1, 1)}")
