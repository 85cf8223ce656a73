"""The order-set solver: which vanishing orders are achieved by Q_p-linear
combinations of simple poles, the dimension inequality, and the search for
an order k with k+1 not a p-power.

Run with:  python3 demos/03_pole_orders.py
"""

from fractions import Fraction

from nonarch import (PadicNumber, PoleFamily, find_nonppower_order,
                     finite_product_eval, integer_approximation,
                     moebius_orbit, order_of_combination, order_set)

p = 5


def Q(r):
    return PadicNumber.from_rational(p, Fraction(r))


# --- a rational pole family ----------------------------------------------
fam = PoleFamily(tuple(Q(i) for i in (1, 2, 3, 4, 6, 7)), Q(0))
res = order_set(fam, nmax=5)
print("C =", res.C)
print("dims dim V_n:", res.dims)
print("achieved orders E:", res.E_window)
print("counts u_n:", res.u)
print("dim V_n <= C u_n holds:", res.check_inequality())

# --- a quadratic-extension family (C = 2) ---------------------------------
pi = PadicNumber.uniformizer(p)
fam2 = PoleFamily((Q(1), Q(1) + pi, Q(2), Q(2) + pi * 3, Q(3)), Q(0))
res2 = order_set(fam2, nmax=6)
print("\nC =", res2.C, "dims:", res2.dims, "E:", res2.E_window)
print("inequality still holds:", res2.check_inequality())

# --- non-p-power orders ----------------------------------------------------
# Find coefficients in Z_p whose combination vanishes to an order k with
# k+1 not a power of p, then re-verify the order by expansion.
coeffs = find_nonppower_order(fam, p)
k = order_of_combination(coeffs, fam)
print(f"\nwitness coefficients: {[str(c) for c in coeffs]}")
print(f"order {k}; {k}+1 = {k + 1} is not a power of {p}")

# --- integer approximation and finite products ----------------------------
# a_i are approximated by integers to p-adic depth n; the finite product
# prod ((X-i)/(x-i))^(a_i) is normalized to 1 at X = x.
a = Q(Fraction(-7, 3))
for depth in (1, 2, 4):
    r = integer_approximation(a, depth)
    print(f"-7/3 = {r} mod {p}^{depth}  (check v: "
          f"{(a - r).exact_valuation} >= {depth})")

x, z = Q(9), Q(11)
val = finite_product_eval((Q(1), Q(2)), (3, -1), x, z)
print("finite product value at z:", val.rat)
print("value at x (normalization):",
      finite_product_eval((Q(1), Q(2)), (3, -1), x, x).rat)

# --- orbit families ---------------------------------------------------------
# Pole sets arising as Moebius orbits g^k(t) are generated (and truncated)
# directly; here g is the scaling z -> p^2 z.
orbit = moebius_orbit((p * p, 0, 0, 1), Q(1), -2, 2)
print("\norbit of 1 under z -> p^2 z:", [str(o.rat) for o in orbit])
fam3 = PoleFamily(tuple(orbit), Q(3))
print("orbit family achieved orders:", order_set(fam3, 4).E_window)
