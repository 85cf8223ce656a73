"""Walk through the p-adic kernels: valuations, fractional binomials with
their exact valuation law, root-series radii, splitting radii, and
Artin-Schreier genus certificates.

Run with:  python3 demos/01_splitting_radii.py
"""

from fractions import Fraction

from nonarch import (BoundedSeries, PadicNumber, RamifiedGerm,
                     artin_schreier_certificate, binom_fractional,
                     convergence_logradius, series_p_power_root,
                     splitting_logradius_exact, splitting_logradius_numeric,
                     valuation, vp_factorial)

p = 3

# --- exact scalars ------------------------------------------------------
# Everything is stored exactly; v(p) = 1 and v(pi) = 1/2 for pi^2 = p.
print("v(p)  =", valuation(PadicNumber.from_rational(p, p)))
print("v(pi) =", valuation(PadicNumber.uniformizer(p)))

# --- the binomial valuation law ----------------------------------------
# For m = 1/p^(n-1) the coefficient C(m, k) has valuation
# -k(n-1) - v_p(k!), exactly.
n = 3
m = Fraction(1, p ** (n - 1))
print(f"\nvaluations of C(1/p^{n-1}, k) for k = 1..8 (p = {p}):")
for k in range(1, 9):
    b = binom_fractional(m, k, p)
    law = -k * (n - 1) - vp_factorial(k, p)
    print(f"  k={k}: v = {b.exact_valuation}  (law: {law})")

# --- root series and their certified radius -----------------------------
# The p^n-th root of 1 + X^N converges on log-radius > (n + 1/(p-1))/N;
# the library certifies that threshold exactly from the tail bound.
N = 2
f = BoundedSeries.build(p, [1, 0, 1])
root = series_p_power_root(f, n)
print(f"\nroot series tail bound: v_k >= {root.tail.alpha}*k + {root.tail.beta}")
print("certified log-radius:", convergence_logradius(root))
print("closed form         :", splitting_logradius_exact(N, n, p))

# --- splitting radii level by level -------------------------------------
germ = RamifiedGerm(f)
print(f"\nsplitting log-radii of the p^n-torsors of 1 + X^{N}:")
for level in range(1, 6):
    rho = splitting_logradius_numeric(germ, level)
    print(f"  n={level}: rho = {rho}")
print("consecutive differences are 1/N =", Fraction(1, N))

# rescaling the coordinate shifts the certified radius: X -> pX drops the
# log-radius by v(p) = 1
scaled = RamifiedGerm(f.rescale(PadicNumber.from_rational(p, p)))
print("after X -> pX, level 3 radius:", splitting_logradius_numeric(scaled, 3))

# --- Artin-Schreier certificates ----------------------------------------
# The residue curve T^p - T = X^e has genus (d-1)(p-1)/2 for e = p^m d;
# the point is forced into the vertex set exactly when the genus is >= 1.
print("\nArtin-Schreier certificates:")
for e in (1, 3, 6, 9, 10):
    cert = artin_schreier_certificate(e, p)
    print(f"  e={e}: {cert.residue_equation}, genus {cert.genus}, "
          f"forces vertex: {cert.forces_vertex}")
