"""Generating-series transforms and the moment congruence harness."""

from fractions import Fraction
from math import comb

from elladic import (
    Word,
    bernoulli_measure,
    congruence_check,
    dirac_tower,
    f_transform,
    measure_from_p_series,
    p_series_to_f,
    p_transform,
    random_bounded_tower,
)

print("== binomial-moment series of a point mass ==")
d7 = dirac_tower((7,), 5, 1, 3)
P = p_transform(d7, 8)
print("coefficients C(7, k):", [str(P[(k,)]) for k in range(8)],
      "==", [comb(7, k) for k in range(8)])

print("\n== tower <-> series roundtrip (exact) ==")
E = bernoulli_measure(2, 5, 3)
full = p_transform(E, 5 ** 3 - 1, total=False)
back = measure_from_p_series(full, 5, 3)
print("recovered tower equals the original:", back.levels == E.levels)

print("\n== exponential substitution A = e^X - 1 ==")
print("X-form equals A-form after substitution:",
      p_series_to_f(p_transform(E, 8), 8) == f_transform(E, 8))

print("\n== moment congruences on synthetic towers ==")
mu = random_bounded_tower(3, 1, depth=4, denom_exponent=1, seed=7)
rep = congruence_check(mu, Word((0, 7)), Word((0, 13)), M=1)
print(f"7! * li_(0,7) vs 13! * li_(0,13): difference valuation "
      f"{rep.difference_valuation}, required {rep.required_valuation}, "
      f"passed {rep.passed}")

mu2 = random_bounded_tower(3, 2, depth=4, denom_exponent=1, seed=11)
rep2 = congruence_check(mu2, Word((0, 7, 11)), Word((0, 13, 29)), M=1)
print(f"rank 2: difference valuation {rep2.difference_valuation}, "
      f"required {rep2.required_valuation}, passed {rep2.passed}")
