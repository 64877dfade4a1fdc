"""The ell-adic L-function families, each checked along two routes."""

from fractions import Fraction

from elladic import (
    DirichletCharacter,
    classical_dirichlet_special,
    dirichlet_node,
    hurwitz_node,
    kl_node,
    kubota_leopoldt,
    minus_one_l,
    zinv_report,
)

ell = 5

print("== zeta-type family ==")
measure_route = kubota_leopoldt(2, 2, ell, c=2, level=6)
closed = kl_node(2, 2, ell)
print(f"measure route  L(1-2), beta=2: {measure_route}")
print(f"closed form    -(1/2) B_(2,triv): {closed}")
print(f"agree at stated precision: {measure_route.congruent(closed)}")
print(f"residue mod 25: {measure_route.residue(2)}  (1/3 = 17 mod 25)")

print("\nindependence of the regularizing unit:")
for c in (2, 3):
    print(f"  c={c}:", kubota_leopoldt(0, 2, ell, c=c, level=5))

print("\n== the z = -1 variant ==")
v = minus_one_l(2, 2, ell, c=2, level=6)
print(f"value at weight 2: {v}  (exact -1/6: {v.congruent(Fraction(-1, 6))})")

print("\n== Hurwitz-type values ==")
print(f"(1/2)(B_2(1/3) - 5 B_2(2/3)) = {hurwitz_node(2, 1, 3, ell)}")

print("\n== Dirichlet L-series (quadratic character mod 4) ==")
psi = DirichletCharacter(4, {1: 1, 3: -1}, ell)
print(f"classical L(-4, psi) = {classical_dirichlet_special(psi, 5)}")
print(f"regularized value    = {dirichlet_node(psi, 5, ell)}  "
      f"(= (1 - 5^4) * 5/2)")

print("\n== L-functions of Z[1/m] ==")
rep = zinv_report(2, 2, [2, 3], ell)
print(f"definition route: {rep['definition_route']}")
print(f"product shortcut: {rep['product_route']}")
print(f"global sign between the two: {rep['sign']}")
