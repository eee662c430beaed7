"""
Growth of composition semigroups
================================

Exact counts d_S(n) for a few generating sets, with the advisory
growth classification.
"""

from dynfree import (GF, AffineMap, affine_growth, chebyshev, classify_growth, growth_table,
                     parse_expression)

cases = [
    ("Chebyshev T2, T3", [chebyshev(2), chebyshev(3)]),
    ("x^2, x^2 - 2", [parse_expression("x^2"), parse_expression("x^2-2")]),
    ("x^2, x^3", [parse_expression("x^2"), parse_expression("x^3")]),
    ("x^2, x^2 + x over F_3", [parse_expression("x^2", GF(3)), parse_expression("x^2+x", GF(3))]),
]

for label, gens in cases:
    table = growth_table(gens, 8)
    print(f"{label:<24} {table.values}  {classify_growth(table)}")

# T2 and T3 commute, so only the degree 2^a 3^b of a word matters: n(n+3)/2.
print("n(n+3)/2:", [n * (n + 3) // 2 for n in range(1, 9)])

# Affine maps are counted through their matrix embedding.
double, shift = AffineMap(((2,),), (0,)), AffineMap(((1,),), (1,))
table = affine_growth([double, shift], 10)
print(f"\n{'2x, x + 1':<24} {table.values}  {classify_growth(table)}")
print("free count would be     ", [2 ** (n + 1) - 2 for n in range(1, 11)])

shear = AffineMap(((1, 1), (0, 1)), (0, 0))
lift = AffineMap(((1, 0), (0, 1)), (0, 1))
table = affine_growth([shear, lift], 12)
print(f"{'Heisenberg shears':<24} {table.values}  {classify_growth(table)}")
print()
print(growth_table([chebyshev(2), chebyshev(3)], 5).to_csv())
