"""
Boettcher coordinates and the monomial test
===========================================

Conjugates a superattracting germ to X^m and uses the coordinate to
decide freeness for pairs sharing the fixed point.
"""

from dynfree import GF, INF, QQ, boettcher, jz_free_test, parse_expression
from dynfree.powerseries import conjugate_series, local_expansion

N = 10
f = parse_expression("x^2 + x^3")
F = local_expansion(f, 0, N)
L = boettcher(F, N)
print("f   =", F)
print("L   =", L)
print("L^-1 o f o L =", conjugate_series(F, L))

# A leading coefficient without a rational square root needs one radical.
G = local_expansion(parse_expression("-2x^3 + x^4"), 0, N)
L = boettcher(G, N)
print("\nover", L.ring, ":", L)

pairs = [
    ("x^2", "x^3", None, 0),
    ("x^2", "2x^3", None, 0),
    ("x^2", "x^2 + x^3", None, 0),
    ("x^2", "x^2 + x", GF(3), INF),
]
print()
for a, b, field, alpha in pairs:
    K = field or QQ
    fa, fb = parse_expression(a, K), parse_expression(b, K)
    print(f"{a:>6} , {b:<10} at {alpha}: {jz_free_test(fa, fb, alpha, 16).to_json()}")
