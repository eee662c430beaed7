"""
A freeness certificate, end to end
==================================

Builds the certificate for x^2 and x^2 - 2, checks it independently,
then audits the claim by brute force.
"""

from dynfree import (brute_force_relation_search, canonical_height, composition_bound,
                     freeness_certificate, iterate, parse_expression, verify_certificate,
                     word_inequality_check)

f = parse_expression("x^2")
g = parse_expression("x^2 - 2")

# Heights at the candidate point 2: it escapes under f and is fixed by g.
print("h_f(2) in", canonical_height(f, 2, 20))
print("h_g(2) in", canonical_height(g, 2, 20))
print("C(f) =", float(composition_bound(f).value), " C(g) =", float(composition_bound(g).value))

cert = freeness_certificate(f, g)
print()
for key, value in cert.to_json().items():
    print(f"{key:>12}: {value}")
print("verifies:", verify_certificate(cert))

# The powers f^j and g^j should generate a free semigroup: every word up to length 6 is distinct.
fj, gj = iterate(f, cert.j), iterate(g, cert.j)
audit = brute_force_relation_search([fj, gj], 6)
print(f"\naudit: {audit.word_count} words, {audit.distinct_count} distinct, "
      f"{len(audit.relations)} relations")
print("word inequality to length 3:", word_inequality_check(cert, 3))

# A pair with no separating point: monomials share every canonical height.
res = freeness_certificate(f, parse_expression("x^3"))
print("\nx^2 vs x^3:", res.to_json())
