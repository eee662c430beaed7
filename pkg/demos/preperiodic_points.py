"""
Rational preperiodic points
===========================

Complete lists under the certified height bound, plus a look at a
point whose orbit escapes.
"""

from fractions import Fraction

from dynfree import (canonical_height, is_preperiodic, parse_expression, prep_difference_witness,
                     rational_preperiodic_points)

for src in ["x^2", "x^2 - 2", "x^2 + 1", "x^2 - 3/4", "2x^2 - 1", "x^3 - 3x"]:
    report = rational_preperiodic_points(parse_expression(src))
    doc = report.to_json()
    print(f"{src:<10} {doc['points']}  searched height <= {doc['height_cutoff']}, "
          f"complete={doc['complete']}")

f = parse_expression("x^2 - 1")
ok, evidence = is_preperiodic(f, Fraction(1, 2))
print("\n1/2 under x^2 - 1 preperiodic?", ok, "| escapes at step", evidence.step,
      "| canonical height in", evidence.height)
print("canonical height at depth 20:", canonical_height(f, Fraction(1, 2), 20))

print("\nwitness for x^2 vs x^2 - 2:", prep_difference_witness(parse_expression("x^2"),
                                                              parse_expression("x^2-2")))
