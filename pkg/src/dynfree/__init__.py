"""Exact tools for freeness and growth of semigroups of rational maps under composition."""

from .fields import GF, QQ, Field, KummerExtension
from .freeness import (Free, FreenessCertificate, MonomialObstruction, NoWitnessFound,
                       RelationReport, Unknown, brute_force_relation_search, compute_j,
                       fixed_point_order, freeness_certificate, jz_free_test, verify_certificate,
                       word_inequality_check)
from .growth import (AffineMap, GrowthClass, GrowthTable, absorb_constants, affine_growth,
                     classify_growth, growth_table)
from .heights import (CompBound, HeightInterval, canonical_height, composition_bound,
                      escape_rate_complex, weil_height)
from .parser import parse_expression
from .powerseries import SeriesTrunc, boettcher, monomial_detect, ps_compose, ps_inverse
from .preper import PrepReport, is_preperiodic, prep_difference_witness, rational_preperiodic_points
from .ratfun import (INF, RatFun, chebyshev, compose, conjugate, constant, derivative, evaluate,
                     iterate, moebius, normalize, polynomial, x)
from .words import Word, evaluate_word, word_degree

__all__ = [
    'GF', 'QQ', 'Field', 'KummerExtension', 'Free', 'FreenessCertificate',
    'MonomialObstruction', 'NoWitnessFound', 'RelationReport', 'Unknown',
    'brute_force_relation_search', 'compute_j', 'fixed_point_order', 'freeness_certificate',
    'jz_free_test', 'verify_certificate', 'word_inequality_check', 'AffineMap', 'GrowthClass',
    'GrowthTable', 'absorb_constants', 'affine_growth', 'classify_growth', 'growth_table',
    'CompBound', 'HeightInterval', 'canonical_height', 'composition_bound',
    'escape_rate_complex', 'weil_height', 'parse_expression', 'SeriesTrunc', 'boettcher',
    'monomial_detect', 'ps_compose', 'ps_inverse', 'PrepReport', 'is_preperiodic',
    'prep_difference_witness', 'rational_preperiodic_points', 'INF', 'RatFun', 'chebyshev',
    'compose', 'conjugate', 'constant', 'derivative', 'evaluate', 'iterate', 'moebius',
    'normalize', 'polynomial', 'x', 'Word', 'evaluate_word', 'word_degree',
]

__version__ = "0.1.0"
