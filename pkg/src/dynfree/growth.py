"""Growth functions d_S(n) = |S^{<=n}| of composition semigroups.

S^{<=n} is the set of maps expressible as products of 1..n generators; the
identity (empty product) is not counted.  Enumeration is breadth first:
every element of length n+1 is a generator applied to an element that
first appeared at length n, so only the newest layer is extended.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction

import numpy as np
from sympy import Matrix, Rational

from .errors import AllConstant, BudgetExceeded, FieldMismatch, TableTooShort, UnsupportedMap
from .intern import Interner
from .preper import default_budget
from .ratfun import RatFun, poly_expr, to_expr
from .words import Word

IDENTITY_NOTE = "S^{<=n} counts products of length 1..n (identity excluded)"
RESIDUAL_THRESHOLD = 1e-2
LINEAR_TOLERANCE = 0.2


@dataclass
class GrowthTable:
    generators: list  # printable descriptions
    values: list
    field: str = "q"
    truncated: bool = False
    confirmation: dict = dc_field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [f"# generators: {'; '.join(self.generators)}",
                 f"# field: {self.field}",
                 f"# {IDENTITY_NOTE}"]
        if self.truncated:
            lines.append("# truncated: element budget exceeded")
        lines.append("n,d_S(n)")
        lines += [f"{n},{v}" for n, v in enumerate(self.values, start=1)]
        return "\n".join(lines) + "\n"

    def to_json(self, classification: "GrowthClass | None" = None) -> dict:
        doc = {
            "generators": list(self.generators),
            "field": self.field,
            "identity": "excluded",
            "convention": IDENTITY_NOTE,
            "values": list(self.values),
            "truncated": self.truncated,
        }
        if self.confirmation:
            doc["confirmation"] = self.confirmation
        if classification is not None:
            doc["classification"] = classification.to_json()
        return doc


def _check_gens(gens, allow_constants: bool):
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    if any(g.field != gens[0].field for g in gens):
        raise FieldMismatch("generators live over different fields")
    if not allow_constants and any(g.is_constant for g in gens):
        raise UnsupportedMap("constant generator; filter with absorb_constants first")
    return gens


def growth_table(gens, n_max: int, budget: int | None = None, seed: int = 0,
                 allow_constants: bool = False) -> GrowthTable:
    """Exact d_S(1..n_max) for rational maps, interning canonical forms.

    Raises BudgetExceeded, carrying the truncated table, once more than
    ``budget`` distinct elements have been seen.
    """
    gens = _check_gens(gens, allow_constants)
    budget = default_budget() if budget is None else budget
    store = Interner(gens, seed=seed)
    table = GrowthTable([to_expr(g) for g in gens], [], gens[0].field.spec())
    frontier = [(Word(), store.identity_key())]
    for _ in range(n_max):
        nxt = []
        for w, key in frontier:
            for i in range(len(gens)):
                w2, k2 = Word(w.letters + (i,)), store.extend(key, i)
                if store.intern(k2, w2)[1]:
                    nxt.append((w2, k2))
                    if len(store) > budget:
                        table.truncated = True
                        table.confirmation = store.confirmation()
                        raise BudgetExceeded(f"more than {budget} distinct elements", partial=table)
        frontier = nxt
        table.values.append(len(store))
    table.confirmation = store.confirmation()
    return table


@dataclass(frozen=True)
class GrowthClass:
    kind: str  # Bounded, Linear, Polynomial, Exponential, Inconclusive
    estimate: float | None = None  # polynomial degree or exponential rate
    residual: float | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "estimate": None if self.estimate is None else round(self.estimate, 6),
            "residual": None if self.residual is None else float(f"{self.residual:.3g}"),
            "residual_threshold": RESIDUAL_THRESHOLD,
            "linear_tolerance": LINEAR_TOLERANCE,
            "advisory": True,
        }

    def __str__(self):
        if self.estimate is None:
            return self.kind
        return f"{self.kind}({self.estimate:.3f})"


def _fit(x, y):
    """Least squares of y on (x, 1, 1/n, 1/n^2); returns (slope, rms residual).

    The 1/n^2 column is dropped for tables shorter than 6 so that the fit
    stays overdetermined.
    """
    n = np.arange(1, len(y) + 1, dtype=float)
    cols = [x, np.ones_like(n), 1.0 / n]
    if len(y) >= 6:
        cols.append(1.0 / n ** 2)
    A = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return coef[0], float(np.sqrt(np.mean(resid ** 2)))


def classify_growth(table) -> GrowthClass:
    """Heuristic growth type from a table (or a plain sequence of counts).

    log d_S(n) is fitted against log n (polynomial growth) and against n
    (exponential growth), each with a constant and 1/n, 1/n^2 corrections; the
    better fit wins if its rms residual is below RESIDUAL_THRESHOLD.
    """
    values = list(table.values if isinstance(table, GrowthTable) else table)
    if len(values) < 4:
        raise TableTooShort(f"need at least 4 values, got {len(values)}")
    tail = values[len(values) // 2:]
    if len(set(tail)) == 1:
        return GrowthClass("Bounded", float(tail[0]), 0.0)
    y = np.log(np.asarray(values, dtype=float))
    n = np.arange(1, len(values) + 1, dtype=float)
    degree, res_poly = _fit(np.log(n), y)
    slope, res_exp = _fit(n, y)
    if min(res_poly, res_exp) > RESIDUAL_THRESHOLD:
        return GrowthClass("Inconclusive", None, min(res_poly, res_exp))
    if res_poly <= res_exp:
        if abs(degree - 1) <= LINEAR_TOLERANCE:
            return GrowthClass("Linear", float(degree), res_poly)
        return GrowthClass("Polynomial", float(degree), res_poly)
    return GrowthClass("Exponential", float(np.exp(slope)), res_exp)


def absorb_constants(gens):
    """(nonconstant generators, whether any constant was dropped).

    Adding constant maps to a generating set at most doubles every d_S(n),
    so growth type is unaffected by dropping them.
    """
    gens = list(gens)
    kept = [g for g in gens if not g.is_constant]
    if not kept:
        raise AllConstant("every generator is constant")
    return kept, len(kept) != len(gens)


# -- affine maps ---------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """v -> A v + t on Q^k."""

    matrix: tuple
    translation: tuple

    def __post_init__(self):
        A = tuple(tuple(Fraction(c) for c in row) for row in self.matrix)
        t = tuple(Fraction(c) for c in self.translation)
        k = len(t)
        if len(A) != k or any(len(row) != k for row in A):
            raise ValueError("matrix must be k x k for a translation of length k")
        if Matrix([[Rational(c.numerator, c.denominator) for c in row] for row in A]).det() == 0:
            raise ValueError("matrix is not invertible")
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "translation", t)

    @property
    def dim(self) -> int:
        return len(self.translation)

    def embed(self) -> tuple:
        """The (k+1) x (k+1) block matrix [[A, t], [0, 1]]."""
        rows = [row + (t,) for row, t in zip(self.matrix, self.translation)]
        rows.append((Fraction(0),) * self.dim + (Fraction(1),))
        return tuple(rows)

    @classmethod
    def from_ratfun(cls, f: RatFun) -> "AffineMap":
        if not f.is_polynomial or f.degree != 1 or not f.field.is_rational:
            raise ValueError(f"{to_expr(f)} is not an affine map of Q")
        b, a = f.coefficients()
        return cls(((a,),), (b,))

    def __str__(self):
        if self.dim == 1:
            return poly_expr([self.translation[0], self.matrix[0][0]])
        A = [[str(c) for c in row] for row in self.matrix]
        return f"v -> {A} v + {[str(c) for c in self.translation]}"


def _matmul(P, Q):
    n = len(P)
    return tuple(tuple(sum(P[i][k] * Q[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def affine_growth(maps, n_max: int, budget: int | None = None) -> GrowthTable:
    """d_S(1..n_max) for affine maps, interning their GL_{k+1} embeddings."""
    maps = list(maps)
    if not maps:
        raise ValueError("need at least one map")
    if any(m.dim != maps[0].dim for m in maps):
        raise ValueError("maps act on spaces of different dimension")
    budget = default_budget() if budget is None else budget
    mats = [m.embed() for m in maps]
    table = GrowthTable([str(m) for m in maps], [], "q")
    seen = set()
    k = maps[0].dim + 1
    identity = tuple(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k))
    frontier = [identity]
    for _ in range(n_max):
        nxt = []
        for M in frontier:
            for G in mats:
                P = _matmul(G, M)  # G applied after M
                if P not in seen:
                    seen.add(P)
                    nxt.append(P)
                    if len(seen) > budget:
                        table.truncated = True
                        raise BudgetExceeded(f"more than {budget} distinct elements", partial=table)
        frontier = nxt
        table.values.append(len(seen))
    return table
