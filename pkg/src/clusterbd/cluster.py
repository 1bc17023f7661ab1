"""Seeds, matrix mutation, exchange relations, and the compatibility and
toric-weight criteria for Poisson brackets.

Directions are 0-based in this API; the CLI and case data number them
from 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exactnum import QMatrix, rank, rat
from .laurent import LaurentPoly, VarContext, poly_from_json, poly_to_json


class CompatibilityViolation(ValueError):
    def __init__(self, i: int, j: int, value: Fraction, message: str):
        super().__init__("%s at entry (%d, %d): %s" % (message, i, j, value))
        self.i = i
        self.j = j
        self.value = value


class ExtExchangeMatrix:
    """Integer n x (n+m) matrix with skew-symmetric principal part."""

    __slots__ = ("n", "m", "rows")

    def __init__(self, n: int, m: int, rows: Sequence[Sequence[int]]):
        if len(rows) != n or any(len(r) != n + m for r in rows):
            raise ValueError("expected %d rows of length %d" % (n, n + m))
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(
                        "principal part not skew-symmetric at (%d, %d)" % (i, j)
                    )
        self.n = n
        self.m = m
        self.rows = rows

    def principal(self) -> QMatrix:
        return QMatrix.from_rows([r[: self.n] for r in self.rows])

    def as_qmatrix(self) -> QMatrix:
        return QMatrix.from_rows(self.rows)

    def drop_last_column(self) -> "ExtExchangeMatrix":
        if self.m < 1:
            raise ValueError("no stable column to drop")
        return ExtExchangeMatrix(self.n, self.m - 1, [r[:-1] for r in self.rows])

    def mutate(self, k: int) -> "ExtExchangeMatrix":
        """Matrix mutation in direction k (0-based, mutable only)."""
        if not 0 <= k < self.n:
            raise IndexError("mutation direction %d out of range [0, %d)" % (k, self.n))
        old = self.rows
        new = []
        for i in range(self.n):
            row = []
            for j in range(self.n + self.m):
                b = old[i][j]
                if i == k or j == k:
                    row.append(-b)
                else:
                    bik = old[i][k]
                    bkj = old[k][j]
                    row.append(b + (abs(bik) * bkj + bik * abs(bkj)) // 2)
            new.append(row)
        return ExtExchangeMatrix(self.n, self.m, new)

    def __eq__(self, other):
        return (
            isinstance(other, ExtExchangeMatrix)
            and self.n == other.n
            and self.m == other.m
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.m, self.rows))

    def __repr__(self):
        return "ExtExchangeMatrix(n=%d, m=%d)" % (self.n, self.m)


@dataclass
class Seed:
    """Exchange matrix plus the images of the extended cluster variables."""

    matrix: ExtExchangeMatrix
    variables: List[Tuple[str, LaurentPoly]]

    def __post_init__(self):
        if len(self.variables) != self.matrix.n + self.matrix.m:
            raise ValueError("variable count must equal n + m")
        ctxs = {poly.ctx for _, poly in self.variables}
        if len(ctxs) > 1:
            raise ValueError("seed variables must share one context")

    def to_json(self) -> dict:
        return {
            "n": self.matrix.n,
            "m": self.matrix.m,
            "Btilde": [list(r) for r in self.matrix.rows],
            "variables": [
                {"name": name, "poly": poly_to_json(poly)}
                for name, poly in self.variables
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Seed":
        names = set()
        for var in data["variables"]:
            for term in var["poly"]:
                names.update(term.get("exps", {}))
        ctx = VarContext(sorted(names))
        matrix = ExtExchangeMatrix(int(data["n"]), int(data["m"]), data["Btilde"])
        variables = [
            (var["name"], poly_from_json(ctx, var["poly"]))
            for var in data["variables"]
        ]
        return cls(matrix, variables)


@dataclass
class ExchangeResult:
    numerator: LaurentPoly
    divisor: LaurentPoly
    quotient: Optional[LaurentPoly]
    regular: bool


def exchange_variable(seed: Seed, k: int) -> ExchangeResult:
    """New variable in direction k from the exchange relation.

    Computes the two exchange monomials from row k, adds them, and divides
    by the current variable.  ``regular`` is True when the quotient exists
    in the Laurent ring (monomial factors count as units).
    """
    mat = seed.matrix
    if not 0 <= k < mat.n:
        raise IndexError("direction %d out of range [0, %d)" % (k, mat.n))
    divisor = seed.variables[k][1]
    if divisor.is_zero():
        raise ZeroDivisionError("variable %r is the zero polynomial" % seed.variables[k][0])
    ctx = divisor.ctx
    pos = ctx.const(1)
    neg = ctx.const(1)
    for j, b in enumerate(mat.rows[k]):
        if b > 0:
            pos = pos * seed.variables[j][1] ** b
        elif b < 0:
            neg = neg * seed.variables[j][1] ** (-b)
    numerator = pos + neg
    quotient = numerator.exact_divide(divisor)
    return ExchangeResult(numerator, divisor, quotient, quotient is not None)


def _toggle_prime(name: str) -> str:
    return name[:-1] if name.endswith("'") else name + "'"


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Seed mutation: new matrix and the exchanged variable in slot k."""
    result = exchange_variable(seed, k)
    if not result.regular:
        raise ValueError(
            "exchange in direction %d does not divide exactly; "
            "the mutated variable is not a Laurent polynomial" % k
        )
    variables = list(seed.variables)
    variables[k] = (_toggle_prime(seed.variables[k][0]), result.quotient)
    return Seed(seed.matrix.mutate(k), variables)


def check_compatibility(b: ExtExchangeMatrix, omega: QMatrix) -> QMatrix:
    """Return D when B~ * Omega = (D 0) with D diagonal nonsingular.

    Raises :class:`CompatibilityViolation` carrying the first offending
    entry otherwise.
    """
    size = b.n + b.m
    if omega.rows != size or omega.cols != size:
        raise ValueError("Omega must be %d x %d" % (size, size))
    if not omega.is_skew_symmetric():
        raise ValueError("Omega must be skew-symmetric")
    prod = b.as_qmatrix().mul(omega)
    for i in range(b.n):
        for j in range(size):
            v = prod.at(i, j)
            if j == i:
                if v == 0:
                    raise CompatibilityViolation(i, j, v, "singular diagonal")
            elif v != 0:
                raise CompatibilityViolation(i, j, v, "nonzero off-diagonal")
    return QMatrix.diagonal([prod.at(i, i) for i in range(b.n)])


@dataclass
class ToricReport:
    k_t: int
    eta_span_dim: int
    zeta_span_dim: int
    row_failures: List[Tuple[int, str]]

    @property
    def spans_ok(self) -> bool:
        return self.eta_span_dim == self.k_t and self.zeta_span_dim == self.k_t

    @property
    def ok(self) -> bool:
        return self.spans_ok and not self.row_failures


def check_toric_weights(
    b: ExtExchangeMatrix,
    eta: Sequence[Sequence],
    zeta: Sequence[Sequence],
    k_t: int,
) -> ToricReport:
    """Span and annihilation conditions for the toric weights.

    The weights must span a k_T-dimensional space on each side, and every
    mutable row of the exchange matrix must annihilate both weight lists.
    """
    size = b.n + b.m
    if len(eta) != size or len(zeta) != size:
        raise ValueError("weight lists must have length n + m")
    eta = [tuple(rat(x) for x in w) for w in eta]
    zeta = [tuple(rat(x) for x in w) for w in zeta]
    failures: List[Tuple[int, str]] = []
    eta_dim = rank(QMatrix.from_rows(eta)) if k_t else 0
    zeta_dim = rank(QMatrix.from_rows(zeta)) if k_t else 0
    for i in range(b.n):
        row = b.rows[i]
        for weights, label in ((eta, "eta"), (zeta, "zeta")):
            acc = [Fraction(0)] * k_t
            for j in range(size):
                if row[j]:
                    for a in range(k_t):
                        acc[a] += row[j] * weights[j][a]
            if any(acc):
                failures.append((i, label))
    return ToricReport(k_t, eta_dim, zeta_dim, failures)


@dataclass
class RankReport:
    rank: int
    n: int
    m: int
    expected_stable: int

    @property
    def ok(self) -> bool:
        return self.rank == self.n and self.m == self.expected_stable


def check_full_rank_and_count(b: ExtExchangeMatrix, expected_stable: int) -> RankReport:
    return RankReport(rank(b.as_qmatrix()), b.n, b.m, expected_stable)
