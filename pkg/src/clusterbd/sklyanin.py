"""Poisson bracket engine for matrix groups.

The bracket attached to an R-matrix r acts on polynomial functions of the
matrix entries x_ij through left- and right-invariant vector fields.  The
engine precomputes the brackets of coordinate functions once (a sparse
quadratic table, integer-scaled) and extends to arbitrary Laurent
polynomials as a bi-derivation, which keeps the hot loops on plain ints.

An optional torus twist adds the Cartan correction term
< V ((dR f)_0 + (dL f)_0), (dR g)_0 + (dL g)_0 > expressed in the
coordinates of a chosen basis of the fixed Cartan subspace.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import QMatrix, rank, rat
from .laurent import LaurentPoly, VarContext, _coeff, extend_context
from .rmatrix import RTensor


def matrix_context(n: int) -> VarContext:
    """Context of the matrix entries x11 .. xnn, row-major."""
    return VarContext(
        ["x%d%d" % (i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    )


def entry_name(i: int, j: int) -> str:
    return "x%d%d" % (i, j)


def identity_point(n: int) -> Dict[str, Fraction]:
    return {
        entry_name(i, j): Fraction(int(i == j))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }


@dataclass
class TorusTwist:
    """Cartan correction data: an h_T basis plus the three V blocks."""

    basis: Tuple[Tuple[Fraction, ...], ...]  # each a diagonal n-vector
    v1: QMatrix
    v2: QMatrix
    v12: QMatrix

    def __post_init__(self):
        k = len(self.basis)
        for m, name in ((self.v1, "V1"), (self.v2, "V2"), (self.v12, "V12")):
            if m.rows != k or m.cols != k:
                raise ValueError("%s must be %d x %d" % (name, k, k))
        if not self.v1.is_skew_symmetric() or not self.v2.is_skew_symmetric():
            raise ValueError("V1 and V2 must be skew-symmetric")


def _raw_mul(ctx: VarContext, a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    zero = ctx.zero_key
    out: dict = {}
    get = out.get
    for k1, c1 in a.items():
        base = k1 - zero
        for k2, c2 in b.items():
            k = base + k2
            v = get(k)
            if v is None:
                out[k] = c1 * c2
            else:
                v = v + c1 * c2
                if v:
                    out[k] = v
                else:
                    del out[k]
    return out


def _raw_addmul(ctx: VarContext, acc: dict, a: dict, b: dict) -> None:
    """acc += a * b, all raw term dicts over ctx."""
    if len(a) > len(b):
        a, b = b, a
    zero = ctx.zero_key
    get = acc.get
    for k1, c1 in a.items():
        base = k1 - zero
        for k2, c2 in b.items():
            k = base + k2
            v = get(k)
            if v is None:
                acc[k] = c1 * c2
            else:
                v = v + c1 * c2
                if v:
                    acc[k] = v
                else:
                    del acc[k]


class SklyaninEngine:
    """Bracket engine for one R-matrix on n x n matrix entries."""

    def __init__(self, n: int, r: RTensor, twist: Optional[TorusTwist] = None):
        if r.n != n:
            raise ValueError("R-matrix size mismatch")
        self.n = n
        self.r = r
        self.ctx = matrix_context(n)
        self.twist = twist
        denoms = [c.denominator for c in r.coeffs.values()]
        self.scale = lcm(*denoms) if denoms else 1
        self._var_index = {
            (i, j): self.ctx.index(entry_name(i, j))
            for i in range(1, n + 1)
            for j in range(1, n + 1)
        }
        self._table = self._build_table()

    def _build_table(self) -> Dict[Tuple[int, int, int, int], dict]:
        """Integer-scaled brackets of coordinate pairs.

        {x_ij, x_kl} = sum_{b,d} r[(i,b),(k,d)] x_bj x_dl
                     - sum_{a,c} r[(a,j),(c,l)] x_ia x_kc.
        """
        n = self.n
        ctx = self.ctx
        zero = ctx.zero_key
        shifts = ctx._shifts
        idx = self._var_index
        table: Dict[Tuple[int, int, int, int], dict] = {}

        def mono(p1, p2):
            return zero + (1 << shifts[idx[p1]]) + (1 << shifts[idx[p2]])

        for (a, b, c, d), coeff in self.r.items():
            ic = int(coeff * self.scale)
            for j in range(1, n + 1):
                for l in range(1, n + 1):
                    tbl = table.setdefault((a, j, c, l), {})
                    k = mono((b, j), (d, l))
                    tbl[k] = tbl.get(k, 0) + ic
            for i in range(1, n + 1):
                for k2 in range(1, n + 1):
                    tbl = table.setdefault((i, b, k2, d), {})
                    k = mono((i, a), (k2, c))
                    tbl[k] = tbl.get(k, 0) - ic
        return {
            key: {k: v for k, v in tbl.items() if v}
            for key, tbl in table.items()
            if any(tbl.values())
        }

    # --- derivative helpers --------------------------------------------

    def _partials(self, f: LaurentPoly) -> Dict[Tuple[int, int], dict]:
        out = {}
        for (i, j), vi in self._var_index.items():
            d = f.diff(self.ctx.names[vi])
            if d.terms:
                out[(i, j)] = d.terms
        return out

    def _row_col_projections(self, f: LaurentPoly) -> Tuple[list, list]:
        """Coordinates of the projected differentials in the twist basis.

        For each basis vector H the right projection is
        sum_a H_a * sum_j x_aj df/dx_aj and the left projection is
        sum_a H_a * sum_i x_ia df/dx_ia; per monomial these are just
        weighted row and column degrees.
        """
        n = self.n
        ctx = self.ctx
        basis = self.twist.basis
        shifts = ctx._shifts
        idx = self._var_index
        a_acc = [dict() for _ in basis]
        b_acc = [dict() for _ in basis]
        from .laurent import _MASK, _OFF

        for k, c in f.terms.items():
            rowdeg = [0] * (n + 1)
            coldeg = [0] * (n + 1)
            for (i, j), vi in idx.items():
                e = ((k >> shifts[vi]) & _MASK) - _OFF
                if e:
                    rowdeg[i] += e
                    coldeg[j] += e
            for t, h in enumerate(basis):
                wr = sum(h[i - 1] * rowdeg[i] for i in range(1, n + 1))
                if wr:
                    v = a_acc[t].get(k)
                    v = c * wr if v is None else v + c * wr
                    if v:
                        a_acc[t][k] = v
                    elif k in a_acc[t]:
                        del a_acc[t][k]
                wc = sum(h[i - 1] * coldeg[i] for i in range(1, n + 1))
                if wc:
                    v = b_acc[t].get(k)
                    v = c * wc if v is None else v + c * wc
                    if v:
                        b_acc[t][k] = v
                    elif k in b_acc[t]:
                        del b_acc[t][k]
        return a_acc, b_acc

    def twist_correction(self, f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
        if self.twist is None:
            return self.ctx.zero()
        af, bf = self._row_col_projections(f)
        ag, bg = self._row_col_projections(g)
        return self._twist_from_projections(af, bf, ag, bg)

    def _twist_from_projections(self, af, bf, ag, bg) -> LaurentPoly:
        ctx = self.ctx
        tw = self.twist
        k = len(tw.basis)
        acc: dict = {}
        for p in range(k):
            for q in range(k):
                c1 = tw.v1.at(p, q)
                if c1 and ag[p] and af[q]:
                    _raw_addmul(ctx, acc, {m: v * c1 for m, v in ag[p].items()}, af[q])
                c2 = tw.v12.at(p, q)
                if c2 and ag[p] and bf[q]:
                    _raw_addmul(ctx, acc, {m: v * c2 for m, v in ag[p].items()}, bf[q])
                c3 = tw.v12.at(q, p)
                if c3 and bg[p] and af[q]:
                    _raw_addmul(ctx, acc, {m: v * -c3 for m, v in bg[p].items()}, af[q])
                c4 = tw.v2.at(p, q)
                if c4 and bg[p] and bf[q]:
                    _raw_addmul(ctx, acc, {m: v * c4 for m, v in bg[p].items()}, bf[q])
        return LaurentPoly(ctx, {m: _coeff(v) for m, v in acc.items() if v})

    # --- the bracket ----------------------------------------------------

    def bracket(self, f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
        """{f, g}: bi-derivation over the coordinate table plus twist."""
        if f.ctx != self.ctx or g.ctx != self.ctx:
            raise ValueError("bracket arguments must live in the engine context")
        df = self._partials(f)
        dg = self._partials(g)
        ctx = self.ctx
        acc: dict = {}
        for (i, j, k, l), tbl in self._table.items():
            fd = df.get((i, j))
            if fd is None:
                continue
            gd = dg.get((k, l))
            if gd is None:
                continue
            prod = _raw_mul(ctx, fd, gd)
            _raw_addmul(ctx, acc, prod, tbl)
        s = self.scale
        if s == 1:
            terms = {k: _coeff(v) for k, v in acc.items() if v}
        else:
            terms = {}
            for k, v in acc.items():
                if not v:
                    continue
                c = Fraction(v, s) if isinstance(v, int) else v / s
                if c:
                    terms[k] = _coeff(c)
        result = LaurentPoly(ctx, terms)
        if self.twist is not None:
            result = result + self.twist_correction(f, g)
        return result

    def coordinate_bracket(self, i: int, j: int, k: int, l: int) -> LaurentPoly:
        x1 = self.ctx.variable(entry_name(i, j))
        x2 = self.ctx.variable(entry_name(k, l))
        return self.bracket(x1, x2)


# --- coefficient-matrix extraction ---------------------------------------


@dataclass
class NotLogCanonical:
    i: int
    j: int
    quotient: Optional[LaurentPoly]  # None when the bracket is not divisible

    def __str__(self):
        if self.quotient is None:
            return "pair (%d, %d): bracket not divisible by the product" % (
                self.i,
                self.j,
            )
        return "pair (%d, %d): quotient %s is not constant" % (
            self.i,
            self.j,
            self.quotient,
        )


@dataclass
class ExtractionResult:
    omega: Optional[QMatrix]
    failure: Optional[NotLogCanonical]

    @property
    def ok(self) -> bool:
        return self.omega is not None


def _pair_ratio(br: LaurentPoly, prod: LaurentPoly) -> Tuple[Optional[Fraction], Optional[LaurentPoly]]:
    """br / prod when the quotient is a constant, else (None, witness)."""
    if br.is_zero():
        return Fraction(0), None
    lt_b, cb = br.leading_term()
    lt_p, cp = prod.leading_term()
    if lt_b == lt_p:
        omega = rat(cb) / rat(cp)
        if (br - prod * omega).is_zero():
            return omega, None
    q = br.exact_divide(prod)
    return None, q


def extract_coefficient_matrix(
    engine: SklyaninEngine,
    basis: Sequence[LaurentPoly],
    cache: Optional[dict] = None,
) -> ExtractionResult:
    """Coefficient matrix of the bracket in a candidate log-canonical basis.

    For every pair the bracket must equal a rational constant times the
    product of the two basis elements; the constants form a skew-symmetric
    matrix.  The optional cache memoizes brackets and products across calls
    (used when re-extracting under torus twists).
    """
    size = len(basis)
    if any(p.is_zero() for p in basis):
        raise ValueError("basis elements must be nonzero")
    omega = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            br = _cached_bracket(engine, basis, i, j, cache)
            prod = _cached_product(basis, i, j, cache)
            value, witness = _pair_ratio(br, prod)
            if value is None:
                return ExtractionResult(None, NotLogCanonical(i, j, witness))
            omega[i][j] = value
            omega[j][i] = -value
    return ExtractionResult(QMatrix.from_rows(omega), None)


def _cached_bracket(engine, basis, i, j, cache):
    if cache is None:
        return engine.bracket(basis[i], basis[j])
    key = ("sklyanin", i, j)
    br = cache.get(key)
    if br is None:
        # cache the untwisted part; the twist correction is cheap and
        # depends on the twist currently installed in the engine
        saved = engine.twist
        engine.twist = None
        br = engine.bracket(basis[i], basis[j])
        engine.twist = saved
        cache[key] = br
    if engine.twist is not None:
        proj = cache.setdefault("projections", {})
        for t in (i, j):
            if t not in proj:
                proj[t] = engine._row_col_projections(basis[t])
        af, bf = proj[i]
        ag, bg = proj[j]
        br = br + engine._twist_from_projections(af, bf, ag, bg)
    return br


def _cached_product(basis, i, j, cache):
    if cache is None:
        return basis[i] * basis[j]
    key = ("product", i, j)
    prod = cache.get(key)
    if prod is None:
        prod = basis[i] * basis[j]
        cache[key] = prod
    return prod


# --- derived checks -------------------------------------------------------


def poisson_lie_at_identity(engine: SklyaninEngine) -> bool:
    """True iff every coordinate bracket vanishes at the identity matrix."""
    n = engine.n
    point = identity_point(n)
    coords = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for a in range(len(coords)):
        for b in range(a + 1, len(coords)):
            br = engine.coordinate_bracket(*coords[a], *coords[b])
            if br.evaluate(point) != 0:
                return False
    return True


def jacobi_spot_check(
    engine: SklyaninEngine, f: LaurentPoly, g: LaurentPoly, h: LaurentPoly
) -> LaurentPoly:
    """Jacobi cyclic sum; identically zero for brackets from CYBE solutions."""
    return (
        engine.bracket(f, engine.bracket(g, h))
        + engine.bracket(g, engine.bracket(h, f))
        + engine.bracket(h, engine.bracket(f, g))
    )


def jacobian_independence(
    basis: Sequence[LaurentPoly], point: Dict[str, Fraction]
) -> int:
    """Rank of the Jacobian of the basis at an exact rational point."""
    if not basis:
        return 0
    ctx = basis[0].ctx
    rows = []
    for p in basis:
        rows.append([p.diff(name).evaluate(point) for name in ctx.names])
    return rank(QMatrix.from_rows(rows))


@dataclass
class EquivarianceResult:
    eta: Tuple[int, ...]
    zeta: Tuple[int, ...]


def check_equivariance(
    poly: LaurentPoly,
    left_params: Sequence[str],
    left_exps: Sequence[Sequence[int]],
    right_params: Sequence[str],
    right_exps: Sequence[Sequence[int]],
    n: int,
) -> Optional[EquivarianceResult]:
    """Recover scaling weights under the two-sided diagonal torus action.

    The left torus is diag with entry i equal to the monomial
    prod_t t^left_exps[t][i-1]; similarly on the right.  Substitutes the
    scaled entries into the polynomial and succeeds iff the result is a
    parameter monomial times the original.
    """
    ctx = poly.ctx
    params = tuple(left_params) + tuple(right_params)
    ext = extend_context(ctx, params)

    mapping = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            name = entry_name(i, j)
            if name not in ctx._index:
                continue
            exps = {name: 1}
            for t, pname in enumerate(left_params):
                e = left_exps[t][i - 1]
                if e:
                    exps[pname] = exps.get(pname, 0) + e
            for t, pname in enumerate(right_params):
                e = right_exps[t][j - 1]
                if e:
                    exps[pname] = exps.get(pname, 0) + e
            mapping[name] = ext.monomial(1, exps)

    scaled = poly.substitute(mapping, ext)
    original = poly.substitute({}, ext)
    quotient = scaled.exact_divide(original)
    if quotient is None or not quotient.is_monomial():
        return None
    ((key, coeff),) = quotient.terms.items()
    if coeff != 1:
        return None
    exps = ext.decode(key)
    by_name = dict(zip(ext.names, exps))
    if any(by_name.get(nm, 0) for nm in ctx.names):
        return None
    eta = tuple(by_name.get(p, 0) for p in left_params)
    zeta = tuple(by_name.get(p, 0) for p in right_params)
    return EquivarianceResult(eta, zeta)


# --- optional parallel pair map -------------------------------------------


def worker_count() -> int:
    """Worker cap from CLUSTERBD_THREADS; defaults to the CPU count."""
    env = os.environ.get("CLUSTERBD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return os.cpu_count() or 1


_POOL_STATE: dict = {}


def _pool_bracket(pair):
    i, j = pair
    engine = _POOL_STATE["engine"]
    basis = _POOL_STATE["basis"]
    return (i, j, engine.bracket(basis[i], basis[j]))


def bracket_all_pairs(
    engine: SklyaninEngine, basis: Sequence[LaurentPoly]
) -> Dict[Tuple[int, int], LaurentPoly]:
    """All pairwise brackets, optionally fanned out over forked workers.

    Results are keyed by (i, j) with i < j and do not depend on the
    schedule.
    """
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    workers = min(worker_count(), len(pairs)) if pairs else 1
    if workers > 1 and hasattr(os, "fork"):
        import multiprocessing

        _POOL_STATE["engine"] = engine
        _POOL_STATE["basis"] = list(basis)
        try:
            with multiprocessing.get_context("fork").Pool(workers) as pool:
                out = {}
                for i, j, br in pool.imap(_pool_bracket, pairs, chunksize=4):
                    out[(i, j)] = br
                return out
        finally:
            _POOL_STATE.clear()
    return {(i, j): engine.bracket(basis[i], basis[j]) for i, j in pairs}
