"""Tensors in gl_n (x) gl_n, Casimir elements, the Cartan-part solver for
Belavin-Drinfeld triples, R-matrix assembly, and the Yang-Baxter checks.

Basis tensors e_ab (x) e_cd are keyed by the flat 1-based tuple
(a, b, c, d).  The bilinear form is the trace form, so e_{-alpha} = e_ji
pairs with e_alpha = e_ij to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .exactnum import Infeasible, QMatrix, rat, rat_str, solve_affine
from .rootdata import BDTriple, bd_partial_order, h_t_basis

Key = Tuple[int, int, int, int]


class InvalidR0(ValueError):
    """Proposed Cartan part violates its defining linear constraints."""


class RTensor:
    """Sparse element of gl_n (x) gl_n with rational coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Dict[Key, Fraction] | None = None):
        self.n = n
        self.coeffs: Dict[Key, Fraction] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = rat(c)
                if c:
                    self.coeffs[k] = c

    @classmethod
    def basis(cls, n: int, a: int, b: int, c: int, d: int, coeff=1) -> "RTensor":
        return cls(n, {(a, b, c, d): rat(coeff)})

    @classmethod
    def wedge(cls, n: int, ab: Tuple[int, int], cd: Tuple[int, int], coeff=1) -> "RTensor":
        """coeff * (e_ab (x) e_cd - e_cd (x) e_ab)."""
        coeff = rat(coeff)
        t = cls(n)
        t._add((*ab, *cd), coeff)
        t._add((*cd, *ab), -coeff)
        return t

    def _add(self, key: Key, c: Fraction):
        v = self.coeffs.get(key)
        v = c if v is None else v + c
        if v:
            self.coeffs[key] = v
        elif key in self.coeffs:
            del self.coeffs[key]

    def __add__(self, other: "RTensor") -> "RTensor":
        if self.n != other.n:
            raise ValueError("tensor size mismatch")
        out = RTensor(self.n, dict(self.coeffs))
        for k, c in other.coeffs.items():
            out._add(k, c)
        return out

    def __sub__(self, other: "RTensor") -> "RTensor":
        return self + other.scale(-1)

    def scale(self, c) -> "RTensor":
        c = rat(c)
        return RTensor(self.n, {k: c * v for k, v in self.coeffs.items()})

    def swap(self) -> "RTensor":
        """Exchange the two tensor legs."""
        return RTensor(
            self.n, {(c, d, a, b): v for (a, b, c, d), v in self.coeffs.items()}
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, RTensor)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def items(self):
        return self.coeffs.items()

    def pairing(self, a: int, b: int, c: int, d: int) -> Fraction:
        """Trace-form pairing with the basis tensor e_ab (x) e_cd."""
        return self.coeffs.get((b, a, d, c), Fraction(0))

    def __repr__(self):
        parts = [
            "%s*e%d%d(x)e%d%d" % (rat_str(v), a, b, c, d)
            for (a, b, c, d), v in sorted(self.coeffs.items())
        ]
        return "RTensor(n=%d: %s)" % (self.n, " + ".join(parts) or "0")

    def to_json(self) -> list:
        return [
            {"a": a, "b": b, "c": c, "d": d, "coeff": rat_str(v)}
            for (a, b, c, d), v in sorted(self.coeffs.items())
        ]

    @classmethod
    def from_json(cls, n: int, data: Iterable[dict]) -> "RTensor":
        t = cls(n)
        for item in data:
            t._add(
                (int(item["a"]), int(item["b"]), int(item["c"]), int(item["d"])),
                rat(item["coeff"]),
            )
        return t


class RTensor3:
    """Sparse element of gl_n tensored with itself three times."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int):
        self.n = n
        self.coeffs: Dict[tuple, Fraction] = {}

    def _add(self, key: tuple, c: Fraction):
        v = self.coeffs.get(key)
        v = c if v is None else v + c
        if v:
            self.coeffs[key] = v
        elif key in self.coeffs:
            del self.coeffs[key]

    def is_zero(self) -> bool:
        return not self.coeffs


def casimir(n: int) -> Tuple[RTensor, RTensor]:
    """Casimir element of sl_n for the trace form and its Cartan block.

    t = sum_{i != j} e_ij (x) e_ji + t0 with
    t0 = sum_i e_ii (x) e_ii - (1/n) (sum e_ii) (x) (sum e_jj).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    t0 = RTensor(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            t0._add((i, i, j, j), Fraction(int(i == j)) - Fraction(1, n))
    t = RTensor(n, dict(t0.coeffs))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                t._add((i, j, j, i), Fraction(1))
    return t, t0


def _commutator(ab: Tuple[int, int], cd: Tuple[int, int]) -> list:
    """[e_ab, e_cd] as a list of ((row, col), sign)."""
    a, b = ab
    c, d = cd
    out = []
    if b == c:
        out.append(((a, d), 1))
    if d == a:
        out.append(((c, b), -1))
    return out


def yang_baxter_bracket(r: RTensor) -> RTensor3:
    """[[r, r]] = [r12,r13] + [r12,r23] + [r13,r23] via the three-sum form."""
    acc = RTensor3(r.n)
    terms = list(r.items())
    for (a1, b1, c1, d1), x in terms:
        for (a2, b2, c2, d2), y in terms:
            co = x * y
            for p, s in _commutator((a1, b1), (a2, b2)):
                acc._add((p, (c1, d1), (c2, d2)), s * co)
            for p, s in _commutator((c1, d1), (a2, b2)):
                acc._add(((a1, b1), p, (c2, d2)), s * co)
            for p, s in _commutator((c1, d1), (c2, d2)):
                acc._add(((a1, b1), (a2, b2), p), s * co)
    return acc


@dataclass
class CYBEReport:
    cybe_ok: bool
    unitarity_ok: bool
    cybe_residual_terms: int
    unitarity_residual_terms: int


def check_cybe_unitarity(r: RTensor) -> CYBEReport:
    """Verify [[r, r]] = 0 and r + r^21 = t exactly."""
    residual = yang_baxter_bracket(r)
    t, _ = casimir(r.n)
    unit = (r + r.swap()) - t
    return CYBEReport(
        cybe_ok=residual.is_zero(),
        unitarity_ok=unit.is_zero(),
        cybe_residual_terms=len(residual.coeffs),
        unitarity_residual_terms=len(unit.coeffs),
    )


def check_ad_invariance(r: RTensor, h_basis: Sequence[Sequence[Fraction]]) -> list:
    """Terms whose weight functional fails to vanish on the given Cartan basis.

    A basis tensor e_ab (x) e_cd transforms with weight
    eps_a - eps_b + eps_c - eps_d under simultaneous conjugation by a
    diagonal one-parameter subgroup.
    """
    bad = []
    for (a, b, c, d), v in sorted(r.items()):
        for idx, h in enumerate(h_basis):
            w = h[a - 1] - h[b - 1] + h[c - 1] - h[d - 1]
            if w != 0:
                bad.append(((a, b, c, d), idx, w))
    return bad


@dataclass
class R0Solution:
    particular: RTensor
    freedom: List[RTensor]


def _cartan_tensor(n: int, c: Sequence[Fraction]) -> RTensor:
    t = RTensor(n)
    for p in range(n):
        for q in range(n):
            v = c[p * n + q]
            if v:
                t._add((p + 1, p + 1, q + 1, q + 1), v)
    return t


def _r0_constraint_rows(t: BDTriple) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """Linear system for the Cartan part in coordinates c_pq = coeff of
    e_pp (x) e_qq: symmetrized part pinned to the Cartan Casimir block,
    both legs traceless, and the boundary equations tying gamma(alpha) on
    the first leg to alpha on the second."""
    n = t.n
    nun = n * n
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []

    def new_row():
        return [Fraction(0)] * nun

    _, t0 = casimir(n)
    for p in range(1, n + 1):
        for q in range(p, n + 1):
            row = new_row()
            row[(p - 1) * n + (q - 1)] += 1
            row[(q - 1) * n + (p - 1)] += 1
            rows.append(row)
            rhs.append(t0.coeffs.get((p, p, q, q), Fraction(0)))
    for p in range(n):
        row = new_row()
        for q in range(n):
            row[p * n + q] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(0))
        row = new_row()
        for q in range(n):
            row[q * n + p] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(0))
    for a, g in t.gamma:
        for d in range(1, n + 1):
            row = new_row()
            row[(g - 1) * n + (d - 1)] += 1
            row[g * n + (d - 1)] -= 1
            row[(d - 1) * n + (a - 1)] += 1
            row[(d - 1) * n + a] -= 1
            rows.append(row)
            rhs.append(Fraction(0))
    return rows, rhs


def solve_r0(t: BDTriple) -> R0Solution:
    """Solve the Cartan-part equations for a valid triple.

    The solution set is an affine space of dimension k_T (k_T - 1) / 2; the
    returned freedom list is a kernel basis (it spans h_T wedge h_T).
    """
    err = t.validate()
    if err:
        raise ValueError("invalid triple: %s" % err)
    rows, rhs = _r0_constraint_rows(t)
    try:
        particular, kernel = solve_affine(QMatrix.from_rows(rows), rhs)
    except Infeasible:  # cannot happen for a valid triple
        raise AssertionError("Cartan-part system infeasible for a valid triple")
    k = t.k_t
    expected = k * (k - 1) // 2
    if len(kernel) != expected:
        raise AssertionError(
            "freedom dimension %d, expected %d" % (len(kernel), expected)
        )
    return R0Solution(
        particular=_cartan_tensor(t.n, particular),
        freedom=[_cartan_tensor(t.n, v) for v in kernel],
    )


def r0_satisfies_constraints(t: BDTriple, r0: RTensor) -> bool:
    """Exact check of the defining equations for a proposed Cartan part."""
    n = t.n
    for key in r0.coeffs:
        a, b, c, d = key
        if a != b or c != d:
            return False
    c = [Fraction(0)] * (n * n)
    for (p, _, q, _), v in r0.items():
        c[(p - 1) * n + (q - 1)] = v
    rows, rhs = _r0_constraint_rows(t)
    for row, want in zip(rows, rhs):
        if sum(ri * ci for ri, ci in zip(row, c)) != want:
            return False
    return True


def assemble_r(t: BDTriple, r0: RTensor) -> RTensor:
    """Full R-matrix in Belavin-Drinfeld form.

    Adds to r0 the sum of e_ji (x) e_ij over positive roots (i, j) and a
    wedge e_{-alpha} ^ e_beta for every ordered pair alpha < beta.
    """
    if not r0_satisfies_constraints(t, r0):
        raise InvalidR0("Cartan part fails its defining constraints")
    n = t.n
    r = RTensor(n, dict(r0.coeffs))
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            r._add((j, i, i, j), Fraction(1))
    for (a1, a2), (b1, b2) in sorted(bd_partial_order(t)):
        r._add((a2, a1, b1, b2), Fraction(1))
        r._add((b1, b2, a2, a1), Fraction(-1))
    return r


def standard_r(n: int) -> RTensor:
    """R-matrix of the trivial triple with the symmetric Cartan part t0/2."""
    _, t0 = casimir(n)
    return assemble_r(BDTriple.trivial(n), t0.scale(Fraction(1, 2)))


def cartan_wedge_span_check(t: BDTriple, freedom: Sequence[RTensor]) -> bool:
    """The advertised freedom space must coincide with h_T wedge h_T."""
    basis, k = h_t_basis(t)
    wedges = []
    for i in range(k):
        for j in range(i + 1, k):
            w = RTensor(t.n)
            for p in range(t.n):
                for q in range(t.n):
                    v = basis[i][p] * basis[j][q] - basis[j][p] * basis[i][q]
                    if v:
                        w._add((p + 1, p + 1, q + 1, q + 1), v)
            wedges.append(w)
    if len(wedges) != len(freedom):
        return False
    if not wedges:
        return True
    # same span: each wedge solves the homogeneous system, and dims agree
    # (basis wedges are linearly independent by construction)
    n = t.n
    rows, _ = _r0_constraint_rows(t)
    for w in wedges:
        c = [Fraction(0)] * (n * n)
        for (p, _, q, _), v in w.items():
            c[(p - 1) * n + (q - 1)] = v
        for row in rows:
            if sum(ri * ci for ri, ci in zip(row, c)) != 0:
                return False
    return True
