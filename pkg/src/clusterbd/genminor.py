"""Gauss factorization, generalized minors, and the double-word initial
cluster on SL_n.

Weyl group elements are permutations of [n] stored as 1-based image
tuples.  A generalized minor for the pair (u, v) and fundamental weight
index i is the minor on rows u([1..i]) and columns v([1..i]), normalized
so its graded-lex leading coefficient is +1 (representatives only fix the
minor up to sign; the Gauss-factorization oracle in the tests records the
sign relation per (u, v, i)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Sequence, Tuple

from .exactnum import QMatrix, rat
from .laurent import LaurentPoly, VarContext
from .sklyanin import entry_name, matrix_context


class NotInOpenCell(ValueError):
    """A leading principal minor vanishes; no Gauss factorization."""


def gauss_factorize(x: QMatrix) -> Tuple[QMatrix, QMatrix, QMatrix]:
    """X = X_minus * X_0 * X_plus with unipotent triangular factors.

    Exists iff all leading principal minors are nonzero.
    """
    if x.rows != x.cols:
        raise ValueError("matrix must be square")
    n = x.rows
    a = x.to_rows()
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] == 0:
            raise NotInOpenCell("leading principal minor %d vanishes" % (k + 1))
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            lower[i][k] = f
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    diag = [a[i][i] for i in range(n)]
    upper = [
        [a[i][j] / diag[i] if j > i else Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    return (
        QMatrix.from_rows(lower),
        QMatrix.diagonal(diag),
        QMatrix.from_rows(upper),
    )


def principal_minor_product(x0: QMatrix, i: int) -> Fraction:
    """Product of the first i diagonal entries of the torus factor."""
    out = Fraction(1)
    for k in range(i):
        out *= x0.at(k, k)
    return out


# --- Weyl group as permutations -------------------------------------------

Perm = Tuple[int, ...]


def perm_identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def perm_s(n: int, k: int) -> Perm:
    """Adjacent transposition (k, k+1), 1 <= k <= n-1."""
    if not 1 <= k < n:
        raise ValueError("simple reflection index out of range")
    img = list(range(1, n + 1))
    img[k - 1], img[k] = img[k], img[k - 1]
    return tuple(img)


def perm_w0(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """(p q)(i) = p(q(i))."""
    return tuple(p[q[i] - 1] for i in range(len(p)))


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


def perm_length(p: Perm) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def perm_matrix(p: Perm) -> QMatrix:
    """P e_j = e_{p(j)}."""
    n = len(p)
    return QMatrix.from_rows(
        [[Fraction(int(i + 1 == p[j])) for j in range(n)] for i in range(n)]
    )


# --- minors ----------------------------------------------------------------


def minor_polynomial(ctx: VarContext, rows: Sequence[int], cols: Sequence[int]) -> LaurentPoly:
    """Determinant of the submatrix on the given 1-based row/column lists."""
    size = len(rows)
    if size != len(cols):
        raise ValueError("row and column sets must have equal size")
    acc = ctx.zero()
    for sigma in permutations(range(size)):
        sign = _perm_sign(sigma)
        exps: Dict[str, int] = {}
        for a in range(size):
            name = entry_name(rows[a], cols[sigma[a]])
            exps[name] = exps.get(name, 0) + 1
        acc = acc + ctx.monomial(sign, exps)
    return acc


def _perm_sign(sigma: Sequence[int]) -> int:
    sign = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign


def generalized_minor(ctx: VarContext, u: Perm, v: Perm, i: int) -> LaurentPoly:
    """Minor on rows u([1..i]) and columns v([1..i]), sign-normalized."""
    n = len(u)
    if not 1 <= i <= n - 1:
        raise ValueError("fundamental weight index out of range")
    rows = sorted(u[:i])
    cols = sorted(v[:i])
    poly = minor_polynomial(ctx, rows, cols)
    _, lead = poly.leading_term()
    if rat(lead) < 0:
        poly = -poly
    return poly


# --- double words -----------------------------------------------------------


@dataclass(frozen=True)
class DoubleWord:
    """Shuffle of two reduced words for the longest element, with the fixed
    negative prefix (-(n-1), ..., -1) occupying positions -(n-1)..-1."""

    n: int
    word: Tuple[int, ...]

    @classmethod
    def make(cls, n: int, word: Sequence[int]) -> "DoubleWord":
        w = cls(n, tuple(int(x) for x in word))
        w.validate()
        return w

    @property
    def rank(self) -> int:
        return self.n - 1

    @property
    def l_w0(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def shuffle(self) -> Tuple[int, ...]:
        return self.word[self.rank :]

    def validate(self) -> None:
        n = self.n
        rank = self.rank
        if len(self.word) != rank + 2 * self.l_w0:
            raise ValueError(
                "word must have length %d" % (rank + 2 * self.l_w0)
            )
        prefix = self.word[:rank]
        if prefix != tuple(range(-rank, 0)):
            raise ValueError("word must start with the prefix (%s)" % (
                ", ".join(str(x) for x in range(-rank, 0))
            ))
        shuffle = self.shuffle
        for letter in shuffle:
            if letter == 0 or abs(letter) > rank:
                raise ValueError("letter %d outside the alphabet" % letter)
        pos = [x for x in shuffle if x > 0]
        neg = [-x for x in shuffle if x < 0]
        for sub, side in ((pos, "positive"), (neg, "negative")):
            if len(sub) != self.l_w0:
                raise ValueError("%s subword must have length %d" % (side, self.l_w0))
            prod = perm_identity(n)
            for k in sub:
                prod = perm_compose(prod, perm_s(n, k))
            if prod != perm_w0(n):
                raise ValueError("%s subword is not a reduced word for w0" % side)

    def letter(self, k: int) -> int:
        """Letter i_k for k in -[n-1] or [1 .. 2 l(w0)]."""
        if -self.rank <= k <= -1:
            return k
        if 1 <= k <= 2 * self.l_w0:
            return self.shuffle[k - 1]
        raise IndexError("index %d out of range" % k)

    def indices(self) -> List[int]:
        return list(range(-self.rank, 0)) + list(range(1, 2 * self.l_w0 + 1))

    def to_json(self) -> dict:
        return {"n": self.n, "word": list(self.word)}

    @classmethod
    def from_json(cls, data: dict) -> "DoubleWord":
        return cls.make(int(data["n"]), data["word"])


def word_prefix_elements(w: DoubleWord, k: int) -> Tuple[Perm, Perm]:
    """The pair (u_<=k, v_>k) of Weyl elements attached to position k.

    u collects the negative letters among the first k shuffle letters; v
    collects the positive letters from the tail, multiplied right to left.
    Negative k gives (id, w0).
    """
    n = w.n
    if -w.rank <= k <= -1:
        return perm_identity(n), perm_w0(n)
    if not 1 <= k <= 2 * w.l_w0:
        raise IndexError("index %d out of range" % k)
    u = perm_identity(n)
    for letter in w.shuffle[:k]:
        if letter < 0:
            u = perm_compose(u, perm_s(n, -letter))
    v = perm_identity(n)
    for pos in range(2 * w.l_w0, k, -1):
        letter = w.shuffle[pos - 1]
        if letter > 0:
            v = perm_compose(v, perm_s(n, letter))
    return u, v


@dataclass
class InitialClusterVariable:
    k: int
    name: str
    poly: LaurentPoly
    stable: bool
    eta: Tuple[int, ...]  # indicator of u([1..i]) in eps-coordinates
    zeta: Tuple[int, ...]  # indicator of v([1..i])


@dataclass
class InitialCluster:
    word: DoubleWord
    variables: List[InitialClusterVariable]

    @property
    def stable_count(self) -> int:
        return sum(1 for v in self.variables if v.stable)

    def polys(self) -> List[LaurentPoly]:
        return [v.poly for v in self.variables]


def initial_cluster(w: DoubleWord, ctx: VarContext | None = None) -> InitialCluster:
    """Generalized-minor cluster attached to a double word.

    Stable positions are the negative indices and, for each letter value j,
    the last shuffle position where |letter| = j.  The weight vectors are
    the permuted fundamental weights of the two factors.
    """
    if ctx is None:
        ctx = matrix_context(w.n)
    last_of: Dict[int, int] = {}
    for k in range(1, 2 * w.l_w0 + 1):
        last_of[abs(w.letter(k))] = k
    stable_ks = set(range(-w.rank, 0)) | set(last_of.values())

    variables = []
    for k in w.indices():
        i = abs(w.letter(k))
        u, v = word_prefix_elements(w, k)
        poly = generalized_minor(ctx, u, v, i)
        eta = tuple(int(r + 1 in set(u[:i])) for r in range(w.n))
        zeta = tuple(int(r + 1 in set(v[:i])) for r in range(w.n))
        variables.append(
            InitialClusterVariable(
                k=k,
                name="delta(%d)" % k,
                poly=poly,
                stable=k in stable_ks,
                eta=eta,
                zeta=zeta,
            )
        )
    return InitialCluster(w, variables)
