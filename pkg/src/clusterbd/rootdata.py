"""Type-A root combinatorics: Belavin-Drinfeld triples, the induced
partial order on positive roots, and the fixed Cartan subspace h_T.

Roots of A_{n-1} are index pairs: (i, j) with i < j stands for e_i - e_j,
so the simple root alpha_k is (k, k+1).  All indices are 1-based to match
matrix positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from .exactnum import QMatrix, nullspace

Root = Tuple[int, int]


class RootSystemA:
    """Positive roots and simple roots of A_{n-1} (the group SL_n)."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self.rank = n - 1

    def positive_roots(self) -> List[Root]:
        return [(i, j) for i in range(1, self.n) for j in range(i + 1, self.n + 1)]

    @staticmethod
    def simple(k: int) -> Root:
        return (k, k + 1)

    @staticmethod
    def root_value(root: Root, diag) -> Fraction:
        """Value of the root functional on a diagonal matrix (as a vector)."""
        i, j = root
        return diag[i - 1] - diag[j - 1]


def _cartan_pairing(a: int, b: int) -> int:
    if a == b:
        return 2
    if abs(a - b) == 1:
        return -1
    return 0


@dataclass(frozen=True)
class BDTriple:
    """A Belavin-Drinfeld triple for SL_n.

    gamma maps simple-root indices of Gamma_1 to those of Gamma_2; it must
    be an isometry of the subdiagrams and nilpotent (every gamma-orbit
    eventually leaves Gamma_1).
    """

    n: int
    gamma: Tuple[Tuple[int, int], ...]

    @classmethod
    def make(cls, n: int, gamma: Dict[int, int]) -> "BDTriple":
        return cls(n, tuple(sorted(gamma.items())))

    @classmethod
    def trivial(cls, n: int) -> "BDTriple":
        return cls(n, ())

    @property
    def gamma_map(self) -> Dict[int, int]:
        return dict(self.gamma)

    @property
    def gamma1(self) -> Set[int]:
        return {a for a, _ in self.gamma}

    @property
    def gamma2(self) -> Set[int]:
        return {b for _, b in self.gamma}

    @property
    def k_t(self) -> int:
        return self.n - 1 - len(self.gamma)

    def validate(self) -> Optional[str]:
        """None when valid, else a human-readable reason."""
        rank = self.n - 1
        g = self.gamma_map
        for a, b in g.items():
            if not (1 <= a <= rank and 1 <= b <= rank):
                return "simple-root index out of range: %d -> %d" % (a, b)
        if len(set(g.values())) != len(g):
            return "gamma is not injective"
        src = sorted(g)
        for a in src:
            for b in src:
                if _cartan_pairing(g[a], g[b]) != _cartan_pairing(a, b):
                    return "gamma breaks the Cartan pairing on (%d, %d)" % (a, b)
        for a in src:
            cur = a
            seen = set()
            while cur in g:
                if cur in seen:
                    return "gamma-orbit of alpha_%d never leaves Gamma_1" % a
                seen.add(cur)
                cur = g[cur]
        return None

    def to_json(self) -> dict:
        return {"n": self.n, "gamma": {str(a): str(b) for a, b in self.gamma}}

    @classmethod
    def from_json(cls, data: dict) -> "BDTriple":
        return cls.make(
            int(data["n"]), {int(a): int(b) for a, b in data["gamma"].items()}
        )


def _subsystem_roots(n: int, simples: Set[int]) -> List[Root]:
    """Positive roots whose simple-root support lies inside ``simples``."""
    out = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if all(k in simples for k in range(i, j)):
                out.append((i, j))
    return out


def _gamma_on_root(t: BDTriple, root: Root) -> Root:
    """Additive extension of gamma to the subsystem generated by Gamma_1."""
    g = t.gamma_map
    images = sorted(g[k] for k in range(root[0], root[1]))
    lo, hi = images[0], images[-1]
    if images != list(range(lo, hi + 1)):
        raise ValueError("gamma image of %r is not a root" % (root,))
    return (lo, hi + 1)


def bd_partial_order(t: BDTriple) -> Set[Tuple[Root, Root]]:
    """All pairs (alpha, beta) with beta = gamma^j(alpha), j >= 1."""
    err = t.validate()
    if err:
        raise ValueError("invalid triple: %s" % err)
    g1 = t.gamma1
    pairs: Set[Tuple[Root, Root]] = set()
    for root in _subsystem_roots(t.n, g1):
        cur = root
        while all(k in g1 for k in range(cur[0], cur[1])):
            cur = _gamma_on_root(t, cur)
            pairs.add((root, cur))
    return pairs


def h_t_basis(t: BDTriple) -> Tuple[List[Tuple[Fraction, ...]], int]:
    """Basis of the traceless diagonals fixed by the order constraints.

    Solves alpha(h) = beta(h) for every alpha < beta together with
    trace(h) = 0; the dimension always equals n - 1 - |Gamma_1|.
    """
    n = t.n
    rows = [[Fraction(1)] * n]
    for (a1, a2), (b1, b2) in sorted(bd_partial_order(t)):
        row = [Fraction(0)] * n
        row[a1 - 1] += 1
        row[a2 - 1] -= 1
        row[b1 - 1] -= 1
        row[b2 - 1] += 1
        rows.append(row)
    basis = nullspace(QMatrix.from_rows(rows))
    k = t.k_t
    if len(basis) != k:
        raise AssertionError(
            "dim h_T = %d but expected %d" % (len(basis), k)
        )
    return [tuple(v) for v in basis], k
