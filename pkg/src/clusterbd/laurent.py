"""Sparse multivariate Laurent polynomials over exact rationals.

Terms are stored in a dict keyed by a packed integer: each variable gets a
16-bit field holding exponent + 2**15, so a monomial product is a single
big-int addition.  Coefficients are ints whenever possible and Fractions
otherwise; the two mix freely and compare equal, which keeps the hot loops
on the fast int path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence

from .exactnum import rat, rat_str

_BITS = 16
_MASK = (1 << _BITS) - 1
_OFF = 1 << 15


class LaurentError(ValueError):
    pass


class ContextMismatch(LaurentError):
    pass


class UnknownVariable(LaurentError):
    pass


class NonUnitSubstitution(LaurentError):
    """A non-monomial image was substituted into a negative power."""


class ZeroAtNegativePower(LaurentError):
    """Evaluation hit 0 raised to a negative exponent."""


class VarContext:
    """Ordered, immutable set of variable names fixing the exponent packing."""

    __slots__ = ("names", "nvars", "_index", "_shifts", "zero_key")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        self._shifts = tuple(_BITS * i for i in range(self.nvars))
        z = 0
        for s in self._shifts:
            z |= _OFF << s
        self.zero_key = z

    def __eq__(self, other):
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "VarContext(%s)" % (", ".join(self.names))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable("unknown variable %r" % name) from None

    def encode(self, exps: Sequence[int]) -> int:
        key = self.zero_key
        for i, e in enumerate(exps):
            if e:
                key += e << self._shifts[i]
        return key

    def decode(self, key: int) -> tuple:
        return tuple(((key >> s) & _MASK) - _OFF for s in self._shifts)

    def exp_of(self, key: int, i: int) -> int:
        return ((key >> self._shifts[i]) & _MASK) - _OFF

    # --- constructors -------------------------------------------------

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def const(self, c) -> "LaurentPoly":
        c = _coeff(c)
        return LaurentPoly(self, {self.zero_key: c} if c else {})

    def variable(self, name: str) -> "LaurentPoly":
        i = self.index(name)
        return LaurentPoly(self, {self.zero_key + (1 << self._shifts[i]): 1})

    def monomial(self, coeff, exps: Mapping[str, int]) -> "LaurentPoly":
        coeff = _coeff(coeff)
        if not coeff:
            return self.zero()
        key = self.zero_key
        for name, e in exps.items():
            key += e << self._shifts[self.index(name)]
        return LaurentPoly(self, {key: coeff})

    def poly(self, terms: Iterable) -> "LaurentPoly":
        """Build from (coeff, {var: exp}) pairs, summing duplicates."""
        acc = self.zero()
        for coeff, exps in terms:
            acc = acc + self.monomial(coeff, exps)
        return acc


def _coeff(c):
    """Canonical coefficient: plain int when integral, Fraction otherwise."""
    if isinstance(c, int):
        return c
    c = rat(c)
    return c.numerator if c.denominator == 1 else c


def extend_context(ctx: VarContext, extra: Sequence[str]) -> VarContext:
    return VarContext(ctx.names + tuple(n for n in extra if n not in ctx._index))


class LaurentPoly:
    """Immutable-by-convention sparse Laurent polynomial."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms: Dict[int, object]):
        self.ctx = ctx
        self.terms = terms

    # --- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and self.ctx.zero_key in self.terms
        )

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise LaurentError("not a constant")
        return rat(self.terms[self.ctx.zero_key])

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # --- ring operations ----------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.ctx != other.ctx:
            raise ContextMismatch("operands live in different variable contexts")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = self.ctx.const(other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return LaurentPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = self.ctx.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _coeff(other)
            if not c:
                return self.ctx.zero()
            return LaurentPoly(self.ctx, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        zero = self.ctx.zero_key
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
        return LaurentPoly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            return self.monomial_inverse() ** (-e)
        result = self.ctx.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e >> 1
            if base_needed:
                base = base * base
            e = base_needed
        return result

    def monomial_inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise NonUnitSubstitution("only monomials are invertible")
        ((k, c),) = self.terms.items()
        inv_key = 2 * self.ctx.zero_key - k
        inv_c = c if c in (1, -1) else _coeff(1 / rat(c))
        return LaurentPoly(self.ctx, {inv_key: inv_c})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        return (
            isinstance(other, LaurentPoly)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    __hash__ = None  # mutable dict inside; value equality only

    # --- structure ----------------------------------------------------

    def variables_present(self) -> list:
        """Names of variables occurring with nonzero exponent."""
        seen = [False] * self.ctx.nvars
        shifts = self.ctx._shifts
        for k in self.terms:
            for i, s in enumerate(shifts):
                if not seen[i] and ((k >> s) & _MASK) != _OFF:
                    seen[i] = True
        return [n for i, n in enumerate(self.ctx.names) if seen[i]]

    def min_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * self.ctx.nvars
        mins = None
        for k in self.terms:
            exps = self.ctx.decode(k)
            mins = exps if mins is None else tuple(map(min, mins, exps))
        return mins

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(self.ctx.decode(k)) for k in self.terms)

    def _graded_sort_key(self, key: int):
        exps = self.ctx.decode(key)
        return (sum(exps), exps)

    def leading_term(self) -> tuple:
        """(exponent tuple, coeff) of the graded-lex leading term."""
        if not self.terms:
            raise LaurentError("zero polynomial has no leading term")
        k = max(self.terms, key=self._graded_sort_key)
        return self.ctx.decode(k), self.terms[k]

    def sorted_terms(self) -> list:
        """Terms as (exponent tuple, coeff), graded-lex descending."""
        keys = sorted(self.terms, key=self._graded_sort_key, reverse=True)
        return [(self.ctx.decode(k), self.terms[k]) for k in keys]

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent vector."""
        d = 0
        for i, e in enumerate(exps):
            if e:
                d += e << self.ctx._shifts[i]
        if not d:
            return self
        return LaurentPoly(self.ctx, {k + d: c for k, c in self.terms.items()})

    # --- calculus -----------------------------------------------------

    def diff(self, name: str) -> "LaurentPoly":
        """Formal partial derivative; Laurent exponents handled."""
        i = self.ctx.index(name)
        s = self.ctx._shifts[i]
        step = 1 << s
        out = {}
        for k, c in self.terms.items():
            e = ((k >> s) & _MASK) - _OFF
            if e:
                out[k - step] = c * e
        return LaurentPoly(self.ctx, out)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        """Exact value at a fully specified rational point."""
        vals = []
        for n in self.ctx.names:
            if n not in point:
                raise LaurentError("unassigned variable %r" % n)
            vals.append(rat(point[n]))
        total = Fraction(0)
        for k, c in self.terms.items():
            exps = self.ctx.decode(k)
            term = rat(c)
            for v, e in zip(vals, exps):
                if e == 0:
                    continue
                if v == 0:
                    if e < 0:
                        raise ZeroAtNegativePower(
                            "zero assigned to a negatively powered variable"
                        )
                    term = Fraction(0)
                    break
                term *= v**e
            total += term
        return total

    def substitute(
        self,
        mapping: Mapping[str, "LaurentPoly"],
        target: Optional[VarContext] = None,
    ) -> "LaurentPoly":
        """Substitute each variable by its image polynomial.

        Unmapped variables are sent to the same-named variable of the
        target context.  Non-monomial images may only replace variables
        appearing with nonnegative exponents.
        """
        if target is None:
            target = next(iter(mapping.values())).ctx if mapping else self.ctx
        images = []
        for i, n in enumerate(self.ctx.names):
            img = mapping.get(n)
            if img is None:
                img = target.variable(n)
            elif img.ctx != target:
                raise ContextMismatch("image of %r lives in a foreign context" % n)
            images.append(img)

        if all(len(img.terms) == 1 for img in images):
            # monomial images: every term maps to a single term
            packed = []
            for img in images:
                ((k, c),) = img.terms.items()
                packed.append((k - target.zero_key, c))
            out: dict = {}
            for k, c in self.terms.items():
                exps = self.ctx.decode(k)
                key = target.zero_key
                coeff = c
                for (ik, ic), e in zip(packed, exps):
                    if not e:
                        continue
                    key += ik * e
                    if ic != 1:
                        coeff = coeff * (rat(ic) ** e)
                coeff = _coeff(coeff)
                v = out.get(key)
                v = coeff if v is None else v + coeff
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
            return LaurentPoly(target, out)

        result = target.zero()
        powers: dict = {}
        for k, c in self.terms.items():
            exps = self.ctx.decode(k)
            term = target.const(c)
            for i, e in enumerate(exps):
                if not e:
                    continue
                img = images[i]
                if e < 0 and len(img.terms) != 1:
                    raise NonUnitSubstitution(
                        "non-monomial image of %r substituted into a negative power"
                        % self.ctx.names[i]
                    )
                p = powers.get((i, e))
                if p is None:
                    p = img**e
                    powers[(i, e)] = p
                term = term * p
            result = result + term
        return result

    # --- division -----------------------------------------------------

    def exact_divide(self, divisor: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Exact quotient self/divisor in the Laurent ring, or None.

        Monomial factors are units: both operands are first reduced to
        genuine polynomials by stripping their componentwise-minimal
        exponent vectors, then single-divisor division over the rationals
        decides divisibility (remainder checks short-circuit as soon as a
        leading term fails to divide).
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self.ctx.zero()

        mf = self.min_exponents()
        mg = divisor.min_exponents()
        f = self.shift(tuple(-e for e in mf))
        g = divisor.shift(tuple(-e for e in mg))
        q = _poly_divide(f, g)
        if q is None:
            return None
        return q.shift(tuple(a - b for a, b in zip(mf, mg)))

    # --- formatting ---------------------------------------------------

    def __repr__(self):
        return "LaurentPoly(%s)" % self

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for n, e in zip(self.ctx.names, exps):
                if e == 1:
                    factors.append(n)
                elif e:
                    factors.append("%s^%d" % (n, e))
            c = rat(c)
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, rat_str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def _poly_divide(f: LaurentPoly, g: LaurentPoly) -> Optional[LaurentPoly]:
    """Division of genuine polynomials; returns the quotient iff exact."""
    ctx = f.ctx
    zero = ctx.zero_key
    order: dict = {}

    def okey(k):
        v = order.get(k)
        if v is None:
            exps = ctx.decode(k)
            v = (sum(exps), exps)
            order[k] = v
        return v

    gk = max(g.terms, key=okey)
    gc = g.terms[gk]
    gexp = ctx.decode(gk)
    gdeg = sum(gexp)
    gterms = list(g.terms.items())

    rem = dict(f.terms)
    quot: dict = {}
    while rem:
        rk = max(rem, key=okey)
        rdeg, rexp = okey(rk)
        if rdeg < gdeg or any(a < b for a, b in zip(rexp, gexp)):
            return None
        c = rem[rk]
        if isinstance(c, int) and isinstance(gc, int) and c % gc == 0:
            qc = c // gc
        else:
            qc = _coeff(Fraction(c) / gc)
        qkey = rk - gk + zero
        quot[qkey] = qc
        for tk, tc in gterms:
            k = qkey - zero + tk
            v = rem.get(k)
            v = -qc * tc if v is None else v - qc * tc
            if v:
                rem[k] = v
            elif k in rem:
                del rem[k]
    return LaurentPoly(ctx, quot)


# --- JSON encoding ------------------------------------------------------


def poly_to_json(f: LaurentPoly) -> list:
    out = []
    for exps, c in f.sorted_terms():
        out.append(
            {
                "coeff": rat_str(rat(c)),
                "exps": {
                    n: e for n, e in zip(f.ctx.names, exps) if e
                },
            }
        )
    return out


def poly_from_json(ctx: VarContext, data: Iterable[Mapping]) -> LaurentPoly:
    return ctx.poly((item["coeff"], item.get("exps", {})) for item in data)
