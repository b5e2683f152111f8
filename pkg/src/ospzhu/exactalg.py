"""Exact arithmetic: rationals, sparse Laurent polynomials, univariate
polynomials and rational functions.

Rationals are plain :class:`fractions.Fraction` values.  Everything here is
immutable once built, so values can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible, ZeroPolynomial

Q = Fraction


def as_q(x) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fmt_q(x) -> str:
    """Serialize a rational as "num/den" (integers print bare)."""
    return str(as_q(x))


def rising(q, n: int):
    """Rising factorial (q)_n = q(q+1)...(q+n-1); q may be any ring element."""
    out = 1
    for k in range(n):
        out = out * (q + k)
    return out


# ---------------------------------------------------------------------------
# Multivariate (Laurent) polynomials
# ---------------------------------------------------------------------------

def _addexp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _subexp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _grlex_key(e):
    return (sum(e), e)


class MPoly:
    """Sparse polynomial over Q in a fixed tuple of named variables.

    Exponents are integers and may be negative, so this is really the
    Laurent ring; :meth:`is_polynomial` tells the two apart.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError("exponent arity does not match variables")
                    clean[e] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, variables, c) -> "MPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): as_q(c)})

    @classmethod
    def var(cls, variables, name: str, power: int = 1) -> "MPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = power
        return cls(variables, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, variables, exps, c=1) -> "MPoly":
        return cls(variables, {tuple(exps): as_q(c)})

    @classmethod
    def _raw(cls, variables, terms) -> "MPoly":
        # trusted fast path: terms already clean
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # basic properties ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def is_constant(self) -> bool:
        z = (0,) * len(self.vars)
        return all(e == z for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def min_degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return min(e[i] for e in self.terms)

    def leading(self):
        """Leading (exponent, coefficient) under graded-lex order."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def _lex_leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return MPoly.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MPoly":
        c = as_q(c)
        if not c:
            return MPoly._raw(self.vars, {})
        return MPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(int.__add__, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise NotDivisible("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return MPoly._raw(self.vars, {tuple(x * k for x in e): c ** k})
        out = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, exps) -> "MPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        return MPoly._raw(self.vars, {_addexp(e, exps): c for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        try:
            return self == MPoly.const(self.vars, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # substitution -------------------------------------------------------
    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at the given values; unmentioned variables must not occur."""
        idx = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        total = 0
        for e, c in self.terms.items():
            t = c
            for i, val in idx:
                if e[i]:
                    t = t * (val ** e[i])
            total = total + t
        return total

    def partial(self, values: Mapping[str, object]) -> "MPoly":
        """Substitute rational values for some variables, keeping the arity."""
        pos = {self.vars.index(k): as_q(v) for k, v in values.items()}
        out: dict = {}
        for e, c in self.terms.items():
            t = c
            e2 = list(e)
            for i, val in pos.items():
                if e[i]:
                    if val == 0 and e[i] < 0:
                        raise ZeroDivisionError("negative power of zero")
                    t *= val ** e[i]
                e2[i] = 0
            e2 = tuple(e2)
            out[e2] = out.get(e2, 0) + t
        return MPoly(self.vars, out)

    def rename(self, variables: Sequence[str], perm: Sequence[int] | None = None) -> "MPoly":
        """Re-express in a new variable tuple.

        ``perm[i]`` is the position in the new tuple receiving old variable i;
        by default old variables are looked up by name.
        """
        variables = tuple(variables)
        if perm is None:
            perm = [variables.index(v) for v in self.vars]
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, x in enumerate(e):
                if x:
                    e2[perm[i]] += x
            out[tuple(e2)] = c
        return MPoly._raw(variables, out)

    def swap(self, i: int, j: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[i], e2[j] = e2[j], e2[i]
            out[tuple(e2)] = c
        return MPoly._raw(self.vars, out)

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = reduce(gcd, (c.numerator for c in self.terms.values()))
        dens = reduce(lcm, (c.denominator for c in self.terms.values()))
        return Fraction(abs(nums), dens)

    def monomial_gcd(self):
        """Componentwise minimum exponent over all terms."""
        es = list(self.terms)
        return tuple(min(col) for col in zip(*es))

    # display --------------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(self.vars, e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def exact_div(a: MPoly, b: MPoly) -> MPoly:
    """Return q with a = q*b, or raise NotDivisible.

    Works in the Laurent ring: both sides are first shifted to honest
    polynomials, divided with the lex-greedy algorithm, then shifted back.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return MPoly._raw(a.vars, {})
    if a.vars != b.vars:
        raise ValueError("variable mismatch")
    sa = a.monomial_gcd()
    sb = b.monomial_gcd()
    ap = a.shift(tuple(-x for x in sa))
    bp = b.shift(tuple(-x for x in sb))
    lb, cb = bp._lex_leading()
    rem = dict(ap.terms)
    quot = {}
    btems = list(bp.terms.items())
    while rem:
        le = max(rem)
        lc = rem[le]
        qe = _subexp(le, lb)
        if min(qe) < 0:
            raise NotDivisible(f"{a!r} is not divisible by {b!r}")
        qc = lc / cb
        quot[qe] = qc
        for e, c in btems:
            t = _addexp(e, qe)
            v = rem.get(t, 0) - qc * c
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    q = MPoly._raw(a.vars, quot)
    return q.shift(_subexp(sa, sb))


def divides(b: MPoly, a: MPoly) -> bool:
    try:
        exact_div(a, b)
        return True
    except NotDivisible:
        return False


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------

class UPoly:
    """Dense univariate polynomial, coefficients ascending, trailing zeros trimmed."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Iterable = (), var: str = "sigma"):
        cs = [as_q(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def x(cls, var="sigma"):
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var="sigma"):
        return cls((c,), var)

    @classmethod
    def from_roots(cls, roots, var="sigma"):
        out = cls((1,), var)
        for r in roots:
            out = out * cls((-as_q(r), 1), var)
        return out

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for zero

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _c(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly((other,), self.var)

    def __add__(self, other):
        other = self._c(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            c = as_q(other)
            return UPoly([x * c for x in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly((), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_q(c)
        return UPoly([x / c for x in self.coeffs], self.var)

    def __pow__(self, k: int):
        out = UPoly((1,), self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UPoly((other,)).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "UPoly") -> "UPoly":
        """self(other(var))."""
        acc = UPoly((), other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reflect(self) -> "UPoly":
        """p(-x)."""
        return UPoly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.var)

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        return self / self.coeffs[-1]

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def divmod(self, other: "UPoly"):
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lcb = other.coeffs[-1]
        q = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lcb
            q[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return UPoly(q, self.var), UPoly(rem[:db] if db > 0 else [], self.var)

    def exact_quo(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if r:
            raise NotDivisible(f"{self} is not divisible by {other}")
        return q

    def divides(self, other: "UPoly") -> bool:
        """True iff self | other."""
        if not self.coeffs:
            return not other.coeffs
        return not other.divmod(self)[1]

    def primitive_int(self):
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        d = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * d) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        ints = [x // g for x in ints]
        if ints and ints[-1] < 0:
            ints = [-x for x in ints]
        return ints

    def to_json(self):
        return {"var": self.var, "coeffs": [fmt_q(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, d):
        return cls([as_q(c) for c in d["coeffs"]], d.get("var", "sigma"))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            m = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts).replace("+ -", "- ")


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    var = a.var
    while b.coeffs:
        a, b = b, a.divmod(b)[1]
    return UPoly(a.monic().coeffs, var)


def upoly_lcm(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return UPoly((), a.var)
    return (a * b).exact_quo(upoly_gcd(a, b)).monic()


def _divisors(n: int):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def rational_roots(f: UPoly) -> list:
    """All rational roots of f with multiplicity, sorted ascending."""
    if not f.coeffs:
        raise ZeroPolynomial("rational_roots of the zero polynomial")
    roots = []
    g = f
    while g.degree > 0 and not g.coeffs[0]:
        roots.append(Fraction(0))
        g = UPoly(g.coeffs[1:], g.var)
    if g.degree <= 0:
        return sorted(roots)
    ints = g.primitive_int()
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    for r in sorted(cands):
        lin = UPoly((-r, 1), g.var)
        while g.degree > 0 and g(r) == 0:
            roots.append(r)
            g = g.exact_quo(lin)
    return sorted(roots)


# ---------------------------------------------------------------------------
# Univariate rational functions (used for a formal Jack parameter)
# ---------------------------------------------------------------------------

class RatFun1:
    """Reduced quotient of univariate polynomials, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly | None = None, _reduced=False):
        if den is None:
            den = UPoly((1,), num.var)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced and den.degree > 0 and num:
            g = upoly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_quo(g)
                den = den.exact_quo(g)
        lc = den.lc()
        if lc != 1:
            num = num / lc
            den = den / lc
        if not num:
            den = UPoly((1,), num.var)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c, var="t"):
        return cls(UPoly((c,), var), _reduced=True)

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _c(self, o):
        if isinstance(o, RatFun1):
            return o
        if isinstance(o, UPoly):
            return RatFun1(o)
        return RatFun1(UPoly((o,), self.num.var), _reduced=True)

    def __add__(self, o):
        o = self._c(o)
        if self.den == o.den:
            return RatFun1(self.num + o.num, self.den)
        return RatFun1(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun1(-self.num, self.den, _reduced=True)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return RatFun1(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFun1(self.num * o.den, self.den * o.num)

    def __eq__(self, o):
        o = self._c(o)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def has_pole_at(self, x) -> bool:
        return self.den(x) == 0

    def at(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole")
        return self.num(x) / d

    def __repr__(self):
        if self.den.degree <= 0:
            return repr(self.num)
        return f"({self.num})/({self.den})"


# ---------------------------------------------------------------------------
# Multivariate rational functions
# ---------------------------------------------------------------------------

def _normalize_factor(f: MPoly):
    """Split f into (scalar, monomial exps, primitive factor with positive
    graded-lex leading coefficient)."""
    m = f.monomial_gcd()
    g = f.shift(tuple(-x for x in m))
    c = g.content()
    g = g.scale(1 / c)
    if g.leading()[1] < 0:
        g = -g
        c = -c
    return c, m, g


class RatFun:
    """Quotient num/den of Laurent polynomials.

    The denominator is kept as a product of primitive factors with
    multiplicities (monomials and scalars are folded into the numerator).
    Factors that divide the numerator are cancelled on construction, which
    is all the reduction the correlator formulae need.  Equality is decided
    by cross-multiplication.
    """

    __slots__ = ("num", "factors")

    def __init__(self, num: MPoly, den: MPoly | Mapping | None = None):
        factors: dict = {}
        if den is None:
            pass
        elif isinstance(den, MPoly):
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            c, m, g = _normalize_factor(den)
            num = num.scale(1 / c).shift(tuple(-x for x in m))
            if not g.is_constant():
                factors[g] = 1
        else:
            for f, k in den.items():
                if k:
                    factors[f] = factors.get(f, 0) + k
        self.num, self.factors = self._cancel(num, factors)

    @staticmethod
    def _cancel(num: MPoly, factors: dict):
        if num.is_zero():
            return num, {}
        out = {}
        for f, k in factors.items():
            while k:
                try:
                    num = exact_div(num, f)
                except NotDivisible:
                    break
                k -= 1
            if k:
                out[f] = k
        return num, out

    @classmethod
    def from_poly(cls, p: MPoly) -> "RatFun":
        return cls(p)

    @classmethod
    def frac(cls, num: MPoly, *den_factors: MPoly) -> "RatFun":
        """num / prod(den_factors), each factor normalized separately."""
        factors = {}
        for d in den_factors:
            c, m, g = _normalize_factor(d)
            num = num.scale(1 / c).shift(tuple(-x for x in m))
            if not g.is_constant():
                factors[g] = factors.get(g, 0) + 1
        return cls(num, factors)

    @property
    def vars(self):
        return self.num.vars

    @property
    def denominator(self) -> MPoly:
        out = MPoly.const(self.num.vars, 1)
        for f, k in sorted(self.factors.items(), key=lambda t: repr(t[0])):
            out = out * f ** k
        return out

    @property
    def numerator(self) -> MPoly:
        return self.num

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.factors

    def _c(self, o):
        if isinstance(o, RatFun):
            return o
        if isinstance(o, MPoly):
            return RatFun(o)
        return RatFun(MPoly.const(self.num.vars, o))

    def __add__(self, o):
        o = self._c(o)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        common = dict(self.factors)
        for f, k in o.factors.items():
            common[f] = max(common.get(f, 0), k)
        a = self.num
        for f, k in common.items():
            extra = k - self.factors.get(f, 0)
            if extra:
                a = a * f ** extra
        b = o.num
        for f, k in common.items():
            extra = k - o.factors.get(f, 0)
            if extra:
                b = b * f ** extra
        return RatFun(a + b, common)

    __radd__ = __add__

    def __neg__(self):
        out = RatFun.__new__(RatFun)
        out.num = -self.num
        out.factors = dict(self.factors)
        return out

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        factors = dict(self.factors)
        for f, k in o.factors.items():
            factors[f] = factors.get(f, 0) + k
        return RatFun(self.num * o.num, factors)

    __rmul__ = __mul__

    def mul_factors(self, polys: Iterable[MPoly]) -> "RatFun":
        """Multiply by a product of polynomials, cancelling matching
        denominator factors symbolically before expanding."""
        factors = dict(self.factors)
        num = self.num
        for p in polys:
            c, m, g = _normalize_factor(p)
            num = num.scale(c).shift(m)
            if g.is_constant():
                continue
            if factors.get(g):
                factors[g] -= 1
                if not factors[g]:
                    del factors[g]
            else:
                num = num * g
        return RatFun(num, factors)

    def __eq__(self, o):
        o = self._c(o)
        return self.num * o.denominator == o.num * self.denominator

    def __hash__(self):
        raise TypeError("RatFun is unhashable; compare with ==")

    def evaluate(self, values):
        d = self.denominator.evaluate(values)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(values) / d

    def to_poly(self) -> MPoly:
        if self.factors:
            raise NotDivisible("rational function is not a polynomial")
        return self.num

    def to_json(self):
        return {
            "vars": list(self.vars),
            "numerator": repr(self.num),
            "denominator": sorted([repr(f), k] for f, k in self.factors.items()),
        }

    def __repr__(self):
        if not self.factors:
            return repr(self.num)
        return f"({self.num!r})/({self.denominator!r})"
