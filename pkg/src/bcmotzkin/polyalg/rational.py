"""Normalized multivariate rational functions over Q.

Canonical form: numerator and denominator are coprime polynomials, the
denominator has integer coefficients with content 1 and a positive
lex-leading coefficient.  Equal functions therefore have identical stored
forms, so zero tests and equality are structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational

from ..errors import NonLaurentError, PoleError, VariableMismatchError
from . import _kernels as K
from .laurent import LaurentPoly


def _to_int_poly(terms: dict) -> tuple[dict, int]:
    """Return (P, m) with P integral and terms == P / m."""
    m = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            m = lcm(m, c.denominator)
    if m == 1:
        return {e: int(c) for e, c in terms.items()}, 1
    return {e: int(c * m) for e, c in terms.items()}, m


def _is_unit_monomial(d: dict) -> bool:
    return len(d) == 1 and not any(next(iter(d)))


class RationalFn:
    """Quotient of polynomials in a fixed tuple of variables.

    >>> t, = RationalFn.gens(("t",))
    >>> 1 / (t - 1) + 1 / (t + 1)
    (2*t) / (t^2 - 1)
    """

    __slots__ = ("vars", "_num", "_den", "_hash")

    def __init__(self, num, den=None, vars=None):
        if isinstance(num, LaurentPoly):
            vars = num.vars
            nterms = num.terms
        else:
            if vars is None:
                raise ValueError("vars required")
            vars = tuple(vars)
            nterms = LaurentPoly.const(vars, num).terms
        if den is None:
            dterms = {(0,) * len(vars): 1}
        elif isinstance(den, LaurentPoly):
            if den.vars != vars:
                raise VariableMismatchError("numerator/denominator variables differ")
            dterms = den.terms
        else:
            dterms = LaurentPoly.const(vars, den).terms
        # Laurent inputs are moved to polynomial form
        n = len(vars)
        if nterms:
            mn = K.min_exponents(nterms)
        else:
            mn = (0,) * n
        md = K.min_exponents(dterms) if dterms else (0,) * n
        m = tuple(-min(a, b, 0) for a, b in zip(mn, md))
        if any(m):
            nterms = K.shift(nterms, m)
            dterms = K.shift(dterms, m)
        self.vars = vars
        self._set(*_normalize(nterms, dterms, n))

    def _set(self, num, den):
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, vars, num, den):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj._set(num, den)
        return obj

    @classmethod
    def _make(cls, vars, num, den, reduced=False):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj._set(*_normalize(num, den, len(vars), reduced))
        return obj

    @classmethod
    def gens(cls, vars):
        vars = tuple(vars)
        one = {(0,) * len(vars): 1}
        return tuple(cls._raw(vars, g.terms, one) for g in LaurentPoly.gens(vars))

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> RationalFn:
        return cls(p)

    @classmethod
    def const(cls, vars, c):
        return cls(c, vars=vars)

    # -- structure ----------------------------------------------------------

    @property
    def num(self) -> LaurentPoly:
        return LaurentPoly._raw(self.vars, self._num)

    @property
    def den(self) -> LaurentPoly:
        return LaurentPoly._raw(self.vars, self._den)

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.vars.index(var)
        except ValueError:
            raise VariableMismatchError(f"unknown variable {var!r}") from None

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self):
        return bool(self._num)

    def is_laurent(self) -> bool:
        return len(self._den) == 1

    def to_laurent(self) -> LaurentPoly:
        if len(self._den) != 1:
            raise NonLaurentError(f"denominator {self.den} is not a monomial")
        (e, c), = self._den.items()
        inv = tuple(-x for x in e)
        return LaurentPoly._raw(self.vars, {tuple(a + b for a, b in zip(f, inv)): Fraction(v) / c if c != 1 else v
                                            for f, v in self._num.items()})

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, RationalFn):
            if other.vars != self.vars:
                raise VariableMismatchError(f"variables {self.vars} vs {other.vars}")
            return other
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(f"variables {self.vars} vs {other.vars}")
            return RationalFn(other)
        if isinstance(other, Rational) and not isinstance(other, bool):
            return RationalFn(other, vars=self.vars)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o._num:
            return self
        if not self._num:
            return o
        n = len(self.vars)
        b, d = self._den, o._den
        if b == d:
            return RationalFn._make(self.vars, K.add(self._num, o._num), b)
        g = _poly_gcd(b, d, n)
        if _is_unit_monomial(g):
            b1, d1 = b, d
        else:
            b1 = K.divexact_or_raise(b, g, integral=True)
            d1 = K.divexact_or_raise(d, g, integral=True)
        num = K.add(K.mul(self._num, d1), K.mul(o._num, b1))
        den = K.mul(K.mul(b1, d1), g)
        if not num:
            return RationalFn._raw(self.vars, {}, {(0,) * n: 1})
        # only factors of g can be shared with the new numerator
        if _is_unit_monomial(g):
            return RationalFn._make(self.vars, num, den, reduced=True)
        obj = RationalFn.__new__(RationalFn)
        obj.vars = self.vars
        obj._set(*_normalize(num, den, n, against=g))
        return obj

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._raw(self.vars, {e: -c for e, c in self._num.items()}, self._den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            if not other:
                return RationalFn._raw(self.vars, {}, {(0,) * len(self.vars): 1})
            return RationalFn._raw(self.vars, K.scale(self._num, other), self._den)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return _mul_reduced(self.vars, self._num, self._den, o._num, o._den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFn:
        if not self._num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFn._make(self.vars, self._den, self._num, reduced=True)

    def __truediv__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o._num:
            raise ZeroDivisionError("division by zero rational function")
        return _mul_reduced(self.vars, self._num, self._den, o._den, o._num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        n = len(self.vars)
        num, den = {(0,) * n: 1}, {(0,) * n: 1}
        bn, bd = base._num, base._den
        while k:
            if k & 1:
                num, den = K.mul(num, bn), K.mul(den, bd)
            k >>= 1
            if k:
                bn, bd = K.mul(bn, bn), K.mul(bd, bd)
        # powers of coprime pairs stay coprime
        return RationalFn._make(self.vars, num, den, reduced=True)

    def __eq__(self, other):
        if isinstance(other, RationalFn):
            return self.vars == other.vars and self._num == other._num and self._den == other._den
        if isinstance(other, (LaurentPoly, Rational)) and not isinstance(other, bool):
            try:
                o = self._lift(other)
            except VariableMismatchError:
                return False
            return self == o
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._num.items()), frozenset(self._den.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------------

    def partial(self, var) -> RationalFn:
        k = self.index(var)
        a, b = self.num, self.den
        da, db = a.partial(k), b.partial(k)
        if not db.terms:
            return RationalFn._make(self.vars, da.terms, self._den, reduced=False)
        num = (da * b - a * db).terms
        den = K.mul(self._den, self._den)
        return RationalFn._make(self.vars, num, den)

    def substitute(self, var, value) -> RationalFn:
        """Replace ``var`` by a rational, a Laurent polynomial or a rational function."""
        k = self.index(var)
        if isinstance(value, Rational) and not isinstance(value, bool):
            num = self.num._substitute_scalar(k, value)
            den = self.den._substitute_scalar(k, value)
            if not den.terms:
                raise PoleError(f"{self.vars[k]} = {value} hits a pole")
            return RationalFn(num, den)
        value = self._lift(value)
        p, q = value.num, value.den
        Nn, Dn = _subst_poly(self.num, k, p, q)
        Nd, Dd = _subst_poly(self.den, k, p, q)
        if not Nd.terms:
            raise PoleError(f"substitution for {self.vars[k]} hits a pole")
        # (Nn / q^Dn) / (Nd / q^Dd)
        if Dd >= Dn:
            num, den = Nn * q ** (Dd - Dn), Nd
        else:
            num, den = Nn, Nd * q ** (Dn - Dd)
        return RationalFn(num, den)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleError("evaluation at a pole")
        return self.num.evaluate(point) / d

    def embed(self, new_vars, images) -> RationalFn:
        num = self.num.embed(new_vars, images)
        den = self.den.embed(new_vars, images)
        if not den.terms:
            raise PoleError("embedding collapses the denominator")
        return RationalFn(num, den)

    # -- I/O ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> RationalFn:
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    def __repr__(self):
        if _is_unit_monomial(self._den) and self._den[next(iter(self._den))] == 1:
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def _poly_gcd(a: dict, b: dict, n: int) -> dict:
    if len(a) == 1 or len(b) == 1:
        m = tuple(min(x, y) for x, y in zip(K.min_exponents(a), K.min_exponents(b)))
        return {m: 1}
    return K.gcd(a, b, n)


def _mul_reduced(vars, a, b, c, d):
    """(a/b)*(c/d) for reduced inputs, cancelling across.

    b and d may carry rational coefficients (division passes a numerator as d).
    """
    n = len(vars)
    if not a or not c:
        return RationalFn._raw(vars, {}, {(0,) * n: 1})
    ai, am = _to_int_poly(a)
    ci, cm = _to_int_poly(c)
    b, bm = _to_int_poly(b)
    d, dm = _to_int_poly(d)
    # a c / (b d) = (ai ci bm dm) / (am cm b' d')
    am, cm = Fraction(am, bm), Fraction(cm, dm)
    g1 = _poly_gcd(ai, d, n)
    g2 = _poly_gcd(ci, b, n)
    if not _is_unit_monomial(g1):
        ai = K.divexact_or_raise(ai, g1, integral=True)
        d = K.divexact_or_raise(d, g1, integral=True)
    if not _is_unit_monomial(g2):
        ci = K.divexact_or_raise(ci, g2, integral=True)
        b = K.divexact_or_raise(b, g2, integral=True)
    num = K.scale(K.mul(ai, ci), Fraction(1, am * cm))
    return RationalFn._make(vars, num, K.mul(b, d), reduced=True)


def _normalize(num: dict, den: dict, n: int, reduced: bool = False, against: dict | None = None):
    """Canonical (num, den).  ``against`` is an integer factor of den known to
    contain every factor that num and den can share."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    one = {(0,) * n: 1}
    if not num:
        return {}, one
    Ni, ln = _to_int_poly(num)
    Di, ld = _to_int_poly(den)
    if not reduced:
        g = _poly_gcd(Ni, Di if against is None else against, n)
        if not _is_unit_monomial(g):
            if len(g) == 1:
                (m, _), = g.items()
                neg = tuple(-x for x in m)
                Ni, Di = K.shift(Ni, neg), K.shift(Di, neg)
            else:
                Ni = K.divexact_or_raise(Ni, g, integral=True)
                Di = K.divexact_or_raise(Di, g, integral=True)
    cD = K.int_content(Di)
    if Di[max(Di)] < 0:
        cD = -cD
    if cD != 1:
        Di = {e: c // cD for e, c in Di.items()}
    f = Fraction(ld, ln * cD)
    if f == 1:
        numr = Ni
    else:
        numr = {e: c * f for e, c in Ni.items()}
    return numr, Di


def _subst_poly(P: LaurentPoly, k: int, p: LaurentPoly, q: LaurentPoly):
    """P(var_k = p/q) * q^D as a polynomial, together with D = deg_k P."""
    groups = K.coeffs_in(P.terms, k)
    D = max(groups)
    vars = P.vars
    out = LaurentPoly._raw(vars, {})
    for d, part in groups.items():
        out = out + LaurentPoly._raw(vars, part) * p ** d * q ** (D - d)
    return out, D


def laurent_sum(fns) -> LaurentPoly:
    """Sum of rational functions whose total is asserted to be Laurent.

    The common denominator is the lcm of the (small) denominators; the
    numerator is then divided once, exactly, by its non-monomial part.
    Avoids gcds against the large accumulated numerator.
    """
    fns = list(fns)
    if not fns:
        raise ValueError("empty sum")
    vars = fns[0].vars
    n = len(vars)
    L = {(0,) * n: 1}
    for f in fns:
        if f.vars != vars:
            raise VariableMismatchError("variables differ")
        if not f._num:
            continue
        g = _poly_gcd(L, f._den, n)
        L = K.mul(L, K.divexact_or_raise(f._den, g, integral=True)) if not _is_unit_monomial(g) \
            else K.mul(L, f._den)
    N: dict = {}
    for f in fns:
        if f._num:
            cof = K.divexact_or_raise(L, f._den, integral=True)
            N = K.add(N, K.mul(f._num, cof))
    # split L = c * x^m * L' with L' free of monomial content
    m = K.min_exponents(L)
    Lp = K.shift(L, tuple(-x for x in m))
    if len(Lp) == 1:
        (e, c), = Lp.items()
        q = {k: Fraction(v) / c for k, v in N.items()}
    else:
        q = K.divexact(N, Lp)
        if q is None:
            raise NonLaurentError("sum is not a Laurent polynomial")
    return LaurentPoly._raw(vars, K.shift(q, tuple(-x for x in m)))
