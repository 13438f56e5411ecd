"""Multivariate Laurent polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import ExactDivisionError, LogTermError, PoleError, VariableMismatchError
from . import _kernels as K


def _coerce_scalar(c):
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")
    return c


def _fmt_coef(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Sparse Laurent polynomial over Q in a fixed tuple of named variables.

    >>> t, = LaurentPoly.gens(("t",))
    >>> (t + t**-1) ** 2
    t^2 + 2 + t^-2
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        n = len(self.vars)
        out = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise VariableMismatchError(f"exponent {e} does not match {n} variables")
                if c:
                    out[e] = _coerce_scalar(c)
        self.terms = out
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def gens(cls, vars):
        vars = tuple(vars)
        n = len(vars)
        return tuple(cls._raw(vars, {tuple(int(i == k) for i in range(n)): 1}) for k in range(n))

    @classmethod
    def const(cls, vars, c):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, vars, exp, c=1):
        return cls(vars, {tuple(exp): c})

    # -- basic structure ----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.vars.index(var)
        except ValueError:
            raise VariableMismatchError(f"unknown variable {var!r} in {self.vars}") from None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), 0)

    def items(self):
        """Terms in descending lex order."""
        return sorted(self.terms.items(), reverse=True)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero polynomial")
        return max(sum(e) for e in self.terms)

    def low_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero polynomial")
        return min(sum(e) for e in self.terms)

    def degree_in(self, var) -> tuple[int, int]:
        k = self.index(var)
        ex = [e[k] for e in self.terms]
        return min(ex), max(ex)

    def top_part(self) -> LaurentPoly:
        d = self.degree()
        return LaurentPoly._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(f"variables {self.vars} vs {other.vars}")
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return LaurentPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LaurentPoly._raw(self.vars, K.add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LaurentPoly._raw(self.vars, K.sub(self.terms, o.terms))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return LaurentPoly._raw(self.vars, K.scale(self.terms, other))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LaurentPoly._raw(self.vars, K.mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero")
            return LaurentPoly._raw(self.vars, K.scale(self.terms, Fraction(1) / other))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.exact_divide(o)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.vars, {tuple(x * k for x in e): Fraction(1) / c ** -k})
        result = LaurentPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def exact_divide(self, den: LaurentPoly) -> LaurentPoly:
        """Quotient with zero remainder; anything else is a hard error."""
        den = self._lift(den)
        if not den.terms:
            raise ZeroDivisionError("division by zero polynomial")
        q = K.divexact(self.terms, den.terms)
        if q is None:
            raise ExactDivisionError(f"{den} does not divide {self}")
        return LaurentPoly._raw(self.vars, q)

    # -- calculus -----------------------------------------------------------

    def partial(self, var) -> LaurentPoly:
        k = self.index(var)
        out = {}
        for e, c in self.terms.items():
            d = e[k]
            if d:
                out[e[:k] + (d - 1,) + e[k + 1:]] = c * d
        return LaurentPoly._raw(self.vars, out)

    def antiderivative(self, var, lower) -> LaurentPoly:
        """Antiderivative in ``var`` vanishing at ``var = lower``."""
        k = self.index(var)
        prim = {}
        for e, c in self.terms.items():
            d = e[k] + 1
            if d == 0:
                raise LogTermError(f"nonzero {self.vars[k]}^-1 coefficient; integral is not Laurent")
            prim[e[:k] + (d,) + e[k + 1:]] = Fraction(c, d) if isinstance(c, int) else c / d
        G = LaurentPoly._raw(self.vars, prim)
        return G - G._substitute_scalar(k, lower)

    # -- substitution -------------------------------------------------------

    def _substitute_scalar(self, k: int, value) -> LaurentPoly:
        value = _coerce_scalar(value)
        out: dict = {}
        powers: dict = {}
        for e, c in self.terms.items():
            d = e[k]
            if d not in powers:
                if d < 0 and value == 0:
                    raise PoleError(f"{self.vars[k]} = 0 hits a pole")
                powers[d] = Fraction(value) ** d if d < 0 else value ** d
            ne = e[:k] + (0,) + e[k + 1:]
            out[ne] = out.get(ne, 0) + c * powers[d]
        return LaurentPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    def substitute(self, var, value) -> LaurentPoly:
        """Replace ``var`` by a rational or by a Laurent polynomial in the same variables."""
        k = self.index(var)
        if not isinstance(value, LaurentPoly):
            return self._substitute_scalar(k, value)
        value = self._lift(value)
        groups = K.coeffs_in(self.terms, k)
        lo = min(groups)
        if lo < 0 and not value.is_monomial():
            raise PoleError("negative powers require a monomial substitute")
        out = LaurentPoly._raw(self.vars, {})
        for d in sorted(groups):
            out = out + LaurentPoly._raw(self.vars, groups[d]) * value ** d
        return out

    def evaluate(self, point):
        """Value at a full rational point (sequence or mapping by name)."""
        if isinstance(point, dict):
            pt = [point[v] for v in self.vars]
        else:
            pt = list(point)
        if len(pt) != self.nvars:
            raise VariableMismatchError("point dimension mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for x, d in zip(pt, e):
                if d < 0:
                    if x == 0:
                        raise PoleError("evaluation at a pole")
                    term /= Fraction(x) ** -d
                elif d:
                    term *= x ** d
            total += term
        return total

    def invert_vars(self) -> LaurentPoly:
        return LaurentPoly._raw(self.vars, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def embed(self, new_vars, images) -> LaurentPoly:
        """Rename variables: old variable i becomes ``images[i]`` in ``new_vars``.

        An image may be prefixed with ``-`` to substitute the negated variable;
        several old variables may share an image (diagonal restriction).
        """
        new_vars = tuple(new_vars)
        slots = []
        for im in images:
            neg = im.startswith("-")
            name = im[1:] if neg else im
            slots.append((new_vars.index(name), neg))
        if len(slots) != self.nvars:
            raise VariableMismatchError("one image per variable required")
        m = len(new_vars)
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * m
            sign = 1
            for (j, neg), d in zip(slots, e):
                ne[j] += d
                if neg and d & 1:
                    sign = -sign
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + sign * c
        return LaurentPoly._raw(new_vars, {e: c for e, c in out.items() if c})

    def swap(self, a, b) -> LaurentPoly:
        i, j = self.index(a), self.index(b)
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return LaurentPoly._raw(self.vars, out)

    def monomial_shift_to_polynomial(self) -> tuple[LaurentPoly, tuple]:
        """Return (p, m) with p a polynomial and self = p * x^-m."""
        if not self.terms:
            return self, (0,) * self.nvars
        mn = K.min_exponents(self.terms)
        m = tuple(-x if x < 0 else 0 for x in mn)
        return LaurentPoly._raw(self.vars, K.shift(self.terms, m)), m

    # -- I/O ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coef": _fmt_coef(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> LaurentPoly:
        return cls(data["vars"], {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                v if d == 1 else f"{v}^{d}" for v, d in zip(self.vars, e) if d
            )
            c = Fraction(c)
            if not mono:
                s = _fmt_coef(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{_fmt_coef(c)}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out
