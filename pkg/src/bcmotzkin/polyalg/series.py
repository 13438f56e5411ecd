"""Truncated univariate power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

from ..errors import PreconditionError, VariableMismatchError


def _rational_sqrt(q: Fraction) -> Fraction:
    q = Fraction(q)
    if q <= 0:
        raise PreconditionError("sqrt needs a positive constant term")
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a != q.numerator or b * b != q.denominator:
        raise PreconditionError(f"constant term {q} is not a rational square")
    return Fraction(a, b)


class TruncSeries:
    """``c_0 + c_1 u + ... + c_N u^N + O(u^{N+1})``.

    >>> TruncSeries([1, -1], 4).invert()
    1 + u + u^2 + u^3 + u^4 + O(u^5)
    """

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs, order: int, var: str = "u"):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = [Fraction(c) for c in list(coeffs)[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = cs
        self.order = order
        self.var = var

    @classmethod
    def variable(cls, order: int, var: str = "u") -> TruncSeries:
        return cls([0, 1], order, var)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient u^{k} is beyond the truncation order {self.order}")
        return self.coeffs[k] if k >= 0 else Fraction(0)

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            if other.var != self.var:
                raise VariableMismatchError(f"series in {self.var} vs {other.var}")
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return TruncSeries([other], self.order, self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = min(self.order, o.order)
        return TruncSeries([self.coeffs[k] + o.coeffs[k] for k in range(n + 1)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return TruncSeries([c * other for c in self.coeffs], self.order, self.var)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = min(self.order, o.order)
        a, b = self.coeffs, o.coeffs
        nz = [i for i in range(n + 1) if a[i]]
        out = [Fraction(0)] * (n + 1)
        for j in range(n + 1):
            bj = b[j]
            if not bj:
                continue
            for i in nz:
                if i + j > n:
                    break
                out[i + j] += a[i] * bj
        return TruncSeries(out, n, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** -k
        result = TruncSeries([1], self.order, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self * (Fraction(1) / Fraction(other))
        return self * self._lift(other).invert()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = min(self.order, o.order)
        return all(self.coeffs[k] == o.coeffs[k] for k in range(n + 1))

    def __hash__(self):
        return hash((self.var, self.order, tuple(self.coeffs)))

    def truncate(self, order: int) -> TruncSeries:
        return TruncSeries(self.coeffs, min(order, self.order), self.var)

    def invert(self) -> TruncSeries:
        a = self.coeffs
        if not a[0]:
            raise PreconditionError("inverse needs a nonzero constant term")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            s = sum(a[i] * out[k - i] for i in range(1, k + 1) if a[i])
            out.append(-s * inv0)
        return TruncSeries(out, self.order, self.var)

    def sqrt(self) -> TruncSeries:
        a = self.coeffs
        r0 = _rational_sqrt(a[0])
        out = [r0]
        two_r0 = 2 * r0
        for k in range(1, self.order + 1):
            s = sum(out[i] * out[k - i] for i in range(1, k))
            out.append((a[k] - s) / two_r0)
        return TruncSeries(out, self.order, self.var)

    def compose(self, inner: TruncSeries) -> TruncSeries:
        """``self(inner(u))``; ``inner`` must have zero constant term."""
        if inner[0]:
            raise PreconditionError("composition needs an inner series without constant term")
        n = min(self.order, inner.order)
        result = TruncSeries([0], n, inner.var)
        for c in reversed(self.coeffs[: n + 1]):
            result = result * inner.truncate(n) + c
        return result

    def evaluate_polynomial(self, coeffs_by_power: dict) -> TruncSeries:
        """Evaluate a Laurent polynomial ``sum_k a_k X^k`` at ``X = self``."""
        n = self.order
        lo = min(coeffs_by_power)
        hi = max(coeffs_by_power)
        out = TruncSeries([0], n, self.var)
        if hi >= 0:
            p = TruncSeries([1], n, self.var)
            for k in range(hi + 1):
                if k in coeffs_by_power:
                    out = out + p * coeffs_by_power[k]
                if k < hi:
                    p = p * self
        if lo < 0:
            inv = self.invert()
            p = inv
            for k in range(-1, lo - 1, -1):
                if k in coeffs_by_power:
                    out = out + p * coeffs_by_power[k]
                if k > lo:
                    p = p * inv
        return out

    def __repr__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = str(c)
            if mono:
                s = mono if c == 1 else ("-" + mono if c == -1 else f"{cs}*{mono}")
            else:
                s = cs
            parts.append(s)
        parts.append(f"O({self.var}^{self.order + 1})")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out
