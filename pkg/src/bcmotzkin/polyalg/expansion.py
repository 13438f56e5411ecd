"""Local Laurent expansion of a rational function around a point."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational

from ..errors import PreconditionError, ResidueDepthError
from .laurent import LaurentPoly
from .rational import RationalFn


def _parse_center(f: RationalFn, center):
    """Return ('const', value) or ('var', index, sign)."""
    if isinstance(center, Rational) and not isinstance(center, bool):
        return ("const", center)
    if isinstance(center, str):
        sign = -1 if center.startswith("-") else 1
        name = center.lstrip("+-")
        return ("var", f.index(name), sign)
    raise PreconditionError(f"expansion center must be a rational or ±variable, got {center!r}")


def _shifted(P: dict, k: int, c, n: int, max_order: int | None) -> list[dict]:
    """Coefficients (in s) of P(var_k = s + center), truncated at ``max_order``."""
    out: list[dict] = []
    for e, coef in P.items():
        d = e[k]
        top = d if max_order is None else min(d, max_order)
        base = e[:k] + (0,) + e[k + 1:]
        for i in range(top + 1):
            mult = comb(d, i) * coef
            if c[0] == "const":
                ne = base
                mult = mult * Fraction(c[1]) ** (d - i)
            else:
                _, j, sign = c
                ne = base[:j] + (base[j] + d - i,) + base[j + 1:]
                if sign < 0 and (d - i) & 1:
                    mult = -mult
            if not mult:
                continue
            while len(out) <= i:
                out.append({})
            slot = out[i]
            s = slot.get(ne, 0) + mult
            if s:
                slot[ne] = s
            else:
                slot.pop(ne, None)
    return out


def _expand(f: RationalFn, var, center, depth: int, residue_only: bool):
    """Pole order m and the series coefficients q_0..q_K of s^m f(s)."""
    k = f.index(var)
    c = _parse_center(f, center)
    if c[0] == "var" and c[1] == k:
        raise PreconditionError("center cannot be the expansion variable itself")
    n = len(f.vars)
    D = _shifted(f._den, k, c, n, None)
    m = next(i for i, part in enumerate(D) if part)
    if m > depth:
        raise ResidueDepthError(f"pole of order {m} exceeds depth {depth}")
    K = m - 1 if residue_only else m
    if K < 0:
        return m, []
    N = _shifted(f._num, k, c, n, K)
    vars = f.vars

    def R(part: dict) -> RationalFn:
        return RationalFn(LaurentPoly._raw(vars, part)) if part else RationalFn(0, vars=vars)

    Dp = [R(D[m + i]) if m + i < len(D) else None for i in range(K + 1)]
    inv0 = Dp[0].inverse()
    q: list[RationalFn] = []
    for j in range(K + 1):
        acc = R(N[j]) if j < len(N) else RationalFn(0, vars=vars)
        for i in range(1, j + 1):
            if Dp[i] is not None and Dp[i] and q[j - i]:
                acc = acc - Dp[i] * q[j - i]
        q.append(acc * inv0)
    return m, q


def local_laurent_expansion(f: RationalFn, var, center, depth: int) -> list[RationalFn]:
    """Coefficients of ``f`` in ``s = var - center`` from ``s^-depth`` to ``s^0``.

    The returned coefficients live in the same variable tuple as ``f`` but do
    not involve ``var``.  Raises ResidueDepthError if the pole order at the
    center exceeds ``depth``.
    """
    m, q = _expand(f, var, center, depth, False)
    # s^-r is q[m - r]
    zero = RationalFn(0, vars=f.vars)
    return [q[m - r] if r <= m else zero for r in range(depth, -1, -1)]


def residue(f: RationalFn, var, center, depth: int = 2) -> RationalFn:
    """Coefficient of ``s^-1`` in the expansion at ``center``."""
    if depth < 1:
        raise PreconditionError("residue requires depth >= 1")
    m, q = _expand(f, var, center, depth, True)
    if m == 0:
        return RationalFn(0, vars=f.vars)
    return q[m - 1]
