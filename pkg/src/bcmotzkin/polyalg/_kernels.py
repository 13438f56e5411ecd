"""Dict-level kernels for sparse multivariate polynomials.

A polynomial is a dict mapping exponent tuples (all the same length) to
nonzero coefficients.  Exponents may be negative (Laurent) unless a function
says otherwise.  The monomial order is lexicographic on exponent tuples, so
the leading term is simply ``max(p)``.

The gcd routines work on integer polynomials with nonnegative exponents.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from ..errors import ExactDivisionError


def add(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def shift(a: dict, m: tuple) -> dict:
    """Multiply by the monomial with exponent vector ``m``."""
    return {tuple(x + y for x, y in zip(e, m)): v for e, v in a.items()}


def mul(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def min_exponents(a: dict) -> tuple:
    it = iter(a)
    m = list(next(it))
    for e in it:
        for i, x in enumerate(e):
            if x < m[i]:
                m[i] = x
    return tuple(m)


def max_exponents(a: dict) -> tuple:
    it = iter(a)
    m = list(next(it))
    for e in it:
        for i, x in enumerate(e):
            if x > m[i]:
                m[i] = x
    return tuple(m)


def divexact(a: dict, b: dict, integral: bool = False):
    """Exact quotient ``a / b`` or ``None`` if the division leaves a remainder.

    Works for Laurent polynomials: lex order is a monoid order on Z^n, so the
    leading term of a product is the product of leading terms.  Termination
    for non-exact input is guaranteed by the exponent box that any true
    quotient must live in.  With ``integral=True`` coefficients must divide
    exactly as integers.
    """
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    amin, amax = min_exponents(a), max_exponents(a)
    bmin, bmax = min_exponents(b), max_exponents(b)
    lo = tuple(x - y for x, y in zip(amin, bmin))
    hi = tuple(x - y for x, y in zip(amax, bmax))
    if any(x > y for x, y in zip(lo, hi)):
        return None
    lb = max(b)
    lcb = b[lb]
    rest = [(e, c) for e, c in b.items() if e != lb]
    r = dict(a)
    q: dict = {}
    while r:
        lr = max(r)
        lcr = r.pop(lr)
        qe = tuple(x - y for x, y in zip(lr, lb))
        for x, l, h in zip(qe, lo, hi):
            if x < l or x > h:
                return None
        if integral:
            qc, rem = divmod(lcr, lcb)
            if rem:
                return None
        elif isinstance(lcr, int) and isinstance(lcb, int):
            qc = Fraction(lcr, lcb)
            if qc.denominator == 1:
                qc = qc.numerator
        else:
            qc = lcr / lcb
        q[qe] = qc
        for de, c in rest:
            e = tuple([x + y for x, y in zip(qe, de)])
            s = r.get(e, 0) - qc * c
            if s:
                r[e] = s
            else:
                r.pop(e, None)
    return q


def divexact_or_raise(a: dict, b: dict, integral: bool = False) -> dict:
    q = divexact(a, b, integral)
    if q is None:
        raise ExactDivisionError("polynomial division left a nonzero remainder")
    return q


# ---------------------------------------------------------------------------
# integer gcd machinery (nonnegative exponents)


def int_content(a: dict) -> int:
    g = 0
    for c in a.values():
        g = igcd(g, c)
        if g == 1:
            break
    return g


def normalize_unit(a: dict) -> dict:
    """Divide out the integer content and make the leading coefficient positive."""
    if not a:
        return a
    g = int_content(a)
    if a[max(a)] < 0:
        g = -g
    if g == 1:
        return a
    return {e: c // g for e, c in a.items()}


def _is_const(a: dict) -> bool:
    return len(a) == 1 and not any(next(iter(a)))


def _vars_present(a: dict, n: int) -> set:
    out = set()
    for e in a:
        for i in range(n):
            if e[i]:
                out.add(i)
    return out


def _deg(a: dict, k: int) -> int:
    return max(e[k] for e in a)


def coeffs_in(a: dict, k: int) -> dict:
    """Split ``a`` by the power of variable ``k``; slot ``k`` is zeroed."""
    out: dict = {}
    for e, c in a.items():
        d = e[k]
        if d:
            e = e[:k] + (0,) + e[k + 1:]
        out.setdefault(d, {})[e] = c
    return out


def _one(n: int) -> dict:
    return {(0,) * n: 1}


def gcd(a: dict, b: dict, n: int) -> dict:
    """Primitive gcd (positive lex-leading coefficient) of two integer polys."""
    if not a:
        return normalize_unit(dict(b)) if b else {}
    if not b:
        return normalize_unit(dict(a))
    ma, mb = min_exponents(a), min_exponents(b)
    m = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(ma):
        a = shift(a, tuple(-x for x in ma))
    if any(mb):
        b = shift(b, tuple(-x for x in mb))
    g = _gcd_nomono(a, b, n)
    if any(m):
        g = shift(g, m)
    return g


def _gcd_nomono(a: dict, b: dict, n: int) -> dict:
    if _is_const(a) or _is_const(b):
        return _one(n)
    if len(a) < len(b):
        a, b = b, a
    bp = normalize_unit(b)
    # Gauss: a primitive divisor over Q divides over Z
    if divexact(a, bp, integral=True) is not None:
        return bp
    va, vb = _vars_present(a, n), _vars_present(b, n)
    only_a = va - vb
    only_b = vb - va
    if only_a or only_b:
        # a variable present in one operand only: the gcd divides every
        # coefficient of that operand with respect to the variable
        if only_a:
            k, big, small = min(only_a), a, b
        else:
            k, big, small = min(only_b), b, a
        g = small
        for c in sorted(coeffs_in(big, k).values(), key=len):
            g = gcd(g, c, n)
            if _is_const(g):
                return _one(n)
        return normalize_unit(g)
    common = va & vb
    k = min(common, key=lambda i: (_deg(b, i), _deg(a, i), i))
    cb = content_in(b, k, n)
    if _is_const(cb):
        cg = _one(n)
    else:
        cg = cb
        for c in sorted(coeffs_in(a, k).values(), key=len):
            cg = gcd(cg, c, n)
            if _is_const(cg):
                break
    # primitive PRS in variable k
    A, B = (a, b) if _deg(a, k) >= _deg(b, k) else (b, a)
    B = primitive_part_in(B, k, n)
    while True:
        R = prem(A, B, k)
        if not R:
            G = B
            break
        if _deg(R, k) == 0:
            G = _one(n)
            break
        A, B = B, primitive_part_in(R, k, n)
    G = primitive_part_in(G, k, n)
    if not _is_const(cg):
        G = mul(G, cg)
    return normalize_unit(G)


def content_in(a: dict, k: int, n: int) -> dict:
    """gcd of the coefficients of ``a`` viewed as a polynomial in variable ``k``."""
    parts = sorted(coeffs_in(a, k).values(), key=len)
    g = parts[0]
    for c in parts[1:]:
        if _is_const(g):
            break
        g = gcd(g, c, n)
    return normalize_unit(g)


def primitive_part_in(a: dict, k: int, n: int) -> dict:
    c = content_in(a, k, n)
    if _is_const(c):
        return normalize_unit(a)
    return normalize_unit(divexact_or_raise(a, c, integral=True))


def prem(a: dict, b: dict, k: int) -> dict:
    """Pseudo-remainder of ``a`` by ``b`` in variable ``k``."""
    db = _deg(b, k)
    cb = coeffs_in(b, k)
    lcb = cb[db]
    da = _deg(a, k)
    if da < db:
        return a
    e = da - db + 1
    r = a
    while r:
        dr = _deg(r, k)
        if dr < db:
            break
        lcr = coeffs_in(r, k)[dr]
        unit = [0] * len(next(iter(a)))
        unit[k] = dr - db
        r = sub(mul(r, lcb), mul(shift(b, tuple(unit)), lcr))
        e -= 1
    if e and r:
        for _ in range(e):
            r = mul(r, lcb)
    return r
