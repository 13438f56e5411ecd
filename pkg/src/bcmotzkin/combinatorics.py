"""Generalized Catalan and bc-Motzkin numbers.

C_{g,v}(mu) counts arrowed cell graphs of genus g with v vertices of degrees
mu.  The bc-Motzkin numbers decorate them with b/c colourings; they are
computed both from the binomial-transform definition and from their own
recursion, and the two must agree as polynomials in (b, c).

Conventions (applied identically to mu and to n): the value is 0 if g < 0,
if some entry is negative, or if some entry is 0 unless the key is
(g, v) = (0, 1) with entry 0, whose value is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator

from .errors import PreconditionError


def binomial(n: int, k: int) -> int:
    """C(n, k), with C(n, k) = 0 for k < 0, k > n >= 0, and for n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def catalan(k: int) -> int:
    if k < 0:
        raise PreconditionError("catalan(k) needs k >= 0")
    return comb(2 * k, k) // (k + 1)


def motzkin(n: int) -> int:
    """Ordinary Motzkin number, by direct summation over Catalan numbers."""
    return sum(comb(n, 2 * k) * catalan(k) for k in range(n // 2 + 1))


@dataclass(frozen=True, order=True)
class ProfileKey:
    g: int
    v: int
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.v != len(self.degrees):
            raise PreconditionError(f"v = {self.v} but {len(self.degrees)} degrees given")

    @classmethod
    def of(cls, g: int, degrees) -> ProfileKey:
        degrees = tuple(degrees)
        return cls(g, len(degrees), degrees)

    def canonical(self) -> ProfileKey:
        return ProfileKey(self.g, self.v, tuple(sorted(self.degrees, reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.degrees)


def _splits(rest: tuple) -> Iterator[tuple[tuple, tuple]]:
    """All ordered partitions (I, J) of the positions of ``rest``."""
    idx = range(len(rest))
    for r in range(len(rest) + 1):
        for I in combinations(idx, r):
            J = [i for i in idx if i not in I]
            yield tuple(rest[i] for i in I), tuple(rest[i] for i in J)


def _convention(g: int, degs: tuple):
    """Value fixed by convention, or None if the recursion must run."""
    if g < 0 or any(d < 0 for d in degs):
        return 0
    if any(d == 0 for d in degs):
        return 1 if (g == 0 and degs == (0,)) else 0
    return None


# ---------------------------------------------------------------------------
# Catalan side


class CatalanTable:
    """Memo of C_{g,v}(mu) keyed by (g, sorted degrees)."""

    def __init__(self):
        self.memo: dict[tuple, int] = {}

    def __len__(self):
        return len(self.memo)

    def value(self, g: int, degs) -> int:
        degs = tuple(degs)
        fixed = _convention(g, degs)
        if fixed is not None:
            return fixed
        key = (g, tuple(sorted(degs, reverse=True)))
        hit = self.memo.get(key)
        if hit is None:
            hit = self.expand(g, key[1], 0)
            self.memo[key] = hit
        return hit

    def expand(self, g: int, degs: tuple, slot: int) -> int:
        """One step of the recursion expanding on position ``slot``."""
        fixed = _convention(g, degs)
        if fixed is not None:
            return fixed
        m1 = degs[slot]
        rest = degs[:slot] + degs[slot + 1:]
        C = self.value
        total = 0
        for j, mj in enumerate(rest):
            total += mj * C(g, (m1 + mj - 2,) + rest[:j] + rest[j + 1:])
        for a in range(m1 - 1):
            b = m1 - 2 - a
            total += C(g - 1, (a, b) + rest)
            for g1 in range(g + 1):
                for I, J in _splits(rest):
                    left = C(g1, (a,) + I)
                    if left:
                        total += left * C(g - g1, (b,) + J)
        return total

    def records(self) -> list[dict]:
        rows = [
            {"g": g, "v": len(d), "n": list(d), "value": str(val)}
            for (g, d), val in self.memo.items()
        ]
        rows.sort(key=lambda r: (r["g"], r["v"], r["n"]))
        return rows

    @classmethod
    def from_records(cls, rows) -> CatalanTable:
        t = cls()
        for r in rows:
            t.memo[(r["g"], tuple(sorted(r["n"], reverse=True)))] = int(r["value"])
        return t


_DEFAULT_CATALAN = CatalanTable()


def catalan_generalized(key: ProfileKey, table: CatalanTable | None = None) -> int:
    """C_{g,v}(mu) by the edge-contraction recursion, memoized in ``table``."""
    table = _DEFAULT_CATALAN if table is None else table
    return table.value(key.g, key.degrees)


# ---------------------------------------------------------------------------
# bc polynomials


class BCPolynomial:
    """Integer polynomial in the formal variables b and c.

    >>> b, c = BCPolynomial.b(), BCPolynomial.c()
    >>> (b + c) * (b + c)
    b^2 + 2*b*c + c^2
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {tuple(e): int(v) for e, v in (terms or {}).items() if v}

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def b(cls):
        return cls({(1, 0): 1})

    @classmethod
    def c(cls):
        return cls({(0, 1): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, BCPolynomial):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, v in other.terms.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = s
            else:
                out.pop(e)
        return BCPolynomial._raw(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out: dict = {}
        for (a1, c1), v1 in self.terms.items():
            for (a2, c2), v2 in other.terms.items():
                e = (a1 + a2, c1 + c2)
                out[e] = out.get(e, 0) + v1 * v2
        return BCPolynomial._raw({e: v for e, v in out.items() if v})

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def scale(self, k: int) -> BCPolynomial:
        if not k:
            return BCPolynomial()
        return BCPolynomial._raw({e: v * k for e, v in self.terms.items()})

    def shift(self, db: int, dc: int) -> BCPolynomial:
        """Multiply by b^db c^dc."""
        return BCPolynomial._raw({(a + db, c + dc): v for (a, c), v in self.terms.items()})

    def specialize(self, b, c) -> Fraction:
        b, c = Fraction(b), Fraction(c)
        return sum((v * b ** eb * c ** ec for (eb, ec), v in self.terms.items()), Fraction(0))

    def to_json(self) -> list[dict]:
        return [{"eb": eb, "ec": ec, "coef": str(v)} for (eb, ec), v in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> BCPolynomial:
        return cls({(d["eb"], d["ec"]): int(d["coef"]) for d in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (eb, ec), v in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                s for s in (
                    "" if not eb else ("b" if eb == 1 else f"b^{eb}"),
                    "" if not ec else ("c" if ec == 1 else f"c^{ec}"),
                ) if s
            )
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


# ---------------------------------------------------------------------------
# Motzkin side


def motzkin_bc_direct(key: ProfileKey, table: CatalanTable | None = None) -> BCPolynomial:
    """Binomial transform: sum over mu <= n of prod C(n_i, mu_i) C_{g,v}(mu) b^.. c^.."""
    table = _DEFAULT_CATALAN if table is None else table
    n = key.degrees
    fixed = _convention(key.g, n)
    if fixed == 0:
        return BCPolynomial()
    N = sum(n)
    out: dict = {}

    def walk(i: int, mu: tuple, weight: int):
        if i == len(n):
            val = table.value(key.g, mu)
            if val:
                s = sum(mu)
                out[(N - s, s)] = out.get((N - s, s), 0) + weight * val
            return
        for m in range(n[i] + 1):
            walk(i + 1, mu + (m,), weight * comb(n[i], m))

    walk(0, (), 1)
    return BCPolynomial(out)


class MotzkinTable:
    """Memo of M_{g,v}(n; b, c) as BCPolynomials, filled by the recursion."""

    def __init__(self):
        self.memo: dict[tuple, BCPolynomial] = {}

    def __len__(self):
        return len(self.memo)

    def value(self, g: int, degs) -> BCPolynomial:
        degs = tuple(degs)
        fixed = _convention(g, degs)
        if fixed is not None:
            return BCPolynomial.one() if fixed else BCPolynomial()
        key = (g, tuple(sorted(degs, reverse=True)))
        hit = self.memo.get(key)
        if hit is None:
            hit = self.expand(g, key[1], 0)
            self.memo[key] = hit
        return hit

    def expand(self, g: int, degs: tuple, slot: int) -> BCPolynomial:
        """M(n) = b M(n_1 - 1, ...) + c^2 {edge + loop + split terms}."""
        fixed = _convention(g, degs)
        if fixed is not None:
            return BCPolynomial.one() if fixed else BCPolynomial()
        M = self.value
        n1 = degs[slot]
        rest = degs[:slot] + degs[slot + 1:]
        head = M(g, (n1 - 1,) + rest).shift(1, 0)
        acc = BCPolynomial()
        for j, nj in enumerate(rest):
            acc = acc + M(g, (n1 + nj - 2,) + rest[:j] + rest[j + 1:]).scale(nj)
        for z in range(n1 - 1):
            x = n1 - 2 - z
            acc = acc + M(g - 1, (z, x) + rest)
            for g1 in range(g + 1):
                for I, J in _splits(rest):
                    left = M(g1, (z,) + I)
                    if left:
                        acc = acc + left * M(g - g1, (x,) + J)
        return head + acc.shift(0, 2)

    def records(self) -> list[dict]:
        rows = [
            {"g": g, "v": len(d), "n": list(d), "value": val.to_json()}
            for (g, d), val in self.memo.items()
        ]
        rows.sort(key=lambda r: (r["g"], r["v"], r["n"]))
        return rows

    @classmethod
    def from_records(cls, rows) -> MotzkinTable:
        t = cls()
        for r in rows:
            t.memo[(r["g"], tuple(sorted(r["n"], reverse=True)))] = BCPolynomial.from_json(r["value"])
        return t


_DEFAULT_MOTZKIN = MotzkinTable()


def motzkin_bc_recursive(key: ProfileKey, table: MotzkinTable | None = None) -> BCPolynomial:
    table = _DEFAULT_MOTZKIN if table is None else table
    return table.value(key.g, key.degrees)


# ---------------------------------------------------------------------------
# identity checks


def check_vandermonde_like(n: int, i: int, j: int, variant: bool = False) -> bool:
    """sum_{a+b=n} C(a,i) C(b,j) == C(n+1, i+j+1).

    With ``variant=True`` the arguments are read as (k, alpha, beta) and the
    shifted form sum_{z+x=k} C(z-1, alpha-1) C(x, beta) == C(k, alpha+beta)
    is checked instead; it needs alpha >= 1.
    """
    if variant:
        k, alpha, beta = n, i, j
        if alpha < 1 or beta < 0 or alpha + beta > k:
            raise PreconditionError("variant identity needs alpha >= 1, beta >= 0, alpha + beta <= k")
        lhs = sum(binomial(z - 1, alpha - 1) * binomial(k - z, beta) for z in range(k + 1))
        return lhs == binomial(k, alpha + beta)
    if i < 0 or j < 0 or i + j > n:
        raise PreconditionError("identity needs i, j >= 0 and i + j <= n")
    lhs = sum(binomial(a, i) * binomial(n - a, j) for a in range(n + 1))
    return lhs == binomial(n + 1, i + j + 1)


def check_motzkin_01_recursion(n: int, b=None, c=None, table: CatalanTable | None = None) -> bool:
    """M(n) - b M(n-1) == c^2 sum_{a+b'=n-2} M(a) M(b') for the (0,1) numbers.

    Polynomial mode when b and c are omitted, otherwise at the given values.
    """
    if n < 1:
        raise PreconditionError("n >= 1 required")
    M = [motzkin_bc_direct(ProfileKey.of(0, (k,)), table) for k in range(n + 1)]
    rhs = BCPolynomial()
    for a in range(n - 1):
        rhs = rhs + M[a] * M[n - 2 - a]
    rhs = rhs.shift(0, 2)
    lhs = M[n] - M[n - 1].shift(1, 0)
    if b is None and c is None:
        return lhs == rhs
    return lhs.specialize(b, c) == rhs.specialize(b, c)


def profiles(max_g: int, max_v: int, max_total: int, min_entry: int = 0) -> Iterator[ProfileKey]:
    """Canonical keys (degrees non-increasing) with sum(degrees) <= max_total."""

    def parts(v: int, budget: int, cap: int):
        if v == 0:
            yield ()
            return
        for d in range(min(cap, budget), min_entry - 1, -1):
            for tail in parts(v - 1, budget - d, d):
                yield (d,) + tail

    for g in range(max_g + 1):
        for v in range(1, max_v + 1):
            for degs in parts(v, max_total, max_total):
                yield ProfileKey(g, v, degs)
