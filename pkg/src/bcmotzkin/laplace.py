"""Laplace transforms F_{g,v}(t_1..t_v) from the differential recursion.

After the change of variables x = b + 2c (t^2 + 1)/(t^2 - 1) the transform of
the bc-Motzkin numbers is a Laurent polynomial independent of (b, c).  It is
built level by level (level = 2g - 2 + v): the right-hand side for
dF_{g,v}/dt_1 is assembled from lower levels in rational-function arithmetic,
checked to be Laurent, and integrated from t_1 = -1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .cache import DiskCache
from .errors import MissingDependencyError, PreconditionError, ShapeError
from .polyalg import LaurentPoly, RationalFn


def tvars(v: int) -> tuple:
    return tuple(f"t{i}" for i in range(1, v + 1))


def is_stable(g: int, v: int) -> bool:
    return g >= 0 and v >= 1 and 2 * g - 2 + v > 0


def stable_keys(max_level: int) -> list[tuple[int, int]]:
    """Stable (g, v) with 2g - 2 + v <= max_level, ordered by level then g."""
    out = []
    for level in range(1, max_level + 1):
        for g in range((level + 2) // 2, -1, -1):
            v = level + 2 - 2 * g
            if v >= 1 and is_stable(g, v):
                out.append((g, v))
    return out


@dataclass(frozen=True)
class UnstableData:
    """Derivatives of the unstable transforms, in their closed forms."""

    dF01: RationalFn
    dF02: RationalFn

    @classmethod
    def build(cls) -> UnstableData:
        t, = RationalFn.gens(("t",))
        dF01 = 8 * t / ((t + 1) * (t - 1) ** 3)
        t1, t2 = RationalFn.gens(("t1", "t2"))
        dF02 = (t2 + 1) / ((t1 - 1) * (t1 + t2))
        return cls(dF01, dF02)

    @property
    def d2F02(self) -> RationalFn:
        return self.dF02.partial("t2")

    def d2F02_diagonal(self) -> RationalFn:
        """d^2 F_{0,2}/dt1 dt2 restricted to t1 = t2 = t, expressed in ('t1',)."""
        return self.d2F02.embed(("t1",), ["t1", "t1"])


UNSTABLE = UnstableData.build()


# ---------------------------------------------------------------------------
# storage


class FreeEnergyStore:
    """Map (g, v) -> F_{g,v}, optionally persisted through a DiskCache.

    Insertions are serialized by a lock; stored values are never mutated.
    """

    kind = "F"

    def __init__(self, cache: DiskCache | None = None):
        self.entries: dict[tuple[int, int], LaurentPoly] = {}
        self.cache = cache
        self._lock = threading.RLock()

    def __contains__(self, key):
        return key in self.entries

    def require(self, g: int, v: int) -> LaurentPoly:
        try:
            return self.entries[(g, v)]
        except KeyError:
            raise MissingDependencyError(f"F_{{{g},{v}}} is not in the store") from None

    def put(self, g: int, v: int, value: LaurentPoly) -> None:
        with self._lock:
            if (g, v) not in self.entries:
                self.entries[(g, v)] = value
                if self.cache is not None:
                    self.cache.save(self.kind, g, v, {"g": g, "v": v, "value": value.to_json()})

    def _try_load(self, g: int, v: int) -> bool:
        if self.cache is None:
            return False
        data = self.cache.load(self.kind, g, v)
        if data is None:
            return False
        self.entries[(g, v)] = LaurentPoly.from_json(data["value"])
        return True

    def get(self, g: int, v: int) -> LaurentPoly:
        """F_{g,v}, computing every lower level first if necessary."""
        if not is_stable(g, v):
            raise PreconditionError(f"(g, v) = ({g}, {v}) is not stable")
        if (g, v) in self.entries:
            return self.entries[(g, v)]
        level = 2 * g - 2 + v
        for key in stable_keys(level):
            if key not in self.entries and not self._try_load(*key):
                self.put(*key, compute_F(*key, self))
        return self.entries[(g, v)]


# ---------------------------------------------------------------------------
# the recursion


def _first_derivative(g: int, v: int, store: FreeEnergyStore, unstable: UnstableData):
    """dF_{g,v}/dt1 as a LaurentPoly (stable) or RationalFn (g, v) = (0, 2)."""
    if (g, v) == (0, 2):
        return unstable.dF02
    if not is_stable(g, v):
        raise PreconditionError(f"no first derivative available for ({g}, {v})")
    return store.require(g, v).partial("t1")


def _place(obj, V, images) -> RationalFn:
    emb = obj.embed(V, images)
    return emb if isinstance(emb, RationalFn) else RationalFn(emb)


def diff_recursion_terms(g: int, v: int, store: FreeEnergyStore,
                         unstable: UnstableData = UNSTABLE) -> dict[str, RationalFn]:
    """The right-hand side of dF_{g,v}/dt1, split into its labelled terms.

    ``I``: the j-sum with the 1/(t1^2 - tj^2) kernel; ``II``: the j-sum with
    (t1^2 - 1)^2/t1^2; ``III``: the diagonal second derivative of
    F_{g-1,v+1}; ``IV``: the sum over stable splittings; ``corr``: the
    (0,3)-only correction removing the doubly counted F_{0,2} x F_{0,2} pairs.
    """
    if not is_stable(g, v):
        raise PreconditionError(f"(g, v) = ({g}, {v}) is not stable")
    V = tvars(v)
    gens = RationalFn.gens(V)
    t1 = gens[0]
    zero = RationalFn(0, vars=V)
    P3 = (t1 ** 2 - 1) ** 3 / t1 ** 2
    P2 = (t1 ** 2 - 1) ** 2 / t1 ** 2
    terms = {"I": zero, "II": zero, "III": zero, "IV": zero, "corr": zero}

    if v >= 2:
        D = _first_derivative(g, v - 1, store, unstable)
        T1, T2 = zero, zero
        for j in range(2, v + 1):
            tj = gens[j - 1]
            others = [V[k - 1] for k in range(2, v + 1) if k != j]
            A1 = _place(D, V, [V[0]] + others)
            Aj = _place(D, V, [V[j - 1]] + others)
            Pj3 = (tj ** 2 - 1) ** 3 / tj ** 2
            T1 = T1 + tj * (P3 * A1 - Pj3 * Aj) / (t1 ** 2 - tj ** 2)
            T2 = T2 + P2 * A1
        terms["I"] = T1 * Fraction(-1, 16)
        terms["II"] = T2 * Fraction(-1, 16)

    if g >= 1:
        if (g - 1, v + 1) == (0, 2):
            diag = _place(unstable.d2F02, V, ["t1", "t1"])
        else:
            E = store.require(g - 1, v + 1).partial("t1").partial("t2")
            diag = _place(E, V, ["t1", "t1"] + list(V[1:]))
        terms["III"] = P3 * diag * Fraction(-1, 32)

    rest = list(range(2, v + 1))
    acc = zero
    for g1 in range(g + 1):
        g2 = g - g1
        for r in range(len(rest) + 1):
            for I in combinations(rest, r):
                J = [k for k in rest if k not in I]
                if 2 * g1 + len(I) - 1 <= 0 or 2 * g2 + len(J) - 1 <= 0:
                    continue
                left = _place(_first_derivative(g1, len(I) + 1, store, unstable), V,
                              ["t1"] + [V[k - 1] for k in I])
                right = _place(_first_derivative(g2, len(J) + 1, store, unstable), V,
                               ["t1"] + [V[k - 1] for k in J])
                acc = acc + left * right
    terms["IV"] = P3 * acc * Fraction(-1, 32)

    if (g, v) == (0, 3):
        a = _place(unstable.dF02, V, ["t1", "t2"])
        b = _place(unstable.dF02, V, ["t1", "t3"])
        terms["corr"] = P3 * a * b * Fraction(2, 32)
    return terms


def diff_recursion_rhs(g: int, v: int, store: FreeEnergyStore,
                       unstable: UnstableData = UNSTABLE) -> RationalFn:
    total = None
    for term in diff_recursion_terms(g, v, store, unstable).values():
        total = term if total is None else total + term
    return total


def compute_F(g: int, v: int, store: FreeEnergyStore, unstable: UnstableData = UNSTABLE) -> LaurentPoly:
    """Integrate the right-hand side from t1 = -1 (does not insert into the store)."""
    if not is_stable(g, v):
        raise PreconditionError("compute_F needs 2g - 2 + v > 0")
    rhs = diff_recursion_rhs(g, v, store, unstable).to_laurent()
    return rhs.antiderivative("t1", -1)


# ---------------------------------------------------------------------------
# corollaries


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(Fraction(factorial(m + 1), factorial(k) * factorial(m + 1 - k)) * B[k]
                      for k in range(m)) / (m + 1))
    return B[n]


def zeta_negative_odd(g: int) -> Fraction:
    """zeta(1 - 2g) = -B_{2g} / (2g) for g >= 1."""
    return -bernoulli(2 * g) / (2 * g)


def harer_zagier_chi(g: int, n: int) -> Fraction:
    """Orbifold Euler characteristic of M_{g,n} (stable range)."""
    if not is_stable(g, n):
        raise PreconditionError("chi(M_{g,n}) needs 2g - 2 + n > 0")
    if g == 0:
        return Fraction((-1) ** (n - 3) * factorial(n - 3))
    return Fraction((-1) ** (n - 1) * factorial(2 * g - 3 + n), factorial(2 * g - 2)) * zeta_negative_odd(g)


def euler_char_check(g: int, v: int, F: LaurentPoly) -> bool:
    return F.evaluate([1] * v) == (-1) ** v * harer_zagier_chi(g, v)


def degree_check(g: int, v: int, F: LaurentPoly) -> bool:
    d = 3 * (2 * g - 2 + v)
    return F.degree() == d and F.low_degree() == -d


def inversion_check(F: LaurentPoly) -> bool:
    return F.invert_vars() == F


def symmetry_check(F: LaurentPoly) -> bool:
    """Invariance under the adjacent transpositions, which generate S_v."""
    return all(F.swap(F.vars[i], F.vars[i + 1]) == F for i in range(F.nvars - 1))


def vanishing_check(F: LaurentPoly) -> bool:
    return all(F.substitute(x, -1).is_zero() for x in F.vars)


def _odd_double_factorial(d: int) -> int:
    """|2d - 1|!!"""
    out = 1
    for k in range(2 * d - 1, 0, -2):
        out *= k
    return out


def intersection_numbers_from_F(g: int, v: int, F: LaurentPoly) -> dict[tuple, Fraction]:
    """Read <tau_d1 ... tau_dv>_g off the top-degree part of F_{g,v}.

    F^top = (-1)^v / 2^(2g-2+v) * sum <tau_d> prod |2d_i - 1|!! (t_i/2)^(2d_i + 1)
    """
    level = 2 * g - 2 + v
    top = F.top_part()
    if top.degree() != 3 * level:
        raise ShapeError(f"top degree {top.degree()} != {3 * level}")
    out = {}
    for e, c in top.terms.items():
        if any(x <= 0 or x % 2 == 0 for x in e):
            raise ShapeError(f"top-degree exponent {e} is not all odd and positive")
        d = tuple((x - 1) // 2 for x in e)
        weight = Fraction(1)
        for di in d:
            weight *= Fraction(_odd_double_factorial(di), 2 ** (2 * di + 1))
        out[d] = Fraction(c) * (-1) ** v * 2 ** level / weight
    return out


def string_equation_residuals(numbers: dict[tuple[int, int], dict]) -> list[str]:
    """Failures of <tau_0 tau_d...>_{g,v} = sum_i <... tau_{d_i - 1} ...>_{g,v-1}.

    ``numbers`` maps (g, v) to the output of intersection_numbers_from_F; a
    check is only made when both sides are available.
    """
    bad = []
    for (g, v), tab in numbers.items():
        lower = numbers.get((g, v - 1))
        if lower is None:
            continue
        for d, val in tab.items():
            if d[0] != 0:
                continue
            rest = d[1:]
            expect = Fraction(0)
            for i, di in enumerate(rest):
                if di > 0:
                    dd = rest[:i] + (di - 1,) + rest[i + 1:]
                    expect += lower.get(dd, Fraction(0))
            if val != expect:
                bad.append(f"<tau_{d}>_{g}: {val} != {expect}")
    return bad
