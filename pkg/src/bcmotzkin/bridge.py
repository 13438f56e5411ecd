"""Laplace bridge: expand F_{g,v}(t(x)) at x = infinity and read off M/(n_1...n_v).

With u = 1/x the change of variables x = b + 2c (t^2 + 1)/(t^2 - 1) is
inverted on the branch t -> -1 as u -> 0:

    t(u) = -sqrt((1 + (2c - b) u) / (1 - (2c + b) u)).

On that branch dF_{0,1}/dx = -(t + 1)/(c (t - 1)) tends to 0 like -1/x, as
the series -sum M_{0,1}(n) u^(n+1) requires; the other branch diverges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import CatalanTable, ProfileKey, motzkin_bc_direct
from .errors import PreconditionError
from .polyalg import LaurentPoly, TruncSeries


@dataclass(frozen=True)
class BridgeConfig:
    b: Fraction
    c: Fraction
    max_total: int = 10
    keys: tuple = ((1, 1), (0, 3), (1, 2), (0, 4))
    order: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c == 0:
            raise PreconditionError("c must be nonzero")
        if self.b < 0 or self.c < 0:
            raise PreconditionError("the bridge is sampled at b >= 0, c > 0")
        if self.order < 0:
            object.__setattr__(self, "order", self.max_total + 2)
        if self.order < self.max_total + 2:
            raise PreconditionError("truncation order must be at least max_total + 2")


def t_series_of_x(cfg: BridgeConfig) -> TruncSeries:
    N, b, c = cfg.order, cfg.b, cfg.c
    num = TruncSeries([1, 2 * c - b], N)
    den = TruncSeries([1, -(2 * c + b)], N)
    return -(num / den).sqrt()


def roundtrip_check(cfg: BridgeConfig) -> bool:
    """u * x(t(u)) == 1 up to the available order."""
    T = t_series_of_x(cfg)
    T2 = T * T
    N = cfg.order
    # (T^2 - 1)/u, whose constant term is 4c
    q = TruncSeries([(T2 - 1)[k + 1] for k in range(N)], N - 1)
    ux = TruncSeries([0, cfg.b], N - 1) + (T2.truncate(N - 1) + 1) * q.invert() * (2 * cfg.c)
    return ux == TruncSeries([1], N - 1)


def expand_F_in_x(F: LaurentPoly, cfg: BridgeConfig) -> dict[tuple, Fraction]:
    """Coefficients of u_1^n_1 ... u_v^n_v in F(t(u_1), ..., t(u_v)), sum n <= max_total.

    One variable at a time: each monomial power t_i^e is replaced by the
    precomputed series of t(u)^e.
    """
    N = cfg.max_total
    T = t_series_of_x(cfg).truncate(N)
    lo = min(min(e) for e in F.terms)
    hi = max(max(e) for e in F.terms)
    powers = {}
    pos = TruncSeries([1], N)
    for e in range(0, hi + 1):
        powers[e] = pos
        pos = pos * T
    inv = T.invert()
    neg = inv
    for e in range(-1, lo - 1, -1):
        powers[e] = neg
        neg = neg * inv

    state: dict[tuple, Fraction] = {tuple(e): Fraction(c) for e, c in F.terms.items()}
    v = F.nvars
    for i in range(v):
        nxt: dict[tuple, Fraction] = {}
        for key, coef in state.items():
            used = sum(key[:i])
            series = powers[key[i]].coeffs
            head, tail = key[:i], key[i + 1:]
            for k in range(N - used + 1):
                s = series[k]
                if s:
                    nk = head + (k,) + tail
                    nxt[nk] = nxt.get(nk, 0) + coef * s
        state = {k: c for k, c in nxt.items() if c}
    return state


def bridge_mismatches(g: int, v: int, F: LaurentPoly, cfg: BridgeConfig,
                      table: CatalanTable | None = None) -> tuple[int, list[str]]:
    """Compare every coefficient with sum n <= max_total; returns (checked, failures)."""
    got = expand_F_in_x(F, cfg)
    bad = []
    checked = 0

    def vectors(k, budget):
        if k == 0:
            yield ()
            return
        for n in range(budget + 1):
            for rest in vectors(k - 1, budget - n):
                yield (n,) + rest

    for n in vectors(v, cfg.max_total):
        actual = got.get(n, Fraction(0))
        if all(n):
            prod = 1
            for x in n:
                prod *= x
            expected = motzkin_bc_direct(ProfileKey.of(g, n), table).specialize(cfg.b, cfg.c) / prod
        else:
            expected = Fraction(0)
        checked += 1
        if actual != expected:
            bad.append(f"({g},{v}) n={n}: expected {expected}, got {actual}")
    # nothing may appear outside the checked box either
    for n, val in got.items():
        if sum(n) > cfg.max_total and val:
            bad.append(f"({g},{v}) n={n}: coefficient beyond truncation")
    return checked, bad


# ---------------------------------------------------------------------------
# unstable data


class _Bi:
    """Bivariate series truncated at total degree N; coefficients in a dict."""

    def __init__(self, terms: dict, N: int):
        self.N = N
        self.terms = {k: v for k, v in terms.items() if v and k[0] + k[1] <= N}

    @classmethod
    def from_series(cls, s: TruncSeries, slot: int, N: int) -> _Bi:
        return cls({((k, 0) if slot == 0 else (0, k)): s[k] for k in range(min(N, s.order) + 1)}, N)

    def __add__(self, o):
        if not isinstance(o, _Bi):
            o = _Bi({(0, 0): Fraction(o)}, self.N)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return _Bi(out, self.N)

    def __mul__(self, o):
        if not isinstance(o, _Bi):
            return _Bi({k: v * o for k, v in self.terms.items()}, self.N)
        out: dict = {}
        for (a, b), x in self.terms.items():
            for (c, d), y in o.terms.items():
                if a + b + c + d <= self.N:
                    out[(a + c, b + d)] = out.get((a + c, b + d), 0) + x * y
        return _Bi(out, self.N)

    def invert(self) -> _Bi:
        c0 = self.terms.get((0, 0), 0)
        if not c0:
            raise PreconditionError("inverse needs a nonzero constant term")
        # 1/(c0 (1 + r)) = (1/c0) sum (-r)^k ; r has no constant term
        r = _Bi({k: v / c0 for k, v in self.terms.items() if k != (0, 0)}, self.N) * -1
        out = _Bi({(0, 0): Fraction(1)}, self.N)
        p = _Bi({(0, 0): Fraction(1)}, self.N)
        for _ in range(self.N):
            p = p * r
            out = out + p
        return out * (1 / c0)


def unstable_01_series(cfg: BridgeConfig) -> TruncSeries:
    """dF_{0,1}/dx = -(t + 1)/(c (t - 1)) along t = t(u)."""
    T = t_series_of_x(cfg)
    return -(T + 1) / (T - 1) / cfg.c


def check_unstable_bridge(cfg: BridgeConfig, table: CatalanTable | None = None) -> list[str]:
    """Failures of the (0,1) and (0,2) series identities up to order max_total."""
    N = cfg.max_total
    bad = []
    s = unstable_01_series(cfg)
    for k in range(N + 1):
        expected = Fraction(0) if k == 0 else -motzkin_bc_direct(ProfileKey.of(0, (k - 1,)), table).specialize(cfg.b, cfg.c)
        if s[k] != expected:
            bad.append(f"(0,1) u^{k}: expected {expected}, got {s[k]}")

    # dF_{0,2}/dx_1 = dF_{0,2}/dt_1 * (t_1^2 - 1)^2 / (-8 c t_1)
    #              = (t_2 + 1)(t_1 + 1)^2 (t_1 - 1) / (-8 c t_1 (t_1 + t_2))
    T = t_series_of_x(cfg)
    T1, T2 = _Bi.from_series(T, 0, N), _Bi.from_series(T, 1, N)
    num = (T2 + 1) * (T1 + 1) * (T1 + 1) * (T1 + (-1))
    den = T1 * (T1 + T2) * (-8 * cfg.c)
    series = num * den.invert()
    for i in range(N + 1):
        for j in range(N + 1 - i):
            got = series.terms.get((i, j), Fraction(0))
            if i >= 2 and j >= 1:
                expected = -motzkin_bc_direct(ProfileKey.of(0, (i - 1, j)), table).specialize(cfg.b, cfg.c) / j
            else:
                expected = Fraction(0)
            if got != expected:
                bad.append(f"(0,2) u1^{i} u2^{j}: expected {expected}, got {got}")
    return bad
