"""Verification suites: each returns a list of named pass/fail checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import reference
from .bridge import BridgeConfig, bridge_mismatches, check_unstable_bridge, roundtrip_check
from .cache import DiskCache
from .combinatorics import (
    CatalanTable,
    MotzkinTable,
    ProfileKey,
    catalan,
    check_motzkin_01_recursion,
    check_vandermonde_like,
    motzkin_bc_direct,
    profiles,
)
from .eo import EOStore, diff_terms_differentiated, tr_terms, w_from_F
from .errors import BCMotzkinError
from .laplace import (
    UNSTABLE,
    FreeEnergyStore,
    degree_check,
    diff_recursion_rhs,
    euler_char_check,
    intersection_numbers_from_F,
    inversion_check,
    stable_keys,
    string_equation_residuals,
    symmetry_check,
    vanishing_check,
)
from .map_oracle import enumerate_cell_graphs, genus_distribution
from .polyalg import RationalFn

SUITES = ("catalan-oracle", "motzkin", "identities", "laplace", "eo", "bridge")
BRIDGE_SAMPLES = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(1)),
                  (Fraction(2), Fraction(3)), (Fraction(1, 2), Fraction(1)))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail", "detail": self.detail}


@dataclass
class Context:
    cache: DiskCache | None = None
    max_level: int = 4
    eo_level: int = 3
    bridge_samples: tuple = BRIDGE_SAMPLES
    bridge_total: int = 10
    catalan: CatalanTable = field(default_factory=CatalanTable)
    motzkin: MotzkinTable = field(default_factory=MotzkinTable)
    _fstore: FreeEnergyStore | None = None
    _estore: EOStore | None = None

    @property
    def fstore(self) -> FreeEnergyStore:
        if self._fstore is None:
            self._fstore = FreeEnergyStore(self.cache)
        return self._fstore

    @property
    def estore(self) -> EOStore:
        if self._estore is None:
            self._estore = EOStore(self.cache)
        return self._estore


def _guard(name: str, fn) -> Check:
    """Run ``fn`` -> (passed, detail); library errors become failures naming the check."""
    try:
        ok, detail = fn()
    except BCMotzkinError as exc:
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, bool(ok), detail)


def suite_catalan_oracle(ctx: Context) -> list[Check]:
    keys = list(profiles(2, 2, 8)) + [k for k in profiles(2, 3, 6) if k.v == 3]
    out = []
    for k in keys:
        def run(k=k):
            a = enumerate_cell_graphs(k.g, k.degrees)
            b = ctx.catalan.value(k.g, k.degrees)
            return a == b, f"oracle {a}, recursion {b}"
        out.append(_guard(f"oracle g={k.g} mu={list(k.degrees)}", run))
    for m in range(1, 6):
        def run(m=m):
            total = sum(genus_distribution([2 * m]).values())
            expect = 1
            for j in range(2 * m - 1, 0, -2):
                expect *= j
            return total == expect, f"{total} gluings, (2m-1)!! = {expect}"
        out.append(_guard(f"all gluings of one {2 * m}-valent vertex", run))
    return out


def suite_motzkin(ctx: Context) -> list[Check]:
    out = []
    out.append(_guard("Catalan sequence", lambda: (
        [catalan(k) for k in range(9)] == reference.CATALAN_SEQUENCE
        and [ctx.catalan.value(0, (2 * k,)) for k in range(9)] == reference.CATALAN_SEQUENCE,
        str(reference.CATALAN_SEQUENCE))))

    def motz():
        got = [motzkin_bc_direct(ProfileKey.of(0, (n,)), ctx.catalan).specialize(1, 1) for n in range(9)]
        rec = [ctx.motzkin.value(0, (n,)).specialize(1, 1) for n in range(9)]
        return got == reference.MOTZKIN_SEQUENCE and rec == got, ",".join(str(x) for x in got)
    out.append(_guard("Motzkin sequence at b=c=1", motz))

    groups: dict = {}
    for k in profiles(2, 3, 12):
        groups.setdefault((k.g, k.v), []).append(k)
    for (g, v), keys in sorted(groups.items()):
        def route(keys=keys):
            bad = [k.degrees for k in keys
                   if motzkin_bc_direct(k, ctx.catalan) != ctx.motzkin.value(k.g, k.degrees)]
            return not bad, f"{len(keys)} keys" + (f", mismatches {bad[:5]}" if bad else "")
        out.append(_guard(f"route equivalence g={g} v={v} total<=12", route))

        def reduce(keys=keys):
            bad = [k.degrees for k in keys
                   if motzkin_bc_direct(k, ctx.catalan).specialize(0, 1) != ctx.catalan.value(k.g, k.degrees)]
            return not bad, f"{len(keys)} keys" + (f", mismatches {bad[:5]}" if bad else "")
        out.append(_guard(f"Catalan reduction g={g} v={v} total<=12", reduce))

        def weights(keys=keys):
            bad = []
            for k in keys:
                for (eb, ec) in motzkin_bc_direct(k, ctx.catalan).terms:
                    if eb + ec != k.total or ec % 2:
                        bad.append(k.degrees)
                        break
            return not bad, f"{len(keys)} keys" + (f", bad {bad[:5]}" if bad else "")
        out.append(_guard(f"weight structure g={g} v={v}", weights))

    out.append(_guard("(0,1) recursion, polynomial mode, n<=20", lambda: (
        all(check_motzkin_01_recursion(n, table=ctx.catalan) for n in range(1, 21)), "n = 1..20")))
    for n, b, c in ((1, 1, 1), (2, 1, 1), (4, 2, 3)):
        out.append(_guard(f"(0,1) recursion n={n} b={b} c={c}", lambda n=n, b=b, c=c: (
            check_motzkin_01_recursion(n, b, c, ctx.catalan), "")))
    return out


def suite_identities(ctx: Context) -> list[Check]:
    out = []
    for n in range(31):
        def run(n=n):
            cases = [(i, j) for i in range(n + 1) for j in range(n + 1 - i)]
            bad = [c for c in cases if not check_vandermonde_like(n, *c)]
            return not bad, f"{len(cases)} (i,j) pairs" + (f", failures {bad[:5]}" if bad else "")
        out.append(_guard(f"sum C(a,i)C(b,j) = C(n+1,i+j+1), n={n}", run))
    for k in range(1, 31):
        def run(k=k):
            cases = [(a, b) for a in range(1, k + 1) for b in range(k + 1 - a)]
            bad = [c for c in cases if not check_vandermonde_like(k, *c, variant=True)]
            return not bad, f"{len(cases)} (alpha,beta) pairs" + (f", failures {bad[:5]}" if bad else "")
        out.append(_guard(f"sum C(z-1,a-1)C(x,b) = C(k,a+b), k={k}", run))
    return out


def suite_laplace(ctx: Context) -> list[Check]:
    fs = ctx.fstore
    out = []
    out.append(_guard("F11 closed form", lambda: (fs.get(1, 1) == reference.F11(), repr(fs.get(1, 1)))))
    out.append(_guard("F03 closed form", lambda: (fs.get(0, 3) == reference.F03(), repr(fs.get(0, 3)))))
    out.append(_guard("d2F02 on the diagonal is 1/(4t^2)", lambda: (
        UNSTABLE.d2F02_diagonal() == RationalFn.gens(("t1",))[0] ** -2 / 4, repr(UNSTABLE.d2F02_diagonal()))))

    def w02_plus():
        t1, t2 = RationalFn.gens(("t1", "t2"))
        return UNSTABLE.d2F02 == (t1 + t2) ** -2, repr(UNSTABLE.d2F02)
    out.append(_guard("d1 d2 F02 = 1/(t1+t2)^2", w02_plus))

    numbers = {}
    for g, v in stable_keys(ctx.max_level):
        F = fs.get(g, v)
        tag = f"({g},{v})"
        out.append(_guard(f"{tag} degree 3(2g-2+v)", lambda g=g, v=v, F=F: (
            degree_check(g, v, F), f"degree {F.degree()}, low {F.low_degree()}")))
        out.append(_guard(f"{tag} t -> 1/t invariance", lambda F=F: (inversion_check(F), "")))
        out.append(_guard(f"{tag} permutation symmetry", lambda F=F: (symmetry_check(F), "")))
        out.append(_guard(f"{tag} vanishes at t_i = -1", lambda F=F: (vanishing_check(F), "")))
        out.append(_guard(f"{tag} F(1,...,1) = (-1)^v chi(M_g,v)", lambda g=g, v=v, F=F: (
            euler_char_check(g, v, F), f"F(1..1) = {F.evaluate([1] * v)}")))

        def rhs(g=g, v=v, F=F):
            return diff_recursion_rhs(g, v, fs).to_laurent() == F.partial("t1"), ""
        out.append(_guard(f"{tag} recursion RHS equals dF/dt1", rhs))

        def taus(g=g, v=v, F=F):
            numbers[(g, v)] = intersection_numbers_from_F(g, v, F)
            return True, f"{len(numbers[(g, v)])} top-degree terms"
        out.append(_guard(f"{tag} top-degree shape", taus))

    def known():
        bad = []
        for (g, d), val in reference.TAU.items():
            tab = numbers.get((g, len(d)))
            if tab is not None and tab.get(d) != val:
                bad.append(f"<tau{d}>_{g} = {tab.get(d)}, expected {val}")
        return not bad, "; ".join(bad) or "<tau0^3>=1, <tau1>=1/24, <tau4>_2=1/1152"
    out.append(_guard("known intersection numbers", known))

    def string_eq():
        bad = string_equation_residuals(numbers)
        return not bad, "; ".join(bad[:5])
    out.append(_guard("string equation", string_eq))
    return out


def suite_eo(ctx: Context) -> list[Check]:
    fs, es = ctx.fstore, ctx.estore
    out = []
    out.append(_guard("W11 closed form", lambda: (es.get(1, 1).density == reference.W11(), repr(es.get(1, 1).density))))
    out.append(_guard("W03 equals d1d2d3 F03 = (1/16)(1/(t1t2t3)^2 - 1)", lambda: (
        es.get(0, 3).density == reference.W03(), repr(es.get(0, 3).density))))
    for g, v in stable_keys(ctx.eo_level):
        tag = f"({g},{v})"
        out.append(_guard(f"{tag} residue route equals d1..dv F", lambda g=g, v=v: (
            es.get(g, v).density == w_from_F(g, v, fs.get(g, v)).density, "")))
        out.append(_guard(f"{tag} even", lambda g=g, v=v: (es.get(g, v).is_even(), "")))
        out.append(_guard(f"{tag} symmetric", lambda g=g, v=v: (es.get(g, v).is_symmetric(), "")))

        def terms(g=g, v=v):
            es.get(g, v)
            tr = tr_terms(g, v, es)
            df = diff_terms_differentiated(g, v, fs)
            df_I = df["I"] + df["corr"]
            ok = (RationalFn(tr["I"]) == df_I and RationalFn(tr["III"]) == df["III"]
                  and RationalFn(tr["IV"]) == df["IV"] and df["II"].is_zero())
            return ok, "I, III, IV matched; II differentiates to 0" if ok else "term mismatch"
        out.append(_guard(f"{tag} term-by-term residue identities", terms))
    return out


def suite_bridge(ctx: Context) -> list[Check]:
    fs = ctx.fstore
    out = []
    for b, c in ctx.bridge_samples:
        cfg = BridgeConfig(b, c, ctx.bridge_total)
        tag = f"b={b} c={c}"
        out.append(_guard(f"{tag} x(t(u)) = 1/u", lambda cfg=cfg: (roundtrip_check(cfg), f"order {cfg.order}")))
        out.append(_guard(f"{tag} unstable (0,1),(0,2) series", lambda cfg=cfg: (
            lambda bad: (not bad, "; ".join(bad[:3])))(check_unstable_bridge(cfg, ctx.catalan))))
        for g, v in cfg.keys:
            def run(g=g, v=v, cfg=cfg):
                n, bad = bridge_mismatches(g, v, fs.get(g, v), cfg, ctx.catalan)
                return not bad, f"{n} coefficients, sum n <= {cfg.max_total}" + (f"; {bad[:3]}" if bad else "")
            out.append(_guard(f"{tag} ({g},{v}) coefficients = M/(n1..nv)", run))
    return out


RUNNERS = {
    "catalan-oracle": suite_catalan_oracle,
    "motzkin": suite_motzkin,
    "identities": suite_identities,
    "laplace": suite_laplace,
    "eo": suite_eo,
    "bridge": suite_bridge,
}


def run_suite(name: str, ctx: Context) -> list[Check]:
    return RUNNERS[name](ctx)
