"""Eynard-Orantin densities w_{g,v}, by differentiation and by residues.

A form W_{g,v} is stored through its density w with W = w dt_1 ... dt_v.
Pulling a form back along t -> -t flips the sign of its dt, so a factor
W(-t, ...) contributes -w(-t, ...) to the bracket density.  The contour
integral is minus the sum of residues at t = +-t_1 (every term) and at
t = +-t_j (terms carrying W_{0,2}(+-t, t_j)).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cache import DiskCache
from .errors import MissingDependencyError, PoleError, PreconditionError
from .laplace import FreeEnergyStore, diff_recursion_terms, is_stable, stable_keys, tvars
from .polyalg import LaurentPoly, RationalFn, residue
from .polyalg.rational import laurent_sum

T = "t"


@dataclass(frozen=True)
class EOForm:
    g: int
    v: int
    density: LaurentPoly

    def is_even(self) -> bool:
        return self.density.embed(self.density.vars, ["-" + x for x in self.density.vars]) == self.density

    def is_symmetric(self) -> bool:
        d = self.density
        return all(d.swap(d.vars[i], d.vars[i + 1]) == d for i in range(d.nvars - 1))

    def to_json(self) -> dict:
        return {"g": self.g, "v": self.v, "density": self.density.to_json()}


def w_from_F(g: int, v: int, F: LaurentPoly) -> EOForm:
    """Density d_{t1} ... d_{tv} F_{g,v}."""
    d = F
    for x in F.vars:
        d = d.partial(x)
    return EOForm(g, v, d)


def w02(a: str, b: str, vars) -> RationalFn:
    """Density 1/(a - b)^2 of W_{0,2}; ``a``, ``b`` are (optionally negated) variable names."""
    if a == b:
        raise PoleError("W_{0,2} on the diagonal")
    gens = dict(zip(vars, RationalFn.gens(vars)))

    def val(s):
        return -gens[s[1:]] if s.startswith("-") else gens[s]

    return (val(a) - val(b)) ** -2


class EOStore:
    """Residue-route densities, keyed by (g, v); insertions are idempotent."""

    kind = "W"

    def __init__(self, cache: DiskCache | None = None):
        self.forms: dict[tuple[int, int], EOForm] = {}
        self.cache = cache
        self._lock = threading.RLock()

    def _load_or_compute(self, g: int, v: int) -> EOForm:
        if self.cache is not None:
            data = self.cache.load(self.kind, g, v)
            if data is not None:
                return EOForm(g, v, LaurentPoly.from_json(data["density"]))
        form = tr_step(g, v, self)
        if self.cache is not None:
            self.cache.save(self.kind, g, v, form.to_json())
        return form

    def require(self, g: int, v: int) -> EOForm:
        try:
            return self.forms[(g, v)]
        except KeyError:
            raise MissingDependencyError(f"W_{{{g},{v}}} is not in the store") from None

    def get(self, g: int, v: int) -> EOForm:
        if not is_stable(g, v):
            raise PreconditionError(f"(g, v) = ({g}, {v}) is not stable")
        for key in stable_keys(2 * g - 2 + v):
            if key not in self.forms:
                form = self._load_or_compute(*key)
                with self._lock:
                    self.forms.setdefault(key, form)
        return self.forms[(g, v)]


def _density(store: EOStore, g: int, v: int, U, images) -> RationalFn:
    """w_{g,v} at the given argument images, inside the variable tuple U."""
    if (g, v) == (0, 2):
        return w02(images[0], images[1], U)
    return RationalFn(store.require(g, v).density.embed(U, images))


def tr_bracket_terms(g: int, v: int, store: EOStore) -> dict[str, list[tuple[RationalFn, list[str]]]]:
    """Bracket densities by label, each with the poles (besides +-t1) it carries.

    Each W evaluated at -t carries a sign -1 from d(-t).
    """
    U = (T,) + tvars(v)
    out: dict[str, list] = {"I": [], "III": [], "IV": []}
    if v >= 2:
        for j in range(2, v + 1):
            tj = f"t{j}"
            others = [f"t{k}" for k in range(2, v + 1) if k != j]
            if (g, v) == (0, 3) and j == 3:
                # the (0,2)x(0,2) pairs of j = 3 repeat those of j = 2
                continue
            a = w02(T, tj, U) * _density(store, g, v - 1, U, ["-" + T] + others)
            b = w02("-" + T, tj, U) * _density(store, g, v - 1, U, [T] + others)
            poles = [tj, "-" + tj]
            if (g, v) == (0, 3):
                poles += [x for k in others for x in (k, "-" + k)]
            out["I"].append((-(a + b), poles))
    if g >= 1:
        rest = list(tvars(v)[1:])
        out["III"].append((-_density(store, g - 1, v + 1, U, [T, "-" + T] + rest), []))
    rest = list(range(2, v + 1))
    for g1 in range(g + 1):
        g2 = g - g1
        for r in range(len(rest) + 1):
            for I in combinations(rest, r):
                J = [k for k in rest if k not in I]
                if 2 * g1 + len(I) - 1 <= 0 or 2 * g2 + len(J) - 1 <= 0:
                    continue
                left = _density(store, g1, len(I) + 1, U, [T] + [f"t{k}" for k in I])
                right = _density(store, g2, len(J) + 1, U, ["-" + T] + [f"t{k}" for k in J])
                out["IV"].append((-(left * right), []))
    return out


def kernel(v: int) -> RationalFn:
    U = (T,) + tvars(v)
    gens = RationalFn.gens(U)
    t, t1 = gens[0], gens[1]
    return Fraction(-1, 64) * (1 / (t + t1) + 1 / (t - t1)) * (t ** 2 - 1) ** 3 / t ** 2


def _minus_residues(f: RationalFn, centers) -> list[RationalFn]:
    return [-residue(f, T, c, depth=2) for c in ["t1", "-t1"] + list(centers)]


def tr_residues(g: int, v: int, store: EOStore) -> dict[str, list[RationalFn]]:
    """Minus the residues of kernel x bracket, grouped by bracket label.

    The residues are free of t; each is returned in t1..tv.
    """
    K = kernel(v)
    V = tvars(v)
    res = {}
    for label, items in tr_bracket_terms(g, v, store).items():
        parts = []
        for bracket, centers in items:
            parts.extend(r.embed(V, ["t1"] + list(V)) for r in _minus_residues(K * bracket, centers))
        res[label] = parts
    return res


def tr_terms(g: int, v: int, store: EOStore) -> dict[str, LaurentPoly]:
    """Residue evaluation of each labelled bracket term, as Laurent densities."""
    zero = LaurentPoly(tvars(v))
    return {label: laurent_sum(parts) if parts else zero
            for label, parts in tr_residues(g, v, store).items()}


def tr_step(g: int, v: int, store: EOStore) -> EOForm:
    """W_{g,v} from the residue recursion; asserts the result is Laurent."""
    if not is_stable(g, v):
        raise PreconditionError(f"(g, v) = ({g}, {v}) is not stable")
    parts = [r for rs in tr_residues(g, v, store).values() for r in rs]
    return EOForm(g, v, laurent_sum(parts))


def compare_eo(g: int, v: int, fstore: FreeEnergyStore, estore: EOStore) -> bool:
    return estore.get(g, v).density == w_from_F(g, v, fstore.get(g, v)).density


def diff_terms_differentiated(g: int, v: int, fstore: FreeEnergyStore) -> dict[str, RationalFn]:
    """d_{t2} ... d_{tv} of each differential-recursion term (II drops out)."""
    fstore.get(g, v)
    out = {}
    for label, term in diff_recursion_terms(g, v, fstore).items():
        for x in tvars(v)[1:]:
            term = term.partial(x)
        out[label] = term
    return out
