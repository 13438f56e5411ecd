"""Brute-force count of arrowed cell graphs in the permutation model.

Half-edges 0..H-1 are grouped into vertex cycles of sigma (vertex i owns a
consecutive block of mu_i half-edges, listed counterclockwise from its
arrowed half-edge).  Each fixed-point-free involution alpha is a gluing;
faces are the cycles of phi = sigma o alpha (apply alpha, then sigma).
Since sigma is pinned by the arrows, no automorphism quotient is needed.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator

from .errors import OracleCapError

DEFAULT_CAP = 10


def _sigma(mu) -> list[int]:
    sigma = []
    start = 0
    for m in mu:
        sigma.extend(start + (i + 1) % m for i in range(m))
        start += m
    return sigma


def _matchings(h: int) -> Iterator[list[int]]:
    alpha = [-1] * h

    def rec():
        try:
            i = alpha.index(-1)
        except ValueError:
            yield alpha
            return
        for j in range(i + 1, h):
            if alpha[j] == -1:
                alpha[i], alpha[j] = j, i
                yield from rec()
                alpha[i] = alpha[j] = -1

    yield from rec()


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def genus_distribution(mu, cap: int = DEFAULT_CAP) -> Counter:
    """Map genus -> number of connected gluings with vertex degrees ``mu``."""
    mu = tuple(mu)
    h = sum(mu)
    if h > cap:
        raise OracleCapError(f"sum(mu) = {h} exceeds the brute-force cap {cap}")
    v = len(mu)
    if h == 0:
        return Counter({0: 1}) if v == 1 else Counter()
    if h % 2 or any(m == 0 for m in mu):
        return Counter()
    sigma = _sigma(mu)
    owner = [i for i, m in enumerate(mu) for _ in range(m)]
    e = h // 2
    out: Counter = Counter()
    for alpha in _matchings(h):
        parent = list(range(v))
        comps = v
        for x in range(h):
            y = alpha[x]
            if x < y:
                rx, ry = _find(parent, owner[x]), _find(parent, owner[y])
                if rx != ry:
                    parent[rx] = ry
                    comps -= 1
        if comps != 1:
            continue
        seen = [False] * h
        faces = 0
        for x in range(h):
            if not seen[x]:
                faces += 1
                y = x
                while not seen[y]:
                    seen[y] = True
                    y = sigma[alpha[y]]
        chi = v - e + faces
        out[(2 - chi) // 2] += 1
    return out


def enumerate_cell_graphs(g: int, mu, cap: int = DEFAULT_CAP) -> int:
    """Number of arrowed cell graphs of genus ``g`` with vertex degrees ``mu``."""
    return genus_distribution(mu, cap).get(g, 0)
