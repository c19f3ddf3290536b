"""Homotopy reduction of type-D structures and canonical forms for isomorphism tests."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable

from .algebra import Alg, mul
from .morphisms import DMorphism
from .structures import Generator, TypeD


def _toggle(table: dict, key, item) -> None:
    s = table[key]
    if item in s:
        s.remove(item)
    else:
        s.add(item)


class _Reducer:
    """Mutable working copy of a type-D structure plus accumulated F, G, H."""

    def __init__(self, d: TypeD):
        self.original = d
        self.idem = dict(d.idem)
        self.order = list(d.names)
        self.out: dict[str, set] = {n: set() for n in self.order}
        self.inn: dict[str, set] = {n: set() for n in self.order}
        for s, a, t in d.arrows:
            self.out[s].add((a, t))
            self.inn[t].add((s, a))
        # F: original -> current, G: current -> original, H: original -> original
        self.F = {n: {(Alg.idem(self.idem[n]), n)} for n in self.order}
        self.G = {n: {(Alg.idem(self.idem[n]), n)} for n in self.order}
        self.H: dict[str, set] = {n: set() for n in self.order}

    def eligible(self) -> list[tuple[str, str]]:
        edges = []
        for x in self.order:
            for a, y in self.out[x]:
                if a.is_idempotent and x != y and self._isolated_pair(x, y):
                    edges.append((x, y))
        return sorted(edges)

    def _isolated_pair(self, x: str, y: str) -> bool:
        between = [(a, t) for g in (x, y) for a, t in self.out[g] if t in (x, y)]
        return len(between) == 1

    def cancel(self, x: str, y: str) -> None:
        unit = Alg.idem(self.idem[x])
        if (unit, y) not in self.out[x]:
            raise ValueError(f"no idempotent arrow {x} -> {y}")
        if not self._isolated_pair(x, y):
            raise ValueError(f"{x} and {y} carry further arrows between them; cannot cancel")
        incoming = [(w, b) for w, b in self.inn[y] if w not in (x, y)]
        outgoing = [(a, z) for a, z in self.out[x] if z not in (x, y)]

        # H += G h F with h(y) = x
        g_x = list(self.G[x])
        for g, terms in self.F.items():
            for c, t in terms:
                if t == y:
                    for d, u in g_x:
                        p = mul(c, d)
                        if p is not None:
                            _toggle(self.H, g, (p, u))
        # G(w) += b G(x) for w -b-> y
        for w, b in incoming:
            for d, u in g_x:
                p = mul(b, d)
                if p is not None:
                    _toggle(self.G, w, (p, u))
        # F: drop x, send y to its replacement sum
        for g, terms in self.F.items():
            new = set()
            for c, t in terms:
                if t == x:
                    continue
                if t == y:
                    for a, z in outgoing:
                        p = mul(c, a)
                        if p is not None:
                            new ^= {(p, z)}
                else:
                    new ^= {(c, t)}
            self.F[g] = new
        # zigzag arrows w -> z
        for w, b in incoming:
            for a, z in outgoing:
                p = mul(b, a)
                if p is not None:
                    self._toggle_arrow(w, p, z)
        for g in (x, y):
            for a, t in list(self.out[g]):
                self._toggle_arrow(g, a, t)
            for s, a in list(self.inn[g]):
                self._toggle_arrow(s, a, g)
            del self.out[g], self.inn[g], self.G[g], self.idem[g]
        self.order = [n for n in self.order if n not in (x, y)]

    def _toggle_arrow(self, s: str, a: Alg, t: str) -> None:
        _toggle(self.out, s, (a, t))
        _toggle(self.inn, t, (s, a))

    def result(self) -> tuple[TypeD, DMorphism, DMorphism, DMorphism]:
        d = self.original
        gens = [Generator(n, self.idem[n]) for n in self.order]
        reduced = TypeD.build(gens, [(s, a, t) for s in self.order for a, t in self.out[s]],
                              name=d.name, right=d.right)
        F = DMorphism(d, reduced, frozenset((g, a, t) for g, ts in self.F.items() for a, t in ts))
        G = DMorphism(reduced, d, frozenset((g, a, t) for g, ts in self.G.items() for a, t in ts))
        H = DMorphism(d, d, frozenset((g, a, t) for g, ts in self.H.items() for a, t in ts))
        return reduced, F, G, H


def cancel_edge(d: TypeD, x: str, y: str) -> tuple[TypeD, DMorphism, DMorphism, DMorphism]:
    """Cancel the idempotent arrow x -> y, returning (d', F, G, H)."""
    if x not in d.idem or y not in d.idem:
        raise ValueError(f"unknown generator in edge ({x}, {y})")
    r = _Reducer(d)
    r.cancel(x, y)
    return r.result()


Chooser = Callable[[list[tuple[str, str]]], tuple[str, str]]


def reduce(d: TypeD, choose: Chooser = min) -> tuple[TypeD, DMorphism, DMorphism, DMorphism]:
    """Cancel idempotent arrows until none is eligible; default order is lexicographic."""
    r = _Reducer(d)
    while True:
        edges = r.eligible()
        if not edges:
            return r.result()
        r.cancel(*choose(edges))


def is_reduced(d: TypeD) -> bool:
    return not any(a.is_idempotent for _, a, _ in d.arrows)


# ------------------------------------------------------------ canonical form


@dataclass(frozen=True)
class CanonicalForm:
    key: tuple
    order: tuple[str, ...]


def _refine(d: TypeD, colors: dict[str, int]) -> dict[str, int]:
    n_classes = len(set(colors.values()))
    while True:
        sig = {}
        for v in d.names:
            outs = tuple(sorted((int(a), colors[t], t == v) for a, t in d.out[v]))
            ins = tuple(sorted((int(a), colors[s], s == v) for s, a in d.into[v]))
            sig[v] = (colors[v], outs, ins)
        ranks = {s: k for k, s in enumerate(sorted(set(sig.values())))}
        colors = {v: ranks[sig[v]] for v in d.names}
        if len(ranks) == n_classes:
            return colors
        n_classes = len(ranks)


def _encode(d: TypeD, colors: dict[str, int]) -> tuple[tuple, tuple[str, ...]]:
    order = tuple(sorted(d.names, key=colors.__getitem__))
    pos = {n: k for k, n in enumerate(order)}
    arrows = tuple(sorted((pos[s], int(a), pos[t]) for s, a, t in d.arrows))
    return (d.right, tuple(d.idem[n] for n in order), arrows), order


def _twins(d: TypeD, cell: Iterable[str]) -> list[str]:
    # generators with identical neighbourhoods and no arrows among them are interchangeable
    seen, reps = set(), []
    for v in cell:
        nb = (frozenset(d.out[v]), frozenset(d.into[v]))
        if any(t == v for _, t in d.out[v]) or nb not in seen:
            seen.add(nb)
            reps.append(v)
    return reps


def canonical_form(d: TypeD) -> CanonicalForm:
    best: list = [None]

    def search(colors: dict[str, int]) -> None:
        colors = _refine(d, colors)
        cells = defaultdict(list)
        for v, c in colors.items():
            cells[c].append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            enc = _encode(d, colors)
            if best[0] is None or enc[0] < best[0][0]:
                best[0] = enc
            return
        for v in _twins(d, sorted(cells[target])):
            search({u: 2 * c + (1 if c == target and u != v else 0) for u, c in colors.items()})

    search({g.name: int(g.idem) for g in d.generators})
    key, order = best[0]
    return CanonicalForm(key, order)


def is_isomorphic(d1: TypeD, d2: TypeD) -> bool:
    if len(d1) != len(d2) or len(d1.arrows) != len(d2.arrows):
        return False
    return canonical_form(d1).key == canonical_form(d2).key


def find_isomorphism(d1: TypeD, d2: TypeD) -> dict[str, str] | None:
    """A name map d1 -> d2 carrying arrows to arrows, or None."""
    if len(d1) != len(d2):
        return None
    c1, c2 = canonical_form(d1), canonical_form(d2)
    if c1.key != c2.key:
        return None
    return dict(zip(c1.order, c2.order))


def isomorphism_morphism(d1: TypeD, d2: TypeD, mapping: dict[str, str]) -> DMorphism:
    return DMorphism(d1, d2, frozenset((n, Alg.idem(d1.idem[n]), mapping[n]) for n in d1.names))
