"""Morphisms between type-D, DD and DA structures, and morphism complexes."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .algebra import Alg, DDCoeff, dd_mul1, elements_between, mul
from .f2 import f2_homology, solve
from .structures import TypeD, TypeDA, TypeDD, _input_sequences, _mod2


class _Morphism:
    source: object
    target: object
    components: frozenset

    _mul: Callable

    @cached_property
    def out(self) -> dict:
        table: dict = defaultdict(list)
        for s, c, t in self.components:
            table[s].append((c, t))
        return {k: tuple(sorted(v)) for k, v in table.items()}

    def __add__(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("cannot add morphisms with different endpoints")
        return type(self)(self.source, self.target, self.components ^ other.components)

    def __bool__(self) -> bool:
        return bool(self.components)


def _check_d_component(src: TypeD, dst: TypeD, s: str, a: Alg, t: str) -> None:
    if s not in src.idem or t not in dst.idem:
        raise ValueError(f"component {s} -> {t} names an unknown generator")
    if a.source != src.idem[s] or a.target != dst.idem[t]:
        raise ValueError(f"component {s} -> {a} {t} has mismatched idempotents")


@dataclass(frozen=True)
class DMorphism(_Morphism):
    source: TypeD
    target: TypeD
    components: frozenset  # of (src, Alg, dst)

    _mul = staticmethod(mul)

    @classmethod
    def build(cls, source: TypeD, target: TypeD, comps=()) -> "DMorphism":
        comps = _mod2(tuple(c) for c in comps)
        for s, a, t in comps:
            _check_d_component(source, target, s, a, t)
        return cls(source, target, comps)

    def sorted_components(self):
        return sorted(self.components, key=lambda e: (e[0], int(e[1]), e[2]))


@dataclass(frozen=True)
class DDMorphism(_Morphism):
    source: TypeDD
    target: TypeDD
    components: frozenset  # of (src, DDCoeff, dst)

    _mul = staticmethod(dd_mul1)

    @classmethod
    def build(cls, source: TypeDD, target: TypeDD, comps=()) -> "DDMorphism":
        comps = _mod2((s, DDCoeff(*c), t) for s, c, t in comps)
        for s, c, t in comps:
            (sr, ss), (tr, ts) = source.idem[s], target.idem[t]
            if (c.rho.source, c.rho.target, c.sigma.source, c.sigma.target) != (sr, tr, ss, ts):
                raise ValueError(f"component {s} -> {c} {t} has mismatched idempotents")
        return cls(source, target, comps)


@dataclass(frozen=True)
class DAMorphism:
    """Components (src, inputs, output, dst) between two DA bimodules."""

    source: TypeDA
    target: TypeDA
    components: frozenset

    @classmethod
    def build(cls, source: TypeDA, target: TypeDA, comps=()) -> "DAMorphism":
        return cls(source, target, _mod2((s, tuple(i), o, t) for s, i, o, t in comps))

    @cached_property
    def table(self) -> dict:
        t: dict = defaultdict(list)
        for s, ins, out, dst in self.components:
            t[s, ins].append((out, dst))
        return dict(t)

    def sorted_components(self):
        return sorted(self.components, key=lambda o: (o[0], tuple(map(int, o[1])), int(o[2]), o[3]))

    def __add__(self, other: "DAMorphism") -> "DAMorphism":
        return DAMorphism(self.source, self.target, self.components ^ other.components)


# ------------------------------------------------------------------ helpers


def _compose(g, f, mult) -> frozenset:
    counts: Counter = Counter()
    g_out = g.out
    for s, a, y in f.components:
        for b, z in g_out.get(y, ()):
            p = mult(a, b)
            if p is not None:
                counts[s, p, z] += 1
    return frozenset(k for k, v in counts.items() if v % 2)


def identity_d(d: TypeD) -> DMorphism:
    return DMorphism(d, d, frozenset((g.name, Alg.idem(g.idem), g.name) for g in d.generators))


def zero_d(source: TypeD, target: TypeD) -> DMorphism:
    return DMorphism(source, target, frozenset())


def compose_d(g: DMorphism, f: DMorphism) -> DMorphism:
    """g after f."""
    if f.target != g.source:
        raise ValueError("endpoints do not compose")
    return DMorphism(f.source, g.target, _compose(g, f, mul))


def _delta_as_morphism(d):
    if isinstance(d, TypeD):
        return DMorphism(d, d, d.arrows)
    return DDMorphism(d, d, d.arrows)


def _diff(h, mult) -> frozenset:
    dm = _delta_as_morphism(h.source)
    dn = _delta_as_morphism(h.target)
    return _compose(dn, h, mult) ^ _compose(h, dm, mult)


def mor_d_diff(h: DMorphism) -> DMorphism:
    return DMorphism(h.source, h.target, _diff(h, mul))


def mor_dd_diff(h: DDMorphism, m: TypeDD | None = None, n: TypeDD | None = None) -> DDMorphism:
    if (m is not None and m != h.source) or (n is not None and n != h.target):
        raise ValueError("morphism does not run between the given structures")
    return DDMorphism(h.source, h.target, _diff(h, dd_mul1))


def is_chain_map(f) -> bool:
    if isinstance(f, DAMorphism):
        return not da_morphism_relation(f)
    return not _diff(f, f._mul)


# ----------------------------------------------------------------- bases


def mor_d_basis(m: TypeD, n: TypeD) -> list[DMorphism]:
    out = []
    for s in m.names:
        for t in n.names:
            for a in elements_between(m.idem[s], n.idem[t]):
                out.append(DMorphism(m, n, frozenset(((s, a, t),))))
    return out


def mor_dd_basis(m: TypeDD, n: TypeDD) -> list[DDMorphism]:
    out = []
    for s in m.names:
        (sr, ss) = m.idem[s]
        for t in n.names:
            (tr, ts) = n.idem[t]
            for r in elements_between(sr, tr):
                for g in elements_between(ss, ts):
                    out.append(DDMorphism(m, n, frozenset(((s, DDCoeff(r, g), t),))))
    return out


def _single(b) -> tuple:
    return next(iter(b.components))


def _diff_matrix(basis, diff) -> np.ndarray:
    index = {_single(b): k for k, b in enumerate(basis)}
    mat = np.zeros((len(basis), len(basis)), dtype=np.uint8)
    for j, b in enumerate(basis):
        for comp in diff(b).components:
            mat[index[comp], j] ^= 1
    return mat


def to_vector(h, basis) -> np.ndarray:
    index = {_single(b): k for k, b in enumerate(basis)}
    v = np.zeros(len(basis), dtype=np.uint8)
    for comp in h.components:
        v[index[comp]] ^= 1
    return v


def from_vector(v, basis):
    comps = frozenset(_single(b) for b, bit in zip(basis, v) if bit)
    first = basis[0] if basis else None
    if first is None:
        raise ValueError("empty basis")
    return type(first)(first.source, first.target, comps)


def mor_dd_matrix(m: TypeDD, n: TypeDD) -> tuple[list[DDMorphism], np.ndarray]:
    basis = mor_dd_basis(m, n)
    return basis, _diff_matrix(basis, mor_dd_diff)


def mor_dd_homology(m: TypeDD, n: TypeDD) -> tuple[int, list[DDMorphism]]:
    basis, d = mor_dd_matrix(m, n)
    if not basis:
        return 0, []
    dim, reps = f2_homology(d, d)
    return dim, [from_vector(r, basis) for r in reps]


def mor_d_matrix(m: TypeD, n: TypeD) -> tuple[list[DMorphism], np.ndarray]:
    basis = mor_d_basis(m, n)
    return basis, _diff_matrix(basis, mor_d_diff)


def are_homotopic(f: DMorphism, g: DMorphism) -> DMorphism | None:
    """A witness H with f + g = dH + Hd, or None if none exists."""
    if (f.source, f.target) != (g.source, g.target):
        raise ValueError("morphisms have different endpoints")
    if not (is_chain_map(f) and is_chain_map(g)):
        raise ValueError("are_homotopic needs chain maps")
    basis, d = mor_d_matrix(f.source, f.target)
    if not basis:
        return zero_d(f.source, f.target)
    x = solve(d, to_vector(f + g, basis))
    if x is None:
        return None
    return DMorphism(f.source, f.target, frozenset(_single(b) for b, bit in zip(basis, x) if bit))


# ------------------------------------------------------- DA chain condition


def da_morphism_relation(f: DAMorphism, bound: int | None = None) -> list[tuple]:
    """Nonvanishing terms of the differential of a DA morphism up to `bound` inputs.

    (df)(x, a1..an) sums f then delta, delta then f, and f applied to inputs
    with one adjacent pair multiplied.
    """
    p, q = f.source, f.target
    arity = max([len(i) for _, i, _, _ in f.components] + [p.max_arity, q.max_arity, 0])
    bound = 2 * arity if bound is None else bound
    ft, pt, qt = f.table, p.table, q.table
    bad = []
    for x in p.names:
        for seq in _input_sequences(p.idem[x][1], bound):
            counts: Counter = Counter()
            n = len(seq)
            for i in range(n + 1):
                for a, x1 in ft.get((x, seq[:i]), ()):
                    for b, x2 in qt.get((x1, seq[i:]), ()):
                        c = mul(a, b)
                        if c is not None:
                            counts[c, x2] += 1
                for a, x1 in pt.get((x, seq[:i]), ()):
                    for b, x2 in ft.get((x1, seq[i:]), ()):
                        c = mul(a, b)
                        if c is not None:
                            counts[c, x2] += 1
            for j in range(n - 1):
                c = mul(seq[j], seq[j + 1])
                if c is not None:
                    for a, x1 in ft.get((x, seq[:j] + (c,) + seq[j + 2:]), ()):
                        counts[a, x1] += 1
            for (c, z), k in counts.items():
                if k % 2:
                    bad.append((x, seq, c, z))
    return sorted(bad, key=lambda b: (b[0], tuple(map(int, b[1])), int(b[2]), b[3]))
