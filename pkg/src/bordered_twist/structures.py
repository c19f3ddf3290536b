"""Type-D, DD, DA and AA structures over the torus algebra, with validators."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Union

import numpy as np

from .algebra import CHORDS, Alg, DDCoeff, dd_mul1, mul

Pair = tuple[int, int]


class Generator(NamedTuple):
    name: str
    idem: Union[int, Pair]


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def _mod2(items: Iterable) -> frozenset:
    counts = Counter(items)
    return frozenset(k for k, v in counts.items() if v % 2)


def _make_generators(gens) -> tuple[Generator, ...]:
    out = tuple(g if isinstance(g, Generator) else Generator(*g) for g in gens)
    names = [g.name for g in out]
    if len(set(names)) != len(names):
        dup = sorted(n for n, c in Counter(names).items() if c > 1)
        raise ValueError(f"duplicate generator names: {dup}")
    return out


class _Presentation:
    generators: tuple[Generator, ...]

    @cached_property
    def idem(self) -> dict[str, Union[int, Pair]]:
        return {g.name: g.idem for g in self.generators}

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def _check_names(self, names: Iterable[str]) -> None:
        known = self.idem
        for n in names:
            if n not in known:
                raise ValueError(f"unknown generator {n!r}")


@dataclass(frozen=True)
class TypeD(_Presentation):
    """A left type-D structure; `right=True` marks a dualized (right) one."""

    generators: tuple[Generator, ...]
    arrows: frozenset  # of (src, Alg, dst)
    name: str = field(default="", compare=False)
    right: bool = False

    @classmethod
    def build(cls, gens, arrows=(), name: str = "", right: bool = False) -> "TypeD":
        d = cls(_make_generators(gens), _mod2(tuple(a) for a in arrows), name, right)
        d._check_names(n for s, _, t in d.arrows for n in (s, t))
        return d

    @cached_property
    def out(self) -> dict[str, tuple[tuple[Alg, str], ...]]:
        table: dict[str, list] = defaultdict(list)
        for s, a, t in self.arrows:
            table[s].append((a, t))
        return {n: tuple(sorted(table.get(n, ()))) for n in self.names}

    @cached_property
    def into(self) -> dict[str, tuple[tuple[str, Alg], ...]]:
        table: dict[str, list] = defaultdict(list)
        for s, a, t in self.arrows:
            table[t].append((s, a))
        return {n: tuple(sorted(table.get(n, ()))) for n in self.names}

    def sorted_arrows(self) -> list[tuple[str, Alg, str]]:
        return sorted(self.arrows, key=lambda e: (e[0], int(e[1]), e[2]))

    def renamed(self, mapping: dict[str, str], name: str | None = None) -> "TypeD":
        gens = [Generator(mapping[g.name], g.idem) for g in self.generators]
        arrows = [(mapping[s], a, mapping[t]) for s, a, t in self.arrows]
        return TypeD.build(gens, arrows, self.name if name is None else name, self.right)


@dataclass(frozen=True)
class TypeDD(_Presentation):
    generators: tuple[Generator, ...]
    arrows: frozenset  # of (src, DDCoeff, dst)
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, gens, arrows=(), name: str = "") -> "TypeDD":
        items = ((s, DDCoeff(*c), t) for s, c, t in arrows)
        d = cls(_make_generators(gens), _mod2(items), name)
        d._check_names(n for s, _, t in d.arrows for n in (s, t))
        return d

    @cached_property
    def out(self) -> dict[str, tuple[tuple[DDCoeff, str], ...]]:
        table: dict[str, list] = defaultdict(list)
        for s, c, t in self.arrows:
            table[s].append((c, t))
        return {n: tuple(sorted(table.get(n, ()))) for n in self.names}


@dataclass(frozen=True)
class TypeDA(_Presentation):
    """Ops are (src, inputs, output, dst); idems are (left, right)."""

    generators: tuple[Generator, ...]
    ops: frozenset
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, gens, ops=(), name: str = "") -> "TypeDA":
        items = ((s, tuple(ins), out, t) for s, ins, out, t in ops)
        d = cls(_make_generators(gens), _mod2(items), name)
        d._check_names(n for s, _, _, t in d.ops for n in (s, t))
        return d

    @cached_property
    def table(self) -> dict[tuple[str, tuple], tuple[tuple[Alg, str], ...]]:
        t: dict[tuple[str, tuple], list] = defaultdict(list)
        for s, ins, out, dst in self.ops:
            t[s, ins].append((out, dst))
        return {k: tuple(sorted(v)) for k, v in t.items()}

    @property
    def max_arity(self) -> int:
        return max((len(ins) for _, ins, _, _ in self.ops), default=0)

    def sorted_ops(self) -> list:
        return sorted(self.ops, key=lambda o: (o[0], tuple(map(int, o[1])), int(o[2]), o[3]))


@dataclass(frozen=True)
class TypeAA(_Presentation):
    """Ops are (src, sigma_inputs, rho_inputs, dst); idems are (sigma, rho)."""

    generators: tuple[Generator, ...]
    ops: frozenset
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, gens, ops=(), name: str = "") -> "TypeAA":
        items = ((s, tuple(si), tuple(ri), t) for s, si, ri, t in ops)
        d = cls(_make_generators(gens), _mod2(items), name)
        d._check_names(n for s, _, _, t in d.ops for n in (s, t))
        return d

    @property
    def max_arity(self) -> int:
        return max((len(si) + len(ri) for _, si, ri, _ in self.ops), default=0)


# ---------------------------------------------------------------- validation


def _chain_ok(start: int, seq: Iterable[Alg], end: int) -> bool:
    cur = start
    for a in seq:
        if a.source != cur:
            return False
        cur = a.target
    return cur == end


def validate_type_d(d: TypeD) -> list[Violation]:
    """Empty list iff idempotents match and the structure equation holds."""
    problems = []
    for s, a, t in d.sorted_arrows():
        lo, hi = (d.idem[s], d.idem[t]) if not d.right else (d.idem[t], d.idem[s])
        if a.source != lo or a.target != hi:
            problems.append(Violation("idempotent", (s, a, t),
                                      f"arrow {s} -> {a} {t} has mismatched idempotents"))
    if problems:
        return problems
    for x in d.names:
        counts: Counter = Counter()
        for a, y in d.out[x]:
            for b, z in d.out[y]:
                p = mul(b, a) if d.right else mul(a, b)
                if p is not None:
                    counts[p, z] += 1
        for (p, z), c in sorted(counts.items(), key=lambda kv: (int(kv[0][0]), kv[0][1])):
            if c % 2:
                problems.append(Violation("d_squared", (x, p, z),
                                          f"d^2 {x} contains {p} {z}"))
    return problems


def validate_type_dd(d: TypeDD) -> list[Violation]:
    problems = []
    for s, c, t in sorted(d.arrows):
        (sr, ss), (tr, ts) = d.idem[s], d.idem[t]
        if (c.rho.source, c.rho.target, c.sigma.source, c.sigma.target) != (sr, tr, ss, ts):
            problems.append(Violation("idempotent", (s, c, t),
                                      f"arrow {s} -> {c} {t} has mismatched idempotents"))
    if problems:
        return problems
    for x in d.names:
        counts: Counter = Counter()
        for c, y in d.out[x]:
            for e, z in d.out[y]:
                p = dd_mul1(c, e)
                if p is not None:
                    counts[p, z] += 1
        for (p, z), n in sorted(counts.items()):
            if n % 2:
                problems.append(Violation("d_squared", (x, p, z), f"d^2 {x} contains {p} {z}"))
    return problems


def _da_idempotent_problems(d: TypeDA) -> list[Violation]:
    problems = []
    for s, ins, out, t in d.sorted_ops():
        (sl, sr), (tl, tr) = d.idem[s], d.idem[t]
        bad = any(a.is_idempotent for a in ins)
        bad = bad or out.source != sl or out.target != tl or not _chain_ok(sr, ins, tr)
        if bad:
            problems.append(Violation("idempotent", (s, ins, out, t),
                                      f"op ({s}, {', '.join(map(str, ins))}) -> {out} {t} "
                                      "has mismatched idempotents"))
    return problems


def _input_sequences(start: int, max_len: int):
    """All chord sequences of length <= max_len whose idempotents chain from start."""
    yield ()
    frontier = [((), start)]
    for _ in range(max_len):
        nxt = []
        for seq, cur in frontier:
            for c in CHORDS:
                if c.source == cur:
                    s2 = seq + (c,)
                    nxt.append((s2, c.target))
                    yield s2
        frontier = nxt


def da_relation_terms(d: TypeDA, x: str, seq: tuple) -> Counter:
    """The DA structure relation evaluated on (x, seq), before reduction mod 2."""
    counts: Counter = Counter()
    table = d.table
    n = len(seq)
    for i in range(n + 1):
        for a, x1 in table.get((x, seq[:i]), ()):
            for b, x2 in table.get((x1, seq[i:]), ()):
                p = mul(a, b)
                if p is not None:
                    counts[p, x2] += 1
    for j in range(n - 1):
        p = mul(seq[j], seq[j + 1])
        if p is not None:
            for a, x1 in table.get((x, seq[:j] + (p,) + seq[j + 2:]), ()):
                counts[a, x1] += 1
    return counts


def validate_type_da(d: TypeDA, bound: int = 4) -> list[Violation]:
    if bound < 2 * d.max_arity:
        raise ValueError(f"bound {bound} is below twice the maximal arity {d.max_arity}")
    problems = _da_idempotent_problems(d)
    if problems:
        return problems
    for x in d.names:
        for seq in _input_sequences(d.idem[x][1], bound):
            counts = da_relation_terms(d, x, seq)
            for (p, z), c in sorted(counts.items(), key=lambda kv: (int(kv[0][0]), kv[0][1])):
                if c % 2:
                    problems.append(Violation(
                        "structure", (x, seq, p, z),
                        f"relation on ({x}, {', '.join(map(str, seq))}) leaves {p} {z}"))
    return problems


def validate_type_aa(d: TypeAA) -> list[Violation]:
    """Idempotent consistency of each op along both input sequences."""
    problems = []
    for s, si, ri, t in sorted(d.ops):
        (ss, sr), (ts, tr) = d.idem[s], d.idem[t]
        if not (_chain_ok(ss, si, ts) and _chain_ok(sr, ri, tr)):
            problems.append(Violation("idempotent", (s, si, ri, t),
                                      f"op on {s} -> {t} has mismatched idempotents"))
    return problems


# ----------------------------------------------------------- coefficient maps

COEFF_KEYS = ("", "1", "2", "3", "12", "23", "123")


@dataclass(frozen=True)
class CoefficientMaps:
    """D_I[j, i] = 1 when generator i has an arrow labelled I to generator j."""

    order: tuple[str, ...]
    maps: dict = field(hash=False)

    def reassemble(self, idem: dict) -> frozenset:
        arrows = []
        for key, m in self.maps.items():
            for j, i in zip(*np.nonzero(m)):
                src, dst = self.order[i], self.order[j]
                a = Alg.idem(idem[src]) if key == "" else next(c for c in CHORDS if c.label == key)
                arrows.append((src, a, dst))
        return frozenset(arrows)


def coefficient_maps(d: TypeD) -> CoefficientMaps:
    order = tuple(d.names)
    index = {n: k for k, n in enumerate(order)}
    maps = {k: np.zeros((len(order), len(order)), dtype=np.uint8) for k in COEFF_KEYS}
    for s, a, t in d.arrows:
        maps[a.label][index[t], index[s]] ^= 1
    return CoefficientMaps(order, maps)


# --------------------------------------------------------------- dualization


def dualize_d(d: TypeD) -> TypeD:
    return TypeD.build(d.generators, [(t, a, s) for s, a, t in d.arrows], d.name, not d.right)


# Identity DD bimodule, used to turn the A-side of a DA bimodule into a D-side.
_ID_DD_PATHS = {
    # idempotent of the rho-side -> list of (rho emitted, sigma emitted, next idempotent)
    0: ((Alg.R1, Alg.R3, 1), (Alg.R3, Alg.R1, 1), (Alg.R123, Alg.R123, 1)),
    1: ((Alg.R2, Alg.R2, 0),),
}


def da_to_dd_dual(p: TypeDA) -> TypeDD:
    """Turn the right A-side of a DA bimodule into a second D-side.

    Each op's inputs are fed by a path through the identity DD bimodule,
    whose sigma outputs multiply (in order) into the new second coefficient.
    """
    arrows = []
    for s, ins, out, t in p.ops:
        right = p.idem[s][1]
        # walk the identity bimodule emitting exactly `ins` on its rho side
        states = [(right, Alg.idem(right))]
        for b in ins:
            nxt = []
            for cur, sig in states:
                for r, sg, nidem in _ID_DD_PATHS[cur]:
                    if r == b:
                        prod = mul(sig, sg)
                        if prod is not None:
                            nxt.append((nidem, prod))
            states = nxt
        for _, sig in states:
            arrows.append((s, DDCoeff(out, sig), t))
    gens = [Generator(g.name, g.idem) for g in p.generators]
    return TypeDD.build(gens, arrows, p.name)
