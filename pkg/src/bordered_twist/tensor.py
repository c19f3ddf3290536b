"""Box tensor products of bimodules with modules, and of morphisms with identities."""

from __future__ import annotations

import os
from collections import defaultdict

from .algebra import Alg, mul
from .morphisms import DAMorphism, DDMorphism, DMorphism
from .structures import Generator, TypeAA, TypeD, TypeDA, TypeDD

DEFAULT_DEPTH_CAP = 64


class DepthCapError(RuntimeError):
    """Chain enumeration in a box product exceeded the configured depth cap."""

    def __init__(self, cap: int, needed: int):
        super().__init__(f"chain enumeration needs depth {needed}, above the depth cap {cap} "
                         "(raise it with BHF_DEPTH_CAP)")
        self.cap = cap
        self.needed = needed


def depth_cap() -> int:
    return int(os.environ.get("BHF_DEPTH_CAP", DEFAULT_DEPTH_CAP))


def _check_cap(needed: int, cap: int | None) -> None:
    cap = depth_cap() if cap is None else cap
    if needed > cap:
        raise DepthCapError(cap, needed)


def pair_name(a: str, b: str) -> str:
    return f"{a}|{b}"


def _d_paths(d: TypeD, start: str, seq) -> list[str]:
    """Endpoints (with multiplicity) of arrow paths from start emitting exactly seq."""
    ends = [start]
    for b in seq:
        ends = [t for y in ends for a, t in d.out[y] if a == b]
        if not ends:
            break
    return ends


def box_da_d(p: TypeDA, d: TypeD, cap: int | None = None) -> TypeD:
    _check_cap(p.max_arity, cap)
    by_idem = defaultdict(list)
    for g in d.generators:
        by_idem[g.idem].append(g.name)
    gens = [Generator(pair_name(x.name, y), x.idem[0])
            for x in p.generators for y in by_idem[x.idem[1]]]
    arrows = []
    for x, ins, out, x2 in p.ops:
        for y in by_idem[p.idem[x][1]]:
            for y2 in _d_paths(d, y, ins):
                arrows.append((pair_name(x, y), out, pair_name(x2, y2)))
    # idempotent arrows of d pair with the unit of the bimodule
    for y, a, y2 in d.arrows:
        if a.is_idempotent:
            for x in p.generators:
                if x.idem[1] == d.idem[y]:
                    arrows.append((pair_name(x.name, y), Alg.idem(x.idem[0]), pair_name(x.name, y2)))
    return TypeD.build(gens, arrows, name=f"{p.name}*{d.name}")


def _dd_sigma_paths(m: TypeDD, start: str, sigmas, rho: Alg):
    """(end, rho product) for chains of DD arrows whose sigma parts are exactly `sigmas`."""
    states = [(start, rho)]
    for s in sigmas:
        nxt = []
        for g, acc in states:
            for c, t in m.out[g]:
                if c.sigma == s:
                    prod = mul(acc, c.rho)
                    if prod is not None:
                        nxt.append((t, prod))
        states = nxt
        if not states:
            break
    return states


def _dd_aa_generators(m: TypeDD, n: TypeAA):
    return [Generator(pair_name(a.name, b.name), (a.idem[0], b.idem[1]))
            for a in m.generators for b in n.generators if a.idem[1] == b.idem[0]]


def box_dd_aa(m: TypeDD, n: TypeAA, cap: int | None = None) -> TypeDA:
    _check_cap(n.max_arity, cap)
    gens = _dd_aa_generators(m, n)
    ops = []
    for w, sig, rho, w2 in n.ops:
        for g in m.names:
            if m.idem[g][1] != n.idem[w][0]:
                continue
            start = Alg.idem(m.idem[g][0])
            for end, prod in _dd_sigma_paths(m, g, sig, start):
                ops.append((pair_name(g, w), rho, prod, pair_name(end, w2)))
    # DD arrows with an idempotent sigma meet the unit of the AA side
    for g, c, g2 in m.arrows:
        if c.sigma.is_idempotent:
            for w in n.names:
                if n.idem[w][0] == m.idem[g][1]:
                    ops.append((pair_name(g, w), (), c.rho, pair_name(g2, w)))
    return TypeDA.build(gens, ops, name=f"{m.name}*{n.name}")


def box_ddmor_aa(f: DDMorphism, n: TypeAA, cap: int | None = None) -> DAMorphism:
    """f tensored with the identity of an AA bimodule.

    Each AA op consumes the sigma outputs of a chain delta_M ... f ... delta_N
    containing exactly one component of f.
    """
    _check_cap(n.max_arity, cap)
    m_src, m_dst = f.source, f.target
    source, target = box_dd_aa(m_src, n, cap), box_dd_aa(m_dst, n, cap)
    f_out = f.out
    comps = []
    for w, sig, rho, w2 in n.ops:
        k = len(sig)
        for g in m_src.names:
            if m_src.idem[g][1] != n.idem[w][0]:
                continue
            for i in range(k):
                before = _dd_sigma_paths(m_src, g, sig[:i], Alg.idem(m_src.idem[g][0]))
                for mid, acc in before:
                    for c, h in f_out.get(mid, ()):
                        if c.sigma != sig[i]:
                            continue
                        acc2 = mul(acc, c.rho)
                        if acc2 is None:
                            continue
                        for end, prod in _dd_sigma_paths(m_dst, h, sig[i + 1:], acc2):
                            comps.append((pair_name(g, w), rho, prod, pair_name(end, w2)))
    for g, c, h in f.components:
        if c.sigma.is_idempotent:
            for w in n.names:
                if n.idem[w][0] == m_src.idem[g][1]:
                    comps.append((pair_name(g, w), (), c.rho, pair_name(h, w)))
    return DAMorphism.build(source, target, comps)


def box_damor_id(f: DAMorphism, d: TypeD, cap: int | None = None) -> DMorphism:
    source, target = box_da_d(f.source, d, cap), box_da_d(f.target, d, cap)
    by_idem = defaultdict(list)
    for g in d.generators:
        by_idem[g.idem].append(g.name)
    comps = []
    for x, ins, out, x2 in f.components:
        for y in by_idem[f.source.idem[x][1]]:
            for y2 in _d_paths(d, y, ins):
                comps.append((pair_name(x, y), out, pair_name(x2, y2)))
    return DMorphism.build(source, target, comps)


def box_da_da(p: TypeDA, q: TypeDA, cap: int | None = None) -> TypeDA:
    """Compose two DA bimodules: the outputs of q feed the inputs of p."""
    _check_cap(p.max_arity * max(q.max_arity, 1), cap)
    gens = [Generator(pair_name(x.name, y.name), (x.idem[0], y.idem[1]))
            for x in p.generators for y in q.generators if x.idem[1] == y.idem[0]]
    q_by_out = defaultdict(list)  # (src, output) -> [(inputs, dst)]
    for y, ins, out, y2 in q.ops:
        q_by_out[y, out].append((ins, y2))
    ops = []
    for x, bs, c, x2 in p.ops:
        for y in q.names:
            if q.idem[y][0] != p.idem[x][1]:
                continue
            states = [(y, ())]
            for b in bs:
                states = [(y2, ins + more) for cur, ins in states
                          for more, y2 in q_by_out.get((cur, b), ())]
                if not states:
                    break
            for end, ins in states:
                ops.append((pair_name(x, y), ins, c, pair_name(x2, end)))
    # idempotent outputs of q meet the unit of p
    for y, ins, out, y2 in q.ops:
        if out.is_idempotent:
            for x in p.generators:
                if x.idem[1] == q.idem[y][0]:
                    ops.append((pair_name(x.name, y), ins, Alg.idem(x.idem[0]), pair_name(x.name, y2)))
    return TypeDA.build(gens, ops, name=f"{p.name}*{q.name}")
