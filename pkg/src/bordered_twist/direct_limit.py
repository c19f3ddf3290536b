"""The framing-increase direct system, its truncated colimit and the stable part."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .algebra import Alg
from .f2 import f2_rank, inverse
from .knot_cfd import CfkMinus, cfd_from_cfk, unstable_length
from .library import (aa_identity, cfda_twist, cfdd_identity, cfdd_twist,
                      framing_morphism, unstable_chain)
from .morphisms import DAMorphism, DMorphism, compose_d, identity_d
from .reduction import find_isomorphism, is_isomorphic, is_reduced, isomorphism_morphism, reduce
from .structures import Generator, TypeD, TypeDA, validate_type_d
from .tensor import box_da_d, box_damor_id, box_dd_aa, box_ddmor_aa


# ------------------------------------------------------------ twist models


@lru_cache(maxsize=None)
def identity_da() -> TypeDA:
    """CFDD_I tensored with the AA identity: a six-generator DA identity."""
    return box_dd_aa(cfdd_identity(), aa_identity())


@lru_cache(maxsize=None)
def twist_da() -> TypeDA:
    """CFDD_T tensored with the AA identity: a nine-generator twist model."""
    return box_dd_aa(cfdd_twist(), aa_identity())


@lru_cache(maxsize=None)
def framing_da(coeffs: tuple[int, int, int, int] = (1, 0, 0, 0)) -> DAMorphism:
    """(a1 f1 + a2 f2 + a3 f3 + a4 f4) tensored with the AA identity."""
    total = DAMorphism(identity_da(), twist_da(), frozenset())
    for bit, name in zip(coeffs, ("f1", "f2", "f3", "f4")):
        if bit % 2:
            total = total + box_ddmor_aa(framing_morphism(name), aa_identity())
    return total


# ------------------------------------------------------------------ helpers


def _preferred_iso(d1: TypeD, d2: TypeD, guess: Callable[[str], str]) -> dict[str, str] | None:
    """Use the name map `guess` when it is an isomorphism, otherwise search."""
    try:
        m = {n: guess(n) for n in d1.names}
    except (KeyError, ValueError):
        m = None
    if (m is not None and set(m.values()) == set(d2.names)
            and all(d1.idem[n] == d2.idem[m[n]] for n in d1.names)
            and {(m[s], a, m[t]) for s, a, t in d1.arrows} == set(d2.arrows)):
        return m
    return find_isomorphism(d1, d2)


def _check_input(a: TypeD) -> None:
    problems = validate_type_d(a)
    if problems:
        raise ValueError(f"invalid type-D structure {a.name!r}: {problems[0]}")
    if not is_reduced(a):
        raise ValueError(f"{a.name!r} is not reduced; run reduce() first")


def phi_step(a: TypeD, target: TypeD | None = None,
             coeffs: tuple[int, int, int, int] = (1, 0, 0, 0)) -> tuple[TypeD, DMorphism]:
    """One step A -> reduce(CFDA_T * A) of the framing-increase system.

    The map is F_T o (f * id_A) o G_S, where S and T are the reduced tensor
    products of A with the DA identity and twist models, transported along
    isomorphisms S = A and T = next.  With `target` given, next is renamed
    onto it (it must be isomorphic); otherwise next is renamed onto A when
    the two are isomorphic and keeps its product names when they are not.
    """
    _check_input(a)
    nxt = reduce(box_da_d(cfda_twist(), a))[0]
    if target is not None:
        m = find_isomorphism(nxt, target)
        if m is None:
            raise ValueError(f"reduced twist of {a.name!r} is not isomorphic to {target.name!r}")
        nxt = nxt.renamed(m, target.name)
    else:
        m = find_isomorphism(nxt, a) if is_isomorphic(nxt, a) else None
        nxt = nxt.renamed(m, a.name) if m else nxt

    s, _, g_s, _ = reduce(box_da_d(identity_da(), a))
    t, f_t, _, _ = reduce(box_da_d(twist_da(), a))
    into_s = _preferred_iso(a, s, lambda n: f"{'x|x' if a.idem[n] == 0 else 'y|y'}|{n}")
    out_t = _preferred_iso(t, nxt, lambda n: n)
    if into_s is None or out_t is None:
        raise RuntimeError("reduced identity or twist product failed to match its expected model")
    f = box_damor_id(framing_da(tuple(coeffs)), a)
    phi = compose_d(f, compose_d(g_s, isomorphism_morphism(a, s, into_s)))
    phi = compose_d(isomorphism_morphism(t, nxt, out_t), compose_d(f_t, phi))
    return nxt, phi


# ------------------------------------------------------------ fragments


def _horizontally_attached(d: TypeD, g: str) -> bool:
    return (any(a in (Alg.R2, Alg.R12) for _, a in d.into[g])
            or any(a == Alg.R3 for a, _ in d.out[g]))


def close_fragment(d: TypeD) -> tuple[TypeD, tuple[str, ...]]:
    """Attach a length-one horizontal chain ending at each unattached iota0 generator.

    Inside a knot module every iota0 generator meets exactly one horizontal
    (or unstable) arrow, which absorbs the rho2 partner the twist creates for
    it.  Chain fragments lack that context and are not preserved by the twist
    until it is supplied.  Returns the closed module and the added names.
    """
    gens, arrows, added = list(d.generators), list(d.arrows), []
    for g in d.names:
        if d.idem[g] == 0 and not _horizontally_attached(d, g):
            src, lam = f"anchor:{g}", f"anchor:{g}:lambda"
            gens += [Generator(src, 0), Generator(lam, 1)]
            arrows += [(src, Alg.R3, lam), (lam, Alg.R2, g)]
            added += [src, lam]
    return TypeD.build(gens, arrows, name=d.name, right=d.right), tuple(added)


# --------------------------------------------------------- direct systems


Successor = Callable[[int], Optional[TypeD]]


@dataclass(frozen=True)
class DirectSystem:
    """Stages A_0 .. A_N and maps phi_{i,i+1}: A_i -> A_{i+1}."""

    base: TypeD
    stages: tuple[TypeD, ...]
    maps: tuple[DMorphism, ...]
    context: tuple[str, ...] = ()  # generators added by close_fragment

    @property
    def depth(self) -> int:
        return len(self.maps)

    def map_between(self, i: int, j: int) -> DMorphism:
        """phi_{ij} = phi_{j-1,j} o ... o phi_{i,i+1} (identity when i = j)."""
        if not 0 <= i <= j <= self.depth:
            raise IndexError(f"no map from stage {i} to stage {j}")
        out = identity_d(self.stages[i])
        for k in range(i, j):
            out = compose_d(self.maps[k], out)
        return out


def build_system(base: TypeD, depth: int, successor: Successor | None = None,
                 coeffs: tuple[int, int, int, int] = (1, 0, 0, 0),
                 context: tuple[str, ...] = ()) -> DirectSystem:
    """Run phi_step `depth` times; successor(i) names the model for stage i."""
    stages, maps = [base], []
    for i in range(1, depth + 1):
        target = successor(i) if successor else None
        nxt, phi = phi_step(stages[-1], target, coeffs)
        stages.append(nxt)
        maps.append(phi)
    return DirectSystem(base, tuple(stages), tuple(maps), context)


def knot_system(c: CfkMinus, framing: int, depth: int, **kw) -> DirectSystem:
    return build_system(cfd_from_cfk(c, framing), depth,
                        lambda i: cfd_from_cfk(c, framing + i), **kw)


def fragment_system(fragment: TypeD, depth: int, successor: Successor | None = None,
                    **kw) -> DirectSystem:
    """Direct system of a chain fragment, computed on its closure."""
    closed, added = close_fragment(fragment)

    def closed_successor(i: int) -> TypeD:
        return close_fragment(successor(i))[0]

    succ = closed_successor if successor is not None else None
    return build_system(closed, depth, succ, context=added, **kw)


def unstable_system(framing: int, tau: int, depth: int, **kw) -> DirectSystem:
    return fragment_system(unstable_chain(framing, tau), depth,
                           lambda i: unstable_chain(framing + i, tau), **kw)


# ------------------------------------------------------ periodicity


def _identify(phi: DMorphism) -> DMorphism:
    if phi.source == phi.target:
        return phi
    m = find_isomorphism(phi.target, phi.source)
    if m is None:
        raise ValueError("source and target of the map are not isomorphic")
    back = isomorphism_morphism(phi.target, phi.source, m)
    return compose_d(back, phi)


def detect_periodicity(phi: DMorphism, max_power: int = 64) -> int | None:
    """Smallest nu <= max_power with phi^nu equal to the identity, else None."""
    phi = _identify(phi)
    ident = identity_d(phi.source)
    power = phi
    for nu in range(1, max_power + 1):
        if power.components == ident.components:
            return nu
        power = compose_d(phi, power)
    return None


def only_f1_survives(coeffs: tuple[int, int, int, int]) -> bool:
    """Whether a1 f1 + ... + a4 f4 induces a system with nontrivial limit.

    A map tensored with the identity whose outputs are all chords composes to
    zero after four steps, so the limit is nontrivial exactly when the
    tensored map has a component with an idempotent output.
    """
    if len(coeffs) != 4:
        raise ValueError("expected four coefficients")
    f = framing_da(tuple(int(b) % 2 for b in coeffs))
    return any(out.is_idempotent for _, _, out, _ in f.components)


# ---------------------------------------------------- basis changes


def _idempotent_matrix(f: DMorphism, src: list[str], dst: list[str]) -> np.ndarray:
    si, di = {n: k for k, n in enumerate(src)}, {n: k for k, n in enumerate(dst)}
    x = np.zeros((len(dst), len(src)), dtype=np.uint8)
    for s, a, t in f.components:
        if a.is_idempotent:
            x[di[t], si[s]] ^= 1
    return x


def invert_d(f: DMorphism) -> DMorphism:
    """Inverse of a morphism whose idempotent part is invertible."""
    src, dst = f.source.names, f.target.names
    if len(src) != len(dst):
        raise ValueError("morphism is not square")
    y = inverse(_idempotent_matrix(f, src, dst))  # dst -> src
    y_map = DMorphism(f.target, f.source, frozenset(
        (dst[j], Alg.idem(f.target.idem[dst[j]]), src[i]) for i, j in zip(*np.nonzero(y))))
    ident = identity_d(f.source)
    k = compose_d(y_map, f) + ident  # nilpotent: chord words of length four vanish
    series, power = ident, ident
    for _ in range(4):
        power = compose_d(k, power)
        if not power:
            break
        series = series + power
    return compose_d(series, y_map)


def change_basis(d: TypeD, reps: dict[str, DMorphism], name: str = "") -> tuple[TypeD, DMorphism]:
    """Re-present d in the basis {v_n}, v_n = reps[n] (each a one-source morphism into d).

    Returns the new structure and the isomorphism new -> d.
    """
    gens = []
    comps = []
    for n, v in reps.items():
        idems = {a.source for _, a, _ in v.components}
        if len(idems) != 1:
            raise ValueError(f"representative {n} is zero or not idempotent-homogeneous")
        gens.append(Generator(n, idems.pop()))
        comps += [(n, a, t) for _, a, t in v.components]
    bare = TypeD.build(gens, name=name)
    b = DMorphism(bare, d, frozenset(comps))
    b_inv = invert_d(b)
    delta = DMorphism(d, d, d.arrows)
    new = compose_d(b_inv, compose_d(delta, b))
    out = TypeD.build(gens, new.components, name=name)
    return out, DMorphism(out, d, b.components)


def _image(phi: DMorphism, g: str) -> DMorphism:
    """phi restricted to the single source generator g."""
    return DMorphism(phi.source, phi.target, frozenset(c for c in phi.components if c[0] == g))


# ------------------------------------------------------ colimit


@dataclass(frozen=True)
class ColimitPresentation:
    """Representatives of a truncated direct limit and their differential.

    `generators` maps each representative name to (stage, generator at that
    stage); `tail` lists the representatives born after stage 0 in stage
    order; `template` gives the arrows out of each tail generator written
    relative to its position (see `tail_template`).
    """

    structure: TypeD
    generators: dict = field(hash=False)
    tail: tuple[str, ...]
    template: tuple = ()
    context: tuple[str, ...] = ()

    @property
    def stable(self) -> TypeD:
        """The representatives born at stage 0 with the arrows among them."""
        keep = {n for n, (i, _) in self.generators.items() if i == 0}
        return _restrict(self.structure, keep)


def _restrict(d: TypeD, keep) -> TypeD:
    return TypeD.build([g for g in d.generators if g.name in keep],
                       [(s, a, t) for s, a, t in d.arrows if s in keep and t in keep], name=d.name)


def choose_representatives(system: DirectSystem) -> dict[str, tuple[int, str]]:
    """Box rule: push every stage into the last one and keep what is new.

    Generators of A_0, then A_1, ... are visited in order, and within a
    stage the names that did not exist at the previous stage come first.
    The image of each in the final stage is kept when its idempotent part
    is independent of those already kept.
    """
    last = system.stages[-1]
    order = last.names
    chosen: dict[str, tuple[int, str]] = {}
    rows: list[np.ndarray] = []
    for i, stage in enumerate(system.stages):
        phi = system.map_between(i, system.depth)
        x = _idempotent_matrix(phi, stage.names, order)
        index = {g: k for k, g in enumerate(stage.names)}
        older = set(system.stages[i - 1].names) if i else set()
        visit = [g for g in stage.names if g not in older] + [g for g in stage.names if g in older]
        for g in visit:
            col = x[:, index[g]]
            if not col.any():
                continue
            if f2_rank(np.array(rows + [col])) > len(rows):
                rows.append(col)
                chosen[g if i == 0 else f"{g}@{i}"] = (i, g)
        if len(rows) == len(order):
            break
    return chosen


def truncated_colimit(base: TypeD | DirectSystem, depth: int | None = None,
                      successor: Successor | None = None) -> ColimitPresentation:
    """Representatives, differential and tail of the system truncated at `depth`.

    `base` may be a prebuilt DirectSystem (then `depth` is ignored).
    """
    if isinstance(base, DirectSystem):
        system = base
    else:
        if depth is None or depth < 3:
            raise ValueError("truncated_colimit needs depth >= 3")
        system = build_system(base, depth, successor)
    if system.depth < 1:
        raise ValueError("need at least one step")
    last = system.stages[-1]
    chosen = choose_representatives(system)
    reps = {n: _image(system.map_between(i, system.depth), g) for n, (i, g) in chosen.items()}
    renames, tail = {}, []
    for n, (i, g) in chosen.items():
        if i > 0:
            tail.append(n)
    # one newborn per stage gets the name nu:<stage>
    per_stage: dict[int, list[str]] = {}
    for n in tail:
        per_stage.setdefault(chosen[n][0], []).append(n)
    if tail and all(len(v) == 1 for v in per_stage.values()):
        renames = {v[0]: f"nu:{i}" for i, v in per_stage.items()}
    reps = {renames.get(n, n): v for n, v in reps.items()}
    chosen = {renames.get(n, n): v for n, v in chosen.items()}
    tail = [renames.get(n, n) for n in tail]
    structure, _ = change_basis(last, reps, name=f"colim({system.base.name})")
    template = tail_template(structure, tail)
    return ColimitPresentation(structure, chosen, tuple(tail), template, system.context)


def tail_template(d: TypeD, tail: list[str]) -> tuple:
    """Arrows out of each tail generator, tail targets written as relative offsets.

    Entry k is a sorted tuple of (label, target) where target is either
    ("nu", j - k) for the j-th tail generator or ("gen", name) otherwise.
    """
    pos = {n: k for k, n in enumerate(tail)}
    out = []
    for k, n in enumerate(tail):
        row = []
        for a, t in d.out[n]:
            row.append((a.label, ("nu", pos[t] - k) if t in pos else ("gen", t)))
        out.append(tuple(sorted(row, key=repr)))
    return tuple(out)


# --------------------------------------------------------- stable part


class DepthTooSmall(ValueError):
    def __init__(self, required: int, given: int):
        super().__init__(f"depth {given} is too small: the unstable chain dies only after "
                         f"{required} steps (need depth >= {required})")
        self.required = required
        self.given = given


def required_depth(c: CfkMinus, i0: int) -> int:
    return -unstable_length(c, i0) + 1


def stable_part(c: CfkMinus, i0: int, depth: int) -> TypeD:
    """The image of A_0 = CFD(K, i0) in A_depth, reduced.

    The image is the span of the images of A_0 generators whose idempotent
    parts are independent; it is closed under the differential because the
    composite map is a chain map.
    """
    if unstable_length(c, i0) >= 0:
        raise ValueError(f"framing {i0} is not below 2 tau = {2 * c.tau}")
    need = required_depth(c, i0)
    if depth < need:
        raise DepthTooSmall(need, depth)
    system = knot_system(c, i0, depth)
    return image_subcomplex(system)


def image_subcomplex(system: DirectSystem) -> TypeD:
    return _image_data(system)[0]


def _image_data(system: DirectSystem) -> tuple[TypeD, DMorphism]:
    """The reduced image of A_0 in the last stage, and A_0 -> reduced image."""
    phi = system.map_between(0, system.depth)
    last = system.stages[-1]
    kept = {n: v for n, v in choose_representatives(system).items() if v[0] == 0}
    # complete to a basis of the last stage with its own generators
    x = _idempotent_matrix(phi, system.base.names, last.names)
    cols = [x[:, system.base.names.index(g)] for _, g in kept.values()]
    extra = {}
    for k, g in enumerate(last.names):
        e = np.zeros(len(last.names), dtype=np.uint8)
        e[k] = 1
        if f2_rank(np.array(cols + [e])) > len(cols):
            cols.append(e)
            extra[f"ambient:{g}"] = DMorphism(last, last, frozenset({(g, Alg.idem(last.idem[g]), g)}))
    reps = {n: _image(phi, g) for n, (_, g) in kept.items()}
    reps.update(extra)
    whole, iso = change_basis(last, reps, name=f"image({system.base.name})")
    leak = [(s, a, t) for s, a, t in whole.arrows if s in kept and t not in kept]
    if leak:
        raise RuntimeError(f"image is not a subcomplex: {leak[0]}")
    sub = _restrict(whole, set(kept))
    coords = compose_d(invert_d(iso), phi)
    stray = [c for c in coords.components if c[2] not in kept]
    if stray:
        raise RuntimeError(f"image leaves the kept span: {stray[0]}")
    reduced, f, _, _ = reduce(sub)
    onto = compose_d(f, DMorphism(system.base, sub, coords.components))
    return reduced, onto


def stable_images(c: CfkMinus, i0: int, depth: int) -> dict[str, DMorphism]:
    """Image of each A_0 generator in the reduced stable part."""
    need = required_depth(c, i0)
    if depth < need:
        raise DepthTooSmall(need, depth)
    _, onto = _image_data(knot_system(c, i0, depth))
    return {g: _image(onto, g) for g in onto.source.names}


def unstable_images(c: CfkMinus, i0: int, depth: int) -> dict[str, DMorphism]:
    """Images in A_depth of the unstable (mu) generators of A_0."""
    system = knot_system(c, i0, depth)
    phi = system.map_between(0, system.depth)
    return {g: _image(phi, g) for g in system.base.names if g.startswith("mu:")}
