"""The torus algebra over F2 and pairs of its elements (DD coefficients)."""

from __future__ import annotations

from enum import IntEnum
from itertools import product
from typing import Iterable, NamedTuple

Idem = int  # 0 or 1


class Alg(IntEnum):
    """A basis element of the torus algebra: an idempotent or a Reeb chord."""

    I0 = 0
    I1 = 1
    R1 = 2
    R2 = 3
    R3 = 4
    R12 = 5
    R23 = 6
    R123 = 7

    @property
    def source(self) -> Idem:
        return _ENDS[self][0]

    @property
    def target(self) -> Idem:
        return _ENDS[self][1]

    @property
    def is_idempotent(self) -> bool:
        return self in (Alg.I0, Alg.I1)

    @property
    def label(self) -> str:
        """Chord label such as '12', or '' for an idempotent."""
        return _LABELS[self]

    def text(self, side: str = "rho") -> str:
        if self.is_idempotent:
            return ("i" if side == "rho" else "j") + str(int(self))
        return side + self.label

    @staticmethod
    def idem(i: Idem) -> "Alg":
        return Alg.I1 if i else Alg.I0

    def __str__(self) -> str:
        return self.text()


_LABELS = {
    Alg.I0: "", Alg.I1: "", Alg.R1: "1", Alg.R2: "2", Alg.R3: "3",
    Alg.R12: "12", Alg.R23: "23", Alg.R123: "123",
}

_ENDS = {
    Alg.I0: (0, 0), Alg.I1: (1, 1),
    Alg.R1: (0, 1), Alg.R2: (1, 0), Alg.R3: (0, 1),
    Alg.R12: (0, 0), Alg.R23: (1, 1), Alg.R123: (0, 1),
}

CHORDS = (Alg.R1, Alg.R2, Alg.R3, Alg.R12, Alg.R23, Alg.R123)
IDEMPOTENTS = (Alg.I0, Alg.I1)

_CHORD_BY_INTERVAL = {(lo, hi): c for c in CHORDS
                      for lo, hi in [(int(c.label[0]), int(c.label[-1]))]}


def _chord_product(a: Alg, b: Alg) -> Alg | None:
    # chords concatenate when the second starts right where the first stops
    a_lo, a_hi = int(a.label[0]), int(a.label[-1])
    b_lo, b_hi = int(b.label[0]), int(b.label[-1])
    if b_lo != a_hi + 1:
        return None
    return _CHORD_BY_INTERVAL.get((a_lo, b_hi))


def _build_table() -> dict[tuple[Alg, Alg], Alg | None]:
    table: dict[tuple[Alg, Alg], Alg | None] = {}
    for a, b in product(Alg, Alg):
        if a.target != b.source:
            table[a, b] = None
        elif a.is_idempotent:
            table[a, b] = b
        elif b.is_idempotent:
            table[a, b] = a
        else:
            table[a, b] = _chord_product(a, b)
    return table


MUL_TABLE = _build_table()

AlgValue = frozenset  # an F2 sum of Alg basis elements; empty means zero


def mul(a: Alg, b: Alg) -> Alg | None:
    """Product of two basis elements, or None when it vanishes."""
    return MUL_TABLE[a, b]


def alg_mul(a: Alg, b: Alg) -> frozenset[Alg]:
    p = MUL_TABLE[a, b]
    return frozenset() if p is None else frozenset((p,))


def mul_seq(elts: Iterable[Alg]) -> Alg | None:
    """Ordered product of a non-empty sequence; None as soon as it vanishes."""
    it = iter(elts)
    acc: Alg | None = next(it)
    for e in it:
        acc = MUL_TABLE[acc, e]
        if acc is None:
            return None
    return acc


def alg_d(a: Alg) -> frozenset[Alg]:
    """The differential of the torus algebra, identically zero."""
    return frozenset()


def f2_sum(*values: Iterable[Alg]) -> frozenset[Alg]:
    out: set[Alg] = set()
    for v in values:
        out.symmetric_difference_update(v)
    return frozenset(out)


class DDCoeff(NamedTuple):
    rho: Alg
    sigma: Alg

    def text(self) -> str:
        return f"{self.rho.text('rho')} {self.sigma.text('sigma')}"

    def __str__(self) -> str:
        return self.text()


def dd_mul(c: DDCoeff, d: DDCoeff) -> frozenset[DDCoeff]:
    r = MUL_TABLE[c.rho, d.rho]
    s = MUL_TABLE[c.sigma, d.sigma]
    if r is None or s is None:
        return frozenset()
    return frozenset((DDCoeff(r, s),))


def dd_mul1(c: DDCoeff, d: DDCoeff) -> DDCoeff | None:
    r = MUL_TABLE[c.rho, d.rho]
    s = MUL_TABLE[c.sigma, d.sigma]
    if r is None or s is None:
        return None
    return DDCoeff(r, s)


def parse_alg(token: str) -> Alg:
    """Parse 'rho12', 'sigma3', 'i0', 'j1' (the two prefixes share one type)."""
    t = token.strip()
    if t in ("i0", "j0"):
        return Alg.I0
    if t in ("i1", "j1"):
        return Alg.I1
    for prefix in ("rho", "sigma"):
        if t.startswith(prefix):
            for c in CHORDS:
                if c.label == t[len(prefix):]:
                    return c
    raise ValueError(f"unknown algebra element {token!r}")


def elements_between(src: Idem, dst: Idem) -> tuple[Alg, ...]:
    """All basis elements a with source(a) = src and target(a) = dst."""
    return tuple(a for a in Alg if a.source == src and a.target == dst)
