"""Reduced CFK^- data and its compilation to framed knot-complement type-D modules."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .algebra import Alg
from .library import unstable_arrows
from .structures import TypeD, Violation

Arrow = tuple[str, str, int]  # (src, dst, length)


@dataclass(frozen=True)
class CfkMinus:
    basis: tuple[str, ...]
    vertical: tuple[Arrow, ...]
    horizontal: tuple[Arrow, ...]
    tau: int
    name: str = ""

    @classmethod
    def build(cls, basis, vertical=(), horizontal=(), tau: int = 0, name: str = "") -> "CfkMinus":
        return cls(tuple(basis), tuple((s, t, int(n)) for s, t, n in vertical),
                   tuple((s, t, int(n)) for s, t, n in horizontal), int(tau), name)


def _endpoint_problems(c: CfkMinus, arrows, kind: str) -> list[Violation]:
    out = []
    known = set(c.basis)
    for k, (s, t, n) in enumerate(arrows):
        if s not in known or t not in known:
            out.append(Violation("unknown-generator", (kind, k), f"{kind} arrow {s} -> {t} names an unknown generator"))
        if s == t:
            out.append(Violation("loop", (kind, k), f"{kind} arrow {s} -> {t} is a loop"))
        if n < 1:
            out.append(Violation("not-reduced", (kind, k), f"{kind} arrow {s} -> {t} has length {n} < 1"))
    touched = Counter(g for s, t, _ in arrows for g in (s, t))
    for g, k in sorted(touched.items()):
        if k > 1:
            out.append(Violation("not-simplified", (kind, g), f"{g} lies on {k} {kind} arrows"))
    return out


def _untouched(c: CfkMinus, arrows) -> list[str]:
    touched = {g for s, t, _ in arrows for g in (s, t)}
    return [g for g in c.basis if g not in touched]


def validate_cfk(c: CfkMinus) -> list[Violation]:
    """Check reducedness, simplified bases and uniqueness of xi0 / eta0."""
    out = []
    dup = sorted(g for g, k in Counter(c.basis).items() if k > 1)
    if dup:
        out.append(Violation("duplicate", tuple(dup), f"duplicate basis names {dup}"))
    shared = {(s, t) for s, t, _ in c.vertical} & {(s, t) for s, t, _ in c.horizontal}
    for s, t in sorted(shared):
        out.append(Violation("diagonal", (s, t), f"{s} -> {t} is both vertical and horizontal"))
    out += _endpoint_problems(c, c.vertical, "vertical")
    out += _endpoint_problems(c, c.horizontal, "horizontal")
    for arrows, label in ((c.vertical, "xi0"), (c.horizontal, "eta0")):
        free = _untouched(c, arrows)
        if len(free) != 1:
            out.append(Violation("distinguished", (label,),
                                 f"{label} must be unique, found {len(free)} candidates {free}"))
    return out


def distinguished(c: CfkMinus) -> tuple[str, str]:
    """(xi0, eta0): the generators on no vertical, resp. no horizontal, arrow."""
    problems = validate_cfk(c)
    if problems:
        raise ValueError("; ".join(map(str, problems)))
    return _untouched(c, c.vertical)[0], _untouched(c, c.horizontal)[0]


def unstable_length(c: CfkMinus, framing: int) -> int:
    """Signed chain length m = framing - 2 tau (|m| mu generators)."""
    return framing - 2 * c.tau


def cfd_from_cfk(c: CfkMinus, framing: int) -> TypeD:
    xi0, eta0 = distinguished(c)
    gens = [(g, 0) for g in c.basis]
    arrows = []
    for k, (s, t, n) in enumerate(c.vertical):
        kap = [f"kappa:{k}:{i}" for i in range(1, n + 1)]
        gens += [(g, 1) for g in kap]
        arrows += [(s, Alg.R1, kap[0]), (t, Alg.R123, kap[-1])]
        arrows += [(kap[i + 1], Alg.R23, kap[i]) for i in range(n - 1)]
    for k, (s, t, n) in enumerate(c.horizontal):
        lam = [f"lambda:{k}:{i}" for i in range(1, n + 1)]
        gens += [(g, 1) for g in lam]
        arrows += [(s, Alg.R3, lam[0]), (lam[-1], Alg.R2, t)]
        arrows += [(lam[i], Alg.R23, lam[i + 1]) for i in range(n - 1)]
    mu_gens, mu_arrows = unstable_arrows(xi0, eta0, unstable_length(c, framing))
    label = c.name or "K"
    return TypeD.build(gens + mu_gens, arrows + mu_arrows, name=f"CFD({label},{framing})")


# ------------------------------------------------------------------ library

_KNOTS = {
    "unknot": lambda: CfkMinus.build(["x"], tau=0, name="unknot"),
    "trefoil_rh": lambda: CfkMinus.build(
        ["a", "b", "c"], vertical=[("b", "c", 1)], horizontal=[("b", "a", 1)], tau=1,
        name="trefoil_rh"),
    "figure_eight": lambda: CfkMinus.build(
        ["a", "b", "c", "d", "e"],
        vertical=[("a", "c", 1), ("b", "d", 1)], horizontal=[("a", "b", 1), ("c", "d", 1)],
        tau=0, name="figure_eight"),
}

KNOT_NAMES = tuple(_KNOTS)


def builtin_knot(name: str) -> CfkMinus:
    try:
        return _KNOTS[name]()
    except KeyError:
        raise KeyError(f"unknown knot {name!r}; known: {', '.join(KNOT_NAMES)}") from None


# --------------------------------------------------------------- text format


class CfkParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_cfk(text: str) -> CfkMinus:
    name, tau, basis = "", None, []
    arrows: dict[str, list] = {"vert": [], "horiz": []}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "knot" and len(rest) == 1:
            name = rest[0]
        elif head == "tau" and len(rest) == 1:
            try:
                tau = int(rest[0])
            except ValueError:
                raise CfkParseError(no, f"tau must be an integer, got {rest[0]!r}") from None
        elif head == "gens" and rest:
            basis += rest
        elif head in arrows:
            if len(rest) != 5 or rest[1] != "->" or rest[3] != "len":
                raise CfkParseError(no, f"expected '{head} <src> -> <dst> len <int>'")
            try:
                n = int(rest[4])
            except ValueError:
                raise CfkParseError(no, f"length must be an integer, got {rest[4]!r}") from None
            arrows[head].append((rest[0], rest[2], n))
        else:
            raise CfkParseError(no, f"unrecognised line {line!r}")
    if tau is None:
        raise CfkParseError(0, "missing 'tau' line")
    return CfkMinus.build(basis, arrows["vert"], arrows["horiz"], tau, name)


def format_cfk(c: CfkMinus) -> str:
    lines = []
    if c.name:
        lines.append(f"knot {c.name}")
    lines.append(f"tau {c.tau}")
    lines.append("gens " + " ".join(c.basis))
    lines += [f"vert {s} -> {t} len {n}" for s, t, n in c.vertical]
    lines += [f"horiz {s} -> {t} len {n}" for s, t, n in c.horizontal]
    return "\n".join(lines) + "\n"


def load_knot(spec: str) -> CfkMinus:
    """A builtin knot name or a path to a CFK text file."""
    if spec in _KNOTS:
        return builtin_knot(spec)
    return parse_cfk(Path(spec).read_text(encoding="utf-8"))
