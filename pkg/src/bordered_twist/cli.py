"""Command-line frontend and the line-based module file format."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Union

from .algebra import Alg, DDCoeff, parse_alg
from .direct_limit import (DepthTooSmall, build_system, detect_periodicity, fragment_system,
                           knot_system, stable_part, truncated_colimit, unstable_system)
from .knot_cfd import CfkParseError, cfd_from_cfk, load_knot, parse_cfk, validate_cfk
from .library import (builtin, cfdd_identity, cfdd_twist, component_coordinate, horizontal_chain,
                      unstable_chain, vertical_chain)
from .morphisms import mor_dd_homology, mor_dd_matrix
from .reduction import is_isomorphic
from .structures import (TypeAA, TypeD, TypeDA, TypeDD, validate_type_aa, validate_type_d,
                         validate_type_da, validate_type_dd)
from .tensor import DepthCapError

Structure = Union[TypeD, TypeDD, TypeDA, TypeAA]

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3


class ModuleParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ------------------------------------------------------------ module format


def _parse_idem(tok: str, no: int):
    t = tok.replace(" ", "")
    if t in ("0", "1"):
        return int(t)
    if len(t) == 5 and t[0] == "(" and t[2] == "," and t[4] == ")" and t[1] in "01" and t[3] in "01":
        return (int(t[1]), int(t[3]))
    raise ModuleParseError(no, f"bad idempotent {tok!r}")


def _alg(tok: str, no: int) -> Alg:
    try:
        return parse_alg(tok)
    except ValueError as e:
        raise ModuleParseError(no, str(e)) from None


def parse_module(text: str) -> Structure:
    name, kind, right = "", None, False
    gens, d_lines, op_lines, aa_lines = [], [], [], []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        toks = rest.split()
        if head == "module":
            name = rest.strip()
        elif head == "kind":
            if not toks or toks[0] not in ("D", "DD", "DA", "AA") or toks[1:] not in ([], ["right"]):
                raise ModuleParseError(no, "expected 'kind D|DD|DA|AA [right]'")
            kind, right = toks[0], toks[1:] == ["right"]
        elif head == "generator":
            if len(toks) < 3 or toks[1] != "idem":
                raise ModuleParseError(no, "expected 'generator <name> idem <i>'")
            gens.append((toks[0], _parse_idem("".join(toks[2:]), no)))
        elif head == "d":
            if len(toks) not in (4, 5) or toks[1] != "->":
                raise ModuleParseError(no, "expected 'd <src> -> <coeff> <dst>'")
            coeff = [_alg(t, no) for t in toks[2:-1]]
            if len(coeff) == 2 and not (toks[2].startswith(("rho", "i")) and toks[3].startswith(("sigma", "j"))):
                raise ModuleParseError(no, "a DD coefficient is '<rho> <sigma>'")
            d_lines.append((no, toks[0], coeff, toks[-1]))
        elif head == "op":
            op_lines.append((no, *_parse_op(toks, no)))
        elif head == "aa":
            aa_lines.append((no, *_parse_aa(toks, no)))
        else:
            raise ModuleParseError(no, f"unrecognised line {line!r}")
    if kind is None:
        kind = _infer_kind(gens, d_lines, op_lines, aa_lines)
    try:
        return _assemble(kind, right, name, gens, d_lines, op_lines, aa_lines)
    except ModuleParseError:
        raise
    except ValueError as e:
        raise ModuleParseError(0, str(e)) from None


def _parse_op(toks, no):
    # op <src> [in <a>...] out <b> <dst>
    if len(toks) < 4 or "out" not in toks:
        raise ModuleParseError(no, "expected 'op <src> [in <a>...] out <b> <dst>'")
    k = toks.index("out")
    ins = toks[1:k]
    if ins and ins[0] == "in":
        ins = ins[1:]
    elif ins:
        raise ModuleParseError(no, "inputs must follow 'in'")
    if len(toks) != k + 3:
        raise ModuleParseError(no, "expected '... out <b> <dst>'")
    return toks[0], tuple(_alg(t, no) for t in ins), _alg(toks[k + 1], no), toks[k + 2]


def _parse_aa(toks, no):
    # aa <src> sigma <s>... rho <r>... -> <dst>
    if len(toks) < 5 or toks[1] != "sigma" or "rho" not in toks or toks[-2] != "->":
        raise ModuleParseError(no, "expected 'aa <src> sigma <s>... rho <r>... -> <dst>'")
    k = toks.index("rho")
    sig = tuple(_alg(t, no) for t in toks[2:k])
    rho = tuple(_alg(t, no) for t in toks[k + 1:-2])
    return toks[0], sig, rho, toks[-1]


def _infer_kind(gens, d_lines, op_lines, aa_lines) -> str:
    if op_lines:
        return "DA"
    if aa_lines:
        return "AA"
    if gens and isinstance(gens[0][1], tuple):
        return "DD"
    return "D"


def _assemble(kind, right, name, gens, d_lines, op_lines, aa_lines) -> Structure:
    pairs = kind != "D"
    for g, i in gens:
        if isinstance(i, tuple) != pairs:
            raise ModuleParseError(0, f"generator {g}: idempotent shape does not fit a {kind} structure")
    stray = {"D": op_lines + aa_lines, "DD": op_lines + aa_lines,
             "DA": d_lines + aa_lines, "AA": d_lines + op_lines}[kind]
    if stray:
        raise ModuleParseError(stray[0][0], f"line does not belong in a {kind} structure")
    if kind == "D":
        arrows = []
        for no, s, c, t in d_lines:
            if len(c) != 1:
                raise ModuleParseError(no, "a type-D coefficient is a single algebra element")
            arrows.append((s, c[0], t))
        return TypeD.build(gens, arrows, name=name, right=right)
    if kind == "DD":
        arrows = []
        for no, s, c, t in d_lines:
            if len(c) != 2:
                raise ModuleParseError(no, "a DD coefficient is '<rho> <sigma>'")
            arrows.append((s, DDCoeff(*c), t))
        return TypeDD.build(gens, arrows, name=name)
    if kind == "DA":
        return TypeDA.build(gens, [op[1:] for op in op_lines], name=name)
    return TypeAA.build(gens, [op[1:] for op in aa_lines], name=name)


def _idem_text(i) -> str:
    return f"({i[0]},{i[1]})" if isinstance(i, tuple) else str(i)


def format_module(s: Structure) -> str:
    kind = {TypeD: "D", TypeDD: "DD", TypeDA: "DA", TypeAA: "AA"}[type(s)]
    lines = [f"module {s.name}" if s.name else "module"]
    lines.append(f"kind {kind} right" if kind == "D" and s.right else f"kind {kind}")
    lines += [f"generator {g.name} idem {_idem_text(g.idem)}" for g in s.generators]
    if isinstance(s, TypeD):
        lines += [f"d {a} -> {c.text('rho')} {b}" for a, c, b in s.sorted_arrows()]
    elif isinstance(s, TypeDD):
        for a, c, b in sorted(s.arrows, key=lambda e: (e[0], int(e[1].rho), int(e[1].sigma), e[2])):
            lines.append(f"d {a} -> {c.text()} {b}")
    elif isinstance(s, TypeDA):
        for a, ins, out, b in s.sorted_ops():
            inp = " in " + " ".join(x.text("sigma") for x in ins) if ins else ""
            lines.append(f"op {a}{inp} out {out.text('rho')} {b}")
    else:
        for a, si, ri, b in sorted(s.ops, key=lambda o: (o[0], tuple(map(int, o[1])), tuple(map(int, o[2])), o[3])):
            sig = "".join(" " + x.text("sigma") for x in si)
            rho = "".join(" " + x.text("rho") for x in ri)
            lines.append(f"aa {a} sigma{sig} rho{rho} -> {b}")
    return "\n".join(lines) + "\n"


def _looks_like_cfk(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0] in ("knot", "tau", "gens", "vert", "horiz")
    return False


def load_structure(spec: str) -> Structure:
    """A builtin name (e.g. 'CFDD_I', 'horizontal_chain(3)') or a module file path."""
    try:
        return builtin(spec)
    except KeyError:
        pass
    path = Path(spec)
    if not path.exists():
        raise FileNotFoundError(f"{spec!r} is neither a builtin nor a file")
    return parse_module(path.read_text(encoding="utf-8"))


def validate(s: Structure, bound: int = 4) -> list:
    if isinstance(s, TypeD):
        return validate_type_d(s)
    if isinstance(s, TypeDD):
        return validate_type_dd(s)
    if isinstance(s, TypeDA):
        return validate_type_da(s, bound)
    return validate_type_aa(s)


# --------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    src = args.path
    path = Path(src)
    if path.exists() and _looks_like_cfk(path.read_text(encoding="utf-8")):
        c = parse_cfk(path.read_text(encoding="utf-8"))
        problems = validate_cfk(c)
    else:
        s = load_structure(src)
        problems = validate(s, args.bound)
    if problems:
        for p in problems:
            print(p)
        return EXIT_INVALID
    print("ok")
    return EXIT_OK


def _coordinate(comp, named_pair: bool) -> str:
    s, c, t = comp
    if named_pair:
        name = component_coordinate(comp)
        if name:
            return f"({name})"
    return f"({s}, {c.rho.text('rho')}, {c.sigma.text('sigma')}, {t})"


def _combo(comps, named_pair: bool) -> str:
    if not comps:
        return "0"
    labels = [_coordinate(c, named_pair) for c in comps]
    return " + ".join(sorted(labels, key=_coord_key))


def _coord_key(label: str):
    core = label.strip("()")
    if core[:1] in "ab" and core[1:].isdigit():
        return (0, core[0], int(core[1:]))
    return (1, core, 0)


def cmd_mor(args) -> int:
    m, n = load_structure(args.source), load_structure(args.target)
    if not (isinstance(m, TypeDD) and isinstance(n, TypeDD)):
        print("mor needs two type-DD structures", file=sys.stderr)
        return EXIT_INVALID
    named_pair = m == cfdd_identity() and n == cfdd_twist()
    basis, d = mor_dd_matrix(m, n)
    header = f"dim Mor = {len(basis)}"
    if args.homology:
        dim, reps = mor_dd_homology(m, n)
        header += f"; dim H = {dim}"
    print(header)
    rows = []
    for j, b in enumerate(basis):
        comp = next(iter(b.components))
        image = [next(iter(basis[i].components)) for i in range(len(basis)) if d[i, j]]
        label = _coordinate(comp, named_pair)
        rows.append((_coord_key(label) if named_pair else (j,), f"d{label} = {_combo(image, named_pair)}"))
    for _, row in sorted(rows):
        print(row)
    if args.homology:
        for k, r in enumerate(reps, 1):
            print(f"H[{k}] = {_combo(sorted(r.components, key=repr), named_pair)}")
    return EXIT_OK


def cmd_cfd(args) -> int:
    c = load_knot(args.knot)
    problems = validate_cfk(c)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return EXIT_INVALID
    d = cfd_from_cfk(c, args.framing)
    text = format_module(d)
    summary = f"{len(d)} generators, {len(d.arrows)} arrows"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(summary)
    else:
        sys.stdout.write(text)
        print(f"# {summary}")
    return EXIT_OK


def _system_for(base: str, depth: int):
    """Parse horizontal:<l>, vertical:<l>, unstable:<n>:<tau>, knot:<name|file>:<n> or a file."""
    kind, _, rest = base.partition(":")
    if kind == "horizontal":
        d = horizontal_chain(int(rest))
        return build_system(d, depth, lambda i: d), d
    if kind == "vertical":
        d = vertical_chain(int(rest))
        return fragment_system(d, depth, lambda i: d), d
    if kind == "unstable":
        n, tau = (int(v) for v in rest.split(":"))
        return unstable_system(n, tau, depth), unstable_chain(n, tau)
    if kind == "knot":
        name, _, framing = rest.rpartition(":")
        c = load_knot(name)
        return knot_system(c, int(framing), depth), cfd_from_cfk(c, int(framing))
    d = load_structure(base)
    if not isinstance(d, TypeD):
        raise ValueError("limit base must be a type-D structure")
    return build_system(d, depth), d


def _print_presentation(p) -> None:
    gens = p.structure.generators
    print(f"colimit of {p.structure.name}: {len(gens)} representatives, {len(p.tail)} in the tail")
    for g in gens:
        stage, orig = p.generators[g.name]
        note = " [context]" if orig in p.context and stage == 0 else ""
        print(f"  generator {g.name} idem {g.idem} from stage {stage} ({orig}){note}")
    for s, a, t in p.structure.sorted_arrows():
        print(f"  d {s} -> {a.text('rho')} {t}")
    if p.template:
        print("tail template (offsets relative to each tail generator):")
        for name, row in zip(p.tail, p.template):
            parts = [f"rho{lab} {'nu' + format(tgt[1], '+d') if tgt[0] == 'nu' else tgt[1]}"
                     for lab, tgt in row]
            print(f"  {name}: " + ", ".join(parts))


def cmd_limit(args) -> int:
    if args.stable_part:
        kind, _, rest = args.base.partition(":")
        if kind != "knot":
            print("--stable-part needs a knot:<name>:<framing> base", file=sys.stderr)
            return EXIT_PARSE
        name, _, framing = rest.rpartition(":")
        d = stable_part(load_knot(name), int(framing), args.depth)
        sys.stdout.write(format_module(d))
        return EXIT_OK
    if args.depth < 3:
        print("depth must be at least 3", file=sys.stderr)
        return EXIT_PARSE
    system, base = _system_for(args.base, args.depth)
    p = truncated_colimit(system)
    if not p.tail and is_isomorphic(p.structure, system.base):
        nu = detect_periodicity(system.maps[0], max_power=args.max_power)
        print(f"colimit ≅ base (ν = {nu if nu is not None else 'none'})")
    _print_presentation(p)
    return EXIT_OK


# ------------------------------------------------------------------ entry


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bordered-twist",
                                 description="Bordered Floer computations over the torus algebra.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the structure equation of a module or CFK file")
    v.add_argument("path", help="module file, CFK file or builtin name")
    v.add_argument("--bound", type=int, default=4, help="input-sequence bound for DA structures")
    v.set_defaults(func=cmd_validate)

    m = sub.add_parser("mor", help="morphism complex between two DD structures")
    m.add_argument("--from", dest="source", required=True)
    m.add_argument("--to", dest="target", required=True)
    m.add_argument("--homology", action="store_true")
    m.set_defaults(func=cmd_mor)

    c = sub.add_parser("cfd", help="compile a framed knot-complement module")
    c.add_argument("--knot", required=True, help="builtin knot name or CFK file")
    c.add_argument("--framing", type=int, required=True)
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_cfd)

    li = sub.add_parser("limit", help="truncated direct limit of the framing-increase system")
    li.add_argument("--base", required=True,
                    help="horizontal:<l>, vertical:<l>, unstable:<n>:<tau>, knot:<name>:<n> or a file")
    li.add_argument("--depth", type=int, default=6)
    li.add_argument("--stable-part", action="store_true")
    li.add_argument("--max-power", type=int, default=64)
    li.set_defaults(func=cmd_limit)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ModuleParseError, CfkParseError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (DepthCapError, DepthTooSmall) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FileNotFoundError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
