"""Command-line front end: ``orbtorsion <command> ...``."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .abelian import AbelianGroup
from .builders import (GluingError, fox_alexander, glue, remove_singular_curve,
                       verify_curve_removal, verify_gluing, verify_underlying_decomposition)
from .grouprings import canonical_components
from .io import (ParseError, parse_complex, parse_filling, parse_group_word, parse_knot,
                 render_complex)
from .orbifold import (ComplexError, EulerStructure, HomologyOrientation, UnderlyingMismatch,
                       component_torsion, euler_act, euler_to_underlying, tau0)
from .torsion import TorsionError

OK, INVALID, PARSE, MISMATCH = 0, 1, 2, 3


@dataclass
class CommandResult:
    status: int
    text: str


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _complex(path):
    return parse_complex(_read(path))


def _euler(X, args):
    if not args.euler:
        return EulerStructure.reference(X)
    return EulerStructure(parse_group_word(args.euler, X.group))


def _orientation(X, args):
    return HomologyOrientation.pinned(X, args.orientation)


def _components(X, args):
    comps = canonical_components(X.group)
    if args.component in (None, "all"):
        return comps
    try:
        k = int(args.component)
    except ValueError:
        raise ValueError(f"bad component {args.component!r}") from None
    if not 1 <= k <= len(comps):
        raise ValueError(f"component {k} out of range 1..{len(comps)}")
    return [comps[k - 1]]


def _group_line(G: AbelianGroup):
    return f"group: {G!r}  generators: {' '.join(G.generator_names())}"


def render_laurent(p, var="t"):
    if not p:
        return "0"
    parts = []
    for (k,), c in sorted(p.items(), key=lambda kv: -kv[0][0]):
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        a = abs(c)
        body = (str(a) if not mono else mono if a == 1 else f"{a}*{mono}")
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def cmd_compute(args):
    X = _complex(args.file)
    e, w = _euler(X, args), _orientation(X, args)
    s = tau0(X, w)
    lines = [f"complex: {X.name or args.file}", _group_line(X.group),
             f"euler offset: {e.offset.word()}  orientation: {args.orientation:+d}"]
    for c in _components(X, args):
        v = component_torsion(X, c, e, w, sign=s)
        lines.append(f"component {c.index + 1}  conductor {c.character.order}  "
                     f"chi {list(c.character.exponents)}  tau = {v.render()}")
    return OK, "\n".join(lines)


def cmd_split(args):
    X = _complex(args.file)
    lines = [_group_line(X.group)]
    for c in canonical_components(X.group):
        names = ", ".join(c.field.names) or "-"
        lines.append(f"component {c.index + 1}  conductor {c.character.order}  "
                     f"chi {list(c.character.exponents)}  variables {names}")
    return OK, "\n".join(lines)


def cmd_glue(args):
    E = _complex(args.file)
    f = parse_filling(_read(args.filling))
    return OK, render_complex(glue(E, f).Y).rstrip("\n")


def _report_result(report):
    return (OK if report.ok else MISMATCH), report.render()


def cmd_verify_gluing(args):
    E = _complex(args.file)
    f = parse_filling(_read(args.filling))
    return _report_result(verify_gluing(E, f, _euler(E, args), _orientation(E, args)))


def cmd_remove_curve(args):
    Y = _complex(args.file)
    if args.check:
        return _report_result(verify_curve_removal(Y, args.index, _euler(Y, args),
                                                   _orientation(Y, args)))
    Yp, _ = remove_singular_curve(Y, args.index)
    return OK, render_complex(Yp).rstrip("\n")


def cmd_verify_decomposition(args):
    E = _complex(args.file)
    f = parse_filling(_read(args.filling))
    return _report_result(verify_underlying_decomposition(E, f, _euler(E, args),
                                                          _orientation(E, args)))


def cmd_alexander(args):
    K = parse_knot(_read(args.file))
    return OK, render_laurent(fox_alexander(K))


def cmd_euler(args):
    X = _complex(args.file)
    e = _euler(X, args)
    G = X.group
    lines = [_group_line(G)]
    if G.is_finite():
        lines.append("euler structures (offsets): " + " ".join(g.word() for g in G.elements()))
    else:
        lines.append("euler structures: a torsor over the infinite group; offsets are group words")
    lines.append(f"e = {e.offset.word()}")
    if args.act:
        h = parse_group_word(args.act, G)
        lines.append(f"{h.word()} . e = {euler_act(h, e).offset.word()}")
    try:
        lines.append(f"image in Eul(|Y|): {euler_to_underlying(X, e).offset.word()}")
    except UnderlyingMismatch as exc:
        lines.append(f"image in Eul(|Y|): undefined ({exc})")
    return OK, "\n".join(lines)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--euler", help="Euler structure as an offset group word")
    common.add_argument("--orientation", type=int, choices=(1, -1), default=1,
                        help="sign relative to the reference homology orientation")
    common.add_argument("--component", default="all", help="component index (1-based) or 'all'")
    common.add_argument("--report", help="also write the output to this file")
    parser = argparse.ArgumentParser(prog="orbtorsion",
                                     description="Turaev torsion of 3-manifolds and 3-orbifolds")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for arg, kw in positional:
            p.add_argument(arg, **kw)
        p.set_defaults(func=func)
        return p

    add("compute", cmd_compute, ("file", {}), help="torsion vector of a complex")
    add("split", cmd_split, ("file", {}), help="list splitting components")
    add("glue", cmd_glue, ("file", {}), ("filling", {}), help="fill a boundary torus")
    add("verify-gluing", cmd_verify_gluing, ("file", {}), ("filling", {}),
        help="check the gluing formulas")
    p = add("remove-curve", cmd_remove_curve, ("file", {}), ("index", {"type": int}),
            help="forget a singular curve")
    p.add_argument("--check", action="store_true", help="compare torsions instead of printing")
    add("verify-decomposition", cmd_verify_decomposition, ("file", {}), ("filling", {}),
        help="split the torsion of Y into |Y| and E parts")
    add("alexander", cmd_alexander, ("file", {}), help="Alexander polynomial by Fox calculus")
    p = add("euler", cmd_euler, ("file", {}), help="Euler structures and the group action")
    p.add_argument("--act", help="group word acting on the Euler structure")
    return parser


def run(argv) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult(PARSE if exc.code else OK, "")
    try:
        status, text = args.func(args)
    except ParseError as exc:
        return CommandResult(PARSE, f"parse error: {exc}")
    except ComplexError as exc:
        return CommandResult(INVALID, "invalid complex:\n" + "\n".join(str(d) for d in exc.diagnostics))
    except (GluingError, TorsionError, ValueError) as exc:
        return CommandResult(INVALID, f"error: {exc}")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return CommandResult(status, text)


def main(argv=None):
    result = run(sys.argv[1:] if argv is None else argv)
    if result.text:
        out = sys.stdout if result.status in (OK, MISMATCH) else sys.stderr
        print(result.text, file=out)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
