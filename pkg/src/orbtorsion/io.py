"""Text formats: ``.tcx`` complex documents, ``.knt`` knot presentations and fillings.

A complex document is line oriented, ``#`` starts a comment::

    group t m
    relation m^3
    curve 1 alpha=3 meridian=m class=t zero=e0 one=e1_2
    cell 0 v
    cell 1 a = m*v - v
    cell 2 f = -t*a + a + m*b - b

Boundary terms are ``coeff * group_word * cell_id`` with the cell id last.
"""
from __future__ import annotations

import re

from .abelian import AbelianGroup, GroupElement, group_from_presentation
from .grouprings import GroupRingElement
from .orbifold import Cell, ComplexError, EquivariantComplex, SingularCurve, validate


class ParseError(ValueError):
    def __init__(self, message, line=0, column=0):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*$")
_CELL = re.compile(r"^(cell\s+\S+\s+\S+(?:\s+curve=\S+)*)\s*=(.*)$")


def _lines(text):
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield n, raw, body


def _col(raw, token):
    i = raw.find(token)
    return i + 1 if i >= 0 else 1


class _Group:
    """The group of a document with its generator names resolved."""

    def __init__(self, names, relations, line):
        self.names = list(names)
        rows = relations
        canonical = self._canonical(rows)
        if canonical is not None:
            self.group = canonical
            self.proj = None
        else:
            G, proj = group_from_presentation(len(self.names), rows)
            self.group, self.proj = G, proj

    def _canonical(self, rows):
        """The group itself when the relations already are in normal form."""
        g = len(self.names)
        orders = [0] * g
        for r in rows:
            nz = [i for i, c in enumerate(r) if c]
            if len(nz) != 1 or r[nz[0]] < 2 or orders[nz[0]]:
                return None
            orders[nz[0]] = r[nz[0]]
        k = next((i for i, o in enumerate(orders) if o), g)
        tors = orders[k:]
        if any(o == 0 for o in tors) or any(b % a for a, b in zip(tors, tors[1:])):
            return None
        return AbelianGroup(k, tuple(tors), tuple(self.names))

    def element(self, exps):
        if self.proj is None:
            return self.group.element(exps)
        return self.proj(self.proj.domain.element(exps))


def _word(text, names, line, raw):
    """Exponent vector of a product ``a^2*b^-1`` of named generators."""
    exps = [0] * len(names)
    text = text.strip()
    if text in ("", "1"):
        return exps
    for factor in text.split("*"):
        factor = factor.strip()
        base, _, power = factor.partition("^")
        base = base.strip()
        if base not in names:
            raise ParseError(f"unknown group generator {base!r}", line, _col(raw, base))
        try:
            k = int(power) if power else 1
        except ValueError:
            raise ParseError(f"bad exponent in {factor!r}", line, _col(raw, factor)) from None
        exps[names.index(base)] += k
    return exps


def _expression(text, gr: _Group, line, raw):
    """Formal sum mapping cell ids to group-ring coefficients (exponent form)."""
    out = []
    text = text.strip()
    # split on + and - that are not exponent signs
    pieces = re.split(r"(?<![\^])\s*([+-])\s*", text)
    sign = 1
    if pieces and pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    for op, term in zip(pieces[::2], pieces[1::2]):
        sign = -1 if op == "-" else 1
        factors = [x.strip() for x in term.split("*")]
        if not factors or not factors[-1]:
            raise ParseError("empty boundary term", line, _col(raw, term))
        cell = factors[-1]
        if not _NAME.match(cell):
            raise ParseError(f"expected a cell id, got {cell!r}", line, _col(raw, cell))
        coeff = 1
        rest = factors[:-1]
        if rest and re.fullmatch(r"\d+", rest[0]):
            coeff = int(rest[0])
            rest = rest[1:]
        exps = _word("*".join(rest), gr.names, line, raw)
        out.append((cell, sign * coeff, exps))
    return out


def parse_complex(text: str, check=True) -> EquivariantComplex:
    """Parse a ``.tcx`` document; raises ParseError or ComplexError."""
    names = None
    gline = 0
    relations = []
    curves = []
    cells = []
    pending = []
    name = ""
    for n, raw, body in _lines(text):
        toks = body.split()
        key = toks[0]
        if key == "name":
            name = body.split(None, 1)[1].strip() if len(toks) > 1 else ""
        elif key == "group":
            if names is not None:
                raise ParseError("second group block", n, 1)
            names = toks[1:]
            gline = n
            for t in names:
                if not _NAME.match(t):
                    raise ParseError(f"bad generator name {t!r}", n, _col(raw, t))
            if len(set(names)) != len(names):
                raise ParseError("repeated generator name", n, 1)
        elif key == "relation":
            if names is None:
                raise ParseError("relation before group block", n, 1)
            relations.append(_word(" ".join(toks[1:]), names, n, raw))
        elif key == "curve":
            if names is None:
                raise ParseError("curve before group block", n, 1)
            try:
                idx = int(toks[1])
                opts = dict(t.split("=", 1) for t in toks[2:])
                curves.append((n, raw, idx, int(opts["alpha"]), opts["meridian"], opts["class"],
                               opts["zero"], opts["one"]))
            except (IndexError, ValueError, KeyError):
                raise ParseError("curve needs: index alpha= meridian= class= zero= one=", n, 1) from None
        elif key == "cell":
            m = _CELL.match(body)
            head, expr = (m.group(1), m.group(2)) if m else (body, "")
            htoks = head.split()
            if len(htoks) < 3:
                raise ParseError("cell needs a dimension and an id", n, 1)
            try:
                dim = int(htoks[1])
            except ValueError:
                raise ParseError(f"bad dimension {htoks[1]!r}", n, _col(raw, htoks[1])) from None
            cid = htoks[2]
            if not _NAME.match(cid):
                raise ParseError(f"bad cell id {cid!r}", n, _col(raw, cid))
            curve = None
            for opt in htoks[3:]:
                if opt.startswith("curve="):
                    try:
                        curve = int(opt[6:])
                    except ValueError:
                        raise ParseError(f"bad curve tag {opt!r}", n, _col(raw, opt)) from None
                else:
                    raise ParseError(f"unknown cell option {opt!r}", n, _col(raw, opt))
            cells.append(Cell(cid, dim, curve))
            if expr.strip():
                pending.append((n, raw, cid, expr))
        else:
            raise ParseError(f"unknown keyword {key!r}", n, _col(raw, key))
    if names is None:
        raise ParseError("no group block")
    gr = _Group(names, relations, gline)
    G = gr.group
    ids = {c.id for c in cells}
    bd = {}
    for n, raw, cid, expr in pending:
        faces = {}
        for face, c, exps in _expression(expr, gr, n, raw):
            if face not in ids:
                raise ParseError(f"unknown cell id {face!r}", n, _col(raw, face))
            g = gr.element(exps)
            faces[face] = faces.get(face, GroupRingElement(G)) + GroupRingElement(G, {g.coords: c})
        bd[cid] = faces
    cv = []
    for n, raw, idx, alpha, mer, cls, zero, one in curves:
        cv.append(SingularCurve(idx, alpha, gr.element(_word(mer, names, n, raw)),
                                gr.element(_word(cls, names, n, raw)), zero, one))
    X = EquivariantComplex(G, cells, bd, cv, name)
    if check:
        diags = validate(X)
        if diags:
            raise ComplexError(diags)
    return X


def render_word(g: GroupElement) -> str:
    return g.word()


def render_coefficient_terms(x: GroupRingElement, cell: str):
    """Terms ``(sign, text)`` of ``x * cell`` in deterministic order."""
    out = []
    for k in sorted(x.terms):
        c = x.terms[k]
        word = x.group.element(k).word()
        parts = []
        if abs(c) != 1:
            parts.append(str(abs(c)))
        if word != "1":
            parts.append(word)
        parts.append(cell)
        out.append(("-" if c < 0 else "+", "*".join(parts)))
    return out


def render_complex(X: EquivariantComplex) -> str:
    """The ``.tcx`` document of X (canonical group presentation)."""
    G = X.group
    names = G.generator_names()
    lines = []
    if X.name:
        lines.append(f"name {X.name}")
    lines.append("group " + " ".join(names))
    for name, o in zip(names[G.free_rank:], G.invariant_factors):
        lines.append(f"relation {name}^{o}")
    for cv in X.curves:
        lines.append(f"curve {cv.index} alpha={cv.alpha} meridian={cv.meridian.word()} "
                     f"class={cv.curve_class.word()} zero={cv.zero_cell} one={cv.one_cell}")
    for c in X.all_cells():
        head = f"cell {c.dim} {c.id}" + (f" curve={c.curve}" if c.singular else "")
        terms = []
        for face in (f.id for f in (X.cells[c.dim - 1] if c.dim else [])):
            x = X.faces(c.id).get(face)
            if x:
                terms += render_coefficient_terms(x, face)
        if terms:
            expr = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for s, t in terms[1:]:
                expr += f" {s} {t}"
            head += " = " + expr
        lines.append(head)
    return "\n".join(lines) + "\n"


# knot presentations ----------------------------------------------------
def parse_knot(text: str):
    """``generators x y`` then one ``relator`` line per relator word."""
    from .builders import KnotPresentation
    gens = None
    rels = []
    name = ""
    for n, raw, body in _lines(text):
        toks = body.split()
        if toks[0] == "name":
            name = body.split(None, 1)[1].strip() if len(toks) > 1 else ""
        elif toks[0] == "generators":
            gens = toks[1:]
        elif toks[0] == "relator":
            if gens is None:
                raise ParseError("relator before generators line", n, 1)
            word = []
            for t in toks[1:]:
                base, _, p = t.partition("^")
                if base not in gens:
                    raise ParseError(f"unknown generator {base!r}", n, _col(raw, t))
                try:
                    k = int(p) if p else 1
                except ValueError:
                    raise ParseError(f"bad exponent in {t!r}", n, _col(raw, t)) from None
                i = gens.index(base) + 1
                word += [i if k > 0 else -i] * abs(k)
            rels.append(word)
        else:
            raise ParseError(f"unknown keyword {toks[0]!r}", n, _col(raw, toks[0]))
    if gens is None:
        raise ParseError("no generators line")
    try:
        return KnotPresentation(len(gens), rels, name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def render_knot(K, names=None) -> str:
    names = names or [chr(ord("x") + i) if i < 3 else f"g{i}" for i in range(K.generators)]
    lines = [f"name {K.name}"] if K.name else []
    lines.append("generators " + " ".join(names))
    for r in K.relators:
        lines.append("relator " + " ".join(names[abs(x) - 1] + ("^-1" if x < 0 else "") for x in r))
    return "\n".join(lines) + "\n"


# fillings --------------------------------------------------------------
def parse_filling(text: str):
    """``torus v a b f``, ``alpha k`` and optional ``prefix P`` lines."""
    from .builders import FillingData
    torus, alpha, prefix = None, 1, "V."
    for n, raw, body in _lines(text):
        toks = body.split()
        if toks[0] == "torus":
            if len(toks) != 5:
                raise ParseError("torus needs four cell ids: v a b f", n, 1)
            torus = tuple(toks[1:])
        elif toks[0] == "alpha":
            try:
                alpha = int(toks[1])
            except (IndexError, ValueError):
                raise ParseError("alpha needs an integer", n, 1) from None
        elif toks[0] == "prefix":
            prefix = toks[1] if len(toks) > 1 else ""
        else:
            raise ParseError(f"unknown keyword {toks[0]!r}", n, _col(raw, toks[0]))
    if torus is None:
        raise ParseError("no torus line")
    return FillingData(torus, alpha, prefix=prefix)


def render_filling(f) -> str:
    return f"torus {' '.join(f.torus)}\nalpha {f.alpha}\nprefix {f.prefix}\n"


def parse_group_word(text: str, group: AbelianGroup) -> GroupElement:
    names = list(group.generator_names())
    return group.element(_word(text, names, 0, text))
