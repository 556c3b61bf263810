"""Command-line front end: `qsw <verb> [options]`.

Exit codes: 0 success, 1 a checked identity failed, 2 bad usage or an input
outside the operation's domain.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import os
import re
import sys
from dataclasses import dataclass, field

import click

from . import __version__
from .combin import (
    PatternError,
    as_multiindex,
    defect_set,
    dims_B,
    dims_D,
    format_pattern,
    n_of,
    parse_pattern,
    parse_valenced,
    valenced_link_patterns,
    walks_over,
)
from .diagram import (
    DiagramError,
    JWUnavailable,
    LinkState,
    Tangle,
    act_on_state,
    compose,
    gen_L,
    gen_R,
    gen_U,
    gram_matrix,
    jones_wenzl,
    ls_pairing,
    three_vertex,
    valenced_U,
)
from .linalg import rank
from .scalar import InadmissibleError, QSpec, Ring, ScalarError, get_ring, parse_qspec

log = logging.getLogger("qsw")


class UsageProblem(Exception):
    """Bad input detected after option parsing; exits with code 2."""


# ---------------------------------------------------------------------------
# tangle words

_TTOK = re.compile(r"\s*(?:(\d+)|([ULRP])(\d+)|(V)|([ivqz])|(\*\*|[-+*/^(),]))")


class TangleSyntaxError(ValueError):
    pass


@dataclass
class _Node:
    """A tangle expression whose shape is fixed once the top multiindex is known."""

    build: object
    pos: int


class _TangleParser:
    def __init__(self, text: str, ring: Ring):
        self.text, self.ring = text, ring
        self.toks = []
        pos = 0
        body = text.rstrip()
        while pos < len(body):
            m = _TTOK.match(body, pos)
            if not m:
                raise TangleSyntaxError(f"unexpected character {body[pos:pos + 1]!r} at position {pos}")
            start = m.start(m.lastindex)
            if m.group(1):
                self.toks.append(("num", int(m.group(1)), start))
            elif m.group(2):
                self.toks.append(("gen", (m.group(2), int(m.group(3))), start))
            elif m.group(4):
                self.toks.append(("V", "V", start))
            elif m.group(5):
                self.toks.append(("sym", m.group(5), start))
            else:
                op = m.group(6)
                self.toks.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        self.k = 0

    # token helpers
    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.k += 1
        return t

    def expect(self, val):
        kind, v, pos = self.take()
        if v != val:
            raise TangleSyntaxError(f"expected {val!r} at position {pos}")
        return pos

    def width_hint(self) -> int:
        """Smallest node count on the top side that makes every generator meaningful."""
        w = 1
        for kind, val, _ in self.toks:
            if kind == "gen":
                g, i = val
                w = max(w, i if g == "P" else i + 1 if g in "UL" else i - 1)
        for a in range(len(self.toks) - 6):
            if self.toks[a][0] == "V":
                r, t = self.toks[a + 2][1], self.toks[a + 6][1]
                if isinstance(r, int) and isinstance(t, int):
                    w = max(w, r + t)
        return w

    # grammar
    def parse(self):
        if not self.toks:
            raise TangleSyntaxError("empty tangle expression")
        x = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise TangleSyntaxError(f"unexpected {val!r} at position {pos}")
        return x

    def expr(self):
        x = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, pos = self.take()
            y = self.term()
            x = _add(x, y if op == "+" else _neg(y), pos)
        return x

    def term(self):
        x = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            y = self.unary()
            if op == "/":
                if isinstance(y, _Node):
                    raise TangleSyntaxError(f"division by a tangle at position {pos}")
                if y.is_zero():
                    raise TangleSyntaxError(f"division by zero at position {pos}")
                y = y.inverse()
            x = _mul(x, y, pos)
        return x

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return _neg(self.unary())
        if self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        x = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            _, _, pos = self.take()
            if isinstance(x, _Node):
                raise TangleSyntaxError(f"powers of tangles are not supported (position {pos})")
            sign = 1
            while self.peek()[0] == "op" and self.peek()[1] in ("-", "+"):
                sign *= -1 if self.take()[1] == "-" else 1
            kind, val, p2 = self.take()
            if kind != "num":
                raise TangleSyntaxError(f"expected integer exponent at position {p2}")
            x = x ** (sign * val)
        return x

    def atom(self):
        kind, val, pos = self.take()
        ring = self.ring
        if kind == "num":
            return ring.gauss(val)
        if kind == "sym":
            try:
                return ring.parse(val)
            except ScalarError as exc:
                raise TangleSyntaxError(str(exc)) from None
        if kind == "gen":
            return _generator(ring, val[0], val[1], pos)
        if kind == "V":
            self.expect("(")
            nums = []
            for sep in (",", ",", ")"):
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise TangleSyntaxError(f"expected an integer at position {p2}")
                nums.append(v2)
                self.expect(sep)
            return _vertex(ring, *nums, pos)
        if val == "(":
            x = self.expr()
            self.expect(")")
            return x
        if kind is None:
            raise TangleSyntaxError(f"unexpected end of expression at position {pos}")
        raise TangleSyntaxError(f"unexpected {val!r} at position {pos}")


def _lift(x, mi, ring):
    if isinstance(x, _Node):
        return x.build(mi)
    return Tangle.unit(ring, mi).scale(x)


def _add(x, y, pos):
    if not isinstance(x, _Node) and not isinstance(y, _Node):
        return x + y

    def build(mi):
        a = x.build(mi) if isinstance(x, _Node) else None
        b = y.build(mi) if isinstance(y, _Node) else None
        r = (a if a is not None else b).ring
        a = a if a is not None else _lift(x, mi, r)
        b = b if b is not None else _lift(y, mi, r)
        if (a.left, a.right) != (b.left, b.right):
            raise TangleSyntaxError(f"summands have different shapes at position {pos}")
        return a + b

    return _Node(build, pos)


def _neg(x):
    if isinstance(x, _Node):
        return _Node(lambda mi: -x.build(mi), x.pos)
    return -x


def _mul(x, y, pos):
    if not isinstance(x, _Node) and not isinstance(y, _Node):
        return x * y
    if not isinstance(x, _Node):
        return _Node(lambda mi: y.build(mi).scale(x), pos)
    if not isinstance(y, _Node):
        return _Node(lambda mi: x.build(mi).scale(y), pos)

    def build(mi):
        a = x.build(mi)
        b = y.build(a.right)
        try:
            return compose(a, b)
        except DiagramError as exc:
            raise TangleSyntaxError(f"{exc} at position {pos}") from None

    return _Node(build, pos)


def _generator(ring, g, i, pos):
    def build(mi):
        n = n_of(mi)
        flat = all(s == 1 for s in mi)
        try:
            if g == "U":
                if flat:
                    return Tangle.of(ring, gen_U(n, i))
                return valenced_U(mi, i, ring)
            if g == "P":
                if not flat or n != i:
                    raise TangleSyntaxError(f"P{i} needs {i} flat nodes on top, found {mi} (position {pos})")
                return jones_wenzl(i, ring)
            if not flat:
                raise TangleSyntaxError(f"{g}{i} acts on flat nodes only (position {pos})")
            if g == "L":
                return Tangle.of(ring, gen_L(n, i))
            return Tangle.of(ring, gen_R(n + 2, i))
        except DiagramError as exc:
            raise TangleSyntaxError(f"{exc} (position {pos})") from None

    return _Node(build, pos)


def _vertex(ring, r, s, t, pos):
    try:
        Y = three_vertex(r, s, t, ring)
    except InadmissibleError as exc:
        raise TangleSyntaxError(f"{exc} at position {pos}") from None

    def build(mi):
        if tuple(mi) != Y.left and not (n_of(mi) == n_of(Y.left) and all(x == 1 for x in mi) and Y.n <= 2):
            raise TangleSyntaxError(f"V({r},{s},{t}) needs top {Y.left}, found {tuple(mi)} (position {pos})")
        return Tangle(ring, tuple(mi), Y.right, Y.terms)

    return _Node(build, pos)


def parse_tangle(text: str, ring: Ring | None = None, top=None) -> Tangle:
    """Evaluate a tangle word; `top` is the multiindex on the top side (inferred if omitted)."""
    ring = ring or get_ring()
    p = _TangleParser(text, ring)
    node = p.parse()
    mi = tuple(top) if top else (1,) * p.width_hint()
    return _lift(node, mi, ring)


# ---------------------------------------------------------------------------
# output


@dataclass
class Output:
    data: dict
    header: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    text: str | None = None
    ok: bool = True

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            if self.header:
                w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        if self.text is not None:
            return self.text.rstrip("\n") + "\n"
        return _table(self.header, self.rows)


def _table(header, rows) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    if not cells or not cells[0]:
        return ""
    widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _status(ok: bool) -> str:
    return "pass" if ok else "FAIL"


# ---------------------------------------------------------------------------
# option parsing


def _multiindex(text: str | None, required: bool = True):
    if text is None:
        if required:
            raise UsageProblem("--multiindex is required")
        return None
    try:
        return as_multiindex(int(x) for x in text.split(",") if x.strip())
    except (ValueError, PatternError) as exc:
        raise UsageProblem(f"bad multiindex {text!r}: {exc}") from None


def _qspec(text: str | None) -> QSpec:
    try:
        return parse_qspec(text or "generic")
    except ScalarError as exc:
        raise UsageProblem(str(exc)) from None


def _specialized(spec: QSpec, notes: list) -> Ring:
    """The ring to use for rank computations; generic q is replaced by v = 2."""
    if spec.mode == "generic":
        notes.append("generic q: computed at the exact point rational:2/1")
        return get_ring(QSpec.rational(2))
    if spec.mode == "float":
        raise UsageProblem("rank computations need an exact q; float mode is rejected")
    return get_ring(spec)


def _fmt_mi(mi) -> str:
    return ",".join(map(str, mi))


# ---------------------------------------------------------------------------
# verbs


def cmd_dims(mi, spec, opts) -> Output:
    D = dims_D(mi)
    B = dims_B(mi)
    rows, data_rows = [], []
    total = 0
    ok = True
    for s in sorted(set(D) | set(B)):
        d = D.get(s, 0)
        npat = len(valenced_link_patterns(mi, s))
        nwalk = sum(1 for w in walks_over(mi) if w[-1] == s)
        good = d == npat == nwalk
        ok &= good
        total += (s + 1) * d
        rows.append([s, d, B.get(s, 0), (s + 1) * d, npat, _status(good)])
        data_rows.append({"s": s, "D": d, "B": B.get(s, 0), "weighted": (s + 1) * d, "patterns": npat, "walks": nwalk})
    prod = 1
    for s in mi:
        prod *= s + 1
    ok &= total == prod
    header = ["s", "D", "B", "(s+1)D", "patterns", "check"]
    footer = f"sum (s+1)D = {total}   prod (s_i+1) = {prod}   {_status(total == prod)}"
    text = _table(header, rows) + footer
    return Output(
        {"command": "dims", "multiindex": list(mi), "rows": data_rows, "sum_weighted": total, "dim_V": prod, "ok": ok},
        header,
        rows,
        text,
        ok,
    )


def cmd_walks(mi, spec, opts) -> Output:
    s = opts.get("defects")
    ws = [w for w in walks_over(mi) if s is None or w[-1] == s]
    rows = [[_fmt_mi(w), w[-1]] for w in ws]
    return Output(
        {"command": "walks", "multiindex": list(mi), "walks": [list(w) for w in ws]},
        ["walk", "defects"],
        rows,
    )


def cmd_patterns(mi, spec, opts) -> Output:
    if mi is None:
        if not opts.get("pattern"):
            raise UsageProblem("--multiindex is required")
        mi = _pattern_arg(opts["pattern"], None).multiindex
    s = opts.get("defects")
    pats = valenced_link_patterns(mi, s)
    rows = [[format_pattern(p.base), _fmt_mi(p.walk), p.s] for p in pats]
    data = {"command": "patterns", "multiindex": list(mi), "patterns": [
        {"pattern": format_pattern(p.base), "walk": list(p.walk), "defects": p.s} for p in pats]}
    if opts.get("pattern"):
        p = _pattern_arg(opts["pattern"], mi)
        data["parsed"] = {"pattern": format_pattern(p.base), "walk": list(p.walk), "defects": p.s}
        rows = [[format_pattern(p.base), _fmt_mi(p.walk), p.s]]
    return Output(data, ["pattern", "walk", "defects"], rows)


def _pattern_arg(text, mi):
    try:
        if text.startswith("walk:"):
            p = parse_valenced(text)
        else:
            base = parse_pattern(text)
            mi = mi or (1,) * base.n
            from .combin import ValencedLinkPattern

            p = ValencedLinkPattern(base, tuple(mi))
    except PatternError as exc:
        raise UsageProblem(f"bad pattern {text!r}: {exc}") from None
    if mi and tuple(p.multiindex) != tuple(mi):
        raise UsageProblem(f"pattern is over {p.multiindex}, not {mi}")
    return p


def _tangle_json(T: Tangle) -> dict:
    ring = T.ring
    return {
        "left": list(T.left),
        "right": list(T.right),
        "terms": [{"diagram": str(d), "c": ring.fmt(c)} for d, c in T.sorted_terms()],
    }


def _tangle_rows(T: Tangle):
    return [[str(d), T.ring.fmt(c)] for d, c in T.sorted_terms()]


def cmd_jw(mi, spec, opts) -> Output:
    size = opts.get("size")
    if size is None:
        raise UsageProblem("jw needs --size")
    ring = get_ring(spec)
    P = jones_wenzl(size, ring)
    data = {"command": "jw", "size": size, "q": str(spec), "tangle": _tangle_json(P)}
    ok = True
    lines = []
    if opts.get("check"):
        P2 = compose(P, P) == P
        kill = True
        for i in range(1, size):
            U = Tangle.of(ring, gen_U(size, i))
            kill &= compose(U, P).is_zero() and compose(P, U).is_zero()
        ok = P2 and kill
        data["checks"] = {"P1_idempotent": P2, "P2_killed_by_U": kill}
        lines = [f"P1 idempotent        {_status(P2)}", f"P2 U_i P = P U_i = 0  {_status(kill)}"]
        rows = [["P1_idempotent", _status(P2)], ["P2_killed_by_U", _status(kill)]]
        return Output(data, ["check", "result"], rows, "\n".join(lines), ok)
    return Output(data, ["diagram", "c"], _tangle_rows(P), None, ok)


def cmd_eval(mi, spec, opts) -> Output:
    expr = opts.get("expr")
    if not expr:
        raise UsageProblem("eval needs --expr")
    ring = get_ring(spec)
    if mi is None and opts.get("pattern"):
        mi = _pattern_arg(opts["pattern"], None).multiindex
    try:
        T = parse_tangle(expr, ring, mi)
    except TangleSyntaxError as exc:
        raise UsageProblem(f"cannot parse tangle: {exc}") from None
    data = {"command": "eval", "q": str(spec), "expr": expr, "tangle": _tangle_json(T)}
    if opts.get("pattern"):
        p = _pattern_arg(opts["pattern"], T.right)
        st = act_on_state(T, LinkState.of(ring, p))
        items = sorted(((format_pattern(a), ring.fmt(c)) for a, c in st.terms.items()))
        data["state"] = [{"pattern": a, "c": c} for a, c in items]
        return Output(data, ["pattern", "c"], [list(x) for x in items])
    return Output(data, ["diagram", "c"], _tangle_rows(T))


def _defects_arg(mi, opts):
    s = opts.get("defects")
    if s is None:
        raise UsageProblem("--defects is required")
    if s not in defect_set(mi):
        raise UsageProblem(f"{s} is not a defect number of {mi}; choose from {defect_set(mi)}")
    return s


def cmd_gram(mi, spec, opts) -> Output:
    s = _defects_arg(mi, opts)
    ring = get_ring(spec)
    G = gram_matrix(mi, s, ring)
    pats = valenced_link_patterns(mi, s)
    names = [format_pattern(p.base) for p in pats]
    r = rank(G) if ring.exact else None
    ent = [[ring.fmt(G.get(i, j)) for j in range(G.ncols)] for i in range(G.nrows)]
    data = {"command": "gram", "multiindex": list(mi), "defects": s, "q": str(spec),
            "patterns": names, "matrix": ent, "rank": r,
            "radical_dim": None if r is None else len(pats) - r}
    rows = [[names[i]] + ent[i] for i in range(len(names))]
    text = _table([""] + names, rows) + (f"rank {r}   radical {len(pats) - r}" if r is not None else "")
    return Output(data, [""] + names, rows, text)


def cmd_hwv(mi, spec, opts) -> Output:
    from .uqrep import hw_space, w_vector

    s = _defects_arg(mi, opts)
    notes = []
    ring = _specialized(spec, notes)
    H = hw_space(ring, mi, s)
    pats = valenced_link_patterns(mi, s)
    ws = [w_vector(ring, p) for p in pats]
    wr = rank(_rows_of(ring, ws, mi)) if ws else 0
    ok = len(H) == len(pats) == wr if s < ring.regime_bound() and n_of(mi) < ring.regime_bound() else wr == len(pats)
    data = {"command": "hwv", "multiindex": list(mi), "defects": s, "q": str(ring.spec),
            "dim_H": len(H), "D": len(pats), "rank_w": wr, "ok": ok, "notes": notes,
            "w": [{"pattern": format_pattern(p.base), "vector": w.to_json()} for p, w in zip(pats, ws)]}
    rows = [[format_pattern(p.base), _vec_str(w)] for p, w in zip(pats, ws)]
    text = _table(["pattern", "w"], rows) + f"dim H {len(H)}   D {len(pats)}   rank w {wr}   {_status(ok)}"
    text += "".join(f"\nnote: {n}" for n in notes)
    return Output(data, ["pattern", "w"], rows, text, ok)


def _basis(mi):
    from .uqrep import basis_indices

    return basis_indices(mi)


def _rows_of(ring, vecs, mi):
    from .linalg import Matrix

    return Matrix.from_rows(ring, len(_basis(mi)), [v.to_dense() for v in vecs])


def _vec_str(v) -> str:
    ring = v.ring
    return " + ".join(f"({ring.fmt(c)})e{''.join(map(str, k))}" for k, c in sorted(v.coords.items())) or "0"


def cmd_coblo(mi, spec, opts) -> Output:
    from .uqrep import AlgebraElement, act, cb_pairing_expected, conformal_block, conformal_block_bar, pairing

    ring = _specialized(spec, []) if spec.mode == "generic" and opts.get("exact_point") else get_ring(spec)
    walk = opts.get("walk")
    ws = [tuple(walk)] if walk else walks_over(mi)
    if walk and tuple(walk) not in walks_over(mi):
        raise UsageProblem(f"{_fmt_mi(walk)} is not a walk over {mi}")
    E = AlgebraElement.gen(ring, "E")
    vecs = [conformal_block(ring, w, mi) for w in ws]
    bars = [conformal_block_bar(ring, w, mi) for w in ws]
    ok = all(act(E, u).is_zero() for u in vecs)
    diag = []
    for a, (w, u) in enumerate(zip(ws, vecs)):
        for b, ub in enumerate(bars):
            c = pairing(ub, u)
            if a == b:
                good = c == cb_pairing_expected(ring, w, mi)
                diag.append(c)
                ok &= good
            elif not c.is_zero():
                ok = False
    data = {"command": "coblo", "multiindex": list(mi), "q": str(ring.spec), "ok": ok,
            "blocks": [{"walk": list(w), "vector": u.to_json(), "norm": ring.fmt(c)} for w, u, c in zip(ws, vecs, diag)]}
    rows = [[_fmt_mi(w), ring.fmt(c), _vec_str(u)] for w, u, c in zip(ws, vecs, diag)]
    text = _table(["walk", "<u-bar,u>", "u"], rows) + f"highest weight, diagonal Gram, closed-form norms: {_status(ok)}"
    return Output(data, ["walk", "norm", "vector"], rows, text, ok)


def cmd_pairing(mi, spec, opts) -> Output:
    from .uqrep import pairing, w_bar_vector, w_vector

    s = _defects_arg(mi, opts)
    ring = get_ring(spec)
    pats = valenced_link_patterns(mi, s)
    ws = [w_vector(ring, p) for p in pats]
    wbs = [w_bar_vector(ring, p) for p in pats]
    ok = True
    rows = []
    for a, pa in enumerate(pats):
        for b, pb in enumerate(pats):
            lhs = pairing(wbs[a], ws[b])
            rhs = ls_pairing(LinkState.of(ring, pa), LinkState.of(ring, pb))
            good = lhs == rhs
            ok &= good
            rows.append([format_pattern(pa.base), format_pattern(pb.base), ring.fmt(lhs), ring.fmt(rhs), _status(good)])
    data = {"command": "pairing", "multiindex": list(mi), "defects": s, "q": str(spec), "ok": ok,
            "entries": [{"alpha": r[0], "beta": r[1], "module": r[2], "diagram": r[3]} for r in rows]}
    header = ["alpha", "beta", "<w-bar,w>", "(alpha,beta)", "check"]
    return Output(data, header, rows, None, ok)


def cmd_duality(mi, spec, opts) -> Output:
    from .duality import verify_duality

    notes = []
    ring = _specialized(spec, notes)
    rep = verify_duality(mi, ring)
    rep.notes[:0] = notes
    return _report_output("duality", rep)


def _report_output(cmd, rep) -> Output:
    d = {"command": cmd, **rep.to_json(), "ok": rep.ok}
    rows = [[k, "" if v is None else v] for k, v in rep.dims.items()]
    rows += [[k, str(v).lower()] for k, v in rep.flags.items()]
    rows += [[f"check:{k}", _status(v)] for k, v in rep.checks.items()]
    rows.append(["decomposition", " ".join(f"{s}:{m}" for s, m in rep.decomposition)])
    return Output(d, ["field", "value"], rows, rep.to_plain(), rep.ok)


def cmd_classical(mi, spec, opts) -> Output:
    from .duality import classical_mode

    rep = classical_mode(mi)
    return _report_output("classical", rep)


def cmd_radical(mi, spec, opts) -> Output:
    from .duality import radical_checks

    if spec.mode != "root":
        raise UsageProblem("radical checks need a root of unity, e.g. --q root:1:3")
    ring = get_ring(spec)
    rep = radical_checks(ring, mi)
    ok = all(r["inclusion"] and r["quotient_identity"] for r in rep.values())
    keys = ["D", "dim_H", "rad_L", "rad_H", "w_perp", "dim_Q", "inclusion", "quotient_identity"]
    rows = [[s] + [str(rep[s][k]).lower() if isinstance(rep[s][k], bool) else rep[s][k] for k in keys] for s in sorted(rep)]
    data = {"command": "radical", "multiindex": list(mi), "q": str(spec), "ok": ok,
            "grades": [{"s": s, **rep[s]} for s in sorted(rep)]}
    return Output(data, ["s"] + keys, rows, None, ok)


def cmd_qi(mi, spec, opts) -> Output:
    from .duality import exceptional_qi_checks

    if spec.mode == "generic":
        spec = QSpec.root(1, 2)
    ring = get_ring(spec)
    try:
        rep = exceptional_qi_checks(ring)
    except ScalarError as exc:
        raise UsageProblem(str(exc)) from None
    ok = (
        rep["rhoU1_squared_zero"] and rep["dim_End_Uq_V2"] == 2 and rep["TL2_faithful"]
        and all(v for k, v in rep.items() if isinstance(v, bool))
    )
    rows = [[k, str(v).lower() if isinstance(v, bool) else v] for k, v in rep.items()]
    return Output({"command": "qi", "q": str(spec), "ok": ok, "checks": rep}, ["check", "value"], rows, None, ok)


VERBS = {
    "dims": (cmd_dims, True),
    "walks": (cmd_walks, True),
    "patterns": (cmd_patterns, False),
    "jw": (cmd_jw, False),
    "eval": (cmd_eval, False),
    "gram": (cmd_gram, True),
    "hwv": (cmd_hwv, True),
    "coblo": (cmd_coblo, True),
    "pairing": (cmd_pairing, True),
    "duality": (cmd_duality, True),
    "radical": (cmd_radical, True),
    "classical": (cmd_classical, True),
    "qi": (cmd_qi, False),
}


def run(verb: str, **opts) -> tuple[int, str]:
    """Execute one command; returns (exit code, rendered output)."""
    fn, needs_mi = VERBS[verb]
    fmt = opts.get("format") or "plain"
    try:
        mi = _multiindex(opts.get("multiindex"), required=needs_mi)
        spec = _qspec(opts.get("q"))
        if opts.get("walk") is not None:
            try:
                opts["walk"] = tuple(int(x) for x in opts["walk"].split(",") if x.strip())
            except ValueError:
                raise UsageProblem(f"bad walk {opts['walk']!r}") from None
        out = fn(mi, spec, opts)
    except (UsageProblem, JWUnavailable, InadmissibleError, DiagramError, PatternError, TangleSyntaxError) as exc:
        return 2, f"error: {exc}\n"
    except (ScalarError, ZeroDivisionError) as exc:
        return 2, f"error: {exc}\n"
    except ValueError as exc:
        # domain violations raised by the library (e.g. sizes beyond p(q))
        return 2, f"error: {exc}\n"
    return (0 if out.ok else 1), out.render(fmt)


def _setup_logging():
    level = os.environ.get("QSW_LOG", "error").lower()
    if level not in ("error", "info", "debug"):
        level = "error"
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level.upper()), format="%(levelname)s %(name)s: %(message)s")


_common = [
    click.option("--multiindex", help="Comma-separated positive sizes, e.g. 2,1,1."),
    click.option("--q", "q", help="generic | classical | rational:a/b | root:p':p | float:re,im"),
    click.option("--format", "format", type=click.Choice(["json", "csv", "plain"]), default="plain"),
    click.option("--out", type=click.Path(dir_okay=False, writable=True), help="Write output to this file."),
]


def _with_common(f):
    for opt in reversed(_common):
        f = opt(f)
    return f


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="qsw")
def main():
    """Valenced Temperley-Lieb / U_q(sl2) duality toolkit."""
    _setup_logging()


def _emit(verb, out_path, **opts):
    code, text = run(verb, **opts)
    if code == 2:
        click.echo(text, err=True, nl=False)
        sys.exit(2)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(code)


HELP = {
    "dims": "Tabulate D and B per defect number, with the dimension identity footer.",
    "walks": "List walks over the multiindex.",
    "patterns": "List valenced link patterns, or parse one with --pattern.",
    "jw": "Expand the Jones-Wenzl projector; --check verifies P1/P2.",
    "eval": "Evaluate a tangle word, optionally acting on --pattern.",
    "gram": "Gram matrix of the link-state pairing.",
    "hwv": "Highest-weight space dimension and link-pattern vectors.",
    "coblo": "Conformal-block vectors and their norms.",
    "pairing": "Compare the module pairing of w vectors with the diagram pairing.",
    "duality": "Full duality report (commutants, faithfulness, decomposition).",
    "radical": "Radicals and quotient dimensions at a root of unity.",
    "classical": "Duality report at q = 1.",
    "qi": "Structure checks at q = +-i.",
}


def _simple(verb, extra=()):
    def cmd(out, **kw):
        _emit(verb, out, **kw)

    cmd.__name__ = verb
    cmd.__doc__ = HELP[verb]
    f = _with_common(cmd)
    for opt in extra:
        f = opt(f)
    return main.command(name=verb)(f)


_defects = click.option("--defects", type=int, help="Defect number s.")
_pattern = click.option("--pattern", help="Link pattern `(())||` or `walk:r1,..@s1,..`.")

_simple("dims")
_simple("walks", [_defects])
_simple("patterns", [_defects, _pattern])
_simple("jw", [click.option("--size", type=int), click.option("--check", is_flag=True)])
_simple("eval", [click.option("--expr"), _pattern])
_simple("gram", [_defects])
_simple("hwv", [_defects])
_simple("coblo", [click.option("--walk")])
_simple("pairing", [_defects])
_simple("duality")
_simple("radical")
_simple("classical")
_simple("qi")



if __name__ == "__main__":
    main()
