"""Temperley-Lieb diagrams, tangles, Jones-Wenzl projectors and link states.

A link diagram in TL_n^m has n left nodes and m right nodes, numbered top to
bottom.  Boundary points 0..n-1 are the left nodes and n..n+m-1 the right
nodes; ``partner`` pairs them.  The product T U glues the right side of T to
the left side of U, and every closed loop contributes a factor nu.

Valenced tangles reuse the flat representation: a (mi, pi)-valenced diagram is a
flat diagram on n_mi + n_pi points without links inside a bin.  Products of
valenced tangles insert Jones-Wenzl projectors on the middle bins and drop the
diagrams that acquire an intra-bin link.
"""
from __future__ import annotations

import functools
import threading
from dataclasses import dataclass

from .combin import (
    DEFECT,
    LinkPattern,
    ValencedLinkPattern,
    bins_of,
    n_of,
    valenced_link_patterns,
)
from .linalg import Matrix, nullspace, rank
from .scalar import InadmissibleError, Ring, is_admissible

__all__ = [
    "LinkDiagram",
    "Tangle",
    "LinkState",
    "DiagramError",
    "JWUnavailable",
    "compose_diagrams",
    "identity_diagram",
    "gen_U",
    "gen_L",
    "gen_R",
    "generators",
    "standard_form",
    "from_standard_form",
    "jones_wenzl",
    "jw_composite",
    "valenced_U",
    "valenced_diagrams",
    "embed_tangle",
    "embed_state",
    "act_on_state",
    "ls_pairing",
    "gram_matrix",
    "radical_dim",
    "three_vertex",
    "theta_network",
    "markov_trace",
    "pattern_diagram",
    "diagram_pattern",
]


class DiagramError(ValueError):
    pass


class JWUnavailable(ValueError):
    pass


# ---------------------------------------------------------------------------
# flat link diagrams


@dataclass(frozen=True)
class LinkDiagram:
    n: int
    m: int
    partner: tuple[int, ...]

    def __post_init__(self):
        if len(self.partner) != self.n + self.m:
            raise DiagramError("partner array has the wrong length")
        if (self.n + self.m) % 2:
            raise DiagramError("n + m must be even")
        p = self.partner
        for a, b in enumerate(p):
            if not 0 <= b < len(p) or b == a or p[b] != a:
                raise DiagramError("pairing is not a perfect matching")
        # planarity: walk the rectangle boundary left side down, right side up
        cyc = list(range(self.n)) + [self.n + self.m - 1 - j for j in range(self.m)]
        where = {pt: k for k, pt in enumerate(cyc)}
        stack = []
        for pt in cyc:
            other = p[pt]
            if where[other] > where[pt]:
                stack.append(pt)
            elif not stack or stack.pop() != other:
                raise DiagramError("links cross")

    @staticmethod
    def raw(n: int, m: int, partner: tuple[int, ...]) -> LinkDiagram:
        d = object.__new__(LinkDiagram)
        object.__setattr__(d, "n", n)
        object.__setattr__(d, "m", m)
        object.__setattr__(d, "partner", partner)
        return d

    @property
    def through_count(self) -> int:
        return sum(1 for a in range(self.n) if self.partner[a] >= self.n)

    def left_links(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in (self.partner[a],) if a < b < self.n]

    def right_links(self) -> list[tuple[int, int]]:
        n = self.n
        return [(a - n, b - n) for a in range(n, n + self.m) for b in (self.partner[a],) if n <= a < b]

    def through(self) -> list[tuple[int, int]]:
        return [(a, self.partner[a] - self.n) for a in range(self.n) if self.partner[a] >= self.n]

    def is_identity(self) -> bool:
        return self.n == self.m and all(self.partner[a] == self.n + a for a in range(self.n))

    def reflect(self) -> LinkDiagram:
        n, m = self.n, self.m

        def mv(x):
            return x + m if x < n else x - n

        part = [0] * (n + m)
        for a, b in enumerate(self.partner):
            part[mv(a)] = mv(b)
        return LinkDiagram.raw(m, n, tuple(part))

    def tensor(self, other: LinkDiagram) -> LinkDiagram:
        """Stack self above other."""
        n1, m1, n2, m2 = self.n, self.m, other.n, other.m

        def mv1(x):
            return x if x < n1 else x + n2

        def mv2(x):
            return x + n1 if x < n2 else x + n1 + m1

        part = [0] * (n1 + m1 + n2 + m2)
        for a, b in enumerate(self.partner):
            part[mv1(a)] = mv1(b)
        for a, b in enumerate(other.partner):
            part[mv2(a)] = mv2(b)
        return LinkDiagram.raw(n1 + n2, m1 + m2, tuple(part))

    def __str__(self):
        ll = ",".join(f"{a + 1}-{b + 1}" for a, b in self.left_links())
        rl = ",".join(f"{a + 1}-{b + 1}" for a, b in self.right_links())
        th = ",".join(f"{a + 1}>{b + 1}" for a, b in self.through())
        return f"<{self.n}|L[{ll}] T[{th}] R[{rl}]|{self.m}>"


def identity_diagram(n: int) -> LinkDiagram:
    return LinkDiagram.raw(n, n, tuple(list(range(n, 2 * n)) + list(range(n))))


@functools.lru_cache(maxsize=1 << 20)
def compose_diagrams(T: LinkDiagram, U: LinkDiagram) -> tuple[LinkDiagram, int]:
    """Concatenate T (n,k) and U (k,m); return the diagram and the number of closed loops."""
    if T.m != U.n:
        raise DiagramError(f"cannot glue TL_{T.n}^{T.m} to TL_{U.n}^{U.m}")
    n, k, m = T.n, T.m, U.m
    tp, up = T.partner, U.partner
    out = [0] * (n + m)
    seen = [False] * k

    def follow_from_T(x):
        # x is a point of T; return the outer endpoint reached
        while True:
            y = tp[x]
            if y < n:
                return y
            j = y - n
            seen[j] = True
            z = up[j]
            if z >= k:
                return n + (z - k)
            seen[z] = True
            x = n + z

    def follow_from_U(x):
        while True:
            y = up[x]
            if y >= k:
                return n + (y - k)
            seen[y] = True
            z = tp[n + y]
            if z < n:
                return z
            j = z - n
            seen[j] = True
            x = j

    for a in range(n):
        out[a] = follow_from_T(a)
    for b in range(m):
        out[n + b] = follow_from_U(k + b)
    loops = 0
    for j in range(k):
        if not seen[j]:
            loops += 1
            x = j
            while True:
                seen[x] = True
                y = up[x]
                seen[y] = True
                z = tp[n + y] - n
                if seen[z]:
                    break
                x = z
    return LinkDiagram.raw(n, m, tuple(out)), loops


def markov_diagram_loops(d: LinkDiagram) -> int:
    """Loops obtained by joining right node j to left node j."""
    if d.n != d.m:
        raise DiagramError("trace needs a square diagram")
    n = d.n
    seen = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        loops += 1
        x = start
        while not seen[x]:
            seen[x] = True
            y = d.partner[x]
            seen[y] = True
            x = y + n if y < n else y - n
    return loops


# ---------------------------------------------------------------------------
# tangles


class Tangle:
    """Linear combination of diagrams sharing the shape (left multiindex, right multiindex)."""

    __slots__ = ("ring", "left", "right", "terms")

    def __init__(self, ring: Ring, left: tuple[int, ...], right: tuple[int, ...], terms: dict | None = None):
        self.ring = ring
        self.left = tuple(left)
        self.right = tuple(right)
        self.terms = {d: c for d, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def flat(ring: Ring, n: int, m: int, terms: dict | None = None) -> Tangle:
        return Tangle(ring, (1,) * n, (1,) * m, terms)

    @staticmethod
    def of(ring: Ring, d: LinkDiagram, left=None, right=None) -> Tangle:
        return Tangle(ring, left or (1,) * d.n, right or (1,) * d.m, {d: ring.one})

    @staticmethod
    def unit(ring: Ring, mi: tuple[int, ...]) -> Tangle:
        return Tangle(ring, mi, mi, {identity_diagram(n_of(mi)): ring.one})

    @property
    def n(self) -> int:
        return n_of(self.left)

    @property
    def m(self) -> int:
        return n_of(self.right)

    @property
    def is_flat(self) -> bool:
        return all(s == 1 for s in self.left) and all(s == 1 for s in self.right)

    def _same_shape(self, o: Tangle):
        if self.left != o.left or self.right != o.right:
            raise DiagramError(f"shape mismatch {self.left}->{self.right} vs {o.left}->{o.right}")

    def __add__(self, o: Tangle) -> Tangle:
        self._same_shape(o)
        t = dict(self.terms)
        for d, c in o.terms.items():
            t[d] = t[d] + c if d in t else c
        return Tangle(self.ring, self.left, self.right, t)

    def __neg__(self) -> Tangle:
        return Tangle(self.ring, self.left, self.right, {d: -c for d, c in self.terms.items()})

    def __sub__(self, o: Tangle) -> Tangle:
        return self + (-o)

    def scale(self, c) -> Tangle:
        c = c if hasattr(c, "ring") else self.ring.coerce(c)
        return Tangle(self.ring, self.left, self.right, {d: x * c for d, x in self.terms.items()})

    def __mul__(self, o):
        if isinstance(o, Tangle):
            return compose(self, o)
        return self.scale(o)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, o) -> bool:
        if not isinstance(o, Tangle) or self.left != o.left or self.right != o.right:
            return False
        return (self - o).is_zero()

    def coefficient(self, d: LinkDiagram):
        return self.terms.get(d, self.ring.zero)

    def reflect(self) -> Tangle:
        return Tangle(self.ring, self.right, self.left, {d.reflect(): c for d, c in self.terms.items()})

    def tensor(self, o: Tangle) -> Tangle:
        t: dict = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in o.terms.items():
                d = d1.tensor(d2)
                t[d] = t[d] + c1 * c2 if d in t else c1 * c2
        return Tangle(self.ring, self.left + o.left, self.right + o.right, t)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda dc: _diagram_key(dc[0], self.left, self.right))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.ring.fmt(c)})*{d}" for d, c in self.sorted_terms())


def _diagram_key(d: LinkDiagram, left, right):
    from .combin import walk_of

    lp, rp = split_diagram(d)
    return (walk_of(lp, left), walk_of(rp, right))


def _flat_product(T: Tangle, U: Tangle) -> dict:
    ring = T.ring
    nu = ring.nu
    powers = [ring.one]
    out: dict = {}
    for d1, c1 in T.terms.items():
        for d2, c2 in U.terms.items():
            d, loops = compose_diagrams(d1, d2)
            while len(powers) <= loops:
                powers.append(powers[-1] * nu)
            c = c1 * c2
            if loops:
                c = c * powers[loops]
            out[d] = out[d] + c if d in out else c
    return out


def _has_intra_bin_left(d: LinkDiagram, rgs_left) -> bool:
    p = d.partner
    for rg in rgs_left:
        if len(rg) > 1:
            for a in rg:
                if p[a] in rg:
                    return True
    return False


def _has_intra_bin_right(d: LinkDiagram, rgs_right) -> bool:
    p, n = d.partner, d.n
    for rg in rgs_right:
        if len(rg) > 1:
            for a in rg:
                if p[n + a] - n in rg:
                    return True
    return False


def admissible_part(terms: dict, left: tuple[int, ...], right: tuple[int, ...]) -> dict:
    """Drop diagrams with a link inside a bin on either side."""
    rl, rr = bins_of(left), bins_of(right)
    return {d: c for d, c in terms.items() if not _has_intra_bin_left(d, rl) and not _has_intra_bin_right(d, rr)}


def compose(T: Tangle, U: Tangle) -> Tangle:
    """T U; for valenced middle bins the projectors are inserted and loop-links dropped."""
    if T.right != U.left:
        if n_of(T.right) == n_of(U.left) and T.is_flat and U.is_flat:
            pass
        else:
            raise DiagramError(f"cannot compose {T.left}->{T.right} with {U.left}->{U.right}")
    mid = U.left
    if any(s > 1 for s in mid):
        P = jw_composite(mid, T.ring)
        inner = Tangle(T.ring, mid, U.right, _flat_product(P, U))
        terms = _flat_product(T, inner)
    else:
        terms = _flat_product(T, U)
    if any(s > 1 for s in T.left) or any(s > 1 for s in U.right):
        terms = admissible_part(terms, T.left, U.right)
    return Tangle(T.ring, T.left, U.right, terms)


def flat_compose(T: Tangle, U: Tangle) -> Tangle:
    """Plain concatenation ignoring bins (result labelled flat)."""
    if T.m != U.n:
        raise DiagramError("shape mismatch in flat composition")
    return Tangle.flat(T.ring, T.n, U.m, _flat_product(T, U))


def markov_trace(T: Tangle):
    """Close every strand of a square flat tangle; nu per loop."""
    ring = T.ring
    acc = ring.zero
    for d, c in T.terms.items():
        acc = acc + c * ring.nu ** markov_diagram_loops(d)
    return acc


# ---------------------------------------------------------------------------
# generators and standard form


def gen_U(n: int, i: int) -> LinkDiagram:
    if not 1 <= i <= n - 1:
        raise DiagramError(f"U_{i} is not defined in TL_{n}")
    part = list(range(n, 2 * n)) + list(range(n))
    a, b = i - 1, i
    part[a], part[b] = b, a
    part[n + a], part[n + b] = n + b, n + a
    return LinkDiagram.raw(n, n, tuple(part))


def gen_L(n: int, i: int) -> LinkDiagram:
    """Left cup at (i, i+1) in TL_n^{n-2}."""
    if n < 2 or not 1 <= i <= n - 1:
        raise DiagramError(f"L_{i} is not defined for n = {n}")
    m = n - 2
    part = [0] * (n + m)
    part[i - 1], part[i] = i, i - 1
    r = 0
    for a in range(n):
        if a in (i - 1, i):
            continue
        part[a], part[n + r] = n + r, a
        r += 1
    return LinkDiagram.raw(n, m, tuple(part))


def gen_R(n: int, j: int) -> LinkDiagram:
    """Right cap at (j, j+1) in TL_{n-2}^n."""
    return gen_L(n, j).reflect()


def generators(n: int) -> dict[str, LinkDiagram]:
    out = {"1": identity_diagram(n)}
    for i in range(1, n):
        out[f"U{i}"] = gen_U(n, i)
        out[f"L{i}"] = gen_L(n, i)
        out[f"R{i}"] = gen_R(n, i)
    return out


def standard_form(d: LinkDiagram) -> tuple[list[int], int, list[int]]:
    """(i_1 < ... < i_l, s, j_1 < ... < j_r) with d = L_{i_l}...L_{i_1} 1_s R_{j_1}...R_{j_r}."""
    ls = sorted(a + 1 for a, _ in d.left_links())
    rs = sorted(a + 1 for a, _ in d.right_links())
    return ls, d.through_count, rs


def from_standard_form(ls: list[int], s: int, rs: list[int]) -> LinkDiagram:
    x = identity_diagram(s)
    for i in ls:
        x, loops = compose_diagrams(gen_L(x.n + 2, i), x)
        assert loops == 0
    for j in rs:
        x, loops = compose_diagrams(x, gen_R(x.m + 2, j))
        assert loops == 0
    return x


# ---------------------------------------------------------------------------
# Jones-Wenzl projectors

_jw_lock = threading.Lock()
_jw_cache: dict = {}


def jones_wenzl(s: int, ring: Ring) -> Tangle:
    """P_s in TL_s via P_{k+1} = P_k + ([k]/[k+1]) P_k U_k P_k."""
    if s < 0:
        raise DiagramError("negative projector size")
    if s >= ring.regime_bound():
        raise JWUnavailable(f"projector undefined at this q: size {s} needs s < p(q) = {ring.order()}")
    key = (s, ring.spec)
    hit = _jw_cache.get(key)
    if hit is not None:
        return hit
    if s <= 1:
        P = Tangle.unit(ring, (1,) * s)
    else:
        prev = jones_wenzl(s - 1, ring).tensor(Tangle.unit(ring, (1,)))
        U = Tangle.of(ring, gen_U(s, s - 1))
        coef = ring.q_int(s - 1) / ring.q_int(s)
        P = prev + flat_compose(flat_compose(prev, U), prev).scale(coef)
    with _jw_lock:
        _jw_cache.setdefault(key, P)
    return _jw_cache[key]


def jw_composite(mi: tuple[int, ...], ring: Ring) -> Tangle:
    """P_{s_1} tensor ... tensor P_{s_d}, labelled flat."""
    mi = tuple(mi)
    key = ("composite", mi, ring.spec)
    hit = _jw_cache.get(key)
    if hit is not None:
        return hit
    out = Tangle.unit(ring, ())
    for s in mi:
        out = out.tensor(jones_wenzl(s, ring))
    out = Tangle.flat(ring, n_of(mi), n_of(mi), out.terms)
    with _jw_lock:
        _jw_cache.setdefault(key, out)
    return _jw_cache[key]


# ---------------------------------------------------------------------------
# valenced structure


def valenced_U(mi: tuple[int, ...], i: int, ring: Ring) -> Tangle:
    """Single link between bins i and i+1 on both sides, all else through."""
    mi = tuple(mi)
    if not 1 <= i <= len(mi) - 1:
        raise DiagramError(f"valenced U_{i} needs 1 <= i <= {len(mi) - 1}")
    pos = sum(mi[:i])
    return Tangle(ring, mi, mi, {gen_U(n_of(mi), pos): ring.one})


def split_diagram(d: LinkDiagram) -> tuple[LinkPattern, LinkPattern]:
    """Left and right link patterns of a diagram (through strands become defects)."""
    n = d.n
    lp = tuple(DEFECT if d.partner[a] >= n else d.partner[a] for a in range(n))
    rp = tuple(DEFECT if d.partner[n + b] < n else d.partner[n + b] - n for b in range(d.m))
    return LinkPattern(lp), LinkPattern(rp)


def join_patterns(lp: LinkPattern, rp: LinkPattern) -> LinkDiagram:
    if lp.s != rp.s:
        raise DiagramError("patterns have different defect counts")
    n, m = lp.n, rp.n
    part = [0] * (n + m)
    for a, b in enumerate(lp.partner):
        if b != DEFECT:
            part[a] = b
    for a, b in enumerate(rp.partner):
        if b != DEFECT:
            part[n + a] = n + b
    for a, b in zip(lp.defects(), rp.defects()):
        part[a], part[n + b] = n + b, a
    return LinkDiagram.raw(n, m, tuple(part))


def valenced_diagrams(left: tuple[int, ...], right: tuple[int, ...]) -> list[LinkDiagram]:
    """Basis of TL_left^right ordered by (left walk, right walk)."""
    out = []
    for s in sorted(set(d for d in _defects(left)) & set(_defects(right))):
        for a in valenced_link_patterns(left, s):
            for b in valenced_link_patterns(right, s):
                out.append(join_patterns(a.base, b.base))
    return out


def _defects(mi):
    from .combin import defect_set

    return defect_set(tuple(mi))


def embed_tangle(T: Tangle) -> Tangle:
    """P_left T P_right as a flat tangle."""
    ring = T.ring
    X = Tangle.flat(ring, T.n, T.m, T.terms)
    if any(s > 1 for s in T.left):
        X = flat_compose(jw_composite(T.left, ring), X)
    if any(s > 1 for s in T.right):
        X = flat_compose(X, jw_composite(T.right, ring))
    return X


# ---------------------------------------------------------------------------
# link states


def pattern_diagram(alpha: LinkPattern) -> LinkDiagram:
    """The pattern as a diagram in TL_n^s whose right nodes are the defects in order."""
    s = alpha.s
    return join_patterns(alpha, LinkPattern(tuple([DEFECT] * s)))


def diagram_pattern(d: LinkDiagram) -> LinkPattern | None:
    if d.through_count != d.m:
        return None
    return split_diagram(d)[0]


class LinkState:
    """Linear combination of (mi, s)-valenced link patterns."""

    __slots__ = ("ring", "mi", "s", "terms")

    def __init__(self, ring: Ring, mi: tuple[int, ...], s: int, terms: dict | None = None):
        self.ring, self.mi, self.s = ring, tuple(mi), s
        self.terms = {p: c for p, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def of(ring: Ring, alpha, mi=None) -> LinkState:
        if isinstance(alpha, ValencedLinkPattern):
            return LinkState(ring, alpha.multiindex, alpha.s, {alpha.base: ring.one})
        mi = tuple(mi) if mi else (1,) * alpha.n
        return LinkState(ring, mi, alpha.s, {alpha: ring.one})

    def as_tangle(self) -> Tangle:
        return Tangle(self.ring, self.mi, (1,) * self.s, {pattern_diagram(p): c for p, c in self.terms.items()})

    def __add__(self, o: LinkState) -> LinkState:
        if (self.mi, self.s) != (o.mi, o.s):
            raise DiagramError("link states of different gradings")
        t = dict(self.terms)
        for p, c in o.terms.items():
            t[p] = t[p] + c if p in t else c
        return LinkState(self.ring, self.mi, self.s, t)

    def __neg__(self):
        return LinkState(self.ring, self.mi, self.s, {p: -c for p, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> LinkState:
        c = c if hasattr(c, "ring") else self.ring.coerce(c)
        return LinkState(self.ring, self.mi, self.s, {p: x * c for p, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, o) -> bool:
        return isinstance(o, LinkState) and (self.mi, self.s) == (o.mi, o.s) and (self - o).is_zero()

    def coefficient(self, p: LinkPattern):
        return self.terms.get(p, self.ring.zero)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.ring.fmt(c)})*{p}" for p, c in self.terms.items())


def _state_from_terms(ring, mi, s, terms: dict) -> LinkState:
    out: dict = {}
    for d, c in terms.items():
        if d.through_count != s:
            continue  # a turn-back joined two defects
        p = split_diagram(d)[0]
        out[p] = out[p] + c if p in out else c
    return LinkState(ring, mi, s, out)


def embed_state(alpha: LinkState) -> LinkState:
    """P_mi alpha as a flat link state."""
    ring = alpha.ring
    X = alpha.as_tangle()
    flat = Tangle.flat(ring, X.n, X.m, X.terms)
    if any(s > 1 for s in alpha.mi):
        flat = flat_compose(jw_composite(alpha.mi, ring), flat)
    return _state_from_terms(ring, (1,) * X.n, alpha.s, flat.terms)


def act_on_state(T: Tangle, alpha: LinkState) -> LinkState:
    if T.right != alpha.mi:
        raise DiagramError(f"tangle source {T.right} does not match state multiindex {alpha.mi}")
    X = alpha.as_tangle()
    prod = compose(T, X)
    return _state_from_terms(T.ring, T.left, alpha.s, prod.terms)


def ls_pairing(alpha: LinkState, beta: LinkState):
    """Evaluate the network made of the reflection of alpha glued to P_mi beta."""
    if alpha.mi != beta.mi:
        raise DiagramError("pairing of link states over different multiindices")
    ring = alpha.ring
    if alpha.s != beta.s:
        return ring.zero
    A = alpha.as_tangle().reflect()
    B = beta.as_tangle()
    Af = Tangle.flat(ring, A.n, A.m, A.terms)
    Bf = Tangle.flat(ring, B.n, B.m, B.terms)
    if any(s > 1 for s in alpha.mi):
        Bf = flat_compose(jw_composite(alpha.mi, ring), Bf)
    prod = flat_compose(Af, Bf)
    return prod.coefficient(identity_diagram(alpha.s))


def gram_matrix(mi: tuple[int, ...], s: int, ring: Ring) -> Matrix:
    pats = valenced_link_patterns(tuple(mi), s)
    states = [LinkState.of(ring, p) for p in pats]
    e = {}
    for a, x in enumerate(states):
        for b, y in enumerate(states):
            c = ls_pairing(x, y)
            if not c.is_zero():
                e[(a, b)] = c
    return Matrix(ring, len(states), len(states), e)


def radical_dim(mi: tuple[int, ...], s: int, ring: Ring) -> int:
    G = gram_matrix(mi, s, ring)
    return G.nrows - rank(G)


def radical_basis(mi: tuple[int, ...], s: int, ring: Ring) -> list[dict]:
    return nullspace(gram_matrix(mi, s, ring))


# ---------------------------------------------------------------------------
# three-vertex and Theta networks


def three_vertex(r: int, s: int, t: int, ring: Ring) -> Tangle:
    """The Y tangle in TL_{(r,t)}^{(s)}: k cups join the r-bin to the t-bin."""
    if not is_admissible(r, s, t):
        raise InadmissibleError(f"inadmissible three-vertex ({r},{s},{t})")
    k = (r + t - s) // 2
    i = r - k
    n = r + t
    part = [0] * (n + s)
    for a in range(k):
        x, y = r - 1 - a, r + a
        part[x], part[y] = y, x
    for a in range(i):
        part[a], part[n + a] = n + a, a
    for a in range(t - k):
        x = r + k + a
        part[x], part[n + i + a] = n + i + a, x
    d = LinkDiagram.raw(n, s, tuple(part))
    left = tuple(x for x in (r, t) if x > 0)
    right = (s,) if s > 0 else ()
    return Tangle(ring, left, right, {d: ring.one})


def theta_network(r: int, s: int, t: int, ring: Ring):
    """Full flat evaluation: trace of P_s V* (P_r x P_t) V P_s."""
    V = three_vertex(r, s, t, ring)
    Vf = embed_tangle(V)
    X = flat_compose(Vf.reflect(), Vf)
    return markov_trace(X)
