"""U_q(sl_2) and its bar variant acting on tensor products of type-one modules.

Vectors are sparse maps from index tuples (l_1, ..., l_d), 0 <= l_j <= s_j, to
scalars.  Left vectors live in V_mi with basis e_l, right vectors in the bar
space with basis e-bar_l.  Algebra elements are linear combinations of words
in the letters E, F, K, Ki (K inverse) and H (the classical Cartan element);
the ``bar`` flag selects the barred generators, which share the algebra
relations but use the other coproduct.

Coproduct placement, for a letter sitting on tensorand j:

    plain E   K on later tensorands       plain F   K^-1 on earlier ones
    bar E     K^-1 on earlier tensorands  bar F     K on later ones

Right actions use the same placements, with the single-module rules
e-bar_l.E = e-bar_{l+1} and e-bar_l.F = [l][s-l+1] e-bar_{l-1}.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .combin import defect_interval, n_of, walks_over
from .linalg import Matrix, nullspace
from .scalar import Ring, is_admissible, theta

__all__ = [
    "AlgebraElement",
    "ModuleVector",
    "RegimeError",
    "LETTERS",
    "basis_indices",
    "grade_of",
    "act",
    "generator_matrix",
    "element_matrix",
    "pairing",
    "pairing_weight",
    "grade_decompose",
    "hw_space",
    "hw_space_right",
    "theta_vector",
    "theta_bar_vector",
    "theta_explicit",
    "theta_bar_explicit",
    "conformal_block",
    "conformal_block_bar",
    "cb_pairing_expected",
    "tau_vector",
    "tau_bar_vector",
    "singlet",
    "apply_L",
    "apply_R",
    "flat_diagram_matrix",
    "w_vector",
    "w_bar_vector",
    "descendant",
    "embedding_matrix",
    "projection_hat_matrix",
    "projector_matrix",
    "embedding_bar_matrix",
    "projection_hat_bar_matrix",
    "pair_maps",
    "star_vector",
    "op_vector",
    "alt_pairing",
    "coproduct_power_terms",
]

LETTERS = ("E", "F", "K", "Ki", "H")


class RegimeError(ValueError):
    """A construction needs sizes below the order of q."""


# ---------------------------------------------------------------------------
# algebra elements


class AlgebraElement:
    __slots__ = ("ring", "bar", "terms")

    def __init__(self, ring: Ring, terms: dict | None = None, bar: bool = False):
        self.ring = ring
        self.bar = bar
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}
        for w in self.terms:
            for a in w:
                if a not in LETTERS:
                    raise ValueError(f"unknown generator {a!r}")

    @staticmethod
    def one(ring: Ring, bar: bool = False) -> AlgebraElement:
        return AlgebraElement(ring, {(): ring.one}, bar)

    @staticmethod
    def gen(ring: Ring, letter: str, bar: bool = False) -> AlgebraElement:
        return AlgebraElement(ring, {(letter,): ring.one}, bar)

    @staticmethod
    def pbw(ring: Ring, k: int, m: int, l: int, bar: bool = False) -> AlgebraElement:
        """E^k K^m F^l."""
        if k < 0 or l < 0:
            raise ValueError("PBW exponents of E and F must be nonnegative")
        kw = ("K",) * m if m >= 0 else ("Ki",) * (-m)
        return AlgebraElement(ring, {("E",) * k + kw + ("F",) * l: ring.one}, bar)

    def _check(self, o: AlgebraElement):
        if self.bar != o.bar:
            raise ValueError("cannot mix plain and barred generators")

    def __add__(self, o: AlgebraElement) -> AlgebraElement:
        self._check(o)
        t = dict(self.terms)
        for w, c in o.terms.items():
            t[w] = t[w] + c if w in t else c
        return AlgebraElement(self.ring, t, self.bar)

    def __neg__(self):
        return AlgebraElement(self.ring, {w: -c for w, c in self.terms.items()}, self.bar)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> AlgebraElement:
        c = c if hasattr(c, "ring") else self.ring.coerce(c)
        return AlgebraElement(self.ring, {w: x * c for w, x in self.terms.items()}, self.bar)

    def __mul__(self, o):
        if isinstance(o, AlgebraElement):
            self._check(o)
            t: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in o.terms.items():
                    w = w1 + w2
                    t[w] = t[w] + c1 * c2 if w in t else c1 * c2
            return AlgebraElement(self.ring, t, self.bar)
        return self.scale(o)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int) -> AlgebraElement:
        out = AlgebraElement.one(self.ring, self.bar)
        for _ in range(k):
            out = out * self
        return out

    def star(self) -> AlgebraElement:
        """Anti-isomorphism E -> F-bar, F -> E-bar, K -> K-bar between the two algebras."""
        swap = {"E": "F", "F": "E", "K": "K", "Ki": "Ki", "H": "H"}
        return AlgebraElement(
            self.ring, {tuple(swap[a] for a in reversed(w)): c for w, c in self.terms.items()}, not self.bar
        )

    def op(self) -> AlgebraElement:
        """Word reversal into the other algebra; the caller reads it at q^-1."""
        return AlgebraElement(self.ring, {tuple(reversed(w)): c for w, c in self.terms.items()}, not self.bar)

    def __eq__(self, o) -> bool:
        return isinstance(o, AlgebraElement) and self.bar == o.bar and (self - o).terms == {}

    def __repr__(self):
        if not self.terms:
            return "0"
        b = "~" if self.bar else ""
        parts = []
        for w, c in sorted(self.terms.items()):
            word = "".join(b + a for a in w) or "1"
            parts.append(f"({self.ring.fmt(c)})*{word}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# vectors


@dataclass
class ModuleVector:
    ring: Ring
    multiindex: tuple[int, ...]
    side: str = "left"
    coords: dict = field(default_factory=dict)

    def __post_init__(self):
        self.multiindex = tuple(self.multiindex)
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.coords = {k: c for k, c in self.coords.items() if not c.is_zero()}
        for idx in self.coords:
            if len(idx) != len(self.multiindex) or any(not 0 <= l <= s for l, s in zip(idx, self.multiindex)):
                raise ValueError(f"index {idx} out of range for {self.multiindex}")

    @staticmethod
    def basis(ring: Ring, mi, idx, side: str = "left") -> ModuleVector:
        return ModuleVector(ring, tuple(mi), side, {tuple(idx): ring.one})

    @staticmethod
    def zero(ring: Ring, mi, side: str = "left") -> ModuleVector:
        return ModuleVector(ring, tuple(mi), side, {})

    def _like(self, coords: dict) -> ModuleVector:
        return ModuleVector(self.ring, self.multiindex, self.side, coords)

    def _check(self, o: ModuleVector):
        if self.multiindex != o.multiindex or self.side != o.side:
            raise ValueError("vectors live in different spaces")

    def __add__(self, o: ModuleVector) -> ModuleVector:
        self._check(o)
        t = dict(self.coords)
        for k, c in o.coords.items():
            t[k] = t[k] + c if k in t else c
        return self._like(t)

    def __neg__(self):
        return self._like({k: -c for k, c in self.coords.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> ModuleVector:
        c = c if hasattr(c, "ring") else self.ring.coerce(c)
        return self._like({k: x * c for k, x in self.coords.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, o) -> bool:
        return (
            isinstance(o, ModuleVector)
            and self.multiindex == o.multiindex
            and self.side == o.side
            and (self - o).is_zero()
        )

    def tensor(self, o: ModuleVector) -> ModuleVector:
        if self.side != o.side:
            raise ValueError("cannot tensor left and right vectors")
        t = {}
        for k1, c1 in self.coords.items():
            for k2, c2 in o.coords.items():
                t[k1 + k2] = c1 * c2
        return ModuleVector(self.ring, self.multiindex + o.multiindex, self.side, t)

    def to_dense(self) -> dict:
        """Coordinates keyed by position in the lexicographic basis."""
        pos = _basis_pos(self.multiindex)
        return {pos[k]: c for k, c in self.coords.items()}

    @staticmethod
    def from_dense(ring: Ring, mi, vec: dict, side: str = "left") -> ModuleVector:
        idx = basis_indices(tuple(mi))
        return ModuleVector(ring, tuple(mi), side, {idx[j]: c for j, c in vec.items()})

    def grade(self) -> int | None:
        gs = {grade_of(k, self.multiindex) for k in self.coords}
        return gs.pop() if len(gs) == 1 else None

    def to_json(self) -> dict:
        return {
            "multiindex": list(self.multiindex),
            "side": self.side,
            "coords": [{"idx": list(k), "c": self.ring.fmt(c)} for k, c in sorted(self.coords.items())],
        }

    @staticmethod
    def from_json(ring: Ring, obj: dict) -> ModuleVector:
        return ModuleVector(
            ring,
            tuple(obj["multiindex"]),
            obj.get("side", "left"),
            {tuple(e["idx"]): ring.parse(str(e["c"])) for e in obj["coords"]},
        )

    def __repr__(self):
        b = "eb" if self.side == "right" else "e"
        if not self.coords:
            return "0"
        return " + ".join(
            f"({self.ring.fmt(c)})*{b}{list(k)}" for k, c in sorted(self.coords.items())
        )


@functools.lru_cache(maxsize=None)
def basis_indices(mi: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(*[range(s + 1) for s in mi]))


@functools.lru_cache(maxsize=None)
def _basis_pos(mi: tuple[int, ...]) -> dict:
    return {k: j for j, k in enumerate(basis_indices(mi))}


def grade_of(idx, mi) -> int:
    return n_of(mi) - 2 * sum(idx)


# ---------------------------------------------------------------------------
# generator actions


def _k_factor(ring: Ring, s: int, l: int, power: int):
    return ring.q_pow(power * (s - 2 * l))


def _site(ring: Ring, letter: str, bar: bool, side: str, s: int, l: int):
    """Action of one generator on a single basis vector: (new index, coefficient) or None."""
    if letter in ("K", "Ki"):
        return l, _k_factor(ring, s, l, 1 if letter == "K" else -1)
    if letter == "H":
        return l, ring.coerce(s - 2 * l)
    # lowering/raising in the index: left F and right E go up, left E and right F go down
    up = (letter == "F") == (side == "left")
    if up:
        if l >= s:
            return None
        c = ring.one
        nl = l + 1
    else:
        if l <= 0:
            return None
        c = ring.q_int(l) * ring.q_int(s - l + 1)
        nl = l - 1
    if bar:
        w = s - 2 * l
        if side == "left":
            c = c * ring.q_pow(-1 + w if letter == "F" else -1 - w)
        else:
            c = c * ring.q_pow(1 - w if letter == "E" else 1 + w)
    return nl, c


def _apply_letter(letter: str, bar: bool, v: ModuleVector) -> ModuleVector:
    ring, mi, side = v.ring, v.multiindex, v.side
    out: dict = {}

    def add(k, c):
        out[k] = out[k] + c if k in out else c

    if letter in ("K", "Ki"):
        p = 1 if letter == "K" else -1
        for idx, c in v.coords.items():
            add(idx, c * ring.q_pow(p * grade_of(idx, mi)))
        return v._like(out)
    if letter == "H":
        for idx, c in v.coords.items():
            add(idx, c * ring.coerce(grade_of(idx, mi)))
        return v._like(out)
    # dressing: which tensorands get K^{+-1}
    if letter == "E":
        later, power = (True, 1) if not bar else (False, -1)
    else:
        later, power = (False, -1) if not bar else (True, 1)
    for idx, c in v.coords.items():
        for j, (s, l) in enumerate(zip(mi, idx)):
            hit = _site(ring, letter, bar, side, s, l)
            if hit is None:
                continue
            nl, a = hit
            others = idx[j + 1:] if later else idx[:j]
            osz = mi[j + 1:] if later else mi[:j]
            w = sum(ss - 2 * ll for ss, ll in zip(osz, others))
            if w:
                a = a * ring.q_pow(power * w)
            add(idx[:j] + (nl,) + idx[j + 1:], c * a)
    return v._like(out)


def act(x: AlgebraElement, v: ModuleVector) -> ModuleVector:
    """x.v for left vectors, v.x for right vectors."""
    if x.ring is not v.ring:
        raise ValueError("algebra element and vector use different rings")
    total = ModuleVector.zero(v.ring, v.multiindex, v.side)
    for word, c in x.terms.items():
        w = v
        letters = reversed(word) if v.side == "left" else word
        for a in letters:
            w = _apply_letter(a, x.bar, w)
            if w.is_zero():
                break
        total = total + w.scale(c)
    return total


def generator_matrix(ring: Ring, mi, letter: str, bar: bool = False, side: str = "left") -> Matrix:
    """Matrix of one generator on the lexicographic basis.

    Left: column j holds x.e_j.  Right: row i holds e-bar_i.x, so row vectors multiply from the left.
    """
    return element_matrix(AlgebraElement.gen(ring, letter, bar), mi, side)


def element_matrix(x: AlgebraElement, mi, side: str = "left") -> Matrix:
    mi = tuple(mi)
    ring = x.ring
    idx = basis_indices(mi)
    pos = _basis_pos(mi)
    e = {}
    for j, k in enumerate(idx):
        w = act(x, ModuleVector.basis(ring, mi, k, side))
        for kk, c in w.coords.items():
            if side == "left":
                e[(pos[kk], j)] = c
            else:
                e[(j, pos[kk])] = c
    return Matrix(ring, len(idx), len(idx), e)


def coproduct_power_terms(ring: Ring, k: int, m: int, l: int):
    """Terms (coef, (k1,m1,l1), (k2,m2,l2)) of the closed coproduct of E^k K^m F^l."""
    out = []
    for i in range(k + 1):
        for j in range(l + 1):
            c = ring.q_pow(i * (k - i) - j * (l - j)) * ring.q_binomial(k, i) * ring.q_binomial(l, j)
            out.append((c, (k - i, m - l + j, j), (i, m + k - i, l - j)))
    return out


# ---------------------------------------------------------------------------
# pairing and grades


def pairing_weight(ring: Ring, s: int, l: int):
    return ring.q_factorial(l) ** 2 * ring.q_binomial(s, l)


def pairing(vbar: ModuleVector, w: ModuleVector):
    """<v-bar, w>: diagonal on the standard bases with weights [l]!^2 binom(s, l)."""
    if vbar.side != "right" or w.side != "left":
        raise ValueError("pairing takes a right vector and a left vector")
    if vbar.multiindex != w.multiindex:
        raise ValueError("multiindex mismatch in pairing")
    ring = w.ring
    mi = w.multiindex
    acc = ring.zero
    small, big = (vbar.coords, w.coords) if len(vbar.coords) <= len(w.coords) else (w.coords, vbar.coords)
    for idx, c in small.items():
        d = big.get(idx)
        if d is None:
            continue
        wt = ring.one
        for s, l in zip(mi, idx):
            if l:
                wt = wt * pairing_weight(ring, s, l)
        acc = acc + c * d * wt
    return acc


def grade_decompose(v: ModuleVector) -> dict[int, ModuleVector]:
    parts: dict[int, dict] = {}
    for idx, c in v.coords.items():
        parts.setdefault(grade_of(idx, v.multiindex), {})[idx] = c
    return {s: v._like(t) for s, t in sorted(parts.items())}


def _grade_indices(mi, s):
    return [k for k in basis_indices(mi) if grade_of(k, mi) == s]


def _hw_nullspace(ring: Ring, mi, s: int, side: str) -> list[ModuleVector]:
    mi = tuple(mi)
    src = _grade_indices(mi, s)
    if not src:
        return []
    # left: kernel of E (raises the grade); right: kernel of F acting on the right
    letter = "E" if side == "left" else "F"
    tgt = _grade_indices(mi, s + 2)
    tpos = {k: j for j, k in enumerate(tgt)}
    x = AlgebraElement.gen(ring, letter)
    e = {}
    for j, k in enumerate(src):
        w = act(x, ModuleVector.basis(ring, mi, k, side))
        for kk, c in w.coords.items():
            e[(tpos[kk], j)] = c
    M = Matrix(ring, max(len(tgt), 1), len(src), e)
    out = []
    for vec in nullspace(M):
        out.append(ModuleVector(ring, mi, side, {src[j]: c for j, c in vec.items()}))
    return out


def hw_space(ring: Ring, mi, s: int) -> list[ModuleVector]:
    """Echelon basis of the grade-s highest-weight vectors {v : E.v = 0}."""
    return _hw_nullspace(ring, mi, s, "left")


def hw_space_right(ring: Ring, mi, s: int) -> list[ModuleVector]:
    """Right counterpart: grade-s vectors with v.F = 0."""
    return _hw_nullspace(ring, mi, s, "right")


# ---------------------------------------------------------------------------
# theta vectors and embeddings


def _require(ring: Ring, size: int, what: str):
    if size >= ring.regime_bound():
        raise RegimeError(f"{what} needs size {size} < p(q) = {ring.order()}")


def theta_vector(ring: Ring, n: int, l: int) -> ModuleVector:
    """F^l applied to e_0 tensored n times."""
    v = ModuleVector.basis(ring, (1,) * n, (0,) * n)
    return act(AlgebraElement.gen(ring, "F") ** l, v)


def theta_bar_vector(ring: Ring, n: int, l: int) -> ModuleVector:
    v = ModuleVector.basis(ring, (1,) * n, (0,) * n, "right")
    return act(AlgebraElement.gen(ring, "E") ** l, v)


def theta_explicit(ring: Ring, n: int, l: int) -> ModuleVector:
    pref = ring.q_pow(l * (l - 1) // 2) * ring.q_factorial(l)
    t = {}
    for rs in itertools.combinations(range(1, n + 1), l):
        idx = tuple(1 if i in rs else 0 for i in range(1, n + 1))
        t[idx] = pref * ring.q_pow(sum(1 - r for r in rs))
    return ModuleVector(ring, (1,) * n, "left", t)


def theta_bar_explicit(ring: Ring, n: int, l: int) -> ModuleVector:
    pref = ring.q_pow(-(l * (l - 1) // 2)) * ring.q_factorial(l)
    t = {}
    for rs in itertools.combinations(range(1, n + 1), l):
        idx = tuple(1 if i in rs else 0 for i in range(1, n + 1))
        t[idx] = pref * ring.q_pow(sum(n - r for r in rs))
    return ModuleVector(ring, (1,) * n, "right", t)


@functools.lru_cache(maxsize=None)
def _single_maps(ring: Ring, s: int):
    """(embedding, hat projection, bar embedding, bar hat projection) for one bin of size s."""
    _require(ring, s, "the Jones-Wenzl embedding")
    flat = (1,) * s
    pos = _basis_pos(flat)
    N = 2 ** s
    th = [theta_vector(ring, s, l) for l in range(s + 1)]
    thb = [theta_bar_vector(ring, s, l) for l in range(s + 1)]
    norms = [pairing(thb[l], th[l]) for l in range(s + 1)]
    if any(x.is_zero() for x in norms):
        raise RegimeError(f"theta vectors of size {s} are degenerate at {ring.spec}")
    J, P, Jb, Pb = {}, {}, {}, {}
    for l in range(s + 1):
        inv = norms[l].inverse()
        for k, c in th[l].coords.items():
            J[(pos[k], l)] = c
        # hat projection reads off <theta-bar_l, v> / <theta-bar_l, theta_l>
        for k, c in thb[l].coords.items():
            P[(l, pos[k])] = c * inv
            Jb[(l, pos[k])] = c
        for k, c in th[l].coords.items():
            Pb[(pos[k], l)] = c * inv
    # the pairing weights on flat space are all 1, so a plain dot product suffices
    return (
        Matrix(ring, N, s + 1, J),
        Matrix(ring, s + 1, N, P),
        Matrix(ring, s + 1, N, Jb),
        Matrix(ring, N, s + 1, Pb),
    )


def _kron_all(ring: Ring, mats: list[Matrix]) -> Matrix:
    out = Matrix.identity(ring, 1)
    for M in mats:
        out = out.kron(M)
    return out


@functools.lru_cache(maxsize=None)
def embedding_matrix(ring: Ring, mi: tuple[int, ...]) -> Matrix:
    """Composite embedding V_mi -> V_n sending e_l to theta_l in each bin."""
    return _kron_all(ring, [_single_maps(ring, s)[0] for s in mi])


@functools.lru_cache(maxsize=None)
def projection_hat_matrix(ring: Ring, mi: tuple[int, ...]) -> Matrix:
    """Composite left inverse V_n -> V_mi, zero on the complementary submodule."""
    return _kron_all(ring, [_single_maps(ring, s)[1] for s in mi])


@functools.lru_cache(maxsize=None)
def projector_matrix(ring: Ring, mi: tuple[int, ...]) -> Matrix:
    return embedding_matrix(ring, mi) @ projection_hat_matrix(ring, mi)


@functools.lru_cache(maxsize=None)
def embedding_bar_matrix(ring: Ring, mi: tuple[int, ...]) -> Matrix:
    """Row-vector map: e-bar_l (row) times this matrix gives theta-bar_l."""
    return _kron_all(ring, [_single_maps(ring, s)[2] for s in mi])


@functools.lru_cache(maxsize=None)
def projection_hat_bar_matrix(ring: Ring, mi: tuple[int, ...]) -> Matrix:
    """Row-vector map from flat bar space onto the bar space of mi."""
    return _kron_all(ring, [_single_maps(ring, s)[3] for s in mi])


def apply_matrix(M: Matrix, v: ModuleVector, target_mi) -> ModuleVector:
    """Left vectors: M v.  Right vectors: v M (row times matrix)."""
    if v.side == "left":
        out = M.apply(v.to_dense())
    else:
        out = M.transpose().apply(v.to_dense())
    return ModuleVector.from_dense(v.ring, target_mi, out, v.side)


# ---------------------------------------------------------------------------
# conformal blocks


def _eta_coeff(ring: Ring, r: int, t: int, s: int, i: int, j: int, bar: bool):
    k = (r + t - s) // 2
    qf = ring.q_factorial
    den = qf(i) * qf(j) * qf(r) * qf(t)
    c = qf(r - i) * qf(t - j) / den
    if not bar:
        sign = -1 if j % 2 else 1
        c = c * ring.q_pow(j * (t + 1 - j))
    else:
        sign = -1 if i % 2 else 1
        c = c * ring.q_pow(-i * (r + 1 - i))
    qq = ring.q - ring.q.inverse()
    if k and qq.is_zero():
        raise RegimeError("conformal-block vectors need q != +-1")
    if sign < 0:
        c = -c
    return c * (qq ** k).inverse() if k else c


def _eta(ring: Ring, v: ModuleVector, r: int, t: int, s: int, bar: bool) -> ModuleVector:
    if not is_admissible(r, s, t) or s not in defect_interval(r, t):
        raise ValueError(f"inadmissible step ({r},{t}) -> {s}")
    _require(ring, max(r, t), "the conformal-block map")
    k = (r + t - s) // 2
    out = ModuleVector.zero(ring, v.multiindex + (t,), v.side)
    x = AlgebraElement.gen(ring, "E" if bar else "F")
    cur = v
    for i in range(k + 1):
        j = k - i
        c = _eta_coeff(ring, r, t, s, i, j, bar)
        out = out + cur.tensor(ModuleVector.basis(ring, (t,), (j,), v.side)).scale(c)
        cur = act(x, cur)
    return out


def conformal_block(ring: Ring, walk, mi) -> ModuleVector:
    """u^rho over mi, built by adding one bin at a time."""
    walk, mi = tuple(walk), tuple(mi)
    if walk not in walks_over(mi):
        raise ValueError(f"{walk} is not a walk over {mi}")
    _require(ring, max(mi), "conformal-block vectors")
    if walk[:-1]:
        _require(ring, max(walk[:-1]), "conformal-block vectors")
    u = ModuleVector.basis(ring, mi[:1], (0,))
    for d in range(1, len(mi)):
        u = _eta(ring, u, walk[d - 1], mi[d], walk[d], bar=False)
    return u


def conformal_block_bar(ring: Ring, walk, mi) -> ModuleVector:
    walk, mi = tuple(walk), tuple(mi)
    if walk not in walks_over(mi):
        raise ValueError(f"{walk} is not a walk over {mi}")
    _require(ring, max(mi), "conformal-block vectors")
    if walk[:-1]:
        _require(ring, max(walk[:-1]), "conformal-block vectors")
    u = ModuleVector.basis(ring, mi[:1], (0,), "right")
    for d in range(1, len(mi)):
        u = _eta(ring, u, walk[d - 1], mi[d], walk[d], bar=True)
    return u


def tau_vector(ring: Ring, r: int, t: int, s: int) -> ModuleVector:
    return conformal_block(ring, (r, s), (r, t))


def tau_bar_vector(ring: Ring, r: int, t: int, s: int) -> ModuleVector:
    return conformal_block_bar(ring, (r, s), (r, t))


def cb_pairing_expected(ring: Ring, walk, mi):
    """Closed-form value of <u-bar^rho, u^rho>: product of Theta ratios over the steps.

    Each step carries the sign (-1)^s of the loop-erasure identity; without it the
    product disagrees with direct evaluation already for e_0 x e_0 over (2, 1).
    """
    walk, mi = tuple(walk), tuple(mi)
    qq = ring.q - ring.q.inverse()
    acc = ring.one
    for j in range(len(mi) - 1):
        r, s, t = walk[j], walk[j + 1], mi[j + 1]
        e = r + t - s
        den = qq ** e * ring.q_factorial(e // 2) ** 2 * ring.q_int(s + 1)
        if s % 2:
            den = -den
        acc = acc * theta(r, s, t, ring) / den
    return acc


# ---------------------------------------------------------------------------
# Temperley-Lieb generators on flat spaces


def singlet(ring: Ring, side: str = "left") -> ModuleVector:
    a = ring.i * ring.v
    b = -(ring.i * ring.v.inverse())
    return ModuleVector(ring, (1, 1), side, {(0, 1): a, (1, 0): b})


def apply_L(ring: Ring, i: int, v: ModuleVector) -> ModuleVector:
    """Insert the singlet at tensorands i, i+1 of a flat vector."""
    n = len(v.multiindex) + 2
    if not 1 <= i <= n - 1:
        raise ValueError(f"L_{i} out of range for n = {n}")
    a = ring.i * ring.v
    b = -(ring.i * ring.v.inverse())
    out = {}
    for idx, c in v.coords.items():
        out[idx[: i - 1] + (0, 1) + idx[i - 1:]] = c * a
        out[idx[: i - 1] + (1, 0) + idx[i - 1:]] = c * b
    return ModuleVector(ring, (1,) * n, v.side, out)


def apply_R(ring: Ring, j: int, v: ModuleVector) -> ModuleVector:
    """Contract tensorands j, j+1 of a flat vector with the cap weights."""
    n = len(v.multiindex)
    if not 1 <= j <= n - 1:
        raise ValueError(f"R_{j} out of range for n = {n}")
    a = ring.i * ring.v
    b = -(ring.i * ring.v.inverse())
    out: dict = {}
    for idx, c in v.coords.items():
        pair = idx[j - 1: j + 1]
        if pair == (0, 1):
            w = a
        elif pair == (1, 0):
            w = b
        else:
            continue
        k = idx[: j - 1] + idx[j + 1:]
        out[k] = out[k] + c * w if k in out else c * w
    return ModuleVector(ring, (1,) * (n - 2), v.side, out)


_diag_cache: dict = {}


def flat_diagram_matrix(ring: Ring, d) -> Matrix:
    """Matrix of a flat link diagram d in TL_n^m, acting V_m -> V_n through its standard form."""
    from .diagram import standard_form

    key = (ring.spec, d)
    hit = _diag_cache.get(key)
    if hit is not None:
        return hit
    ls, s, rs = standard_form(d)
    mdim = 2 ** d.m
    pos_n = _basis_pos((1,) * d.n)
    e = {}
    for j, idx in enumerate(basis_indices((1,) * d.m)):
        v = ModuleVector.basis(ring, (1,) * d.m, idx)
        for jj in reversed(rs):
            v = apply_R(ring, jj, v)
            if v.is_zero():
                break
        if v.is_zero():
            continue
        for ii in ls:
            v = apply_L(ring, ii, v)
        for k, c in v.coords.items():
            e[(pos_n[k], j)] = c
    M = Matrix(ring, 2 ** d.n, mdim, e)
    _diag_cache[key] = M
    return M


# ---------------------------------------------------------------------------
# link-pattern vectors


def _flat_w(ring: Ring, alpha) -> ModuleVector:
    from .diagram import pattern_diagram, standard_form

    d = pattern_diagram(alpha)
    ls, s, rs = standard_form(d)
    assert not rs
    v = ModuleVector.basis(ring, (1,) * s, (0,) * s)
    for i in ls:
        v = apply_L(ring, i, v)
    return v


def _flat_w_bar(ring: Ring, alpha) -> ModuleVector:
    """Row vector e-bar_0^s times the matrix of the reflected pattern."""
    from .diagram import pattern_diagram

    d = pattern_diagram(alpha).reflect()
    M = flat_diagram_matrix(ring, d)
    row = {j: c for (i, j), c in M.entries.items() if i == 0}
    return ModuleVector.from_dense(ring, (1,) * alpha.n, row, "right")


def _state_of(ring: Ring, alpha, mi):
    from .combin import LinkPattern, ValencedLinkPattern
    from .diagram import LinkState

    if isinstance(alpha, LinkState):
        return alpha
    if isinstance(alpha, ValencedLinkPattern):
        return LinkState.of(ring, alpha)
    if isinstance(alpha, LinkPattern):
        return LinkState.of(ring, alpha, mi)
    raise TypeError(f"not a link state: {alpha!r}")


def w_vector(ring: Ring, alpha, mi=None) -> ModuleVector:
    """w_alpha: singlets and e_0 defects; valenced states go through the JW embedding."""
    from .diagram import embed_state

    st = _state_of(ring, alpha, mi)
    flat = embed_state(st)
    n = n_of(st.mi)
    out = ModuleVector.zero(ring, (1,) * n)
    for p, c in flat.terms.items():
        out = out + _flat_w(ring, p).scale(c)
    if all(s == 1 for s in st.mi):
        return out
    return apply_matrix(projection_hat_matrix(ring, st.mi), out, st.mi)


def w_bar_vector(ring: Ring, alpha, mi=None) -> ModuleVector:
    from .diagram import embed_state

    st = _state_of(ring, alpha, mi)
    flat = embed_state(st)
    n = n_of(st.mi)
    out = ModuleVector.zero(ring, (1,) * n, "right")
    for p, c in flat.terms.items():
        out = out + _flat_w_bar(ring, p).scale(c)
    if all(s == 1 for s in st.mi):
        return out
    return apply_matrix(projection_hat_bar_matrix(ring, st.mi), out, st.mi)


def descendant(v: ModuleVector, l: int, s: int | None = None) -> ModuleVector:
    """F^l.v for a highest-weight vector of grade s."""
    if s is None:
        s = v.grade()
    if s is None or not 0 <= l <= s:
        raise ValueError(f"descendant index {l} out of range for grade {s}")
    return act(AlgebraElement.gen(v.ring, "F") ** l, v)


# ---------------------------------------------------------------------------
# two-tensorand submodule maps


@dataclass
class PairMaps:
    r: int
    t: int
    s: int
    iota: Matrix  # V_(s) -> V_(r,t)
    pi: Matrix  # V_(r,t) -> V_(r,t)
    pi_hat: Matrix  # V_(r,t) -> V_(s)


@functools.lru_cache(maxsize=None)
def pair_maps(ring: Ring, r: int, t: int, s: int) -> PairMaps:
    if s not in defect_interval(r, t):
        raise ValueError(f"{s} is not in E({r},{t})")
    _require(ring, r + t, "two-tensorand projectors")
    mi = (r, t)
    pos = _basis_pos(mi)
    N = len(pos)
    u = tau_vector(ring, r, t, s)
    ub = tau_bar_vector(ring, r, t, s)
    F = AlgebraElement.gen(ring, "F")
    E = AlgebraElement.gen(ring, "E")
    iota, pihat = {}, {}
    cur, curb = u, ub
    for l in range(s + 1):
        norm = pairing(curb, cur)
        if norm.is_zero():
            raise RegimeError(f"degenerate pairing in pair maps ({r},{t};{s})")
        inv = norm.inverse()
        for k, c in cur.coords.items():
            iota[(pos[k], l)] = c
        for k, c in curb.coords.items():
            wt = inv
            for b, x in zip(mi, k):
                if x:
                    wt = wt * pairing_weight(ring, b, x)
            pihat[(l, pos[k])] = c * wt
        cur, curb = act(F, cur), act(E, curb)
    I = Matrix(ring, N, s + 1, iota)
    Ph = Matrix(ring, s + 1, N, pihat)
    return PairMaps(r, t, s, I, I @ Ph, Ph)


# ---------------------------------------------------------------------------
# star and op


def star_vector(v: ModuleVector) -> ModuleVector:
    """e_l -> q^{-l(s-l)} e-bar_l and back, factorwise."""
    ring = v.ring
    sign = -1 if v.side == "left" else 1
    out = {}
    for idx, c in v.coords.items():
        e = sum(l * (s - l) for s, l in zip(v.multiindex, idx))
        out[idx] = c * ring.q_pow(sign * e)
    return ModuleVector(ring, v.multiindex, "right" if v.side == "left" else "left", out)


def op_vector(v: ModuleVector) -> ModuleVector:
    """e_l -> [l]!/([s]![s-l]!) e-bar_{s-l} and e-bar_l -> [s]![l]!/[s-l]! e_{s-l}, factorwise."""
    ring = v.ring
    qf = ring.q_factorial
    out = {}
    for idx, c in v.coords.items():
        a = c
        for s, l in zip(v.multiindex, idx):
            if v.side == "left":
                a = a * qf(l) / (qf(s) * qf(s - l))
            else:
                a = a * qf(s) * qf(l) / qf(s - l)
        out[tuple(s - l for s, l in zip(v.multiindex, idx))] = a
    return ModuleVector(ring, v.multiindex, "right" if v.side == "left" else "left", out)


def alt_pairing(v: ModuleVector, w: ModuleVector):
    """<v, w> read through the op map on the first argument (two left vectors)."""
    if v.side != "left" or w.side != "left":
        raise ValueError("alt_pairing takes two left vectors")
    return pairing(op_vector(v), w)
