"""The Temperley-Lieb action on V_mi, commutants and Schur-Weyl checks.

Generic-q rank statements are evaluated at the rational point v = 2: rank can
only drop under specialization, so a full rank found there is a full rank for
generic q.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

from .combin import defect_interval, dims_D, n_of, valenced_link_patterns
from .diagram import (
    LinkState,
    Tangle,
    act_on_state,
    compose,
    embed_tangle,
    gram_matrix,
    three_vertex,
    valenced_diagrams,
    valenced_U,
)
from .linalg import Matrix, nullspace, rank
from .scalar import QSpec, Ring, ScalarError, get_ring, theta
from .uqrep import (
    AlgebraElement,
    ModuleVector,
    RegimeError,
    act,
    apply_matrix,
    basis_indices,
    element_matrix,
    embedding_matrix,
    flat_diagram_matrix,
    grade_of,
    hw_space,
    hw_space_right,
    pair_maps,
    pairing,
    projection_hat_matrix,
    singlet,
    w_bar_vector,
    w_vector,
)

log = logging.getLogger("qsw.duality")

__all__ = [
    "ActionMatrix",
    "DualityReport",
    "tl_action",
    "rho_matrices",
    "commutant",
    "uq_commutant",
    "tl_commutant",
    "image_dim",
    "tl_dim",
    "verify_duality",
    "check_isomorphism",
    "consecutive_generators",
    "consecutive_projector_generators",
    "ab_constants",
    "check_ab_constants",
    "check_open_up",
    "radical_checks",
    "exceptional_qi_checks",
    "classical_mode",
    "grade_element",
    "rho_image_kernel",
    "algebra_closure",
    "default_point",
]

DEFAULT_POINT = QSpec.rational(2)


def default_point() -> Ring:
    return get_ring(DEFAULT_POINT)


# ---------------------------------------------------------------------------
# the diagram action


@dataclass
class ActionMatrix:
    operator: Matrix
    source_tangle: Tangle | None
    q: QSpec


def _flat_matrix(T: Tangle, ring: Ring) -> Matrix:
    out = Matrix.zeros(ring, 2 ** T.n, 2 ** T.m)
    for d, c in T.terms.items():
        out = out + flat_diagram_matrix(ring, d).scale(c)
    return out


def tl_action(T: Tangle, ring: Ring | None = None) -> ActionMatrix:
    """Matrix of T : V_right -> V_left, conjugating the flat action by the JW embeddings."""
    ring = ring or T.ring
    if T.is_flat:
        return ActionMatrix(_flat_matrix(T, ring), T, ring.spec)
    flat = embed_tangle(T)
    M = projection_hat_matrix(ring, T.left) @ _flat_matrix(flat, ring) @ embedding_matrix(ring, T.right)
    return ActionMatrix(M, T, ring.spec)


def _is_classical(ring: Ring) -> bool:
    return ring.spec.mode == "classical"


def rho_matrices(ring: Ring, mi) -> dict[str, Matrix]:
    """Generator matrices on V_mi; H replaces K at q = 1."""
    mi = tuple(mi)
    letters = ("E", "F", "H") if _is_classical(ring) else ("E", "F", "K")
    return {a: element_matrix(AlgebraElement.gen(ring, a), mi) for a in letters}


def tl_dim(mi) -> int:
    return sum(d * d for d in dims_D(tuple(mi)).values())


# ---------------------------------------------------------------------------
# commutants


def commutant(gens: list[Matrix], labels: list | None = None) -> list[Matrix]:
    """Basis of {X : X A = A X for all A}.

    When ``labels`` is given, X is restricted to be block diagonal for it; pass
    eigenvalue labels of an operator in ``gens`` to cut the unknowns down.
    """
    if not gens:
        raise ValueError("commutant needs at least one operator")
    ring = gens[0].ring
    if not ring.exact:
        raise ScalarError("commutants need exact arithmetic; float mode is rejected")
    N = gens[0].nrows
    if labels is None:
        labels = [0] * N
    unknowns = [(i, j) for i in range(N) for j in range(N) if labels[i] == labels[j]]
    upos = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for A in gens:
        Ar, Ac = A.rows_dict(), A.cols_dict()
        for i in range(N):
            for k in range(N):
                row: dict = {}
                # (X A)_{ik} = sum_j X_ij A_jk
                for j, a in Ac[k].items():
                    u = upos.get((i, j))
                    if u is not None:
                        row[u] = row[u] + a if u in row else a
                # (A X)_{ik} = sum_j A_ij X_jk
                for j, a in Ar[i].items():
                    u = upos.get((j, k))
                    if u is not None:
                        row[u] = row[u] - a if u in row else -a
                row = {u: c for u, c in row.items() if not c.is_zero()}
                if row:
                    rows.append(row)
    M = Matrix.from_rows(ring, len(unknowns), rows) if rows else Matrix.zeros(ring, 1, len(unknowns))
    out = []
    for vec in nullspace(M):
        out.append(Matrix(ring, N, N, {unknowns[u]: c for u, c in vec.items()}))
    return out


def _weight_labels(ring: Ring, mi) -> list:
    """K-eigenvalue (or H-eigenvalue at q = 1) of each basis vector."""
    if _is_classical(ring):
        return [grade_of(k, mi) for k in basis_indices(mi)]
    return [ring.q_pow(grade_of(k, mi)) for k in basis_indices(mi)]


def uq_commutant(ring: Ring, mi) -> list[Matrix]:
    mi = tuple(mi)
    gens = list(rho_matrices(ring, mi).values())
    return commutant(gens, _weight_labels(ring, mi))


def consecutive_generators(ring: Ring, mi) -> list[Tangle]:
    """Three-vertex pairs on consecutive bins: the tangles sent to the pair projectors."""
    mi = tuple(mi)
    out = []
    for i in range(len(mi) - 1):
        r, t = mi[i], mi[i + 1]
        for s in defect_interval(r, t):
            Y = three_vertex(r, s, t, ring)
            X = compose(Y, Y.reflect())
            left = Tangle.unit(ring, mi[:i])
            right = Tangle.unit(ring, mi[i + 2:])
            out.append(left.tensor(X).tensor(right))
    return out


def tl_commutant(ring: Ring, mi) -> list[Matrix]:
    mi = tuple(mi)
    gens = [tl_action(T, ring).operator for T in consecutive_generators(ring, mi)]
    if not gens:
        gens = [Matrix.identity(ring, len(basis_indices(mi)))]
    return commutant(gens)


def image_dim(ring: Ring, mi) -> int:
    """Rank of the span of the images of all valenced diagrams."""
    mi = tuple(mi)
    vecs = []
    for d in valenced_diagrams(mi, mi):
        T = Tangle(ring, mi, mi, {d: ring.one})
        vecs.append(tl_action(T, ring).operator.flatten())
    N = len(basis_indices(mi))
    return rank(Matrix.from_rows(ring, N * N, vecs))


def algebra_closure(gens: list[Matrix], cap: int | None = None) -> list[Matrix]:
    """Basis of the unital algebra generated by gens, by span growth until a fixpoint."""
    ring = gens[0].ring
    N = gens[0].nrows
    cap = cap or N * N
    basis = [Matrix.identity(ring, N)]
    flat = [basis[0].flatten()]

    def try_add(M):
        trial = flat + [M.flatten()]
        if rank(Matrix.from_rows(ring, N * N, trial)) == len(trial):
            flat.append(trial[-1])
            basis.append(M)
            return True
        return False

    frontier = []
    for g in gens:
        if try_add(g):
            frontier.append(g)
    for _ in range(cap):
        new = []
        for B in frontier:
            for g in gens:
                P = B @ g
                if try_add(P):
                    new.append(P)
        if not new:
            break
        frontier = new
    return basis


# ---------------------------------------------------------------------------
# the report


@dataclass
class DualityReport:
    multiindex: tuple[int, ...]
    q: str
    dims: dict
    decomposition: list
    flags: dict
    notes: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        d["multiindex"] = list(self.multiindex)
        d["decomposition"] = [list(x) for x in self.decomposition]
        return d

    def to_plain(self) -> str:
        keys = list(self.dims) + list(self.flags) + [f"check {k}" for k in self.checks]
        w = max(len(k) for k in keys) + 2
        lines = [f"multiindex {','.join(map(str, self.multiindex))}   q {self.q}"]
        for k, v in self.dims.items():
            lines.append(f"  {k:<{w}}{'-' if v is None else v}")
        lines.append("  decomposition (s, multiplicity): " + " ".join(f"({s},{m})" for s, m in self.decomposition))
        for k, v in self.flags.items():
            lines.append(f"  {k:<{w}}{str(v).lower()}")
        for k, v in self.checks.items():
            lines.append(f"  {'check ' + k:<{w}}{'pass' if v else 'FAIL'}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _hw_dims(ring: Ring, mi) -> list[tuple[int, int]]:
    mi = tuple(mi)
    out = []
    for s in range(n_of(mi) % 2, n_of(mi) + 1, 2):
        d = len(hw_space(ring, mi, s))
        if d:
            out.append((s, d))
    return out


def check_isomorphism(ring: Ring, mi) -> bool:
    """F^l.w_alpha <-> e_l x alpha intertwines both actions on every basis vector."""
    mi = tuple(mi)
    E = AlgebraElement.gen(ring, "E")
    F = AlgebraElement.gen(ring, "F")
    K = AlgebraElement.gen(ring, "K")
    H = AlgebraElement.gen(ring, "H")
    classical = _is_classical(ring)
    basis = []
    gens = [tl_action(valenced_U(mi, j, ring), ring).operator for j in range(1, len(mi))]
    gtangles = [valenced_U(mi, j, ring) for j in range(1, len(mi))]
    for s, D in dims_D(mi).items():
        for alpha in valenced_link_patterns(mi, s):
            w = w_vector(ring, alpha)
            desc = [w]
            for l in range(s + 1):
                desc.append(act(F, desc[-1]))
            if not desc[s + 1].is_zero():
                return False
            for l in range(s + 1):
                b = desc[l]
                basis.append(b.to_dense())
                # quantum group side: acts on the e_l factor only
                if classical:
                    if act(H, b) != b.scale(s - 2 * l):
                        return False
                    want_e = l * (s - l + 1)
                else:
                    if act(K, b) != b.scale(ring.q_pow(s - 2 * l)):
                        return False
                    want_e = ring.q_int(l) * ring.q_int(s - l + 1)
                eb = act(E, b)
                if l == 0:
                    if not eb.is_zero():
                        return False
                elif eb != desc[l - 1].scale(want_e):
                    return False
                # diagram side: acts on the link-state factor only
                for T, M in zip(gtangles, gens):
                    lhs = apply_matrix(M, b, mi)
                    st = act_on_state(T, LinkState.of(ring, alpha))
                    rhs = ModuleVector.zero(ring, mi)
                    for p, c in st.terms.items():
                        rhs = rhs + act(F ** l, w_vector(ring, LinkState(ring, mi, s, {p: ring.one}))).scale(c)
                    if lhs != rhs:
                        return False
    N = len(basis_indices(mi))
    return len(basis) == N and rank(Matrix.from_rows(ring, N, basis)) == N


def verify_duality(
    mi,
    ring: Ring | None = None,
    tl_commutant_max_dim: int = 32,
    check_iso: bool = True,
) -> DualityReport:
    mi = tuple(mi)
    notes = []
    if ring is None or ring.spec.mode == "generic":
        if ring is not None:
            notes.append("generic q: ranks evaluated at the exact point v = 2")
        ring = default_point()
    mode = ring.spec.mode
    n = n_of(mi)
    p = ring.order()
    if max(mi) >= ring.regime_bound():
        raise RegimeError(f"multiindex entries must be < p(q) = {p}")
    N = len(basis_indices(mi))
    checks = {}
    semisimple_pre = n < ring.regime_bound()
    dim_tl = tl_dim(mi)
    dim_img = image_dim(ring, mi)
    dim_uq = len(uq_commutant(ring, mi))
    if N <= tl_commutant_max_dim:
        dim_tlc = len(tl_commutant(ring, mi))
        if semisimple_pre:
            checks["tl_commutant_equals_uq_image"] = dim_tlc == sum((s + 1) ** 2 for s in dims_D(mi))
    else:
        dim_tlc = None
        notes.append(f"commutant of the diagram action skipped: dim V = {N} > {tl_commutant_max_dim}")
    semisimple = n < ring.regime_bound()
    decomposition = _hw_dims(ring, mi)
    # commuting actions
    rho = rho_matrices(ring, mi)
    comm_ok = True
    for j in range(1, len(mi)):
        U = tl_action(valenced_U(mi, j, ring), ring).operator
        for A in rho.values():
            if (U @ A) != (A @ U):
                comm_ok = False
    checks["commuting_actions"] = comm_ok
    if semisimple:
        checks["hw_dims_match_D"] = dict(decomposition) == dims_D(mi)
        checks["commutant_equals_image"] = dim_uq == dim_img
        if check_iso:
            checks["isomorphism"] = check_isomorphism(ring, mi)
    else:
        notes.append("n >= p(q): equality of the commutant with the image is not asserted")
    faithful = dim_img == dim_tl
    checks["faithful"] = faithful
    if mode == "classical":
        notes.append("q = 1: H replaces K and the loop weight is -2")
    return DualityReport(
        multiindex=mi,
        q=str(ring.spec),
        dims={
            "dim_TL": dim_tl,
            "dim_image": dim_img,
            "dim_commutant_Uq": dim_uq,
            "dim_commutant_TL": dim_tlc,
        },
        decomposition=decomposition,
        flags={
            "faithful": faithful,
            "duality_holds": semisimple and dim_uq == dim_img,
            "semisimple_regime": semisimple,
        },
        notes=notes,
        checks=checks,
    )


def classical_mode(mi, **kw) -> DualityReport:
    return verify_duality(mi, get_ring(QSpec.classical()), **kw)


# ---------------------------------------------------------------------------
# consecutive pair projectors


def ab_constants(ring: Ring, r: int, t: int, s: int):
    """(A, B) with the vertex into (s) acting as A pi-hat and the vertex out of (s) as B iota."""
    k = (r + t - s) // 2
    iv = ring.i * ring.v
    qq = ring.q - ring.q.inverse()
    base = qq ** k * ring.q_factorial(k)
    B = base / iv ** k
    A = theta(r, s, t, ring) * iv ** k / base
    sign_den = ring.q_int(s + 1) if s % 2 == 0 else -ring.q_int(s + 1)
    return A / sign_den, B


def check_ab_constants(ring: Ring, r: int, t: int) -> dict:
    """Compare both vertices and their composite with the scaled pair maps."""
    out = {}
    for s in defect_interval(r, t):
        pm = pair_maps(ring, r, t, s)
        A, B = ab_constants(ring, r, t, s)
        Y = three_vertex(r, s, t, ring)  # left (r,t), right (s): V_(s) -> V_(r,t)
        out[(s, "B_iota")] = tl_action(Y, ring).operator == pm.iota.scale(B)
        out[(s, "A_pihat")] = tl_action(Y.reflect(), ring).operator == pm.pi_hat.scale(A)
        out[(s, "BA_pi")] = tl_action(compose(Y, Y.reflect()), ring).operator == pm.pi.scale(A * B)
    return out


def consecutive_projector_generators(ring: Ring, mi) -> dict:
    """Span of products of the pair projectors versus the commutant."""
    mi = tuple(mi)
    if n_of(mi) >= ring.regime_bound():
        raise RegimeError("consecutive projector generators need n < p(q)")
    gens = []
    N = len(basis_indices(mi))
    for i in range(len(mi) - 1):
        r, t = mi[i], mi[i + 1]
        for s in defect_interval(r, t):
            P = pair_maps(ring, r, t, s).pi
            left = Matrix.identity(ring, len(basis_indices(mi[:i])))
            right = Matrix.identity(ring, len(basis_indices(mi[i + 2:])))
            gens.append(left.kron(P).kron(right))
    alg = algebra_closure(gens) if gens else [Matrix.identity(ring, N)]
    comm = uq_commutant(ring, mi)
    both = [M.flatten() for M in alg] + [M.flatten() for M in comm]
    joint = rank(Matrix.from_rows(ring, N * N, both))
    return {
        "dim_generated": len(alg),
        "dim_commutant": len(comm),
        "span_equal": len(alg) == len(comm) == joint,
    }


def check_open_up(ring: Ring, r: int, t: int, s: int) -> dict:
    """Chained singlet projections versus pi-hat^{r,t}_s, for both factorial normalizations."""
    k = (r + t - s) // 2
    qf = ring.q_factorial
    J = embedding_matrix(ring, (r, t))
    chain = J
    n = r + t
    pm11 = pair_maps(ring, 1, 1, 0).pi_hat  # V_(1,1) -> V_(0)
    # apply pi-hat on tensorands (r, r+1), then (r-1, r), ..., (r-k+1, r-k+2)
    for step in range(k):
        j = r - step  # 1-based position of the left tensorand
        left = Matrix.identity(ring, 2 ** (j - 1))
        right = Matrix.identity(ring, 2 ** (n - j - 1))
        chain = left.kron(pm11).kron(right) @ chain
        n -= 2
    chain = projection_hat_matrix(ring, (s,)) @ chain if s > 0 else chain
    target = pair_maps(ring, r, t, s).pi_hat
    common = qf(r - k) * qf(t - k) * qf(r + t - k + 1) / (ring.q_int(2) ** k * qf(r) * qf(t))
    return {
        "s_plus_1_factorial": chain == target.scale(common / qf(s + 1)),
        "s_factorial": chain == target.scale(common / qf(s)),
    }


# ---------------------------------------------------------------------------
# radicals


def radical_checks(ring: Ring, mi) -> dict:
    """Per grade: rad of the link-state form, rad H, the orthocomplement of {w}, and the two identities."""
    mi = tuple(mi)
    report = {}
    for s, D in dims_D(mi).items():
        pats = valenced_link_patterns(mi, s)
        G = gram_matrix(mi, s, ring)
        rad_L = nullspace(G)
        H = hw_space(ring, mi, s)
        Hb = hw_space_right(ring, mi, s)
        # rad H: h with <h-bar, h> = 0 for all h-bar
        GH = Matrix(ring, len(Hb), len(H), {})
        for a, hb in enumerate(Hb):
            for b, h in enumerate(H):
                c = pairing(hb, h)
                if not c.is_zero():
                    GH.entries[(a, b)] = c
        rad_H = len(H) - rank(GH) if H else 0
        # image of rad L under alpha -> w_alpha must pair to zero with all of H-bar
        ws = [w_vector(ring, p) for p in pats]
        incl = True
        for vec in rad_L:
            w = ModuleVector.zero(ring, mi)
            for j, c in vec.items():
                w = w + ws[j].scale(c)
            if any(not pairing(hb, w).is_zero() for hb in Hb):
                incl = False
        # {w}^perp inside H
        wbs = [w_bar_vector(ring, p) for p in pats]
        GW = Matrix(ring, max(len(wbs), 1), max(len(H), 1), {})
        for a, wb in enumerate(wbs):
            for b, h in enumerate(H):
                c = pairing(wb, h)
                if not c.is_zero():
                    GW.entries[(a, b)] = c
        perp = len(H) - rank(GW) if H else 0
        dim_Q = D - len(rad_L)
        report[s] = {
            "D": D,
            "dim_H": len(H),
            "rad_L": len(rad_L),
            "rad_H": rad_H,
            "w_perp": perp,
            "dim_Q": dim_Q,
            "inclusion": incl,
            "quotient_identity": dim_Q == len(H) - perp,
        }
    return report


# ---------------------------------------------------------------------------
# q = +-i


def exceptional_qi_checks(ring: Ring) -> dict:
    if ring.spec.mode != "root" or ring.order() != 2:
        raise ScalarError("these checks need q = +-i (root:1:2 or root:3:2)")
    from .diagram import gen_U

    sign = 1 if ring.q == ring.i else -1
    mi = (1, 1)
    U = flat_diagram_matrix(ring, gen_U(2, 1))
    Id = Matrix.identity(ring, 4)
    comm = uq_commutant(ring, mi)
    both = [M.flatten() for M in comm] + [Id.flatten(), U.flatten()]
    span_ok = rank(Matrix.from_rows(ring, 16, both)) == 2
    E = AlgebraElement.gen(ring, "E")
    F = AlgebraElement.gen(ring, "F")
    K = AlgebraElement.gen(ring, "K")
    i = ring.i
    th = ModuleVector.basis(ring, mi, (0, 0))
    u = singlet(ring).scale(i * ring.v / (ring.q - ring.q.inverse()))
    zeta = ModuleVector(ring, mi, "left", {(0, 1): ring.one, (1, 0): ring.one}).scale(
        (ring.one + i * ring.coerce(sign)) * ring.coerce(-1) / ring.coerce(4)
    )
    mu = ModuleVector.basis(ring, mi, (1, 1))
    pm2i = i * ring.coerce(2 * sign)
    half = i * ring.coerce(-sign) / ring.coerce(2)
    rel = {
        "F2_theta_zero": act(F * F, th).is_zero(),
        "u_from_F_theta": u == act(F, th).scale(half),
        "K_u": act(K, u) == u and act(E, u).is_zero() and act(F, u).is_zero(),
        "theta_rel": act(K, th) == -th and act(E, th).is_zero() and act(F, th) == u.scale(pm2i),
        "mu_rel": act(K, mu) == -mu and act(E, mu) == u.scale(pm2i) and act(F, mu).is_zero(),
        "zeta_rel": act(K, zeta) == zeta
        and act(E, zeta) == th.scale(half)
        and act(F, zeta) == mu.scale(half)
        and act(F * E, zeta) == u
        and act(E * F, zeta) == u,
    }
    faithful = rank(Matrix.from_rows(ring, 16, [Id.flatten(), U.flatten()])) == 2
    return {
        "rhoU1_squared_zero": (U @ U).is_zero(),
        "dim_End_Uq_V2": len(comm),
        "End_spanned_by_id_and_U1": span_ok,
        "TL2_faithful": faithful,
        **rel,
    }


# ---------------------------------------------------------------------------
# one type-one module


def grade_element(ring: Ring, s: int, l: int) -> Matrix:
    """Matrix of the Lagrange polynomial in K that picks out e_l in V_(s)."""
    K = element_matrix(AlgebraElement.gen(ring, "K"), (s,))
    out = Matrix.identity(ring, s + 1)
    for j in range(s + 1):
        if j == l:
            continue
        den = ring.q_pow(s - 2 * l) - ring.q_pow(s - 2 * j)
        if den.is_zero():
            raise RegimeError("K has repeated eigenvalues on V_(s) at this q")
        out = out @ (K - Matrix.identity(ring, s + 1).scale(ring.q_pow(s - 2 * j))).scale(den.inverse())
    return out


def _kernel_A(ring, s, l, k, n, m):
    if not (k <= l + m <= s):
        return ring.zero
    qf, qb = ring.q_factorial, ring.q_binomial
    c = ring.q_pow(-n * (s - 2 * l - 2 * m)) * qf(k - m) ** 2 / qf(k) ** 2
    c = c * qb(l, l - k + m) * qb(s - l + k - m, s - l)
    return c / (qb(l + m, l + m - k) * qb(s - l - m + k, s - l - m))


def _kernel_B(ring, s, l, k, n, m):
    if not (m <= l + k <= s):
        return ring.zero
    qf, qb = ring.q_factorial, ring.q_binomial
    c = ring.q_pow(-n * (s - 2 * l - 2 * k)) / qf(m) ** 2
    return c / (qb(l + k, l + k - m) * qb(s - l - k + m, s - l - k))


def rho_image_kernel(ring: Ring, s: int, kmax: int = 2, nvals=(-1, 0, 1)) -> dict:
    """Image basis check for rho_(s) and a sweep over the kernel spanning set."""
    if s >= ring.regime_bound():
        raise RegimeError(f"need s < p(q) = {ring.order()}")
    mi = (s,)
    N = s + 1
    Em = element_matrix(AlgebraElement.gen(ring, "E"), mi)
    Fm = element_matrix(AlgebraElement.gen(ring, "F"), mi)
    Km = element_matrix(AlgebraElement.gen(ring, "K"), mi)
    Ki = element_matrix(AlgebraElement.gen(ring, "Ki"), mi)
    Id = Matrix.identity(ring, N)
    G = [grade_element(ring, s, l) for l in range(N)]

    def power(M, k):
        out = Id
        for _ in range(k):
            out = out @ M
        return out

    def kpow(n):
        return power(Km, n) if n >= 0 else power(Ki, -n)

    img = []
    for l in range(N):
        for k in range(0, s - l + 1):
            img.append(power(Fm, k) @ G[l])
        for k in range(1, l + 1):
            img.append(power(Em, k) @ G[l])
    image_ok = len(img) == N * N and rank(Matrix.from_rows(ring, N * N, [M.flatten() for M in img])) == N * N
    resolution = sum(G[1:], G[0]) == Id
    # members whose indicator vanishes reduce to a bare power of E or F times
    # G_l, which need not annihilate V_(s); they are tallied apart
    failures, outside = [], []
    total = 0
    for l in range(N):
        for k in range(kmax + 1):
            for m in range(k + 1):
                for n in nvals:
                    a = _kernel_A(ring, s, l, k, n, m)
                    X = (power(Em, k - m) - (power(Em, k) @ kpow(n) @ power(Fm, m)).scale(a)) @ G[l]
                    b = _kernel_B(ring, s, l, k, n, m)
                    Y = (power(Fm, k - m) - (power(Em, m) @ kpow(n) @ power(Fm, k)).scale(b)) @ G[l]
                    for tag, ind, M in (("A", k <= l + m <= s, X), ("B", m <= l + k <= s, Y)):
                        if M.is_zero():
                            continue
                        (failures if ind else outside).append((tag, l, k, n, m))
                    total += 2
    # the second column: anything times (sum G_l - 1) vanishes on V_(s)
    total += 1
    if not (sum(G[1:], G[0]) - Id).is_zero():
        failures.append(("sumG", 0, 0, 0, 0))
    return {
        "image_basis": image_ok,
        "resolution_of_identity": resolution,
        "kernel_checked": total,
        "kernel_failures": failures,
        "zero_indicator_not_in_kernel": outside,
    }
