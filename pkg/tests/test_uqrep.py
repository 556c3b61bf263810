from __future__ import annotations

import pytest

from qsw.combin import dims_B, parse_pattern, valenced_link_patterns, walks_over
from qsw.linalg import Matrix, rank
from qsw.scalar import get_ring
from qsw.uqrep import (
    AlgebraElement,
    ModuleVector,
    RegimeError,
    act,
    alt_pairing,
    apply_matrix,
    basis_indices,
    cb_pairing_expected,
    conformal_block,
    conformal_block_bar,
    coproduct_power_terms,
    descendant,
    element_matrix,
    embedding_matrix,
    flat_diagram_matrix,
    hw_space,
    op_vector,
    pair_maps,
    pairing,
    projection_hat_matrix,
    projector_matrix,
    singlet,
    star_vector,
    tau_vector,
    theta_explicit,
    theta_vector,
    w_vector,
)
from qsw.diagram import gen_U

G = get_ring("generic")
R2 = get_ring("rational:2/1")


def gen(a, ring=G, bar=False):
    return AlgebraElement.gen(ring, a, bar)


def e(mi, *idx, ring=G, side="left"):
    return ModuleVector.basis(ring, tuple(mi), tuple(idx), side)


def test_single_site_actions():
    assert act(gen("E"), e((1,), 1)) == e((1,), 0)
    q = G.q
    got = act(gen("F"), e((1, 1), 0, 0))
    assert got == e((1, 1), 0, 1).scale(q.inverse()) + e((1, 1), 1, 0)
    assert act(gen("K"), e((1, 1), 0, 1)) == e((1, 1), 0, 1)


def test_algebra_relations_on_small_modules():
    q = G.q
    for mi in [(1, 1), (2, 1), (1, 2, 1)]:
        E, F, K, Ki = (element_matrix(gen(a), mi) for a in ("E", "F", "K", "Ki"))
        N = len(basis_indices(mi))
        assert K @ Ki == Matrix.identity(G, N)
        assert K @ E == (E @ K).scale(q * q)
        assert K @ F == (F @ K).scale((q * q).inverse())
        assert (E @ F - F @ E).scale(q - q.inverse()) == K - Ki


def test_hw_dimensions():
    assert len(hw_space(G, (1, 1), 0)) == 1 and len(hw_space(G, (1, 1), 2)) == 1
    assert len(hw_space(G, (1, 1, 1), 1)) == 2
    r3 = get_ring("root:1:3")
    for s, b in dims_B((1, 1, 1)).items():
        assert len(hw_space(r3, (1, 1, 1), s)) <= b


def test_pairing_normalization():
    assert pairing(e((3,), 0, side="right"), e((3,), 0)) == G.one
    assert pairing(e((2,), 1, side="right"), e((2,), 1)) == G.q_int(2)
    assert pairing(e((1,), 0, side="right"), e((1,), 1)).is_zero()


def test_conformal_blocks_small():
    u = conformal_block(G, (1, 2, 3, 4), (1, 1, 1, 1))
    assert u == e((1, 1, 1, 1), 0, 0, 0, 0)
    tau = tau_vector(G, 1, 1, 0)
    factor = (G.q - G.q.inverse()) / (G.i * G.v)
    assert singlet(G) == tau.scale(factor)
    E, K = gen("E"), gen("K")
    for w in walks_over((1, 1, 1, 1)):
        u = conformal_block(G, w, (1, 1, 1, 1))
        assert act(E, u).is_zero()
        assert act(K, u) == u.scale(G.q_pow(w[-1]))


def test_conformal_block_norms():
    qq = G.q - G.q.inverse()
    ub = conformal_block_bar(G, (1, 0), (1, 1))
    u = conformal_block(G, (1, 0), (1, 1))
    assert pairing(ub, u) == -G.q_int(2) / (qq * qq)
    u2 = conformal_block(G, (1, 2), (1, 1))
    assert pairing(conformal_block_bar(G, (1, 2), (1, 1)), u2) == G.one
    assert pairing(ub, u2).is_zero()


def test_conformal_block_gram_small():
    for mi in [(1, 1, 1), (2, 1, 1), (2, 2), (1, 2, 1)]:
        ws = walks_over(mi)
        for a in ws:
            ua = conformal_block_bar(G, a, mi)
            for b in ws:
                c = pairing(ua, conformal_block(G, b, mi))
                if a == b:
                    assert c == cb_pairing_expected(G, a, mi)
                else:
                    assert c.is_zero()


def test_w_vectors():
    s = w_vector(G, parse_pattern("()"))
    assert s == singlet(G)
    assert w_vector(G, parse_pattern("|||")) == e((1, 1, 1), 0, 0, 0)
    pats = valenced_link_patterns((1, 1, 1, 1), 0)
    M = Matrix.from_rows(G, 16, [w_vector(G, p).to_dense() for p in pats])
    assert rank(M) == 2


def test_theta_vectors_and_descendants():
    n = 3
    assert theta_vector(G, n, n) == e((1, 1, 1), 1, 1, 1).scale(G.q_factorial(3))
    for l in range(n + 1):
        assert theta_vector(G, n, l) == theta_explicit(G, n, l)
    F = gen("F")
    for w in walks_over((1, 1, 1)):
        u = conformal_block(G, w, (1, 1, 1))
        s = w[-1]
        assert act(F ** (s + 1), u).is_zero()
        for l in range(1, s + 1):
            lhs = act(gen("E"), descendant(u, l))
            assert lhs == descendant(u, l - 1).scale(G.q_int(l) * G.q_int(s - l + 1))


def test_embedding_projection():
    for mi in [(2, 1), (3,), (2, 2)]:
        N = len(basis_indices(mi))
        assert projection_hat_matrix(G, mi) @ embedding_matrix(G, mi) == Matrix.identity(G, N)
    assert embedding_matrix(G, (2,)) @ projection_hat_matrix(G, (2,)) == projector_matrix(G, (2,))


def test_pair_projector_on_singlet():
    pm = pair_maps(G, 1, 1, 0)
    s = singlet(G)
    assert apply_matrix(pm.pi, s, (1, 1)) == s
    assert apply_matrix(pm.pi, e((1, 1), 0, 0), (1, 1)).is_zero()


def test_flat_U_matrix():
    U = flat_diagram_matrix(G, gen_U(2, 1))
    v = apply_matrix(U, e((1, 1), 0, 1), (1, 1))
    assert v == e((1, 1), 0, 1).scale(-G.q) + e((1, 1), 1, 0)
    assert U == pair_maps(G, 1, 1, 0).pi.scale(G.nu)


def test_star_and_op():
    v = e((2,), 1)
    assert star_vector(v) == e((2,), 1, side="right").scale(G.q_pow(-1))
    x = e((1, 2), 1, 0) + e((1, 2), 0, 2).scale(G.v)
    assert op_vector(op_vector(x)) == x
    assert star_vector(star_vector(x)) == x
    assert alt_pairing(e((1, 1), 0, 1), e((1, 1), 1, 0)) == G.one


def test_coproduct_power_formula():
    # split (1,1) | (1): the closed coproduct against the action on the tensor product
    mi1, mi2 = (1, 1), (1,)
    for k in range(3):
        for l in range(3):
            for m in (-1, 0, 1):
                x = AlgebraElement.pbw(G, k, m, l)
                for i1 in basis_indices(mi1):
                    for i2 in basis_indices(mi2):
                        v, w = e(mi1, *i1), e(mi2, *i2)
                        lhs = act(x, v.tensor(w))
                        rhs = ModuleVector.zero(G, mi1 + mi2)
                        for c, a, b in coproduct_power_terms(G, k, m, l):
                            rhs = rhs + act(AlgebraElement.pbw(G, *a), v).tensor(act(AlgebraElement.pbw(G, *b), w)).scale(c)
                        assert lhs == rhs


def test_regime_errors():
    r3 = get_ring("root:1:3")
    with pytest.raises(RegimeError):
        embedding_matrix(r3, (3, 1))


def test_vector_json_roundtrip():
    v = e((2, 1), 1, 0).scale(G.parse("i*v^-3 + 1/2"))
    assert ModuleVector.from_json(G, v.to_json()) == v
    assert set(v.to_json()) == {"multiindex", "side", "coords"}
