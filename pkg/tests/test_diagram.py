from __future__ import annotations

import itertools

import pytest

from qsw.combin import link_patterns, parse_pattern, valenced_link_patterns
from qsw.diagram import (
    JWUnavailable,
    LinkState,
    Tangle,
    act_on_state,
    admissible_part,
    compose,
    embed_state,
    embed_tangle,
    flat_compose,
    from_standard_form,
    gen_L,
    gen_R,
    gen_U,
    gram_matrix,
    identity_diagram,
    jones_wenzl,
    ls_pairing,
    radical_dim,
    split_diagram,
    join_patterns,
    standard_form,
    theta_network,
    three_vertex,
    valenced_diagrams,
    valenced_U,
)
from qsw.scalar import get_ring, is_admissible, theta

G = get_ring("generic")


def T(d, ring=G):
    return Tangle.of(ring, d)


def unit(n, ring=G):
    return Tangle.unit(ring, (1,) * n)


def all_diagrams(n, m):
    out = []
    for lp in link_patterns(n):
        for rp in link_patterns(m, lp.s):
            out.append(join_patterns(lp, rp))
    return out


def test_word_relations():
    for n in range(2, 9):
        for i in range(1, n):
            U = T(gen_U(n, i))
            assert compose(U, U) == U.scale(G.nu)
            for j in (i - 1, i + 1):
                if 1 <= j < n:
                    assert compose(compose(U, T(gen_U(n, j))), U) == U
            for j in range(1, n):
                if abs(i - j) > 1:
                    assert compose(U, T(gen_U(n, j))) == compose(T(gen_U(n, j)), U)


def test_lr_relations():
    for n in range(2, 9):
        for i in range(1, n):
            assert compose(T(gen_L(n, i)), T(gen_R(n, i))) == T(gen_U(n, i))
            for j in range(1, n):
                lhs = compose(T(gen_R(n, j)), T(gen_L(n, i)))
                if abs(i - j) == 1:
                    rhs = unit(n - 2)
                elif i == j:
                    rhs = unit(n - 2).scale(G.nu)
                elif i <= j - 2:
                    rhs = compose(T(gen_L(n - 2, i)), T(gen_R(n - 2, j - 2)))
                else:
                    rhs = compose(T(gen_L(n - 2, i - 2)), T(gen_R(n - 2, j)))
                assert lhs == rhs, (n, i, j)
        for j in range(1, n):
            for i in range(j, n - 2):
                assert compose(T(gen_L(n, j)), T(gen_L(n - 2, i))) == compose(T(gen_L(n, i + 2)), T(gen_L(n - 2, j)))
                # mirror image of the line above
                lhs = compose(T(gen_R(n - 2, i)), T(gen_R(n, j)))
                rhs = compose(T(gen_R(n - 2, j)), T(gen_R(n, i + 2)))
                assert lhs == rhs


def test_standard_form_examples():
    assert standard_form(identity_diagram(4)) == ([], 4, [])
    assert standard_form(gen_U(4, 2)) == ([2], 2, [2])


def test_standard_form_roundtrip_small():
    for n in range(0, 7):
        for m in range(n % 2, 7, 2):
            for d in all_diagrams(n, m):
                ls, s, rs = standard_form(d)
                assert from_standard_form(ls, s, rs) == d


def test_jw_examples():
    P2 = jones_wenzl(2, G)
    assert P2 == unit(2) - T(gen_U(2, 1)).scale(G.nu.inverse())
    P3 = jones_wenzl(3, G)
    U1, U2 = T(gen_U(3, 1)), T(gen_U(3, 2))
    q2, q3 = G.q_int(2), G.q_int(3)
    want = unit(3) + (U1 + U2).scale(q2 / q3) + (compose(U1, U2) + compose(U2, U1)).scale(q3.inverse())
    assert P3 == want


def test_jw_properties_generic():
    for s in range(1, 6):
        P = jones_wenzl(s, G)
        assert compose(P, P) == P
        for i in range(1, s):
            U = T(gen_U(s, i))
            assert compose(U, P).is_zero() and compose(P, U).is_zero()


@pytest.mark.parametrize("spec,p", [("root:1:3", 3), ("root:1:5", 5)])
def test_jw_at_roots(spec, p):
    ring = get_ring(spec)
    for s in range(1, p):
        P = jones_wenzl(s, ring)
        assert compose(P, P) == P
    with pytest.raises(JWUnavailable):
        jones_wenzl(p, ring)


def test_valenced_structure():
    mi = (2, 1)
    U = valenced_U(mi, 1, G)
    assert U.left == mi and U.right == mi
    for d in valenced_diagrams(mi, mi):
        X = Tangle(G, mi, mi, {d: G.one})
        E = embed_tangle(X)
        # the admissible part of P d P is d itself
        assert admissible_part(E.terms, mi, mi) == {d: G.one}


def test_defect_state_fixed_by_projector():
    for s in range(1, 5):
        alpha = valenced_link_patterns((s,), s)[0]
        st = embed_state(LinkState.of(G, alpha))
        assert st == LinkState(G, (1,) * s, s, {parse_pattern("|" * s): G.one})


def test_actions_on_states():
    link = LinkState.of(G, parse_pattern("()"))
    assert act_on_state(T(gen_U(2, 1)), link) == link.scale(G.nu)
    assert act_on_state(T(gen_U(2, 1)), LinkState.of(G, parse_pattern("||"))).is_zero()
    out = act_on_state(T(gen_U(3, 2)), LinkState.of(G, parse_pattern("()|")))
    assert out == LinkState.of(G, parse_pattern("|()"))


def test_pairing_examples():
    link = LinkState.of(G, parse_pattern("()"))
    assert ls_pairing(link, link) == G.nu
    dd = LinkState.of(G, parse_pattern("||"))
    assert ls_pairing(dd, dd) == G.one
    Gm = gram_matrix((1, 1, 1, 1), 0, G)
    nu = G.nu
    assert [[Gm.get(i, j) for j in range(2)] for i in range(2)] == [[nu * nu, nu], [nu, nu * nu]]
    assert radical_dim((1, 1, 1, 1), 0, G) == 0
    assert radical_dim((1, 1, 1), 3, G) == 0


def test_radical_at_cube_root():
    r3 = get_ring("root:1:3")
    assert radical_dim((1, 1, 1), 1, r3) == 1


def test_theta_networks():
    for r, s, t in itertools.product(range(4), repeat=3):
        if is_admissible(r, s, t) and r + s + t <= 6:
            assert theta_network(r, s, t, G) == theta(r, s, t, G)


def test_loop_erasure():
    for r, s, t in [(1, 0, 1), (1, 2, 1), (1, 1, 2), (2, 2, 2), (2, 1, 3)]:
        Y = three_vertex(r, s, t, G)
        X = compose(Y.reflect(), Y)
        sign = 1 if s % 2 == 0 else -1
        c = theta(r, s, t, G) / (G.q_int(s + 1) * G.coerce(sign))
        assert X == Tangle.unit(G, Y.right).scale(c)


def test_three_vertex_shape():
    Y = three_vertex(2, 0, 2, G)
    assert Y.left == (2, 2) and Y.right == ()


def test_star_is_reflection():
    for n in range(2, 6):
        for i in range(1, n):
            assert gen_U(n, i).reflect() == gen_U(n, i)
            assert gen_L(n, i).reflect() == gen_R(n, i)


def test_split_join_inverse():
    for d in all_diagrams(3, 5):
        a, b = split_diagram(d)
        assert join_patterns(a, b) == d


def test_flat_compose_shape_error():
    with pytest.raises(ValueError):
        flat_compose(unit(2), unit(3))
