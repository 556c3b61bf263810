from __future__ import annotations

from hypothesis import given, settings, strategies as st

from qsw.combin import link_patterns, valenced_link_patterns
from qsw.diagram import LinkState, Tangle, act_on_state, compose, gen_U, ls_pairing, valenced_U
from qsw.scalar import get_ring
from qsw.uqrep import (
    AlgebraElement,
    ModuleVector,
    act,
    basis_indices,
    grade_decompose,
    grade_of,
    op_vector,
    pairing,
    star_vector,
)

G = get_ring("generic")
SMALL = st.integers(-3, 3)
LETTERS = ("E", "F", "K", "Ki")

multiindices = st.lists(st.integers(1, 2), min_size=1, max_size=3).map(tuple)


@st.composite
def vectors(draw, mi, side="left"):
    coords = {}
    for idx in basis_indices(mi):
        c = draw(SMALL)
        if c:
            coords[idx] = G.coerce(c)
    return ModuleVector(G, mi, side, coords)


@st.composite
def elements(draw, bar=False):
    t = {}
    for _ in range(draw(st.integers(1, 3))):
        w = tuple(draw(st.lists(st.sampled_from(LETTERS), max_size=3)))
        t[w] = G.coerce(draw(st.integers(1, 3)))
    return AlgebraElement(G, t, bar)


@st.composite
def flat_words(draw, n):
    x = Tangle.unit(G, (1,) * n)
    for _ in range(draw(st.integers(0, 3))):
        j = draw(st.integers(1, n - 1))
        c = draw(st.integers(1, 2))
        y = Tangle.of(G, gen_U(n, j))
        x = compose(x, y + Tangle.unit(G, (1,) * n).scale(c - 1))
    return x


@settings(max_examples=200)
@given(st.data())
def test_module_pairing_invariant(data):
    mi = data.draw(multiindices)
    bar = data.draw(st.booleans())
    x = data.draw(elements(bar))
    vb = data.draw(vectors(mi, "right"))
    w = data.draw(vectors(mi))
    assert pairing(act(x, vb), w) == pairing(vb, act(x, w))


@settings(max_examples=200)
@given(st.data())
def test_link_state_pairing_invariant(data):
    n = data.draw(st.integers(2, 6))
    s = data.draw(st.sampled_from(range(n % 2, n + 1, 2)))
    pats = link_patterns(n, s)
    a = LinkState.of(G, data.draw(st.sampled_from(pats)))
    b = LinkState.of(G, data.draw(st.sampled_from(pats)))
    T = data.draw(flat_words(n))
    assert ls_pairing(a, act_on_state(T, b)) == ls_pairing(act_on_state(T.reflect(), a), b)


@settings(max_examples=200)
@given(st.data())
def test_valenced_pairing_invariant(data):
    mi = data.draw(st.lists(st.integers(1, 2), min_size=2, max_size=3).map(tuple))
    j = data.draw(st.integers(1, len(mi) - 1))
    T = valenced_U(mi, j, G)
    pats = valenced_link_patterns(mi)
    a = data.draw(st.sampled_from(pats))
    b = data.draw(st.sampled_from([p for p in pats if p.s == a.s]))
    A, B = LinkState.of(G, a), LinkState.of(G, b)
    assert ls_pairing(A, act_on_state(T, B)) == ls_pairing(act_on_state(T.reflect(), A), B)


@settings(max_examples=200)
@given(st.data())
def test_star_and_op_involutions(data):
    bar = data.draw(st.booleans())
    x = data.draw(elements(bar))
    assert x.star().star() == x
    assert x.op().op() == x
    assert x.star().bar != x.bar
    mi = data.draw(multiindices)
    v = data.draw(vectors(mi))
    assert star_vector(star_vector(v)) == v
    assert op_vector(op_vector(v)) == v


@settings(max_examples=200)
@given(st.data())
def test_action_associative(data):
    mi = data.draw(multiindices)
    x, y = data.draw(elements()), data.draw(elements())
    v = data.draw(vectors(mi))
    assert act(x * y, v) == act(x, act(y, v))
    vb = data.draw(vectors(mi, "right"))
    xb, yb = data.draw(elements(True)), data.draw(elements(True))
    assert act(xb * yb, vb) == act(yb, act(xb, vb))


@settings(max_examples=200)
@given(st.data())
def test_tangle_composition_associative(data):
    n = data.draw(st.integers(2, 5))
    a, b, c = (data.draw(flat_words(n)) for _ in range(3))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, b).reflect() == compose(b.reflect(), a.reflect())


@settings(max_examples=200)
@given(st.data())
def test_grading(data):
    mi = data.draw(multiindices)
    v = data.draw(vectors(mi))
    parts = grade_decompose(v)
    total = ModuleVector.zero(G, mi)
    for g, part in parts.items():
        total = total + part
        assert act(AlgebraElement.gen(G, "K"), part) == part.scale(G.q_pow(g))
        for letter, shift in (("E", 2), ("F", -2)):
            out = act(AlgebraElement.gen(G, letter), part)
            assert all(grade_of(idx, mi) == g + shift for idx in out.coords)
    assert total == v
