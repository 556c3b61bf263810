from __future__ import annotations

import cmath
from fractions import Fraction

import pytest

import oracles
from qsw.scalar import (
    INF,
    QSpec,
    ScalarError,
    get_ring,
    is_admissible,
    parse_qspec,
    specialize,
    theta,
)

G = get_ring("generic")
R2 = get_ring(QSpec.rational(2))


def test_q_int_basics():
    assert G.q_int(0).is_zero()
    assert G.q_int(2) == G.q + G.q.inverse()
    assert R2.q_int(2) == R2.gauss(Fraction(17, 4))


def test_q_int_matches_oracle():
    for k in range(8):
        assert R2.q_int(k) == R2.gauss(oracles.qint(k))
        assert specialize(G.q_int(k), QSpec.rational(2)) == R2.gauss(oracles.qint(k))


def test_factorial_and_binomial():
    assert G.q_factorial(3) == G.q_int(2) * G.q_int(3)
    assert G.q_binomial(2, 1) == G.q_int(2)
    for m in range(1, 7):
        for l in range(0, m + 1):
            lhs = G.q_binomial(m, l)
            rhs = G.q_pow(l - m) * G.q_binomial(m - 1, l - 1) + G.q_pow(l) * G.q_binomial(m - 1, l)
            assert lhs == rhs


def test_order():
    assert get_ring("root:1:3").order() == 3
    assert R2.order() == INF
    assert get_ring("root:1:2").order() == 2


def test_theta_values():
    assert theta(1, 0, 1, G) == -G.q_int(2)
    assert theta(1, 2, 1, G) == G.q_int(3)
    assert theta(0, 0, 0, G) == G.one
    for r in range(4):
        for s in range(4):
            for t in range(4):
                if is_admissible(r, s, t):
                    assert theta(r, s, t, R2) == R2.gauss(oracles.theta(r, s, t))


def test_arithmetic_examples():
    assert R2.v + R2.v.inverse() == R2.gauss(Fraction(5, 2))
    assert get_ring("root:1:3").q_int(3).is_zero()
    ri = get_ring("root:1:2")
    z8 = cmath.exp(1j * cmath.pi / 4)
    assert abs(ri.to_complex(ri.i * ri.v) - z8 ** 3) < 1e-12


def test_parse_and_format_roundtrip():
    for text in ["(1/2)*v^-3 + i*v", "v^2 + 1", "-3/7", "i", "(v - v^-1)^2"]:
        x = G.parse(text)
        assert G.parse(G.fmt(x)) == x


def test_parse_errors_have_positions():
    with pytest.raises(ScalarError, match="position"):
        G.parse("v + $")
    with pytest.raises(ScalarError):
        G.parse("")


def test_qspec_parsing():
    assert str(parse_qspec("rational:2/1")) == "rational:2/1"
    assert parse_qspec("root:1:3").params == (1, 3)
    assert parse_qspec("classical").mode == "classical"
    with pytest.raises(ScalarError):
        parse_qspec("rational:1/1")
    with pytest.raises(ScalarError):
        parse_qspec("root:2:4")
    with pytest.raises(ScalarError):
        parse_qspec("banana")


def test_classical_ring():
    c = get_ring("classical")
    assert c.q_int(5) == c.gauss(5)
    assert c.nu == c.gauss(-2)


def test_float_ring_close_to_exact():
    f = get_ring("float:1.5,0")
    x = f.q_int(3)
    exact = oracles.qint(3, Fraction(9, 4))
    assert abs(f.to_complex(x) - float(exact)) < 1e-9
