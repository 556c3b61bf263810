from __future__ import annotations

import time

import pytest

from qsw.combin import dims_D
from qsw.diagram import Tangle, gen_U
from qsw.duality import (
    ab_constants,
    check_ab_constants,
    check_open_up,
    classical_mode,
    consecutive_projector_generators,
    exceptional_qi_checks,
    radical_checks,
    rho_image_kernel,
    tl_action,
    tl_dim,
    verify_duality,
)
from qsw.scalar import get_ring
from qsw.uqrep import RegimeError

import oracles

R2 = get_ring("rational:2/1")


def test_flat_action_matches_float_oracle():
    import numpy as np

    q = 4.0  # v = 2
    for n in (2, 3, 4):
        for j in range(1, n):
            got = tl_action(Tangle.of(R2, gen_U(n, j)), R2).operator
            ref = oracles.flat_U(n, j, q)
            dense = np.array([[R2.to_complex(got.get(a, b)).real for b in range(2 ** n)] for a in range(2 ** n)])
            assert np.allclose(dense, ref)


@pytest.mark.parametrize("mi", [(1, 1), (1, 1, 1), (2, 1), (2, 2), (1, 2, 1), (1, 1, 1, 1)])
def test_duality_small(mi):
    rep = verify_duality(mi)
    assert rep.ok, rep.to_plain()
    assert rep.dims["dim_TL"] == tl_dim(mi)
    assert dict(rep.decomposition) == dims_D(mi)
    assert rep.flags["faithful"] and rep.flags["duality_holds"]


def test_duality_numeric_commutant_oracle():
    for mi in [(1, 1, 1), (2, 1), (2, 2, 1)]:
        rep = verify_duality(mi)
        assert rep.dims["dim_commutant_Uq"] == oracles.commutant_dim(oracles.module_matrices(mi, 4.0))


def test_duality_n6_under_budget():
    t0 = time.time()
    rep = verify_duality((1,) * 6)
    assert rep.ok
    assert rep.dims["dim_TL"] == 132
    assert time.time() - t0 < 60


def test_generic_ring_note():
    rep = verify_duality((1, 1), get_ring("generic"))
    assert any("v = 2" in n for n in rep.notes)


def test_duality_report_json_shape():
    rep = verify_duality((1, 1, 1))
    d = rep.to_json()
    assert d["multiindex"] == [1, 1, 1]
    assert d["decomposition"] == [[1, 2], [3, 1]]
    assert set(d) >= {"dims", "flags", "notes", "checks"}


def test_classical_mode():
    for n, c in zip(range(2, 7), (2, 5, 14, 42, 132)):
        rep = classical_mode((1,) * n)
        assert rep.dims["dim_TL"] == c
        assert rep.ok


def test_ab_constants():
    G = get_ring("generic")
    for r, t in [(1, 1), (2, 1), (2, 2)]:
        res = check_ab_constants(G, r, t)
        assert all(res.values()), res
    A, B = ab_constants(G, 1, 1, 0)
    assert not A.is_zero() and not B.is_zero()


def test_open_up_normalization():
    G = get_ring("generic")
    for r, t, s in [(2, 1, 1), (2, 2, 0), (2, 2, 2)]:
        res = check_open_up(G, r, t, s)
        assert res["s_plus_1_factorial"]
    # the s! label agrees only at s = 0
    assert check_open_up(G, 2, 2, 0)["s_factorial"]
    assert not check_open_up(G, 2, 1, 1)["s_factorial"]


def test_consecutive_projectors_generate_commutant():
    for mi in [(1, 1, 1), (2, 1, 1)]:
        res = consecutive_projector_generators(R2, mi)
        assert res["span_equal"], res


def test_radicals_at_cube_root():
    r3 = get_ring("root:1:3")
    for mi in [(1, 1, 1), (1, 1, 1, 1)]:
        for s, row in radical_checks(r3, mi).items():
            assert row["inclusion"] and row["quotient_identity"], (mi, s, row)
    row = radical_checks(r3, (1, 1, 1, 1))[0]
    assert row["rad_L"] == 1


def test_q_equals_i():
    for spec in ("root:1:2", "root:3:2"):
        res = exceptional_qi_checks(get_ring(spec))
        assert res.pop("dim_End_Uq_V2") == 2
        assert all(res.values()), (spec, res)


def test_image_kernel_single_module():
    for s in (1, 2, 3):
        res = rho_image_kernel(R2, s)
        assert res["image_basis"] and res["resolution_of_identity"]
        assert res["kernel_failures"] == []


def test_regime_guard():
    with pytest.raises(RegimeError):
        verify_duality((3, 1), get_ring("root:1:3"))
