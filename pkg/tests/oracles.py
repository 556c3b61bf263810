"""Independent reference computations used to freeze expected values.

Nothing here imports the package: q-numbers are plain Fractions at v = 2,
patterns come from brute-force matchings, module actions from numpy.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

V = Fraction(2)
Q = V * V


def qint(k: int, q: Fraction = Q) -> Fraction:
    return (q ** k - q ** (-k)) / (q - 1 / q)


def qfact(k: int, q: Fraction = Q) -> Fraction:
    out = Fraction(1)
    for j in range(1, k + 1):
        out *= qint(j, q)
    return out


def qbinom(m: int, l: int, q: Fraction = Q) -> Fraction:
    if l < 0 or l > m:
        return Fraction(0)
    return qfact(m, q) / (qfact(l, q) * qfact(m - l, q))


def theta(r: int, s: int, t: int, q: Fraction = Q) -> Fraction:
    h = (r + s + t) // 2
    num = (-1) ** h * qfact(h + 1, q) * qfact(h - t, q) * qfact(h - r, q) * qfact(h - s, q)
    return num / (qfact(r, q) * qfact(s, q) * qfact(t, q))


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def planar_patterns(n: int) -> tuple:
    """All planar partial matchings of 0..n-1 whose unmatched points are not enclosed."""
    out = []

    def rec(i, partner, stack):
        if i == n:
            if not stack:
                out.append(tuple(partner))
            return
        # defect: only allowed at depth 0
        if not stack:
            partner[i] = -1
            rec(i + 1, partner, stack)
        # open
        partner[i] = None
        rec(i + 1, partner, stack + [i])
        # close
        if stack:
            a = stack[-1]
            partner[i], partner[a] = a, i
            rec(i + 1, partner, stack[:-1])
            partner[a] = None

    rec(0, [None] * n, [])
    return tuple(out)


def valenced_count(mi, s) -> int:
    """Planar patterns on sum(mi) nodes with s defects and no link inside a bin."""
    n = sum(mi)
    bins = []
    for k, m in enumerate(mi):
        bins += [k] * m
    c = 0
    for p in planar_patterns(n):
        if sum(1 for x in p if x == -1) != s:
            continue
        if any(x != -1 and bins[x] == bins[a] for a, x in enumerate(p)):
            continue
        c += 1
    return c


def classical_multiplicities(mi) -> dict:
    """Clebsch-Gordan multiplicities from sl2 weight multisets."""
    weights = {0: 1}
    for s in mi:
        new = {}
        for w, c in weights.items():
            for l in range(s + 1):
                new[w + s - 2 * l] = new.get(w + s - 2 * l, 0) + c
        weights = new
    return {s: weights.get(s, 0) - weights.get(s + 2, 0) for s in range(max(weights) + 1) if weights.get(s, 0) - weights.get(s + 2, 0) > 0}


# ---------------------------------------------------------------------------
# float module action


def single_site(s: int, q: float):
    qi = lambda k: (q ** k - q ** (-k)) / (q - 1 / q)
    E = np.zeros((s + 1, s + 1))
    F = np.zeros((s + 1, s + 1))
    K = np.zeros((s + 1, s + 1))
    for l in range(s + 1):
        K[l, l] = q ** (s - 2 * l)
        if l < s:
            F[l + 1, l] = 1.0
        if l > 0:
            E[l - 1, l] = qi(l) * qi(s - l + 1)
    return E, F, K


def module_matrices(mi, q: float):
    """E, F, K on the tensor product with E -> E x K + 1 x E and F -> F x 1 + K^-1 x F."""
    E, F, K = single_site(mi[0], q)
    for s in mi[1:]:
        e, f, k = single_site(s, q)
        I, i = np.eye(E.shape[0]), np.eye(e.shape[0])
        E, F, K = np.kron(E, k) + np.kron(I, e), np.kron(F, i) + np.kron(np.linalg.inv(K), f), np.kron(K, k)
    return E, F, K


def commutant_dim(mats) -> int:
    N = mats[0].shape[0]
    rows = [np.kron(A.T, np.eye(N)) - np.kron(np.eye(N), A) for A in mats]
    M = np.vstack(rows)
    sv = np.linalg.svd(M, compute_uv=False)
    tol = sv.max() * 1e-10
    return int(sum(1 for x in sv if x < tol) + (N * N - len(sv)))


def flat_U(n: int, j: int, q: float):
    """I(U_j) on (C^2)^n from the two-site matrix fixed by U(e0 e1) = -q e0 e1 + e1 e0."""
    u = np.zeros((4, 4))
    u[1, 1], u[2, 1] = -q, 1.0
    u[1, 2], u[2, 2] = 1.0, -1 / q
    return np.kron(np.kron(np.eye(2 ** (j - 1)), u), np.eye(2 ** (n - j - 1)))


def walks(mi):
    out = [(mi[0],)]
    for s in mi[1:]:
        out = [w + (h,) for w in out for h in range(abs(w[-1] - s), w[-1] + s + 1, 2)]
    return out


def tensor_indices(mi):
    return list(product(*[range(s + 1) for s in mi]))
