"""Exact coefficient arithmetic in v = q^(1/2) and its specializations.

Every scalar lives in a ring selected by a QSpec:

* generic   -- rational functions in v over the Gaussian rationals
* rational  -- a Gaussian-rational value of v
* root      -- q = exp(i pi p'/p) inside the cyclotomic field Q(zeta_{4p})
* float     -- complex doubles, compared with a tolerance
* classical -- q = 1 (v = 1), the undeformed case

Rings are cached per spec, so ``get_ring(spec)`` always returns the same object.
"""
from __future__ import annotations

import cmath
import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from flint import fmpq, fmpq_poly, fmpz_poly

__all__ = [
    "QSpec",
    "Ring",
    "ScalarError",
    "InadmissibleError",
    "get_ring",
    "parse_qspec",
    "q_int",
    "q_factorial",
    "q_binomial",
    "order_pq",
    "theta",
    "specialize",
    "INF",
]

INF = math.inf

REL_TOL = 1e-9
ABS_TOL = 1e-12


class ScalarError(ValueError):
    pass


class InadmissibleError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def _fq(x) -> fmpq:
    x = _frac(x)
    return fmpq(x.numerator, x.denominator)


@dataclass(frozen=True)
class QSpec:
    """Which value of q the arithmetic runs at.

    ``params`` holds (re, im) Fractions of v for rational mode, (p', p) for
    root mode and (re, im) floats for float mode.
    """

    mode: str
    params: tuple = ()

    @staticmethod
    def generic() -> QSpec:
        return QSpec("generic")

    @staticmethod
    def classical() -> QSpec:
        return QSpec("classical")

    @staticmethod
    def rational(re, im=0, allow_degenerate: bool = False) -> QSpec:
        re, im = _frac(re), _frac(im)
        if re == 0 and im == 0:
            raise ScalarError("v must be nonzero")
        # q = v^2 = +-1 exactly when v is a fourth root of unity; these are the only
        # roots of unity in Q(i), so no other value needs rerouting to root mode.
        if (re * re + im * im == 1) and (re == 0 or im == 0) and not allow_degenerate:
            raise ScalarError(
                "v = %s makes q = +-1; use 'classical' or root:<p'>:<p> instead" % _fmt_gauss(re, im)
            )
        return QSpec("rational", (re, im))

    @staticmethod
    def root(p_prime: int, p: int) -> QSpec:
        p_prime, p = int(p_prime), int(p)
        if p < 2 or p_prime < 1:
            raise ScalarError("root of unity needs p >= 2 and p' >= 1")
        if math.gcd(p_prime, p) != 1:
            raise ScalarError("p' and p must be coprime")
        return QSpec("root", (p_prime, p))

    @staticmethod
    def floating(re: float, im: float = 0.0) -> QSpec:
        if re == 0 and im == 0:
            raise ScalarError("v must be nonzero")
        return QSpec("float", (float(re), float(im)))

    def __str__(self) -> str:
        if self.mode in ("generic", "classical"):
            return self.mode
        if self.mode == "rational":
            re, im = self.params
            if im == 0:
                return f"rational:{re.numerator}/{re.denominator}"
            return f"rational:{_fmt_gauss(re, im)}"
        if self.mode == "root":
            return "root:%d:%d" % self.params
        return "float:%r,%r" % self.params


def parse_qspec(text: str) -> QSpec:
    """Parse `generic`, `classical`, `rational:<num>/<den>`, `root:<p'>:<p>`, `float:<re>,<im>`."""
    t = text.strip()
    if t == "generic":
        return QSpec.generic()
    if t in ("classical", "q=1"):
        return QSpec.classical()
    if t.startswith("rational:"):
        body = t[len("rational:"):]
        # a plain fraction, or a Gaussian rational written in the scalar grammar
        try:
            return QSpec.rational(Fraction(body))
        except ValueError:
            pass
        val = generic_ring().parse(body)
        if val.a.degree() > 0 or val.b.degree() > 0 or val.d.degree() > 0:
            raise ScalarError(f"bad rational q-spec {text!r}")
        d = _frac(val.d.coeffs()[0])
        return QSpec.rational(_frac(_coef(val.a, 0)) / d, _frac(_coef(val.b, 0)) / d)
    if t.startswith("root:"):
        parts = t.split(":")
        if len(parts) != 3:
            raise ScalarError(f"bad root q-spec {text!r}")
        return QSpec.root(int(parts[1]), int(parts[2]))
    if t.startswith("float:"):
        parts = t[len("float:"):].split(",")
        if len(parts) == 1:
            parts.append("0")
        if len(parts) != 2:
            raise ScalarError(f"bad float q-spec {text!r}")
        return QSpec.floating(float(parts[0]), float(parts[1]))
    raise ScalarError(f"unknown q-spec {text!r}")


def _coef(p: fmpq_poly, k: int) -> fmpq:
    c = p.coeffs()
    return c[k] if k < len(c) else fmpq(0)


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_gauss(re: Fraction, im: Fraction) -> str:
    if im == 0:
        return _fmt_frac(re)
    ims = "i" if im == 1 else "-i" if im == -1 else f"{_fmt_frac(im)}*i"
    if re == 0:
        return ims
    if im < 0:
        ims = ims[1:] if ims.startswith("-") else ims
        return f"{_fmt_frac(re)} - {ims}" if ims != "i" else f"{_fmt_frac(re)} - i"
    return f"{_fmt_frac(re)} + {ims}"


# ---------------------------------------------------------------------------
# element types


class RatFunc:
    """(a + i b) / d with a, b, d in Q[v]; d monic and gcd(a, b, d) = 1."""

    __slots__ = ("ring", "a", "b", "d")

    def __init__(self, ring, a, b, d, normalize=True):
        self.ring = ring
        if normalize:
            if a.is_zero() and b.is_zero():
                a, b, d = a, b, fmpq_poly([1])
            else:
                g = d.gcd(a.gcd(b))
                if not g.is_one():
                    a, b, d = a // g, b // g, d // g
                lc = d.leading_coefficient()
                if lc != 1:
                    a, b, d = a / lc, b / lc, d / lc
        self.a, self.b, self.d = a, b, d

    def _c(self, o):
        return o if isinstance(o, RatFunc) else self.ring.coerce(o)

    def __add__(self, o):
        o = self._c(o)
        if self.d == o.d:
            return RatFunc(self.ring, self.a + o.a, self.b + o.b, self.d)
        g = self.d.gcd(o.d)
        x, y = o.d // g, self.d // g
        return RatFunc(self.ring, self.a * x + o.a * y, self.b * x + o.b * y, self.d * x)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ring, -self.a, -self.b, self.d, normalize=False)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        if isinstance(o, int):
            if o == 0:
                return self.ring.zero
            return RatFunc(self.ring, self.a * o, self.b * o, self.d)
        o = self._c(o)
        if o.b.is_zero():
            return RatFunc(self.ring, self.a * o.a, self.b * o.a, self.d * o.d)
        return RatFunc(
            self.ring,
            self.a * o.a - self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d * o.d,
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        n = self.a * self.a + self.b * self.b
        return RatFunc(self.ring, self.a * self.d, -self.b * self.d, n)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()

    def __pow__(self, k: int):
        return _power(self, k)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, o):
        if not isinstance(o, RatFunc):
            try:
                o = self.ring.coerce(o)
            except TypeError:
                return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        return hash((str(self.a), str(self.b), str(self.d)))

    def __repr__(self):
        return self.ring.fmt(self)


class Gauss:
    """A Gaussian rational re + i im."""

    __slots__ = ("ring", "re", "im")

    def __init__(self, ring, re: fmpq, im: fmpq):
        self.ring, self.re, self.im = ring, re, im

    def _c(self, o):
        return o if isinstance(o, Gauss) else self.ring.coerce(o)

    def __add__(self, o):
        o = self._c(o)
        return Gauss(self.ring, self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(self.ring, -self.re, -self.im)

    def __sub__(self, o):
        o = self._c(o)
        return Gauss(self.ring, self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        if isinstance(o, int):
            return Gauss(self.ring, self.re * o, self.im * o)
        o = self._c(o)
        return Gauss(self.ring, self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        return Gauss(self.ring, self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()

    def __pow__(self, k: int):
        return _power(self, k)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, o):
        if not isinstance(o, Gauss):
            try:
                o = self.ring.coerce(o)
            except TypeError:
                return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return self.ring.fmt(self)


class Cyclo:
    """Element of Q(zeta_N), stored reduced modulo the N-th cyclotomic polynomial."""

    __slots__ = ("ring", "p")

    def __init__(self, ring, p: fmpq_poly, reduce=True):
        self.ring = ring
        self.p = p % ring.phi if reduce and p.degree() >= ring.phi_deg else p

    def _c(self, o):
        return o if isinstance(o, Cyclo) else self.ring.coerce(o)

    def __add__(self, o):
        return Cyclo(self.ring, self.p + self._c(o).p, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.ring, -self.p, reduce=False)

    def __sub__(self, o):
        return Cyclo(self.ring, self.p - self._c(o).p, reduce=False)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        if isinstance(o, int):
            return Cyclo(self.ring, self.p * o, reduce=False)
        return Cyclo(self.ring, self.p * self._c(o).p)

    __rmul__ = __mul__

    def inverse(self):
        if self.p.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        g, s, _ = self.p.xgcd(self.ring.phi)
        return Cyclo(self.ring, s / g)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()

    def __pow__(self, k: int):
        return _power(self, k)

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def __eq__(self, o):
        if not isinstance(o, Cyclo):
            try:
                o = self.ring.coerce(o)
            except TypeError:
                return NotImplemented
        return self.p == o.p

    def __hash__(self):
        return hash(str(self.p))

    def __repr__(self):
        return self.ring.fmt(self)


class Flt:
    """Complex double with tolerant comparison."""

    __slots__ = ("ring", "z")

    def __init__(self, ring, z: complex):
        self.ring, self.z = ring, complex(z)

    def _c(self, o):
        return o if isinstance(o, Flt) else self.ring.coerce(o)

    def __add__(self, o):
        return Flt(self.ring, self.z + self._c(o).z)

    __radd__ = __add__

    def __neg__(self):
        return Flt(self.ring, -self.z)

    def __sub__(self, o):
        return Flt(self.ring, self.z - self._c(o).z)

    def __rsub__(self, o):
        return Flt(self.ring, self._c(o).z - self.z)

    def __mul__(self, o):
        return Flt(self.ring, self.z * self._c(o).z)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return Flt(self.ring, 1 / self.z)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()

    def __pow__(self, k: int):
        return _power(self, k)

    def is_zero(self) -> bool:
        return abs(self.z) <= ABS_TOL

    def __eq__(self, o):
        if not isinstance(o, Flt):
            try:
                o = self.ring.coerce(o)
            except TypeError:
                return NotImplemented
        d = abs(self.z - o.z)
        return d <= ABS_TOL or d <= REL_TOL * max(abs(self.z), abs(o.z))

    def __hash__(self):
        return 0

    def __repr__(self):
        return self.ring.fmt(self)


def _power(x, k: int):
    if k < 0:
        return _power(x.inverse(), -k)
    result = x.ring.one
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


# ---------------------------------------------------------------------------
# rings


class Ring:
    """Arithmetic context for one QSpec."""

    exact = True

    def __init__(self, spec: QSpec):
        self.spec = spec
        self._qint: dict[int, object] = {}
        self._qfact: dict[int, object] = {0: None}

    # constructors every ring provides
    def gauss(self, re, im=0):
        raise NotImplementedError

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return self.gauss(x)
        if getattr(x, "ring", None) is self:
            return x
        raise TypeError(f"cannot coerce {x!r} into {self.spec}")

    @functools.cached_property
    def zero(self):
        return self.gauss(0)

    @functools.cached_property
    def one(self):
        return self.gauss(1)

    @functools.cached_property
    def i(self):
        return self.gauss(0, 1)

    @functools.cached_property
    def q(self):
        return self.v * self.v

    @functools.cached_property
    def nu(self):
        return -self.q_int(2)

    def v_pow(self, k: int):
        return self.v ** k

    def q_pow(self, k: int):
        return self.v ** (2 * k)

    def q_int(self, k: int):
        """[k] = q^(k-1) + q^(k-3) + ... + q^(1-k); [-k] = -[k]."""
        if k < 0:
            return -self.q_int(-k)
        hit = self._qint.get(k)
        if hit is None:
            hit = self.zero
            for j in range(k):
                hit = hit + self.q_pow(k - 1 - 2 * j)
            self._qint[k] = hit
        return hit

    def q_factorial(self, m: int):
        if m < 0:
            raise ScalarError("q-factorial of a negative integer")
        hit = self._qfact.get(m)
        if hit is None:
            hit = self.one
            for j in range(1, m + 1):
                hit = hit * self.q_int(j)
            self._qfact[m] = hit
        return hit

    def q_binomial(self, m: int, l: int):
        """Product formula prod_{j=1}^{l} [m-l+j]/[j]; zero outside 0 <= l <= m."""
        if l < 0 or l > m:
            return self.zero
        l = min(l, m - l)
        num, den = self.one, self.one
        for j in range(1, l + 1):
            num = num * self.q_int(m - l + j)
            den = den * self.q_int(j)
        if den.is_zero():
            raise ZeroDivisionError(f"q-binomial ({m},{l}) has a vanishing denominator at {self.spec}")
        return num / den

    def order(self):
        raise NotImplementedError

    def regime_bound(self):
        """Largest exclusive bound on sizes for which Jones-Wenzl projectors exist."""
        return self.order()

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def fmt(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        return _Parser(text, self).parse()

    def to_complex(self, x) -> complex:
        raise NotImplementedError

    def __repr__(self):
        return f"Ring({self.spec})"


class GenericRing(Ring):
    def gauss(self, re, im=0):
        re, im = _fq(re), _fq(im)
        return RatFunc(self, fmpq_poly([re]), fmpq_poly([im]), fmpq_poly([1]), normalize=False)

    @functools.cached_property
    def v(self):
        return RatFunc(self, fmpq_poly([0, 1]), fmpq_poly([]), fmpq_poly([1]), normalize=False)

    def v_pow(self, k: int):
        if k >= 0:
            return RatFunc(self, fmpq_poly([0] * k + [1]), fmpq_poly([]), fmpq_poly([1]), normalize=False)
        return RatFunc(self, fmpq_poly([1]), fmpq_poly([]), fmpq_poly([0] * (-k) + [1]), normalize=False)

    def q_pow(self, k: int):
        return self.v_pow(2 * k)

    def order(self):
        return INF

    def laurent_terms(self, x: RatFunc):
        """Return {exponent: (re, im)} if x is a Laurent polynomial, else None."""
        d = x.d
        k = d.degree()
        if d != fmpq_poly([0] * k + [1]):
            return None
        out = {}
        for poly, part in ((x.a, 0), (x.b, 1)):
            for e, c in enumerate(poly.coeffs()):
                if c != 0:
                    re, im = out.get(e - k, (Fraction(0), Fraction(0)))
                    if part == 0:
                        re = _frac(c)
                    else:
                        im = _frac(c)
                    out[e - k] = (re, im)
        return out

    def fmt(self, x: RatFunc) -> str:
        terms = self.laurent_terms(x)
        if terms is not None:
            return _fmt_laurent(terms)
        num = RatFunc(self, x.a, x.b, fmpq_poly([1]), normalize=False)
        den = RatFunc(self, x.d, fmpq_poly([]), fmpq_poly([1]), normalize=False)
        return f"({_fmt_laurent(self.laurent_terms(num))})/({_fmt_laurent(self.laurent_terms(den))})"

    def invert_q(self, x: RatFunc) -> RatFunc:
        """The ring automorphism v -> 1/v (i fixed)."""
        n = max(x.a.degree(), x.b.degree(), x.d.degree(), 0)

        def rev(p):
            c = p.coeffs() + [fmpq(0)] * (n + 1 - len(p.coeffs()))
            return fmpq_poly(c[::-1])

        return RatFunc(self, rev(x.a), rev(x.b), rev(x.d))

    def to_complex(self, x) -> complex:
        raise ScalarError("generic scalars have no numeric value; specialize first")


class GaussRing(Ring):
    def __init__(self, spec: QSpec):
        super().__init__(spec)
        if spec.mode == "classical":
            self._v = (Fraction(1), Fraction(0))
        else:
            self._v = spec.params

    def gauss(self, re, im=0):
        return Gauss(self, _fq(re), _fq(im))

    @functools.cached_property
    def v(self):
        return self.gauss(*self._v)

    def order(self):
        re, im = self._v
        if re * re + im * im != 1:
            return INF
        if re == 0 or im == 0:
            return 1
        # |v| = 1 but v is not a root of unity (only +-1, +-i are, inside Q(i))
        return INF

    def regime_bound(self):
        return INF if self.spec.mode == "classical" else self.order()

    def fmt(self, x: Gauss) -> str:
        return _fmt_gauss(_frac(x.re), _frac(x.im))

    def to_complex(self, x) -> complex:
        return complex(float(_frac(x.re)), float(_frac(x.im)))


class CycloRing(Ring):
    """q = exp(i pi p'/p) with zeta = exp(2 pi i / 4p), v = zeta^p', i = zeta^p."""

    def __init__(self, spec: QSpec):
        super().__init__(spec)
        self.p_prime, self.p = spec.params
        self.N = 4 * self.p
        self.phi = fmpq_poly(fmpz_poly.cyclotomic(self.N).coeffs())
        self.phi_deg = self.phi.degree()

    def zeta_pow(self, k: int) -> Cyclo:
        k %= self.N
        return Cyclo(self, fmpq_poly([0] * k + [1]))

    def gauss(self, re, im=0):
        re, im = _fq(re), _fq(im)
        if im == 0:
            return Cyclo(self, fmpq_poly([re]), reduce=False)
        return Cyclo(self, fmpq_poly([re]) + fmpq_poly([0] * self.p + [im]))

    @functools.cached_property
    def i(self):
        return self.zeta_pow(self.p)

    @functools.cached_property
    def v(self):
        return self.zeta_pow(self.p_prime)

    def v_pow(self, k: int):
        return self.zeta_pow(self.p_prime * k)

    def q_pow(self, k: int):
        return self.zeta_pow(2 * self.p_prime * k)

    def order(self):
        return self.p

    @functools.cached_property
    def zeta_word(self):
        """Exponents (a, b) with zeta = v^a i^b, so output can name zeta through v and i."""
        # a p' + b p = 1 (mod 4p)
        for a in range(self.N):
            if (a * self.p_prime - 1) % self.p == 0:
                r = (1 - a * self.p_prime) // self.p
                return a, r % 4
        raise AssertionError("p' and p are not coprime")

    def fmt(self, x: Cyclo) -> str:
        # print as a polynomial in z, where z = zeta_{4p} = v^a * i^b
        terms = {e: (_frac(c), Fraction(0)) for e, c in enumerate(x.p.coeffs()) if c != 0}
        return _fmt_laurent(terms, var="z")

    def to_complex(self, x) -> complex:
        z = cmath.exp(2j * math.pi / self.N)
        return sum(float(_frac(c)) * z ** e for e, c in enumerate(x.p.coeffs()))


class FloatRing(Ring):
    exact = False

    def gauss(self, re, im=0):
        return Flt(self, complex(float(_frac(re)), float(_frac(im))))

    @functools.cached_property
    def v(self):
        return Flt(self, complex(*self.spec.params))

    def coerce(self, x):
        if isinstance(x, (float, complex)):
            return Flt(self, x)
        return super().coerce(x)

    def order(self, max_power: int = 1000):
        q = self.v.z ** 2
        for p in range(1, max_power + 1):
            w = q ** p
            if abs(w - 1) <= 1e-9 or abs(w + 1) <= 1e-9:
                return p
        return INF

    def fmt(self, x: Flt) -> str:
        return repr(x.z)

    def to_complex(self, x) -> complex:
        return x.z


def _fmt_laurent(terms: dict, var: str = "v") -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        re, im = terms[e]
        if re == 0 and im == 0:
            continue
        mono = "" if e == 0 else var if e == 1 else f"{var}^{e}"
        if im == 0 or re == 0:
            c = re if im == 0 else im
            neg = c < 0
            c = -c if neg else c
            body = _fmt_frac(c)
            if im != 0:
                body = "i" if c == 1 else f"{body}*i"
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
        else:
            neg = False
            body = f"({_fmt_gauss(re, im)})"
            if mono:
                body = f"{body}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# scalar grammar: numbers, i, v, q, z (root mode), + - * / ^ and parentheses

_TOKEN = re.compile(r"\s*(?:(\d+)|([ivqz])|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text, self.ring = text, ring
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ScalarError(f"unexpected character {text[pos:pos + 1]!r} at position {pos}")
            kind = "num" if m.group(1) else "sym" if m.group(2) else "op"
            val = m.group(1) or m.group(2) or m.group(3)
            if val == "**":
                val = "^"
            self.toks.append((kind, val, m.start(m.lastindex)))
            pos = m.end()
        self.k = 0

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.k += 1
        return t

    def parse(self):
        if not self.toks:
            raise ScalarError("empty scalar expression")
        x = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise ScalarError(f"unexpected {val!r} at position {pos}")
        return x

    def expr(self):
        x = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self):
        x = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            y = self.unary()
            x = x * y if op == "*" else x / y
        return x

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        x = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            while self.peek()[1] in ("-", "+"):
                sign *= -1 if self.take()[1] == "-" else 1
            kind, val, pos = self.take()
            if kind != "num":
                raise ScalarError(f"expected integer exponent at position {pos}")
            x = x ** (sign * int(val))
        return x

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring.gauss(int(val))
        if kind == "sym":
            if val == "i":
                return self.ring.i
            if val == "v":
                return self.ring.v
            if val == "q":
                return self.ring.q
            if isinstance(self.ring, CycloRing):
                return self.ring.zeta_pow(1)
            raise ScalarError(f"'z' is only defined at roots of unity (position {pos})")
        if val == "(":
            x = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                raise ScalarError(f"expected ')' at position {p2}")
            return x
        raise ScalarError(f"unexpected {val!r} at position {pos}")


# ---------------------------------------------------------------------------
# module-level API


@functools.lru_cache(maxsize=None)
def get_ring(spec: QSpec | str | None = None) -> Ring:
    if spec is None:
        spec = QSpec.generic()
    if isinstance(spec, str):
        return get_ring(parse_qspec(spec))
    if spec.mode == "generic":
        return GenericRing(spec)
    if spec.mode in ("rational", "classical"):
        return GaussRing(spec)
    if spec.mode == "root":
        return CycloRing(spec)
    if spec.mode == "float":
        return FloatRing(spec)
    raise ScalarError(f"unknown mode {spec.mode}")


def generic_ring() -> GenericRing:
    return get_ring(QSpec.generic())


def _ring(q) -> Ring:
    return q if isinstance(q, Ring) else get_ring(q)


def q_int(k: int, q=None):
    return _ring(q).q_int(k)


def q_factorial(m: int, q=None):
    return _ring(q).q_factorial(m)


def q_binomial(m: int, l: int, q=None):
    return _ring(q).q_binomial(m, l)


def order_pq(q=None):
    return _ring(q).order()


def is_admissible(r: int, s: int, t: int) -> bool:
    return min(r, s, t) >= 0 and (r + s + t) % 2 == 0 and abs(r - t) <= s <= r + t


def theta(r: int, s: int, t: int, q=None):
    """Closed-form evaluation of the Theta network with cable sizes r, s, t."""
    if not is_admissible(r, s, t):
        raise InadmissibleError(f"inadmissible three-vertex ({r},{s},{t})")
    R = _ring(q)
    h = (r + s + t) // 2
    num = R.q_factorial(h + 1) * R.q_factorial(h - t) * R.q_factorial(h - r) * R.q_factorial(h - s)
    den = R.q_factorial(r) * R.q_factorial(s) * R.q_factorial(t)
    if den.is_zero():
        raise ZeroDivisionError(f"Theta({r},{s},{t}) needs [max]! != 0 at {R.spec}")
    sign = -1 if h % 2 else 1
    return num / den * sign


def _eval_poly(p: fmpq_poly, x, target: Ring):
    acc = target.zero
    for c in reversed(p.coeffs()):
        acc = acc * x + target.gauss(_frac(c))
    return acc


def specialize(x, q):
    """Ring homomorphism from the generic ring sending v to the target value of v."""
    target = _ring(q)
    if isinstance(target, GenericRing):
        raise ScalarError("specialize needs a non-generic target")
    if not isinstance(x, RatFunc):
        x = generic_ring().coerce(x)
    v = target.v
    den = _eval_poly(x.d, v, target)
    if den.is_zero():
        raise ZeroDivisionError(f"denominator vanishes at {target.spec}")
    num = _eval_poly(x.a, v, target) + target.i * _eval_poly(x.b, v, target)
    return num / den
