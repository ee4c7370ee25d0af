"""Dense univariate polynomials over the Gaussian rationals.

Coefficients are stored lowest degree first in a tuple with no trailing
zeros; the empty tuple is the zero polynomial.  All arithmetic is exact.

The gcd is computed by a modular algorithm: coefficient images live in
GF(p^2) = GF(p)[i] for primes p = 3 (mod 4), the monic gcd is computed per
prime by the Euclidean algorithm, coefficients are recombined by CRT and
rational reconstruction, and the candidate is verified by exact trial
division.  Verification makes the result unconditional: a monic common
divisor whose degree matches a modular gcd degree must be the gcd, because
the modular gcd degree never undershoots the true one (for primes keeping
the leading coefficients alive).
"""

from __future__ import annotations

import json

from gmpy2 import gcd as zgcd, isqrt as zisqrt, lcm as zlcm, mpq, mpz

from .errors import NonExactDivision
from .gaussian import GR, ONE, ZERO, GaussianRational

__all__ = ["Polynomial", "X", "poly_gcd"]


class Polynomial:
    """Immutable dense polynomial with GaussianRational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, GaussianRational) else GR(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- basic structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def valuation(self) -> int:
        """Multiplicity of the root at x=0 (0 for nonzero constant term)."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        v = 0
        while self.coeffs[v].is_zero():
            v += 1
        return v

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = [f"({c})*x^{k}" for k, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(terms) + ")"

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return self.scale(other)
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, c in enumerate(a):
            if c.is_zero():
                continue
            for j, d in enumerate(b):
                out[i + j] = out[i + j] + c * d
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, k) -> "Polynomial":
        k = GR(k)
        if k.is_zero():
            return Polynomial()
        return Polynomial([c * k for c in self.coeffs])

    def shift(self, k: int) -> "Polynomial":
        """Multiply by x^k (k >= 0) or strip x^-k exactly (k < 0)."""
        if k >= 0:
            return Polynomial((ZERO,) * k + self.coeffs) if self.coeffs else self
        if self.is_zero():
            return self
        if self.valuation() < -k:
            raise NonExactDivision(f"cannot divide by x^{-k}: valuation too small")
        return Polynomial(self.coeffs[-k:])

    def __pow__(self, k: int):
        r = Polynomial([ONE])
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def derivative(self) -> "Polynomial":
        return Polynomial([self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def compose_neg(self) -> "Polynomial":
        """p(x) -> p(-x)."""
        return Polynomial([(-c if k & 1 else c) for k, c in enumerate(self.coeffs)])

    def reversed(self) -> "Polynomial":
        """Coefficient reversal x^deg * p(1/x)."""
        return Polynomial(tuple(reversed(self.coeffs)))

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lc = self.leading()
        if lc == ONE:
            return self
        return self.scale(lc.inverse())

    # -- division ----------------------------------------------------------------

    def divmod(self, other: "Polynomial"):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb_inv = other.leading().inverse()
        if len(rem) - 1 < db:
            return Polynomial(), self
        quot = [ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - db - 1, -1, -1):
            c = rem[k + db] * lb_inv
            if not c.is_zero():
                quot[k] = c
                for j in range(db + 1):
                    rem[k + j] = rem[k + j] - c * bc[j]
        return Polynomial(quot), Polynomial(rem[:db])

    def div_exact(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise NonExactDivision(
                f"division left remainder of degree {r.degree} "
                f"(dividend deg {self.degree}, divisor deg {other.degree})"
            )
        return q

    def divides(self, other: "Polynomial") -> bool:
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        if other.degree < self.degree:
            return False
        return other.divmod(self)[1].is_zero()

    # -- evaluation ----------------------------------------------------------------

    def eval_exact(self, x) -> GaussianRational:
        x = GR(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mpc(self, z, ctx):
        """Horner evaluation at an mpmath complex point in context ctx."""
        acc = ctx.mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c.to_mpc(ctx)
        return acc

    def coeffs_mpc(self, ctx):
        return [c.to_mpc(ctx) for c in self.coeffs]

    def max_abs_upper(self):
        """Exact upper bound on max |coefficient| (via |re|+|im|)."""
        m = mpq(0)
        for c in self.coeffs:
            m = max(m, c.abs_upper())
        return m

    # -- serialization ----------------------------------------------------------------

    def to_lists(self):
        return [[str(c.re), str(c.im)] for c in self.coeffs]

    @staticmethod
    def from_lists(data):
        return Polynomial([GaussianRational(mpq(a), mpq(b)) for a, b in data])

    def to_json(self) -> str:
        return json.dumps(self.to_lists())

    @staticmethod
    def from_json(text: str) -> "Polynomial":
        return Polynomial.from_lists(json.loads(text))


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    return Polynomial([GR(x)])


X = Polynomial([0, 1])


# ---------------------------------------------------------------------------
# Modular gcd over Q(i)[x]
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 2^64
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream():
    """Deterministic primes p = 3 (mod 4) descending from just below 2^62."""
    p = (1 << 62) - 1
    while p % 4 != 3:
        p -= 2
    while p > 3:
        if _is_prime(p):
            yield p
        p -= 4


def _to_gaussian_int(poly: Polynomial):
    """Scale by the denominator lcm: integer-pair coefficient list."""
    den = mpz(1)
    for c in poly.coeffs:
        den = zlcm(den, c.re.denominator)
        den = zlcm(den, c.im.denominator)
    out = [(mpz(c.re * den), mpz(c.im * den)) for c in poly.coeffs]
    g = mpz(0)
    for a, b in out:
        g = zgcd(g, zgcd(a, b))
    if g > 1:
        out = [(a // g, b // g) for a, b in out]
    return out


def _gf2_inv(a, b, p):
    # inverse of a+bi in GF(p^2), p = 3 (mod 4)
    n = (a * a + b * b) % p
    ninv = pow(int(n), p - 2, p)
    return (a * ninv) % p, (-b * ninv) % p


def _gcd_mod_p(az, bz, p):
    """Monic gcd in GF(p^2)[x] of integer-pair coefficient lists; None if a
    leading coefficient dies mod p."""

    def reduce_(cz):
        out = [(int(a % p), int(b % p)) for a, b in cz]
        while out and out[-1] == (0, 0):
            out.pop()
        return out

    fa, fb = reduce_(az), reduce_(bz)
    if len(fa) != len(az) or len(fb) != len(bz):
        return None
    while fb:
        # make fb monic
        ia, ib = _gf2_inv(fb[-1][0], fb[-1][1], p)
        fb = [((a * ia - b * ib) % p, (a * ib + b * ia) % p) for a, b in fb]
        # remainder fa mod fb
        da, db = len(fa) - 1, len(fb) - 1
        r = list(fa)
        for k in range(da - db, -1, -1):
            ca, cb = r[k + db]
            if (ca, cb) == (0, 0):
                continue
            r[k + db] = (0, 0)
            for j in range(db):
                xa, xb = fb[j]
                ra, rb = r[k + j]
                r[k + j] = ((ra - ca * xa + cb * xb) % p, (rb - ca * xb - cb * xa) % p)
        while r and r[-1] == (0, 0):
            r.pop()
        fa, fb = fb, r
    ia, ib = _gf2_inv(fa[-1][0], fa[-1][1], p)
    return [((a * ia - b * ib) % p, (a * ib + b * ia) % p) for a, b in fa]


def _crt_pair(res_mods):
    """CRT combine [(value, p), ...] -> (value mod M, M)."""
    val, mod = mpz(res_mods[0][0]), mpz(res_mods[0][1])
    for v, p in res_mods[1:]:
        inv = pow(int(mod % p), p - 2, p)
        t = ((v - val) * inv) % p
        val = val + mod * t
        mod = mod * p
    return val % mod, mod


def _rational_reconstruct(c, M):
    """Wang reconstruction: find n/d = c (mod M), |n|, d <= sqrt(M/2)."""
    bound = zisqrt(M // 2)
    r0, r1 = mpz(M), mpz(c % M)
    s0, s1 = mpz(0), mpz(1)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or zgcd(r1, s1) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return mpq(r1, s1)


def poly_gcd(a: Polynomial, b: Polynomial, max_primes: int = 120) -> Polynomial:
    """Monic gcd of two polynomials over Q(i), exact and verified."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    va, vb = a.valuation(), b.valuation()
    v = min(va, vb)
    a0, b0 = a.shift(-va), b.shift(-vb)
    if a0.degree == 0 or b0.degree == 0:
        return Polynomial([ONE]).shift(v)

    az, bz = _to_gaussian_int(a0), _to_gaussian_int(b0)
    best_deg = None
    images = []  # (prime, gcd image) at the current best degree
    tried = 0
    for p in _prime_stream():
        tried += 1
        if tried > max_primes:
            break
        g = _gcd_mod_p(az, bz, p)
        if g is None:
            continue
        d = len(g) - 1
        if d == 0:
            return Polynomial([ONE]).shift(v)
        if best_deg is None or d < best_deg:
            best_deg, images = d, [(p, g)]
        elif d == best_deg:
            images.append((p, g))
        else:
            continue
        cand = _reconstruct(images, best_deg)
        if cand is not None and cand.divides(a0) and cand.divides(b0):
            return cand.shift(v)
    raise ArithmeticError("modular gcd failed to stabilize (prime budget exhausted)")


def _reconstruct(images, deg):
    coeffs = []
    for k in range(deg + 1):
        re_res = [(g[k][0] if k < len(g) else 0, p) for p, g in images]
        im_res = [(g[k][1] if k < len(g) else 0, p) for p, g in images]
        re_val, M = _crt_pair(re_res)
        im_val, _ = _crt_pair(im_res)
        qre = _rational_reconstruct(re_val, M)
        if qre is None:
            return None
        qim = _rational_reconstruct(im_val, M)
        if qim is None:
            return None
        coeffs.append(GaussianRational(qre, qim))
    return Polynomial(coeffs)
