"""Exact arithmetic in F = GF(2^m) and its quadratic extension K = F[i].

Elements are plain Python integers read as bit-vectors.  An element of F is
an integer below ``q = 2^m`` whose bits are the coefficients of the
polynomial basis ``1, t, ..., t^(m-1)``.  An element ``z = x + y*i`` of K is
packed as ``x | (y << m)``, so F sits inside K as the integers below ``q``
and the generator ``i`` of K over F is the integer ``q``.  The element ``i``
satisfies ``i^2 + i + delta = 0`` with ``delta`` an element of F of absolute
trace 1.
"""

from __future__ import annotations

from functools import lru_cache

MIN_M = 2
MAX_M = 16
# log/exp tables for K are built up to this degree (q^2 = 65536 entries)
_K_TABLE_MAX_M = 8


class FieldError(ValueError):
    pass


# --- GF(2)[t] helpers -------------------------------------------------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[t] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def mulmod(a: int, b: int, f: int) -> int:
    return poly_mod(clmul(a, b), f)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's test over GF(2): t^(2^m) = t mod f and no smaller-degree factor."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True

    def frob_power(k):
        x = 2
        for _ in range(k):
            x = mulmod(x, x, f)
        return x

    if frob_power(m) != 2:
        return False
    for p in _prime_factors(m):
        if poly_gcd(f, frob_power(m // p) ^ 2) != 1:
            return False
    return True


def smallest_irreducible(m: int) -> int:
    for f in range(1 << m, 1 << (m + 1)):
        if is_irreducible(f):
            return f
    raise FieldError(f"no irreducible polynomial of degree {m}")  # unreachable


def binom_odd(k: int, i: int) -> bool:
    """C(k, i) is odd iff i's binary digits are dominated by k's (Lucas)."""
    return i & ~k == 0


def _f_tables(m: int, f_poly: int) -> tuple[list[int], list[int]]:
    """exp/log tables of F* with respect to a primitive element."""
    q = 1 << m
    targets = _prime_factors(q - 1)

    def power(a, e):
        r = 1
        while e:
            if e & 1:
                r = mulmod(r, a, f_poly)
            a = mulmod(a, a, f_poly)
            e >>= 1
        return r

    # the polynomial generator t need not be primitive, so search
    g = next(g for g in range(2, q) if all(power(g, (q - 1) // p) != 1 for p in targets))
    exp = [0] * (2 * (q - 1))
    log = [0] * q
    x = 1
    for e in range(q - 1):
        exp[e] = x
        log[x] = e
        x = mulmod(x, g, f_poly)
    exp[q - 1:] = exp[:q - 1]
    return exp, log


def _abs_trace_poly(a: int, m: int, f_poly: int) -> int:
    t, x = 0, a
    for _ in range(m):
        t ^= x
        x = mulmod(x, x, f_poly)
    return t


# --- the field context ------------------------------------------------------

class FieldCtx:
    """F = GF(2^m) together with K = F[i], i^2 = i + delta.

    Instances are immutable after construction; build them with
    :func:`make_field`, which caches by ``(m, f_poly, delta)``.
    """

    def __init__(self, m: int, f_poly: int, delta: int):
        self.m = m
        self.q = 1 << m
        self.f_poly = f_poly
        self.delta = delta
        self.order = self.q * self.q - 1
        self.i_unit = self.q
        self._fmask = self.q - 1

        self._fexp, self._flog = _f_tables(m, f_poly)
        if self.abs_trace(delta) != 1:
            raise FieldError(f"delta={delta:#x} has absolute trace 0")

        self.generator = self._find_k_generator()
        self._klog: list[int] | None = None
        self._kexp: list[int] | None = None
        if m <= _K_TABLE_MAX_M:
            self._build_k_tables()

        step = self.kpow(self.generator, self.q - 1)
        circle = [1]
        for _ in range(self.q):
            circle.append(self.kmul(circle[-1], step))
        assert self.kmul(circle[-1], step) == 1
        self.unit_circle: tuple[int, ...] = tuple(circle)
        self.unit_index = {u: j for j, u in enumerate(self.unit_circle)}

    def __reduce__(self):
        return make_field, (self.m, self.f_poly, self.delta)

    def __repr__(self):
        return f"FieldCtx(m={self.m}, f_poly={self.f_poly:#x}, delta={self.delta:#x})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.m, self.f_poly, self.delta) == (
            other.m, other.f_poly, other.delta)

    def __hash__(self):
        return hash((self.m, self.f_poly, self.delta))

    # -- F ----------------------------------------------------------------

    def fmul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._fexp[self._flog[a] + self._flog[b]]

    def finv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F")
        return self._fexp[(self.q - 1 - self._flog[a]) % (self.q - 1)]

    def fpow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero in F")
            return 1 if e == 0 else 0
        return self._fexp[(self._flog[a] * e) % (self.q - 1)]

    def fsqrt(self, a: int) -> int:
        return self.fpow(a, self.q >> 1)

    def abs_trace(self, a: int) -> int:
        """Tr_{F/GF(2)}(a) = a + a^2 + ... + a^(2^(m-1))."""
        t, x = 0, a
        for _ in range(self.m):
            t ^= x
            x = self.fmul(x, x)
        return t

    # -- K ----------------------------------------------------------------

    def re(self, z: int) -> int:
        return z & self._fmask

    def im(self, z: int) -> int:
        return z >> self.m

    def kelem(self, re: int, im: int) -> int:
        return re | (im << self.m)

    def in_f(self, z: int) -> bool:
        return z < self.q

    def _kmul_basis(self, a: int, b: int) -> int:
        m, mask, fmul = self.m, self._fmask, self.fmul
        a0, a1 = a & mask, a >> m
        b0, b1 = b & mask, b >> m
        t = fmul(a1, b1)
        re = fmul(a0, b0) ^ fmul(self.delta, t)
        im = fmul(a0, b1) ^ fmul(a1, b0) ^ t
        return re | (im << m)

    def _find_k_generator(self) -> int:
        targets = [self.order // p for p in _prime_factors(self.order)]
        # a generator cannot lie in the subfield F, i.e. below q
        for w in range(self.q, self.order + 1):
            if all(self._kpow_sq(w, e) != 1 for e in targets):
                return w
        raise FieldError("K* has no generator")  # unreachable

    def _build_k_tables(self):
        n = self.order
        exp = [0] * (2 * n)
        log = [0] * (n + 1)
        x = 1
        for e in range(n):
            exp[e] = x
            log[x] = e
            x = self._kmul_basis(x, self.generator)
        exp[n:] = exp[:n]
        self._kexp, self._klog = exp, log

    def kmul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._klog is not None:
            return self._kexp[self._klog[a] + self._klog[b]]
        return self._kmul_basis(a, b)

    def _kpow_sq(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._kmul_basis(r, a)
            a = self._kmul_basis(a, a)
            e >>= 1
        return r

    def kpow(self, a: int, e: int) -> int:
        """a^e with exponents reduced mod q^2 - 1; 0^0 = 1."""
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero in K")
            return 1 if e == 0 else 0
        e %= self.order
        if self._klog is not None:
            return self._kexp[(self._klog[a] * e) % self.order]
        return self._kpow_sq(a, e)

    def kinv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in K")
        if self._klog is not None:
            return self._kexp[self.order - self._klog[a]]
        # 1/z = conj(z) / N(z)
        return self.kmul(self.conj(a), self.finv(self.norm(a)))

    def kdiv(self, a: int, b: int) -> int:
        return self.kmul(a, self.kinv(b))

    def conj(self, z: int) -> int:
        """z^q; for z = x + y*i this is (x + y) + y*i."""
        y = z >> self.m
        return z ^ y

    def trace(self, z: int) -> int:
        return z >> self.m

    def norm(self, z: int) -> int:
        x, y = z & self._fmask, z >> self.m
        return self.fmul(x, x) ^ self.fmul(x, y) ^ self.fmul(self.delta, self.fmul(y, y))

    def bform(self, a: int, b: int) -> int:
        """<a, b> = T(a * conj(b)), an alternating symmetric F-bilinear form."""
        # in coordinates: a0*b1 + a1*b0
        m, mask, fmul = self.m, self._fmask, self.fmul
        return fmul(a & mask, b >> m) ^ fmul(a >> m, b & mask)

    def sqrt_k(self, z: int) -> int:
        if z == 0:
            return 0
        return self.kpow(z, 1 << (2 * self.m - 1))

    def polar(self, z: int) -> tuple[int, int]:
        """Unique z = lam * u with lam in F*, u on the unit circle."""
        if z == 0:
            raise ZeroDivisionError("zero has no polar form")
        lam = self.fsqrt(self.norm(z))
        return lam, self.kmul(z, self.finv(lam))

    def direction(self, z: int) -> int:
        return self.polar(z)[1]

    def bracket_pow_expansion(self, a: int, b: int, k: int) -> int:
        """<a, b>^k expanded as a sum of forms of (iq + k - i)-th powers."""
        if not 1 <= k <= self.q:
            raise ValueError(f"k={k} outside 1..q")
        total = 0
        for i in range((k - 1) // 2 + 1):
            if binom_odd(k, i):
                e = i * self.q + k - i
                total ^= self.bform(self.kpow(a, e), self.kpow(b, e))
        return total

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {"m": self.m, "f_poly": hex(self.f_poly), "delta": hex(self.delta)}

    def khex(self, z: int) -> list[str]:
        return [hex(self.re(z)), hex(self.im(z))]

    def kparse(self, pair) -> int:
        if isinstance(pair, (list, tuple)) and len(pair) == 2:
            re, im = (int(v, 16) if isinstance(v, str) else int(v) for v in pair)
        else:
            raise ValueError(f"expected a [re, im] pair, got {pair!r}")
        if re >= self.q or im >= self.q or re < 0 or im < 0:
            raise ValueError(f"element {pair!r} out of range for q={self.q}")
        return self.kelem(re, im)


def field_from_dict(d: dict) -> FieldCtx:
    def num(v):
        return int(v, 16) if isinstance(v, str) else int(v)

    f_poly = num(d["f_poly"]) if d.get("f_poly") is not None else None
    delta = num(d["delta"]) if d.get("delta") is not None else None
    return make_field(int(d["m"]), f_poly, delta)


@lru_cache(maxsize=None)
def make_field(m: int, f_poly: int | None = None, delta: int | None = None) -> FieldCtx:
    """Build (or fetch the cached) field context for GF(2^m) and its quadratic extension.

    Defaults: the numerically smallest irreducible polynomial of degree m and
    the smallest delta with absolute trace 1 (which is 1 for odd m).
    """
    if not MIN_M <= m <= MAX_M:
        raise FieldError(f"m={m} outside supported range {MIN_M}..{MAX_M}")
    if f_poly is None:
        f_poly = smallest_irreducible(m)
    elif f_poly.bit_length() - 1 != m or not is_irreducible(f_poly):
        raise FieldError(f"f_poly={f_poly:#x} is not an irreducible polynomial of degree {m}")
    if delta is None:
        delta = next(d for d in range(1, 1 << m) if _abs_trace_poly(d, m, f_poly) == 1)
    elif not 0 < delta < (1 << m):
        raise FieldError(f"delta={delta:#x} is not a nonzero element of F")
    return FieldCtx(m, f_poly, delta)


def field_for_q(q: int) -> FieldCtx:
    m = q.bit_length() - 1
    if q < 4 or q != 1 << m:
        raise FieldError(f"q={q} is not a power of 2 with q >= 4")
    return make_field(m)
