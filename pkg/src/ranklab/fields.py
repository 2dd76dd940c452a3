"""Arithmetic in the tower F_q <= F_{q^m} <= F_{q^(m*u)}.

Elements are raw values, not wrapper objects: a field object carries the
operations and raw values flow through them.

* F_q            : ints in [0, q)                       (PrimeField)
* F_{q^m}, q = 2 : ints, bit i = coefficient of x^i     (BinaryExtField)
* F_{q^m}, q odd : tuples of m digits                   (PrimeExtField)
* F_{q^(m*u)}    : tuples of u mid-field elements       (TopField)

Digits are little-endian (constant term first) everywhere, including
serialization.  q is restricted to a prime; prime-power q would need a
digit representation for the base field and is left as an extension point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import BadParameters, NotABasis

# spread table: byte b -> 16-bit word with the bits of b interleaved with 0s;
# used to square GF(2)[x] polynomials without a carry-less multiplication
_SPREAD = [0] * 256
for _b in range(256):
    _w = 0
    for _i in range(8):
        if _b >> _i & 1:
            _w |= 1 << (2 * _i)
    _SPREAD[_b] = _w
del _b, _w, _i


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Z/qZ for a prime q; raw values are ints in [0, q)."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise BadParameters(f"q = {q} is not prime")
        self.q = q
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return -a % self.q

    def mul(self, a, b):
        return a * b % self.q

    def inv(self, a):
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.q)

    def rand(self, rng: random.Random):
        return rng.randrange(self.q)

    def __repr__(self):
        return f"PrimeField({self.q})"


# ---------------------------------------------------------------------------
# GF(2)[x] on plain ints (bit i = coefficient of x^i)


def gf2x_mul(a: int, b: int) -> int:
    r = 0
    while b:
        lsb = b & -b
        r ^= a * lsb  # lsb is a power of two: exact shift, no carries
        b ^= lsb
    return r


def gf2x_mod(a: int, b: int) -> int:
    db = b.bit_length()
    da = a.bit_length()
    while da >= db:
        a ^= b << (da - db)
        da = a.bit_length()
    return a


def gf2x_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2x_mod(a, b)
    return a


def _gf2x_sq(a: int) -> int:
    out = 0
    shift = 0
    while a:
        out |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return out


def gf2x_is_irreducible(f: int) -> bool:
    """Rabin irreducibility test for f in GF(2)[x]."""
    m = f.bit_length() - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    need = {m // p for p in _prime_factors(m)}
    h = 2  # the polynomial x
    powers = {}
    for j in range(1, m + 1):
        h = gf2x_mod(_gf2x_sq(h), f)
        if j in need:
            powers[j] = h
    if h != 2:  # x^(2^m) != x mod f
        return False
    for j, hj in powers.items():
        if gf2x_gcd(hj ^ 2, f) != 1:
            return False
    return True


def _prime_factors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# generic F_q[x] on digit tuples (odd q; toy sizes only)


def _qx_trim(p: Sequence[int]) -> Tuple[int, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _qx_mul(q: int, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return _qx_trim(out)


def _qx_mod(q: int, a, b):
    a = list(a)
    db = len(b) - 1
    lead_inv = pow(b[-1], -1, q)
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * lead_inv % q
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % q
        a = list(_qx_trim(a))
    return _qx_trim(a)


def _qx_gcd(q: int, a, b):
    while b:
        a, b = b, _qx_mod(q, a, b)
    return a


def _qx_powmod_q(q: int, a, f):
    """a(x)^q mod f(x), by square-and-multiply on the exponent q."""
    result = (1,)
    base = _qx_mod(q, a, f)
    e = q
    while e:
        if e & 1:
            result = _qx_mod(q, _qx_mul(q, result, base), f)
        base = _qx_mod(q, _qx_mul(q, base, base), f)
        e >>= 1
    return result


def qx_is_irreducible(q: int, f: Sequence[int]) -> bool:
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    need = {m // p for p in _prime_factors(m)}
    h = (0, 1)
    records = {}
    for j in range(1, m + 1):
        h = _qx_powmod_q(q, h, f)
        if j in need:
            records[j] = h
    if _qx_trim(h) != (0, 1):
        return False
    x = (0, 1)
    for hj in records.values():
        diff = list(hj) + [0] * (2 - len(hj))
        diff[1] = (diff[1] - 1) % q
        g = _qx_gcd(q, _qx_trim(diff), f)
        if len(g) != 1:
            return False
    return True


_IRREDUCIBLE_CACHE: dict = {}


def find_irreducible(q: int, m: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over F_q.

    Candidates x^m + g(x) are ordered by the base-q integer value of the
    digit vector of g (constant term is the least significant digit).
    """
    key = (q, m)
    cached = _IRREDUCIBLE_CACHE.get(key)
    if cached is not None:
        return cached
    if m < 1:
        raise BadParameters("degree must be positive")
    count = 0
    while True:
        if q == 2:
            f = (1 << m) | count
            ok = gf2x_is_irreducible(f)
            digits = tuple((f >> i) & 1 for i in range(m + 1))
        else:
            low = []
            c = count
            for _ in range(m):
                low.append(c % q)
                c //= q
            if c:
                raise BadParameters(f"no irreducible of degree {m} found")
            digits = tuple(low) + (1,)
            ok = qx_is_irreducible(q, digits)
        if ok:
            _IRREDUCIBLE_CACHE[key] = digits
            return digits
        count += 1


# ---------------------------------------------------------------------------
# F_{q^m}


class BinaryExtField:
    """F_{2^m}; raw elements are ints, bit i = coefficient i."""

    def __init__(self, m: int, modulus: Optional[Sequence[int]] = None):
        self.q = 2
        self.m = m
        self.base = PrimeField(2)
        if modulus is None:
            modulus = find_irreducible(2, m)
        digits = tuple(int(d) & 1 for d in modulus)
        if len(digits) != m + 1 or digits[-1] != 1:
            raise BadParameters("modulus must be monic of degree m")
        self.modulus_digits = digits
        self.modulus = sum(d << i for i, d in enumerate(digits))
        if not gf2x_is_irreducible(self.modulus):
            raise BadParameters("modulus is reducible")
        self.mask = (1 << m) - 1
        # shifts of the low part of the modulus, for fold-based reduction
        low = self.modulus ^ (1 << m)
        self._low_shifts = [i for i in range(m) if (low >> i) & 1]
        self.zero = 0
        self.one = 1
        self._frob_cols: dict = {}
        self._trace_mask: Optional[int] = None

    # --- ring ops ---

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def neg(self, a: int) -> int:
        return a

    def _reduce(self, c: int) -> int:
        m = self.m
        shifts = self._low_shifts
        hi = c >> m
        while hi:
            c &= self.mask
            for s in shifts:
                c ^= hi << s
            hi = c >> m
        return c

    def mul(self, a: int, b: int) -> int:
        r = 0
        while b:
            lsb = b & -b
            r ^= a * lsb
            b ^= lsb
        return self._reduce(r)

    def sq(self, a: int) -> int:
        out = 0
        shift = 0
        while a:
            out |= _SPREAD[a & 0xFF] << shift
            a >>= 8
            shift += 16
        return self._reduce(out)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in GF(2)[x]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1:
            d = r0.bit_length() - r1.bit_length()
            if d < 0:
                r0, r1, s0, s1 = r1, r0, s1, s0
                d = -d
            r0 ^= r1 << d
            s0 ^= s1 << d
        return self._reduce(s0)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.sq(a)
            e >>= 1
        return result

    # --- Frobenius and trace ---

    def frob(self, a: int, j: int = 1) -> int:
        """a^(q^j); j is reduced mod m."""
        j %= self.m
        if j == 0 or a == 0:
            return a
        cols = self._frob_cols.get(j)
        if cols is None:
            cols = self._build_frob_cols(j)
        out = 0
        i = 0
        while a:
            if a & 1:
                out ^= cols[i]
            a >>= 1
            i += 1
        return out

    def _build_frob_cols(self, j: int) -> List[int]:
        # cols[i] = (x^i)^(q^j) = w^i with w = x^(q^j)
        w = 2
        for _ in range(j):
            w = self.sq(w)
        base = 1
        cols = []
        for _ in range(self.m):
            cols.append(base)
            base = self.mul(base, w)
        self._frob_cols[j] = cols
        return cols

    def trace_to_base(self, a: int) -> int:
        """Tr_{F_{q^m}/F_q}(a) as a base-field digit."""
        if self._trace_mask is None:
            mask = 0
            for i in range(self.m):
                t = 1 << i
                acc = t
                for _ in range(self.m - 1):
                    t = self.sq(t)
                    acc ^= t
                if acc == 1:
                    mask |= 1 << i
                elif acc != 0:
                    raise AssertionError("trace image escaped the base field")
            self._trace_mask = mask
        return (a & self._trace_mask).bit_count() & 1

    # --- conversions and sampling ---

    def rand(self, rng: random.Random) -> int:
        return rng.getrandbits(self.m)

    def from_digits(self, digits: Sequence[int]) -> int:
        return sum((int(d) & 1) << i for i, d in enumerate(digits))

    def to_digits(self, a: int) -> List[int]:
        return [(a >> i) & 1 for i in range(self.m)]

    def basis(self) -> List[int]:
        return [1 << i for i in range(self.m)]

    def __repr__(self):
        return f"BinaryExtField(m={self.m})"


class PrimeExtField:
    """F_{q^m} for an odd prime q; raw elements are m-digit tuples."""

    def __init__(self, q: int, m: int, modulus: Optional[Sequence[int]] = None):
        self.q = q
        self.m = m
        self.base = PrimeField(q)
        if modulus is None:
            modulus = find_irreducible(q, m)
        digits = tuple(int(d) % q for d in modulus)
        if len(digits) != m + 1 or digits[-1] != 1:
            raise BadParameters("modulus must be monic of degree m")
        if not qx_is_irreducible(q, digits):
            raise BadParameters("modulus is reducible")
        self.modulus_digits = digits
        self.zero = (0,) * m
        self.one = ((1,) + (0,) * (m - 1)) if m > 0 else ()

    def _pad(self, p) -> Tuple[int, ...]:
        return tuple(p) + (0,) * (self.m - len(p))

    def add(self, a, b):
        q = self.q
        return tuple((x + y) % q for x, y in zip(a, b))

    def sub(self, a, b):
        q = self.q
        return tuple((x - y) % q for x, y in zip(a, b))

    def neg(self, a):
        q = self.q
        return tuple(-x % q for x in a)

    def mul(self, a, b):
        prod = _qx_mul(self.q, a, b)
        return self._pad(_qx_mod(self.q, prod, self.modulus_digits))

    def sq(self, a):
        return self.mul(a, a)

    def inv(self, a):
        if all(x == 0 for x in a):
            raise ZeroDivisionError("inverse of zero")
        q = self.q
        r0, r1 = self.modulus_digits, _qx_trim(a)
        s0, s1 = (), (1,)
        while r1:
            # one division step
            rem = list(r0)
            quo = [0] * max(1, len(r0) - len(r1) + 1)
            lead_inv = pow(r1[-1], -1, q)
            while len(rem) >= len(r1) and _qx_trim(rem):
                rem = list(_qx_trim(rem))
                if len(rem) < len(r1):
                    break
                c = rem[-1] * lead_inv % q
                shift = len(rem) - len(r1)
                quo[shift] = c
                for j, bj in enumerate(r1):
                    rem[shift + j] = (rem[shift + j] - c * bj) % q
            rem = _qx_trim(rem)
            quo = _qx_trim(quo)
            r0, r1 = r1, rem
            s0, s1 = s1, _qx_trim(
                [
                    (x - y) % q
                    for x, y in zip(
                        list(s0) + [0] * max(0, len(_qx_mul(q, quo, s1)) - len(s0)),
                        list(_qx_mul(q, quo, s1))
                        + [0] * max(0, len(s0) - len(_qx_mul(q, quo, s1))),
                    )
                ]
            )
        # r0 is the gcd (a constant, since the modulus is irreducible)
        c_inv = pow(r0[0], -1, q)
        return self._pad(_qx_trim([x * c_inv % q for x in s0]))

    def pow(self, a, e: int):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frob(self, a, j: int = 1):
        j %= self.m
        for _ in range(j):
            a = self.pow(a, self.q)
        return a

    def trace_to_base(self, a) -> int:
        acc = a
        t = a
        for _ in range(self.m - 1):
            t = self.frob(t, 1)
            acc = self.add(acc, t)
        if any(x != 0 for x in acc[1:]):
            raise AssertionError("trace image escaped the base field")
        return acc[0]

    def rand(self, rng: random.Random):
        return tuple(rng.randrange(self.q) for _ in range(self.m))

    def from_digits(self, digits: Sequence[int]):
        return self._pad(tuple(int(d) % self.q for d in digits))

    def to_digits(self, a) -> List[int]:
        return list(a)

    def basis(self):
        out = []
        for i in range(self.m):
            v = [0] * self.m
            v[i] = 1
            out.append(tuple(v))
        return out

    def __repr__(self):
        return f"PrimeExtField(q={self.q}, m={self.m})"


def ext_field(q: int, m: int, modulus: Optional[Sequence[int]] = None):
    """Build F_{q^m} with the representation suited to q."""
    if q == 2:
        return BinaryExtField(m, modulus)
    if not is_prime(q):
        raise BadParameters("q must be prime (prime powers are an extension point)")
    return PrimeExtField(q, m, modulus)


# ---------------------------------------------------------------------------
# F_{q^(m*u)} as a degree-u extension of the mid field


class TopField:
    """F_{(q^m)^u}; raw elements are u-tuples of mid-field elements."""

    def __init__(self, mid, u: int, modulus: Optional[Sequence] = None):
        self.mid = mid
        self.u = u
        self.q = mid.q
        if modulus is None:
            modulus = find_irreducible_over(mid, u)
        modulus = tuple(modulus)
        if len(modulus) != u + 1 or modulus[-1] != mid.one:
            raise BadParameters("top modulus must be monic of degree u")
        self.modulus = modulus
        self.zero = (mid.zero,) * u
        self.one = (mid.one,) + (mid.zero,) * (u - 1)
        self._qm_conjugate_cols: Optional[List[Tuple]] = None

    def embed(self, c):
        """Image of a mid-field element."""
        return (c,) + (self.mid.zero,) * (self.u - 1)

    def add(self, a, b):
        mid = self.mid
        return tuple(mid.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        mid = self.mid
        return tuple(mid.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        mid = self.mid
        return tuple(mid.neg(x) for x in a)

    def scalar_mul(self, c, a):
        """Multiply by a mid-field scalar."""
        mid = self.mid
        return tuple(mid.mul(c, x) for x in a)

    def mul(self, a, b):
        mid = self.mid
        u = self.u
        prod = [mid.zero] * (2 * u - 1)
        for i, ai in enumerate(a):
            if ai != mid.zero:
                for j, bj in enumerate(b):
                    if bj != mid.zero:
                        prod[i + j] = mid.add(prod[i + j], mid.mul(ai, bj))
        # reduce by the monic modulus
        for i in range(2 * u - 2, u - 1, -1):
            c = prod[i]
            if c != mid.zero:
                prod[i] = mid.zero
                for j in range(u):
                    mj = self.modulus[j]
                    if mj != mid.zero:
                        prod[i - u + j] = mid.sub(prod[i - u + j], mid.mul(c, mj))
        return tuple(prod[:u])

    def inv(self, a):
        mid = self.mid
        if all(x == mid.zero for x in a):
            raise ZeroDivisionError("inverse of zero")
        r0 = list(self.modulus)
        r1 = _top_trim(mid, list(a))
        s0: list = []
        s1: list = [mid.one]
        while r1:
            quo, rem = _top_divmod(mid, r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _top_sub(mid, s0, _top_mul(mid, quo, s1))
        c_inv = mid.inv(r0[0])
        out = [mid.mul(c_inv, x) for x in s0]
        out += [mid.zero] * (self.u - len(out))
        return tuple(out[: self.u])

    def pow(self, a, e: int):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frob_qm(self, a):
        """a^(q^m): the mid-field-linear conjugation generating Gal(top/mid)."""
        if self._qm_conjugate_cols is None:
            y = (self.mid.zero, self.mid.one) + (self.mid.zero,) * (self.u - 2)
            w = self.pow(y, self.q ** self.mid.m)
            cols = [self.one]
            for _ in range(self.u - 1):
                cols.append(self.mul(cols[-1], w))
            self._qm_conjugate_cols = cols
        cols = self._qm_conjugate_cols
        acc = self.zero
        for coeff, col in zip(a, cols):
            if coeff != self.mid.zero:
                acc = self.add(acc, self.scalar_mul(coeff, col))
        return acc

    def trace_to_mid(self, a):
        """Tr_{top/mid}(a) = sum of the u conjugates, as a mid element."""
        acc = a
        t = a
        for _ in range(self.u - 1):
            t = self.frob_qm(t)
            acc = self.add(acc, t)
        mid = self.mid
        if any(x != mid.zero for x in acc[1:]):
            raise AssertionError("trace image escaped the mid field")
        return acc[0]

    def rand(self, rng: random.Random):
        return tuple(self.mid.rand(rng) for _ in range(self.u))

    def basis(self):
        mid = self.mid
        out = []
        for i in range(self.u):
            v = [mid.zero] * self.u
            v[i] = mid.one
            out.append(tuple(v))
        return out

    def __repr__(self):
        return f"TopField(q={self.q}, m={self.mid.m}, u={self.u})"


def _top_trim(mid, p):
    p = list(p)
    while p and p[-1] == mid.zero:
        p.pop()
    return p


def _top_mul(mid, a, b):
    if not a or not b:
        return []
    out = [mid.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != mid.zero:
            for j, bj in enumerate(b):
                if bj != mid.zero:
                    out[i + j] = mid.add(out[i + j], mid.mul(ai, bj))
    return _top_trim(mid, out)


def _top_sub(mid, a, b):
    n = max(len(a), len(b))
    a = list(a) + [mid.zero] * (n - len(a))
    b = list(b) + [mid.zero] * (n - len(b))
    return _top_trim(mid, [mid.sub(x, y) for x, y in zip(a, b)])


def _top_divmod(mid, a, b):
    a = _top_trim(mid, a)
    b = _top_trim(mid, b)
    quo = [mid.zero] * max(1, len(a) - len(b) + 1)
    lead_inv = mid.inv(b[-1])
    while a and len(a) >= len(b):
        c = mid.mul(a[-1], lead_inv)
        shift = len(a) - len(b)
        quo[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] = mid.sub(a[shift + j], mid.mul(c, bj))
        a = _top_trim(mid, a)
    return _top_trim(mid, quo), a


def find_irreducible_over(mid, u: int) -> Tuple:
    """Lexicographically smallest monic irreducible of degree u over F_{q^m}.

    Candidates y^u + g(y) are ordered by the integer encoding of g's
    coefficient digits (same digit order as serialization).
    """
    q, m = mid.q, mid.m
    card = q ** m
    count = 0
    while True:
        low = []
        c = count
        for _ in range(u):
            low.append(mid.from_digits(_int_digits(c % card, q, m)))
            c //= card
        if c:
            raise BadParameters(f"no irreducible of degree {u} found")
        poly = low + [mid.one]
        if _is_irreducible_over(mid, poly):
            return tuple(poly)
        count += 1


def _int_digits(v: int, q: int, m: int) -> List[int]:
    out = []
    for _ in range(m):
        out.append(v % q)
        v //= q
    return out


def _is_irreducible_over(mid, poly: Sequence) -> bool:
    """Rabin test for a monic polynomial over F_{q^m}."""
    u = len(poly) - 1
    if u <= 0:
        return False
    if u == 1:
        return True
    if poly[0] == mid.zero:
        return False
    card = mid.q ** mid.m
    y = [mid.zero, mid.one]
    need = {u // p for p in _prime_factors(u)}
    h = list(y)
    records = {}
    for j in range(1, u + 1):
        h = _top_powmod(mid, h, card, poly)
        if j in need:
            records[j] = h
    if _top_trim(mid, _top_sub(mid, h, y)):
        return False
    for hj in records.values():
        g = _top_gcd(mid, _top_sub(mid, hj, y), list(poly))
        if len(g) != 1:
            return False
    return True


def _top_powmod(mid, a, e: int, f):
    result = [mid.one]
    base = _top_divmod(mid, a, f)[1]
    while e:
        if e & 1:
            result = _top_divmod(mid, _top_mul(mid, result, base), f)[1]
        base = _top_divmod(mid, _top_mul(mid, base, base), f)[1]
        e >>= 1
    return result


def _top_gcd(mid, a, b):
    a, b = _top_trim(mid, a), _top_trim(mid, b)
    while b:
        a, b = b, _top_divmod(mid, a, b)[1]
    if a:
        lead_inv = mid.inv(a[-1])
        a = [mid.mul(lead_inv, x) for x in a]
    return a


# ---------------------------------------------------------------------------
# the full tower


@dataclass(frozen=True)
class TowerParams:
    q: int
    m: int
    u: int
    modulus_mid: Tuple[int, ...]
    modulus_top: Optional[Tuple] = None


class Tower:
    """F_q <= F_{q^m} <= F_{q^(m*u)}; u = 1 means no top level."""

    def __init__(self, q: int, m: int, u: int = 1,
                 modulus_mid: Optional[Sequence[int]] = None,
                 modulus_top: Optional[Sequence] = None):
        self.q = q
        self.m = m
        self.u = u
        self.base = PrimeField(q)
        self.mid = ext_field(q, m, modulus_mid)
        self.top = TopField(self.mid, u, modulus_top) if u > 1 else None

    @property
    def params(self) -> TowerParams:
        return TowerParams(
            q=self.q, m=self.m, u=self.u,
            modulus_mid=self.mid.modulus_digits,
            modulus_top=self.top.modulus if self.top else None,
        )


# ---------------------------------------------------------------------------
# expand / rank / support


def expand(F, vec: Sequence, basis: Optional[Sequence] = None) -> List[List[int]]:
    """m x len(vec) digit matrix; column j = coordinates of vec[j] in basis."""
    if basis is None:
        return [[d for d in col] for col in zip(*(F.to_digits(v) for v in vec))] \
            if vec else [[] for _ in range(F.m)]
    coords = coords_in_basis(F, vec, basis)
    return [list(row) for row in zip(*coords)] if coords else [[] for _ in range(F.m)]


def coords_in_basis(F, vec: Sequence, basis: Sequence) -> List[List[int]]:
    """Coordinates of each entry of vec in the given F_q-basis of F_{q^m}."""
    if len(basis) != F.m:
        raise NotABasis("basis must have m elements")
    cols = [F.to_digits(b) for b in basis]
    mat = [[cols[j][i] for j in range(F.m)] for i in range(F.m)]
    inv = linalg.inverse(F.base, mat)
    out = []
    for v in vec:
        out.append(linalg.matvec(F.base, inv, F.to_digits(v)))
    return out


def _packed_rows(F, vec: Sequence) -> List[int]:
    if F.q == 2:
        return list(vec)
    raise ValueError("packed rows only exist for q = 2")


def rank_q(F, vec: Sequence) -> int:
    """F_q-rank of a vector over F_{q^m} (dimension of the span of entries)."""
    if F.q == 2:
        return linalg.gf2_rank(_packed_rows(F, vec), F.m)
    return linalg.rank(F.base, [F.to_digits(v) for v in vec])


def column_support(F, vec: Sequence) -> List:
    """Canonical (RREF) basis of the F_q-span of the entries, as elements."""
    if F.q == 2:
        rows, pivots = linalg.gf2_rref(_packed_rows(F, vec), F.m)
        return [r for r in rows[: len(pivots)]]
    rows, pivots = linalg.rref(F.base, [F.to_digits(v) for v in vec])
    return [F.from_digits(r) for r in rows[: len(pivots)]]


def row_support(F, vec: Sequence) -> List[List[int]]:
    """Canonical basis of the row space of the expansion matrix, digit rows."""
    n = len(vec)
    if F.q == 2:
        cols = linalg.gf2_transpose(_packed_rows(F, vec), F.m)
        rows, pivots = linalg.gf2_rref(cols, n)
        return [[(r >> j) & 1 for j in range(n)] for r in rows[: len(pivots)]]
    mat = expand(F, vec)
    rows, pivots = linalg.rref(F.base, mat)
    return [list(r) for r in rows[: len(pivots)]]


def rank_qm(top: TopField, vec: Sequence) -> int:
    """F_{q^m}-rank of a vector over the top field."""
    mat = [[v[i] for i in range(top.u)] for v in vec]
    return linalg.rank(top.mid, mat)


def rank_q_top(top: TopField, vec: Sequence) -> int:
    """F_q-rank of a vector over the top field."""
    mid = top.mid
    if top.q == 2:
        rows = [sum(v[i] << (i * mid.m) for i in range(top.u)) for v in vec]
        return linalg.gf2_rank(rows, mid.m * top.u)
    rows = []
    for v in vec:
        digits: List[int] = []
        for c in v:
            digits.extend(mid.to_digits(c))
        rows.append(digits)
    return linalg.rank(top.mid.base, rows)


# ---------------------------------------------------------------------------
# trace duality


def dual_basis(top: TopField, basis: Sequence) -> List:
    """Dual of a mid-basis of the top field w.r.t. (x, y) -> Tr(x*y)."""
    u = top.u
    if len(basis) != u:
        raise NotABasis("expected u elements")
    gram = [[top.trace_to_mid(top.mul(bi, bj)) for bj in basis] for bi in basis]
    try:
        gram_inv = linalg.inverse(top.mid, gram)
    except ValueError:
        raise NotABasis("family is not a basis (singular Gram matrix)")
    dual = []
    for j in range(u):
        acc = top.zero
        for i in range(u):
            c = gram_inv[i][j]
            if c != top.mid.zero:
                acc = top.add(acc, top.scalar_mul(c, basis[i]))
        dual.append(acc)
    return dual


# ---------------------------------------------------------------------------
# structured sampling


def sample_full_rank_vector(F, length: int, rng: random.Random) -> List:
    """Vector over F_{q^m} with F_q-rank equal to its length."""
    if length > F.m:
        raise BadParameters("cannot exceed rank m")
    while True:
        vec = [F.rand(rng) for _ in range(length)]
        if rank_q(F, vec) == length:
            return vec


def sample_rank_t_vector(F, n: int, t: int, rng: random.Random) -> List:
    """Vector of length n over F_{q^m} with F_q-rank exactly t."""
    if t > min(F.m, n):
        raise BadParameters("rank t exceeds min(m, n)")
    if t == 0:
        return [F.zero] * n
    support = sample_full_rank_vector(F, t, rng)
    while True:
        combo = _sample_base_matrix(F.q, t, n, rng)
        if _base_matrix_rank(F.q, combo, n) == t:
            break
    out = []
    for j in range(n):
        acc = F.zero
        for i in range(t):
            if _base_entry(F.q, combo, i, j):
                acc = F.add(acc, _base_scale(F, _base_entry(F.q, combo, i, j), support[i]))
        out.append(acc)
    return out


def _base_scale(F, digit: int, elem):
    if F.q == 2:
        return elem
    acc = F.zero
    for _ in range(digit):
        acc = F.add(acc, elem)
    return acc


def _sample_base_matrix(q: int, rows: int, cols: int, rng: random.Random):
    if q == 2:
        return [rng.getrandbits(cols) for _ in range(rows)]
    return [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)]


def _base_matrix_rank(q: int, rows, ncols: int) -> int:
    if q == 2:
        return linalg.gf2_rank(rows, ncols)
    return linalg.rank(PrimeField(q), rows)


def _base_entry(q: int, rows, i: int, j: int) -> int:
    if q == 2:
        return (rows[i] >> j) & 1
    return rows[i][j]


def sample_gln(q: int, n: int, rng: random.Random):
    """Uniform invertible n x n matrix over F_q, as packed (q=2) or digit rows."""
    while True:
        rows = _sample_base_matrix(q, n, n, rng)
        if _base_matrix_rank(q, rows, n) == n:
            return rows


def sample_qm_independent(top: TopField, count: int, rng: random.Random) -> List:
    """count elements of the top field, linearly independent over F_{q^m}."""
    if count > top.u:
        raise BadParameters("cannot exceed top-extension degree")
    while True:
        vec = [top.rand(rng) for _ in range(count)]
        if rank_qm(top, vec) == count:
            return vec


def sample_subspace_full_rank_basis(F, w: int, zeta: int, rng: random.Random) -> List[List]:
    """zeta independent vectors in F_{q^m}^w, each of full F_q-rank w."""
    if not (1 <= zeta and w <= F.m):
        raise BadParameters("need 1 <= zeta and w <= m")
    while True:
        cand = [sample_full_rank_vector(F, w, rng) for _ in range(zeta)]
        mat = [list(v) for v in cand]
        if linalg.rank(F, mat) == zeta:
            return cand


def vec_times_base_matrix(F, vec: Sequence, rows, n_out: int):
    """(vec * M) for M over F_q: out_j = sum_i M[i][j] * vec[i].

    Works for any field F containing F_q in which `vec` lives (mid or top):
    only F.add is used for q = 2; generic digit scaling otherwise.
    """
    out = [F.zero] * n_out
    q = rows and (2 if isinstance(rows[0], int) else None)
    if q == 2:
        for e, row in zip(vec, rows):
            if e == F.zero:
                continue
            while row:
                lsb = row & -row
                out[lsb.bit_length() - 1] = F.add(out[lsb.bit_length() - 1], e)
                row ^= lsb
        return out
    for e, row in zip(vec, rows):
        for j, d in enumerate(row):
            for _ in range(d):
                out[j] = F.add(out[j], e)
    return out
