"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored in the power basis 1, z, ..., z^(phi(N)-1) where z is a
fixed primitive N-th root of unity, after reduction modulo the N-th cyclotomic
polynomial.  Coefficients are rationals kept as an integer vector over a common
positive denominator with the content reduced, so two equal field elements with
the same conductor always have identical coefficient data.  That canonical form
is what makes CycloNum values hashable and lets matrices and group elements be
deduplicated by plain equality.

Everything here is pure and exact; floating point appears only in
``to_complex``, which is diagnostic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import UsageError


def euler_phi(n: int) -> int:
    """Euler totient of n >= 1."""
    if n < 1:
        raise UsageError(f"totient undefined for {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (ascending coefficients),
    # remainder must vanish.  den is monic up to the leading +-1.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    if any(num):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the n-th cyclotomic polynomial.

    Computed by dividing X^n - 1 by the cyclotomic polynomials of the proper
    divisors of n.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(5)
    (1, 1, 1, 1, 1)
    """
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _monomial_rows(n: int) -> tuple[tuple[int, ...], ...]:
    # rows[e] = integer coefficients of X^e reduced modulo Phi_n, for
    # e up to max(2*phi(n)-2, n-1); enough for products of reduced elements,
    # Galois twisting, and conductor promotion into n.
    deg = euler_phi(n)
    phi = cyclotomic_polynomial(n)
    top = [-c for c in phi[:deg]]  # X^deg == top, since Phi_n is monic
    limit = max(2 * deg - 2, n - 1, deg)
    rows: list[list[int]] = [[0] * deg for _ in range(limit + 1)]
    for e in range(deg):
        rows[e][e] = 1
    for e in range(deg, limit + 1):
        prev = rows[e - 1]
        shifted = [0] + prev[: deg - 1]
        lead = prev[deg - 1]
        if lead:
            for i in range(deg):
                shifted[i] += lead * top[i]
        rows[e] = shifted
    return tuple(tuple(r) for r in rows)


def _normalized(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        den = -den
        nums = [-c for c in nums]
    g = den
    for c in nums:
        if c:
            g = math.gcd(g, c)
        if g == 1:
            break
    if g > 1:
        den //= g
        nums = [c // g for c in nums]
    return tuple(nums), den


Rational = Union[int, Fraction]


class CycloNum:
    """A number in Q(zeta_N), canonical in the reduced power basis."""

    __slots__ = ("conductor", "nums", "den", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable[Rational]):
        if conductor < 1:
            raise UsageError(f"conductor must be positive, got {conductor}")
        deg = euler_phi(conductor)
        fracs = [Fraction(c) for c in coeffs]
        if len(fracs) > deg:
            raise UsageError(
                f"expected at most {deg} coefficients for conductor {conductor}"
            )
        fracs += [Fraction(0)] * (deg - len(fracs))
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        nums = [int(f * den) for f in fracs]
        self._init(conductor, *_normalized(nums, den))

    def _init(self, conductor: int, nums: tuple[int, ...], den: int) -> None:
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", hash((conductor, nums, den)))

    @classmethod
    def _raw(cls, conductor: int, nums: tuple[int, ...], den: int) -> "CycloNum":
        # internal: nums/den already canonical
        self = object.__new__(cls)
        self._init(conductor, nums, den)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, value: Rational, conductor: int = 1) -> "CycloNum":
        f = Fraction(value)
        deg = euler_phi(conductor)
        nums = (f.numerator,) + (0,) * (deg - 1)
        return cls._raw(conductor, *_normalized(list(nums), f.denominator))

    @classmethod
    def zero(cls, conductor: int = 1) -> "CycloNum":
        return _zero(conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "CycloNum":
        return _one(conductor)

    # -- basic protocol ------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients in the power basis, as reduced Fractions."""
        return tuple(Fraction(c, self.den) for c in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_one(self) -> bool:
        return self.den == 1 and self.nums[0] == 1 and not any(self.nums[1:])

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise UsageError("not a rational number")
        return Fraction(self.nums[0], self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloNum):
            return NotImplemented
        return (
            self.conductor == other.conductor
            and self.den == other.den
            and self.nums == other.nums
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"CycloNum({self.conductor}, {list(self.coeffs)!r})"

    def __str__(self) -> str:
        return self.to_text()

    # -- arithmetic ----------------------------------------------------

    def _check_same_field(self, other: "CycloNum") -> None:
        if self.conductor != other.conductor:
            raise UsageError(
                f"conductor mismatch: {self.conductor} vs {other.conductor}"
                " (promote first)"
            )

    def __add__(self, other: "CycloNum") -> "CycloNum":
        if not isinstance(other, CycloNum):
            return NotImplemented
        self._check_same_field(other)
        da, db = self.den, other.den
        if da == db:
            nums = [a + b for a, b in zip(self.nums, other.nums)]
            den = da
        else:
            den = math.lcm(da, db)
            ma, mb = den // da, den // db
            nums = [a * ma + b * mb for a, b in zip(self.nums, other.nums)]
        return CycloNum._raw(self.conductor, *_normalized(nums, den))

    def __sub__(self, other: "CycloNum") -> "CycloNum":
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.__add__(-other)

    def __neg__(self) -> "CycloNum":
        return CycloNum._raw(
            self.conductor, tuple(-c for c in self.nums), self.den
        )

    def __mul__(self, other: "CycloNum") -> "CycloNum":
        if not isinstance(other, CycloNum):
            return NotImplemented
        self._check_same_field(other)
        a, b = self.nums, other.nums
        deg = len(a)
        conv = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        if deg > 1:
            rows = _monomial_rows(self.conductor)
            nums = conv[:deg]
            for e in range(deg, 2 * deg - 1):
                ce = conv[e]
                if ce:
                    row = rows[e]
                    for i in range(deg):
                        if row[i]:
                            nums[i] += ce * row[i]
        else:
            nums = conv[:deg]
        return CycloNum._raw(
            self.conductor, *_normalized(nums, self.den * other.den)
        )

    def __pow__(self, k: int) -> "CycloNum":
        if k < 0:
            return self.invert() ** (-k)
        result = _one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def invert(self) -> "CycloNum":
        """Multiplicative inverse, by the extended Euclidean algorithm of the
        representing polynomial with the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloNum.rational(1 / self.as_rational(), self.conductor)
        return _invert_cached(self)

    def __truediv__(self, other: "CycloNum") -> "CycloNum":
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self * other.invert()

    # -- field automorphisms and embeddings ------------------------------

    def galois(self, k: int) -> "CycloNum":
        """Apply the automorphism zeta -> zeta^k; k must be coprime to the
        conductor.  Fixes rationals, and is a ring homomorphism."""
        n = self.conductor
        k %= n
        if math.gcd(k, n) != 1:
            raise UsageError(f"zeta -> zeta^{k} is not an automorphism mod {n}")
        if n == 1 or k == 1:
            return self
        rows = _monomial_rows(n)
        deg = len(self.nums)
        nums = [0] * deg
        for j, c in enumerate(self.nums):
            if c:
                row = rows[(j * k) % n]
                for i in range(deg):
                    if row[i]:
                        nums[i] += c * row[i]
        return CycloNum._raw(n, *_normalized(nums, self.den))

    def conjugate(self) -> "CycloNum":
        """Complex conjugation (the automorphism zeta -> zeta^(-1))."""
        return self.galois(self.conductor - 1) if self.conductor > 1 else self

    def promote(self, m: int) -> "CycloNum":
        """The same field element expressed with conductor m (n must divide m)."""
        n = self.conductor
        if m == n:
            return self
        if m < 1 or m % n != 0:
            raise UsageError(f"cannot promote conductor {n} into {m}")
        step = m // n
        rows = _monomial_rows(m)
        deg = euler_phi(m)
        nums = [0] * deg
        for j, c in enumerate(self.nums):
            if c:
                row = rows[j * step]
                for i in range(deg):
                    if row[i]:
                        nums[i] += c * row[i]
        return CycloNum._raw(m, *_normalized(nums, self.den))

    # -- root-of-unity structure -----------------------------------------

    def root_of_unity_order(self) -> Optional[int]:
        """Multiplicative order if this is a root of unity, else None.

        The roots of unity inside Q(zeta_N) form the cyclic group of order
        N (N even) or 2N (N odd), so it is enough to test x^m = 1 for
        divisors m of that bound.
        """
        if self.is_zero():
            return None
        bound = self.conductor if self.conductor % 2 == 0 else 2 * self.conductor
        if not (self ** bound).is_one():
            return None
        order = bound
        for p in _prime_factors(bound):
            while order % p == 0 and (self ** (order // p)).is_one():
                order //= p
        return order

    # -- numeric evaluation ------------------------------------------------

    def to_complex(self) -> complex:
        """Floating evaluation at zeta = exp(2*pi*i/N).  Diagnostics only."""
        n = self.conductor
        z = complex(math.cos(2 * math.pi / n), math.sin(2 * math.pi / n))
        total = 0j
        power = 1 + 0j
        for c in self.nums:
            total += c * power
            power *= z
        return total / self.den

    # -- textual serialization ----------------------------------------------

    def to_text(self) -> str:
        """Serialize as ``Q(zeta_N): a/b*z^k + ...`` (exact round-trip)."""
        terms = [
            f"{Fraction(c, self.den)}*z^{k}" for k, c in enumerate(self.nums) if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"Q(zeta_{self.conductor}): {body}"

    @classmethod
    def from_text(cls, text: str) -> "CycloNum":
        head, _, body = text.partition(":")
        head = head.strip()
        if not head.startswith("Q(zeta_") or not head.endswith(")"):
            raise UsageError(f"malformed cyclotomic literal: {text!r}")
        conductor = int(head[len("Q(zeta_"):-1])
        deg = euler_phi(conductor)
        coeffs = [Fraction(0)] * deg
        body = body.strip()
        if body != "0":
            for term in body.split("+"):
                coeff_text, _, power_text = term.strip().partition("*z^")
                k = int(power_text)
                if not 0 <= k < deg:
                    raise UsageError(f"exponent {k} out of basis range in {text!r}")
                coeffs[k] = Fraction(coeff_text)
        return cls(conductor, coeffs)


@lru_cache(maxsize=None)
def _zero(conductor: int) -> CycloNum:
    return CycloNum._raw(conductor, (0,) * euler_phi(conductor), 1)


@lru_cache(maxsize=None)
def _one(conductor: int) -> CycloNum:
    deg = euler_phi(conductor)
    return CycloNum._raw(conductor, (1,) + (0,) * (deg - 1), 1)


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


def root_of_unity(n: int, k: int = 1) -> CycloNum:
    """zeta_n^k in canonical form with conductor n.

    >>> root_of_unity(4, 1).coeffs
    (Fraction(0, 1), Fraction(1, 1))
    >>> root_of_unity(1, 0).is_one()
    True
    """
    if n < 1:
        raise UsageError(f"order must be positive, got {n}")
    k %= n
    deg = euler_phi(n)
    if k < deg:
        nums = [0] * deg
        nums[k] = 1
        return CycloNum._raw(n, tuple(nums), 1)
    return CycloNum._raw(n, _monomial_rows(n)[k], 1)


def arith(op: str, x: CycloNum, y: Optional[CycloNum] = None) -> CycloNum:
    """Dispatch {add, sub, mul, neg} (neg ignores y).  Exact, canonical."""
    if op == "neg":
        return -x
    if y is None:
        raise UsageError(f"binary operation {op!r} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise UsageError(f"unknown operation {op!r}")


def galois_apply(k: int, x: CycloNum) -> CycloNum:
    """Module-level form of :meth:`CycloNum.galois`."""
    return x.galois(k)


def promote(x: CycloNum, m: int) -> CycloNum:
    """Module-level form of :meth:`CycloNum.promote`."""
    return x.promote(m)


def common_conductor(*values: CycloNum) -> int:
    return math.lcm(*(v.conductor for v in values)) if values else 1


def _frac_poly_divmod(
    num: list[Fraction], den: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    while num and not num[-1]:
        num.pop()
    return q, num


@lru_cache(maxsize=8192)
def _invert_cached(x: CycloNum) -> CycloNum:
    n = x.conductor
    phi = [Fraction(c) for c in cyclotomic_polynomial(n)]
    poly = [Fraction(c, x.den) for c in x.nums]
    while poly and not poly[-1]:
        poly.pop()
    # extended Euclid: u*poly + v*phi = gcd (a nonzero constant)
    r0, r1 = phi, poly
    u0, u1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _frac_poly_divmod(r0, r1)
        # u_next = u0 - q*u1
        prod = [Fraction(0)] * (len(q) + len(u1) - 1)
        for i, qi in enumerate(q):
            if qi:
                for j, uj in enumerate(u1):
                    prod[i + j] += qi * uj
        nxt = [Fraction(0)] * max(len(u0), len(prod))
        for i, c in enumerate(u0):
            nxt[i] += c
        for i, c in enumerate(prod):
            nxt[i] -= c
        while len(nxt) > 1 and not nxt[-1]:
            nxt.pop()
        r0, r1 = r1, (r if r else [Fraction(0)])
        u0, u1 = u1, nxt
    if not r1 or not r1[0]:
        raise ZeroDivisionError("element is a zero divisor (not a field element?)")
    g = r1[0]
    deg = euler_phi(n)
    inv_coeffs = [c / g for c in u1] + [Fraction(0)] * deg
    return CycloNum(n, inv_coeffs[:deg])
