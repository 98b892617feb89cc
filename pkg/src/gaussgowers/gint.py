"""Exact arithmetic in Z[i]: primes, factorization, and the additive statistics omega_P, A_P.

Norms are the algebraic norm ``a^2 + b^2`` (``norm_sq``) throughout.  The
Euclidean length ``sqrt(a^2 + b^2)`` only shows up when reporting.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import sympy

RAMIFIED, SPLIT, INERT = "ramified", "split", "inert"


@dataclass(frozen=True, order=False)
class GaussianInt:
    re: int
    im: int = 0

    def __post_init__(self):
        object.__setattr__(self, "re", int(self.re))
        object.__setattr__(self, "im", int(self.im))

    @classmethod
    def of(cls, z) -> "GaussianInt":
        if isinstance(z, GaussianInt):
            return z
        if isinstance(z, complex):
            if z.real != int(z.real) or z.imag != int(z.imag):
                raise ValueError(f"{z!r} is not a Gaussian integer")
            return cls(int(z.real), int(z.imag))
        if isinstance(z, (tuple, list)):
            return cls(*z)
        if isinstance(z, str):
            return parse_gaussian(z)
        return cls(int(z), 0)

    @property
    def norm_sq(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def is_unit(self) -> bool:
        return self.norm_sq == 1

    def __add__(self, other):
        o = GaussianInt.of(other)
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianInt.of(other)
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianInt.of(other) - self

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianInt.of(other)
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not Gaussian integers")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re or self.im)

    def __complex__(self):
        return complex(self.re, self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"

    def divmod_round(self, other: "GaussianInt"):
        """Euclidean division with nearest-integer rounding (ties rounded up)."""
        o = GaussianInt.of(other)
        n = o.norm_sq
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[i]")
        num = self * o.conj()
        q = GaussianInt((2 * num.re + n) // (2 * n), (2 * num.im + n) // (2 * n))
        return q, self - q * o

    def exact_div(self, other: "GaussianInt") -> "GaussianInt | None":
        o = GaussianInt.of(other)
        n = o.norm_sq
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[i]")
        num = self * o.conj()
        if num.re % n or num.im % n:
            return None
        return GaussianInt(num.re // n, num.im // n)

    def divides(self, other: "GaussianInt") -> bool:
        """True if ``self | other``."""
        if not self:
            return not other
        return GaussianInt.of(other).exact_div(self) is not None

    def canonical(self) -> "GaussianInt":
        """The associate with re > 0 and im >= 0."""
        if not self:
            raise ValueError("zero has no canonical associate")
        z = self
        for _ in range(4):
            if z.re > 0 and z.im >= 0:
                return z
            z = z * I
        raise AssertionError("unreachable")

    def associate_unit(self) -> "GaussianInt":
        """The unit u with self == u * self.canonical()."""
        return self.exact_div(self.canonical())


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
UNITS = (ONE, I, -ONE, -I)


def parse_gaussian(text: str) -> GaussianInt:
    """Parse strings like ``"3"``, ``"-2i"``, ``"1+i"``, ``"2-3i"``."""
    s = text.replace(" ", "").replace("j", "i")
    if not s:
        raise ValueError("empty Gaussian integer")
    if "i" not in s:
        return GaussianInt(int(s), 0)
    if not s.endswith("i"):
        raise ValueError(f"cannot parse {text!r}")
    body = s[:-1]
    # split at the last sign that is not the leading one
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    if cut <= 0:
        re_part, im_part = "0", body
    else:
        re_part, im_part = body[:cut], body[cut:]
    if im_part in ("", "+"):
        im_val = 1
    elif im_part == "-":
        im_val = -1
    else:
        im_val = int(im_part)
    return GaussianInt(int(re_part), im_val)


def gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    a, b = GaussianInt.of(a), GaussianInt.of(b)
    while b:
        _, r = a.divmod_round(b)
        a, b = b, r
    return a.canonical() if a else a


@dataclass(frozen=True)
class CanonicalPrime:
    value: GaussianInt
    cls: str

    @property
    def norm_sq(self) -> int:
        return self.value.norm_sq

    def __str__(self):
        return str(self.value)


def _sort_key(p: CanonicalPrime):
    # within one norm the two split primes a+bi, b+ai are ordered by imaginary part
    return (p.norm_sq, p.value.im)


def two_squares(p0: int) -> tuple[int, int]:
    """Return (a, b), a > b > 0, with a^2 + b^2 = p0 for a prime p0 = 1 mod 4 (Cornacchia)."""
    if p0 % 4 != 1:
        raise ValueError(f"{p0} is not 1 mod 4")
    c = 2
    while pow(c, (p0 - 1) // 2, p0) != p0 - 1:
        c += 1
    t = pow(c, (p0 - 1) // 4, p0)
    a, b = p0, t
    while b * b > p0:
        a, b = b, a % b
    rest = p0 - b * b
    r = math.isqrt(rest)
    assert r * r == rest
    return (max(b, r), min(b, r))


def classify(alpha: GaussianInt) -> str | None:
    """Class of a Gaussian prime, or None if ``alpha`` is not prime."""
    n = alpha.norm_sq
    if n == 2:
        return RAMIFIED
    if sympy.isprime(n):
        return SPLIT if n % 4 == 1 else None
    if alpha.re == 0 or alpha.im == 0:
        p0 = abs(alpha.re or alpha.im)
        if p0 % 4 == 3 and sympy.isprime(p0):
            return INERT
    return None


def sieve_primes(bound_norm_sq: int) -> list[CanonicalPrime]:
    """All canonical Gaussian primes with norm_sq <= bound, sorted by (norm_sq, im)."""
    out: list[CanonicalPrime] = []
    if bound_norm_sq < 2:
        return out
    for p0 in sympy.primerange(2, bound_norm_sq + 1):
        if p0 == 2:
            out.append(CanonicalPrime(GaussianInt(1, 1), RAMIFIED))
        elif p0 % 4 == 1:
            a, b = two_squares(p0)
            out.append(CanonicalPrime(GaussianInt(a, b), SPLIT))
            out.append(CanonicalPrime(GaussianInt(b, a), SPLIT))
        elif p0 * p0 <= bound_norm_sq:
            out.append(CanonicalPrime(GaussianInt(p0, 0), INERT))
    out.sort(key=_sort_key)
    return out


def _prime_over(p0: int) -> list[GaussianInt]:
    if p0 == 2:
        return [GaussianInt(1, 1)]
    if p0 % 4 == 3:
        return [GaussianInt(p0, 0)]
    a, b = two_squares(p0)
    return [GaussianInt(a, b), GaussianInt(b, a)]


@dataclass(frozen=True)
class Factorization:
    unit: GaussianInt
    factors: tuple[tuple[CanonicalPrime, int], ...]

    def product(self) -> GaussianInt:
        out = self.unit
        for p, m in self.factors:
            out = out * p.value ** m
        return out

    def as_dict(self) -> dict[GaussianInt, int]:
        return {p.value: m for p, m in self.factors}


def factor(alpha) -> Factorization:
    """Unique factorization ``alpha = unit * prod p_i^{m_i}`` with canonical p_i."""
    alpha = GaussianInt.of(alpha)
    if not alpha:
        raise ValueError("zero has no factorization")
    rest = alpha
    factors = []
    for p0, e in sorted(sympy.factorint(alpha.norm_sq).items()):
        for pv in _prime_over(p0):
            cls = RAMIFIED if p0 == 2 else (INERT if p0 % 4 == 3 else SPLIT)
            k = 0
            while True:
                q = rest.exact_div(pv)
                if q is None:
                    break
                rest, k = q, k + 1
            if k:
                factors.append((CanonicalPrime(pv, cls), k))
    assert rest.is_unit(), f"factorization of {alpha} left {rest}"
    factors.sort(key=lambda t: _sort_key(t[0]))
    return Factorization(rest, tuple(factors))


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[CanonicalPrime, ...]
    a_p: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(self.primes))
        object.__setattr__(self, "a_p", math.fsum(1.0 / p.norm_sq for p in self.primes))

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    @classmethod
    def up_to(cls, bound_norm_sq: int) -> "PrimeSet":
        return cls(tuple(sieve_primes(bound_norm_sq)))


def omega(alpha, P: Iterable[CanonicalPrime]) -> int:
    """Number of distinct primes of P dividing alpha."""
    alpha = GaussianInt.of(alpha)
    if not alpha:
        raise ValueError("omega is undefined at zero")
    return sum(1 for p in P if p.value.divides(alpha))


def divisibility_mask(p: GaussianInt, re: np.ndarray, im: np.ndarray) -> np.ndarray:
    """Boolean array: does p divide re + i*im (elementwise)."""
    n = p.norm_sq
    # (re + i im) * conj(p) must be divisible by n in both coordinates
    a = re * p.re + im * p.im
    b = im * p.re - re * p.im
    return (a % n == 0) & (b % n == 0)


def tk_discrepancy(P: PrimeSet, x: int) -> tuple[float, float]:
    """Turan-Kubilius discrepancy over R_x.

    Returns ``lhs = x^-2 * sum_{alpha in R_x} |omega_P(alpha) - A_P|`` and
    ``rhs_unit = sqrt(A_P)``.  The universal constant is unknown, so no bound is asserted.
    """
    a, b = np.meshgrid(np.arange(1, x + 1, dtype=np.int64), np.arange(1, x + 1, dtype=np.int64), indexing="ij")
    w = np.zeros(a.shape, dtype=np.int64)
    for p in P:
        w += divisibility_mask(p.value, a, b)
    lhs = float(np.abs(w - P.a_p).sum()) / (x * x)
    return lhs, math.sqrt(P.a_p)


def norm_class_sizes(primes: Sequence[CanonicalPrime]) -> dict[int, int]:
    """Number of listed canonical primes sharing each norm."""
    out: dict[int, int] = {}
    for p in primes:
        out[p.norm_sq] = out.get(p.norm_sq, 0) + 1
    return out


def write_primes_csv(primes: Iterable[CanonicalPrime], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "normSq", "class"])
        for p in primes:
            w.writerow([p.value.re, p.value.im, p.norm_sq, p.cls])


def read_primes_csv(path) -> list[CanonicalPrime]:
    with open(path, newline="") as fh:
        return [
            CanonicalPrime(GaussianInt(int(r["re"]), int(r["im"])), r["class"])
            for r in csv.DictReader(fh)
        ]
