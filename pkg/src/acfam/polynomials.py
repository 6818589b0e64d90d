"""Dense univariate polynomials over Q(i) and exact root finding inside Q(i).

Root finding never approximates: roots outside Q(i) are simply not reported.
The search clears denominators and tests Gaussian-integer divisor candidates
(rational root theorem over Z[i], a UFD), with shortcuts for linear/quadratic
factors and for polynomials in x^2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import ShapeError
from .scalars import GaussianRational, ScalarLike, gaussian_sqrt


class Polynomial:
    """Polynomial with GaussianRational coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple; otherwise the leading
    coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[GaussianRational, ...]

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [c if isinstance(c, GaussianRational) else GaussianRational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x_power(cls, e: int) -> "Polynomial":
        return cls((0,) * e + (1,))

    @classmethod
    def linear(cls, root: GaussianRational) -> "Polynomial":
        """The monic factor x - root."""
        return cls((-root, 1))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == GaussianRational(1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        out = [GaussianRational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    def scale(self, s: ScalarLike) -> "Polynomial":
        s = GaussianRational(s) if not isinstance(s, GaussianRational) else s
        return Polynomial(tuple(c * s for c in self.coeffs))

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(self.leading.inverse())

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Exact quotient and remainder (field coefficients, always defined)."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q_len = len(rem) - len(other.coeffs) + 1
        if q_len <= 0:
            return Polynomial.zero(), self
        quot = [GaussianRational(0)] * q_len
        inv_lead = other.leading.inverse()
        for k in range(q_len - 1, -1, -1):
            c = rem[k + other.degree] * inv_lead
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor via the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def evaluate(self, x: ScalarLike) -> GaussianRational:
        x = GaussianRational(x) if not isinstance(x, GaussianRational) else x
        acc = GaussianRational(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(c * k for k, c in enumerate(self.coeffs) if k >= 1))

    def is_even_poly(self) -> bool:
        """True iff only even-degree coefficients are nonzero."""
        return all(not c for k, c in enumerate(self.coeffs) if k % 2 == 1)

    def even_part(self) -> "Polynomial":
        """For p(x) = g(x^2), return g; requires is_even_poly()."""
        if not self.is_even_poly():
            raise ShapeError("polynomial is not a polynomial in x^2")
        return Polynomial(self.coeffs[::2])

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})*x^{k}" if k else f"({c})")
        return "Polynomial(" + " + ".join(terms) + ")"


# -- integer factorization (for Gaussian divisor enumeration) ----------------


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"failed to factor {n}")


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer."""
    if n < 1:
        raise ValueError("factorint expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def _int_divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def _two_square_reps(d: int) -> list[tuple[int, int]]:
    """All (x, y) with x^2 + y^2 = d and 0 <= x <= y."""
    reps = []
    x = 0
    while 2 * x * x <= d:
        y2 = d - x * x
        y = isqrt(y2)
        if y * y == y2:
            reps.append((x, y))
        x += 1
    return reps


def gaussian_integer_divisors(a: int, b: int) -> list[tuple[int, int]]:
    """All Gaussian integers (c, d) dividing a + bi, including unit multiples."""
    n = a * a + b * b
    if n == 0:
        raise ValueError("zero has no finite divisor list")
    found: set[tuple[int, int]] = set()
    for d in _int_divisors(n):
        for x, y in _two_square_reps(d):
            for c0, d0 in {(x, y), (y, x)}:
                if (a * c0 + b * d0) % d == 0 and (b * c0 - a * d0) % d == 0:
                    found.update({(c0, d0), (-c0, -d0), (-d0, c0), (d0, -c0)})
    return sorted(found)


# -- root finding inside Q(i) -------------------------------------------------


def _root_sort_key(z: GaussianRational):
    return (z.norm(), z.re, z.im)


def _extract_root(p: Polynomial, root: GaussianRational) -> tuple[Polynomial, int]:
    """Divide out (x - root) as often as possible, returning multiplicity."""
    mult = 0
    factor = Polynomial.linear(root)
    while not p.is_zero and p.degree >= 1 and not p.evaluate(root):
        p = p // factor
        mult += 1
    return p, mult


def _clear_denominators(p: Polynomial) -> list[tuple[int, int]]:
    """Integer (re, im) coefficients of p scaled by the common denominator."""
    den = 1
    for c in p.coeffs:
        den = den * c.re.denominator // gcd(den, c.re.denominator)
        den = den * c.im.denominator // gcd(den, c.im.denominator)
    return [(int(c.re * den), int(c.im * den)) for c in p.coeffs]


def _candidate_roots(p: Polynomial) -> list[GaussianRational]:
    ints = _clear_denominators(p)
    c0 = ints[0]
    clead = ints[-1]
    num_divs = gaussian_integer_divisors(*c0)
    den_divs = gaussian_integer_divisors(*clead)
    seen: set[tuple[Fraction, Fraction]] = set()
    out = []
    for na, nb in num_divs:
        for da, db in den_divs:
            dn = da * da + db * db
            z = GaussianRational(Fraction(na * da + nb * db, dn), Fraction(nb * da - na * db, dn))
            key = (z.re, z.im)
            if key not in seen:
                seen.add(key)
                out.append(z)
    out.sort(key=_root_sort_key)
    return out


def _nonzero_roots(p: Polynomial) -> list[tuple[GaussianRational, int]]:
    """Roots of p in Q(i) with multiplicity, assuming p(0) != 0, deg >= 1."""
    out: list[tuple[GaussianRational, int]] = []
    while not p.is_zero and p.degree >= 1:
        if p.degree == 1:
            out.append((-p.coeffs[0] / p.coeffs[1], 1))
            return out
        if p.degree == 2:
            a, b, c = p.coeffs[2], p.coeffs[1], p.coeffs[0]
            disc = b * b - a * c * 4
            s = gaussian_sqrt(disc)
            if s is None:
                return out
            inv2a = (a * 2).inverse()
            r1 = (-b + s) * inv2a
            if not disc:
                out.append((r1, 2))
            else:
                out.append((r1, 1))
                out.append(((-b - s) * inv2a, 1))
            return out
        if p.is_even_poly():
            for mu, mult in _nonzero_roots(p.even_part()):
                s = gaussian_sqrt(mu)
                if s is not None:
                    out.append((s, mult))
                    out.append((-s, mult))
            return out
        progressed = False
        for cand in _candidate_roots(p):
            if not p.evaluate(cand):
                p, mult = _extract_root(p, cand)
                out.append((cand, mult))
                progressed = True
                break
        if not progressed:
            return out
    return out


def rational_complex_roots(p: Polynomial) -> list[tuple[GaussianRational, int]]:
    """All roots of p lying in Q(i), with exact algebraic multiplicities.

    The result is sorted by (norm, re, im).  Roots outside Q(i) are omitted;
    callers compare the multiplicity sum against the degree to detect that.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has every root")
    roots: list[tuple[GaussianRational, int]] = []
    m0 = 0
    while m0 < len(p.coeffs) and not p.coeffs[m0]:
        m0 += 1
    if m0:
        roots.append((GaussianRational(0), m0))
        p = Polynomial(p.coeffs[m0:])
    if p.degree >= 1:
        roots.extend(_nonzero_roots(p))
    roots.sort(key=lambda pair: _root_sort_key(pair[0]))
    return roots
