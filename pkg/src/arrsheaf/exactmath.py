"""Exact arithmetic: rationals, integer polynomials, cyclotomic fields and ranks.

Rationals are plain :class:`fractions.Fraction` values.  Cyclotomic elements
live in ``Q(zeta_m)`` and are stored in the power basis ``1, x, ..., x^(phi(m)-1)``
modulo the cyclotomic polynomial ``Phi_m``.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*")


class NotDivisibleError(ArithmeticError):
    """Raised by :func:`divide_exact` when the division leaves a remainder."""


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats and decimal strings are rejected on purpose: every quantity handled
    by this package is exact.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"not a rational: {value!r}")
    m = _RATIONAL_RE.fullmatch(value)
    if m is None:
        raise ValueError(f"malformed rational: {value!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {value!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def euler_phi(m: int) -> int:
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


# ---------------------------------------------------------------------------
# integer polynomials


class IntPolynomial:
    """Polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = []
        for x in coeffs:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer coefficient {x}")
                x = x.numerator
            c.append(int(x))
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPolynomial([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coef = str(c) if (k == 0 or abs(c) != 1) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mon}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _as_poly(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def poly_divmod(p: IntPolynomial, q: IntPolynomial) -> tuple[list[Fraction], list[Fraction]]:
    """Long division over Q; returns (quotient, remainder) coefficient lists."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = [Fraction(c) for c in p.coeffs]
    dq = q.degree
    lead = q.coeffs[-1]
    if len(rem) - 1 < dq:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k] / lead
        if c:
            quot[k - dq] = c
            for i, qc in enumerate(q.coeffs):
                rem[k - dq + i] -= c * qc
    rem = rem[:dq]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def divide_exact(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Return ``p / q``; raise NotDivisibleError unless q divides p over Z."""
    quot, rem = poly_divmod(p, q)
    if rem or any(c.denominator != 1 for c in quot):
        raise NotDivisibleError(f"{q} does not divide {p}")
    return IntPolynomial(quot)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> IntPolynomial:
    if m < 1:
        raise ValueError("conductor must be positive")
    p = IntPolynomial.monomial(m) - 1
    for d in range(1, m):
        if m % d == 0:
            p = divide_exact(p, cyclotomic_polynomial(d))
    return p


def root_multiplicity(p: IntPolynomial, order: int) -> int:
    """Multiplicity of a primitive ``order``-th root of unity as a root of p."""
    if p.is_zero():
        raise ValueError("the zero polynomial has roots of every multiplicity")
    phi = cyclotomic_polynomial(order)
    k = 0
    while True:
        try:
            p = divide_exact(p, phi)
        except NotDivisibleError:
            return k
        k += 1


# ---------------------------------------------------------------------------
# cyclotomic fields

def _reduce_mod_phi(coeffs: Sequence, m: int) -> list:
    phi = cyclotomic_polynomial(m).coeffs
    d = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, d - 1, -1):
        lead = c[k]
        if lead:
            off = k - d
            for i in range(d):
                if phi[i]:
                    c[off + i] -= lead * phi[i]
            c[k] = 0
    c = c[:d]
    if len(c) < d:
        c.extend([0] * (d - len(c)))
    return c


class CycloElement:
    """Element of the m-th cyclotomic field in the power basis mod Phi_m.

    Mixed arithmetic between conductors embeds both operands into the field
    of conductor ``lcm``.  Instances are immutable and deliberately unhashable:
    equal values may carry different conductors.
    """

    __slots__ = ("conductor", "coords")
    __hash__ = None

    def __init__(self, conductor: int, coords: Sequence):
        d = euler_phi(conductor)
        if len(coords) != d:
            raise ValueError(f"expected {d} coordinates for conductor {conductor}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("CycloElement is immutable")

    @classmethod
    def from_poly(cls, m: int, coeffs: Sequence) -> "CycloElement":
        return cls(m, _reduce_mod_phi([Fraction(c) for c in coeffs], m))

    @classmethod
    def scalar(cls, q, m: int = 1) -> "CycloElement":
        d = euler_phi(m)
        return cls(m, [Fraction(q)] + [0] * (d - 1))

    @classmethod
    def root_of_unity(cls, k: int, m: int) -> "CycloElement":
        """zeta_m ** k with zeta_m = exp(2 pi i / m)."""
        k %= m
        return cls.from_poly(m, [0] * k + [1])

    def lift(self, m: int) -> "CycloElement":
        if m == self.conductor:
            return self
        if m % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {m}")
        step = m // self.conductor
        poly = [Fraction(0)] * (step * (len(self.coords) - 1) + 1)
        for k, c in enumerate(self.coords):
            poly[k * step] = c
        return CycloElement.from_poly(m, poly)

    def _unify(self, other):
        if isinstance(other, (int, Fraction)):
            return self, CycloElement.scalar(other, self.conductor)
        if not isinstance(other, CycloElement):
            return None, None
        if other.conductor == self.conductor:
            return self, other
        m = math.lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return CycloElement(a.conductor, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.conductor, [-x for x in self.coords])

    def __sub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return CycloElement(a.conductor, [x - y for x, y in zip(a.coords, b.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        x, y = a.coords, b.coords
        out = [Fraction(0)] * (len(x) + len(y) - 1)
        for i, u in enumerate(x):
            if u:
                for j, v in enumerate(y):
                    if v:
                        out[i + j] += u * v
        return CycloElement.from_poly(a.conductor, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        m = self.conductor
        # extended Euclid in Q[x]: s * self + t * Phi = 1
        phi = [Fraction(c) for c in cyclotomic_polynomial(m).coeffs]
        r0, r1 = phi, _trim(list(self.coords))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_qsub(s0, _qmul(q, s1)))
        # r1 is now a non-zero constant
        c = r1[0]
        return CycloElement.from_poly(m, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycloElement(self.conductor, [x / other for x in self.coords])
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElement.scalar(1, self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and not any(self.coords[1:])

    def __eq__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return a.coords == b.coords

    def __repr__(self):
        return f"CycloElement({self.conductor}, [{', '.join(map(str, self.coords))}])"


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _qmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _qsub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _qdivmod(a, b):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] / b[-1]
        q[k - db] = c
        if c:
            for i, bc in enumerate(b):
                a[k - db + i] -= c * bc
    r = _trim(a[:db] if db > 0 else [Fraction(0)])
    return _trim(q), r


def cyclotomic_embed(a) -> CycloElement:
    """exp(2 pi i a) in the cyclotomic field whose conductor is the denominator of a."""
    a = Fraction(a)
    return CycloElement.root_of_unity(a.numerator, a.denominator)


# ---------------------------------------------------------------------------
# exact rank


def _common_conductor(rows) -> int:
    m = 1
    for row in rows:
        for x in row:
            if isinstance(x, CycloElement):
                m = math.lcm(m, x.conductor)
    return m


def _integral_rows(rows, m: int) -> list[list[tuple[int, ...]]]:
    """Coordinates in Q(zeta_m), each row scaled to have integer entries."""
    out = []
    for row in rows:
        coords = []
        for x in row:
            if isinstance(x, CycloElement):
                coords.append(x.lift(m).coords)
            else:
                coords.append(CycloElement.scalar(x, m).coords)
        den = reduce(math.lcm, (c.denominator for v in coords for c in v), 1)
        out.append([tuple(int(c * den) for c in v) for v in coords])
    return out


class _IntegerRing:
    """Z[zeta_m] with integer coordinate tuples; exact division via adjugates."""

    def __init__(self, m: int):
        self.m = m
        self.d = euler_phi(m)
        self.zero = (0,) * self.d

    def mul(self, a, b):
        if not any(a) or not any(b):
            return self.zero
        out = [0] * (2 * self.d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return tuple(_reduce_mod_phi(out, self.m))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def divider(self, b):
        """Return a function computing a / b for multiples a of b in the ring."""
        if self.d == 1:
            q = b[0]
            return lambda a: (_exact_int_div(a[0], q),)
        cols = []
        xk = (1,) + (0,) * (self.d - 1)
        for _ in range(self.d):
            cols.append(self.mul(b, xk))
            xk = tuple(_reduce_mod_phi([0] + list(xk), self.m))
        mat = [[Fraction(cols[j][i]) for j in range(self.d)] for i in range(self.d)]
        inv = _rational_inverse(mat)
        den = reduce(math.lcm, (x.denominator for row in inv for x in row), 1)
        num = [[int(x * den) for x in row] for row in inv]

        def divide(a):
            return tuple(
                _exact_int_div(sum(num[i][j] * a[j] for j in range(self.d)), den)
                for i in range(self.d)
            )

        return divide


def _exact_int_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division during fraction-free elimination")
    return q


def _rational_inverse(mat):
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def rank_exact(matrix) -> int:
    """Rank over Q(zeta_m) by fraction-free (Bareiss) elimination.

    Entries may be ints, Fractions or CycloElements; conductors are unified
    to their lcm first.  Each row is cleared of denominators, so elimination
    runs in the ring Z[zeta_m] where every Bareiss quotient is exact.
    """
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    m = _common_conductor(rows)
    ring = _IntegerRing(m)
    a = _integral_rows(rows, m)
    nrows, ncols = len(a), len(a[0])
    prev_div = None
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if any(a[i][c])), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        prow = a[rank]
        for i in range(rank + 1, nrows):
            row = a[i]
            f = row[c]
            f_nonzero = any(f)
            for j in range(c + 1, ncols):
                v = ring.mul(p, row[j])
                if f_nonzero and any(prow[j]):
                    v = ring.sub(v, ring.mul(f, prow[j]))
                row[j] = prev_div(v) if prev_div is not None and any(v) else v
            row[c] = ring.zero
        prev_div = ring.divider(p)
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# modular fallback (independent check for rank_exact)


def _is_prime(n: int) -> bool:
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


def split_prime(m: int, start: int = 2**31) -> int:
    """Smallest prime p >= start with p = 1 mod m (Phi_m splits mod p)."""
    p = start + (1 - start) % m
    while not _is_prime(p):
        p += m
    return p


def _primitive_root_of_unity(m: int, p: int) -> int:
    rng = random.Random(p * 1000003 + m)
    primes = [q for q in range(2, m + 1) if m % q == 0 and _is_prime(q)]
    while True:
        g = pow(rng.randrange(2, p - 1), (p - 1) // m, p)
        if all(pow(g, m // q, p) != 1 for q in primes):
            return g


def rank_modular(matrix, p: int | None = None) -> int:
    """Rank after reducing mod a prime p = 1 mod m; never exceeds rank_exact."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    m = _common_conductor(rows)
    if p is None:
        p = split_prime(m)
    g = _primitive_root_of_unity(m, p) if m > 1 else 1
    powers = [pow(g, k, p) for k in range(euler_phi(m))]

    def red(x):
        if isinstance(x, CycloElement):
            coords = x.lift(m).coords
        else:
            coords = (Fraction(x),)
        acc = 0
        for c, gk in zip(coords, powers):
            acc += c.numerator * pow(c.denominator, -1, p) * gk
        return acc % p

    a = [[red(x) for x in row] for row in rows]
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        for i in range(rank + 1, nrows):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# rational row reduction (plumbing for the lattice code)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        if pv != 1:
            a[r] = [x / pv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def reduce_against(vec: Sequence, basis: list[list[Fraction]], pivots: list[int]) -> list[Fraction]:
    v = [Fraction(x) for x in vec]
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            v = [x - f * y for x, y in zip(v, row)]
    return v


def rank_rational(rows) -> int:
    return len(rref(rows)[1])
