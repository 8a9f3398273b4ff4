"""Exact arithmetic in cyclotomic fields Q(zeta_m) and exact linear algebra.

A value is represented by its coordinates in the power basis
1, zeta, ..., zeta^(phi(m)-1) of Q(zeta_m), reduced modulo the m-th
cyclotomic polynomial.  Coordinates are stored as a tuple of integers
over a single positive denominator, normalized so that the gcd of all
numerators and the denominator is 1.  Values are immutable; mixed
conductors are lifted lazily to the lcm.

Matrices hold a rectangular grid of values over a common conductor.
Kernels, determinants and inverses use fraction-free (Bareiss-style)
elimination, with the one exact field division per pivot that Bareiss
requires.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache

from .errors import ConductorCapExceeded, DimensionMismatch, SingularMatrix

DEFAULT_CONDUCTOR_CAP = 10080

_conductor_cap = int(os.environ.get("PROJPAIR_CONDUCTOR_CAP", DEFAULT_CONDUCTOR_CAP))


def conductor_cap() -> int:
    return _conductor_cap


def set_conductor_cap(cap: int) -> None:
    """Set the largest conductor the library will compute in."""
    global _conductor_cap
    if cap < 1:
        raise ValueError("conductor cap must be positive")
    _conductor_cap = cap


def _check_conductor(m: int) -> None:
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    if m > _conductor_cap:
        raise ConductorCapExceeded(
            f"conductor {m} exceeds cap {_conductor_cap} "
            "(raise via set_conductor_cap or PROJPAIR_CONDUCTOR_CAP)"
        )


def euler_phi(m: int) -> int:
    phi = 1
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            phi *= p - 1
            while n % p == 0:
                n //= p
                phi *= p
        p += 1
    if n > 1:
        phi *= n - 1
    return phi


def prime_factors(n: int) -> list[int]:
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


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials, used to build cyclotomics."""
    num = list(num)
    deg_n, deg_d = len(num) - 1, len(den) - 1
    lead = den[-1]
    quot = [0] * (deg_n - deg_d + 1)
    for k in range(deg_n - deg_d, -1, -1):
        c = num[k + deg_d]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        q = c // lead
        quot[k] = q
        if q:
            for i, d in enumerate(den):
                num[k + i] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low to high, monic) of the m-th cyclotomic polynomial."""
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the coordinates of x^(phi(m)+j) mod Phi_m, up to degree m-1
    (enough for products of reduced values and for raw powers below m)."""
    phi = euler_phi(m)
    top = max(2 * phi - 2, m - 1)
    poly = cyclotomic_polynomial(m)
    base = tuple(-c for c in poly[:phi])  # x^phi = base
    rows = [base]
    for _ in range(phi, top):
        prev = rows[-1]
        shifted = [0] + list(prev[: phi - 1])
        carry = prev[phi - 1]
        if carry:
            shifted = [s + carry * b for s, b in zip(shifted, base)]
        rows.append(tuple(shifted))
    return tuple(rows)


def _reduce_int_poly(coeffs: list[int], m: int) -> list[int]:
    """Reduce integer coordinates of degree < max(2*phi-1, m) mod Phi_m."""
    phi = euler_phi(m)
    if len(coeffs) <= phi:
        return coeffs + [0] * (phi - len(coeffs))
    rows = _reduction_rows(m)
    out = list(coeffs[:phi])
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            row = rows[k - phi]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _normalize(m: int, num: list[int], den: int):
    if den < 0:
        den = -den
        num = [-v for v in num]
    g = den
    for v in num:
        if v:
            g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        num = [v // g for v in num]
        den //= g
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if all(v == 0 for v in num):
        den = 1
    return tuple(num), den


@lru_cache(maxsize=None)
def _lift_rows(m: int, target: int) -> tuple[tuple[int, ...], ...]:
    """Row i holds the coordinates of zeta_m^i inside Q(zeta_target)."""
    step = target // m
    phi_m = euler_phi(m)
    rows = []
    for i in range(phi_m):
        k = i * step
        poly = [0] * k + [1]
        rows.append(tuple(_reduce_int_poly(poly, target)))
    return tuple(rows)


class CycNum:
    """An element of Q(zeta_m), immutable and in reduced power-basis form."""

    __slots__ = ("m", "num", "den")

    def __init__(self, m: int, num, den: int = 1):
        _check_conductor(m)
        phi = euler_phi(m)
        num = list(num)
        if len(num) != phi:
            raise ValueError(f"need {phi} coordinates for conductor {m}, got {len(num)}")
        self.m = m
        self.num, self.den = _normalize(m, num, den)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> "CycNum":
        return CycNum(1, [0])

    @staticmethod
    def one() -> "CycNum":
        return CycNum(1, [1])

    @staticmethod
    def from_rational(q) -> "CycNum":
        q = Fraction(q)
        return CycNum(1, [q.numerator], q.denominator)

    @staticmethod
    def root_of_unity(m: int, k: int = 1) -> "CycNum":
        """zeta_m^k, built in the smallest conductor containing it."""
        if m < 1:
            raise ValueError("order must be positive")
        k %= m
        g = math.gcd(k, m)
        m2, k2 = m // g, k // g
        if m2 == 1:
            return CycNum.one()
        _check_conductor(m2)
        poly = [0] * k2 + [1]
        return CycNum(m2, _reduce_int_poly(poly, m2))

    # -- views ----------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self.m

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and all(v == 0 for v in self.num[1:])

    def is_rational(self) -> bool:
        return all(v == 0 for v in self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(v, self.den) for v in self.num]

    def lift(self, target: int) -> "CycNum":
        """Rewrite in the field Q(zeta_target); target must be a multiple of m."""
        if target == self.m:
            return self
        if target % self.m:
            raise ValueError(f"cannot lift conductor {self.m} into {target}")
        _check_conductor(target)
        rows = _lift_rows(self.m, target)
        phi = euler_phi(target)
        out = [0] * phi
        for i, c in enumerate(self.num):
            if c:
                row = rows[i]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycNum(target, out, self.den)

    # -- arithmetic -----------------------------------------------------

    def _pair(self, other: "CycNum"):
        if self.m == other.m:
            return self, other
        m = self.m * other.m // math.gcd(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = as_cyc(other)
        a, b = self._pair(other)
        da, db = a.den, b.den
        num = [va * db + vb * da for va, vb in zip(a.num, b.num)]
        return CycNum(a.m, num, da * db)

    __radd__ = __add__

    def __neg__(self):
        out = CycNum.__new__(CycNum)
        out.m, out.num, out.den = self.m, tuple(-v for v in self.num), self.den
        return out

    def __sub__(self, other):
        return self + (-as_cyc(other))

    def __rsub__(self, other):
        return as_cyc(other) - self

    def __mul__(self, other):
        other = as_cyc(other)
        a, b = self._pair(other)
        if a.is_rational():
            q = a.num[0]
            return CycNum(b.m, [q * v for v in b.num], a.den * b.den)
        if b.is_rational():
            q = b.num[0]
            return CycNum(a.m, [q * v for v in a.num], a.den * b.den)
        phi = len(a.num)
        prod = [0] * (2 * phi - 1)
        for i, va in enumerate(a.num):
            if va:
                for j, vb in enumerate(b.num):
                    if vb:
                        prod[i + j] += va * vb
        return CycNum(a.m, _reduce_int_poly(prod, a.m), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNum(1, [self.den], self.num[0])
        k = self._as_unit_power()
        if k is not None:
            return CycNum.root_of_unity(self.m, -k)
        # extended Euclid for gcd(value, Phi_m) = 1 in Q[x]
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        a = [Fraction(v, self.den) for v in self.num]
        inv = _poly_modular_inverse(a, phi_poly)
        den = 1
        for c in inv:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) for c in inv]
        return CycNum(self.m, num, den)

    def _as_unit_power(self):
        """If the value is exactly zeta_m^k for some k, return k, else None."""
        if self.den != 1:
            return None
        nz = [i for i, v in enumerate(self.num) if v]
        if len(nz) == 1 and self.num[nz[0]] == 1:
            return nz[0]
        return None

    def __truediv__(self, other):
        other = as_cyc(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_cyc(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        other = as_cyc(other)
        if self.m == other.m:
            return self.num == other.num and self.den == other.den
        a, b = self._pair(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.m, self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        terms = []
        for i, v in enumerate(self.num):
            if v:
                coeff = str(Fraction(v, self.den))
                terms.append(coeff if i == 0 else f"{coeff}*z{self.m}^{i}")
        return " + ".join(terms)

    # -- roots of unity ---------------------------------------------------

    def as_root_of_unity(self):
        """Return (order, exponent) with value == zeta_order^exponent, or None."""
        if self.den != 1:
            return None
        k = self._as_unit_power()
        if k is not None:
            g = math.gcd(k, self.m) if k else self.m
            return (self.m // g, (k // g) % (self.m // g)) if k else (1, 0)
        cap = self.m if self.m % 2 == 0 else 2 * self.m
        if self ** cap != ONE:
            return None
        order = cap
        for p in prime_factors(cap):
            while order % p == 0 and self ** (order // p) == ONE:
                order //= p
        for j in range(order):
            if math.gcd(j, order) == 1 or order == 1:
                if self == CycNum.root_of_unity(order, j):
                    return (order, j)
        return None

    def multiplicative_order(self):
        r = self.as_root_of_unity()
        return None if r is None else r[0]


def _poly_modular_inverse(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo an irreducible rational polynomial."""

    def deg(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i]:
                return i
        return -1

    def trim(p):
        d = deg(p)
        return p[: d + 1] if d >= 0 else []

    def divmod_poly(p, q):
        p = list(p)
        dq = deg(q)
        lead = q[dq]
        quot = [Fraction(0)] * max(deg(p) - dq + 1, 0)
        while deg(p) >= dq:
            dp = deg(p)
            c = p[dp] / lead
            quot[dp - dq] = c
            for i in range(dq + 1):
                p[dp - dq + i] -= c * q[i]
        return quot, trim(p)

    r0, r1 = list(modulus), trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while deg(r1) > 0:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        new_s = list(s0)
        prod_len = len(q) + len(s1) - 1 if q and s1 else 0
        prod = [Fraction(0)] * max(prod_len, len(new_s))
        for i, qc in enumerate(q):
            if qc:
                for j, sc in enumerate(s1):
                    prod[i + j] += qc * sc
        new_s += [Fraction(0)] * (len(prod) - len(new_s))
        s0, s1 = s1, trim([u - v for u, v in zip(new_s, prod)] + new_s[len(prod):])
    if deg(r1) != 0:
        raise ZeroDivisionError("value shares a factor with the modulus")
    c = r1[0]
    inv = [v / c for v in s1]
    _, rem = divmod_poly(inv, modulus)
    rem += [Fraction(0)] * (len(modulus) - 1 - len(rem))
    return rem[: len(modulus) - 1]


ZERO = CycNum.zero()
ONE = CycNum.one()
MINUS_ONE = CycNum.from_rational(-1)


def as_cyc(x) -> CycNum:
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")


class CycMatrix:
    """A rectangular matrix over Q(zeta_m), all entries on one conductor."""

    __slots__ = ("rows", "cols", "m", "data")

    def __init__(self, data):
        data = [[as_cyc(v) for v in row] for row in data]
        if not data or not data[0]:
            raise ValueError("matrix needs at least one row and column")
        cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        m = 1
        for row in data:
            for v in row:
                m = m * v.m // math.gcd(m, v.m)
        _check_conductor(m)
        self.rows, self.cols, self.m = len(data), cols, m
        self.data = tuple(tuple(v.lift(m) for v in row) for row in data)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def identity(n: int) -> "CycMatrix":
        return CycMatrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "CycMatrix":
        return CycMatrix([[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def diagonal(values) -> "CycMatrix":
        values = [as_cyc(v) for v in values]
        n = len(values)
        return CycMatrix(
            [[values[i] if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_entries(rows: int, cols: int, entries: dict) -> "CycMatrix":
        grid = [[ZERO] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            grid[i][j] = as_cyc(v)
        return CycMatrix(grid)

    # -- views -----------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> CycNum:
        return self.data[i][j]

    def row_list(self):
        return [list(row) for row in self.data]

    def flatten(self) -> list[CycNum]:
        return [v for row in self.data for v in row]

    def transpose(self) -> "CycMatrix":
        return CycMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_identity(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.data[i][j] == (ONE if i == j else ZERO)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.data for v in row)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return CycMatrix(
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return CycMatrix(
            [
                [self.data[i][j] - other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def scale(self, c) -> "CycMatrix":
        c = as_cyc(c)
        return CycMatrix([[c * v for v in row] for row in self.data])

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        bt = other.transpose().data
        out = []
        for row in self.data:
            out_row = []
            for col in bt:
                acc = ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return CycMatrix(out)

    __mul__ = __matmul__

    def __pow__(self, e: int) -> "CycMatrix":
        if not self.is_square():
            raise DimensionMismatch("powers need a square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = CycMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(
            self.data[i][j] == other.data[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    __hash__ = None

    def __repr__(self):
        body = "\n ".join("[" + ", ".join(map(repr, row)) + "]" for row in self.data)
        return f"CycMatrix({self.rows}x{self.cols}, m={self.m})\n [{body}]"

    def kron(self, other: "CycMatrix") -> "CycMatrix":
        """Kronecker product, row-major blocks: this matrix's indices vary slowest."""
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                row = []
                for j in range(self.cols):
                    a = self.data[i][j]
                    if a.is_zero():
                        row.extend([ZERO] * other.cols)
                    else:
                        row.extend(a * b for b in other.data[k])
                out.append(row)
        return CycMatrix(out)

    # -- elimination-based operations ---------------------------------------

    def _bareiss(self):
        """Fraction-free forward elimination.

        Returns (echelon rows, pivot column list, determinant-of-leading-minors
        sign-tracked last pivot, row swap parity).  Works on denominator-cleared
        integral rows; every division is exact by the Bareiss identity.
        """
        rows = []
        scales = []
        for row in self.data:
            den = 1
            for v in row:
                den = den * v.den // math.gcd(den, v.den)
            rows.append([v * den for v in row])
            scales.append(den)
        ncols = self.cols
        pivots = []
        prev = ONE
        parity = 1
        r = 0
        for c in range(ncols):
            pr = None
            for i in range(r, len(rows)):
                if not rows[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                continue
            if pr != r:
                rows[r], rows[pr] = rows[pr], rows[r]
                parity = -parity
            piv = rows[r][c]
            prev_is_one = prev.is_one()
            prev_inv = None if prev_is_one else prev.inverse()
            for i in range(r + 1, len(rows)):
                head = rows[i][c]
                row_i = rows[i]
                if head.is_zero():
                    for j in range(c + 1, ncols):
                        v = row_i[j]
                        if not v.is_zero():
                            t = piv * v
                            row_i[j] = t if prev_is_one else t * prev_inv
                    continue
                row_r = rows[r]
                for j in range(c + 1, ncols):
                    num = piv * row_i[j] - head * row_r[j]
                    if not (prev_is_one or num.is_zero()):
                        num = num * prev_inv
                    row_i[j] = num
                row_i[c] = ZERO
            pivots.append(c)
            prev = piv
            r += 1
            if r == len(rows):
                break
        return rows[:r], pivots, prev, parity, scales

    def rank(self) -> int:
        _, pivots, _, _, _ = self._bareiss()
        return len(pivots)

    def det(self) -> CycNum:
        if not self.is_square():
            raise DimensionMismatch("determinant needs a square matrix")
        echelon, pivots, last, parity, scales = self._bareiss()
        if len(pivots) < self.rows:
            return ZERO
        # Bareiss: the final pivot is det of the cleared matrix
        d = last if parity > 0 else -last
        scale = 1
        for s in scales:
            scale *= s
        return d / CycNum.from_rational(scale)

    def inverse(self) -> "CycMatrix":
        if not self.is_square():
            raise DimensionMismatch("inverse needs a square matrix")
        n = self.rows
        work = [list(row) + [ONE if i == j else ZERO for j in range(n)]
                for i, row in enumerate(self.data)]
        for c in range(n):
            pr = None
            for i in range(c, n):
                if not work[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                raise SingularMatrix("matrix is singular")
            work[c], work[pr] = work[pr], work[c]
            inv = work[c][c].inverse()
            work[c] = [v * inv for v in work[c]]
            for i in range(n):
                if i != c and not work[i][c].is_zero():
                    f = work[i][c]
                    work[i] = [a - f * b for a, b in zip(work[i], work[c])]
        return CycMatrix([row[n:] for row in work])

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def trace(self) -> CycNum:
        if not self.is_square():
            raise DimensionMismatch("trace needs a square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self.data[i][i]
        return acc

    def kernel(self) -> list["CycMatrix"]:
        """Exact basis of the right null space, as n x 1 column matrices.

        Each basis vector is normalized so its first nonzero coordinate is 1;
        the basis is ordered by free column.
        """
        echelon, pivots, _, _, _ = self._bareiss()
        ncols = self.cols
        pivot_set = set(pivots)
        free = [c for c in range(ncols) if c not in pivot_set]
        basis = []
        for fc in free:
            vec = [ZERO] * ncols
            vec[fc] = ONE
            # back-substitute pivot coordinates, bottom row first
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                acc = ZERO
                row = echelon[r]
                for j in range(pc + 1, ncols):
                    if not row[j].is_zero() and not vec[j].is_zero():
                        acc = acc + row[j] * vec[j]
                if not acc.is_zero():
                    vec[pc] = -acc / row[pc]
            for v in vec:
                if not v.is_zero():
                    lead_inv = v.inverse()
                    vec = [lead_inv * u for u in vec]
                    break
            basis.append(CycMatrix([[v] for v in vec]))
        return basis


class VectorSpan:
    """A linear subspace of C^N over Q(zeta), kept in reduced echelon form.

    Supports exact membership, incremental growth, and span equality;
    used for matrix-algebra spans via flattening.
    """

    def __init__(self, length: int):
        self.length = length
        self.rows: list[list[CycNum]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: list[CycNum]) -> list[CycNum]:
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = vec[p]
            if not c.is_zero():
                for j in range(self.length):
                    if not row[j].is_zero():
                        vec[j] = vec[j] - c * row[j]
        return vec

    def add(self, vec) -> bool:
        """Insert a vector; returns True when the dimension grew."""
        vec = self._reduce([as_cyc(v) for v in vec])
        pivot = None
        for j in range(self.length):
            if not vec[j].is_zero():
                pivot = j
                break
        if pivot is None:
            return False
        inv = vec[pivot].inverse()
        vec = [inv * v for v in vec]
        for row in self.rows:
            c = row[pivot]
            if not c.is_zero():
                for j in range(self.length):
                    if not vec[j].is_zero():
                        row[j] = row[j] - c * vec[j]
        self.rows.append(vec)
        self.pivots.append(pivot)
        order = sorted(range(len(self.pivots)), key=lambda k: self.pivots[k])
        self.rows = [self.rows[k] for k in order]
        self.pivots = [self.pivots[k] for k in order]
        return True

    def contains(self, vec) -> bool:
        vec = self._reduce([as_cyc(v) for v in vec])
        return all(v.is_zero() for v in vec)

    def contains_span(self, other: "VectorSpan") -> bool:
        return all(self.contains(row) for row in other.rows)

    def equals(self, other: "VectorSpan") -> bool:
        return self.dim == other.dim and self.contains_span(other)


def span_of_matrices(mats) -> VectorSpan:
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].rows * mats[0].cols
    span = VectorSpan(n)
    for m in mats:
        span.add(m.flatten())
    return span
