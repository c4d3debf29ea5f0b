"""Exact arithmetic tower: rationals, univariate polynomials over Q,
rational functions Q(t), prime fields Z/p, and dense matrices over any
of these fields.

Every value is immutable after construction; operations return fresh
objects, so values are safe to share and memoize. No floating point is
used anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import SingularMatrixError

# Arbitrary-precision rationals. Fraction already maintains the invariants
# we rely on: coprime numerator/denominator and denominator >= 1.
Rat = Fraction


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an integer or Fraction coefficient, got {type(c).__name__}")


class Poly:
    """Univariate polynomial over Q, coefficients stored lowest degree first.

    The zero polynomial is the empty coefficient tuple; otherwise the
    leading coefficient is nonzero, so degree == len(coeffs) - 1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((_as_fraction(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        """Leading coefficient; 0 for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = _as_fraction(other)
            if not s:
                return Poly()
            return Poly(tuple(c * s for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly((Fraction(1),))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lc = other.coeffs[-1]
        q = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                f = c / lc
                q[i - dd] = f
                for j, oc in enumerate(other.coeffs):
                    rem[i - dd + j] -= f * oc
        return Poly(q), Poly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def eval(self, s) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        s = _as_fraction(s)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("the zero polynomial has no monic form")
        lc = self.coeffs[-1]
        return self if lc == 1 else self * (1 / lc)

    def primitive(self) -> "Poly":
        """Primitive integer-coefficient associate with positive leading coefficient."""
        if self.is_zero:
            raise ValueError("the zero polynomial has no primitive part")
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        content = math.gcd(*ints)
        if ints[-1] < 0:
            content = -content
        return Poly(tuple(Fraction(v // content) for v in ints))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}t" if i == 1 else f"{mag}t^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


#: The indeterminate, for building polynomials in tests and fixtures.
T = Poly((0, 1))


def _pseudo_rem(a: Poly, b: Poly) -> Poly:
    # Remainder of lc(b)^(deg a - deg b + 1) * a by b; keeps the Euclidean
    # remainder sequence integral so primitive() can tame coefficient growth.
    n = a.degree - b.degree + 1
    return (a * b.lc**n) % b


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the primitive-part Euclidean scheme.

    Raises ValueError when both inputs are zero.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = _pseudo_rem(a, b)
        a, b = b, (r if r.is_zero else r.primitive())
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    """Monic lcm; both inputs must be nonzero."""
    if a.is_zero or b.is_zero:
        raise ValueError("lcm with a zero polynomial is undefined")
    return ((a * b) // poly_gcd(a, b)).monic()


def poly_eval(p: Poly, s) -> Fraction:
    return p.eval(s)


class RatFunc:
    """Rational function over Q, normalized to coprime numerator / monic denominator.

    Equality is structural, which the normalization makes sound.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = num if isinstance(num, Poly) else Poly.constant(num)
        den = den if isinstance(den, Poly) else Poly.constant(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num = Poly()
            self.den = Poly.constant(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        g = poly_gcd(self.den, other.den)
        if g.degree > 0:
            dr = other.den // g
            num = self.num * dr + other.num * (self.den // g)
            return RatFunc(num, self.den * dr)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        out = object.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RatFunc()
        # cross-cancel before multiplying to keep degrees down
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g = poly_gcd(n1, d2)
        if g.degree > 0:
            n1, d2 = n1 // g, d2 // g
        g = poly_gcd(n2, d1)
        if g.degree > 0:
            n2, d1 = n2 // g, d1 // g
        return RatFunc(n1 * n2, d1 * d2)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        inv = object.__new__(RatFunc)
        inv.num, inv.den = other.den, other.num
        out = self * inv
        # renormalize in case the swap left a non-monic denominator
        return RatFunc(out.num, out.den)

    def eval(self, s) -> Fraction:
        """Evaluate at t = s; raises ZeroDivisionError on a denominator zero."""
        d = self.den.eval(s)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at t = {s}")
        return self.num.eval(s) / d

    def __repr__(self):
        if self.den == Poly.constant(1):
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"


# -- prime fields ------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24, far beyond our use)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
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


class FpElem:
    """An element of Z/p; operations require matching moduli."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _check(self, other):
        if not isinstance(other, FpElem):
            raise TypeError(f"cannot combine FpElem with {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if not isinstance(other, FpElem):
            return NotImplemented
        return self.p == other.p and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __add__(self, other):
        self._check(other)
        return FpElem(self.value + other.value, self.p)

    def __sub__(self, other):
        self._check(other)
        return FpElem(self.value - other.value, self.p)

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def __mul__(self, other):
        self._check(other)
        return FpElem(self.value * other.value, self.p)

    def __truediv__(self, other):
        self._check(other)
        if other.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElem(self.value * pow(other.value, -1, self.p), self.p)

    def __pow__(self, k: int):
        return FpElem(pow(self.value, k, self.p), self.p)

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class PrimeField:
    """Arithmetic context for Z/p; primality is checked at construction."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def zero(self) -> FpElem:
        return FpElem(0, self.p)

    @property
    def one(self) -> FpElem:
        return FpElem(1, self.p)

    def element(self, v: int) -> FpElem:
        return FpElem(v, self.p)

    def __eq__(self, other):
        if not isinstance(other, PrimeField):
            return NotImplemented
        return self.p == other.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


_FIELD_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    field = _FIELD_CACHE.get(p)
    if field is None:
        field = _FIELD_CACHE[p] = PrimeField(p)
    return field


def rat_to_fp(x: Fraction, field: PrimeField) -> FpElem:
    """Reduce a rational mod p; requires p not dividing the denominator."""
    p = field.p
    if x.denominator % p == 0:
        raise ValueError(f"denominator of {x} is divisible by {p}")
    return FpElem(x.numerator * pow(x.denominator, -1, p), p)


# -- field contexts for generic matrices -------------------------------------


class RationalField:
    """Field context for Q; entries are fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "Q"


class FunctionField:
    """Field context for Q(t); entries are RatFunc."""

    def __repr__(self):
        return "Q(t)"


QQ = RationalField()
QT = FunctionField()
FunctionField.zero = RatFunc()
FunctionField.one = RatFunc(1)


class Matrix:
    """Immutable dense matrix over a field context (QQ, QT, or GF(p)).

    Entries are stored row-major. Operations require conformable shapes
    and matching field contexts.
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows: int, cols: int, entries):
        entries = tuple(entries)
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, field, rows) -> "Matrix":
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), width, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        zero, one = field.zero, field.one
        return cls(field, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def _compat(self, other):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._compat(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return Matrix(
            self.field, self.rows, self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self):
        return Matrix(self.field, self.rows, self.cols, tuple(-a for a in self.entries))

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._compat(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix subtraction")
        return Matrix(
            self.field, self.rows, self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._compat(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, m, k = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            for j in range(k):
                acc = arow[0] * b[j]
                for l in range(1, m):
                    acc = acc + arow[l] * b[l * k + j]
                out.append(acc)
        return Matrix(self.field, n, k, tuple(out))

    def __pow__(self, k: int):
        if self.rows != self.cols:
            raise ValueError("matrix power requires a square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field, self.cols, self.rows,
            tuple(self.entries[j * self.cols + i] for i in range(self.cols) for j in range(self.rows)),
        )

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        zero, one = self.field.zero, self.field.one
        n = self.cols
        return all(
            e == (one if i == j else zero)
            for i in range(n)
            for j, e in enumerate(self.row(i))
        )

    def map_entries(self, fn, field=None) -> "Matrix":
        """Apply fn to every entry, optionally moving to a new field context."""
        return Matrix(
            field if field is not None else self.field,
            self.rows, self.cols, tuple(fn(e) for e in self.entries),
        )

    def det(self):
        """Exact determinant by fraction-based Gaussian elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant requires a square matrix")
        n = self.rows
        rows = self.to_rows()
        det = self.field.one
        sign_flip = False
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if rows[r][col]), None)
            if pivot_row is None:
                return self.field.zero
            if pivot_row != col:
                rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
                sign_flip = not sign_flip
            pivot = rows[col][col]
            det = det * pivot
            for r in range(col + 1, n):
                factor = rows[r][col] / pivot
                if factor:
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
        return -det if sign_flip else det

    def inverse(self, role: str = "matrix") -> "Matrix":
        """Gauss-Jordan inverse; raises SingularMatrixError naming `role`."""
        if self.rows != self.cols:
            raise ValueError("inverse requires a square matrix")
        n = self.rows
        zero, one = self.field.zero, self.field.one
        aug = [list(self.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot_row is None:
                raise SingularMatrixError(f"{role} not invertible")
            if pivot_row != col:
                aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
            pivot = aug[col][col]
            if pivot != one:
                aug[col] = [a / pivot for a in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return Matrix(self.field, n, n, tuple(e for row in aug for e in row[n:]))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"
