"""Exact arithmetic kernels: big-integer and q-polynomial matrices.

Determinants use fraction-free (Bareiss) elimination, so every intermediate
value stays inside Z or Z[q] and the result is exact.  Pfaffians are
recovered as exact square roots of the determinant (Pf^2 = Det holds for
every antisymmetric matrix), permanents use Ryser inclusion-exclusion, and
Hafnians a direct recursion over the first unmatched index.

Rows and columns carry unordered label sets, so only the absolute
determinant / absolute Pfaffian is well defined; all public entry points
return nonnegative integers or sign-normalized polynomials (lowest-degree
coefficient positive).

Everything here is pure and immutable; safe to call from multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

Scalar = Union[int, "QPoly"]


class QPoly:
    """Univariate polynomial in q with arbitrary-precision int coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(n: int) -> "QPoly":
        return QPoly((n,))

    @staticmethod
    def q_power(k: int, coeff: int = 1) -> "QPoly":
        return QPoly((0,) * k + (coeff,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def low_degree(self) -> int:
        """Degree of the lowest nonzero term (-1 for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == (QPoly.const(other)).coeffs
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return QPoly(-c for c in self.coeffs)

    def __add__(self, other):
        o = _as_poly(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return QPoly(
            (self.coefficient(i) + o.coefficient(i)) for i in range(n)
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        o = _as_poly(other)
        if self.is_zero() or o.is_zero():
            return QPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def div_exact(self, other) -> "QPoly":
        """Exact polynomial division; raises if the division leaves a remainder."""
        d = _as_poly(other)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return QPoly()
        rem = list(self.coeffs)
        dd = d.degree()
        lead = d.coeffs[-1]
        qd = len(rem) - 1 - dd
        if qd < 0:
            raise ArithmeticError("inexact polynomial division")
        quot = [0] * (qd + 1)
        for k in range(qd, -1, -1):
            top = rem[k + dd]
            if top == 0:
                continue
            c, r = divmod(top, lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
            quot[k] = c
            for j, b in enumerate(d.coeffs):
                rem[k + j] -= c * b
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return QPoly(quot)

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k (k may be negative if divisible)."""
        if self.is_zero():
            return QPoly()
        if k >= 0:
            return QPoly((0,) * k + self.coeffs)
        if self.low_degree() + k < 0:
            raise ArithmeticError("negative shift below q^0")
        return QPoly(self.coeffs[-k:])

    def subs(self, x: int) -> int:
        """Evaluate at an integer point."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_normalized(self) -> "QPoly":
        """Flip the global sign so the lowest-degree coefficient is positive."""
        ld = self.low_degree()
        if ld >= 0 and self.coeffs[ld] < 0:
            return -self
        return self

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "q" if mag == 1 else f"{mag}*q"
            else:
                body = f"q^{k}" if mag == 1 else f"{mag}*q^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"QPoly({self})"


def _as_poly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, int):
        return QPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QPoly")


def _is_zero(x: Scalar) -> bool:
    return (not x) if isinstance(x, QPoly) else x == 0


def _div_exact(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, QPoly) or isinstance(b, QPoly):
        return _as_poly(a).div_exact(b)
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"inexact integer division {a} / {b}")
    return q


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix over Z or Z[q] with unordered row/column labels."""

    entries: tuple
    row_labels: tuple
    col_labels: tuple

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar]], row_labels=None, col_labels=None):
        rows = [tuple(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        if any(isinstance(x, QPoly) for r in rows for x in r):
            rows = [tuple(_as_poly(x) for x in r) for r in rows]
        if row_labels is None:
            row_labels = tuple(range(nr))
        if col_labels is None:
            col_labels = tuple(range(nc))
        if len(row_labels) != nr or len(col_labels) != nc:
            raise ValueError("label count mismatch")
        return ExactMatrix(tuple(rows), tuple(row_labels), tuple(col_labels))

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else 0

    def is_square(self):
        return self.nrows == self.ncols

    def is_poly(self):
        return any(isinstance(x, QPoly) for r in self.entries for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_jsonable(self):
        def enc(x):
            return str(x) if isinstance(x, QPoly) else x

        return {
            "rows": [str(l) for l in self.row_labels],
            "cols": [str(l) for l in self.col_labels],
            "entries": [[enc(x) for x in r] for r in self.entries],
        }


def integer_sqrt(n: int) -> int:
    """Exact integer square root; raises on non-squares."""
    if n < 0:
        raise ValueError("square root of a negative integer")
    r = math.isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r


def poly_sqrt(p: QPoly) -> QPoly:
    """Exact square root in Z[q]; raises if p is not a perfect square."""
    if p.is_zero():
        return QPoly()
    low, deg = p.low_degree(), p.degree()
    if low % 2 or deg % 2:
        raise ValueError("polynomial is not a perfect square")
    m, half = low // 2, deg // 2
    r = [0] * (half + 1)
    r[m] = integer_sqrt(p.coefficient(low))
    lead2 = 2 * r[m]
    for k in range(1, half - m + 1):
        s = sum(r[m + i] * r[m + k - i] for i in range(1, k))
        num = p.coefficient(low + k) - s
        c, rem = divmod(num, lead2)
        if rem:
            raise ValueError("polynomial is not a perfect square")
        r[m + k] = c
    root = QPoly(r)
    if root * root != p:
        raise ValueError("polynomial is not a perfect square")
    return root


def det(m: ExactMatrix) -> Scalar:
    """Absolute determinant (sign-normalized for polynomial matrices).

    Fraction-free elimination: the division at every step is exact over the
    coefficient ring, so there is no intermediate fraction or rounding.
    """
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    poly_mode = m.is_poly()
    if n == 0:
        return QPoly.const(1) if poly_mode else 1
    a = [[(_as_poly(x) if poly_mode else x) for x in row] for row in m.entries]
    zero: Scalar = QPoly() if poly_mode else 0
    prev: Scalar = QPoly.const(1) if poly_mode else 1
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            piv = next((r for r in range(k + 1, n) if not _is_zero(a[r][k])), None)
            if piv is None:
                return zero
            a[k], a[piv] = a[piv], a[k]
        for i in range(k + 1, n):
            aik = a[i][k]
            akk = a[k][k]
            for j in range(k + 1, n):
                a[i][j] = _div_exact(a[i][j] * akk - aik * a[k][j], prev)
            a[i][k] = zero
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d.sign_normalized() if poly_mode else abs(d)


def permanent(m: ExactMatrix) -> Scalar:
    """Exact permanent by Ryser inclusion-exclusion; oracle use, n <= 20."""
    if not m.is_square():
        raise ValueError("permanent of a non-square matrix")
    n = m.nrows
    if n > 20:
        raise ValueError(f"permanent limited to 20x20, got {n}")
    if n == 0:
        return 1
    rows = m.entries
    rs = [0 * rows[i][0] for i in range(n)]  # ring-generic zeros
    total = 0 * rows[0][0]
    pc = 0
    for k in range(1, 1 << n):
        diff = k & -k
        j = diff.bit_length() - 1
        gray = k ^ (k >> 1)
        if gray & diff:
            for i in range(n):
                rs[i] = rs[i] + rows[i][j]
            pc += 1
        else:
            for i in range(n):
                rs[i] = rs[i] - rows[i][j]
            pc -= 1
        prod = rs[0]
        for i in range(1, n):
            prod = prod * rs[i]
        if (n - pc) % 2 == 0:
            total = total + prod
        else:
            total = total - prod
    return total


def hafnian(m: ExactMatrix) -> Scalar:
    """Exact Hafnian: sum over unordered perfect matchings of the index set."""
    if not m.is_square():
        raise ValueError("hafnian of a non-square matrix")
    n = m.nrows
    if n > 16:
        raise ValueError(f"hafnian limited to 16x16, got {n}")
    for i in range(n):
        for j in range(n):
            if m.entries[i][j] != m.entries[j][i]:
                raise ValueError("hafnian of a non-symmetric matrix")
    if n % 2:
        return 0
    if n == 0:
        return 1
    ent = m.entries

    def rec(idx):
        if not idx:
            return 1
        i0 = idx[0]
        tot = 0
        for t in range(1, len(idx)):
            a = ent[i0][idx[t]]
            if not _is_zero(a):
                tot = tot + a * rec(idx[1:t] + idx[t + 1:])
        return tot

    return rec(tuple(range(n)))


def _check_skew(m: ExactMatrix):
    if not m.is_square():
        raise ValueError("Pfaffian of a non-square matrix")
    n = m.nrows
    for i in range(n):
        if not _is_zero(m.entries[i][i]):
            raise ValueError("nonzero diagonal in a skew matrix")
        for j in range(i + 1, n):
            if m.entries[i][j] != -1 * m.entries[j][i]:
                raise ValueError("matrix is not skew-symmetric")


def pfaffian_abs(m: ExactMatrix) -> Scalar:
    """Absolute Pfaffian of a skew-symmetric matrix.

    Computed as the exact square root of the determinant, which is a perfect
    square for every skew matrix; odd dimension gives 0 (no perfect matching).
    """
    _check_skew(m)
    if m.nrows % 2:
        return QPoly() if m.is_poly() else 0
    d = det(m)
    if isinstance(d, QPoly):
        return poly_sqrt(d).sign_normalized()
    return integer_sqrt(d)
