"""Closed-form counts for the ten symmetry classes, and ratio identities.

The product formulas are stated with hyperfactorials H(n) = (n-1)!(n-2)!...0!,
staggered hyperfactorials H_k(n) = (n-k)!(n-2k)!... (factors while the
argument stays nonnegative), and staggered factorials F_k(n) = n(n-k)(n-2k)...
(factors while they stay positive).  Every quotient is checked to divide
exactly; a symmetry class returns 0 on boxes it does not fix and on boxes
where a parity obstruction rules out any invariant partition (odd volume for
complementation, odd height for transpose-complementation).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .symmetry import CLASSES

binomial = math.comb


@functools.lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    return math.factorial(n)


@functools.lru_cache(maxsize=None)
def staggered_hyperfactorial(k: int, n: int) -> int:
    """H_k(n) = product of (n - j*k)! over j >= 1 while n - j*k >= 0."""
    if k < 1:
        raise ValueError("step must be positive")
    if n < 0:
        return 1
    out = 1
    m = n - k
    while m >= 0:
        out *= _factorial(m)
        m -= k
    return out


def hyperfactorial(n: int) -> int:
    """H(n) = 0! 1! ... (n-1)!"""
    return staggered_hyperfactorial(1, n)


@functools.lru_cache(maxsize=None)
def staggered_factorial(k: int, n: int) -> int:
    """F_k(n) = n (n-k) (n-2k) ... over the factors that stay >= 1."""
    if k < 1:
        raise ValueError("step must be positive")
    out = 1
    m = n
    while m >= 1:
        out *= m
        m -= k
    return out


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("product formula did not divide exactly")
    return q


@dataclass(frozen=True)
class FormulaResult:
    class_id: int
    dims: Tuple[int, int, int]
    value: int


def _n1(a: int, b: int, c: int) -> int:
    H = hyperfactorial
    return _exact_div(H(a + b + c) * H(a) * H(b) * H(c), H(a + b) * H(a + c) * H(b + c))


def _n2(a: int, c: int) -> int:
    H, H2 = hyperfactorial, functools.partial(staggered_hyperfactorial, 2)
    return _exact_div(H2(2 * a + c + 1) * H(a) * H2(c), H2(2 * a + 1) * H(a + c))


def _n3(a: int) -> int:
    H = hyperfactorial
    H3 = functools.partial(staggered_hyperfactorial, 3)
    F3 = functools.partial(staggered_factorial, 3)
    return _exact_div(H3(3 * a + 2) * H(a), H(2 * a) * F3(3 * a - 2))


def _n4(a: int) -> int:
    H2 = functools.partial(staggered_hyperfactorial, 2)
    H6 = functools.partial(staggered_hyperfactorial, 6)
    F6 = functools.partial(staggered_factorial, 6)
    return _exact_div(H2(a) * H6(3 * a + 5), H2(2 * a + 1) * F6(3 * a - 2))


def _n6(a: int, b: int) -> int:
    # transpose-complement in an a x a x 2b box
    H = hyperfactorial
    H2 = functools.partial(staggered_hyperfactorial, 2)
    return _exact_div(
        H2(2 * b + 1) * H2(2 * b + 2 * a) * H(a), H(2 * b + a) * H2(2 * a)
    )


def _n8(a: int) -> int:
    H2 = functools.partial(staggered_hyperfactorial, 2)
    H4 = functools.partial(staggered_hyperfactorial, 4)
    H6 = functools.partial(staggered_hyperfactorial, 6)
    F3 = functools.partial(staggered_factorial, 3)
    return _exact_div(
        F3(3 * a - 2) * H6(6 * a) * H2(2 * a), H4(4 * a + 1) * H4(4 * a)
    )


def _n9(a: int) -> int:
    H = hyperfactorial
    H3 = functools.partial(staggered_hyperfactorial, 3)
    return _exact_div(H3(3 * a + 1) ** 2 * H(a) ** 2, H(2 * a) ** 2)


def _n10(a: int) -> int:
    H = hyperfactorial
    H3 = functools.partial(staggered_hyperfactorial, 3)
    return _exact_div(H3(3 * a + 1) * H(a), H(2 * a))


def n_class(class_id: int, dims: Tuple[int, int, int]) -> int:
    """Exact count of class-invariant plane partitions in the given box.

    Boxes not fixed by the class, and fixed boxes with no invariant
    partition (parity obstructions), give 0.
    """
    a, b, c = dims
    if a < 0 or b < 0 or c < 0:
        raise ValueError(f"negative box side in {dims}")
    if class_id not in CLASSES:
        raise ValueError(f"unknown symmetry class {class_id}")
    if not CLASSES[class_id].box_fixed(dims):
        return 0

    if class_id == 1:
        return _n1(a, b, c)
    if class_id == 2:
        return _n2(a, c)
    if class_id == 3:
        return _n3(a)
    if class_id == 4:
        return _n4(a)
    if class_id == 5:
        odd = sorted((a % 2, b % 2, c % 2))
        if sum(odd) == 0:
            return _n1(a // 2, b // 2, c // 2) ** 2
        if sum(odd) == 1:
            evens = sorted(d // 2 for d in dims if d % 2 == 0)
            k = next(d // 2 for d in dims if d % 2 == 1)
            e1, e2 = evens
            return _n1(e1, e2, k) * _n1(e1, e2, k + 1)
        if sum(odd) == 2:
            ev = next(d // 2 for d in dims if d % 2 == 0)
            o1, o2 = sorted(d // 2 for d in dims if d % 2 == 1)
            return _n1(o1 + 1, o2, ev) * _n1(o1, o2 + 1, ev)
        return 0  # odd volume cannot be self-complementary
    if class_id == 6:
        if a == 0:
            return 1  # empty height matrix, vacuously invariant
        if c % 2:
            return 0  # transpose-complement forces height c/2 on the diagonal
        return _n6(a, c // 2)
    if class_id == 7:
        if a == 0:
            return 1
        if c % 2:
            return 0
        if a % 2 == 0:
            return _n1(a // 2, a // 2, c // 2)
        return _n1(a // 2, a // 2 + 1, c // 2)
    if class_id == 8:
        return _n8(a // 2) if a % 2 == 0 else 0
    if class_id == 9:
        return _n9(a // 2) if a % 2 == 0 else 0
    if class_id == 10:
        return _n10(a // 2) if a % 2 == 0 else 0
    raise AssertionError


def n_class_result(class_id: int, dims) -> FormulaResult:
    return FormulaResult(class_id, tuple(dims), n_class(class_id, dims))


# ---------------------------------------------------------------------------
# ratio identities (the inductive steps behind classes 1, 3, 5, 9)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioCheck:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def _ratio1(a: int, b: int, c: int) -> Fraction:
    """N1(a+1,b+1,c-1) / N1(a,b,c) for c >= 1."""
    return Fraction(binomial(a + b + c, c - 1), binomial(a + b, a))


def _ratio3(a: int) -> Fraction:
    """N3(a+1,a+1,a+1) / N3(a,a,a) for a >= 1."""
    return Fraction((3 * a + 2) * binomial(3 * a, a - 1), a * binomial(2 * a, a))


def _ratio9(a: int) -> Fraction:
    """N9(2a+2,2a+2,2a+2) / N9(2a,2a,2a) for a >= 0."""
    return Fraction(binomial(3 * a + 1, a) ** 2, binomial(2 * a, a) ** 2)


def ratio_identities(a: int, b: int, c: int) -> List[RatioCheck]:
    """Evaluate the applicable ratio identities at the given parameters.

    Each check compares a ratio of closed-form counts against its binomial
    expression; the parameters (a, b, c) enter the identities directly, so
    for the cubic identities only a is used.
    """
    checks: List[RatioCheck] = []
    if c >= 1:
        checks.append(
            RatioCheck(
                "growth-step",
                Fraction(n_class(1, (a + 1, b + 1, c - 1)), n_class(1, (a, b, c))),
                _ratio1(a, b, c),
            )
        )
        checks.append(
            RatioCheck(
                "self-complementary-step",
                Fraction(
                    n_class(5, (2 * a + 2, 2 * b + 2, 2 * c - 2)),
                    n_class(5, (2 * a, 2 * b, 2 * c)),
                ),
                _ratio1(a, b, c) ** 2,
            )
        )
    if a >= 1 and a == b == c:
        checks.append(
            RatioCheck(
                "cyclic-step",
                Fraction(
                    n_class(3, (a + 1, a + 1, a + 1)), n_class(3, (a, a, a))
                ),
                _ratio3(a),
            )
        )
    if a == b == c:
        checks.append(
            RatioCheck(
                "cyclic-self-complementary-step",
                Fraction(
                    n_class(9, (2 * a + 2, 2 * a + 2, 2 * a + 2)),
                    n_class(9, (2 * a, 2 * a, 2 * a)),
                ),
                _ratio9(a),
            )
        )
    return checks


def n_class_via_ratios(class_id: int, dims: Tuple[int, int, int]) -> int:
    """Counts for classes 1, 3, 5, 9 by telescoping their ratio identities."""
    a, b, c = dims
    if class_id == 1:
        val = Fraction(1)
        while a > 0 and b > 0:
            a, b, c = a - 1, b - 1, c + 1
            val *= _ratio1(a, b, c)
        # base: an empty-width box holds exactly one (empty) partition
        if val.denominator != 1:
            raise ArithmeticError("telescoped ratio is not an integer")
        return int(val)
    if class_id == 3:
        if not (a == b == c):
            raise ValueError("cyclic class needs a cubic box")
        if a == 0:
            return 1
        val = Fraction(2)  # the two cyclic partitions of the unit cube
        for k in range(1, a):
            val *= _ratio3(k)
        if val.denominator != 1:
            raise ArithmeticError("telescoped ratio is not an integer")
        return int(val)
    if class_id == 5:
        if a % 2 or b % 2 or c % 2:
            raise ValueError("self-complementary telescoping needs even sides")
        ha, hb, hc = a // 2, b // 2, c // 2
        val = Fraction(1)
        while ha > 0 and hb > 0:
            ha, hb, hc = ha - 1, hb - 1, hc + 1
            val *= _ratio1(ha, hb, hc) ** 2
        if val.denominator != 1:
            raise ArithmeticError("telescoped ratio is not an integer")
        return int(val)
    if class_id == 9:
        if not (a == b == c) or a % 2:
            raise ValueError("cyclic self-complementary telescoping needs an even cube")
        val = Fraction(1)
        for k in range(a // 2):
            val *= _ratio9(k)
        if val.denominator != 1:
            raise ArithmeticError("telescoped ratio is not an integer")
        return int(val)
    raise ValueError(f"no ratio telescoping for class {class_id}")
