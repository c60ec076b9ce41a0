from fractions import Fraction

import pytest

from ppcount.formulas import (
    binomial,
    hyperfactorial,
    n_class,
    n_class_via_ratios,
    ratio_identities,
    staggered_factorial,
    staggered_hyperfactorial,
)
from ppcount.oracle import count_symmetric
from ppcount.symmetry import CLASSES


def test_hyperfactorial_values():
    assert hyperfactorial(0) == 1
    assert hyperfactorial(1) == 1
    assert hyperfactorial(3) == 2
    assert hyperfactorial(4) == 12


def test_staggered_hyperfactorial_values():
    assert staggered_hyperfactorial(2, 5) == 6  # 3! * 1!
    assert staggered_hyperfactorial(3, 8) == 240  # 5! * 2!
    assert staggered_hyperfactorial(6, 5) == 1  # empty product


def test_staggered_factorial_values():
    assert staggered_factorial(3, 7) == 28  # 7 * 4 * 1
    assert staggered_factorial(3, 4) == 4  # 4 * 1
    assert staggered_factorial(6, 1) == 1
    assert staggered_factorial(3, -2) == 1  # empty product


KNOWN_VALUES = [
    (1, (1, 1, 1), 2),
    (1, (2, 2, 2), 20),
    (1, (3, 3, 3), 980),
    (1, (2, 1, 1), 3),
    (2, (2, 2, 2), 10),
    (2, (2, 2, 1), 4),
    (3, (2, 2, 2), 5),
    (3, (3, 3, 3), 20),
    (3, (4, 4, 4), 132),
    (4, (2, 2, 2), 5),
    (4, (3, 3, 3), 16),
    (5, (2, 2, 2), 4),
    (6, (2, 2, 2), 2),
    (7, (2, 2, 2), 2),
    (8, (2, 2, 2), 1),
    (8, (4, 4, 4), 2),
    (9, (2, 2, 2), 1),
    (9, (4, 4, 4), 4),
    (10, (2, 2, 2), 1),
    (10, (4, 4, 4), 2),
]


@pytest.mark.parametrize("cid,dims,value", KNOWN_VALUES)
def test_known_counts(cid, dims, value):
    assert n_class(cid, dims) == value


def test_unit_cube_has_two_partitions_in_every_class():
    # the unit cube is fixed by every transpose/rotation class; empty and
    # full are each invariant, while complementation swaps them
    for cid in (1, 2, 3, 4):
        assert n_class(cid, (1, 1, 1)) == 2
    for cid in (5, 9, 10):
        assert n_class(cid, (1, 1, 1)) == 0


def test_unfixed_boxes_count_zero():
    assert n_class(2, (2, 1, 1)) == 0
    assert n_class(3, (2, 2, 1)) == 0
    assert n_class(9, (2, 2, 4)) == 0


def test_parity_obstructions():
    assert n_class(5, (1, 1, 1)) == 0  # odd volume
    assert n_class(6, (2, 2, 1)) == 0  # odd height over the diagonal
    assert n_class(7, (3, 3, 1)) == 0
    assert n_class(9, (3, 3, 3)) == 0
    assert n_class(10, (3, 3, 3)) == 0


def test_degenerate_boxes():
    for cid in CLASSES:
        assert n_class(cid, (0, 0, 0)) == 1
    assert n_class(1, (0, 3, 5)) == 1
    assert n_class(6, (0, 0, 3)) == 1  # empty height matrix, vacuously fixed
    assert n_class(5, (0, 2, 4)) == 1


def test_negative_dims_rejected():
    with pytest.raises(ValueError):
        n_class(1, (1, -1, 1))


def test_class5_factored_forms():
    for a in range(5):
        for b in range(5):
            for c in range(5):
                assert n_class(5, (2 * a, 2 * b, 2 * c)) == n_class(1, (a, b, c)) ** 2
                assert n_class(5, (2 * a, 2 * b, 2 * c + 1)) == n_class(
                    1, (a, b, c)
                ) * n_class(1, (a, b, c + 1))
                assert n_class(5, (2 * a + 1, 2 * b + 1, 2 * c)) == n_class(
                    1, (a + 1, b, c)
                ) * n_class(1, (a, b + 1, c))


def test_class7_factored_forms():
    for a in range(1, 5):
        for b in range(5):
            assert n_class(7, (2 * a, 2 * a, 2 * b)) == n_class(1, (a, a, b))
            assert n_class(7, (2 * a + 1, 2 * a + 1, 2 * b)) == n_class(1, (a, a + 1, b))


def test_products_divide_exactly_up_to_ten():
    for cid in CLASSES:
        for a in range(11):
            for b in range(11):
                for c in range(11):
                    if CLASSES[cid].box_fixed((a, b, c)):
                        assert n_class(cid, (a, b, c)) >= 0


def test_formula_matches_oracle_small():
    for cid in CLASSES:
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    if CLASSES[cid].box_fixed((a, b, c)):
                        assert n_class(cid, (a, b, c)) == count_symmetric(cid, a, b, c)


def test_ratio_identities_examples():
    checks = {c.name: c for c in ratio_identities(1, 1, 1)}
    growth = checks["growth-step"]
    assert growth.lhs == growth.rhs == Fraction(1, 2)
    assert growth.rhs == Fraction(binomial(3, 0), binomial(2, 1))
    cyc9 = checks["cyclic-self-complementary-step"]
    assert cyc9.lhs == cyc9.rhs == 4


def test_ratio_identities_hold_widely():
    for a in range(7):
        for b in range(7):
            for c in range(1, 7):
                for chk in ratio_identities(a, b, c):
                    assert chk.ok, (a, b, c, chk.name)


def test_via_ratios_matches_closed_forms():
    for a in range(9):
        for b in range(9):
            for c in range(9):
                assert n_class_via_ratios(1, (a, b, c)) == n_class(1, (a, b, c))
    for a in range(9):
        assert n_class_via_ratios(3, (a, a, a)) == n_class(3, (a, a, a))
        if a % 2 == 0:
            assert n_class_via_ratios(9, (a, a, a)) == n_class(9, (a, a, a))
    for a in range(0, 9, 2):
        for b in range(0, 9, 2):
            for c in range(0, 9, 2):
                assert n_class_via_ratios(5, (a, b, c)) == n_class(5, (a, b, c))


def test_via_ratios_rejects_unsupported():
    with pytest.raises(ValueError):
        n_class_via_ratios(2, (2, 2, 2))
    with pytest.raises(ValueError):
        n_class_via_ratios(5, (1, 2, 2))
