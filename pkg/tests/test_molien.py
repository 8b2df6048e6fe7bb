import math
from fractions import Fraction

import pytest

from torsion_fano.baskets import Basket
from torsion_fano.groups import FiniteAbelianGroup
from torsion_fano.molien import (
    CoverModel,
    DiagonalAction,
    EmptyLinearSystemError,
    MolienError,
    invariant_equation_space,
    molien_series,
    monomial_text,
)

TRIVIAL = FiniteAbelianGroup(())


def y222():
    return CoverModel("Y222", (1,) * 7, (2, 2, 2), Fraction(8), Basket(TRIVIAL, ()))


def y44():
    return CoverModel(
        "Y44",
        (1, 1, 1, 2, 2, 2),
        (4, 4),
        Fraction(2),
        Basket.of(TRIVIAL, [(2, 1, ())] * 4),
    )


def ex32_action():
    g24 = FiniteAbelianGroup.parse("Z2xZ4")
    return DiagonalAction.make(
        g24,
        [(0, 0), (0, 1), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3)],
        [(0, 0), (0, 0), (0, 2)],
    )


def test_cover_model_validates_degree():
    with pytest.raises(MolienError):
        CoverModel("bad", (1,) * 7, (2, 2, 2), Fraction(9), Basket(TRIVIAL, ()))
    with pytest.raises(MolienError):
        CoverModel("bad", (1,) * 5, (2, 2, 2), Fraction(8), Basket(TRIVIAL, ()))


def test_molien_matches_worked_example():
    action = ex32_action()
    g24 = action.group
    s = molien_series(y222(), action, 8)
    assert s.class_values(g24.cls((0, 0))) == (1, 1, 3, 7, 17, 29, 47, 71, 105)
    assert s.class_values(g24.cls((0, 1))) == (0, 1, 3, 8, 16, 29, 47, 72, 104)
    assert s.class_values(g24.cls((0, 2))) == (0, 0, 4, 8, 16, 28, 48, 72, 104)
    for exps in [(0, 3), (1, 0), (1, 1), (1, 2), (1, 3)]:
        assert s.class_values(g24.cls(exps)) == (0, 1, 3, 8, 16, 29, 47, 72, 104)


def test_molien_trivial_group_binomial():
    action = DiagonalAction.make(TRIVIAL, [()] * 7, [()] * 3)
    s = molien_series(y222(), action, 6)
    expected = []
    for n in range(7):
        total = 0
        for k, c in [(0, 1), (2, -3), (4, 3), (6, -1)]:
            if n >= k:
                total += c * math.comb(n - k + 6, 6)
        expected.append(total)
    assert s.augmentation() == tuple(expected)
    assert s.augmentation()[:4] == (1, 7, 25, 63)


def test_degree1_component_without_monomials_vanishes():
    action = ex32_action()
    g24 = action.group
    s = molien_series(y222(), action, 2)
    assert s.coefficient(1, g24.cls((0, 2))) == 0


def test_molien_augmentation_identity():
    action = ex32_action()
    s = molien_series(y222(), action, 10)
    triv_action = DiagonalAction.make(TRIVIAL, [()] * 7, [()] * 3)
    plain = molien_series(y222(), triv_action, 10)
    assert s.augmentation() == plain.augmentation()


def test_invariant_equation_space_worked_example():
    model, action = y222(), ex32_action()
    count, monos = invariant_equation_space(model, action, 0)
    assert count == 5
    names = {monomial_text(m) for m in monos}
    assert names == {"x0^2", "x1*x2", "x3^2", "x4*x6", "x5^2"}
    count, monos = invariant_equation_space(model, action, 2)
    assert count == 5
    names = {monomial_text(m) for m in monos}
    assert names == {"x1^2", "x2^2", "x3*x5", "x4^2", "x6^2"}


def test_invariant_equation_spaces_record_1c(catalog):
    rec = catalog.record("no1c")
    for k in range(3):
        count, _ = invariant_equation_space(rec.cover, rec.action, k)
        assert count > 0


def test_empty_linear_system_error():
    g2 = FiniteAbelianGroup.parse("Z2")
    # odd character on every coordinate: no invariant quadric... build one
    # where an equation demands an unattainable character
    model = CoverModel(
        "toy", (1,) * 5, (3,), Fraction(24), Basket(FiniteAbelianGroup(()), ())
    )
    action = DiagonalAction.make(
        g2, [(0,), (0,), (0,), (0,), (0,)], [(1,)]
    )
    with pytest.raises(EmptyLinearSystemError):
        invariant_equation_space(model, action, 0)
    assert action.validate_against(model)  # reports the issue


def test_molien_rejects_irregular_characters():
    from torsion_fano.molien import RegularityCharacterError

    g2 = FiniteAbelianGroup.parse("Z2")
    model = CoverModel(
        "toy", (1,) * 5, (3,), Fraction(24), Basket(FiniteAbelianGroup(()), ())
    )
    action = DiagonalAction.make(g2, [(0,)] * 5, [(1,)])
    with pytest.raises(RegularityCharacterError):
        molien_series(model, action, 4)


def test_rr_molien_two_sided_gate(catalog):
    from torsion_fano.riemann_roch import FanoNumericalData, equivariant_hilbert_series

    for name in sorted(catalog.records):
        rec = catalog.records[name]
        data = FanoNumericalData(rec.quotient_degree, rec.full_basket)
        rr = equivariant_hilbert_series(data, 12)
        mol = molien_series(rec.cover, rec.action, 12)
        assert rr.coefficients == mol.coefficients, name
