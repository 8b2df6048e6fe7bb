import itertools

import pytest

from torsion_fano.baskets import (
    Basket,
    BasketError,
    InvalidClassError,
    LabeledSingularity,
    SingularityGerm,
    canonicalize,
    cover_basket,
    difference_set,
    full_cover_basket,
    quotient_group,
    restrict_to_class,
)
from torsion_fano.groups import FiniteAbelianGroup, enumerate_automorphisms


def G(text):
    return FiniteAbelianGroup.parse(text)


def test_germ_normalization():
    assert SingularityGerm(8, 1).weights == (1, 1, 7)
    assert SingularityGerm(8, 7).weights == (1, 1, 7)
    assert SingularityGerm(8, 3).weights == (1, 3, 5)
    assert SingularityGerm(8, 5).weights == (1, 3, 5)
    assert SingularityGerm(8, 1) != SingularityGerm(8, 3)
    assert str(SingularityGerm(8, 3)) == "1/8(1,3,5)"


def test_germ_terminality():
    with pytest.raises(BasketError):
        SingularityGerm(4, 2)
    with pytest.raises(BasketError):
        SingularityGerm(6, 3)


def test_label_order_must_divide_generator_order():
    g = G("Z2xZ4")
    with pytest.raises(BasketError):
        # a label of order 4 on the order-2 generator
        Basket.of(g, [(4, 1, (1, 0))])
    Basket.of(g, [(4, 1, (2, 1))])  # fine


def bt(catalog, name):
    return catalog.baskets[name].basket


def test_restrict_examples(catalog):
    g22 = G("Z2xZ2")
    b = bt(catalog, "Bt2,2.1")
    r = restrict_to_class(b, g22.cls((1, 1)))
    assert sorted(e.labels[0] for e in r.entries) == [0, 4, 4]

    b42 = bt(catalog, "Bt2,4.2")
    g24 = G("Z2xZ4")
    r = restrict_to_class(b42, g24.cls((0, 2)))
    nonzero = [e for e in r.entries if e.labels[0]]
    assert len(nonzero) == 4
    assert all(e.germ == SingularityGerm(4, 1) and e.labels == (2,) for e in nonzero)

    with pytest.raises(InvalidClassError):
        restrict_to_class(b, g22.zero())


def test_restrict_negation_same_support(catalog):
    # Bt supports of c and -c agree for every shipped basket and class
    for pb in catalog.baskets.values():
        b = pb.basket
        for c in b.group.nonzero_elements():
            sup = [e.local_class(c) != 0 for e in b.entries]
            sup_neg = [e.local_class(-c) != 0 for e in b.entries]
            assert sup == sup_neg


def test_difference_set_examples(catalog):
    g22 = G("Z2xZ2")
    s, t = g22.cls((1, 0)), g22.cls((0, 1))
    d = difference_set(bt(catalog, "Bt2,2.20"), s, t)
    assert len(d) == 4
    assert all(e.germ == SingularityGerm(2, 1) and e.labels == (1,) for e in d)

    d = difference_set(bt(catalog, "Bt2,2.1"), s, t)
    assert len(d) == 1
    assert d[0].germ == SingularityGerm(8, 1) and d[0].labels == (4,)

    assert difference_set(bt(catalog, "Bt2,2.1"), s, s) == ()


def test_canonicalize_idempotent_and_orbit_constant(catalog):
    for name in ["Bt2,2.20", "Bt2,2.1", "Bt2,4.1", "Bt3,3.1", "Bt2,2,2.3"]:
        b = bt(catalog, name)
        canon = canonicalize(b)
        assert canonicalize(canon).entries == canon.entries
        for phi in enumerate_automorphisms(b.group):
            assert canonicalize(b.apply(phi)).entries == canon.entries


def test_canonicalize_symmetric_basket(catalog):
    b = bt(catalog, "Bt2,2.20")
    assert canonicalize(b).entries == b.entries


def test_swap_generators_is_automorphism(catalog):
    g22 = G("Z2xZ2")
    b = bt(catalog, "Bt2,2.1")
    swapped = Basket(
        g22,
        tuple(
            LabeledSingularity(e.germ, (e.labels[1], e.labels[0]))
            for e in b.entries
        ),
    )
    assert canonicalize(swapped).entries == canonicalize(b).entries


def test_canonicalize_all_labels_zero():
    g22 = G("Z2xZ2")
    b = Basket.of(g22, [(2, 1, (0, 0)), (4, 1, (0, 0))])
    assert canonicalize(b).entries == b.entries


def test_quotient_group():
    g24 = G("Z2xZ4")
    q, lifts = quotient_group(g24, g24.cls((0, 1)))
    assert q.factor_orders == (2,)
    q, lifts = quotient_group(g24, g24.cls((1, 0)))
    assert q.factor_orders == (4,)
    q, lifts = quotient_group(g24, g24.cls((0, 2)))
    assert q.factor_orders == (2, 2)
    g222 = G("Z2xZ2xZ2")
    q, _ = quotient_group(g222, g222.cls((1, 1, 1)))
    assert q.factor_orders == (2, 2)


def test_cover_basket_splits_1_8_into_halves(catalog):
    # the two index-8 points of (Bt2,4.1) come from index-2 points upstairs
    g24 = G("Z2xZ4")
    b = bt(catalog, "Bt2,4.1")
    cover = cover_basket(b, g24.cls((0, 1)))
    assert cover.group.factor_orders == (2,)
    counts = {}
    for e in cover.entries:
        counts[(e.germ.r, e.labels)] = counts.get((e.germ.r, e.labels), 0) + 1
    # 2x 1/2_{1} entries pull back etale (4 copies each), the 1/4 point gives
    # two 1/2 points, each 1/8 point gives one 1/2 point
    assert counts == {(2, (1,)): 8, (2, (0,)): 4}
    # and the non-Cartier part upstairs is the 8-fold replicated seed
    assert sum(1 for e in cover.entries if e.labels == (1,)) == 8


def test_cover_basket_order2_example(catalog):
    g22 = G("Z2xZ2")
    b = bt(catalog, "Bt2,2.20")
    cover = cover_basket(b, g22.cls((1, 0)))
    # (1,0)- and (1,1)-labeled points become smooth; (0,1) points double
    assert len(cover.entries) == 8
    assert all(e.germ.r == 2 and e.labels == (1,) for e in cover.entries)


def test_cover_basket_etale_doubling():
    g = G("Z2")
    b = Basket.of(g, [(4, 1, (0,))])
    cover = cover_basket(b, g.cls((1,)))
    assert len(cover.entries) == 2
    assert all(e.germ == SingularityGerm(4, 1) for e in cover.entries)


def test_full_cover_matches_cover_models(catalog):
    # iterating cyclic covers over the full group must reproduce the cover's
    # own basket for every quotient record
    for name in sorted(catalog.records):
        rec = catalog.records[name]
        full = full_cover_basket(rec.full_basket)
        expected = catalog.covers[rec.cover.name].basket
        assert full.entries == expected.entries, name


def test_cover_point_counts(catalog):
    # every base entry of index r where c has local order d contributes
    # ord(c)/d preimages of index r/d, dropped when r/d = 1
    from math import gcd

    g24 = G("Z2xZ4")
    b = bt(catalog, "Bt2,4.2")
    c = g24.cls((0, 1))
    cover = cover_basket(b, c)
    expected = 0
    for e in b.entries:
        d = e.germ.r // gcd(e.local_class(c), e.germ.r)
        if e.germ.r // d > 1:
            expected += 4 // d
    assert len(cover.entries) == expected
