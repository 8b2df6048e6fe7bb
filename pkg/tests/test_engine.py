import pytest

from torsion_fano.baskets import Basket, LabeledSingularity, canonicalize
from torsion_fano.engine import (
    admissible_orders,
    check_basket,
    complement_decompositions,
    enumerate_baskets,
    validate_basket,
)
from torsion_fano.groups import FiniteAbelianGroup, enumerate_automorphisms
from torsion_fano.tables import CyclicBasketTable, TableEntry


def G(text):
    return FiniteAbelianGroup.parse(text)


def golden(catalog, gtext):
    return {
        canonicalize(pb.basket).entries
        for pb in catalog.baskets_for_group(G(gtext))
    }


@pytest.mark.parametrize(
    "gtext,count",
    [("Z2xZ4", 2), ("Z3xZ3", 1), ("Z2xZ8", 0), ("Z2xZ2", 20)],
)
def test_enumeration_golden_small(catalog, gtext, count):
    result = enumerate_baskets(G(gtext), catalog.table)
    assert len(result.baskets) == count
    assert {b.entries for b in result.baskets} == golden(catalog, gtext)
    assert not result.undecidable


def test_enumeration_deterministic(catalog):
    # two runs from freshly loaded tables: identical lists and statistics
    from torsion_fano.catalog import Catalog

    a = enumerate_baskets(G("Z2xZ4"), Catalog.load().table)
    b = enumerate_baskets(G("Z2xZ4"), Catalog.load().table)
    assert [x.entries for x in a.baskets] == [x.entries for x in b.baskets]
    assert a.statistics == b.statistics


def test_enumeration_closed_under_automorphisms(catalog):
    for gtext in ["Z2xZ4", "Z3xZ3"]:
        g = G(gtext)
        result = enumerate_baskets(g, catalog.table)
        found = {b.entries for b in result.baskets}
        for b in result.baskets:
            for phi in enumerate_automorphisms(g):
                assert canonicalize(b.apply(phi)).entries in found


def test_every_enumerated_basket_passes_checker(catalog):
    for gtext in ["Z2xZ4", "Z3xZ3", "Z2xZ2"]:
        result = enumerate_baskets(G(gtext), catalog.table)
        for b in result.baskets:
            assert check_basket(b, catalog.table).ok


def test_worked_negative_branch(catalog):
    # seed {1/4(1,1,3)} with the (B4.1) candidate admits no completion: the
    # only Z2xZ4 basket containing (B4.1) has the doubled-half seed
    g24 = G("Z2xZ4")
    result = enumerate_baskets(g24, catalog.table)
    b41 = {(4, 1, 2), (8, 3, 2)}
    for b in result.baskets:
        tau_part = [
            (e.germ.r, e.germ.a, e.local_class(g24.cls((0, 1))))
            for e in b.entries
            if e.local_class(g24.cls((0, 1)))
        ]
        if set(tau_part) == b41:
            seed = [
                e
                for e in b.entries
                if e.local_class(g24.cls((1, 0)))
                and not e.local_class(g24.cls((0, 1)))
            ]
            assert sorted((e.germ.r, e.germ.a) for e in seed) == [(2, 1), (2, 1)]


def test_check_basket_accepts_printed(catalog):
    report = check_basket(catalog.baskets["Bt2,2.9"].basket, catalog.table)
    assert report.ok
    assert not report.undecidable


def test_check_basket_mutation_fails(catalog):
    # one label 4 -> 2 on the 1/8 germ of (Bt2,2.9): the first generator
    # would have local order 4 at an order-2 class
    from torsion_fano.engine import check_raw_basket

    g22 = G("Z2xZ2")
    rows = []
    changed = False
    for e in catalog.baskets["Bt2,2.9"].basket.entries:
        labels = e.labels
        if e.germ.r == 8 and not changed:
            labels = (2, e.labels[1])
            changed = True
        rows.append((e.germ.r, e.germ.a, labels))
    report = check_raw_basket(g22, rows, catalog.table)
    assert not report.ok
    assert any("exceeds" in why for _, why in report.violations())


def test_check_basket_single_label_mutations_strictly_reduce(catalog):
    # every single-label mutation of a printed basket that stays within the
    # label constraints must fail at least one check
    g22 = G("Z2xZ2")
    base = catalog.baskets["Bt2,2.15"].basket
    for i, e in enumerate(base.entries):
        for pos in range(2):
            for new in range(0, e.germ.r, e.germ.r // 2):
                labels = list(e.labels)
                if new == labels[pos]:
                    continue
                labels[pos] = new
                entries = list(base.entries)
                entries[i] = LabeledSingularity(e.germ, tuple(labels))
                report = check_basket(Basket(g22, tuple(entries)), catalog.table)
                assert not report.ok


def test_check_basket_empty_fails(catalog):
    report = check_basket(Basket(G("Z2xZ2"), ()), catalog.table)
    assert not report.ok
    assert any("empty" in why for _, why in report.violations())


def test_check_basket_bad_orders(catalog):
    g44 = FiniteAbelianGroup((4, 4))
    b = Basket.of(g44, [(4, 1, (1, 0)), (4, 1, (0, 1))])
    report = check_basket(b, catalog.table)
    assert not report.ok
    assert any("prime" in name for name, v, _ in report.checks if v is False)


def test_complement_decompositions():
    g24 = G("Z2xZ4")
    decomps = complement_decompositions(g24)
    # prime-order classes with a complement: (1,0) and (1,2), each against
    # the two cyclic order-4 subgroups <(0,1)> and <(1,1)>; the order-2
    # class (0,2) has no complement (it lies in every order-4 subgroup)
    assert len(decomps) == 4
    assert all(len(H) == 4 for _, H in decomps)
    assert {c.exponents for c, _ in decomps} == {(1, 0), (1, 2)}
    g22 = G("Z2xZ2")
    assert len(complement_decompositions(g22)) == 6


def test_undecidable_branch_surfaces():
    # a table whose box 4 is a stub cannot decide Z2xZ4 candidates
    group = G("Z2xZ4")
    full = CyclicBasketTable.load(
        __import__("torsion_fano.catalog", fromlist=["data_directory"])
        .data_directory()
        / "cyclic_table.json"
    )
    boxes = dict(full.boxes)
    boxes[4] = (TableEntry("B4.x", "cited-only", None, "stubbed for test"),)
    table = CyclicBasketTable(boxes)
    result = enumerate_baskets(group, table)
    assert result.baskets == ()
    assert result.undecidable


def test_admissible_orders_report(catalog):
    report = admissible_orders(8, catalog.table)
    assert set(report.admissible) == {
        (2, 2), (2, 4), (3, 3), (2, 2, 2), (2, 2, 2, 2),
    }
    for pair in [(2, 6), (3, 6), (4, 4), (4, 8), (6, 6), (8, 8), (5, 5)]:
        assert report.reason(pair), pair
    assert "not prime" in report.reason((4, 4))
    assert "24" in report.reason((5, 5))
    assert "enumeration" in report.reason((2, 8))
    # no five-generator tuple survives
    assert all(len(t) < 5 for t in report.admissible)
    assert "24" in report.reason((2, 2, 2, 2, 2))
    assert not report.undecidable


def test_admissible_orders_structural_only(catalog):
    report = admissible_orders(8, catalog.table, run_enumeration=False)
    assert (2, 8) in report.admissible  # only enumeration kills it
    assert report.reason((3, 3, 3)) and "9 equal parts" in report.reason((3, 3, 3))
