"""The catalog of admissible order-n cyclic torsion baskets ("boxes"), with
honest membership semantics for partially known boxes.

A membership query first runs derived necessary conditions that any
realizable cyclic torsion basket satisfies (label orders, germ index range,
the <24 orbifold mass bound, and the torsion-vanishing identities
sum_Q c_Q(i*l_Q) = -1 for 0 < i < n); failing any of these is a definitive
False even when the box holds cited-only stubs.  Candidates that pass are
matched against the bodied entries up to Aut(Z/n); an unmatched candidate is
undecidable when stubs are present, else False.

Baskets are handled here as raw (r, a, label) triples so that queries are
cheap and memoizable; Basket objects appear only at the API edges."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .baskets import (
    Basket,
    LabeledSingularity,
    SingularityGerm,
    canonicalize,
    restrict_to_class,
)
from .groups import FiniteAbelianGroup, class_order
from .riemann_roch import _germ_correction

BT_GERM_INDICES = frozenset({2, 3, 4, 5, 6, 8})


class TableIncompleteError(LookupError):
    """The table cannot decide a membership question (missing box or stubs)."""


@dataclass(frozen=True)
class TableEntry:
    name: str
    source: str  # "reconstructed" or "cited-only"
    basket: Basket | None  # None for cited-only stubs
    note: str = ""


@dataclass(frozen=True)
class Verdict:
    value: bool | None  # None = undecidable
    reason: str
    matched: str | None = None


def cyclic_group(n: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup((n,))


def cyclic_basket(n: int, items) -> Basket:
    """Order-n basket from (r, a, label) triples."""
    return Basket.of(cyclic_group(n), [(r, a, (l,)) for r, a, l in items])


def bt_part(b: Basket) -> Basket:
    """Drop zero-labeled entries."""
    return Basket(b.group, tuple(e for e in b.entries if not e.is_plain()))


def canonical_cyclic(b: Basket) -> Basket:
    return canonicalize(b)


def _correction(r: int, a: int, i: int) -> Fraction:
    return _germ_correction(r, pow(a, -1, r), i % r)


def _canonical_items(n: int, items) -> tuple:
    """Canonical form of (r, a, l) triples under Aut(Z/n) = units mod n."""
    best = None
    for u in range(1, n):
        if gcd(u, n) != 1:
            continue
        candidate = tuple(sorted((r, a, (u * l) % r) for r, a, l in items))
        if best is None or candidate < best:
            best = candidate
    return best if best is not None else ()


def vanishing_sums_ok(items, n: int) -> bool:
    """sum_Q c_Q(i * l_Q) == -1 for every i in [1, n)."""
    for i in range(1, n):
        total = Fraction(0)
        for r, a, l in items:
            total += _correction(r, a, i * l)
        if total != -1:
            return False
    return True


def structural_issues(n: int, items) -> list[str]:
    """Necessary conditions on (r, a, label) triples as an order-n basket."""
    issues = []
    exact = False
    if not items:
        issues.append("empty basket (a torsion class Cartier everywhere)")
    mass = Fraction(0)
    for r, a, label in items:
        mass += Fraction(r * r - 1, r)
        if r not in BT_GERM_INDICES:
            issues.append(f"germ index {r} outside {sorted(BT_GERM_INDICES)}")
        label %= r
        if label == 0:
            issues.append(f"Cartier entry 1/{r} in a torsion basket")
            continue
        if (label * n) % r != 0:
            issues.append(f"label {label} at a 1/{r} germ has order not dividing {n}")
            continue
        if r // gcd(label, r) == n:
            exact = True
    if not exact and items:
        issues.append(f"no label of exact order {n}")
    if mass >= 24:
        issues.append(f"orbifold mass {mass} >= 24")
    return issues


@dataclass(frozen=True)
class CyclicBasketTable:
    boxes: dict[int, tuple[TableEntry, ...]] = field(default_factory=dict)

    def __post_init__(self):
        bodies: dict[int, dict[tuple, str]] = {}
        for n, entries in self.boxes.items():
            d = {}
            for e in entries:
                if e.basket is not None:
                    raw = [
                        (x.germ.r, x.germ.a, x.labels[0]) for x in e.basket.entries
                    ]
                    d[_canonical_items(n, raw)] = e.name
            bodies[n] = d
        object.__setattr__(self, "_bodies", bodies)
        object.__setattr__(self, "_memo", {})
        object.__setattr__(self, "_enum_cache", {})

    def has_box(self, n: int) -> bool:
        return n in self.boxes

    def bodied(self, n: int) -> list[TableEntry]:
        return [e for e in self.boxes.get(n, ()) if e.basket is not None]

    def stubs(self, n: int) -> list[TableEntry]:
        return [e for e in self.boxes.get(n, ()) if e.basket is None]

    def membership(self, entries, box: int) -> Verdict:
        """Decide membership of a multiset of entries in box `box`.

        Entries may be LabeledSingularity objects (single label) or raw
        (r, a, label) triples."""
        if box not in self.boxes:
            raise TableIncompleteError(f"table has no box {box}")
        items = tuple(
            sorted(
                (e.germ.r, e.germ.a, e.labels[0])
                if isinstance(e, LabeledSingularity)
                else (e[0], e[1], e[2])
                for e in entries
            )
        )
        memo = self._memo
        key = (box, items)
        if key in memo:
            return memo[key]
        verdict = self._membership(items, box)
        memo[key] = verdict
        return verdict

    def _membership(self, items, box: int) -> Verdict:
        issues = structural_issues(box, items)
        if issues:
            return Verdict(False, "; ".join(issues))
        if not vanishing_sums_ok(items, box):
            return Verdict(False, "torsion-vanishing sums != -1")
        name = self._bodies[box].get(_canonical_items(box, items))
        if name is not None:
            return Verdict(True, f"matches {name}", name)
        if self.stubs(box):
            return Verdict(
                None,
                f"no bodied match in box {box}; "
                f"{len(self.stubs(box))} cited-only entries present",
            )
        return Verdict(
            False, f"not among the {len(self._bodies[box])} entries of box {box}"
        )

    def membership_of_class(self, b: Basket, c) -> Verdict:
        """Membership of Bt(b, c) in the box of order(c)."""
        n = class_order(b.group, c)
        items = []
        for e in b.entries:
            l = e.local_class(c)
            if l:
                items.append((e.germ.r, e.germ.a, l))
        return self.membership(items, n)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        boxes = {}
        for n in sorted(self.boxes):
            rows = []
            for e in self.boxes[n]:
                row = {"name": e.name, "source": e.source}
                if e.basket is None:
                    row["entries"] = None
                else:
                    row["group"] = str(e.basket.group)
                    row["entries"] = [
                        {"r": x.germ.r, "a": x.germ.a, "labels": list(x.labels)}
                        for x in e.basket.entries
                    ]
                if e.note:
                    row["note"] = e.note
                rows.append(row)
            boxes[str(n)] = rows
        return {"schema_version": 1, "boxes": boxes}

    @staticmethod
    def from_json(doc: dict) -> "CyclicBasketTable":
        boxes: dict[int, tuple[TableEntry, ...]] = {}
        for key, rows in doc["boxes"].items():
            n = int(key)
            entries = []
            for row in rows:
                if row.get("entries") is None:
                    entries.append(
                        TableEntry(row["name"], row["source"], None, row.get("note", ""))
                    )
                else:
                    basket = Basket.of(
                        cyclic_group(n),
                        [(x["r"], x["a"], tuple(x["labels"])) for x in row["entries"]],
                    )
                    entries.append(
                        TableEntry(row["name"], row["source"], basket, row.get("note", ""))
                    )
            boxes[n] = tuple(entries)
        return CyclicBasketTable(boxes)

    @staticmethod
    def load(path) -> "CyclicBasketTable":
        with open(path) as fh:
            return CyclicBasketTable.from_json(json.load(fh))


def replicate_check(entries, copies: int, table: CyclicBasketTable, box: int) -> bool:
    """True iff `entries` repeated `copies` times is a basket of box `box`."""
    if copies < 1:
        raise ValueError("copies must be >= 1")
    items = []
    for e in entries:
        triple = (
            (e.germ.r, e.germ.a, e.labels[0])
            if isinstance(e, LabeledSingularity)
            else tuple(e)
        )
        items.extend([triple] * copies)
    verdict = table.membership(items, box)
    if verdict.value is None:
        raise TableIncompleteError(verdict.reason)
    return verdict.value


def restriction_closure(paper_baskets) -> dict[int, list[Basket]]:
    """Every order-n cyclic basket arising as the non-Cartier part of a
    restriction of a shipped noncyclic basket, canonical and deduplicated."""
    boxes: dict[int, dict[tuple, Basket]] = {}
    for b in paper_baskets:
        for c in b.group.nonzero_elements():
            n = class_order(b.group, c)
            restricted = bt_part(restrict_to_class(b, c))
            canon = canonical_cyclic(restricted)
            boxes.setdefault(n, {})[canon.entries] = canon
    return {n: [boxes[n][k] for k in sorted(boxes[n])] for n in sorted(boxes)}
