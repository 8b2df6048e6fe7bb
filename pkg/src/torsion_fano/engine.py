"""The classification engine: order-tuple admissibility, the table-fill
enumeration of noncyclic torsion baskets, and full validation of a basket
against all derived constraints.

A basket over G = Z/r1 + H (r1 the smallest invariant factor, H the rest)
splits into a seed (entries where only the first generator is non-Cartier)
and an H-part.  The seed repeated |H| times must be an order-r1 table
basket (the pullback of the first generator to the H-cover is an order-r1
torsion divisor there), the H-part must itself be a valid H-basket, and
every nonzero class's restriction must lie in the box of its order.  The
search enumerates seeds and H-parts from the table and completes the
unknown first-generator labels by depth-first search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .baskets import (
    Basket,
    LabeledSingularity,
    SingularityGerm,
    canonicalize,
    subgroup_cartier_entries,
)
from .groups import FiniteAbelianGroup, GroupClass, class_order, enumerate_automorphisms
from .tables import (
    BT_GERM_INDICES,
    CyclicBasketTable,
    TableIncompleteError,
    Verdict,
    bt_part,
    canonical_cyclic,
    cyclic_group,
)

TORSION_ORDERS = (2, 3, 4, 5, 6, 8)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class PairConstraintReport:
    """Conjunction of named verdicts; None marks an undecidable check."""

    subject: str
    checks: tuple[tuple[str, bool | None, str], ...]

    @property
    def ok(self) -> bool:
        return all(v is True for _, v, _ in self.checks)

    @property
    def undecidable(self) -> tuple[str, ...]:
        return tuple(name for name, v, _ in self.checks if v is None)

    def violations(self) -> tuple[tuple[str, str], ...]:
        return tuple((name, why) for name, v, why in self.checks if v is False)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "verdict": self.ok,
            "checks": [
                {"check": n, "ok": v, "detail": w} for n, v, w in self.checks
            ],
            "violations": [
                {"check": n, "detail": w} for n, w in self.violations()
            ],
            "undecidable": list(self.undecidable),
        }


@dataclass
class EnumerationResult:
    group: FiniteAbelianGroup
    baskets: tuple[Basket, ...]
    statistics: dict[str, int]
    undecidable: tuple[str, ...] = ()


@lru_cache(maxsize=None)
def complement_decompositions(group: FiniteAbelianGroup):
    """All (c, H) with <c> + H = G an internal direct sum and ord(c) prime.

    These are the decompositions along which the seed-replicate constraint is
    sound: on the H-cover the pullback of c is torsion of prime order and is
    Cartier over all of Bt(H), because any nontrivial subgroup of a local
    cyclic p-group contains the unique subgroup of order p."""
    out = []
    for H in group.subgroups():
        for c in group.nonzero_elements():
            n = class_order(group, c)
            if not _is_prime(n) or n * len(H) != group.order:
                continue
            span_c = {k * c for k in range(n)}
            if span_c & set(H) == {group.zero()}:
                out.append((c, tuple(sorted(H, key=lambda x: x.exponents))))
    out.sort(key=lambda ch: (ch[0].exponents, [h.exponents for h in ch[1]]))
    return tuple(out)


def validate_basket(
    b: Basket, table: CyclicBasketTable, subject: str = "basket"
) -> PairConstraintReport:
    """Every derived constraint, with the witnessing class or decomposition."""
    checks: list[tuple[str, bool | None, str]] = []
    group = b.group
    for c in sorted(group.nonzero_elements(), key=lambda x: x.exponents):
        n = class_order(group, c)
        try:
            verdict = table.membership_of_class(b, c)
        except TableIncompleteError as exc:
            verdict = Verdict(None, str(exc))
        checks.append(
            (f"Bt({c.exponents}) in box {n}", verdict.value, verdict.reason)
        )
    for c, H in complement_decompositions(group):
        n = class_order(group, c)
        mult = len(H)
        seed = subgroup_cartier_entries(b, c, H)
        name = (
            f"seed of {c.exponents} against complement of order {mult} "
            f"repeated {mult}x in box {n}"
        )
        items = [
            (e.germ.r, e.germ.a, e.labels[0]) for e in seed for _ in range(mult)
        ]
        try:
            verdict = table.membership(items, n)
        except TableIncompleteError as exc:
            verdict = Verdict(None, str(exc))
        checks.append((name, verdict.value, verdict.reason))
    return PairConstraintReport(subject, tuple(checks))


def check_raw_basket(
    group: FiniteAbelianGroup, rows, table: CyclicBasketTable
) -> PairConstraintReport:
    """check_basket for possibly malformed (r, a, labels) rows: label and
    germ violations become report entries instead of constructor errors."""
    checks: list[tuple[str, bool | None, str]] = []
    for r, a, labels in rows:
        try:
            germ = SingularityGerm(r, a)
        except Exception as exc:
            checks.append((f"germ 1/{r}(1,{a},..)", False, str(exc)))
            continue
        for i, (l, rj) in enumerate(zip(labels, group.factor_orders)):
            if (l * rj) % r != 0:
                checks.append(
                    (
                        f"label {l} of generator {i + 1} at {germ}",
                        False,
                        f"local order of the order-{rj} generator exceeds "
                        f"its global order",
                    )
                )
    if checks:
        return PairConstraintReport("basket", tuple(checks))
    return check_basket(Basket.of(group, rows), table)


def check_basket(b: Basket, table: CyclicBasketTable) -> PairConstraintReport:
    """validate_basket plus structural verdicts on the order tuple."""
    checks: list[tuple[str, bool | None, str]] = []
    orders = b.group.factor_orders
    if orders:
        r = orders[0]
        checks.append(
            (
                "smallest order is prime",
                _is_prime(r),
                f"r = {r}",
            )
        )
        checks.append(
            (
                "all orders are powers of the smallest",
                all(_is_power_of(s, r) for s in orders) if _is_prime(r) else False,
                f"orders {orders}",
            )
        )
        checks.append(
            (
                "orders within the realizable torsion range",
                all(s in TORSION_ORDERS for s in orders),
                f"allowed {TORSION_ORDERS}",
            )
        )
    inner = validate_basket(b, table, subject="basket")
    return PairConstraintReport("basket", tuple(checks) + inner.checks)


# ---------------------------------------------------------------------------
# enumeration


def _sigma_values(r_germ: int, r1: int) -> tuple[int, ...]:
    """Labels for a generator of order r1 at a germ of index r_germ."""
    step = r_germ // gcd(r1, r_germ)
    return tuple(range(0, r_germ, step))


def _box_profiles(table: CyclicBasketTable, n: int):
    """Per-key maxima and size bound over all automorphic images of the
    bodied entries of box n (used for pruning partial class counters)."""
    autos = enumerate_automorphisms(cyclic_group(n))
    maxcount: dict[tuple, int] = {}
    maxsize = 0
    for entry in table.bodied(n):
        for phi in autos:
            image = entry.basket.apply(phi)
            counter: dict[tuple, int] = {}
            for e in image.entries:
                key = (e.germ.r, e.germ.a, e.labels[0])
                counter[key] = counter.get(key, 0) + 1
            maxsize = max(maxsize, len(image.entries))
            for key, v in counter.items():
                maxcount[key] = max(maxcount.get(key, 0), v)
    return maxcount, maxsize


def enumerate_baskets(
    group: FiniteAbelianGroup, table: CyclicBasketTable
) -> EnumerationResult:
    """All admissible torsion baskets over `group`, canonical, with search
    statistics.  Cited-only table entries surface as undecidable branches,
    never as silent exclusions.  Results are cached on the table instance
    (everything involved is immutable)."""
    cache = getattr(table, "_enum_cache", None)
    if cache is not None and group in cache:
        return cache[group]
    result = _enumerate_baskets(group, table)
    if cache is not None:
        cache[group] = result
    return result


def _enumerate_baskets(
    group: FiniteAbelianGroup, table: CyclicBasketTable
) -> EnumerationResult:
    stats = {
        "seeds": 0,
        "h_candidates": 0,
        "assignments_tested": 0,
        "pruned": 0,
        "accepted": 0,
    }
    undecidable: list[str] = []

    if group.rank == 0:
        return EnumerationResult(group, (), stats)
    if group.rank == 1:
        n = group.factor_orders[0]
        if not table.has_box(n):
            raise TableIncompleteError(f"table has no box {n}")
        baskets = tuple(e.basket for e in table.bodied(n))
        for stub in table.stubs(n):
            undecidable.append(f"box {n} entry {stub.name} is cited-only")
        stats["accepted"] = len(baskets)
        return EnumerationResult(group, baskets, stats, tuple(undecidable))

    r1 = group.factor_orders[0]
    h_group = FiniteAbelianGroup(group.factor_orders[1:])
    mult = h_group.order

    if not table.has_box(r1):
        raise TableIncompleteError(f"table has no box {r1}")

    # seeds: order-r1 baskets that split into mult equal parts
    seeds = []
    for entry in table.bodied(r1):
        counter = entry.basket.counter()
        if all(v % mult == 0 for v in counter.values()):
            seed = tuple(
                sorted(
                    itertools.chain.from_iterable(
                        [e] * (v // mult) for e, v in counter.items()
                    )
                )
            )
            seeds.append(seed)
    seeds.sort(key=lambda s: (sum((e.germ.mass for e in s), Fraction(0)), s))
    stats["seeds"] = len(seeds)
    for stub in table.stubs(r1):
        undecidable.append(
            f"box {r1} entry {stub.name} is cited-only; possible seeds missed"
        )

    # H-part candidates: valid baskets over the complement, all labelings
    sub = enumerate_baskets(h_group, table)
    for key in sub.statistics:
        stats[key] = stats.get(key, 0) + sub.statistics[key]
    stats["accepted"] = 0
    undecidable.extend(sub.undecidable)
    h_autos = enumerate_automorphisms(h_group)
    expanded: dict[tuple, Basket] = {}
    for hb in sub.baskets:
        for phi in h_autos:
            image = hb.apply(phi)
            expanded[image.entries] = image
    h_candidates = [expanded[k] for k in sorted(expanded)]
    stats["h_candidates"] = len(h_candidates)

    # mixed classes (nonzero first-generator component) are the only ones the
    # completion can change; classes inside H were validated by the recursion
    mixed_classes = []
    profiles = {}
    for c in group.nonzero_elements():
        if c.exponents[0] == 0:
            continue
        n = class_order(group, c)
        if n not in profiles and table.has_box(n):
            profiles[n] = _box_profiles(table, n)
        mixed_classes.append((c.exponents, n, profiles.get(n)))

    results: dict[tuple, Basket] = {}

    def finish(seed_lift, h_entries, chosen, counters):
        stats["assignments_tested"] += 1
        verdicts = []
        for cexp, n, _ in mixed_classes:
            counter = counters[cexp]
            items = []
            for key in sorted(counter):
                items.extend([key] * counter[key])
            try:
                verdicts.append(table.membership(tuple(items), n))
            except TableIncompleteError as exc:
                verdicts.append(Verdict(None, str(exc)))
        if any(v.value is False for v in verdicts):
            return
        entries = tuple(seed_lift) + tuple(
            LabeledSingularity(e.germ, (x,) + e.labels)
            for e, x in zip(h_entries, chosen)
        )
        basket = Basket(group, entries)
        if any(v.value is None for v in verdicts):
            undecidable.append(
                f"candidate {basket} undecidable: "
                + "; ".join(v.reason for v in verdicts if v.value is None)
            )
            return
        report = validate_basket(basket, table)
        if report.ok:
            stats["accepted"] += 1
            canon = canonicalize(basket)
            results[canon.entries] = canon
        elif report.undecidable and not report.violations():
            undecidable.append(
                f"candidate {basket} undecidable: "
                + "; ".join(report.undecidable)
            )

    for seed in seeds:
        seed_lift = [
            LabeledSingularity(e.germ, (e.labels[0],) + (0,) * h_group.rank)
            for e in seed
        ]
        for hb in h_candidates:
            h_entries = list(hb.entries)
            options = [_sigma_values(e.germ.r, r1) for e in h_entries]

            # per-mixed-class counters, seeded with the fixed seed part
            counters: dict[tuple, dict[tuple, int]] = {}
            for cexp, _, _ in mixed_classes:
                counter: dict[tuple, int] = {}
                for e in seed_lift:
                    l = sum(a * b for a, b in zip(cexp, e.labels)) % e.germ.r
                    if l:
                        key = (e.germ.r, e.germ.a, l)
                        counter[key] = counter.get(key, 0) + 1
                counters[cexp] = counter

            # per-entry, per-option class contributions, precomputed
            contribs = []
            for e, opts in zip(h_entries, options):
                per_option = []
                for x in opts:
                    keys = []
                    for cexp, _, _ in mixed_classes:
                        l = (
                            x * cexp[0]
                            + sum(a * b for a, b in zip(e.labels, cexp[1:]))
                        ) % e.germ.r
                        if l:
                            keys.append((cexp, (e.germ.r, e.germ.a, l)))
                    per_option.append(keys)
                contribs.append(per_option)

            def admissible_partial(profile, counter) -> bool:
                if profile is None:
                    return True  # box unknown; cannot prune soundly
                maxcount, maxsize = profile
                if sum(counter.values()) > maxsize:
                    return False
                return all(maxcount.get(k, 0) >= v for k, v in counter.items())

            profile_of = {cexp: prof for cexp, _, prof in mixed_classes}

            def dfs(i: int):
                if i == len(h_entries):
                    finish(seed_lift, h_entries, chosen, counters)
                    return
                for x, keys in zip(options[i], contribs[i]):
                    ok = True
                    for cexp, key in keys:
                        counter = counters[cexp]
                        counter[key] = counter.get(key, 0) + 1
                        if ok and not admissible_partial(
                            profile_of[cexp], counter
                        ):
                            ok = False
                    if ok:
                        chosen.append(x)
                        dfs(i + 1)
                        chosen.pop()
                    else:
                        stats["pruned"] += 1
                    for cexp, key in keys:
                        counter = counters[cexp]
                        counter[key] -= 1
                        if not counter[key]:
                            del counter[key]

            chosen: list[int] = []
            dfs(0)

    baskets = tuple(results[k] for k in sorted(results))
    return EnumerationResult(group, baskets, stats, tuple(sorted(set(undecidable))))


# ---------------------------------------------------------------------------
# order-tuple admissibility


@dataclass(frozen=True)
class OrdersReport:
    admissible: tuple[tuple[int, ...], ...]
    excluded: tuple[tuple[tuple[int, ...], str], ...]
    undecidable: tuple[tuple[tuple[int, ...], str], ...] = ()

    def reason(self, orders: tuple[int, ...]) -> str | None:
        for t, why in self.excluded:
            if t == orders:
                return why
        return None


def _order_chains(max_order: int, max_rank: int = 5):
    chains = [[r] for r in TORSION_ORDERS if r <= max_order]
    out = []
    for _ in range(max_rank - 1):
        chains = [
            ch + [s]
            for ch in chains
            for s in TORSION_ORDERS
            if s <= max_order and s % ch[-1] == 0
        ]
        out.extend(tuple(ch) for ch in chains)
    return sorted(out, key=lambda t: (len(t), t))


def admissible_orders(
    max_order: int,
    table: CyclicBasketTable,
    run_enumeration: bool = True,
) -> OrdersReport:
    """Order tuples (r_1 | r_2 | ...) of noncyclic torsion groups that
    survive the structural constraints, the replicate-divisibility mass
    obstruction, and (optionally) full enumeration."""
    admissible: list[tuple[int, ...]] = []
    excluded: list[tuple[tuple[int, ...], str]] = []
    undecidable: list[tuple[tuple[int, ...], str]] = []
    status: dict[tuple[int, ...], bool] = {}

    for orders in _order_chains(max_order):
        r = orders[0]
        if not _is_prime(r):
            excluded.append((orders, f"smallest order {r} is not prime"))
            status[orders] = False
            continue
        if any(not _is_power_of(s, r) for s in orders):
            excluded.append((orders, f"orders {orders} are not all powers of {r}"))
            status[orders] = False
            continue
        sub_bad = None
        for k in range(2, len(orders)):
            for sub in itertools.combinations(orders, k):
                if status.get(tuple(sub)) is False:
                    sub_bad = tuple(sub)
                    break
            if sub_bad:
                break
        if sub_bad:
            excluded.append((orders, f"contains the excluded subtuple {sub_bad}"))
            status[orders] = False
            continue
        mult = 1
        for s in orders[1:]:
            mult *= s
        min_mass = mult * Fraction(r * r - 1, r)
        if min_mass >= 24:
            excluded.append(
                (
                    orders,
                    f"no order-{r} basket splits into {mult} equal parts: "
                    f"mass would be >= {min_mass} >= 24",
                )
            )
            status[orders] = False
            continue
        if table.has_box(r):
            divisible = [
                e
                for e in table.bodied(r)
                if all(v % mult == 0 for v in e.basket.counter().values())
            ]
            if not divisible and not table.stubs(r):
                excluded.append(
                    (orders, f"no box-{r} basket splits into {mult} equal parts")
                )
                status[orders] = False
                continue
        if run_enumeration:
            result = enumerate_baskets(FiniteAbelianGroup(orders), table)
            if result.undecidable and not result.baskets:
                undecidable.append(
                    (orders, "; ".join(result.undecidable[:3]))
                )
                status[orders] = None
                continue
            if not result.baskets:
                excluded.append((orders, "enumeration finds no torsion basket"))
                status[orders] = False
                continue
        admissible.append(orders)
        status[orders] = True

    return OrdersReport(tuple(admissible), tuple(excluded), tuple(undecidable))
