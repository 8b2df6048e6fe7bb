"""Terminal cyclic quotient germs 1/r(1,a,-a) with torsion labels, baskets as
multisets of labeled germs, canonical forms under group automorphism, and the
cyclic-cover transform on baskets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .groups import (
    FiniteAbelianGroup,
    GroupClass,
    GroupError,
    class_order,
    enumerate_automorphisms,
    _span,
)


class BasketError(ValueError):
    pass


class InvalidClassError(BasketError):
    pass


class InconsistentLocalOrderError(BasketError):
    """A label's local order fails to divide the global class order."""


@dataclass(frozen=True, order=True)
class SingularityGerm:
    """The germ 1/r(1, a, r-a), gcd(a, r) = 1, canonicalized so a <= r-a."""

    r: int
    a: int

    def __post_init__(self):
        if self.r < 2:
            raise BasketError(f"germ index must be >= 2, got {self.r}")
        a = self.a % self.r
        if gcd(a, self.r) != 1:
            raise BasketError(f"1/{self.r}(1,{a},{self.r - a}) is not terminal")
        object.__setattr__(self, "a", min(a, self.r - a))

    @property
    def weights(self) -> tuple[int, int, int]:
        return (1, self.a, self.r - self.a)

    @property
    def mass(self) -> Fraction:
        return Fraction(self.r * self.r - 1, self.r)

    @property
    def inverse_weight(self) -> int:
        """b with a*b = 1 mod r."""
        return pow(self.a, -1, self.r)

    def __str__(self) -> str:
        w = sorted(self.weights)
        return f"1/{self.r}({w[0]},{w[1]},{w[2]})"


@dataclass(frozen=True, order=True)
class LabeledSingularity:
    """A germ together with one torsion label per group generator."""

    germ: SingularityGerm
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "labels", tuple(l % self.germ.r for l in self.labels)
        )

    def local_class(self, c: GroupClass) -> int:
        """The local class of c at this germ, as a multiple of K in Z/r."""
        return sum(e * l for e, l in zip(c.exponents, self.labels)) % self.germ.r

    def is_plain(self) -> bool:
        return all(l == 0 for l in self.labels)

    def __str__(self) -> str:
        sub = ",".join(str(l) for l in self.labels)
        return f"{self.germ}_{{{sub}}}" if any(self.labels) else str(self.germ)


@dataclass(frozen=True)
class Basket:
    """Multiset of labeled germs over a fixed torsion group (entries sorted)."""

    group: FiniteAbelianGroup
    entries: tuple[LabeledSingularity, ...]

    def __post_init__(self):
        for e in self.entries:
            if len(e.labels) != self.group.rank:
                raise BasketError(f"entry {e} has wrong label length for {self.group}")
            for l, rj in zip(e.labels, self.group.factor_orders):
                if (l * rj) % e.germ.r != 0:
                    raise BasketError(
                        f"label {l} at {e.germ} has order not dividing the "
                        f"generator order {rj}"
                    )
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    @staticmethod
    def of(group, items) -> "Basket":
        """Build from (r, a, labels) triples or LabeledSingularity objects."""
        entries = []
        for it in items:
            if isinstance(it, LabeledSingularity):
                entries.append(it)
            else:
                r, a, labels = it
                entries.append(LabeledSingularity(SingularityGerm(r, a), tuple(labels)))
        return Basket(group, tuple(entries))

    @property
    def mass(self) -> Fraction:
        return sum((e.germ.mass for e in self.entries), Fraction(0))

    def bt(self, c: GroupClass) -> tuple[LabeledSingularity, ...]:
        """Entries where c is locally non-Cartier."""
        return tuple(e for e in self.entries if e.local_class(c) != 0)

    def be(self) -> tuple[LabeledSingularity, ...]:
        return tuple(e for e in self.entries if e.is_plain())

    def counter(self):
        out: dict[LabeledSingularity, int] = {}
        for e in self.entries:
            out[e] = out.get(e, 0) + 1
        return out

    def apply(self, phi) -> "Basket":
        """Transform labels by an automorphism: new_label_i = label(phi(g_i))."""
        new = []
        for e in self.entries:
            labels = tuple(
                e.local_class(phi(self.group.generator(i)))
                for i in range(self.group.rank)
            )
            new.append(LabeledSingularity(e.germ, labels))
        return Basket(self.group, tuple(new))

    def __str__(self) -> str:
        parts = []
        for e, k in sorted(self.counter().items()):
            parts.append(f"{k}x{e}" if k > 1 else str(e))
        return ", ".join(parts) if parts else "(empty)"


def restrict_to_class(b: Basket, c: GroupClass) -> Basket:
    """View a basket through a single torsion class c, over Z/order(c).

    Entries whose label restricts to 0 are kept (with label 0); callers that
    want the non-Cartier locus filter through Basket.bt."""
    if c.is_zero():
        raise InvalidClassError("cannot restrict to the zero class")
    n = class_order(b.group, c)
    cyclic = FiniteAbelianGroup((n,))
    return Basket(
        cyclic,
        tuple(LabeledSingularity(e.germ, (e.local_class(c),)) for e in b.entries),
    )


def difference_set(
    b: Basket, c1: GroupClass, c2: GroupClass
) -> tuple[LabeledSingularity, ...]:
    """Entries where c1 is locally non-Cartier and c2 is Cartier, carrying
    their c1-labels (over Z/order(c1))."""
    if c1.is_zero() or c2.is_zero():
        raise InvalidClassError("difference set needs nonzero classes")
    out = []
    for e in b.entries:
        if e.local_class(c1) != 0 and e.local_class(c2) == 0:
            out.append(LabeledSingularity(e.germ, (e.local_class(c1),)))
    return tuple(sorted(out))


def subgroup_cartier_entries(
    b: Basket, c: GroupClass, subgroup
) -> tuple[LabeledSingularity, ...]:
    """Entries where c is locally non-Cartier and every class of `subgroup`
    is Cartier; labels restricted to c.  Generalizes difference_set."""
    out = []
    for e in b.entries:
        if e.local_class(c) == 0:
            continue
        if all(e.local_class(h) == 0 for h in subgroup):
            out.append(LabeledSingularity(e.germ, (e.local_class(c),)))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _auto_tables(group: FiniteAbelianGroup, bound: int):
    """For each automorphism, the action on label vectors packed base N.

    A label vector (l_1..l_k) of a germ of index r embeds into (Z/N)^k by
    l_i * N/r (N the group exponent); every automorphism then acts the same
    way on every germ's labels, so one lookup table serves all entries."""
    autos = enumerate_automorphisms(group, bound=bound)
    N = group.exponent
    k = group.rank
    size = N**k
    tables = []
    for phi in autos:
        table = [0] * size
        for packed in range(size):
            scaled = []
            x = packed
            for _ in range(k):
                scaled.append(x % N)
                x //= N
            scaled.reverse()  # big-endian: scaled[0] is the leading digit
            out = 0
            for i in range(k):
                img = phi.images[i]
                val = sum(img[j] * scaled[j] for j in range(k)) % N
                out = out * N + val
            table[packed] = out
        tables.append(tuple(table))
    return tuple(tables)


def _packed(group: FiniteAbelianGroup, e: LabeledSingularity) -> int:
    # label l at a 1/r germ has l*N = 0 mod r, so l*N/r is an exact integer
    # embedding of the label into Z/N; big-endian packing makes the numeric
    # order of packed values agree with the lexicographic order of labels
    N = group.exponent
    out = 0
    for l in e.labels:
        out = out * N + (l * N) // e.germ.r
    return out


def _unpack(group: FiniteAbelianGroup, germ: SingularityGerm, packed: int):
    N = group.exponent
    scaled = []
    for _ in range(group.rank):
        scaled.append(packed % N)
        packed //= N
    scaled.reverse()
    return LabeledSingularity(germ, tuple(s * germ.r // N for s in scaled))


def canonicalize(b: Basket, bound: int = 256) -> Basket:
    """Lexicographically minimal basket over the automorphism orbit."""
    if b.group.rank == 0:
        return b
    tables = _auto_tables(b.group, bound)
    keys = [(e.germ.r, e.germ.a, _packed(b.group, e)) for e in b.entries]
    best = None
    for table in tables:
        candidate = sorted((r, a, table[p]) for r, a, p in keys)
        if best is None or candidate < best:
            best = candidate
    return Basket(
        b.group,
        tuple(_unpack(b.group, SingularityGerm(r, a), p) for r, a, p in best),
    )


def quotient_group(g: FiniteAbelianGroup, c: GroupClass):
    """The quotient G/<c> in invariant-factor form, with generator lifts.

    Returns (quotient, lifts) where lifts[i] is an element of G whose coset
    maps to the i-th generator.  Found by exhaustive search; fine for the
    group orders in scope."""
    H = _span({c, g.zero()})
    m = g.order // len(H)
    if m == 1:
        return FiniteAbelianGroup(()), ()
    elems = list(g.elements())

    def coset_order(x: GroupClass) -> int:
        k = 1
        y = x
        while y not in H:
            y = y + x
            k += 1
        return k

    orders = {x: coset_order(x) for x in elems}

    def forms(total, max_factor):
        if total == 1:
            yield ()
            return
        for f in range(2, max_factor + 1):
            if total % f == 0:
                for rest in forms(total // f, f):
                    yield rest + (f,)

    for form in sorted(forms(m, m)):
        gens_pool = [[x for x in elems if orders[x] == r] for r in form]
        for lifts in itertools.product(*gens_pool):
            seen = set()
            ok = True
            for exps in itertools.product(*(range(r) for r in form)):
                x = g.zero()
                for e, q in zip(exps, lifts):
                    x = x + e * q
                key = frozenset((x + h).exponents for h in H)
                if key in seen:
                    ok = False
                    break
                seen.add(key)
            if ok:
                return FiniteAbelianGroup(form), tuple(lifts)
    raise GroupError("no invariant-factor presentation found for quotient")


def cover_basket(b: Basket, c: GroupClass) -> Basket:
    """Basket of the cyclic cover that untwists c, over G/<c>.

    Each germ of index r where c has local order d yields ord(c)/d preimage
    points of index r/d; index-1 preimages are smooth and dropped.  Labels of
    the surviving torsion classes pull back by reduction mod r/d."""
    d_glob = class_order(b.group, c)
    if d_glob < 2:
        raise InvalidClassError("cover class must have order >= 2")
    quot, lifts = quotient_group(b.group, c)
    new_entries = []
    for e in b.entries:
        r = e.germ.r
        l = e.local_class(c)
        d = r // gcd(l, r)
        if d_glob % d != 0:
            raise InconsistentLocalOrderError(
                f"local order {d} of {c.exponents} at {e} does not divide "
                f"the global order {d_glob}"
            )
        r_new = r // d
        count = d_glob // d
        if r_new == 1:
            continue  # smooth preimages
        labels = tuple(e.local_class(q) % r_new for q in lifts)
        germ = SingularityGerm(r_new, e.germ.a % r_new)
        new_entries.extend([LabeledSingularity(germ, labels)] * count)
    return Basket(quot, tuple(new_entries))


def full_cover_basket(b: Basket) -> Basket:
    """Iterate cyclic covers over the generators until the group is trivial."""
    while b.group.rank:
        b = cover_basket(b, b.group.generator(b.group.rank - 1))
    return b
