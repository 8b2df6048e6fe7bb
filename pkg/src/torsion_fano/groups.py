"""Finite abelian groups, their classes, characters and integral group ring.

Everything here is an immutable value; arithmetic is exact (integers and
root-of-unity exponents, never floats).  Groups are kept in invariant-factor
form r_1 | r_2 | ... | r_l so that a group has exactly one presentation and
exponent vectors are comparable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm


class GroupError(ValueError):
    """Malformed group data (wrong exponent length, mismatched groups...)."""


class SizeLimitError(GroupError):
    """Group too large for an exhaustive operation."""


def _invariant_factors(orders) -> tuple[int, ...]:
    """Reduce an arbitrary list of cyclic orders to invariant-factor form."""
    primary: dict[int, list[int]] = {}
    for n in orders:
        if n < 2:
            raise GroupError(f"cyclic factor order must be >= 2, got {n}")
        m = n
        d = 2
        while d * d <= m:
            if m % d == 0:
                e = 0
                while m % d == 0:
                    m //= d
                    e += 1
                primary.setdefault(d, []).append(d**e)
            d += 1
        if m > 1:
            primary.setdefault(m, []).append(m)
    for plist in primary.values():
        plist.sort(reverse=True)
    depth = max((len(v) for v in primary.values()), default=0)
    factors = []
    for k in range(depth):
        f = 1
        for plist in primary.values():
            if k < len(plist):
                f *= plist[k]
        factors.append(f)
    return tuple(sorted(factors))


@dataclass(frozen=True, order=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups Z/r_1 + ... + Z/r_l, r_i | r_{i+1}."""

    factor_orders: tuple[int, ...]

    def __post_init__(self):
        for a, b in itertools.pairwise(self.factor_orders):
            if b % a != 0:
                raise GroupError(
                    f"{self.factor_orders} is not in invariant-factor form; "
                    "use FiniteAbelianGroup.from_factors"
                )
        if any(r < 2 for r in self.factor_orders):
            raise GroupError("factor orders must be >= 2")

    @staticmethod
    def from_factors(orders) -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(_invariant_factors(tuple(orders)))

    @staticmethod
    def parse(text: str) -> "FiniteAbelianGroup":
        """Parse catalog literals like "Z2xZ4" (case-insensitive)."""
        parts = text.strip().lower().split("x")
        orders = []
        for p in parts:
            p = p.strip()
            if not p.startswith("z") or not p[1:].isdigit():
                raise GroupError(f"bad group literal {text!r}")
            orders.append(int(p[1:]))
        return FiniteAbelianGroup.from_factors(orders)

    def __str__(self) -> str:
        return "x".join(f"Z{r}" for r in self.factor_orders) or "Z1"

    @property
    def rank(self) -> int:
        return len(self.factor_orders)

    @property
    def order(self) -> int:
        n = 1
        for r in self.factor_orders:
            n *= r
        return n

    @property
    def exponent(self) -> int:
        return lcm(*self.factor_orders) if self.factor_orders else 1

    def zero(self) -> "GroupClass":
        return GroupClass(self, (0,) * self.rank)

    def cls(self, exponents) -> "GroupClass":
        return GroupClass(self, tuple(int(e) for e in exponents))

    def character(self, values) -> "Character":
        return Character(self, tuple(int(v) for v in values))

    def elements(self):
        for exps in itertools.product(*(range(r) for r in self.factor_orders)):
            yield GroupClass(self, exps)

    def nonzero_elements(self):
        for c in self.elements():
            if not c.is_zero():
                yield c

    def generator(self, i: int) -> "GroupClass":
        exps = [0] * self.rank
        exps[i] = 1
        return GroupClass(self, tuple(exps))

    def subgroups(self):
        """All subgroups, as frozensets of GroupClass.  Brute force, cached."""
        return _subgroups(self)


def _span(classes) -> frozenset:
    classes = set(classes)
    while True:
        new = {a + b for a in classes for b in classes} - classes
        if not new:
            return frozenset(classes)
        classes |= new


@lru_cache(maxsize=None)
def _subgroups(group: "FiniteAbelianGroup"):
    elems = list(group.elements())
    found = {frozenset([group.zero()])}
    frontier = [frozenset([group.zero()])]
    while frontier:
        new = []
        for sub in frontier:
            for g in elems:
                if g in sub:
                    continue
                span = _span(sub | {g})
                if span not in found:
                    found.add(span)
                    new.append(span)
        frontier = new
    return tuple(
        sorted(found, key=lambda s: (len(s), sorted(c.exponents for c in s)))
    )


@dataclass(frozen=True)
class GroupClass:
    """An element a_1 g_1 + ... + a_l g_l, exponents reduced mod factor orders."""

    group: FiniteAbelianGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != self.group.rank:
            raise GroupError(
                f"class {self.exponents} has wrong length for {self.group}"
            )
        object.__setattr__(
            self,
            "exponents",
            tuple(e % r for e, r in zip(self.exponents, self.group.factor_orders)),
        )

    def _check(self, other: "GroupClass"):
        if self.group != other.group:
            raise GroupError("classes belong to different groups")

    def __add__(self, other: "GroupClass") -> "GroupClass":
        self._check(other)
        return GroupClass(
            self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __neg__(self) -> "GroupClass":
        return GroupClass(self.group, tuple(-a for a in self.exponents))

    def __sub__(self, other: "GroupClass") -> "GroupClass":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupClass":
        return GroupClass(self.group, tuple(k * a for a in self.exponents))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def __lt__(self, other: "GroupClass") -> bool:
        return self.exponents < other.exponents


def class_order(g: FiniteAbelianGroup, c: GroupClass) -> int:
    """Exact order of c in g."""
    if c.group != g:
        raise GroupError("class does not belong to the given group")
    return lcm(*(r // gcd(e, r) for e, r in zip(c.exponents, g.factor_orders))) \
        if g.rank else 1


@dataclass(frozen=True)
class Character:
    """A 1-dimensional character; values[i] is the root-of-unity exponent on
    generator i, i.e. chi(g_i) = exp(2*pi*i * values[i] / r_i)."""

    group: FiniteAbelianGroup
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.group.rank:
            raise GroupError("character has wrong length")
        object.__setattr__(
            self,
            "values",
            tuple(v % r for v, r in zip(self.values, self.group.factor_orders)),
        )

    def as_class(self) -> GroupClass:
        return GroupClass(self.group, self.values)

    def __mul__(self, other: "Character") -> "Character":
        if self.group != other.group:
            raise GroupError("characters belong to different groups")
        return Character(
            self.group, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __pow__(self, k: int) -> "Character":
        return Character(self.group, tuple(k * v for v in self.values))


def character_pairing(chi: Character | GroupClass, c: GroupClass) -> int:
    """Exponent k with <chi, c> = exp(2*pi*i*k/N), N the group exponent."""
    vals = chi.values if isinstance(chi, Character) else chi.exponents
    if chi.group != c.group:
        raise GroupError("character and class belong to different groups")
    g = c.group
    N = g.exponent
    return sum((N // r) * v * e for v, e, r in zip(vals, c.exponents, g.factor_orders)) % N


@dataclass(frozen=True)
class GroupAutomorphism:
    """Automorphism given by the images of the generators."""

    group: FiniteAbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __call__(self, c: GroupClass) -> GroupClass:
        if c.group != self.group:
            raise GroupError("class belongs to a different group")
        exps = [0] * self.group.rank
        for e, img in zip(c.exponents, self.images):
            for j, x in enumerate(img):
                exps[j] += e * x
        return GroupClass(self.group, tuple(exps))

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """self after other."""
        return GroupAutomorphism(
            self.group,
            tuple(self(GroupClass(self.group, img)).exponents for img in other.images),
        )

    def inverse(self) -> "GroupAutomorphism":
        elems = list(self.group.elements())
        table = {self(c): c for c in elems}
        return GroupAutomorphism(
            self.group,
            tuple(
                table[self.group.generator(i)].exponents
                for i in range(self.group.rank)
            ),
        )


def enumerate_automorphisms(
    g: FiniteAbelianGroup, bound: int = 256
) -> tuple[GroupAutomorphism, ...]:
    """The full automorphism group, by exhaustive search over generator images.

    A tuple of images defines an endomorphism iff order(image_i) | r_i; it is
    an automorphism iff the images generate.
    """
    if g.order > bound:
        raise SizeLimitError(f"|{g}| = {g.order} exceeds bound {bound}")
    return _automorphisms(g)


@lru_cache(maxsize=None)
def _automorphisms(g: FiniteAbelianGroup) -> tuple[GroupAutomorphism, ...]:
    elems = list(g.elements())
    candidates = [
        [c for c in elems if (c * r).is_zero()] for r in g.factor_orders
    ]
    autos = []

    def grow(span: frozenset, c: GroupClass) -> frozenset:
        # span is a subgroup, so the subgroup generated with c is the union
        # of its translates by multiples of c
        out = set(span)
        shift = c
        while shift not in span:
            out.update(s + shift for s in span)
            shift = shift + c
        return frozenset(out)

    def extend(i, chosen, span):
        if i == g.rank:
            if len(span) == g.order:
                autos.append(
                    GroupAutomorphism(g, tuple(c.exponents for c in chosen))
                )
            return
        # the remaining generators can enlarge the span at most |G_i+1...| times
        remaining = 1
        for r in g.factor_orders[i:]:
            remaining *= r
        if len(span) * remaining < g.order:
            return
        for c in candidates[i]:
            extend(i + 1, chosen + [c], grow(span, c))

    extend(0, [], frozenset([g.zero()]))
    return tuple(autos)


@dataclass(frozen=True)
class GroupRingElement:
    """Element of the integral group ring Z[G]; coefficient map is canonical
    (sorted, zero coefficients dropped)."""

    group: FiniteAbelianGroup
    coeffs: tuple[tuple[tuple[int, ...], int], ...]

    @staticmethod
    def from_dict(group: FiniteAbelianGroup, d) -> "GroupRingElement":
        items = []
        for key, v in d.items():
            if v == 0:
                continue
            exps = key.exponents if isinstance(key, GroupClass) else tuple(key)
            items.append((GroupClass(group, exps).exponents, int(v)))
        items.sort()
        return GroupRingElement(group, tuple(items))

    @staticmethod
    def zero(group: FiniteAbelianGroup) -> "GroupRingElement":
        return GroupRingElement(group, ())

    @staticmethod
    def one(group: FiniteAbelianGroup) -> "GroupRingElement":
        return GroupRingElement(group, ((group.zero().exponents, 1),))

    @staticmethod
    def basis(c: GroupClass, coeff: int = 1) -> "GroupRingElement":
        return GroupRingElement.from_dict(c.group, {c: coeff})

    def to_dict(self) -> dict:
        return {exps: v for exps, v in self.coeffs}

    def coefficient(self, c: GroupClass) -> int:
        return self.to_dict().get(c.exponents, 0)

    def _binop(self, other, f):
        if self.group != other.group:
            raise GroupError("group ring elements over different groups")
        d = self.to_dict()
        for exps, v in other.coeffs:
            d[exps] = f(d.get(exps, 0), v)
        return GroupRingElement.from_dict(self.group, d)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return GroupRingElement(self.group, tuple((e, -v) for e, v in self.coeffs))

    def scale(self, k: int) -> "GroupRingElement":
        if k == 0:
            return GroupRingElement.zero(self.group)
        return GroupRingElement(self.group, tuple((e, k * v) for e, v in self.coeffs))

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        if self.group != other.group:
            raise GroupError("group ring elements over different groups")
        g = self.group
        out: dict[tuple[int, ...], int] = {}
        for e1, v1 in self.coeffs:
            for e2, v2 in other.coeffs:
                key = tuple(
                    (a + b) % r for a, b, r in zip(e1, e2, g.factor_orders)
                )
                out[key] = out.get(key, 0) + v1 * v2
        return GroupRingElement.from_dict(g, out)

    def augmentation(self) -> int:
        """Sum of all coefficients (collapse every class to 1)."""
        return sum(v for _, v in self.coeffs)

    def map_classes(self, f) -> "GroupRingElement":
        """Push coefficients through a class map f: GroupClass -> GroupClass."""
        out: dict[tuple[int, ...], int] = {}
        for exps, v in self.coeffs:
            key = f(GroupClass(self.group, exps)).exponents
            out[key] = out.get(key, 0) + v
        return GroupRingElement.from_dict(self.group, out)

    def is_zero(self) -> bool:
        return not self.coeffs
