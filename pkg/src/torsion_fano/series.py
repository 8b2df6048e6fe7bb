"""Formal power series in t with integral-group-ring coefficients, rational
closed forms with factored denominators, and greedy generator inference.

Series are always truncated at an explicit order; nothing is lazy."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import FiniteAbelianGroup, GroupClass, GroupRingElement


class SeriesError(ValueError):
    pass


class NotAMatchError(SeriesError):
    """Numerator recovery did not terminate below the degree bound."""


class InconsistentSeriesError(SeriesError):
    """The series cannot be the Hilbert series of a connected graded ring."""


@dataclass(frozen=True)
class GradedSeries:
    """Coefficients indexed by degree 0..truncation_order."""

    group: FiniteAbelianGroup
    coefficients: tuple[GroupRingElement, ...]

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, n: int, c: GroupClass | None = None):
        coeff = self.coefficients[n]
        return coeff if c is None else coeff.coefficient(c)

    def class_values(self, c: GroupClass) -> tuple[int, ...]:
        return tuple(x.coefficient(c) for x in self.coefficients)

    def augmentation(self) -> tuple[int, ...]:
        return tuple(x.augmentation() for x in self.coefficients)

    def truncate(self, order: int) -> "GradedSeries":
        if order > self.truncation_order:
            raise SeriesError("cannot extend a truncated series")
        return GradedSeries(self.group, self.coefficients[: order + 1])

    @staticmethod
    def from_table(group, table) -> "GradedSeries":
        """table[n] maps class exponent tuples to integers."""
        return GradedSeries(
            group,
            tuple(GroupRingElement.from_dict(group, d) for d in table),
        )


@dataclass(frozen=True)
class RationalPresentation:
    """numerator(t) / prod over factors (1 - x_c t^w).

    Factors are (class exponents, weight) pairs, a multiset."""

    group: FiniteAbelianGroup
    numerator: tuple[GroupRingElement, ...]
    denominator_factors: tuple[tuple[tuple[int, ...], int], ...] = field(default=())

    @staticmethod
    def make(group, numerator, factors) -> "RationalPresentation":
        num = tuple(
            c if isinstance(c, GroupRingElement) else GroupRingElement.from_dict(group, c)
            for c in numerator
        )
        fac = []
        for cls, w in factors:
            exps = cls.exponents if isinstance(cls, GroupClass) else tuple(cls)
            if w < 1:
                raise SeriesError("denominator weights must be positive")
            fac.append((GroupClass(group, exps).exponents, int(w)))
        return RationalPresentation(group, num, tuple(sorted(fac)))

    @property
    def denominator_degree(self) -> int:
        return sum(w for _, w in self.denominator_factors)


def expand(rp: RationalPresentation, order: int) -> GradedSeries:
    """Exact expansion of the presentation up to t^order."""
    if order < 0:
        raise SeriesError("order must be >= 0")
    g = rp.group
    zero = GroupRingElement.zero(g)
    coeffs = [zero] * (order + 1)
    for n, c in enumerate(rp.numerator[: order + 1]):
        coeffs[n] = c
    for exps, w in rp.denominator_factors:
        # multiply by the geometric series of (1 - x_c t^w)^%-1 in place
        x = GroupRingElement.basis(GroupClass(g, exps))
        for n in range(w, order + 1):
            coeffs[n] = coeffs[n] + coeffs[n - w] * x
    return GradedSeries(g, tuple(coeffs))


def recover_numerator(
    s: GradedSeries, denominator_factors, degree_bound: int
) -> tuple[GroupRingElement, ...]:
    """Multiply s by the denominator; succeed iff everything above
    degree_bound vanishes (up to the truncation order)."""
    g = s.group
    factors = RationalPresentation.make(g, (), denominator_factors).denominator_factors
    total = sum(w for _, w in factors)
    if s.truncation_order < degree_bound + total:
        raise SeriesError(
            f"series truncated at {s.truncation_order}, need at least "
            f"{degree_bound + total}"
        )
    poly = list(s.coefficients)
    for exps, w in factors:
        x = GroupRingElement.basis(GroupClass(g, exps))
        for n in range(len(poly) - 1, w - 1, -1):
            poly[n] = poly[n] - poly[n - w] * x
    tail = [n for n in range(degree_bound + 1, len(poly)) if not poly[n].is_zero()]
    if tail:
        raise NotAMatchError(
            f"nonzero numerator coefficients at degrees {tail}; "
            "wrong denominator guess"
        )
    while len(poly) > 1 and poly[-1].is_zero():
        poly.pop()
    return tuple(poly)


@dataclass(frozen=True)
class GeneratorInference:
    """Greedy minimal generators plus the degrees where the series dips below
    the free ring on them (relation degrees, reported descriptively)."""

    generators: tuple[tuple[int, tuple[int, ...]], ...]  # (degree, class), sorted
    relation_deficits: tuple[tuple[int, tuple[int, ...], int], ...]

    def counter(self):
        out: dict[tuple[int, tuple[int, ...]], int] = {}
        for d, c in self.generators:
            out[(d, c)] = out.get((d, c), 0) + 1
        return out


def infer_generators(s: GradedSeries) -> GeneratorInference:
    """At each degree ascending, compare with the free commutative ring on the
    generators found so far; positive deficits become new generators, negative
    deficits are relations (allowed, recorded)."""
    g = s.group
    zero_cls = g.zero()
    d0 = s.coefficients[0]
    if d0.coefficient(zero_cls) != 1 or d0.augmentation() != 1:
        raise InconsistentSeriesError(
            "degree-0 coefficient is not the delta at the zero class"
        )
    for n, coeff in enumerate(s.coefficients):
        for _, v in coeff.coeffs:
            if v < 0:
                raise InconsistentSeriesError(
                    f"negative coefficient at degree {n}"
                )
    gens: list[tuple[int, tuple[int, ...]]] = []
    relations: list[tuple[int, tuple[int, ...], int]] = []
    for d in range(1, s.truncation_order + 1):
        free = expand(
            RationalPresentation.make(
                g, (GroupRingElement.one(g),), [(c, w) for w, c in gens]
            ),
            d,
        )
        have = free.coefficients[d].to_dict()
        want = s.coefficients[d].to_dict()
        for exps in sorted(set(have) | set(want)):
            deficit = want.get(exps, 0) - have.get(exps, 0)
            if deficit > 0:
                gens.extend([(d, exps)] * deficit)
            elif deficit < 0:
                relations.append((d, exps, -deficit))
    return GeneratorInference(tuple(sorted(gens)), tuple(sorted(relations)))


# ---------------------------------------------------------------------------
# rendering

_ORDER2 = {0: "+", 1: "-"}
_ORDER4 = {0: "+", 1: "i", 2: "-", 3: "-i"}


def sign_shorthand(group: FiniteAbelianGroup, exps) -> str:
    """Bracketed per-generator shorthand, e.g. [+,-] or [-,i]."""
    parts = []
    for e, r in zip(exps, group.factor_orders):
        if r == 2:
            parts.append(_ORDER2[e % 2])
        elif r == 4:
            parts.append(_ORDER4[e % 4])
        else:
            parts.append(str(e))
    return "[" + ",".join(parts) + "]"


def class_monomial(exps) -> str:
    """Render a class as a monomial in e1, e2, ..."""
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"e{i + 1}")
        elif e > 1:
            parts.append(f"e{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def _poly_text(values: tuple[int, ...]) -> str:
    terms = []
    for n, v in enumerate(values):
        if v == 0:
            continue
        if n == 0:
            terms.append(str(v))
        else:
            coeff = "" if v == 1 else ("-" if v == -1 else str(v))
            tpow = "t" if n == 1 else f"t^{n}"
            terms.append(f"{coeff}{tpow}")
    if not terms:
        return "0"
    text = terms[0]
    for term in terms[1:]:
        text += " - " + term[1:] if term.startswith("-") else " + " + term
    return text


def series_text(s: GradedSeries) -> str:
    """One line per class, classes ordered lexicographically."""
    lines = []
    for c in s.group.elements():
        vals = s.class_values(c)
        if any(vals):
            lines.append(f"{class_monomial(c.exponents)}: ({_poly_text(vals)} + ...)")
    return "\n".join(lines) if lines else "0"


def polynomial_text(coeffs: tuple[GroupRingElement, ...]) -> str:
    """Render a group-ring polynomial grouped by class."""
    group = coeffs[0].group
    parts = []
    for c in group.elements():
        vals = tuple(x.coefficient(c) for x in coeffs)
        if any(vals):
            mono = class_monomial(c.exponents)
            body = _poly_text(vals)
            parts.append(body if mono == "1" else f"{mono}*({body})")
    return " + ".join(parts) if parts else "0"
