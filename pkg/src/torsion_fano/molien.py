"""Ground-truth equivariant Hilbert series of diagonal finite-abelian actions
on quasi-smooth weighted complete intersections, by exact character averaging
in Z[zeta_N]."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .baskets import Basket
from .cyclotomic import Cyclotomic, NotRationalError
from .groups import (
    Character,
    FiniteAbelianGroup,
    GroupClass,
    GroupRingElement,
    character_pairing,
)
from .series import GradedSeries


class MolienError(ValueError):
    pass


class RegularityCharacterError(MolienError):
    """Averaging produced a non-integer: equations cannot form a regular
    sequence with the declared characters."""


class EmptyLinearSystemError(MolienError):
    """An equation's character space contains no monomials."""


@dataclass(frozen=True)
class CoverModel:
    """A quasi-smooth weighted complete intersection Fano threefold."""

    name: str
    ambient_weights: tuple[int, ...]
    equation_degrees: tuple[int, ...]
    degree: Fraction
    basket: Basket  # over the trivial group

    def __post_init__(self):
        object.__setattr__(self, "degree", Fraction(self.degree))
        if len(self.ambient_weights) - len(self.equation_degrees) != 4:
            raise MolienError(
                f"{self.name}: expected a threefold "
                "(#weights - #equations must be 4)"
            )
        index = sum(self.ambient_weights) - sum(self.equation_degrees)
        if index < 1:
            raise MolienError(f"{self.name}: Fano index {index} < 1")
        expected = Fraction(index**3)
        for d in self.equation_degrees:
            expected *= d
        for w in self.ambient_weights:
            expected /= w
        if expected != self.degree:
            raise MolienError(
                f"{self.name}: degree {self.degree} != computed {expected}"
            )

    @property
    def fano_index(self) -> int:
        return sum(self.ambient_weights) - sum(self.equation_degrees)


@dataclass(frozen=True)
class DiagonalAction:
    """One character per ambient coordinate and one per equation."""

    group: FiniteAbelianGroup
    coordinate_characters: tuple[Character, ...]
    equation_characters: tuple[Character, ...]

    @staticmethod
    def make(group, coord_values, equation_values) -> "DiagonalAction":
        return DiagonalAction(
            group,
            tuple(group.character(v) for v in coord_values),
            tuple(group.character(v) for v in equation_values),
        )

    def validate_against(self, model: CoverModel) -> list[str]:
        issues = []
        if len(self.coordinate_characters) != len(model.ambient_weights):
            issues.append("coordinate character count != ambient weight count")
        if len(self.equation_characters) != len(model.equation_degrees):
            issues.append("equation character count != equation count")
        if issues:
            return issues
        for k in range(len(model.equation_degrees)):
            try:
                invariant_equation_space(model, self, k)
            except EmptyLinearSystemError as exc:
                issues.append(str(exc))
        return issues


def monomial_space(
    model: CoverModel,
    action: DiagonalAction,
    degree: int,
    char: Character,
    support=None,
) -> list[tuple[int, ...]]:
    """All exponent tuples of weighted degree `degree` whose character is
    `char`, optionally restricted to a coordinate support set."""
    weights = model.ambient_weights
    m = len(weights)
    support = set(range(m)) if support is None else set(support)
    out = []

    def rec(i, left, exps):
        if i == m:
            if left == 0:
                total = action.group.zero()
                for e, chi in zip(exps, action.coordinate_characters):
                    total = total + e * chi.as_class()
                if total.exponents == char.values:
                    out.append(tuple(exps))
            return
        if i not in support:
            rec(i + 1, left, exps + [0])
            return
        for e in range(left // weights[i] + 1):
            rec(i + 1, left - e * weights[i], exps + [e])

    rec(0, degree, [])
    return out


def monomial_text(exps: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def invariant_equation_space(
    model: CoverModel, action: DiagonalAction, eq_index: int
):
    """Monomial count and list for one equation's declared character."""
    d = model.equation_degrees[eq_index]
    chi = action.equation_characters[eq_index]
    monos = monomial_space(model, action, d, chi)
    if not monos:
        raise EmptyLinearSystemError(
            f"equation {eq_index} (degree {d}, character {chi.values}) "
            "has an empty monomial space"
        )
    return len(monos), monos


def _element_series(
    model: CoverModel, action: DiagonalAction, g: GroupClass, order: int
) -> list[Cyclotomic]:
    """Trace generating function at g:
    prod_eqs (1 - chi_eq(g) t^d) / prod_vars (1 - chi_var(g) t^w)."""
    N = max(action.group.exponent, 1)
    zero = Cyclotomic.integer(N, 0)
    coeffs = [zero] * (order + 1)
    coeffs[0] = Cyclotomic.integer(N, 1)
    for chi, d in zip(action.equation_characters, model.equation_degrees):
        if d <= order:
            root = Cyclotomic.root(N, character_pairing(chi, g))
            for n in range(order, d - 1, -1):
                coeffs[n] = coeffs[n] - coeffs[n - d] * root
    for chi, w in zip(action.coordinate_characters, model.ambient_weights):
        root = Cyclotomic.root(N, character_pairing(chi, g))
        for n in range(w, order + 1):
            coeffs[n] = coeffs[n] + coeffs[n - w] * root
    return coeffs


def molien_series(
    model: CoverModel, action: DiagonalAction, order: int
) -> GradedSeries:
    """Class-c component = 1/|G| sum_g <c,g>^{-1} Tr(g | R_n); all outputs
    must be rational integers (regular-sequence assumption)."""
    if order < 0:
        raise MolienError("order must be >= 0")
    group = action.group
    N = max(group.exponent, 1)
    per_element = {
        g: _element_series(model, action, g, order) for g in group.elements()
    }
    table = []
    for n in range(order + 1):
        row = {}
        for c in group.elements():
            total = Cyclotomic.integer(N, 0)
            for g, series in per_element.items():
                root = Cyclotomic.root(N, -character_pairing(c, g))
                total = total + root * series[n]
            try:
                value = total.as_integer()
            except NotRationalError as exc:
                raise RegularityCharacterError(
                    f"class {c.exponents} degree {n}: averaged trace is not "
                    f"rational"
                ) from exc
            if value % group.order != 0:
                raise RegularityCharacterError(
                    f"class {c.exponents} degree {n}: trace sum {value} not "
                    f"divisible by |G| = {group.order}"
                )
            if value < 0:
                raise RegularityCharacterError(
                    f"class {c.exponents} degree {n}: negative dimension "
                    f"{value // group.order}; equation characters are "
                    "inconsistent"
                )
            row[c] = value // group.order
        table.append(row)
    return GradedSeries(
        group,
        tuple(GroupRingElement.from_dict(group, row) for row in table),
    )
