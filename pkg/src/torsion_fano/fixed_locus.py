"""Fixed-locus analysis of diagonal actions on weighted complete
intersections: which coordinate strata each group element fixes, how many
points of a general member land on them (weighted Bezout), and the quotient
basket those points predict.

A point of the weighted projective space with support T is fixed by g iff
chi_i(g) = lambda^{w_i} on T for a single root of unity lambda; the fixed
locus of g is the union of such strata.  For a general member the points on
a stratum avoid all proper sub-strata, so interior counts follow from the
closed (Bezout) counts by inclusion-exclusion over the support lattice.
Stacky counts (prod deg / prod w) are converted to coarse point counts by
the generic ambient multiplicity gcd(w_i, i in T).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .baskets import Basket, LabeledSingularity, SingularityGerm
from .groups import FiniteAbelianGroup, GroupClass, character_pairing
from .molien import CoverModel, DiagonalAction, monomial_space


class FixedLocusError(ValueError):
    pass


@dataclass(frozen=True)
class StratumData:
    support: tuple[int, ...]
    weights: tuple[int, ...]
    stabilizer: tuple[tuple[int, ...], ...]  # exponent tuples, identity included
    ambient_multiplicity: int  # gcd of the weights on the support
    nonzero_equations: tuple[int, ...]
    expected_dimension: int
    closed_count: Fraction  # stacky Bezout count of Y on the closed stratum
    interior_points: int  # coarse count of points with support exactly T
    quotient_points: int = 0
    germ: SingularityGerm | None = None
    labels: tuple[int, ...] | None = None

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)


@dataclass(frozen=True)
class FixedLocusReport:
    group: FiniteAbelianGroup
    strata: tuple[StratumData, ...]
    predicted_basket: Basket | None
    warnings: tuple[str, ...] = field(default=())
    errors: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.errors

    def fixed_points_of(self, g: GroupClass) -> int:
        """Coarse count of general-member points fixed by g (beyond Y itself)."""
        return sum(
            s.interior_points
            for s in self.strata
            if g.exponents in s.stabilizer and s.stabilizer_order > 1
        )

    def strata_of(self, g: GroupClass) -> list[StratumData]:
        """Maximal strata fixed pointwise by g."""
        mine = [s for s in self.strata if g.exponents in s.stabilizer]
        out = []
        for s in mine:
            if not any(
                s is not t and set(s.support) < set(t.support) for t in mine
            ):
                out.append(s)
        return out


def _lambda_exponents(action, weights, support, g, M, N):
    """All a in [0, M) with w_i * a = exponent_M(chi_i(g)) mod M on support."""
    targets = {
        i: character_pairing(action.coordinate_characters[i], g) * (M // N) % M
        for i in support
    }
    return [
        a
        for a in range(M)
        if all((weights[i] * a - targets[i]) % M == 0 for i in support)
    ]


def _terminal_form(exponents_base_d: list[int], d: int):
    """Given tangent exponents of a generator h of mu_d, find m with the
    weights of h^m equal to {1, a, d-a}; returns (m, a) or None."""
    for m in range(1, d):
        if gcd(m, d) != 1:
            continue
        w = sorted((m * e) % d for e in exponents_base_d)
        for a in range(1, d):
            if gcd(a, d) == 1 and w == sorted([1, a, d - a]):
                return m, a
    return None


def fixed_locus_analysis(
    model: CoverModel, action: DiagonalAction
) -> FixedLocusReport:
    group = action.group
    weights = model.ambient_weights
    m = len(weights)
    N = max(group.exponent, 1)
    M = N * lcm(*weights)
    elements = list(group.elements())

    supports = []
    for size in range(1, m + 1):
        supports.extend(itertools.combinations(range(m), size))

    warnings: list[str] = []
    errors: list[str] = []

    # stabilizer and lambda data per support
    stab: dict[tuple[int, ...], list[GroupClass]] = {}
    lam: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    for T in supports:
        members = []
        for g in elements:
            sols = _lambda_exponents(action, weights, T, g, M, N)
            if sols:
                members.append(g)
                lam[(T, g.exponents)] = sols[0]
        stab[T] = members

    full = tuple(range(m))
    if len(stab[full]) > 1:
        errors.append(
            "action is not effective on the ambient space: "
            f"{[g.exponents for g in stab[full] if not g.is_zero()]} act as scalars"
        )

    # equation restrictions and closed stacky counts
    nonzero_eqs: dict[tuple[int, ...], tuple[int, ...]] = {}
    closed: dict[tuple[int, ...], Fraction] = {}
    expected_dim: dict[tuple[int, ...], int] = {}
    for T in supports:
        nz = tuple(
            k
            for k in range(len(model.equation_degrees))
            if monomial_space(
                model,
                action,
                model.equation_degrees[k],
                action.equation_characters[k],
                support=T,
            )
        )
        nonzero_eqs[T] = nz
        dim = len(T) - 1 - len(nz)
        expected_dim[T] = dim
        if dim < 0:
            closed[T] = Fraction(0)
        elif dim == 0:
            num = 1
            for k in nz:
                num *= model.equation_degrees[k]
            den = 1
            for i in T:
                den *= weights[i]
            closed[T] = Fraction(num, den)
        else:
            closed[T] = Fraction(-1)  # positive-dimensional marker
            if len(stab[T]) > 1 and len(T) < m:
                errors.append(
                    f"stratum {T} has positive-dimensional intersection with a "
                    f"general member but nontrivial stabilizer "
                    f"{[g.exponents for g in stab[T] if not g.is_zero()]}"
                )

    # interior (stacky) counts by inclusion-exclusion, ascending support size;
    # Bezout only counts honestly at expected dimension 0, an overdetermined
    # stratum has empty interior for a general member, and a positive-
    # dimensional one is marked.
    interior_stacky: dict[tuple[int, ...], Fraction] = {}
    for T in supports:
        if expected_dim[T] > 0:
            interior_stacky[T] = Fraction(-1)
            continue
        if expected_dim[T] < 0:
            interior_stacky[T] = Fraction(0)
            continue
        val = closed[T]
        for S in supports:
            if set(S) < set(T) and interior_stacky.get(S, Fraction(0)) > 0:
                val -= interior_stacky[S]
        if val < 0:
            errors.append(f"negative interior count on stratum {T}")
            val = Fraction(0)
        interior_stacky[T] = val

    strata_records: list[StratumData] = []
    predicted: list[LabeledSingularity] = []

    for T in supports:
        H = stab[T]
        if len(H) <= 1:
            continue
        st_interior = interior_stacky[T]
        if st_interior < 0:
            # positive-dimensional; already flagged above
            strata_records.append(
                StratumData(
                    T,
                    tuple(weights[i] for i in T),
                    tuple(sorted(g.exponents for g in H)),
                    gcd(*(weights[i] for i in T)),
                    nonzero_eqs[T],
                    expected_dim[T],
                    Fraction(-1),
                    -1,
                )
            )
            continue
        e_T = gcd(*(weights[i] for i in T))
        coarse = st_interior * e_T
        if coarse.denominator != 1:
            errors.append(f"non-integral interior count {coarse} on stratum {T}")
            continue
        coarse = int(coarse)
        record = StratumData(
            T,
            tuple(weights[i] for i in T),
            tuple(sorted(g.exponents for g in H)),
            e_T,
            nonzero_eqs[T],
            expected_dim[T],
            closed[T],
            coarse,
        )
        if coarse == 0:
            strata_records.append(record)
            continue
        # points with symmetry: need a cyclic stabilizer, an honest quotient
        # germ, and orbit grouping
        d = len(H)
        gens = [g for g in H if _class_order_in(H, g) == d]
        if not gens:
            errors.append(
                f"stratum {T} carries {coarse} points with noncyclic "
                f"stabilizer of order {d}"
            )
            strata_records.append(record)
            continue
        if e_T > 1:
            errors.append(
                f"stratum {T} mixes ambient multiplicity {e_T} with stabilizer "
                f"order {d}; unsupported"
            )
            strata_records.append(record)
            continue
        h = min(gens, key=lambda g: g.exponents)
        a_exp = lam[(T, h.exponents)]
        tangent: list[int] = [0] * (len(T) - 1)
        for j in range(m):
            if j in T:
                continue
            expo_M = (
                character_pairing(action.coordinate_characters[j], h) * (M // N)
                - a_exp * weights[j]
            ) % M
            if (expo_M * d) % M != 0:
                errors.append(f"stratum {T}: tangent weight not in mu_{d}")
                break
            tangent.append(expo_M * d // M)
        else:
            # every equation's differential kills one tangent direction of its
            # own weight, whether or not the equation restricts to zero on the
            # stratum (general member)
            ok = True
            for k in range(len(model.equation_degrees)):
                expo_M = (
                    character_pairing(action.equation_characters[k], h) * (M // N)
                    - a_exp * model.equation_degrees[k]
                ) % M
                beta = expo_M * d // M
                if beta in tangent:
                    tangent.remove(beta)
                else:
                    errors.append(
                        f"stratum {T}: equation {k} removes no tangent "
                        f"direction of weight {beta} (quasi-smoothness fails)"
                    )
                    ok = False
                    break
            if ok:
                if len(tangent) != 3 or any(t % d == 0 for t in tangent):
                    errors.append(
                        f"stratum {T}: tangent weights {tangent} are not an "
                        "isolated terminal configuration"
                    )
                else:
                    form = _terminal_form(tangent, d)
                    if form is None:
                        errors.append(
                            f"stratum {T}: tangent weights {tangent} base {d} "
                            "are not of the form (1, a, -a)"
                        )
                    else:
                        mpow, a = form
                        hprime = mpow * h
                        labels = []
                        for i in range(group.rank):
                            dual = group.character(
                                tuple(1 if j == i else 0 for j in range(group.rank))
                            )
                            e_N = character_pairing(dual, hprime)
                            labels.append((e_N * d) // N % d)
                        orbit = group.order // d
                        if coarse % orbit != 0:
                            errors.append(
                                f"stratum {T}: {coarse} points do not group "
                                f"into free orbits of size {orbit}"
                            )
                        else:
                            qpoints = coarse // orbit
                            germ = SingularityGerm(d, a)
                            record = StratumData(
                                T,
                                record.weights,
                                record.stabilizer,
                                e_T,
                                record.nonzero_equations,
                                record.expected_dimension,
                                record.closed_count,
                                coarse,
                                qpoints,
                                germ,
                                tuple(labels),
                            )
                            predicted.extend(
                                [LabeledSingularity(germ, tuple(labels))] * qpoints
                            )
        strata_records.append(record)

    # free-orbit part coming from the cover's own singular points
    for germ_entry, count in model.basket.counter().items():
        if count % group.order != 0:
            errors.append(
                f"cover germ {germ_entry} count {count} not divisible by "
                f"|G| = {group.order}; free-orbit grouping fails"
            )
            continue
        plain = LabeledSingularity(germ_entry.germ, (0,) * group.rank)
        predicted.extend([plain] * (count // group.order))

    basket = None
    if not errors:
        basket = Basket(group, tuple(predicted))
    return FixedLocusReport(
        group, tuple(strata_records), basket, tuple(warnings), tuple(errors)
    )


def _class_order_in(subgroup, g: GroupClass) -> int:
    k = 1
    x = g
    while not x.is_zero():
        x = x + g
        k += 1
    return k
