"""The quotient-verification pipeline: run every check a catalog record
claims, two-sided (Riemann-Roch against Molien averaging), and report
machine-readable verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .baskets import canonicalize
from .catalog import QuotientRecord
from .engine import check_basket
from .fixed_locus import fixed_locus_analysis
from .groups import FiniteAbelianGroup, GroupRingElement
from .molien import CoverModel, MolienError, molien_series
from .riemann_roch import (
    FanoNumericalData,
    RiemannRochError,
    equivariant_hilbert_series,
    torsion_vanishing_check,
)
from .series import RationalPresentation, expand, infer_generators
from .tables import CyclicBasketTable


def cover_series(model: CoverModel, order: int) -> tuple[int, ...]:
    """prod (1 - t^d) / prod (1 - t^w) expanded over the trivial group."""
    trivial = FiniteAbelianGroup(())
    poly = [1]
    for d in model.equation_degrees:
        new = poly + [0] * d
        for i, c in enumerate(poly):
            new[i + d] -= c
        poly = new
    numerator = tuple(
        GroupRingElement.from_dict(trivial, {(): c}) for c in poly
    )
    rp = RationalPresentation.make(
        trivial, numerator, [((), w) for w in model.ambient_weights]
    )
    return expand(rp, order).augmentation()


@dataclass(frozen=True)
class RecordVerification:
    record: str
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_json(self) -> dict:
        return {
            "record": self.record,
            "verdict": "pass" if self.ok else "fail",
            "checks": [
                {"check": name, "ok": ok, "detail": detail}
                for name, ok, detail in self.checks
            ],
        }


def verify_record(
    record: QuotientRecord,
    table: CyclicBasketTable,
    order: int = 12,
    augmentation_order: int = 20,
) -> RecordVerification:
    checks: list[tuple[str, bool, str]] = []
    group = record.group
    degree = record.quotient_degree
    data = FanoNumericalData(degree, record.full_basket)

    expected = record.cover.degree / group.order
    issues = data.validity_issues()
    checks.append(
        (
            "degree",
            degree == expected and not issues,
            f"(-K)^3 = {record.cover.degree}/{group.order} = {degree}"
            + ("; " + "; ".join(issues) if issues else ""),
        )
    )

    action_issues = record.action.validate_against(record.cover)
    checks.append(
        (
            "action",
            not action_issues,
            "; ".join(action_issues) if action_issues else
            "all equation character spaces nonempty",
        )
    )

    basket_report = check_basket(record.claimed_basket, table)
    checks.append(
        (
            "basket-admissible",
            basket_report.ok,
            "all table constraints pass"
            if basket_report.ok
            else "; ".join(f"{n}: {w}" for n, w in basket_report.violations()),
        )
    )

    vanishing = torsion_vanishing_check(data)
    checks.append(
        (
            "torsion-vanishing",
            vanishing.ok,
            "chi(c) = 0 for all nonzero classes"
            if vanishing.ok
            else f"failures at {vanishing.failures()}",
        )
    )

    rr = None
    try:
        rr = equivariant_hilbert_series(data, max(order, augmentation_order))
    except RiemannRochError as exc:
        checks.append(("rr-vs-molien", False, f"RR series undefined: {exc}"))
        checks.append(("augmentation", False, "RR series undefined"))
        checks.append(("generators-vs-action", False, "RR series undefined"))
    if rr is not None:
        try:
            molien = molien_series(record.cover, record.action, order)
            agree = rr.truncate(order).coefficients == molien.coefficients
            detail = f"per-class equality through t^{order}"
            if not agree:
                for n in range(order + 1):
                    if rr.coefficients[n] != molien.coefficients[n]:
                        detail = (
                            f"first mismatch at degree {n}: "
                            f"RR {rr.coefficients[n].to_dict()} vs "
                            f"Molien {molien.coefficients[n].to_dict()}"
                        )
                        break
        except MolienError as exc:
            agree, detail = False, f"Molien series undefined: {exc}"
        checks.append(("rr-vs-molien", agree, detail))

        cover_vals = cover_series(record.cover, augmentation_order)
        aug = rr.truncate(augmentation_order).augmentation()
        checks.append(
            (
                "augmentation",
                aug == cover_vals,
                f"class sums equal the cover series through t^{augmentation_order}",
            )
        )

        inferred = infer_generators(rr.truncate(order))
        declared = sorted(
            (w, ch.values)
            for w, ch in zip(
                record.cover.ambient_weights, record.action.coordinate_characters
            )
        )
        got = sorted(inferred.generators)
        checks.append(
            (
                "generators-vs-action",
                got == declared,
                f"inferred {got}"
                + ("" if got == declared else f"; declared {declared}"),
            )
        )

    locus = fixed_locus_analysis(record.cover, record.action)
    if not locus.ok:
        checks.append(("fixed-locus", False, "; ".join(locus.errors)))
    else:
        predicted = canonicalize(locus.predicted_basket)
        claimed = canonicalize(record.full_basket)
        checks.append(
            (
                "fixed-locus",
                predicted.entries == claimed.entries,
                "predicted basket matches the claimed basket up to "
                "relabeling" if predicted.entries == claimed.entries else
                f"predicted {predicted} vs claimed {claimed}",
            )
        )

    return RecordVerification(record.name, tuple(checks))
