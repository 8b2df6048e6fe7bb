"""Catalog: the shipped data files (noncyclic basket tables, cover models,
quotient records, cyclic table) with loading, validation and round-tripping.

The data directory defaults to the files packaged with the library and can
be overridden with the TORSION_FANO_DATA environment variable or an explicit
path."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .baskets import Basket, LabeledSingularity, SingularityGerm
from .groups import FiniteAbelianGroup
from .molien import CoverModel, DiagonalAction
from .tables import CyclicBasketTable

DATA_ENV = "TORSION_FANO_DATA"


class CatalogError(ValueError):
    pass


def data_directory(explicit: str | os.PathLike | None = None) -> Path:
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).parent / "data"


@dataclass(frozen=True)
class PaperBasket:
    name: str
    basket: Basket
    printed_as: str = ""
    note: str = ""
    source: str = "paper"


@dataclass(frozen=True)
class QuotientRecord:
    name: str
    aliases: tuple[str, ...]
    cover: CoverModel
    group: FiniteAbelianGroup
    action: DiagonalAction
    claimed_basket_name: str
    claimed_basket: Basket
    claimed_residual: tuple[tuple[SingularityGerm, int], ...]
    metadata: dict = field(default_factory=dict)

    @property
    def quotient_degree(self) -> Fraction:
        return self.cover.degree / self.group.order

    @property
    def full_basket(self) -> Basket:
        """Claimed Bt plus the residual (everywhere-Cartier) germs."""
        extra = []
        for germ, count in self.claimed_residual:
            extra.extend(
                [LabeledSingularity(germ, (0,) * self.group.rank)] * count
            )
        return Basket(self.group, self.claimed_basket.entries + tuple(extra))


def _germ_rows_to_entries(rows, group):
    entries = []
    for row in rows:
        count = row.get("count", 1)
        labels = tuple(row.get("labels", (0,) * group.rank))
        entries.extend(
            [(row["r"], row["a"], labels)] * count
        )
    return entries


@dataclass(frozen=True)
class Catalog:
    baskets: dict[str, PaperBasket]
    covers: dict[str, CoverModel]
    records: dict[str, QuotientRecord]
    table: CyclicBasketTable
    aliases: dict[str, str]

    @staticmethod
    def load(path: str | os.PathLike | None = None) -> "Catalog":
        root = data_directory(path)
        with open(root / "baskets.json") as fh:
            basket_doc = json.load(fh)
        with open(root / "covers.json") as fh:
            cover_doc = json.load(fh)
        with open(root / "records.json") as fh:
            record_doc = json.load(fh)
        table = CyclicBasketTable.load(root / "cyclic_table.json")

        baskets = {}
        for row in basket_doc["baskets"]:
            group = FiniteAbelianGroup.parse(row["group"])
            basket = Basket.of(group, _germ_rows_to_entries(row["entries"], group))
            baskets[row["name"]] = PaperBasket(
                row["name"],
                basket,
                row.get("printed_as", ""),
                row.get("note", ""),
                row.get("source", "paper"),
            )

        trivial = FiniteAbelianGroup(())
        covers = {}
        for row in cover_doc["covers"]:
            basket = Basket.of(
                trivial, _germ_rows_to_entries(row["basket"], trivial)
            )
            covers[row["name"]] = CoverModel(
                row["name"],
                tuple(row["ambient_weights"]),
                tuple(row["equation_degrees"]),
                Fraction(row["degree"]),
                basket,
            )

        records = {}
        aliases = {}
        for row in record_doc["records"]:
            group = FiniteAbelianGroup.parse(row["group"])
            if row["cover"] not in covers:
                raise CatalogError(f"record {row['name']}: unknown cover {row['cover']}")
            if row["claimed_basket"] not in baskets:
                raise CatalogError(
                    f"record {row['name']}: unknown basket {row['claimed_basket']}"
                )
            cover = covers[row["cover"]]
            action = DiagonalAction.make(
                group,
                [tuple(v) for v in row["coordinate_characters"]],
                [tuple(v) for v in row["equation_characters"]],
            )
            claimed = baskets[row["claimed_basket"]].basket
            if claimed.group != group:
                raise CatalogError(
                    f"record {row['name']}: basket group {claimed.group} "
                    f"does not match record group {group}"
                )
            residual = tuple(
                (SingularityGerm(x["r"], x["a"]), x.get("count", 1))
                for x in row.get("claimed_residual", [])
            )
            metadata = {
                k: row[k]
                for k in row
                if k
                not in {
                    "name",
                    "aliases",
                    "cover",
                    "group",
                    "coordinate_characters",
                    "equation_characters",
                    "claimed_basket",
                    "claimed_residual",
                }
            }
            rec = QuotientRecord(
                row["name"],
                tuple(row.get("aliases", [])),
                cover,
                group,
                action,
                row["claimed_basket"],
                claimed,
                residual,
                metadata,
            )
            records[rec.name] = rec
            aliases[rec.name] = rec.name
            for a in rec.aliases:
                if a in aliases:
                    raise CatalogError(f"duplicate record alias {a}")
                aliases[a] = rec.name

        return Catalog(baskets, covers, records, table, aliases)

    def record(self, name: str) -> QuotientRecord:
        if name not in self.aliases:
            raise CatalogError(f"unknown record {name!r}")
        return self.records[self.aliases[name]]

    def baskets_for_group(self, group: FiniteAbelianGroup) -> list[PaperBasket]:
        return [b for b in self.baskets.values() if b.basket.group == group]

    # -- round-trip ----------------------------------------------------------

    def to_json(self) -> dict:
        """Single-document serialization (used for round-trip testing)."""
        basket_rows = []
        for name in sorted(self.baskets):
            pb = self.baskets[name]
            counter = pb.basket.counter()
            rows = [
                {
                    "r": e.germ.r,
                    "a": e.germ.a,
                    "labels": list(e.labels),
                    "count": counter[e],
                }
                for e in sorted(counter)
            ]
            row = {
                "name": pb.name,
                "group": str(pb.basket.group),
                "source": pb.source,
                "entries": rows,
            }
            if pb.printed_as:
                row["printed_as"] = pb.printed_as
            if pb.note:
                row["note"] = pb.note
            basket_rows.append(row)
        cover_rows = []
        for name in sorted(self.covers):
            m = self.covers[name]
            counter = m.basket.counter()
            cover_rows.append(
                {
                    "name": m.name,
                    "ambient_weights": list(m.ambient_weights),
                    "equation_degrees": list(m.equation_degrees),
                    "degree": str(m.degree),
                    "basket": [
                        {"r": e.germ.r, "a": e.germ.a, "count": counter[e]}
                        for e in sorted(counter)
                    ],
                }
            )
        record_rows = []
        for name in sorted(self.records):
            r = self.records[name]
            record_rows.append(
                {
                    "name": r.name,
                    "aliases": list(r.aliases),
                    "cover": r.cover.name,
                    "group": str(r.group),
                    "coordinate_characters": [
                        list(ch.values) for ch in r.action.coordinate_characters
                    ],
                    "equation_characters": [
                        list(ch.values) for ch in r.action.equation_characters
                    ],
                    "claimed_basket": r.claimed_basket_name,
                    "claimed_residual": [
                        {"r": germ.r, "a": germ.a, "count": count}
                        for germ, count in r.claimed_residual
                    ],
                    **{k: r.metadata[k] for k in sorted(r.metadata)},
                }
            )
        return {
            "schema_version": 1,
            "baskets": basket_rows,
            "covers": cover_rows,
            "records": record_rows,
            "cyclic_table": self.table.to_json(),
        }
