"""Articulatory feature inventory: the universe of phones.

Each phone maps to a vector of 24 ternary features (+1 / -1 / 0). The
table ships with the package as CSV; this module loads, validates, and
queries it. Inventories are immutable after load and safe to share
across threads.
"""
from __future__ import annotations

import csv
import hashlib
import io
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

FEATURE_COUNT = 24

_CELL_VALUES = {"+": 1, "-": -1, "0": 0}
_VALUE_CELLS = {1: "+", -1: "-", 0: "0"}


class InventoryLoadError(ValueError):
    """Malformed feature table."""


class UnknownPhoneError(KeyError):
    """Lookup of a phone that is not in the inventory."""

    def __init__(self, phone: str):
        super().__init__(phone)
        self.phone = phone

    def __str__(self) -> str:
        return f"phone not in inventory: {self.phone!r}"


@dataclass(frozen=True)
class FeatureVector:
    """24 ternary feature values for one phone, in table-header order."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != FEATURE_COUNT:
            raise ValueError(f"feature vector needs {FEATURE_COUNT} values, got {len(self.values)}")
        for v in self.values:
            if v not in (-1, 0, 1):
                raise ValueError(f"feature value must be one of -1, 0, +1; got {v!r}")

    def __len__(self) -> int:
        return FEATURE_COUNT


def hamming(a: FeatureVector, b: FeatureVector) -> int:
    """Number of feature positions where the two vectors differ."""
    return sum(1 for x, y in zip(a.values, b.values) if x != y)


class PhoneInventory:
    """Immutable phone -> FeatureVector mapping plus table metadata."""

    def __init__(
        self,
        entries: Mapping[str, FeatureVector],
        feature_names: Iterable[str],
        source_digest: str,
    ):
        self._entries = dict(entries)
        self.feature_names = tuple(feature_names)
        self.source_digest = source_digest
        if len(self.feature_names) != FEATURE_COUNT:
            raise InventoryLoadError(
                f"expected {FEATURE_COUNT} feature names, got {len(self.feature_names)}"
            )
        for phone in self._entries:
            if not phone:
                raise InventoryLoadError("empty phone key")
        # int8 matrix view used by the metric hot path.
        self._arrays = {
            phone: np.array(vec.values, dtype=np.int8)
            for phone, vec in self._entries.items()
        }
        self._max_phone_length = max((len(p) for p in self._entries), default=0)
        self._alphabet = frozenset(ch for p in self._entries for ch in p)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, phone: str) -> bool:
        return phone in self._entries

    def phones(self) -> tuple[str, ...]:
        """All phone keys in table order."""
        return tuple(self._entries)

    def feature_vector(self, phone: str) -> FeatureVector:
        try:
            return self._entries[phone]
        except KeyError:
            raise UnknownPhoneError(phone) from None

    def feature_array(self, phone: str) -> np.ndarray | None:
        """int8 feature array, or None for out-of-inventory phones."""
        return self._arrays.get(phone)

    @property
    def max_phone_length(self) -> int:
        return self._max_phone_length

    @property
    def alphabet(self) -> frozenset[str]:
        """Every character that occurs in some phone key."""
        return self._alphabet

    def to_csv(self) -> str:
        """Serialize back to the table format (round-trip stable)."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["ipa", *self.feature_names])
        for phone, vec in self._entries.items():
            writer.writerow([phone] + [_VALUE_CELLS[v] for v in vec.values])
        return buf.getvalue()


def load_feature_table(source: str) -> PhoneInventory:
    """Parse a feature table from CSV text.

    Expected layout: header ``ipa,<24 feature names>``, one phone per
    row, cells in ``{+,-,0}``. Phone keys are NFC-normalized; a
    duplicate key (before or after normalization) is an error.
    """
    reader = csv.reader(io.StringIO(source))
    try:
        header = next(reader)
    except StopIteration:
        raise InventoryLoadError("empty feature table") from None
    if len(header) != FEATURE_COUNT + 1:
        raise InventoryLoadError(
            f"header must have 1 phone column + {FEATURE_COUNT} feature columns, "
            f"got {len(header)} columns"
        )
    feature_names = header[1:]
    entries: dict[str, FeatureVector] = {}
    for row_number, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != FEATURE_COUNT + 1:
            raise InventoryLoadError(
                f"row {row_number}: expected {FEATURE_COUNT} feature cells, got {len(row) - 1}"
            )
        phone = unicodedata.normalize("NFC", row[0])
        if not phone:
            raise InventoryLoadError(f"row {row_number}: empty phone")
        if phone in entries:
            raise InventoryLoadError(f"row {row_number}: duplicate phone {phone!r}")
        values = []
        for cell in row[1:]:
            if cell not in _CELL_VALUES:
                raise InventoryLoadError(
                    f"row {row_number}: illegal feature symbol {cell!r} (must be +, -, or 0)"
                )
            values.append(_CELL_VALUES[cell])
        entries[phone] = FeatureVector(tuple(values))
    digest = hashlib.sha256(source.encode("utf-8")).hexdigest()
    return PhoneInventory(entries, feature_names, digest)


def load_feature_table_file(path: str | Path) -> PhoneInventory:
    return load_feature_table(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_inventory() -> PhoneInventory:
    """The packaged feature table, loaded once per process."""
    text = resources.files("ipakit").joinpath("data/feature_table.csv").read_text(encoding="utf-8")
    return load_feature_table(text)
