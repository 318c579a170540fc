"""Named group catalog: imprimitive kits, aliases, and JSON definition files.

Group definition files are JSON documents::

    {
      "name": "H3",
      "rank": 3,
      "conductor": 5,
      "generators": [ [ [entry, ...], ... ], ... ],
      "expected": {"order": 120, "reflections": 15,
                   "degrees": [2, 6, 10], "irreducible": true}
    }

where each matrix entry is a list of ``[k, num, den]`` triples meaning
``sum (num/den) * zeta_N^k``.  Files are treated as untrusted input: the
loader re-enumerates the group and checks the expected order, reflection
count, degrees and irreducibility before handing the table out.

Aliases: A_n / H3 / H4 / G4 resolve to shipped definition files carrying
irreducible rank-n realizations; B_n = G(2,1,n), D_n = G(2,2,n) and
I2(m) = G(m,m,2) resolve to imprimitive kits.  ``G(de,e,n)`` syntax reaches
any imprimitive group directly.  The COXKIT_DATA environment variable names a
directory searched first for ``<name>.json``, so a user catalog can extend or
override the shipped one.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .cyclotomic import CycloNum, euler_phi
from .errors import IntegrityError, UsageError
from .groups import (
    DEFAULT_CAP,
    GroupTable,
    build_imprimitive,
    enumerate_group,
    imprimitive_order,
)
from .invariants import degrees_and_exponents
from .linalg import Matrix

_IMPRIMITIVE_RE = re.compile(r"^G\((\d+),(\d+),(\d+)\)$")
_I2_RE = re.compile(r"^I2\((\d+)\)$")
_SERIES_RE = re.compile(r"^([ABD])(\d+)$")
_FILE_ALIASES = {"A2", "A3", "A4", "H3", "H4", "G4"}


@dataclass(frozen=True)
class GroupSpec:
    """Parsed group descriptor: an imprimitive triple or a definition file."""

    name: str
    imprimitive: Optional[tuple[int, int, int]] = None  # (d, e, n) for G(de,e,n)
    path: Optional[str] = None


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``G(de,e,n)``, an alias (A3, B3, D4, I2(5), H3, H4, G4), or a
    path to a definition file."""
    text = text.strip()
    m = _IMPRIMITIVE_RE.match(text)
    if m:
        de, e, n = (int(x) for x in m.groups())
        if e == 0 or de % e != 0:
            raise UsageError(f"{text}: second parameter must divide the first")
        d = de // e
        if (de, n) == (1, 1):
            raise UsageError(f"{text}: G(1,1,1) is not a valid group spec")
        return GroupSpec(text, imprimitive=(d, e, n))
    m = _I2_RE.match(text)
    if m:
        k = int(m.group(1))
        if k < 3:
            raise UsageError(f"{text}: dihedral parameter must be >= 3")
        return GroupSpec(text, imprimitive=(1, k, 2))
    m = _SERIES_RE.match(text)
    if m:
        series, n = m.group(1), int(m.group(2))
        if n < 1:
            raise UsageError(f"{text}: rank must be positive")
        if series == "A":
            # irreducible rank-n realization ships as a data file
            if text in _FILE_ALIASES:
                return GroupSpec(text, path=text)
            raise UsageError(
                f"{text}: no shipped realization; use G(1,1,{n + 1}) for the "
                "permutation realization or provide a definition file"
            )
        if series == "B":
            return GroupSpec(text, imprimitive=(2, 1, n))
        return GroupSpec(text, imprimitive=(1, 2, n))  # D series
    if text in _FILE_ALIASES:
        return GroupSpec(text, path=text)
    if text.endswith(".json") or "/" in text or os.sep in text:
        return GroupSpec(Path(text).stem, path=text)
    raise UsageError(f"unrecognized group spec {text!r}")


def _entry_to_cyclo(entry, conductor: int) -> CycloNum:
    deg = euler_phi(conductor)
    coeffs = [Fraction(0)] * deg
    for triple in entry:
        if len(triple) != 3:
            raise UsageError("matrix entries must be lists of [k, num, den]")
        k, num, den = (int(v) for v in triple)
        if den == 0:
            raise UsageError("zero denominator in matrix entry")
        term = CycloNum.rational(Fraction(num, den), conductor) * root_of_unity(
            conductor, k
        )
        coeffs = [a + b for a, b in zip(coeffs, term.coeffs)]
    return CycloNum(conductor, coeffs)


def _cyclo_to_entry(x: CycloNum) -> list[list[int]]:
    return [
        [k, f.numerator, f.denominator]
        for k, f in enumerate(x.coeffs)
        if f != 0
    ]


def matrices_to_json(name: str, gens: Sequence[Matrix], expected: dict) -> dict:
    rank_n = gens[0].n
    conductor = gens[0].conductor
    return {
        "name": name,
        "rank": rank_n,
        "conductor": conductor,
        "generators": [
            [[_cyclo_to_entry(x) for x in row] for row in g.rows] for g in gens
        ],
        "expected": expected,
    }


def load_definition(doc: dict) -> tuple[str, list[Matrix], dict]:
    """Parse a definition document into generator matrices (no validation)."""
    try:
        name = str(doc["name"])
        rank_n = int(doc["rank"])
        conductor = int(doc["conductor"])
        raw_gens = doc["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed group definition: {exc}") from exc
    if rank_n < 1 or conductor < 1 or not raw_gens:
        raise UsageError("group definition has invalid rank/conductor/generators")
    gens = []
    for raw in raw_gens:
        if len(raw) != rank_n or any(len(row) != rank_n for row in raw):
            raise UsageError("generator matrix is not rank x rank")
        gens.append(
            Matrix(
                [[_entry_to_cyclo(e, conductor) for e in row] for row in raw]
            )
        )
    return name, gens, dict(doc.get("expected", {}))


def _data_file(name: str) -> Optional[str]:
    override_dir = os.environ.get("COXKIT_DATA")
    if override_dir:
        candidate = Path(override_dir) / f"{name.lower()}.json"
        if candidate.is_file():
            return str(candidate)
    ref = resources.files("coxkit").joinpath(f"data/{name.lower()}.json")
    if ref.is_file():
        return str(ref)
    return None


def _validate_table(name: str, table: GroupTable, expected: dict) -> None:
    if "order" in expected and table.order != expected["order"]:
        raise IntegrityError(
            f"{name}: enumerated order {table.order} != expected {expected['order']}"
        )
    if "reflections" in expected and len(table.reflections) != expected["reflections"]:
        raise IntegrityError(
            f"{name}: found {len(table.reflections)} reflections, expected "
            f"{expected['reflections']}"
        )
    if "degrees" in expected:
        dd = degrees_and_exponents(table)
        if list(dd.degrees) != list(expected["degrees"]):
            raise IntegrityError(
                f"{name}: degrees {dd.degrees} != expected {tuple(expected['degrees'])}"
            )
    if "irreducible" in expected and table.is_irreducible() != bool(
        expected["irreducible"]
    ):
        raise IntegrityError(f"{name}: irreducibility check failed")


def load_group(spec: str | GroupSpec, cap: int = DEFAULT_CAP) -> GroupTable:
    """Resolve a group spec and enumerate it, validating definition files."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if spec.imprimitive is not None:
        d, e, n = spec.imprimitive
        table = enumerate_group(build_imprimitive(d, e, n), cap=cap)
        if table.order != imprimitive_order(d, e, n):
            raise IntegrityError(
                f"{spec.name}: enumerated order {table.order} disagrees with "
                f"(de)^n n!/e = {imprimitive_order(d, e, n)}"
            )
        return table
    assert spec.path is not None
    path = spec.path
    if not os.path.isfile(path):
        resolved = _data_file(spec.path if "/" not in spec.path else spec.name)
        if resolved is None:
            raise UsageError(f"no definition file for group {spec.name!r}")
        path = resolved
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    name, gens, expected = load_definition(doc)
    table = enumerate_group(gens, cap=cap)
    _validate_table(name, table, expected)
    return table


def catalog_names() -> list[str]:
    """Names the CLI advertises (not exhaustive: any G(de,e,n) also works)."""
    return [
        "A2",
        "A3",
        "A4",
        "B2",
        "B3",
        "B4",
        "D4",
        "G4",
        "H3",
        "H4",
        "I2(5)",
        "G(3,1,2)",
        "G(3,3,3)",
        "G(4,2,2)",
    ]
