"""Named quiver-with-automorphism corpus.

Built-in entries cover the finite A/D flip and swap families, the affine
cycle with its reflection and rotation, the affine D double swap, and the
order-3 rotation of the four-point star.  Entries are not required to be
admissible: the non-admissible ones are kept as counterexamples and are
recorded as such.  Set QFOLD_CORPUS_DIR to a directory of quiver JSON
files to replace the built-ins.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .quiver_core import (
    DiagramAutomorphism,
    Quiver,
    a_quiver,
    affine_a_quiver,
    affine_d_quiver,
    automorphism,
    d_quiver,
    flip_automorphism,
    fork_swap_automorphism,
    identity_automorphism,
    is_admissible,
    quiver_from_dict,
    quiver_to_dict,
)

CORPUS_ENV = "QFOLD_CORPUS_DIR"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    quiver: Quiver
    auto: DiagramAutomorphism
    admissible: bool
    description: str = ""


def _entry(name: str, q: Quiver, a: DiagramAutomorphism, description: str = "") -> CorpusEntry:
    return CorpusEntry(name, q, a, is_admissible(q, a), description)


def _builtin() -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    entries.append(_entry("A3-id", a_quiver(3), identity_automorphism(a_quiver(3)),
                          "path with the identity"))
    for n in (3, 5, 7, 9):
        q = a_quiver(n)
        entries.append(_entry(f"A{n}-flip", q, flip_automorphism(q, n),
                              "odd path with the end-to-end flip"))
    for n in (4, 6, 8):
        q = a_quiver(n)
        entries.append(_entry(f"A{n}-flip", q, flip_automorphism(q, n),
                              "even path flip: reverses the middle edge, not admissible"))
    for n in (3, 4, 5, 6):
        q = d_quiver(n)
        entries.append(_entry(f"D{n}-swap", q, fork_swap_automorphism(q, n),
                              "fork swap"))
    d4 = d_quiver(4)
    entries.append(_entry("D4-rot3", d4,
                          automorphism(d4, {"1": "3", "3": "4", "4": "1", "2": "2"}),
                          "order-3 rotation of the three legs"))
    aff1 = affine_a_quiver(1)
    entries.append(_entry("affineA1-swap", aff1,
                          automorphism(aff1, {"0": "1", "1": "0"},
                                       {"e0": "e1", "e1": "e0"}),
                          "double edge with the vertex swap, not admissible"))
    aff3 = affine_a_quiver(3)
    entries.append(_entry("affineA3-rot", aff3,
                          automorphism(aff3, {"0": "1", "1": "2", "2": "3", "3": "0"}),
                          "cycle rotation, not admissible"))
    entries.append(_entry("affineA3-flip", aff3,
                          automorphism(aff3, {"0": "0", "2": "2", "1": "3", "3": "1"}),
                          "cycle reflection fixing two opposite vertices"))
    affd = affine_d_quiver(4)
    entries.append(_entry("affineD4-swap", affd,
                          automorphism(affd, {"0": "0", "1": "1", "2": "2", "3": "4", "4": "3"}),
                          "swap of one fork pair"))
    entries.append(_entry("affineD4-doubleswap", affd,
                          automorphism(affd, {"0": "1", "1": "0", "2": "2", "3": "4", "4": "3"}),
                          "swap of both fork pairs"))
    return entries


def _from_dir(path: Path) -> list[CorpusEntry]:
    entries = []
    for file in sorted(path.glob("*.json")):
        with open(file) as fh:
            data = json.load(fh)
        q, a = quiver_from_dict(data)
        if a is None:
            raise InputError(f"{file} has no automorphism block")
        entries.append(_entry(file.stem, q, a, data.get("description", "")))
    return entries


def corpus() -> list[CorpusEntry]:
    override = os.environ.get(CORPUS_ENV)
    if override:
        return _from_dir(Path(override))
    return _builtin()


def corpus_entry(name: str) -> CorpusEntry:
    for entry in corpus():
        if entry.name == name:
            return entry
    known = ", ".join(e.name for e in corpus())
    raise InputError(f"unknown corpus entry {name!r}; known entries: {known}")


def entry_to_dict(entry: CorpusEntry) -> dict:
    out = quiver_to_dict(entry.quiver, entry.auto)
    out["name"] = entry.name
    out["admissible"] = entry.admissible
    if entry.description:
        out["description"] = entry.description
    return out
