"""JSON (de)serialization for modules, witnesses and matrices.

Matrices are row-major arrays of rational strings like "3/4"; shapes are
carried alongside so zero-dimensional matrices survive the round trip.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import InputError
from .linalg import Mat
from .module_lab import FramedModule, SigmaData, TransitionWitness, framed_module
from .quiver_core import DiagramAutomorphism, Quiver


def mat_to_obj(m: Mat) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "data": [[str(x) for x in row] for row in m.data],
    }


def mat_from_obj(obj) -> Mat:
    try:
        if isinstance(obj, dict):
            data = [[Fraction(x) for x in row] for row in obj["data"]]
            return Mat(int(obj["rows"]), int(obj["cols"]), data)
        data = [[Fraction(x) for x in row] for row in obj]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return Mat(rows, cols, data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from exc


def matmap_to_obj(maps: Mapping[str, Mat]) -> dict:
    return {key: mat_to_obj(m) for key, m in sorted(maps.items())}


def matmap_from_obj(obj) -> dict[str, Mat]:
    return {key: mat_from_obj(val) for key, val in obj.items()}


def module_to_dict(m: FramedModule) -> dict:
    return {
        "v": dict(sorted(m.v.items())),
        "w": dict(sorted(m.w.items())),
        "B": matmap_to_obj(m.B),
        "I": matmap_to_obj(m.I),
        "J": matmap_to_obj(m.J),
        "signed": m.signed,
    }


def module_from_dict(q: Quiver, obj) -> FramedModule:
    try:
        return framed_module(
            q,
            {k: int(x) for k, x in obj["v"].items()},
            {k: int(x) for k, x in obj["w"].items()},
            B=matmap_from_obj(obj.get("B", {})),
            I=matmap_from_obj(obj.get("I", {})),
            J=matmap_from_obj(obj.get("J", {})),
            signed=bool(obj.get("signed", True)),
        )
    except KeyError as exc:
        raise InputError(f"module JSON missing field {exc}") from exc


def sigma_to_dict(sigma: SigmaData) -> dict:
    return matmap_to_obj(sigma.maps)


def sigma_from_dict(q: Quiver, a: DiagramAutomorphism, obj) -> SigmaData:
    return SigmaData(q, a, matmap_from_obj(obj))


def witness_to_dict(w: TransitionWitness) -> dict:
    out = {"g": matmap_to_obj(w.g), "summand_swap": w.summand_swap}
    if w.block_dims is not None:
        out["block_dims"] = {k: list(v) for k, v in sorted(w.block_dims.items())}
    return out


def witness_from_dict(obj) -> TransitionWitness:
    block_dims = None
    if obj.get("block_dims"):
        block_dims = {k: (int(v[0]), int(v[1])) for k, v in obj["block_dims"].items()}
    return TransitionWitness(
        matmap_from_obj(obj["g"]),
        bool(obj.get("summand_swap", False)),
        block_dims,
    )
