"""JSON instance files.

Layout::

    {"dims": [2, 2],
     "rho": [[7, 5, 5, 6], ...],
     "k": [[[10, 1], [1, 1]], [[1, 1], [1, 10]]],
     "p": 0.5}

A complex entry is a two-element list ``[re, im]``; a bare number is real.
``p`` is optional.  Floats are written with the shortest repr that round
trips, so write-then-read reproduces the instance bit for bit.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DimensionMismatchError
from .inequalities import BipartiteInstance, TripartiteInstance
from .tensor import MultipartiteOperator


class InstanceFormatError(ValueError):
    pass


def _encode_matrix(a: np.ndarray) -> list:
    a = np.asarray(a)
    if np.iscomplexobj(a):
        return [[[float(z.real), float(z.imag)] for z in row] for row in a]
    return [[float(x) for x in row] for row in a]


def _decode_matrix(rows, name: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InstanceFormatError(f"{name} must be a nonempty list of rows")
    is_complex = any(isinstance(x, list) for r in rows for x in r)
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, list):
                if len(x) != 2:
                    raise InstanceFormatError(f"complex entry in {name} must be [re, im]")
                row.append(complex(float(x[0]), float(x[1])))
            elif isinstance(x, (int, float)) and not isinstance(x, bool):
                row.append(complex(x) if is_complex else float(x))
            else:
                raise InstanceFormatError(f"non-numeric entry {x!r} in {name}")
        out.append(row)
    if len({len(r) for r in out}) != 1:
        raise InstanceFormatError(f"{name} has ragged rows")
    return np.array(out, dtype=complex if is_complex else float)


def instance_to_dict(inst) -> dict:
    return {
        "dims": list(inst.dims),
        "rho": _encode_matrix(_state(inst).matrix),
        "k": [_encode_matrix(k) for k in inst.observables],
        "p": inst.p,
    }


def _state(inst) -> MultipartiteOperator:
    return inst.rho12 if isinstance(inst, BipartiteInstance) else inst.rho123


def instance_from_dict(data: dict, p: float | None = None):
    """Build a bipartite or tripartite instance; an explicit ``p`` overrides the file."""
    try:
        dims = [int(d) for d in data["dims"]]
        rho = _decode_matrix(data["rho"], "rho")
        ks = [_decode_matrix(k, f"k[{i}]") for i, k in enumerate(data["k"])]
    except (KeyError, TypeError) as exc:
        raise InstanceFormatError(f"malformed instance: {exc}") from exc
    if p is None:
        p = data.get("p", 0.5)
    if len(ks) != len(dims):
        raise InstanceFormatError(f"{len(ks)} observables for {len(dims)} factors")
    try:
        state = MultipartiteOperator(rho, tuple(dims))
        if len(dims) == 2:
            return BipartiteInstance(state, ks[0], ks[1], p)
        if len(dims) == 3:
            return TripartiteInstance(state, ks[0], ks[1], ks[2], p)
    except DimensionMismatchError as exc:
        raise InstanceFormatError(str(exc)) from exc
    raise InstanceFormatError(f"instances need 2 or 3 factors, got {len(dims)}")


def dumps(inst) -> str:
    return json.dumps(instance_to_dict(inst))


def loads(text: str, p: float | None = None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceFormatError("instance file must hold a JSON object")
    return instance_from_dict(data, p)


def read_instance(path, p: float | None = None):
    return loads(Path(path).read_text(encoding="utf-8"), p)


def write_instance(inst, path) -> None:
    Path(path).write_text(dumps(inst) + "\n", encoding="utf-8")


def packaged_counterexample_text() -> str:
    return resources.files("skewnum").joinpath("data/hansen2006.json").read_text(encoding="utf-8")
