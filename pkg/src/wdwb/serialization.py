"""JSON encodings of parameters, reports and verdicts."""

from __future__ import annotations

import json

from .errors import InvalidParameter
from .groups import GroupDescriptor
from .linalg import Matrix
from .parameters import SemisimpleParameter, WDParameter
from .scalars import current_session, parse_scalar
from .weil import WeilDatum


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def matrix_from_json(data) -> Matrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InvalidParameter("a matrix must be a non-empty list of rows")
    return Matrix.from_rows([[parse_scalar(str(x)) for x in row] for row in data])


def target_from_json(data) -> GroupDescriptor:
    if isinstance(data, str):
        return GroupDescriptor.parse(data)
    return GroupDescriptor.from_json(data)


def parameter_to_json(p) -> dict:
    w = p if isinstance(p, WDParameter) else None
    phi = w.phi if w is not None else p
    out = {
        "target": phi.target.to_json(),
        "datum": phi.datum.to_json(),
        "inertia_images": [M.to_json() for M in phi.inertia_images],
        "frobenius_image": phi.frobenius_image.to_json(),
        "cyclotomic_order": current_session().m,
    }
    if w is not None:
        out["N"] = w.N.to_json()
    return out


def parameter_from_json(data, want_wd: bool = False):
    """SemisimpleParameter, or WDParameter when an "N" key is present (or want_wd is set)."""
    try:
        target = target_from_json(data["target"])
        datum = WeilDatum.from_json(data.get("datum", {}))
        imgs = tuple(matrix_from_json(M) for M in data.get("inertia_images", []))
        f = matrix_from_json(data["frobenius_image"])
    except KeyError as exc:
        raise InvalidParameter(f"parameter JSON is missing {exc}") from None
    phi = SemisimpleParameter(target, datum, imgs, f)
    if data.get("N") is not None:
        return WDParameter(phi, matrix_from_json(data["N"]))
    if want_wd:
        return WDParameter.unramified_monodromy(phi)
    return phi
