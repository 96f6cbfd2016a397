"""JSON file formats for families, covers, fractional covers, groups and clone maps.

Labels are authoritative: masks are never written to disk.

Family::

    {"ground": ["1", "2", "3"], "generators": [["1", "2"], ["1", "3"]]}

Cover: a list of label lists.  Fractional cover: ``{"1,2": "1/2", ...}``.
Group: ``{"generators": [["1", "3", "2"]]}``, each entry the images of the
ground labels in ground order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .clone import CloneMap
from .cover import Cover, FractionalCover, PermutationGroup, make_cover
from .errors import InputError
from .setsystem import Family, GroundSet, family_from_labels
from .threshold import frac_str, parse_frac


def _load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def family_from_json(data, source: str = "<input>") -> Family:
    if not isinstance(data, dict) or "ground" not in data or "generators" not in data:
        raise InputError(f"{source}: expected an object with 'ground' and 'generators'")
    ground, gens = data["ground"], data["generators"]
    if not isinstance(ground, list) or not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise InputError(f"{source}: 'ground' must be a list and 'generators' a list of lists")
    try:
        return family_from_labels(ground, gens)
    except InputError as exc:
        raise type(exc)(f"{source}: {exc}") from None


def family_to_json(F: Family) -> dict:
    return {"ground": list(F.ground.labels), "generators": [F.ground.names(M) for M in F.generators]}


def load_family(path) -> Family:
    return family_from_json(_load_json(path), str(path))


def save_family(F: Family, path) -> None:
    Path(path).write_text(json.dumps(family_to_json(F), indent=2) + "\n")


def cover_to_json(G: Cover, ground: GroundSet) -> list:
    return [ground.names(S) for S in G]


def cover_from_json(data, ground: GroundSet) -> Cover:
    if not isinstance(data, list) or not all(isinstance(s, list) for s in data):
        raise InputError("a cover must be a list of label lists")
    return make_cover(ground.mask(s) for s in data)


def fractional_to_json(w: FractionalCover, ground: GroundSet) -> dict:
    from .setsystem import mask_key

    return {",".join(ground.names(S)): frac_str(x) for S, x in sorted(w.items(), key=lambda t: mask_key(t[0]))}


def fractional_from_json(data: dict, ground: GroundSet) -> FractionalCover:
    return {ground.mask(k.split(",") if k else []): parse_frac(v) for k, v in data.items()}


def group_from_json(data, ground: GroundSet, source: str = "<group>") -> PermutationGroup:
    if not isinstance(data, dict) or not isinstance(data.get("generators"), list):
        raise InputError(f"{source}: expected an object with a 'generators' list")
    perms = []
    for g in data["generators"]:
        if not isinstance(g, list) or len(g) != ground.n:
            raise InputError(f"{source}: each generator lists the image of every ground label")
        perms.append(tuple(ground.index(x) for x in g))
    try:
        return PermutationGroup(tuple(perms), ground.n)
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None


def load_group(path, ground: GroundSet) -> PermutationGroup:
    return group_from_json(_load_json(path), ground, str(path))


def clonemap_to_json(cm: CloneMap) -> dict:
    return cm.to_json()


def clonemap_from_json(data) -> CloneMap:
    return CloneMap(GroundSet(tuple(data["base"])), int(data["k"]))


def fraction_field(x: Fraction) -> str:
    return frac_str(x)
