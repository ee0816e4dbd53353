"""JSON documents for semisimplicial sets, configurations, resolutions, pairs and bounds.

Every document carries a top-level ``"kind"``: ``semisimplicial``, ``snc``,
``resolution``, ``pair`` or ``bounds``. Parsing runs all structural
validation and reports problems with a JSON path.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .geometry import (
    ConfigError,
    PairData,
    ResolutionData,
    SncConfiguration,
    Stratum,
    dual_complex,
    induced_map,
    resolution_nerve,
)
from .sscomplex import SemisimplicialSet, require_valid

KINDS = ("semisimplicial", "snc", "resolution", "pair", "bounds")


class ParseError(ConfigError):
    pass


@dataclass(frozen=True)
class BoundsData:
    kh_dims: tuple[int, ...]
    h_struct_dims: tuple[int, ...]


def _get(doc: dict, name: str, path: str, kind=None, default: Any = ...):
    if not isinstance(doc, dict):
        raise ParseError("expected an object", path)
    if name not in doc:
        if default is ...:
            raise ParseError(f"missing field {name!r}", path)
        return default
    value = doc[name]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"expected {getattr(kind, '__name__', kind)}", f"{path}.{name}")
    return value


def _int_list(value, path) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError("expected a list of integers", path)
    return value


# ---------------------------------------------------------------------------
# semisimplicial sets


def sset_from_json(doc: dict, path: str = "$", check: bool = True) -> SemisimplicialSet:
    levels = _int_list(_get(doc, "levels", path, list), f"{path}.levels")
    raw = _get(doc, "faces", path, dict, {})
    faces = {}
    for key, level in raw.items():
        p = f"{path}.faces[{key!r}]"
        try:
            n = int(key)
        except ValueError:
            raise ParseError("face keys must be integer levels", p) from None
        if not isinstance(level, list):
            raise ParseError("expected a list of face tuples", p)
        faces[n] = tuple(tuple(_int_list(fs, f"{p}[{s}]")) for s, fs in enumerate(level))
    labels = _get(doc, "labels", path, list, None)
    if labels is not None:
        labels = tuple(tuple(level) for level in labels)
    S = SemisimplicialSet(tuple(levels), faces, labels)
    if check:
        require_valid(S)
    return S


def sset_to_json(S: SemisimplicialSet) -> dict:
    doc = {
        "kind": "semisimplicial",
        "levels": list(S.levels),
        "faces": {str(n): [list(fs) for fs in level] for n, level in sorted(S.faces.items())},
    }
    if S.labels is not None:
        doc["labels"] = [list(level) for level in S.labels]
    return doc


# ---------------------------------------------------------------------------
# configurations


def _parse_key(text: str, comps: list[str], path: str) -> tuple[int, ...]:
    idx = []
    for tok in str(text).split(","):
        tok = tok.strip()
        if tok in comps:
            idx.append(comps.index(tok))
        elif tok.isdigit() and int(tok) < len(comps):
            idx.append(int(tok))
        else:
            raise ParseError(f"stratum key {text!r} references undefined component {tok!r}", path)
    if len(set(idx)) != len(idx):
        raise ParseError(f"stratum key {text!r} repeats a component", path)
    return tuple(sorted(idx))


def _wrap(exc: ConfigError, prefix: str) -> ParseError:
    path = prefix + exc.path[1:] if exc.path.startswith("$") else prefix
    return ParseError(exc.message, path)


def snc_from_json(doc: dict, path: str = "$") -> SncConfiguration:
    comps = _get(doc, "components", path, list)
    if not all(isinstance(c, str) and c for c in comps):
        raise ParseError("component names must be non-empty strings", f"{path}.components")
    strata_doc = _get(doc, "strata", path, dict, {})
    complete = _get(doc, "complete", path, bool, True)
    strata = {}
    for text, pieces in strata_doc.items():
        p = f"{path}.strata[{text!r}]"
        key = _parse_key(text, comps, p)
        if len(key) < 2:
            raise ParseError(f"stratum key {text!r} needs at least two components", p)
        if key in strata:
            raise ParseError(f"stratum key {text!r} duplicates another key", p)
        if not isinstance(pieces, list):
            raise ParseError("expected a list of pieces", p)
        parsed = []
        for n, piece in enumerate(pieces):
            pp = f"{p}[{n}]"
            label = _get(piece, "label", pp, str)
            given = {}
            for fk, lab in _get(piece, "faces", pp, dict, {}).items():
                fkey = _parse_key(fk, comps, f"{pp}.faces[{fk!r}]")
                given[fkey] = lab
            faces = []
            for k in range(len(key)):
                facet = key[:k] + key[k + 1:]
                if facet in given:
                    faces.append(given.pop(facet))
                elif len(facet) == 1:
                    faces.append(comps[facet[0]])
                else:
                    name = ",".join(comps[i] for i in facet)
                    raise ParseError(f"missing containment for facet {name!r}", f"{pp}.faces")
            if given:
                bad = ",".join(comps[i] for i in next(iter(given)))
                raise ParseError(f"{bad!r} is not a facet of {text!r}", f"{pp}.faces")
            parsed.append(Stratum(label, tuple(faces)))
        strata[key] = tuple(parsed)
    try:
        cfg = SncConfiguration(tuple(comps), strata, complete)
        dual_complex(cfg)
    except ConfigError as exc:
        raise _wrap(exc, path) from None
    return cfg


def _snc_body(cfg: SncConfiguration) -> dict:
    strata = {}
    for key, pieces in cfg.strata.items():
        out = []
        for p in pieces:
            entry: dict = {"label": p.label}
            if len(key) > 2:
                entry["faces"] = {cfg.key_name(key[:k] + key[k + 1:]): lab for k, lab in enumerate(p.faces)}
            out.append(entry)
        strata[cfg.key_name(key)] = out
    return {"components": list(cfg.components), "strata": strata, "complete": cfg.complete}


def snc_to_json(cfg: SncConfiguration) -> dict:
    return {"kind": "snc", **_snc_body(cfg)}


# ---------------------------------------------------------------------------
# resolutions, pairs, bounds


def resolution_from_json(doc: dict, path: str = "$") -> ResolutionData:
    if "exceptional" in doc:
        E = snc_from_json(doc["exceptional"], f"{path}.exceptional")
    else:
        E = snc_from_json(doc, path)
    pts = _get(doc, "singular_points", path, list)
    image = _get(doc, "image", path, dict)
    amb = _get(doc, "ambient_components", path, list, ["X~"])
    amb_of = _get(doc, "ambient_of", path, dict, {})
    try:
        res = ResolutionData(E, tuple(pts), image, tuple(amb), amb_of)
    except ConfigError as exc:
        raise _wrap(exc, path) from None
    resolution_nerve(res)
    return res


def resolution_to_json(res: ResolutionData) -> dict:
    return {
        "kind": "resolution",
        **_snc_body(res.exceptional),
        "singular_points": list(res.singular_points),
        "image": dict(res.image),
        "ambient_components": list(res.ambient_components),
        "ambient_of": dict(res.ambient_of),
    }


def pair_from_json(doc: dict, path: str = "$") -> PairData:
    ambient = snc_from_json(_get(doc, "ambient", path, dict), f"{path}.ambient")
    closed = snc_from_json(_get(doc, "closed", path, dict), f"{path}.closed")
    inclusion = _get(doc, "inclusion", path, dict, {})
    pair = PairData(ambient, closed, inclusion)
    try:
        induced_map(pair)
    except ConfigError as exc:
        raise _wrap(exc, path) from None
    return pair


def pair_to_json(p: PairData) -> dict:
    return {
        "kind": "pair",
        "ambient": snc_to_json(p.ambient),
        "closed": snc_to_json(p.closed),
        "inclusion": dict(p.inclusion),
    }


def bounds_from_json(doc: dict, path: str = "$") -> BoundsData:
    kh = _int_list(_get(doc, "kh_dims", path, list), f"{path}.kh_dims")
    h = _int_list(_get(doc, "h_struct_dims", path, list), f"{path}.h_struct_dims")
    if len(kh) != len(h):
        raise ParseError(f"kh_dims has {len(kh)} entries but h_struct_dims has {len(h)}", path)
    if any(x < 0 for x in kh + h):
        raise ParseError("dimensions must be non-negative", path)
    return BoundsData(tuple(kh), tuple(h))


def bounds_to_json(b: BoundsData) -> dict:
    return {"kind": "bounds", "kh_dims": list(b.kh_dims), "h_struct_dims": list(b.h_struct_dims)}


_PARSERS = {
    "semisimplicial": sset_from_json,
    "snc": snc_from_json,
    "resolution": resolution_from_json,
    "pair": pair_from_json,
    "bounds": bounds_from_json,
}


def from_json(doc: Any):
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "$")
    kind = doc.get("kind")
    if kind is None:
        raise ParseError("missing field 'kind'", "$")
    if kind not in _PARSERS:
        raise ParseError(f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})", "$.kind")
    return _PARSERS[kind](doc)


def parse_config(document: bytes | str):
    """Parse a JSON document into the object named by its ``kind`` field."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}", "$") from None
    return from_json(doc)


def to_json(obj) -> dict:
    if isinstance(obj, SemisimplicialSet):
        return sset_to_json(obj)
    if isinstance(obj, SncConfiguration):
        return snc_to_json(obj)
    if isinstance(obj, ResolutionData):
        return resolution_to_json(obj)
    if isinstance(obj, PairData):
        return pair_to_json(obj)
    if isinstance(obj, BoundsData):
        return bounds_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj), indent=2, ensure_ascii=False)


def load(path) -> Any:
    with open(path, "rb") as fh:
        return parse_config(fh.read())
