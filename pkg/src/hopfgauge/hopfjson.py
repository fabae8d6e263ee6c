"""The hopfjson interchange format (version 1).

A document is a JSON object::

    {"format": "hopfjson", "version": 1,
     "field": {"kind": "rational"} | {"kind": "prime", "p": 5},
     "objects": {name: {...}}, "maps": {name: {...}}, "roles": {role: name}}

Scalars are strings: ``"3"``, ``"-1/2"``; over F_p the residues ``"0"``..``"p-1"``.
Tensors use the flattened matrix shapes documented in :mod:`hopfgauge.structures`
and :mod:`hopfgauge.yd`. Maps carry ``source``/``target`` lists of object names
(the tensor product of those objects; ``"K"`` is the ground field) and a
``matrix`` of shape ``(dim target, dim source)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .linalg import Field, InputError
from .structures import AlgebraData, BialgebraData, CoalgebraData, HopfData
from .yd import YDCoalgebraData, YDModuleData, _same_hopf
from .prebialgebra import PreBialgebraData, SplittingDatum
from .dualquasi import BraidedDualQuasiData, DualQuasiData

FORMAT = "hopfjson"
VERSION = 1


class LoadError(InputError):
    pass


@dataclass
class MapEntry:
    source: list[str]
    target: list[str]
    matrix: np.ndarray


@dataclass
class Document:
    field: Field
    objects: dict[str, Any] = dc_field(default_factory=dict)
    maps: dict[str, MapEntry] = dc_field(default_factory=dict)
    roles: dict[str, str] = dc_field(default_factory=dict)

    def role(self, name: str):
        key = self.roles.get(name, name)
        if key in self.objects:
            return self.objects[key]
        if key in self.maps:
            return self.maps[key].matrix
        raise LoadError(f"document has no object or map for role {name!r}")

    def has_role(self, name: str) -> bool:
        key = self.roles.get(name, name)
        return key in self.objects or key in self.maps

    def name_of(self, obj) -> str:
        for k, v in self.objects.items():
            if v is obj:
                return k
        if isinstance(obj, HopfData):
            for k, v in self.objects.items():
                if isinstance(v, HopfData) and _same_hopf(v, obj):
                    return k
        raise InputError("object is not part of the document")

    def splitting_datum(self) -> SplittingDatum:
        for r in ("A", "H", "pi", "sigma"):
            if not self.has_role(r):
                raise LoadError(f"splitting datum needs role {r!r}")
        A, H = self.role("A"), self.role("H")
        if not isinstance(H, HopfData):
            raise LoadError("role H must be a Hopf algebra")
        if not isinstance(A, BialgebraData):
            raise LoadError("role A must be a bialgebra")
        return SplittingDatum(A, H, self.role("pi"), self.role("sigma"))


# ---------------------------------------------------------------------------
# encoding


def _kind(obj) -> str:
    if isinstance(obj, BraidedDualQuasiData):
        return "braided_dual_quasi"
    if isinstance(obj, DualQuasiData):
        return "dual_quasi"
    if isinstance(obj, PreBialgebraData):
        return "prebialgebra"
    if isinstance(obj, YDCoalgebraData):
        return "yd_coalgebra"
    if isinstance(obj, YDModuleData):
        return "yd_module"
    if isinstance(obj, HopfData):
        return "hopf"
    if isinstance(obj, BialgebraData):
        return "bialgebra"
    if isinstance(obj, CoalgebraData):
        return "coalgebra"
    if isinstance(obj, AlgebraData):
        return "algebra"
    raise InputError(f"cannot serialize {type(obj).__name__}")


def _encode_object(doc: Document, obj) -> dict:
    F = doc.field
    kind = _kind(obj)
    out: dict[str, Any] = {"kind": kind}
    if kind == "braided_dual_quasi":
        out.update(_encode_object(doc, obj.P))
        out["kind"] = kind
        out["reassociator"] = F.to_json(obj.alpha)
        return out
    if kind == "dual_quasi":
        out.update(_encode_object(doc, obj.D))
        out["kind"] = kind
        out["reassociator"] = F.to_json(obj.alpha)
        return out
    if kind == "prebialgebra":
        out.update(_encode_object(doc, obj.R))
        out["kind"] = kind
        out["mult"] = F.to_json(obj.mult_matrix)
        return out
    d = obj.dim
    out["dim"] = d
    out["labels"] = list(obj.labels)
    if kind in ("yd_module", "yd_coalgebra"):
        out["over"] = doc.name_of(obj.H)
        dH = obj.H.dim
        out["action"] = F.to_json(obj.action.reshape(d, dH * d))
        out["coaction"] = F.to_json(obj.coaction.reshape(dH * d, d))
    if kind in ("coalgebra", "yd_coalgebra", "bialgebra", "hopf"):
        out["delta"] = F.to_json(obj.delta.reshape(d * d, d))
        out["counit"] = F.to_json(obj.counit)
    if kind in ("coalgebra", "yd_coalgebra") and obj.coaug is not None:
        out["coaug"] = F.to_json(obj.coaug)
    if kind in ("algebra", "bialgebra", "hopf"):
        out["mult"] = F.to_json(obj.mult.reshape(d, d * d))
        out["unit"] = F.to_json(obj.unit)
    if kind == "hopf":
        out["antipode"] = F.to_json(obj.antipode)
    return out


def to_dict(doc: Document) -> dict:
    F = doc.field
    fld = {"kind": F.kind}
    if F.p is not None:
        fld["p"] = F.p
    return {
        "format": FORMAT,
        "version": VERSION,
        "field": fld,
        "objects": {k: _encode_object(doc, v) for k, v in doc.objects.items()},
        "maps": {k: {"source": list(m.source), "target": list(m.target), "matrix": F.to_json(m.matrix)}
                 for k, m in doc.maps.items()},
        "roles": dict(doc.roles),
    }


def _emit(value, indent: int = 0) -> str:
    """Canonical JSON: sorted keys, two-space indent, one matrix row per line."""
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_emit(value[k], indent + 1)}' for k in sorted(value)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if all(not isinstance(x, (list, dict)) for x in value):
            return "[" + ", ".join(json.dumps(x) for x in value) + "]"
        items = [f"{pad}  {_emit(x, indent + 1)}" for x in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value)


def dumps(doc: Document) -> str:
    return _emit(to_dict(doc)) + "\n"


def save(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def dumps_json(data: dict) -> str:
    return _emit(data) + "\n"


# ---------------------------------------------------------------------------
# decoding


def _req(d: dict, key: str, where: str):
    if key not in d:
        raise LoadError(f"{where}: missing field {key!r}")
    return d[key]


def _tensor(F: Field, data, shape, where: str) -> np.ndarray:
    try:
        arr = F.from_json(data)
    except InputError as exc:
        raise LoadError(f"{where}: {exc}") from None
    except ValueError:
        raise LoadError(f"{where}: ragged array") from None
    if arr.shape != tuple(shape):
        raise LoadError(f"{where}: expected shape {tuple(shape)}, got {arr.shape}")
    return arr


_KINDS = ("coalgebra", "algebra", "bialgebra", "hopf", "dual_quasi", "yd_module", "yd_coalgebra", "prebialgebra",
          "braided_dual_quasi")


def _decode_object(F: Field, name: str, raw: dict, objects: dict, raws: dict, stack: tuple = ()) -> Any:
    where = f"object {name!r}"
    if not isinstance(raw, dict):
        raise LoadError(f"{where}: expected a JSON object")
    kind = _req(raw, "kind", where)
    if kind not in _KINDS:
        raise LoadError(f"{where}: unknown kind {kind!r}")
    d = _req(raw, "dim", where)
    if not isinstance(d, int) or d < 1:
        raise LoadError(f"{where}: dim must be a positive integer")
    labels = raw.get("labels") or ()
    if labels and len(labels) != d:
        raise LoadError(f"{where}: {len(labels)} labels for dim {d}")

    def t(key, shape):
        return _tensor(F, _req(raw, key, where), shape, f"{where}.{key}")

    H = None
    if kind in ("yd_module", "yd_coalgebra", "prebialgebra", "braided_dual_quasi"):
        hname = _req(raw, "over", where)
        if hname not in raws:
            raise LoadError(f"{where}: unknown Hopf algebra {hname!r}")
        H = _resolve(F, hname, objects, raws, stack + (name,))
        if not isinstance(H, HopfData):
            raise LoadError(f"{where}: {hname!r} is not a Hopf algebra")
    try:
        if kind == "coalgebra":
            coaug = t("coaug", (d,)) if "coaug" in raw else None
            return CoalgebraData(field=F, delta=t("delta", (d * d, d)).reshape(d, d, d), counit=t("counit", (d,)),
                                 coaug=coaug, labels=labels)
        if kind == "algebra":
            return AlgebraData(field=F, mult=t("mult", (d, d * d)).reshape(d, d, d), unit=t("unit", (d,)), labels=labels)
        if kind in ("bialgebra", "hopf", "dual_quasi"):
            kw = dict(field=F, delta=t("delta", (d * d, d)).reshape(d, d, d), counit=t("counit", (d,)),
                      mult=t("mult", (d, d * d)).reshape(d, d, d), unit=t("unit", (d,)), labels=labels)
            if kind == "hopf":
                return HopfData(antipode=t("antipode", (d, d)), **kw)
            B = BialgebraData(**kw)
            if kind == "dual_quasi":
                return DualQuasiData(B, t("reassociator", (d ** 3,)))
            return B
        dH = H.dim
        if kind == "yd_module":
            return YDModuleData(H=H, action=t("action", (d, dH * d)).reshape(d, dH, d),
                                coaction=t("coaction", (dH * d, d)).reshape(dH, d, d), labels=labels)
        if kind in ("yd_coalgebra", "prebialgebra", "braided_dual_quasi"):
            coaug = t("coaug", (d,)) if "coaug" in raw else None
            R = YDCoalgebraData(field=F, delta=t("delta", (d * d, d)).reshape(d, d, d), counit=t("counit", (d,)),
                                coaug=coaug, labels=labels, H=H,
                                action=t("action", (d, dH * d)).reshape(d, dH, d),
                                coaction=t("coaction", (dH * d, d)).reshape(dH, d, d))
            if kind == "yd_coalgebra":
                return R
            P = PreBialgebraData(R, t("mult", (d, d * d)).reshape(d, d, d))
            if kind == "prebialgebra":
                return P
            return BraidedDualQuasiData(P, t("reassociator", (d ** 3,)))
    except LoadError:
        raise
    except InputError as exc:
        raise LoadError(f"{where}: {exc}") from None


def _resolve(F, name, objects, raws, stack=()):
    if name in objects:
        return objects[name]
    if name in stack:
        raise LoadError(f"circular reference through {name!r}")
    objects[name] = _decode_object(F, name, raws[name], objects, raws, stack)
    return objects[name]


def _space_dim(names: list[str], objects: dict, where: str) -> int:
    d = 1
    if not isinstance(names, list) or not names:
        raise LoadError(f"{where}: source/target must be a non-empty list of names")
    for n in names:
        if n == "K":
            continue
        if n not in objects:
            raise LoadError(f"{where}: unknown object {n!r}")
        d *= objects[n].dim
    return d


def from_dict(data: dict) -> Document:
    if not isinstance(data, dict):
        raise LoadError("top level must be a JSON object")
    if data.get("format") != FORMAT:
        raise LoadError(f"not a {FORMAT} document")
    if data.get("version") != VERSION:
        raise LoadError(f"unsupported version {data.get('version')!r}")
    fld = _req(data, "field", "document")
    kind = _req(fld, "kind", "field")
    if kind == "rational":
        F = Field()
    elif kind == "prime":
        try:
            F = Field(int(_req(fld, "p", "field")))
        except InputError as exc:
            raise LoadError(str(exc)) from None
    else:
        raise LoadError(f"unknown field kind {kind!r}")
    raws = data.get("objects", {})
    objects: dict[str, Any] = {}
    for name in sorted(raws):
        _resolve(F, name, objects, raws)
    objects = {k: objects[k] for k in raws}
    maps = {}
    for name, raw in data.get("maps", {}).items():
        where = f"map {name!r}"
        src = _req(raw, "source", where)
        tgt = _req(raw, "target", where)
        shape = (_space_dim(tgt, objects, where), _space_dim(src, objects, where))
        maps[name] = MapEntry(list(src), list(tgt), _tensor(F, _req(raw, "matrix", where), shape, where))
    roles = dict(data.get("roles", {}))
    for r, n in roles.items():
        if n not in objects and n not in maps:
            raise LoadError(f"role {r!r} refers to unknown name {n!r}")
    doc = Document(F, objects, maps, roles)
    return doc


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def load(path) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


# ---------------------------------------------------------------------------
# functional maps


def functional_entry(vec: np.ndarray, source: list[str]) -> MapEntry:
    return MapEntry(list(source), ["K"], np.asarray(vec).reshape(1, -1))
