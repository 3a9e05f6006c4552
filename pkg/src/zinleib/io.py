"""JSON file format for structure constants, forms, tensors and affinizations.

Every file is one object with keys, in this order: ``schema_version``,
``role``, ``kind``, ``dim``, ``basis_labels``, ``data``, ``metadata``.
Scalars are integers or "p/q" strings; floats are rejected.  ``dumps``
writes the canonical layout, so loading and saving a canonical file gives
back the same bytes.  See docs/schema.md for one annotated file per role.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import linalg as la
from .algebra import BilinForm, FinAlgebra, canonical_kind, default_labels
from .coalgebra import Coalgebra, canonical_cokind
from .errors import ContractViolation, ParseError
from .frobenius import PreZinbiel
from .graded import AffineAlgebra, DegreeTensor, GradedForm, literal
from .tensor import BIALGEBRA_KINDS, Bialgebra

SCHEMA_VERSION = "1"
ROLES = ("algebra", "coalgebra", "bialgebra", "form", "rmatrix", "pre_zinbiel", "affine")
KEYS = ("schema_version", "role", "kind", "dim", "basis_labels", "data", "metadata")
CORPUS_ENV = "ZINLEIB_CORPUS"


@dataclass
class Document:
    """A loaded file: the typed value plus the declared (not yet verified) kind."""
    role: str
    kind: str
    dim: int
    labels: tuple[str, ...]
    value: object
    metadata: dict = field(default_factory=dict)
    name: str = ""

    def checked(self):
        """The value with its declared kind verified; raises InvalidInputKind on failure."""
        v = self.value
        if self.role in ("algebra", "affine") and self.kind:
            base = v.base if self.role == "affine" else v
            out = base.with_kind(self.kind)
            return AffineAlgebra(out) if self.role == "affine" else out
        if self.role == "coalgebra" and self.kind:
            return v.with_kind(self.kind)
        if self.role == "bialgebra" and self.kind:
            return Bialgebra(v.algebra, v.coalgebra, self.kind)
        if self.role == "pre_zinbiel":
            return PreZinbiel(v.prec, v.succ, v.labels, True)
        return v


# ---------------------------------------------------------------- reading

def _position(text: str, needle: str) -> tuple[int | None, int | None]:
    at = text.find(needle)
    if at < 0:
        return None, None
    line = text.count("\n", 0, at) + 1
    return line, at - (text.rfind("\n", 0, at) + 1) + 1


def _reject_float(s):
    raise ValueError(f"floating-point literal {s} is not allowed; write an integer or a \"p/q\" string")


def _scalar(x, text: str, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        line, col = _position(text, json.dumps(x)) if not isinstance(x, (list, dict)) else (None, None)
        raise ParseError(f"{where}: expected an integer or \"p/q\" string, got {x!r}", line, col)
    if isinstance(x, str) and not re.fullmatch(r"\s*-?\d+\s*(/\s*\d+\s*)?", x):
        line, col = _position(text, json.dumps(x))
        raise ParseError(f"{where}: malformed rational {x!r}", line, col)
    try:
        return la.q(x)
    except ContractViolation as exc:
        line, col = _position(text, json.dumps(x))
        raise ParseError(f"{where}: {exc}", line, col) from None


def _grid(raw, shape: tuple, text: str, where: str) -> np.ndarray:
    out = la.zeros(shape)

    def walk(node, idx):
        depth = len(idx)
        if depth == len(shape):
            out[idx] = _scalar(node, text, f"{where}{list(idx)}")
            return
        if not isinstance(node, list) or len(node) != shape[depth]:
            got = len(node) if isinstance(node, list) else type(node).__name__
            raise ParseError(f"{where}: dimension mismatch at depth {depth}: expected {shape[depth]} entries, got {got}")
        for i, child in enumerate(node):
            walk(child, idx + (i,))

    if shape and 0 in shape:
        if raw not in ([], None) and not (isinstance(raw, list) and all(_empty(r) for r in raw)):
            raise ParseError(f"{where}: dimension mismatch for an empty grid")
        return out
    walk(raw, ())
    return out


def _empty(node) -> bool:
    return isinstance(node, list) and all(_empty(x) for x in node)


def _need(data: dict, key: str, where: str):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"{where}: missing '{key}'")
    return data[key]


def _families(raw, labels, text: str) -> DegreeTensor:
    if not isinstance(raw, dict):
        raise ParseError("data: completed tensor must be an object")
    arity = _need(raw, "arity", "data")
    families = _need(raw, "families", "data")
    if not isinstance(families, list):
        raise ParseError("data.families must be a list")
    out = DegreeTensor.zero(arity, len(labels))
    for n, fam in enumerate(families):
        where = f"data.families[{n}]"
        coef = _scalar(_need(fam, "coef", where), text, where)
        term = (coef, _need(fam, "basis", where), _need(fam, "degrees", where))
        try:
            out = out + literal(arity, labels, [term], fam.get("params", []))
        except ContractViolation as exc:
            raise ParseError(f"{where}: {exc}") from None
    return out


def loads(text: str, name: str = "") -> Document:
    try:
        raw = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    except ValueError as exc:
        m = re.search(r"-?\d+\.\d*(?:[eE][-+]?\d+)?|-?\d+[eE][-+]?\d+", text)
        line, col = _position(text, m.group(0)) if m else (None, None)
        raise ParseError(str(exc), line, col) from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object", 1, 1)
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"schema version {version!r} is not supported (expected {SCHEMA_VERSION!r})")
    unknown = set(raw) - set(KEYS)
    if unknown:
        raise ParseError(f"unknown top-level keys: {', '.join(sorted(unknown))}")
    role = raw.get("role")
    if role not in ROLES:
        raise ParseError(f"role must be one of {', '.join(ROLES)}, got {role!r}")
    dim = raw.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise ParseError(f"dim must be a nonnegative integer, got {dim!r}")
    labels = raw.get("basis_labels")
    if labels is None:
        labels = list(default_labels(dim))
    if not isinstance(labels, list) or len(labels) != dim or not all(isinstance(s, str) for s in labels):
        raise ParseError(f"basis_labels must list {dim} strings")
    if len(set(labels)) != dim:
        raise ParseError("basis_labels must be distinct")
    labels = tuple(labels)
    kind = raw.get("kind") or ""
    data = _need(raw, "data", "file")
    meta = raw.get("metadata") or {}
    if not isinstance(meta, dict):
        raise ParseError("metadata must be an object")
    n = dim
    try:
        if role in ("algebra", "affine"):
            if kind:
                canonical_kind(kind)
            value = FinAlgebra(_grid(_need(data, "structure", "data"), (n, n, n), text, "data.structure"),
                               "Unchecked", labels)
            if role == "affine":
                if data.get("graded") is not True:
                    raise ParseError("affine files need \"graded\": true")
                value = AffineAlgebra(value)
        elif role == "coalgebra":
            if kind:
                canonical_cokind(kind)
            value = _coalgebra(data, n, labels, text)
        elif role == "bialgebra":
            if kind and kind not in BIALGEBRA_KINDS:
                raise ParseError(f"bialgebra kind must be one of {', '.join(BIALGEBRA_KINDS)}")
            alg = FinAlgebra(_grid(_need(data, "structure", "data"), (n, n, n), text, "data.structure"),
                             "Unchecked", labels)
            value = Bialgebra(alg, _coalgebra(data, n, labels, text), "Unchecked")
        elif role == "form":
            gram = BilinForm(_grid(_need(data, "gram", "data"), (n, n), text, "data.gram"))
            if data.get("graded"):
                off = data.get("offset", 0)
                if isinstance(off, bool) or not isinstance(off, int):
                    raise ParseError("data.offset must be an integer")
                value = GradedForm(gram, off)
            else:
                value = gram
        elif role == "rmatrix":
            if "families" in data:
                value = _families(data, labels, text)
            else:
                value = _grid(_need(data, "tensor", "data"), (n, n), text, "data.tensor")
        else:
            value = PreZinbiel(_grid(_need(data, "prec", "data"), (n, n, n), text, "data.prec"),
                               _grid(_need(data, "succ", "data"), (n, n, n), text, "data.succ"),
                               labels, verify=False)
    except ParseError:
        raise
    except ContractViolation as exc:
        raise ParseError(str(exc)) from None
    return Document(role, kind, dim, labels, value, meta, name)


def _coalgebra(data, n, labels, text) -> Coalgebra:
    imgs = _grid(_need(data, "coproduct", "data"), (n, n, n), text, "data.coproduct")
    d = la.zeros((n, n, n))
    for k in range(n):
        d[:, :, k] = imgs[k]
    return Coalgebra(d, "Unchecked", labels)


def load(path) -> Document:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror}") from None
    return loads(text, p.name)


# ---------------------------------------------------------------- writing

def _scalar_out(x):
    x = la.q(x)
    return int(x) if x.denominator == 1 else la.fmt(x)


def _grid_out(a) -> list:
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        return _scalar_out(a[()])
    return [_grid_out(x) for x in a] if a.shape[0] else []


def to_dict(doc: Document) -> dict:
    v = doc.value
    if doc.role in ("algebra", "affine"):
        base = v.base if doc.role == "affine" else v
        data = {"structure": _grid_out(base.c)}
        if doc.role == "affine":
            data["graded"] = True
    elif doc.role in ("coalgebra", "bialgebra"):
        co = v.coalgebra if doc.role == "bialgebra" else v
        data = {}
        if doc.role == "bialgebra":
            data["structure"] = _grid_out(v.algebra.c)
        data["coproduct"] = [_grid_out(co.d[:, :, k]) for k in range(co.dim)]
    elif doc.role == "form":
        if isinstance(v, GradedForm):
            data = {"gram": _grid_out(v.base_form.gram), "graded": True, "offset": v.offset}
        else:
            data = {"gram": _grid_out(v.gram)}
    elif doc.role == "rmatrix":
        if isinstance(v, DegreeTensor):
            fams = []
            for c, b, d in v.families("k"):
                params = sorted({s.lstrip("#") for x in d for s in x.symbols() if s.startswith("#")})
                fams.append({"coef": _scalar_out(c), "basis": [doc.labels[i] for i in b],
                             "degrees": [str(x) for x in d], "params": params})
            data = {"arity": v.arity, "families": fams}
        else:
            data = {"tensor": _grid_out(v)}
    else:
        data = {"prec": _grid_out(v.prec), "succ": _grid_out(v.succ)}
    return {"schema_version": SCHEMA_VERSION, "role": doc.role, "kind": doc.kind, "dim": doc.dim,
            "basis_labels": list(doc.labels), "data": data, "metadata": doc.metadata}


def _dump(node, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(node, dict):
        if not node:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(v, indent + 1)}" for k, v in node.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(node, list):
        if not node:
            return "[]"
        if all(not isinstance(x, (list, dict)) for x in node):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in node) + "]"
        return "[\n" + ",\n".join(inner + _dump(x, indent + 1) for x in node) + "\n" + pad + "]"
    return json.dumps(node, ensure_ascii=False)


def dumps(doc: Document) -> str:
    return _dump(to_dict(doc), 0) + "\n"


def save(doc: Document, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def document(role: str, value, kind: str = "", labels=(), metadata=None) -> Document:
    """Wrap a value for saving."""
    if role not in ROLES:
        raise ContractViolation(f"unknown role {role!r}")
    if isinstance(value, DegreeTensor):
        dim = value.dim
    elif isinstance(value, np.ndarray):
        dim = value.shape[0]
    elif isinstance(value, GradedForm):
        dim = value.base_form.dim
    else:
        dim = value.dim
    own = value.algebra.labels if isinstance(value, Bialgebra) else getattr(value, "labels", ())
    labels = tuple(labels) or tuple(own or ()) or default_labels(dim)
    return Document(role, kind, dim, labels, value, dict(metadata or {}))


# ---------------------------------------------------------------- corpus

def corpus_dir() -> Path:
    env = os.environ.get(CORPUS_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("zinleib") / "corpus"))


def corpus_path(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    q = corpus_dir() / name
    if q.exists():
        return q
    if not name.endswith(".json") and (corpus_dir() / f"{name}.json").exists():
        return corpus_dir() / f"{name}.json"
    raise ParseError(f"no such file: {name} (also looked in {corpus_dir()})")


def corpus_load(name: str) -> Document:
    return load(corpus_path(name))



