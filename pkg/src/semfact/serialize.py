"""JSON documents for categories, functors and monads."""

import hashlib
import json
from pathlib import Path

from .errors import InvalidInput, SemfactError
from .fincat.core import (
    FinCategory,
    FinFunctor,
    NatTrans2Cell,
    category_to_spec,
    check_naturality,
    compose_functors,
    functor_to_spec,
    identity_functor,
    validate_category,
    validate_functor,
)
from .monad import Monad

FUNCTOR_KEYS = {"source_file", "target_file", "object_map", "morphism_map", "provenance"}
MONAD_KEYS = {"base_file", "t", "m", "eta", "provenance"}


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from None
    except OSError as exc:
        raise InvalidInput(f"{path}: cannot read ({exc.strerror})") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def file_hash(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def document_kind(doc) -> str:
    if not isinstance(doc, dict):
        raise InvalidInput("top-level JSON value must be an object")
    if "base_file" in doc:
        return "monad"
    if "object_map" in doc:
        return "functor"
    return "category"


def load_category(path) -> FinCategory:
    return validate_category(read_json(path))


def _sibling(path, name):
    return Path(path).parent / name


def functor_from_doc(doc, base_dir, C=None, D=None) -> FinFunctor:
    unknown = set(doc) - FUNCTOR_KEYS
    if unknown:
        raise InvalidInput(f"unknown keys in functor spec: {sorted(unknown)}")
    if C is None:
        if "source_file" not in doc or "target_file" not in doc:
            raise InvalidInput("functor spec needs source_file and target_file")
        C = load_category(Path(base_dir) / doc["source_file"])
        D = load_category(Path(base_dir) / doc["target_file"])
    body = {k: v for k, v in doc.items() if k in ("object_map", "morphism_map")}
    return validate_functor(body, C, D)


def load_functor(path) -> FinFunctor:
    return functor_from_doc(read_json(path), Path(path).parent)


def load_monad(path) -> Monad:
    doc = read_json(path)
    unknown = set(doc) - MONAD_KEYS
    if unknown:
        raise InvalidInput(f"unknown keys in monad spec: {sorted(unknown)}")
    for k in ("base_file", "t", "m", "eta"):
        if k not in doc:
            raise InvalidInput(f"monad spec is missing {k!r}")
    b = load_category(_sibling(path, doc["base_file"]))
    t = functor_from_doc(doc["t"], None, b, b)
    for key in ("m", "eta"):
        if set(doc[key]) != set(b.objects):
            raise InvalidInput(f"{key} must have one component per object")
    m = NatTrans2Cell(compose_functors(t, t), t, doc["m"])
    eta = NatTrans2Cell(identity_functor(b), t, doc["eta"])
    return Monad(b, t, m, eta)


def load_any(path):
    doc = read_json(path)
    kind = document_kind(doc)
    if kind == "category":
        return kind, validate_category(doc)
    if kind == "functor":
        return kind, functor_from_doc(doc, Path(path).parent)
    return kind, load_monad(path)


def monad_is_well_typed(T: Monad):
    try:
        check_naturality(T.m)
        check_naturality(T.eta)
    except SemfactError as exc:
        return str(exc)
    return None


def category_document(C: FinCategory, provenance=None) -> dict:
    doc = category_to_spec(C)
    if provenance:
        doc["provenance"] = provenance
    return doc


def functor_document(F: FinFunctor, source_file, target_file) -> dict:
    return {"source_file": source_file, "target_file": target_file, **functor_to_spec(F)}


def monad_document(T: Monad, base_file) -> dict:
    return {
        "base_file": base_file,
        "t": functor_to_spec(T.t),
        "m": dict(T.m.components),
        "eta": dict(T.eta.components),
    }


def roundtrip(C: FinCategory) -> FinCategory:
    return validate_category(json.loads(dumps(category_document(C))))
