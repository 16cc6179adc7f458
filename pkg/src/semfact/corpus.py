"""The bundled example corpus with its expected verdicts."""

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import serialize


def data_dir() -> Path:
    return Path(str(resources.files("semfact") / "data"))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str
    path: Path
    expected: dict

    def load(self):
        if self.kind == "category":
            return serialize.load_category(self.path)
        if self.kind == "functor":
            return serialize.load_functor(self.path)
        return serialize.load_monad(self.path)


def corpus() -> list:
    d = data_dir()
    manifest = json.loads((d / "manifest.json").read_text(encoding="utf-8"))
    return [
        CorpusEntry(name, rec["kind"], d / rec["file"], rec["expected"])
        for name, rec in manifest.items()
    ]


def entry(name) -> CorpusEntry:
    for e in corpus():
        if e.name == name:
            return e
    raise KeyError(name)


def load(name):
    return entry(name).load()
