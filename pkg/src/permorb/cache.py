"""On-disk cache of computed quotient-kernel slices.

Format (one JSON file per engine/weight, versioned):

    {
      "format": "c2-slice/1",
      "engine": "heisenberg-r1",
      "weight": 9,
      "basis": [[[[1,0]],[[2,0],[1,0]]], ...],   # column monomial pairs
      "rows": [[[col, "p/q"], ...], ...]          # reduced rows, pivot first
    }

Slices are exact and canonical (the reduced echelon of a span is unique),
so cached files are byte-stable for a fixed engine and weight.  A file
that fails validation is ignored and rebuilt.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from .echelon import SparseRref
from .orbifold import GradedSubspace

log = logging.getLogger(__name__)

FORMAT = "c2-slice/1"


def _rep_to_json(rep) -> list:
    return [[list(part) for part in mono] for mono in rep]


def _rep_from_json(data) -> tuple:
    return tuple(tuple(tuple(part) for part in mono) for mono in data)


class SliceStore:
    """Directory-backed store for quotient-kernel slices."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def _path(self, engine_key: str, weight: int) -> Path:
        return self.root / f"{engine_key}-w{weight:02d}.json"

    def load(self, engine_key: str, weight: int, basis) -> GradedSubspace | None:
        path = self._path(engine_key, weight)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            if data.get("format") != FORMAT or data.get("engine") != engine_key \
                    or data.get("weight") != weight:
                raise ValueError("header mismatch")
            stored_basis = [_rep_from_json(r) for r in data["basis"]]
            if stored_basis != list(basis):
                raise ValueError("basis mismatch")
            rref = SparseRref.from_row_entries(
                [[(int(c), v) for c, v in row] for row in data["rows"]])
            return GradedSubspace(weight=weight, basis=list(basis), rref=rref)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            log.warning("ignoring corrupt slice cache %s (%s); rebuilding", path, exc)
            return None

    def save(self, engine_key: str, weight: int, basis, rref: SparseRref) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        payload = {
            "format": FORMAT,
            "engine": engine_key,
            "weight": weight,
            "basis": [_rep_to_json(r) for r in basis],
            "rows": rref.row_entries(),
        }
        path = self._path(engine_key, weight)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, separators=(",", ":")))
        os.replace(tmp, path)
