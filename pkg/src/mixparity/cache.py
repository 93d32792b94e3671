"""On-disk cache of Kazhdan-Lusztig bases, one JSON file per Cartan type.

Entries are keyed ``"<family>/<rank>/<word>"`` (``e`` for the identity) and
hold standard-basis expansions in the table coefficient encoding.  A SHA-256
of the canonical entry payload guards against corruption; a file that fails
the check is recomputed and rewritten, never trusted.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

from .coxeter import CoxeterSystem, WeylElement
from .hecke import HeckeAlgebra, HeckeElement, PCanTable, word_key
from .ring import LaurentPoly

log = logging.getLogger(__name__)

FORMAT = "kl-cache/1"


def _canonical(entries: Any) -> bytes:
    return json.dumps(entries, sort_keys=True, separators=(",", ":")).encode()


def _key(w: WeylElement) -> str:
    s = w.system
    return f"{s.family}/{s.rank}/{word_key(w)}"


class KLCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def path(self, system: CoxeterSystem) -> Path:
        return self.directory / f"kl_{system.cartan_type}.json"

    def load(self, system: CoxeterSystem) -> dict[WeylElement, HeckeElement] | None:
        """Cached basis, or ``None`` when absent or corrupt."""
        p = self.path(system)
        if not p.exists():
            return None
        try:
            data = json.loads(p.read_text(encoding="utf-8"))
            if data.get("format") != FORMAT or data.get("cartan_type") != system.cartan_type:
                raise ValueError("header mismatch")
            entries = data["entries"]
            if hashlib.sha256(_canonical(entries)).hexdigest() != data["sha256"]:
                raise ValueError("checksum mismatch")
            alg = HeckeAlgebra.of(system)
            out = {}
            for w in system:
                terms = entries[_key(w)]
                out[w] = alg.element({system.element(t["y"]): LaurentPoly.from_json(t["coeffs"])
                                      for t in terms})
            if len(entries) != system.order:
                raise ValueError("entry count mismatch")
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("discarding KL cache %s: %s", p, exc)
            return None
        return out

    def store(self, system: CoxeterSystem, basis: dict[WeylElement, HeckeElement]) -> None:
        entries = {_key(w): basis[w].to_expansion() for w in system}
        data = {"format": FORMAT, "cartan_type": system.cartan_type,
                "sha256": hashlib.sha256(_canonical(entries)).hexdigest(), "entries": entries}
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".kl-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(data, fh, sort_keys=True, indent=1)
                fh.write("\n")
            os.replace(tmp, self.path(system))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def table(self, system: CoxeterSystem) -> PCanTable:
        """The characteristic-0 table, from disk when possible."""
        alg = HeckeAlgebra.of(system)
        basis = self.load(system)
        if basis is None:
            basis = {w: alg.kl(w) for w in system}
            self.store(system, basis)
        else:
            alg.seed_kl(basis)
        return PCanTable(system, 0, basis)
