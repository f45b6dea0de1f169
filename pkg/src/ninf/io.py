"""Text and JSON formats, certificates, and the on-disk artifact cache.

Formats
-------
* square text: first line ``n``, then ``n`` lines of ``n`` integers in 1..n;
* hypercube text: first line ``n d``, then the ``n**d`` symbols with the last
  axis fastest, 16 per line;
* JSON: ``{"kind": "latin_square", "order", "rows"}`` or
  ``{"kind": "latin_hypercube", "order", "dim", "data"}``; a family member
  adds a ``certificate`` object to a ``latin_square`` payload under kind
  ``x_member``.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .certify import CertLevel, CondIIIWitness, CondIIWitness, XMember
from .core import Hypercube, LatinSquare

CACHE_ENV = "NINF_CACHE_DIR"
DEFAULT_CACHE_DIR = ".ninf-cache"


class ParseError(ValueError):
    """Input is not in any supported format."""


# ---------------------------------------------------------------------------
# Serialization


def square_to_text(L: LatinSquare) -> str:
    lines = [str(L.order)] + [" ".join(map(str, row)) for row in L.rows()]
    return "\n".join(lines) + "\n"


def hypercube_to_text(H: Hypercube) -> str:
    data = H.data.tolist()
    lines = [f"{H.order} {H.dim}"]
    lines += [" ".join(map(str, data[t:t + 16])) for t in range(0, len(data), 16)]
    return "\n".join(lines) + "\n"


def square_to_json(L: LatinSquare) -> dict:
    return {"kind": "latin_square", "order": L.order, "rows": L.rows()}


def hypercube_to_json(H: Hypercube) -> dict:
    return {"kind": "latin_hypercube", "order": H.order, "dim": H.dim, "data": H.data.tolist()}


def certificate_to_json(x: XMember) -> dict:
    return {
        "order": x.order,
        "shift": x.shift,
        "witness_ii": x.w_ii.as_dict(),
        "witness_iii": x.w_iii.as_dict(),
        "checks": {k: v for k, v in x.checks.items()},
        "cert_level": x.cert_level.label,
    }


def member_to_json(x: XMember) -> dict:
    return {"kind": "x_member", "order": x.order, "rows": x.square.rows(), "certificate": certificate_to_json(x)}


def member_from_json(obj: dict) -> XMember:
    """Rebuild a member; the stored level is carried over, not re-earned."""
    cert = obj["certificate"]
    L = LatinSquare.from_rows(obj["rows"])
    return XMember(L, int(cert["shift"]), CondIIWitness(**cert["witness_ii"]),
                   CondIIIWitness(**cert["witness_iii"]), CertLevel.parse(cert["cert_level"]),
                   dict(cert.get("checks", {})))


def to_text(obj) -> str:
    if isinstance(obj, LatinSquare):
        return square_to_text(obj)
    if isinstance(obj, Hypercube):
        return hypercube_to_text(obj)
    raise TypeError(f"no text format for {type(obj).__name__}")


def to_json(obj) -> dict:
    if isinstance(obj, LatinSquare):
        return square_to_json(obj)
    if isinstance(obj, Hypercube):
        return hypercube_to_json(obj)
    if isinstance(obj, XMember):
        return member_to_json(obj)
    raise TypeError(f"no JSON format for {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Parsing.  Structure problems raise ParseError; arrays come back unvalidated
# so callers can report Latin-property violations separately.


def _int_tokens(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split()]
    except ValueError as exc:
        raise ParseError(f"non-integer token: {exc}") from None


def _grid_array(rows, n: int) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.shape != (n, n):
        raise ParseError(f"expected a {n} x {n} grid, got shape {a.shape}")
    return a


def parse_text(text: str) -> np.ndarray:
    """1-based symbol array from either text format."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty input")
    head = _int_tokens(lines[0])
    body = _int_tokens(" ".join(lines[1:]))
    if len(head) == 1:
        n = head[0]
        if n < 1 or len(body) != n * n:
            raise ParseError(f"expected {n * n} symbols after the order line, got {len(body)}")
        return np.asarray(body, np.int64).reshape(n, n)
    if len(head) == 2:
        n, d = head
        if n < 1 or d < 1 or len(body) != n ** d:
            raise ParseError(f"expected {n}^{d} symbols after the header, got {len(body)}")
        return np.asarray(body, np.int64).reshape((n,) * d)
    raise ParseError("first line must be 'n' or 'n d'")


def parse_json(obj: dict) -> np.ndarray:
    try:
        kind = obj["kind"]
        n = int(obj["order"])
        if kind in ("latin_square", "x_member"):
            return _grid_array(obj["rows"], n)
        if kind == "latin_hypercube":
            d = int(obj["dim"])
            data = np.asarray(obj["data"], np.int64)
            if data.shape != (n ** d,):
                raise ParseError(f"expected {n ** d} symbols")
            return data.reshape((n,) * d)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed JSON object: {exc!r}") from None
    raise ParseError(f"unknown kind {kind!r}")


def parse_any(text: str) -> tuple[np.ndarray, dict | None]:
    """Array (1-based) plus the JSON object when the input was JSON."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise ParseError("JSON input must be an object")
        return parse_json(obj), obj
    return parse_text(text), None


def as_square(a: np.ndarray) -> LatinSquare:
    """Validated square from a 1-based array (raises NotLatin)."""
    return LatinSquare(np.asarray(a) - 1)


def as_hypercube(a: np.ndarray) -> Hypercube:
    return Hypercube(np.asarray(a) - 1)


# ---------------------------------------------------------------------------
# Artifact cache


def checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class ArtifactRecord:
    kind: str  # latin_square, latin_hypercube or x_member
    payload: dict
    cert_level: str
    provenance: str
    checksum: str

    @classmethod
    def make(cls, kind: str, payload: dict, cert_level: str, provenance: str) -> "ArtifactRecord":
        return cls(kind, payload, cert_level, provenance, checksum(payload))

    def intact(self) -> bool:
        return checksum(self.payload) == self.checksum

    def to_json(self) -> dict:
        return {"kind": self.kind, "payload": self.payload, "cert_level": self.cert_level,
                "provenance": self.provenance, "checksum": self.checksum}


class ArtifactCache:
    """Directory of JSON records keyed by ``(kind, order, dim, recipe, seed)``."""

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root or os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR)

    def path(self, kind: str, order: int, dim: int, recipe: str, seed: int) -> Path:
        safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in recipe)
        return self.root / f"{kind}-n{order}-d{dim}-{safe}-s{seed}.json"

    def get(self, kind: str, order: int, dim: int, recipe: str, seed: int) -> ArtifactRecord | None:
        """The stored record, or ``None`` when missing or failing its checksum."""
        p = self.path(kind, order, dim, recipe, seed)
        try:
            raw = json.loads(p.read_text())
            rec = ArtifactRecord(raw["kind"], raw["payload"], raw["cert_level"], raw["provenance"], raw["checksum"])
        except (OSError, ValueError, KeyError, TypeError):
            return None
        return rec if rec.intact() else None

    def put(self, order: int, dim: int, recipe: str, seed: int, record: ArtifactRecord) -> Path:
        """Write atomically: a temporary file in the same directory, then rename."""
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.path(record.kind, order, dim, recipe, seed)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(record.to_json(), fh)
            os.replace(tmp, p)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return p
