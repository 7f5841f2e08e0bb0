"""Crash-safe scan checkpoints: small key-value files with a checksum.

A checkpoint is a text file: a magic+version line, one ``name=<json>`` line
per field (sorted by name), and a final ``checksum=<sha256 of the preceding
bytes>`` line.  Writes go through a temporary file and ``os.replace`` so an
interrupted save never leaves a torn checkpoint behind.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .errors import CheckpointError

_MAGIC = "ringprimes-checkpoint 1"


def save_checkpoint(path, payload: dict) -> None:
    path = Path(path)
    lines = [_MAGIC]
    for name in sorted(payload):
        if not name.isidentifier():
            raise ValueError(f"bad checkpoint field name {name!r}")
        lines.append(f"{name}={json.dumps(payload[name], separators=(',', ':'))}")
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(body + f"checksum={digest}\n")
    os.replace(tmp, path)


def load_checkpoint(path, missing_ok: bool = False) -> dict | None:
    path = Path(path)
    if not path.exists():
        if missing_ok:
            return None
        raise CheckpointError(f"no checkpoint at {path}")
    text = path.read_text()
    lines = text.splitlines()
    if not lines or lines[0] != _MAGIC:
        raise CheckpointError(f"{path} is not a recognised checkpoint file")
    if not lines[-1].startswith("checksum="):
        raise CheckpointError(f"{path} is truncated (no checksum line)")
    body = "\n".join(lines[:-1]) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    if lines[-1] != f"checksum={digest}":
        raise CheckpointError(f"{path} failed its checksum; refusing to resume from it")
    payload = {}
    for line in lines[1:-1]:
        name, _, raw = line.partition("=")
        try:
            payload[name] = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"{path}: unreadable field {name!r}") from exc
    return payload
