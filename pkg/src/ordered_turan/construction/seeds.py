"""Deterministic seed derivation for recursion nodes and retry attempts."""

from __future__ import annotations

import hashlib

SEED_MASK = (1 << 64) - 1


def derive_seed(seed: int, *path: object) -> int:
    """64-bit seed from a parent seed and a path, independent of evaluation order."""
    payload = "/".join([str(int(seed) & SEED_MASK), *(str(part) for part in path)])
    digest = hashlib.sha256(payload.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
