"""Stable seed derivation shared by the harness and the tuner."""

from __future__ import annotations

import hashlib


def stable_hash(*parts) -> int:
    """Deterministic 63-bit seed from the given parts.

    Content-addressed (SHA-256 over the stringified parts), so adding an
    algorithm to a plan never reshuffles the seeds of the others.
    """
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") & 0x7FFFFFFFFFFFFFFF
