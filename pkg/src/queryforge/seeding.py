"""Deterministic sub-seed derivation.

Every stage and every per-item random stream hangs off one global seed via
named labels, so results are reproducible and independent of evaluation
order (statistics columns, generator calls, sampled labels may all run
concurrently).
"""

import hashlib


def subseed(root: int, *labels: object) -> int:
    """Derive a 64-bit seed from a root seed and a label path."""
    h = hashlib.sha256(str(int(root)).encode("ascii"))
    for label in labels:
        h.update(b"/")
        h.update(str(label).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "big")
