"""Content-addressed identifiers for refinement colors.

A color id is the 128-bit blake2b digest of a canonical construction string.
Parts are length-prefixed so concatenations never collide structurally, and
multisets are canonicalized by sorting their encoded members.
"""

from hashlib import blake2b
from typing import Iterable, Sequence

DIGEST_SIZE = 16

# Fixed personalization keeps ids stable across runs and machines.
_PERSON = b"posenc-wl-color"


def _frame(part: bytes) -> bytes:
    return len(part).to_bytes(4, "big") + part


def color_id(tag: bytes, *parts: bytes) -> bytes:
    """Hash a tagged tuple of byte parts into a ColorId."""
    h = blake2b(digest_size=DIGEST_SIZE, person=_PERSON)
    h.update(_frame(tag))
    for part in parts:
        h.update(_frame(part))
    return h.digest()


def multiset_bytes(items: Iterable[bytes]) -> bytes:
    """Canonical encoding of a multiset of byte strings (sorted, counted, framed)."""
    members = sorted(items)
    out = [len(members).to_bytes(4, "big")]
    out.extend(_frame(m) for m in members)
    return b"".join(out)


def histogram_digest(colors: Sequence[bytes]) -> str:
    """Hex digest of the multiset of colors of one round."""
    return color_id(b"histogram", multiset_bytes(colors)).hex()


def int_tuple_bytes(values: Sequence[int]) -> bytes:
    """Encode a tuple of (arbitrary precision) integers canonically."""
    return b",".join(str(int(v)).encode("ascii") for v in values)
