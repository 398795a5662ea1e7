"""
Keyed edge hashing into the open unit interval
"""

import struct

import mmh3

from triangles.stream_core.edges import Edge

_EDGE_KEY = struct.Struct("<QQ")
_RESOLUTION = float(2 ** 52)


def hash01(edge: Edge, hash_seed: int) -> float:
    """MurmurHash3 x64 of the canonical pair, mapped into (0, 1)

    The top 52 bits are kept so that (x + 0.5) / 2^52 is exact in a double
    and never rounds to 0.0 or 1.0.
    """
    high, _ = mmh3.hash64(_EDGE_KEY.pack(edge[0], edge[1]), hash_seed & 0xFFFFFFFF, signed=False)
    return ((high >> 12) + 0.5) / _RESOLUTION
