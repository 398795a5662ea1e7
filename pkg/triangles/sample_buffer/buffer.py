"""
Bounded edge sample with an adjacency index.

Two replacement disciplines share one structure:

- uniform: positional slots, a full buffer replaces slot i for i ~ uniform[1, T]
- minhash: the buffer keeps the M distinct edges of smallest hash, with the
  occurrence count O_e of every buffered edge

A capacity of None gives an unbounded append-only sample (MASCOT baselines).
"""

import heapq
from collections import defaultdict
from enum import Enum
from typing import DefaultDict, Dict, Iterator, List, Optional, Set, Tuple

from core.errors import BufferContractError
from triangles.sample_buffer.hashing import hash01
from triangles.stream_core.edges import Edge


class BufferMode(str, Enum):
    UNIFORM = "uniform"
    MINHASH = "minhash"


class SampleBuffer:
    """Edge reservoir D with |D| <= capacity"""

    def __init__(self, capacity: Optional[int], mode: BufferMode = BufferMode.UNIFORM, hash_seed: int = 1):
        if capacity is not None and capacity < 1:
            raise BufferContractError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self.mode = BufferMode(mode)
        self.hash_seed = hash_seed

        self._adjacency: DefaultDict[int, Set[int]] = defaultdict(set)

        # uniform mode
        self._slots: List[Edge] = []
        self._slot_of: Dict[Edge, int] = {}

        # minhash mode
        self._heap: List[Tuple[float, Edge]] = []  # (-h(e), e), max-heap on h
        self._hash_of: Dict[Edge, float] = {}
        self._occurrence: Dict[Edge, int] = {}

    def __len__(self) -> int:
        if self.mode is BufferMode.MINHASH:
            return len(self._hash_of)
        return len(self._slots)

    @property
    def is_full(self) -> bool:
        return self.capacity is not None and len(self) >= self.capacity

    def __contains__(self, edge: Edge) -> bool:
        if self.mode is BufferMode.MINHASH:
            return edge in self._hash_of
        return edge in self._slot_of

    def contains(self, edge: Edge) -> bool:
        return edge in self

    def __iter__(self) -> Iterator[Edge]:
        if self.mode is BufferMode.MINHASH:
            return iter(list(self._hash_of))
        return iter(list(self._slots))

    def edges(self) -> Set[Edge]:
        return set(self)

    def append(self, edge: Edge) -> None:
        """Store e in a free slot"""
        if self.is_full:
            raise BufferContractError(f"append on full buffer (M={self.capacity})")
        if edge in self:
            raise BufferContractError(f"edge {tuple(edge)} is already buffered")
        if self.mode is BufferMode.MINHASH:
            self._insert_hashed(edge, hash01(edge, self.hash_seed))
        else:
            self._slot_of[edge] = len(self._slots)
            self._slots.append(edge)
        self._link(edge)

    def replace_uniform(self, edge: Edge, T: int, rng) -> bool:
        """Draw i from [1, T]; replace slot i when i <= M, otherwise discard e"""
        if self.mode is not BufferMode.UNIFORM or not self.is_full:
            raise BufferContractError("replace_uniform requires a full uniform buffer")
        if edge in self._slot_of:
            raise BufferContractError(f"edge {tuple(edge)} is already buffered")
        i = int(rng.integers(1, T + 1))
        if i > self.capacity:
            return False

        evicted = self._slots[i - 1]
        del self._slot_of[evicted]
        self._unlink(evicted)
        self._slots[i - 1] = edge
        self._slot_of[edge] = i - 1
        self._link(edge)
        return True

    def replace_minhash(self, edge: Edge) -> bool:
        """Swap e for D_max when h(e) < h_max"""
        if edge in self._hash_of:
            raise BufferContractError(f"edge {tuple(edge)} is already buffered")
        h = hash01(edge, self.hash_seed)
        if not h < self.h_max():
            return False

        _, evicted = heapq.heappop(self._heap)
        del self._hash_of[evicted]
        del self._occurrence[evicted]
        self._unlink(evicted)

        self._insert_hashed(edge, h)
        self._link(edge)
        return True

    def increment_occurrence(self, edge: Edge) -> int:
        if self.mode is not BufferMode.MINHASH:
            raise BufferContractError("occurrence counts are kept in minhash mode only")
        if edge not in self._occurrence:
            raise BufferContractError(f"increment on absent edge {tuple(edge)}")
        self._occurrence[edge] += 1
        return self._occurrence[edge]

    def occurrence(self, edge: Edge) -> int:
        if self.mode is BufferMode.MINHASH:
            return self._occurrence.get(edge, 0)
        return 1 if edge in self._slot_of else 0

    def h_max(self) -> float:
        if self.mode is not BufferMode.MINHASH:
            raise BufferContractError("h_max is defined in minhash mode only")
        if not self.is_full:
            raise BufferContractError(f"h_max consulted with |D|={len(self)} < M={self.capacity}")
        return -self._heap[0][0]

    def hash_of(self, edge: Edge) -> float:
        return self._hash_of[edge] if edge in self._hash_of else hash01(edge, self.hash_seed)

    def neighbors(self, node: int) -> Set[int]:
        return self._adjacency.get(node, set())

    def common_neighbors(self, u: int, v: int) -> Set[int]:
        """N_u ∩ N_v over buffered edges"""
        nu = self._adjacency.get(u)
        nv = self._adjacency.get(v)
        if not nu or not nv:
            return set()
        if len(nu) > len(nv):
            nu, nv = nv, nu
        return {w for w in nu if w in nv}

    def adjacency(self) -> Dict[int, Set[int]]:
        return {node: set(nbrs) for node, nbrs in self._adjacency.items() if nbrs}

    def rebuild_adjacency(self) -> Dict[int, Set[int]]:
        """Adjacency recomputed from the stored edges"""
        rebuilt: DefaultDict[int, Set[int]] = defaultdict(set)
        for a, b in self:
            rebuilt[a].add(b)
            rebuilt[b].add(a)
        return dict(rebuilt)

    def dump(self) -> str:
        """One 'a b h(e) O_e' line per buffered edge, sorted by edge"""
        lines = [
            f"{a} {b} {self.hash_of(Edge(a, b)):.17g} {self.occurrence(Edge(a, b))}"
            for a, b in sorted(self)
        ]
        return "\n".join(lines)

    def _insert_hashed(self, edge: Edge, h: float) -> None:
        heapq.heappush(self._heap, (-h, edge))
        self._hash_of[edge] = h
        self._occurrence[edge] = 1

    def _link(self, edge: Edge) -> None:
        a, b = edge
        self._adjacency[a].add(b)
        self._adjacency[b].add(a)

    def _unlink(self, edge: Edge) -> None:
        a, b = edge
        for x, y in ((a, b), (b, a)):
            nbrs = self._adjacency[x]
            nbrs.discard(y)
            if not nbrs:
                del self._adjacency[x]
