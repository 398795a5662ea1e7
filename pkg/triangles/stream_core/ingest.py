"""
Edge-list file ingestion: token interning, line parsing, reading and writing
"""

from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, TextIO, Tuple, Union

from loguru import logger

from core.errors import EdgeParseError
from triangles.stream_core.edges import Edge

# (u, v) as read from a file, before self-loop removal and canonicalization
RawEdge = Tuple[int, int]


class NodeInterner:
    """Maps arbitrary node tokens to dense ids in order of first appearance"""

    def __init__(self):
        self._ids: Dict[str, int] = {}
        self._tokens: List[str] = []

    def intern(self, token: str) -> int:
        node = self._ids.get(token)
        if node is None:
            node = len(self._tokens)
            self._ids[token] = node
            self._tokens.append(token)
        return node

    def token(self, node: int) -> str:
        return self._tokens[node]

    def __len__(self) -> int:
        return len(self._tokens)

    @classmethod
    def identity(cls, n: int) -> "NodeInterner":
        """Interner whose tokens are the decimal ids 0..n-1"""
        interner = cls()
        for node in range(n):
            interner.intern(str(node))
        return interner


def parse_edge_line(line: str, interner: NodeInterner, line_no: Optional[int] = None) -> Optional[RawEdge]:
    """Parse "u v [t]"; returns None for blank and '#' comment lines"""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    tokens = stripped.split()
    if len(tokens) < 2:
        raise EdgeParseError(f"expected 'u v [t]', got {stripped!r}", line_no)
    # a third token is a timestamp; file order defines the stream order
    return interner.intern(tokens[0]), interner.intern(tokens[1])


def iter_edge_lines(lines: Iterable[str], interner: NodeInterner) -> Iterator[RawEdge]:
    for line_no, line in enumerate(lines, start=1):
        pair = parse_edge_line(line, interner, line_no)
        if pair is not None:
            yield pair


def read_edge_file(path: Union[str, Path], interner: Optional[NodeInterner] = None) -> Tuple[List[RawEdge], NodeInterner]:
    """Read a whole edge-list file into memory"""
    interner = interner if interner is not None else NodeInterner()
    path = Path(path)
    with path.open("r", encoding="ascii") as handle:
        pairs = list(iter_edge_lines(handle, interner))
    logger.debug(f"Read {len(pairs)} edges over {len(interner)} nodes from {path}")
    return pairs, interner


def write_edge_file(target: Union[str, Path, TextIO], edges: Iterable[Edge], interner: NodeInterner) -> int:
    """Write edges as 'u v' lines using the original tokens; target is a path or an open text handle"""
    if hasattr(target, "write"):
        return _write_edges(target, edges, interner)
    with Path(target).open("w", encoding="ascii", newline="\n") as handle:
        return _write_edges(handle, edges, interner)


def _write_edges(handle: TextIO, edges: Iterable[Edge], interner: NodeInterner) -> int:
    count = 0
    for a, b in edges:
        handle.write(f"{interner.token(a)} {interner.token(b)}\n")
        count += 1
    return count
