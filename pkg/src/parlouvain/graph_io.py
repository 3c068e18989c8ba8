"""Plain-text graph and dendrogram interchange, plus synthetic fixtures."""
from __future__ import annotations

import io
import math
from typing import TYPE_CHECKING, Iterable, TextIO

import numpy as np

from .errors import GraphFormatError, GraphValidationError, UnsupportedFormatError
from .graph_core import Graph

if TYPE_CHECKING:
    from .louvain import Dendrogram

COMMENT_PREFIXES = ("#", "%")


def _lines(text: str | TextIO) -> Iterable[str]:
    if isinstance(text, str):
        return io.StringIO(text)
    return text


def _parse_id(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"vertex id {token!r} is not an integer", lineno) from None
    if value < 0:
        raise GraphFormatError(f"vertex id {value} is negative", lineno)
    return value


def _parse_weight(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GraphFormatError(f"weight {token!r} is not a number", lineno) from None
    if not math.isfinite(value) or value <= 0:
        raise GraphValidationError(f"line {lineno}: weight must be finite and > 0, got {token}")
    return value


def _densify(src, dst, weight) -> Graph:
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if src.size == 0:
        raise GraphValidationError("input contains no edges")
    ids, inverse = np.unique(np.concatenate([src, dst]), return_inverse=True)
    return Graph.from_arrays(
        ids.size, inverse[: src.size], inverse[src.size :], weight, original_ids=ids
    )


def parse_edge_list(text: str | TextIO, default_weight: float = 1.0) -> Graph:
    """Read ``source target [weight]`` lines.

    Vertex ids are relabeled to ``0..N-1`` in ascending id order; the external
    ids are kept in ``Graph.original_ids``. Lines without a weight get
    ``default_weight``. Both orientations of a pair collapse into one edge.
    """
    if not default_weight > 0:
        raise GraphValidationError("default_weight must be > 0")
    src, dst, weight = [], [], []
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise GraphFormatError("expected 'source target [weight]'", lineno)
        if len(tokens) > 3:
            raise GraphFormatError(f"expected at most 3 fields, got {len(tokens)}", lineno)
        src.append(_parse_id(tokens[0], lineno))
        dst.append(_parse_id(tokens[1], lineno))
        weight.append(_parse_weight(tokens[2], lineno) if len(tokens) == 3 else default_weight)
    return _densify(src, dst, weight)


def parse_matrix_market(text: str | TextIO) -> Graph:
    """Read a Matrix Market ``coordinate`` file (real/integer/pattern, general/symmetric).

    Rows/columns are 1-based; vertex ``k`` of the result is row ``k + 1``.
    Isolated rows are kept as isolated vertices.
    """
    lines = iter(enumerate(_lines(text), start=1))
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphFormatError("empty input") from None
    parts = header.strip().lower().split()
    if len(parts) != 5 or parts[0] != "%%matrixmarket" or parts[1] != "matrix":
        raise GraphFormatError("missing '%%MatrixMarket matrix' header", lineno)
    _, _, layout, field, symmetry = parts
    if layout != "coordinate":
        raise UnsupportedFormatError(f"unsupported layout {layout!r}", lineno)
    if field not in ("real", "integer", "pattern"):
        raise UnsupportedFormatError(f"unsupported field {field!r}", lineno)
    if symmetry not in ("general", "symmetric"):
        raise UnsupportedFormatError(f"unsupported symmetry {symmetry!r}", lineno)

    size = None
    src, dst, weight = [], [], []
    for lineno, raw in lines:
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if size is None:
            if len(tokens) != 3:
                raise GraphFormatError("expected 'rows cols entries' size line", lineno)
            rows, cols, _ = (_parse_id(t, lineno) for t in tokens)
            size = max(rows, cols)
            continue
        want = 2 if field == "pattern" else 3
        if len(tokens) != want:
            raise GraphFormatError(f"expected {want} fields, got {len(tokens)}", lineno)
        i, j = _parse_id(tokens[0], lineno), _parse_id(tokens[1], lineno)
        if not (1 <= i <= size and 1 <= j <= size):
            raise GraphFormatError(f"entry ({i}, {j}) outside a {size}x{size} matrix", lineno)
        src.append(i - 1)
        dst.append(j - 1)
        weight.append(1.0 if field == "pattern" else _parse_weight(tokens[2], lineno))
    if size is None:
        raise GraphFormatError("missing size line")
    if size < 1:
        raise GraphValidationError("matrix has no rows")
    return Graph.from_arrays(size, src, dst, weight, original_ids=np.arange(1, size + 1))


def write_edge_list(g: Graph) -> str:
    """Serialize with external ids and explicit weights; inverse of :func:`parse_edge_list`."""
    ids = g.external_ids()
    out = io.StringIO()
    for u, v, w in zip(ids[g.src].tolist(), ids[g.dst].tolist(), g.weight.tolist()):
        out.write(f"{u} {v} {w!r}\n")
    return out.getvalue()


def generate_ring_of_cliques(k: int, c: int) -> Graph:
    """``k`` unit-weight cliques of ``c`` vertices, vertex 0 of each bridged to the next."""
    if k < 3 or c < 3:
        raise ValueError(f"ring of cliques needs k >= 3 and c >= 3, got k={k}, c={c}")
    iu, ju = np.triu_indices(c, k=1)
    base = np.arange(k, dtype=np.int64)[:, None] * c
    src = (base + iu).ravel()
    dst = (base + ju).ravel()
    bridge_src = np.arange(k, dtype=np.int64) * c
    bridge_dst = ((np.arange(k, dtype=np.int64) + 1) % k) * c
    src = np.concatenate([src, bridge_src])
    dst = np.concatenate([dst, bridge_dst])
    return Graph.from_arrays(k * c, src, dst, np.ones(src.size))


def write_partition(labels, original_ids=None) -> str:
    """``vertex community`` lines ordered by external vertex id."""
    labels = np.asarray(labels)
    ids = np.arange(labels.size) if original_ids is None else np.asarray(original_ids)
    order = np.argsort(ids, kind="stable")
    return "".join(f"{v} {c}\n" for v, c in zip(ids[order].tolist(), labels[order].tolist()))


def write_dendrogram(d: "Dendrogram", original_ids=None) -> str:
    """One ``# level t`` block per level in level-local ids, then ``# partition``.

    The partition block composes all levels and is written in external ids.
    """
    from .louvain import final_partition

    if not d.levels:
        raise ValueError("cannot write an empty dendrogram")
    blocks = []
    for t, level in enumerate(d.levels):
        blocks.append(f"# level {t}\n" + write_partition(level))
    blocks.append("# partition\n" + write_partition(final_partition(d), original_ids))
    return "".join(blocks)


def read_partition(text: str | TextIO) -> dict[int, int]:
    result = {}
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError("expected 'vertex community'", lineno)
        result[_parse_id(tokens[0], lineno)] = _parse_id(tokens[1], lineno)
    return result
