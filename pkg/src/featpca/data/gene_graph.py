from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..errors import ValidationError

type Edge = tuple[int, int, float]


@dataclass(frozen=True, eq=False)
class GeneGraph:
    """Undirected weighted graph over gene vertices 0..n_vertices-1; edges stored with u < v"""
    n_vertices: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen: set[tuple[int, int]] = set()
        for u, v, w in self.edges:
            if u == v:
                raise ValidationError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValidationError(f"edge ({u}, {v}) outside [0, {self.n_vertices})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError(f"duplicate edge {key}")
            if not np.isfinite(w) or w < 0:
                raise ValidationError(f"edge {key} has invalid weight {w}")
            seen.add(key)

    def __repr__(self):
        return f"<GeneGraph> {self.n_vertices} vertices, {len(self.edges)} edges"

    @property
    def total_weight(self):
        return float(sum(w for _, _, w in self.edges))

    def adjacency(self) -> npt.NDArray[np.float64]:
        a = np.zeros((self.n_vertices, self.n_vertices))
        for u, v, w in self.edges:
            a[u, v] = a[v, u] = w
        return a

    def positive_edges(self):
        return [(u, v, w) for u, v, w in self.edges if w > 0]


@dataclass(frozen=True, eq=False)
class CommunityPartition:
    community_of: tuple[int, ...]
    quality: float
    quality_history: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.community_of) == 0:
            return
        if min(self.community_of) < 0:
            raise ValidationError("community numbers must be >= 0")
        counts = np.bincount(np.asarray(self.community_of, dtype=np.int64))
        if np.any(counts == 0):
            raise ValidationError("communities must be numbered 0..C-1 without gaps")

    def __repr__(self):
        return f"<CommunityPartition> {self.n_communities} communities, quality={self.quality:.6f}"

    @property
    def n_communities(self):
        return max(self.community_of) + 1 if self.community_of else 0

    def members(self) -> list[list[int]]:
        r: list[list[int]] = [[] for _ in range(self.n_communities)]
        for v, c in enumerate(self.community_of):
            r[c].append(v)
        return r
