import logging

import igraph as ig
import leidenalg as la
import networkx as nx
import numpy as np

from .data import CommunityPartition, ExpressionMatrix, GeneGraph, SubspaceSpec
from .errors import ValidationError

ROW_CHUNK = 512
MAX_PASSES = 100


def _standardized_columns(m: ExpressionMatrix):
    x = m.values
    std = x.std(axis=0)
    const = std <= 0
    z = (x - x.mean(axis=0)) / np.where(const, 1.0, std)
    z[:, const] = 0.0
    return z, const


def build_gene_knn_graph(m: ExpressionMatrix, n_neighbors: int = 15) -> GeneGraph:
    """
    Gene k-nearest-neighbour graph under Pearson correlation across cells.

    Each gene links to its `n_neighbors` most correlated genes (ties go to the
    lower index); the edge weight is `max(0, r)` and an edge exists if either
    endpoint selected the other. A constant gene has correlation 0 with every
    gene and selects no neighbours.
    """
    n, d = m.shape
    if n_neighbors < 1:
        raise ValidationError("n_neighbors must be >= 1")
    if d <= n_neighbors:
        raise ValidationError(f"gene graph needs more than n_neighbors={n_neighbors} genes, got {d}")
    z, const = _standardized_columns(m)

    edges: dict[tuple[int, int], float] = {}
    for start in range(0, d, ROW_CHUNK):
        stop = min(start + ROW_CHUNK, d)
        r = np.clip(z[:, start:stop].T @ z / n, -1.0, 1.0)
        rows = np.arange(stop - start)
        r[rows, rows + start] = -np.inf
        nearest = np.argsort(-r, axis=1, kind="stable")[:, :n_neighbors]
        for i in range(start, stop):
            if const[i]:
                continue
            for j in nearest[i - start].tolist():
                key = (min(i, j), max(i, j))
                if key not in edges:
                    edges[key] = max(0.0, float(r[i - start, j]))

    g = GeneGraph(d, tuple((u, v, w) for (u, v), w in sorted(edges.items())))
    logging.info("Gene graph: %d genes, %d edges (%d with positive weight)", d, len(g.edges), len(g.positive_edges()))
    return g


def _to_networkx(g: GeneGraph):
    G = nx.Graph()
    G.add_nodes_from(range(g.n_vertices))
    G.add_weighted_edges_from(g.positive_edges())
    return G


def modularity(g: GeneGraph, community_of: tuple[int, ...] | list[int], resolution: float = 1.0) -> float:
    """Weighted modularity of a vertex labelling; 0 for a graph without positive edges"""
    if len(community_of) != g.n_vertices:
        raise ValidationError(f"{len(community_of)} labels for {g.n_vertices} vertices")
    if g.total_weight <= 0:
        return 0.0
    groups: dict[int, set[int]] = {}
    for v, c in enumerate(community_of):
        groups.setdefault(c, set()).add(v)
    return float(nx.community.modularity(_to_networkx(g), list(groups.values()), weight="weight", resolution=resolution))


def _canonical(membership: list[int]) -> tuple[int, ...]:
    """Renumber communities in order of their smallest vertex"""
    relabel: dict[int, int] = {}
    for c in membership:
        if c not in relabel:
            relabel[c] = len(relabel)
    return tuple(relabel[c] for c in membership)


def leiden_partition(g: GeneGraph, resolution: float = 1.0, seed: int = 0) -> CommunityPartition:
    """
    Leiden communities maximising modularity at `resolution`. Optimisation
    passes are repeated until one brings no improvement; the modularity after
    every pass is kept in `quality_history`.

    A graph without positive edges gives one community per vertex and quality 0.
    """
    if g.n_vertices < 1:
        raise ValidationError("graph has no vertices")
    if not resolution > 0:
        raise ValidationError("resolution must be > 0")
    if g.total_weight <= 0:
        return CommunityPartition(tuple(range(g.n_vertices)), 0.0, (0.0,))

    pos = g.positive_edges()
    graph = ig.Graph(n=g.n_vertices, edges=[(u, v) for u, v, _ in pos])
    graph.es["weight"] = [w for _, _, w in pos]
    part = la.RBConfigurationVertexPartition(graph, weights="weight", resolution_parameter=resolution)
    opt = la.Optimiser()
    opt.set_rng_seed(seed % 2**31)

    history: list[float] = []
    community_of = _canonical(part.membership)
    for _ in range(MAX_PASSES):
        diff = opt.optimise_partition(part, n_iterations=1)
        community_of = _canonical(part.membership)
        history.append(modularity(g, community_of, resolution))
        if diff <= 0:
            break

    p = CommunityPartition(community_of, history[-1], tuple(history))
    logging.info("Leiden: %d communities, modularity %.6f after %d passes", p.n_communities, p.quality, len(history))
    return p


def communities_to_subspaces(p: CommunityPartition, seed: int = 0) -> SubspaceSpec:
    """
    One disjoint partition per community. Communities with fewer than 2 genes
    are merged into the largest community (the lowest-numbered one on ties).
    """
    members = p.members()
    if not members:
        raise ValidationError("partition has no vertices")
    big = [c for c in members if len(c) >= 2]
    small = [v for c in members if len(c) < 2 for v in c]
    if not big:
        partitions = [sorted(small)]
    else:
        largest = max(range(len(big)), key=lambda i: (len(big[i]), -i))
        partitions = [sorted(c + small) if i == largest else list(c) for i, c in enumerate(big)]
    if small:
        logging.debug("Merged %d single-gene communities into the largest one", len(small))
    spec = SubspaceSpec(partitions=partitions, strategy="gene_cluster", overlap_fraction=0.0, overlap_size=0, seed=seed)
    return spec.check_cover(len(p.community_of))


def gene_cluster_subspaces(m: ExpressionMatrix, n_neighbors: int = 15, resolution: float = 1.0, seed: int = 0) -> SubspaceSpec:
    g = build_gene_knn_graph(m, n_neighbors)
    p = leiden_partition(g, resolution, seed)
    return communities_to_subspaces(p, seed)

