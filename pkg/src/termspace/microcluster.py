"""Word relation graphs, threshold clusters, spanning trees, and shade vectors.

The complete graph on a context's words carries one relation weight per
pair, computed from the index event spaces. Filtering by a weight
threshold gives a micro-cluster; keeping only the strongest relations
until no cycle remains gives the optimal micro-cluster (a maximum-weight
spanning forest); the vector of per-word document counts, normalized by
its maximum, is the cluster's mirror shade.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .engine import Index, Term, singleton
from .jsonio import rational_str
from .triplet import Context

MEASURES = ("doubleton_count", "jaccard")

Edge = tuple[str, str, Fraction]


@dataclass(frozen=True)
class WordGraph:
    """Undirected complete graph on a word set with rational edge weights.

    Vertices are the words themselves (the word-to-vertex bijection is the
    identity). ``weights`` is keyed by the sorted word pair.
    """

    vertices: tuple[str, ...]
    weights: Mapping[tuple[str, str], Fraction]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("graph vertices must be unique")
        expected = set(combinations(self.vertices, 2))
        if set(self.weights) != expected:
            raise ValueError("graph must carry exactly one weight per sorted vertex pair")
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("edge weights must be non-negative")

    def weight(self, a: str, b: str) -> Fraction:
        return self.weights[(a, b) if a < b else (b, a)]

    def edges(self) -> list[Edge]:
        """Edges as (a, b, weight) triples in lexicographic order."""
        return [(a, b, self.weights[(a, b)]) for a, b in sorted(self.weights)]


@dataclass(frozen=True)
class MicroCluster:
    """The words whose weight clears a threshold, with their induced graph.

    ``words`` keeps the weight-descending order of the parent context. An
    empty cluster (threshold above every weight) is a valid, flagged result.
    """

    graph: WordGraph
    words: tuple[str, ...]
    alpha: Fraction

    @property
    def is_empty(self) -> bool:
        return not self.words


@dataclass(frozen=True)
class TreeCluster:
    """Acyclic strongest-relation subgraph spanning a micro-cluster.

    One tree per connected component; edges are stored in the order they
    were kept (weight descending).
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    words: tuple[str, ...]

    @property
    def component_count(self) -> int:
        return len(self.vertices) - len(self.edges)


@dataclass(frozen=True)
class ShadeEntry:
    word: str
    raw: int
    normalized: Fraction


@dataclass(frozen=True)
class MirrorShade:
    """Per-word document counts in input order, normalized by the maximum ``z``."""

    entries: tuple[ShadeEntry, ...]
    z: int


def build_word_graph(ctx: Context, index: Index, measure: str = "jaccard") -> WordGraph:
    """Complete relation graph on the context words.

    Edge weight is the doubleton count of the word pair, or its Jaccard
    ratio over the two singleton events (0 when the union is empty).
    Counts are always exact; no bias is applied.
    """
    if measure not in MEASURES:
        raise ValueError(f"measure must be one of {MEASURES}, got {measure!r}")
    if not ctx.words:
        raise ValueError("cannot build a graph from an empty context")
    vertices = tuple(sorted(ctx.words))
    docsets = {w: singleton(index, Term((w,))).doc_ids for w in vertices}
    weights: dict[tuple[str, str], Fraction] = {}
    for a, b in combinations(vertices, 2):
        inter = len(docsets[a] & docsets[b])
        if measure == "doubleton_count":
            weights[(a, b)] = Fraction(inter)
        else:
            union = len(docsets[a]) + len(docsets[b]) - inter
            weights[(a, b)] = Fraction(inter, union) if union else Fraction(0)
    return WordGraph(vertices=vertices, weights=weights)


def micro_cluster(graph: WordGraph, ctx: Context, alpha: Fraction | int | float | str) -> MicroCluster:
    """Retain the context words whose weight is at least ``alpha``.

    The retained words induce a complete subgraph of ``graph``. A
    threshold above every weight yields an empty cluster rather than an
    error.
    """
    threshold = Fraction(alpha)
    if threshold < 0:
        raise ValueError("alpha must be non-negative")
    retained = tuple(w for w in ctx.nu_order if ctx.words[w].nu >= threshold)
    kept = set(retained)
    sub_vertices = tuple(sorted(retained))
    sub_weights = {pair: w for pair, w in graph.weights.items() if pair[0] in kept and pair[1] in kept}
    sub = WordGraph(vertices=sub_vertices, weights=sub_weights)
    return MicroCluster(graph=sub, words=retained, alpha=threshold)


class _UnionFind:
    def __init__(self, items: Sequence[str]) -> None:
        self.parent = {item: item for item in items}

    def find(self, item: str) -> str:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def optimal_micro_cluster(mc: MicroCluster) -> TreeCluster:
    """Keep the strongest relations of a micro-cluster until no cycle remains.

    Edges are considered in descending weight, ties broken
    lexicographically on the sorted endpoint pair; an edge survives only
    when it joins two different components. The result spans every vertex
    and is a maximum-weight spanning forest.
    """
    if mc.is_empty:
        raise ValueError("optimal_micro_cluster needs at least one vertex")
    ordered = sorted(
        ((a, b, w) for (a, b), w in mc.graph.weights.items()),
        key=lambda e: (-e[2], e[0], e[1]),
    )
    forest = _UnionFind(mc.graph.vertices)
    kept = tuple(e for e in ordered if forest.union(e[0], e[1]))
    return TreeCluster(vertices=mc.graph.vertices, edges=kept, words=mc.words)


def mirror_shade(words: Sequence[str], index: Index) -> MirrorShade:
    """Document counts for a word list, normalized into [0, 1] by the maximum.

    Input order is preserved and words must be unique so the word-to-entry
    map stays one-one. When every count is zero the normalized vector is
    defined as all zeros.
    """
    words = tuple(words)
    if not words:
        raise ValueError("mirror_shade needs at least one word")
    if len(set(words)) != len(words):
        raise ValueError("mirror_shade words must be unique")
    raws = [singleton(index, Term((w,))).cardinality for w in words]
    z = max(raws)
    entries = tuple(
        ShadeEntry(word=w, raw=r, normalized=Fraction(r, z) if z else Fraction(0))
        for w, r in zip(words, raws)
    )
    return MirrorShade(entries=entries, z=z)


def verify_theorem(tree: TreeCluster, full: MicroCluster, index: Index) -> bool:
    """Check that a tree's shade is the restriction of its cluster's shade.

    True when the tree words' raw counts equal the corresponding entries
    of the full cluster's shade and the word-to-entry map is one-one.
    Normalized values are not compared: each shade renormalizes by its own
    maximum. A tree word missing from the cluster is rejected.
    """
    if not set(tree.words) <= set(full.words):
        missing = sorted(set(tree.words) - set(full.words))
        raise ValueError(f"tree words not in the cluster: {missing}")
    full_raw = {e.word: e.raw for e in mirror_shade(full.words, index).entries}
    tree_shade = mirror_shade(tree.words, index)
    if len({e.word for e in tree_shade.entries}) != len(tree_shade.entries):
        return False
    return all(e.raw == full_raw[e.word] for e in tree_shade.entries)


def _dot(vertices: Sequence[str], edges: Sequence[Edge]) -> str:
    lines = ["graph {"]
    for v in vertices:
        lines.append(f'  "{v}";')
    for a, b, w in sorted(edges, key=lambda e: (e[0], e[1])):
        lines.append(f'  "{a}" -- "{b}" [label="{float(w):.6f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(graph: WordGraph) -> str:
    """DOT text with edge weights as labels, 6 decimal places."""
    return _dot(graph.vertices, graph.edges())


def tree_to_dot(tree: TreeCluster) -> str:
    return _dot(tree.vertices, tree.edges)


def _edges_dict(vertices: Sequence[str], edges: Sequence[Edge]) -> dict:
    return {
        "vertices": list(vertices),
        "edges": [
            {"a": a, "b": b, "weight": rational_str(w)}
            for a, b, w in sorted(edges, key=lambda e: (e[0], e[1]))
        ],
    }


def graph_to_dict(graph: WordGraph) -> dict:
    """JSON-ready view: ``{vertices, edges: [{a, b, weight}]}``."""
    return _edges_dict(graph.vertices, graph.edges())


def tree_to_dict(tree: TreeCluster) -> dict:
    return _edges_dict(tree.vertices, tree.edges)


def shade_to_dict(shade: MirrorShade) -> dict:
    """JSON-ready view: ``{entries: [{word, raw, normalized}], z}``."""
    return {
        "entries": [
            {"word": e.word, "raw": e.raw, "normalized": rational_str(e.normalized)}
            for e in shade.entries
        ],
        "z": shade.z,
    }
