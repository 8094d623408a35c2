"""BHV space of rooted phylogenetic trees.

A tree with n labeled leaves is coordinatized by its clusters: the leaf
sets below interior edges, with positive lengths. Cluster sets that are
pairwise nested-or-disjoint index orthants; binary topologies have the
maximal n-2 clusters. The space of all topologies glues the orthants
along shared faces; its unit truncation is a cube complex whose CAT(0)
certificate is checked combinatorially.

Leaf-edge and root-edge lengths are outside the model: inputs carrying
them are accepted and the lengths ignored with a note. Zero-length
interior edges are collapsed to reach the canonical form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .complexes import CubeComplex, SimplicialComplex, build_complex, build_simplicial
from .errors import (
    BadRootValencyError,
    CapExceededError,
    CyclicError,
    IncompatibleClustersError,
    InputFormatError,
    InteriorValencyTwoError,
    LeafCountMismatchError,
    NonPositiveLengthError,
    UnlabeledLeafError,
)

DEFAULT_TOPOLOGY_CAP = 200_000


@dataclass(frozen=True, eq=False)
class PhyloTree:
    """Canonical rooted metric n-tree (zero-length interior edges already
    collapsed). Equality of trees is equality of their orthants."""

    n: int
    root: object
    children: dict     # node -> tuple of children
    leaf_label: dict   # leaf node -> label in 1..n
    lengths: dict      # interior child node -> positive length
    notes: tuple = ()

    @cached_property
    def label_to_leaf(self) -> dict:
        return {lab: node for node, lab in self.leaf_label.items()}

    def leaves_below(self, node) -> frozenset:
        if node in self.leaf_label:
            return frozenset({self.leaf_label[node]})
        out = set()
        for c in self.children[node]:
            out |= self.leaves_below(c)
        return frozenset(out)


@dataclass(frozen=True)
class Orthant:
    """Point of tree space: compatible clusters with positive lengths."""

    n: int
    coords: tuple  # ((cluster, length), ...) sorted

    @cached_property
    def topology(self) -> frozenset:
        return frozenset(c for c, _ in self.coords)

    @cached_property
    def lengths(self) -> dict:
        return dict(self.coords)

    def norm(self) -> float:
        return math.sqrt(sum(l * l for _, l in self.coords))


def _ckey(cluster: frozenset):
    return (len(cluster), tuple(sorted(cluster)))


def make_orthant(n: int, coords: dict) -> Orthant:
    items = tuple(sorted(((frozenset(c), float(l)) for c, l in coords.items()),
                         key=lambda cl: _ckey(cl[0])))
    for c, l in items:
        if not (2 <= len(c) <= n - 1) or not c <= set(range(1, n + 1)):
            raise IncompatibleClustersError(f"bad cluster {sorted(c)}",
                                            cluster=sorted(c))
        if l <= 0:
            raise NonPositiveLengthError(f"cluster {sorted(c)} has length {l}")
    clusters = [c for c, _ in items]
    for a, b in itertools.combinations(clusters, 2):
        if not compatible(a, b):
            raise IncompatibleClustersError(
                f"clusters {sorted(a)} and {sorted(b)} overlap improperly",
                pair=(sorted(a), sorted(b)))
    if len(items) > n - 2:
        raise IncompatibleClustersError(
            f"{len(items)} clusters exceed the maximum n-2 = {n - 2}")
    return Orthant(n=n, coords=items)


def compatible(a: frozenset, b: frozenset) -> bool:
    """Nested or disjoint."""
    return a <= b or b <= a or not (a & b)


# ---------------------------------------------------------------------------
# validation and canonicalization


def validate_tree(data: dict) -> PhyloTree:
    """Ingest {"n":, "root":, "nodes": [...], "edges": [[parent, child,
    length]...], "leaf_labels": {node: label}} and canonicalize."""
    if not isinstance(data, dict) or "n" not in data or "root" not in data:
        raise InputFormatError("tree JSON needs n, root, nodes, edges, leaf_labels")
    n = int(data["n"])
    if n < 2:
        raise InputFormatError("need at least 2 leaves")
    nodes = list(data.get("nodes", []))
    node_set = set(nodes)
    if len(node_set) != len(nodes):
        raise InputFormatError("duplicate node id")
    root = data["root"]
    if root not in node_set:
        raise InputFormatError("root is not a listed node")
    raw_labels = {k: int(v) for k, v in data.get("leaf_labels", {}).items()}

    parent: dict = {}
    children: dict = {v: [] for v in nodes}
    length: dict = {}
    for e in data.get("edges", []):
        p, c, l = e[0], e[1], float(e[2])
        if p not in node_set or c not in node_set:
            raise InputFormatError(f"edge ({p!r},{c!r}) uses unknown nodes")
        if c in parent:
            raise CyclicError(f"node {c!r} has two parents", node=c)
        if c == root:
            raise CyclicError("root has a parent", node=c)
        parent[c] = p
        children[p].append(c)
        length[c] = l

    # reachability doubles as the acyclicity check
    reached = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for c in children[v]:
            if c in reached:
                raise CyclicError(f"node {c!r} reached twice", node=c)
            reached.add(c)
            stack.append(c)
    if reached != node_set:
        raise CyclicError("nodes unreachable from the root",
                          unreachable=sorted(map(str, node_set - reached)))

    leaves = [v for v in nodes if not children[v]]
    if root in leaves:
        raise BadRootValencyError("root has no children")
    for v in leaves:
        if v not in raw_labels:
            raise UnlabeledLeafError(f"leaf {v!r} has no label", node=v)
    for v in raw_labels:
        if v not in node_set or children[v]:
            raise UnlabeledLeafError(f"label on non-leaf node {v!r}", node=v)
    if sorted(raw_labels.values()) != list(range(1, n + 1)):
        raise UnlabeledLeafError(
            f"leaf labels must be a bijection onto 1..{n}",
            labels=sorted(raw_labels.values()))

    notes = []
    collapse = []
    for c, l in length.items():
        if children[c]:  # interior edge: child is not a leaf
            if l < 0:
                raise NonPositiveLengthError(
                    f"interior edge above {c!r} has negative length {l}", node=c)
            if l == 0:
                collapse.append(c)
        elif l != 0:
            notes.append(f"leaf edge above {c!r}: length {l} ignored")

    child_map = {v: list(cs) for v, cs in children.items()}
    for c in collapse:
        p = parent[c]
        while p not in child_map:  # parent may itself have been collapsed
            p = parent[p]
        child_map[p].remove(c)
        child_map[p].extend(child_map[c])
        for g in child_map[c]:
            parent[g] = p
        del child_map[c]
    if collapse:
        notes.append(f"collapsed {len(collapse)} zero-length interior edges")

    if len(child_map[root]) < 2:
        raise BadRootValencyError(
            f"root has valency {len(child_map[root])}, need >= 2")
    for v, cs in child_map.items():
        if v != root and cs and len(cs) < 2:
            raise InteriorValencyTwoError(
                f"interior node {v!r} has valency 2", node=v)

    final_lengths = {c: length[c] for c in length
                     if c in child_map and child_map[c] and length[c] > 0}
    tree = PhyloTree(
        n=n, root=root,
        children={v: tuple(cs) for v, cs in child_map.items()},
        leaf_label=raw_labels,
        lengths=final_lengths,
        notes=tuple(notes))
    return tree


def to_orthant(t: PhyloTree) -> Orthant:
    coords = {}
    for c, l in t.lengths.items():
        coords[t.leaves_below(c)] = l
    return make_orthant(t.n, coords)


def from_orthant(o: Orthant) -> PhyloTree:
    """Build the canonical tree of a compatible cluster set: each cluster's
    parent is its least proper superset, or the root."""
    n = o.n
    clusters = sorted(o.topology, key=_ckey)
    for a, b in itertools.combinations(clusters, 2):
        if not compatible(a, b):
            raise IncompatibleClustersError(
                f"clusters {sorted(a)} and {sorted(b)} overlap improperly")

    def node_id(c: frozenset) -> str:
        return "c" + ".".join(str(x) for x in sorted(c))

    children: dict = {"root": []}
    for c in clusters:
        children[node_id(c)] = []
    leaf_parent: dict = {}
    for lab in range(1, n + 1):
        containing = [c for c in clusters if lab in c]
        host = min(containing, key=_ckey) if containing else None
        leaf_parent[lab] = node_id(host) if host is not None else "root"
    for c in clusters:
        supersets = [d for d in clusters if c < d]
        parent = node_id(min(supersets, key=_ckey)) if supersets else "root"
        children[parent].append(node_id(c))
    for lab in range(1, n + 1):
        children[leaf_parent[lab]].append(f"l{lab}")
        children[f"l{lab}"] = []
    lengths = {node_id(c): o.lengths[c] for c in clusters}
    return PhyloTree(
        n=n, root="root",
        children={v: tuple(cs) for v, cs in children.items()},
        leaf_label={f"l{lab}": lab for lab in range(1, n + 1)},
        lengths=lengths)


def dump_tree(t: PhyloTree) -> dict:
    nodes = sorted(map(str, t.children))
    edges = []
    for p, cs in sorted(t.children.items(), key=lambda kv: str(kv[0])):
        for c in cs:
            edges.append([str(p), str(c), float(t.lengths.get(c, 0.0))])
    return {"n": t.n, "root": str(t.root), "nodes": nodes, "edges": edges,
            "leaf_labels": {str(v): lab for v, lab in t.leaf_label.items()}}


def dump_orthant(o: Orthant) -> dict:
    return {"n": o.n,
            "clusters": [sorted(c) for c, _ in o.coords],
            "lengths": [l for _, l in o.coords]}


def load_orthant(data: dict) -> Orthant:
    if not isinstance(data, dict) or "clusters" not in data:
        raise InputFormatError("orthant JSON needs n, clusters, lengths")
    clusters = [frozenset(c) for c in data["clusters"]]
    lengths = [float(x) for x in data["lengths"]]
    if len(clusters) != len(lengths):
        raise InputFormatError("clusters and lengths differ in length")
    return make_orthant(int(data["n"]), dict(zip(clusters, lengths)))


# ---------------------------------------------------------------------------
# enumeration


def count_binary(n: int) -> int:
    """(2n-3)!! rooted binary topologies on n labeled leaves."""
    if n < 2:
        raise InputFormatError("need n >= 2")
    out = 1
    for k in range(3, 2 * n - 2, 2):
        out *= k
    return out


def enumerate_topologies(n: int, cap: int = DEFAULT_TOPOLOGY_CAP) -> list[frozenset]:
    """All binary topologies, by recursive leaf insertion: leaf k can be
    attached above any cluster, above any leaf, or above the old root."""
    if n < 2:
        raise InputFormatError("need n >= 2")
    tops: list[frozenset] = [frozenset()]
    for k in range(3, n + 1):
        nxt = []
        everything = frozenset(range(1, k))
        for t in tops:
            # 2k-3 insertion sites: every cluster edge, every leaf edge, and
            # a fresh root; clusters strictly above the site absorb leaf k
            sites = list(t) + [frozenset({j}) for j in range(1, k)] + [everything]
            for site in sites:
                grown = {(c | {k}) if site < c else c for c in t}
                if site == everything:
                    grown.add(everything)
                else:
                    grown.add(site | {k})
                nxt.append(frozenset(grown))
                if len(nxt) > cap:
                    raise CapExceededError(
                        f"topology enumeration exceeds cap {cap}", cap=cap)
        tops = nxt
    return tops


# ---------------------------------------------------------------------------
# the link of the origin and the truncated complex


def all_clusters(n: int) -> list[frozenset]:
    labels = list(range(1, n + 1))
    out = []
    for size in range(2, n):
        out.extend(frozenset(c) for c in itertools.combinations(labels, size))
    return sorted(out, key=_ckey)


def link_of_origin(n: int) -> SimplicialComplex:
    """Flag complex of the cluster-compatibility graph: vertices are
    clusters, simplices are pairwise-compatible sets (orthant faces)."""
    if n < 3:
        raise InputFormatError("need n >= 3")
    clusters = all_clusters(n)
    cname = {c: _cluster_name(c) for c in clusters}
    adj = {c: [] for c in clusters}
    simplices = [frozenset({cname[c]}) for c in clusters]
    for a, b in itertools.combinations(clusters, 2):
        if compatible(a, b):
            adj[a].append(b)
            simplices.append(frozenset({cname[a], cname[b]}))
    # fill every clique: pairwise compatibility makes the set an orthant face
    for c_set in _compatible_sets(clusters, limit=None):
        if len(c_set) >= 3:
            simplices.append(frozenset(cname[c] for c in c_set))
    return build_simplicial([cname[c] for c in clusters], simplices)


def _cluster_name(c: frozenset) -> str:
    return ".".join(str(x) for x in sorted(c))


def _compatible_sets(clusters: list[frozenset], limit: int | None):
    """Every pairwise-compatible subset (the empty one included)."""
    out = [frozenset()]

    def extend(current: list, start: int):
        for idx in range(start, len(clusters)):
            c = clusters[idx]
            if all(compatible(c, d) for d in current):
                current.append(c)
                out.append(frozenset(current))
                if limit is not None and len(out) > limit:
                    raise CapExceededError(
                        f"compatible-set enumeration exceeds cap {limit}",
                        cap=limit)
                extend(current, idx + 1)
                current.pop()

    extend([], 0)
    return out


def _set_name(s: frozenset) -> str:
    if not s:
        return "*"
    return "|".join(sorted((_cluster_name(c) for c in s)))


def treespace_complex(n: int, cap: int = 100_000, max_n: int = 6) -> CubeComplex:
    """Unit truncation of tree space as a cube complex: one k-cube per pair
    (frozen clusters O, free clusters F) with O and F jointly compatible and
    |F| = k; vertex ids name the cluster set held at length 1.

    Cell counts explode past n = 6, hence the default bound."""
    if n < 3:
        raise InputFormatError("need n >= 3")
    if n > max_n:
        raise CapExceededError(
            f"n = {n} exceeds the configured bound {max_n}", cap=max_n)
    clusters = all_clusters(n)
    vertex_sets = _compatible_sets(clusters, limit=cap)
    names = {s: _set_name(s) for s in vertex_sets}
    cubes: dict[int, list] = {}
    for u in vertex_sets:
        members = sorted(u, key=_ckey)
        for size in range(1, len(members) + 1):
            for free in itertools.combinations(members, size):
                base = u - frozenset(free)
                corners = []
                for bits in range(1 << size):
                    present = base | {free[i] for i in range(size)
                                      if (bits >> i) & 1}
                    corners.append(names[present])
                cubes.setdefault(size, []).append(tuple(corners))
    return build_complex([names[s] for s in vertex_sets], cubes)


# ---------------------------------------------------------------------------
# distances


@dataclass(frozen=True)
class DistanceResult:
    value: float
    exact: bool
    path: str  # "orthant" | "bent" | "cone"


def cone_distance(t1: PhyloTree, t2: PhyloTree) -> DistanceResult:
    """Distance between two trees.

    Compatible topologies share an orthant: exact Euclidean distance.
    Otherwise the path bends through the largest common face (which beats
    any smaller face and in particular the origin cone path), giving an
    upper bound on the geodesic; for n = 3 every such path is exact.
    """
    if t1.n != t2.n:
        raise LeafCountMismatchError(f"trees have {t1.n} and {t2.n} leaves")
    p, q = to_orthant(t1), to_orthant(t2)
    union = p.topology | q.topology
    if all(compatible(a, b) for a, b in itertools.combinations(union, 2)):
        value = math.sqrt(sum(
            (p.lengths.get(c, 0.0) - q.lengths.get(c, 0.0)) ** 2
            for c in union))
        return DistanceResult(value=value, exact=True, path="orthant")
    shared = p.topology & q.topology
    a = math.sqrt(sum(l * l for c, l in p.coords if c not in shared))
    b = math.sqrt(sum(l * l for c, l in q.coords if c not in shared))
    across = sum((p.lengths[c] - q.lengths[c]) ** 2 for c in shared)
    value = math.sqrt((a + b) ** 2 + across)
    exact = t1.n == 3
    return DistanceResult(value=value, exact=exact,
                          path="bent" if shared else "cone")
