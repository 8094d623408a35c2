"""Plain-graph utilities: isomorphism search, girth, regularity.

The isomorphism search is deliberately independent of any complex
construction so it can serve as an oracle for round-trip checks.
"""

from __future__ import annotations

from .util import skey


def degree_sequence(adj: dict) -> list[int]:
    return sorted(len(adj[v]) for v in adj)


def graph_isomorphisms(adj1: dict, adj2: dict):
    """Yield vertex bijections adj1 -> adj2 preserving adjacency both ways.
    Backtracking in BFS order with degree pruning."""
    if len(adj1) != len(adj2):
        return
    if degree_sequence(adj1) != degree_sequence(adj2):
        return
    nodes1 = sorted(adj1, key=skey)
    if not nodes1:
        yield {}
        return
    # BFS order keeps each new vertex adjacent to an already-mapped one
    order = []
    seen = set()
    for start in nodes1:
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(adj1[v], key=skey):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    nodes2 = sorted(adj2, key=skey)

    def extend(i, mapping, used):
        if i == len(order):
            yield dict(mapping)
            return
        v = order[i]
        mapped_nbrs = [w for w in adj1[v] if w in mapping]
        for cand in nodes2:
            if cand in used or len(adj2[cand]) != len(adj1[v]):
                continue
            if any(mapping[w] not in adj2[cand] for w in mapped_nbrs):
                continue
            # image must not be adjacent to images of non-neighbors
            ok = True
            for w, img in mapping.items():
                if (img in adj2[cand]) != (w in adj1[v]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = cand
            used.add(cand)
            yield from extend(i + 1, mapping, used)
            del mapping[v]
            used.discard(cand)

    yield from extend(0, {}, set())


def graph_isomorphic(adj1: dict, adj2: dict) -> bool:
    return next(graph_isomorphisms(adj1, adj2), None) is not None


def complex_isomorphic(x, y, attempts: int = 10_000):
    """Cube-complex isomorphism: a 1-skeleton isomorphism that maps the cube
    set of x onto the cube set of y. Returns a mapping or None."""
    from .complexes import canonical_cube

    if len(x.vertices) != len(y.vertices) or len(x.cubes) != len(y.cubes):
        return None
    if sorted(map(len, x.cubes)) != sorted(map(len, y.cubes)):
        return None
    tried = 0
    for phi in graph_isomorphisms(x.adjacency, y.adjacency):
        tried += 1
        image = {canonical_cube(tuple(phi[v] for v in c)) for c in x.cubes}
        if image == set(y.cubes):
            return phi
        if tried >= attempts:
            break
    return None


def girth(adj: dict) -> int | None:
    """Length of a shortest cycle, None for forests."""
    best = None
    for root in adj:
        dist = {root: 0}
        parent = {root: None}
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    cycle = dist[v] + dist[w] + 1
                    if best is None or cycle < best:
                        best = cycle
    return best


def is_regular(adj: dict, degree: int) -> bool:
    return all(len(ns) == degree for ns in adj.values())
