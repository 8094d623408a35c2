"""Finite cubical complexes with exact combinatorial CAT(0) certificates.

A k-cube is stored as a tuple of 2^k corner ids indexed by binary
coordinate vectors: position b encodes corner b of [0,1]^k (bit i of the
index is coordinate i). Cubes are canonicalized up to the symmetry group
of the cube, so cube identity is a set-membership test.

The CAT(0) oracle is fully combinatorial: a finite complex is CAT(0) iff
it is connected, all vertex links are flag (the Gromov link condition),
every 4-cycle of the 1-skeleton bounds a listed square, and the
1-skeleton is a median graph. Failures come with explicit certificates.

All types are immutable after construction and every operation is a pure
function of its inputs; concurrent reads are safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    CapExceededError,
    DisconnectedError,
    DoubleGluingError,
    DuplicateCubeError,
    InputFormatError,
    MissingFaceError,
    MultipleMediansError,
    NoMedianError,
    NotCat0Error,
    SelfGluingError,
    UnknownVertexError,
)
from .util import skey, ssorted

DEFAULT_MEDIAN_CAP = 600


# ---------------------------------------------------------------------------
# cube symmetries


@lru_cache(maxsize=None)
def _symmetry_maps(dim: int) -> tuple[tuple[int, ...], ...]:
    """Index maps realizing the full symmetry group of the dim-cube
    (axis permutations composed with axis flips), acting on corner indices."""
    maps = []
    for perm in itertools.permutations(range(dim)):
        for flips in range(1 << dim):
            sigma = []
            for j in range(1 << dim):
                a = 0
                for i in range(dim):
                    bit = ((j >> i) & 1) ^ ((flips >> i) & 1)
                    a |= bit << perm[i]
                sigma.append(a)
            maps.append(tuple(sigma))
    return tuple(maps)


def canonical_cube(corners: tuple) -> tuple:
    """Lexicographically least image of a corner tuple under cube symmetry."""
    n = len(corners)
    dim = n.bit_length() - 1
    if dim == 0:
        return tuple(corners)
    best = None
    bestkey = None
    for sigma in _symmetry_maps(dim):
        img = tuple(corners[sigma[j]] for j in range(n))
        key = tuple(skey(x) for x in img)
        if bestkey is None or key < bestkey:
            best, bestkey = img, key
    return best


def cube_dim(corners: tuple) -> int:
    return len(corners).bit_length() - 1


def cube_faces(corners: tuple):
    """Yield the 2*dim codimension-1 faces, in induced corner order."""
    dim = cube_dim(corners)
    for axis in range(dim):
        for eps in (0, 1):
            yield _face(corners, dim, axis, eps)


def _face(corners, dim, axis, eps):
    out = []
    for j in range(1 << (dim - 1)):
        low = j & ((1 << axis) - 1)
        high = (j >> axis) << (axis + 1)
        out.append(corners[low | (eps << axis) | high])
    return tuple(out)


def _all_faces(corners: tuple) -> dict[frozenset, tuple]:
    """Map corner-id set -> canonical cube, over every face of every
    dimension (including the cube itself)."""
    dim = cube_dim(corners)
    out = {frozenset(corners): canonical_cube(corners)}
    stack = [corners]
    while stack:
        c = stack.pop()
        if cube_dim(c) == 0:
            continue
        for f in cube_faces(c):
            key = frozenset(f)
            if key not in out:
                out[key] = canonical_cube(f)
                stack.append(f)
    return out


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class CubeComplex:
    """Validated cubical complex. ``cubes`` holds canonical corner tuples of
    every positive dimension; vertices live in ``vertices``."""

    vertices: frozenset
    cubes: frozenset

    @cached_property
    def by_dim(self) -> dict[int, frozenset]:
        out: dict[int, set] = {}
        for c in self.cubes:
            out.setdefault(cube_dim(c), set()).add(c)
        return {k: frozenset(v) for k, v in out.items()}

    @property
    def dim(self) -> int:
        return max(self.by_dim, default=0)

    @property
    def edges(self) -> frozenset:
        return self.by_dim.get(1, frozenset())

    @property
    def squares(self) -> frozenset:
        return self.by_dim.get(2, frozenset())

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(ns) for v, ns in adj.items()}

    @cached_property
    def vertex_order(self) -> tuple:
        return tuple(ssorted(self.vertices))

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertex_order)}

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs 1-skeleton distances; -1 for unreachable pairs."""
        order = self.vertex_order
        idx = self.vertex_index
        n = len(order)
        dist = np.full((n, n), -1, dtype=np.int32)
        for i, start in enumerate(order):
            dist[i, i] = 0
            frontier = [start]
            d = 0
            while frontier:
                d += 1
                nxt = []
                for v in frontier:
                    for w in self.adjacency[v]:
                        j = idx[w]
                        if dist[i, j] < 0:
                            dist[i, j] = d
                            nxt.append(w)
                frontier = nxt
        return dist

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        return bool((self.distance_matrix[0] >= 0).all())

    def euler_characteristic(self) -> int:
        chi = len(self.vertices)
        for k, cs in self.by_dim.items():
            chi += (-1) ** k * len(cs)
        return chi

    def counts(self) -> dict:
        return {
            "vertices": len(self.vertices),
            "cubes": {str(k): len(self.by_dim[k]) for k in sorted(self.by_dim)},
            "euler_characteristic": self.euler_characteristic(),
        }


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex: a downward-closed family of nonempty
    vertex subsets (singletons included)."""

    vertices: frozenset
    simplices: frozenset

    @property
    def edges(self) -> frozenset:
        return frozenset(s for s in self.simplices if len(s) == 2)

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def counts(self) -> dict:
        sizes: dict[int, int] = {}
        for s in self.simplices:
            sizes[len(s)] = sizes.get(len(s), 0) + 1
        return {"vertices": len(self.vertices),
                "simplices": {str(k): sizes[k] for k in sorted(sizes)}}


def build_simplicial(vertices, simplices) -> SimplicialComplex:
    """Close the given family downward and validate endpoints."""
    vertices = frozenset(vertices)
    closed: set[frozenset] = set()
    stack = [frozenset(s) for s in simplices]
    for s in stack:
        for v in s:
            if v not in vertices:
                raise UnknownVertexError(f"simplex uses unknown vertex {v!r}", vertex=v)
    while stack:
        s = stack.pop()
        if s in closed or not s:
            continue
        closed.add(s)
        if len(s) > 1:
            for v in s:
                stack.append(s - {v})
    return SimplicialComplex(vertices=vertices, simplices=frozenset(closed))


@dataclass(frozen=True)
class Hyperplane:
    """Square-equivalence class of edges plus every cube it crosses."""

    index: int
    edges: frozenset
    crossed_cubes: frozenset


# ---------------------------------------------------------------------------
# building and validating


def build_complex(vertices, cubes_by_dim: dict) -> CubeComplex:
    """Validate raw cube data and return a canonical CubeComplex.

    Faces must be listed explicitly; nothing is inferred. Raises
    SelfGluingError, DuplicateCubeError, MissingFaceError, DoubleGluingError,
    or UnknownVertexError with the offending cells attached.
    """
    vertex_list = list(vertices)
    vertex_set = frozenset(vertex_list)
    if len(vertex_set) != len(vertex_list):
        raise DuplicateCubeError("duplicate vertex id", dim=0)
    listed: dict[int, set] = {}
    for dim_key, raw_cubes in cubes_by_dim.items():
        k = int(dim_key)
        if k < 1:
            raise InputFormatError(f"cube dimension must be >= 1, got {k}")
        listed.setdefault(k, set())
        for corners in raw_cubes:
            corners = tuple(corners)
            if len(corners) != 1 << k:
                raise InputFormatError(
                    f"{k}-cube needs {1 << k} corners, got {len(corners)}",
                    cube=corners)
            for v in corners:
                if v not in vertex_set:
                    raise UnknownVertexError(
                        f"cube corner {v!r} is not a listed vertex",
                        vertex=v, cube=corners)
            if len(set(corners)) != len(corners):
                raise SelfGluingError(
                    "cube has a repeated corner id", cube=corners, dim=k)
            canon = canonical_cube(corners)
            if canon in listed[k]:
                raise DuplicateCubeError(
                    "cube listed twice (up to symmetry)", cube=corners, dim=k)
            listed[k].add(canon)

    all_cubes: set[tuple] = set()
    for k in sorted(listed):
        for c in listed[k]:
            all_cubes.add(c)

    # face closure
    for c in all_cubes:
        k = cube_dim(c)
        for f in cube_faces(c):
            if k == 1:
                continue  # endpoints already checked against the vertex set
            if canonical_cube(f) not in listed.get(k - 1, set()):
                raise MissingFaceError(
                    "face of a listed cube is not listed",
                    cube=c, face=f, dim=k - 1)

    _check_double_gluing(all_cubes)
    return CubeComplex(vertices=vertex_set, cubes=frozenset(all_cubes))


def _check_double_gluing(all_cubes: set[tuple]) -> None:
    """Two distinct cubes may share at most the corner set of one common
    face; anything else is a double gluing."""
    by_vertex: dict = {}
    for c in all_cubes:
        for v in set(c):
            by_vertex.setdefault(v, []).append(c)
    face_maps: dict[tuple, dict] = {}

    def faces_of(c):
        if c not in face_maps:
            face_maps[c] = _all_faces(c)
        return face_maps[c]

    checked = set()
    for cubes_here in by_vertex.values():
        for a, b in itertools.combinations(cubes_here, 2):
            ka, kb = (cube_dim(a), [skey(v) for v in a]), (cube_dim(b), [skey(v) for v in b])
            pair = (a, b) if ka <= kb else (b, a)
            if pair in checked:
                continue
            checked.add(pair)
            shared = frozenset(pair[0]) & frozenset(pair[1])
            if len(shared) <= 1:
                continue
            fa = faces_of(pair[0]).get(shared)
            fb = faces_of(pair[1]).get(shared)
            if fa is None or fb is None or fa != fb:
                raise DoubleGluingError(
                    "cubes intersect in more than one common face",
                    cube_a=pair[0], cube_b=pair[1], shared=ssorted(shared))


def load_complex(data: dict) -> CubeComplex:
    """Ingest the JSON form {"vertices": [...], "cubes": {"1": [[..]..], ...}}."""
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputFormatError("complex JSON needs 'vertices' and 'cubes'")
    cubes = {int(k): [tuple(c) for c in v]
             for k, v in data.get("cubes", {}).items()}
    return build_complex(data["vertices"], cubes)


def dump_complex(x: CubeComplex) -> dict:
    def vid(v):
        return v if isinstance(v, (int, str)) else ",".join(str(t) for t in v)

    return {
        "vertices": [vid(v) for v in x.vertex_order],
        "cubes": {
            str(k): sorted(
                ([vid(v) for v in c] for c in x.by_dim[k]),
                key=lambda t: [skey(x) for x in t])
            for k in sorted(x.by_dim)
        },
    }


# ---------------------------------------------------------------------------
# links and the flag condition


def vertex_link(x: CubeComplex, v) -> SimplicialComplex:
    """Link of v: one link vertex per edge at v, one (k-1)-simplex per
    (k-cube, corner-at-v) incidence, spanned by that cube's edges at v."""
    if v not in x.vertices:
        raise UnknownVertexError(f"unknown vertex {v!r}", vertex=v)
    link_vertices: set[tuple] = set()
    simplices: list[frozenset] = []
    for c in x.cubes:
        k = cube_dim(c)
        for pos, corner in enumerate(c):
            if corner != v:
                continue
            dirs = []
            for axis in range(k):
                u = c[pos ^ (1 << axis)]
                e = canonical_cube((v, u))
                dirs.append(e)
            link_vertices.update(dirs)
            simplices.append(frozenset(dirs))
    return build_simplicial(link_vertices, simplices)


@dataclass(frozen=True)
class FlagResult:
    ok: bool
    witness: tuple | None = None  # minimal empty simplex, as sorted link-vertex tuple

    def certificate(self) -> dict:
        if self.ok:
            return {}
        return {"empty_simplex": [str(v) for v in self.witness]}


def is_flag(link: SimplicialComplex) -> FlagResult:
    """Every clique of the 1-skeleton must span a listed simplex. On failure
    the witness is a minimal empty simplex (all proper faces present)."""
    adj = link.adjacency
    order = ssorted(link.vertices)
    rank = {v: i for i, v in enumerate(order)}
    level = [frozenset({v, w}) for v in order for w in adj[v] if rank[w] > rank[v]]
    size = 2
    while level:
        size += 1
        nxt = []
        failures = []
        for clique in level:
            top = max(rank[v] for v in clique)
            cands = set(order[top + 1:])
            for v in clique:
                cands &= adj[v]
            for u in ssorted(cands):
                bigger = clique | {u}
                nxt.append(bigger)
                if bigger not in link.simplices:
                    failures.append(bigger)
        if failures:
            witness = min((tuple(ssorted(f)) for f in failures),
                          key=lambda t: [skey(v) for v in t])
            return FlagResult(ok=False, witness=witness)
        level = nxt
    return FlagResult(ok=True)


@dataclass(frozen=True)
class LocalCat0Result:
    ok: bool
    vertex: object = None
    witness: tuple | None = None

    def certificate(self) -> dict:
        if self.ok:
            return {}
        return {"vertex": str(self.vertex),
                "empty_simplex": [str(v) for v in self.witness]}


def is_locally_cat0(x: CubeComplex) -> LocalCat0Result:
    """Gromov link test: every vertex link must be flag."""
    for v in x.vertex_order:
        res = is_flag(vertex_link(x, v))
        if not res.ok:
            return LocalCat0Result(ok=False, vertex=v, witness=res.witness)
    return LocalCat0Result(ok=True)


# ---------------------------------------------------------------------------
# medians and the global CAT(0) test


def median(x: CubeComplex, a, b, c):
    """The unique vertex in all three pairwise geodesic intervals.

    Raises NoMedianError / MultipleMediansError when the triple has zero or
    several candidates (both certify that the complex is not CAT(0)).
    """
    for v in (a, b, c):
        if v not in x.vertices:
            raise UnknownVertexError(f"unknown vertex {v!r}", vertex=v)
    if not x.is_connected():
        raise DisconnectedError("median requires a connected complex")
    dist = x.distance_matrix
    ia, ib, ic = (x.vertex_index[v] for v in (a, b, c))
    hits = [
        x.vertex_order[m]
        for m in range(len(x.vertex_order))
        if dist[ia, m] + dist[m, ib] == dist[ia, ib]
        and dist[ib, m] + dist[m, ic] == dist[ib, ic]
        and dist[ia, m] + dist[m, ic] == dist[ia, ic]
    ]
    if not hits:
        raise NoMedianError("triple has no median", triple=(a, b, c))
    if len(hits) > 1:
        raise MultipleMediansError("triple has several medians",
                                   triple=(a, b, c), medians=hits)
    return hits[0]


def _median_violation(x: CubeComplex, cap: int):
    """Exhaustive unique-median check over all vertex triples, vectorized.
    Returns None or a witness dict."""
    n = len(x.vertex_order)
    if n > cap:
        raise CapExceededError(
            f"median check over {n} vertices exceeds cap {cap}", cap=cap)
    if n < 3:
        return None
    dist = x.distance_matrix
    # interval[x, y, m] == 1 iff m lies on a geodesic from x to y
    interval = (dist[:, None, :] + dist[None, :, :] == dist[:, :, None])
    interval = interval.astype(np.uint8)
    for a in range(n - 2):
        sub = interval[a + 1:, a + 1:, :]
        row = interval[a, a + 1:, :]
        counts = np.einsum("bm,bcm,cm->bc", row, sub, row, dtype=np.int64)
        bad = np.argwhere(counts != 1)
        bad = bad[bad[:, 0] < bad[:, 1]]
        if bad.size:
            b, c = (int(t) for t in bad[0])
            triple = (x.vertex_order[a],
                      x.vertex_order[a + 1 + b],
                      x.vertex_order[a + 1 + c])
            medians = [x.vertex_order[m] for m in range(n)
                       if interval[x.vertex_index[triple[0]],
                                   x.vertex_index[triple[1]], m]
                       and interval[x.vertex_index[triple[1]],
                                    x.vertex_index[triple[2]], m]
                       and interval[x.vertex_index[triple[0]],
                                    x.vertex_index[triple[2]], m]]
            return {"triple": triple, "medians": medians}
    return None


def _unfilled_square(x: CubeComplex):
    """A 4-cycle of the 1-skeleton with no listed square on it, if any.
    Cycle a-v-b-w: a,b opposite, v,w opposite."""
    adj = x.adjacency
    order = x.vertex_order
    rank = {v: i for i, v in enumerate(order)}
    for a in order:
        for b in order:
            if rank[b] <= rank[a] or b in adj[a]:
                continue
            common = ssorted(adj[a] & adj[b])
            for v, w in itertools.combinations(common, 2):
                candidate = canonical_cube((a, v, w, b))
                if candidate not in x.squares:
                    return {"cycle": (a, v, b, w)}
    return None


@dataclass(frozen=True)
class Cat0Result:
    ok: bool
    reason: str | None = None  # "link" | "square" | "median"
    witness: dict | None = None

    def certificate(self) -> dict:
        if self.ok:
            return {}
        cert = {"reason": self.reason}
        for key, val in (self.witness or {}).items():
            if isinstance(val, (list, tuple)):
                cert[key] = [str(v) for v in val]
            else:
                cert[key] = str(val)
        return cert


def is_cat0(x: CubeComplex, cap: int = DEFAULT_MEDIAN_CAP) -> Cat0Result:
    """Decide CAT(0) exactly: connected + flag links + every 4-cycle bounds
    a square + median 1-skeleton. Witnesses name the first failure."""
    if not x.is_connected():
        raise DisconnectedError("is_cat0 requires a connected complex")
    local = is_locally_cat0(x)
    if not local.ok:
        return Cat0Result(ok=False, reason="link",
                          witness={"vertex": local.vertex,
                                   "empty_simplex": local.witness})
    hole = _unfilled_square(x)
    if hole is not None:
        return Cat0Result(ok=False, reason="square", witness=hole)
    violation = _median_violation(x, cap)
    if violation is not None:
        return Cat0Result(ok=False, reason="median", witness=violation)
    return Cat0Result(ok=True)


# ---------------------------------------------------------------------------
# hyperplanes


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def hyperplanes(x: CubeComplex) -> list[Hyperplane]:
    """Square-equivalence classes of edges (opposite edges of every 2-cube
    identified), each with the set of cubes containing a class edge."""
    uf = _UnionFind()
    for e in x.edges:
        uf.find(e)
    for sq in x.squares:
        c00, c10, c01, c11 = sq
        uf.union(canonical_cube((c00, c10)), canonical_cube((c01, c11)))
        uf.union(canonical_cube((c00, c01)), canonical_cube((c10, c11)))
    classes: dict[tuple, set] = {}
    for e in x.edges:
        classes.setdefault(uf.find(e), set()).add(e)
    edge_class_list = sorted(
        (frozenset(v) for v in classes.values()),
        key=lambda cls: min([skey(t) for t in e] for e in cls))
    out = []
    for i, cls in enumerate(edge_class_list):
        crossed = set()
        for c in x.cubes:
            k = cube_dim(c)
            found = False
            for pos in range(1 << k):
                for axis in range(k):
                    other = pos ^ (1 << axis)
                    if other < pos:
                        continue
                    if canonical_cube((c[pos], c[other])) in cls:
                        crossed.add(c)
                        found = True
                        break
                if found:
                    break
        out.append(Hyperplane(index=i, edges=cls, crossed_cubes=frozenset(crossed)))
    return out


def halfspaces_of(x: CubeComplex, h: Hyperplane) -> list[frozenset]:
    """Connected components of the 1-skeleton after deleting the class
    edges. CAT(0) complexes give exactly two; other counts are reported."""
    adj = {v: set(ns) for v, ns in x.adjacency.items()}
    for e in h.edges:
        a, b = e
        adj[a].discard(b)
        adj[b].discard(a)
    seen = set()
    comps = []
    for v in x.vertex_order:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (len(c), min(skey(v) for v in c)))
    return comps


def hyperplanes_cross(x: CubeComplex, h1: Hyperplane, h2: Hyperplane) -> bool:
    """True iff the two edge classes meet a common 2-cube in crossing
    directions."""
    edge_to = {}
    for h in (h1, h2):
        for e in h.edges:
            edge_to.setdefault(e, set()).add(h.index)
    for sq in x.squares:
        c00, c10, c01, c11 = sq
        d0 = edge_to.get(canonical_cube((c00, c10)), set())
        d1 = edge_to.get(canonical_cube((c00, c01)), set())
        if (h1.index in d0 and h2.index in d1) or (h2.index in d0 and h1.index in d1):
            return True
    return False


@dataclass(frozen=True)
class HellyResult:
    ok: bool
    family: tuple
    common_cube: tuple | None
    detail: str = ""

    def certificate(self) -> dict:
        if self.ok:
            return {}
        return {"family": list(self.family), "detail": self.detail}


def helly_check(x: CubeComplex, family: list[Hyperplane],
                cat0: Cat0Result | None = None) -> HellyResult:
    """For a pairwise-crossing family on a CAT(0) complex: a common crossed
    cube must exist and the family size is bounded by the dimension."""
    if cat0 is None:
        cat0 = is_cat0(x)
    if not cat0.ok:
        raise NotCat0Error("helly_check requires a CAT(0) complex",
                           certificate=cat0.certificate())
    idxs = tuple(sorted(h.index for h in family))
    for h1, h2 in itertools.combinations(family, 2):
        if not hyperplanes_cross(x, h1, h2):
            return HellyResult(ok=False, family=idxs, common_cube=None,
                               detail=f"hyperplanes {h1.index},{h2.index} do not cross")
    if len(family) > x.dim:
        return HellyResult(ok=False, family=idxs, common_cube=None,
                           detail=f"family of size {len(family)} exceeds dimension {x.dim}")
    crossed_sets = [h.crossed_cubes for h in family]
    common = set.intersection(*(set(s) for s in crossed_sets)) if crossed_sets else set(x.cubes)
    common = [c for c in common if cube_dim(c) >= len(family)]
    if not common:
        return HellyResult(ok=False, family=idxs, common_cube=None,
                           detail="no common crossed cube")
    best = min(common, key=lambda c: (cube_dim(c), [skey(v) for v in c]))
    return HellyResult(ok=True, family=idxs, common_cube=best)


# ---------------------------------------------------------------------------
# halfspace system of a CAT(0) complex


@dataclass(frozen=True)
class HalfspaceDecomposition:
    """Halfspace system of a CAT(0) complex plus the vertex membership of
    each abstract halfspace, so concrete orientations can be read off."""

    system: object  # pocsets.HalfspaceSystem
    members: dict
    hyperplane_list: tuple

    def principal_orientation(self, v):
        from .pocsets import Orientation

        choices = []
        for pair in self.system.hyperplanes:
            a, b = pair
            if v in self.members[a]:
                choices.append(a)
            elif v in self.members[b]:
                choices.append(b)
            else:
                raise UnknownVertexError(
                    f"{v!r} lies in neither side of {pair}", vertex=v)
        return Orientation(choices=tuple(choices))


def halfspace_system_of(x: CubeComplex, cat0: Cat0Result | None = None) -> HalfspaceDecomposition:
    """Vertex-set halves of every hyperplane, ordered by inclusion, with
    complementation as the involution."""
    from .pocsets import build_system

    if cat0 is None:
        cat0 = is_cat0(x)
    if not cat0.ok:
        raise NotCat0Error("halfspace_system_of requires a CAT(0) complex",
                           certificate=cat0.certificate())
    hps = hyperplanes(x)
    members = {}
    ids = []
    star_pairs = []
    for h in hps:
        comps = halfspaces_of(x, h)
        if len(comps) != 2:
            raise NotCat0Error(
                f"hyperplane {h.index} separates into {len(comps)} components",
                hyperplane=h.index)
        plus, minus = f"h{h.index}+", f"h{h.index}-"
        members[plus], members[minus] = comps[0], comps[1]
        ids += [plus, minus]
        star_pairs.append((plus, minus))
    leq = [(a, b) for a in ids for b in ids
           if a != b and members[a] < members[b]]
    system = build_system(ids, star_pairs, leq)
    return HalfspaceDecomposition(system=system, members=members,
                                  hyperplane_list=tuple(hps))
