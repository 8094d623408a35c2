"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: grid and
torus complexes are written down cell by cell; dihedral groups, the rank-3
affine reflection group, and PGL(2,Z) are modeled by exact arithmetic
(signed rotations, affine permutations, integer matrices up to sign); the
ShortLex normal form oracle is a plain BFS over those models.
"""

from __future__ import annotations

import itertools
import random

from cubical import build_complex
from cubical.complexes import CubeComplex


# ---------------------------------------------------------------------------
# complexes


def grid_complex(*cells) -> CubeComplex:
    """Standard cubing of a box with the given cell counts per axis."""
    dims = len(cells)
    ranges = [range(c + 1) for c in cells]
    vertices = [tuple(p) for p in itertools.product(*ranges)]
    cubes: dict[int, list] = {}
    for k in range(1, dims + 1):
        for axes in itertools.combinations(range(dims), k):
            spans = [range(cells[a]) for a in axes]
            others = [range(cells[a] + 1) if a not in axes else None
                      for a in range(dims)]
            for base in itertools.product(
                    *[others[a] if a not in axes else spans[axes.index(a)]
                      for a in range(dims)]):
                corners = []
                for bits in range(1 << k):
                    p = list(base)
                    for i, a in enumerate(axes):
                        p[a] += (bits >> i) & 1
                    corners.append(tuple(p))
                cubes.setdefault(k, []).append(tuple(corners))
    return build_complex(vertices, cubes)


def grid_from_cells(cells_2d) -> CubeComplex:
    """2-complex from a list of unit-square cells (i, j)."""
    vertices = set()
    edges = set()
    squares = []
    for (i, j) in cells_2d:
        quad = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)]
        vertices.update(quad)
        edges.add(((i, j), (i + 1, j)))
        edges.add(((i, j + 1), (i + 1, j + 1)))
        edges.add(((i, j), (i, j + 1)))
        edges.add(((i + 1, j), (i + 1, j + 1)))
        squares.append(tuple(quad))
    return build_complex(sorted(vertices), {1: sorted(edges), 2: squares})


def torus_3x3() -> CubeComplex:
    vertices = [(i, j) for i in range(3) for j in range(3)]
    edges, squares = [], []
    for i in range(3):
        for j in range(3):
            edges.append(((i, j), ((i + 1) % 3, j)))
            edges.append(((i, j), (i, (j + 1) % 3)))
            squares.append(((i, j), ((i + 1) % 3, j),
                            (i, (j + 1) % 3), ((i + 1) % 3, (j + 1) % 3)))
    return build_complex(vertices, {1: edges, 2: squares})


def cube_boundary_3() -> CubeComplex:
    """The six squares of a 3-cube without the solid cube."""
    solid = grid_complex(1, 1, 1)
    squares = sorted(solid.by_dim[2])
    edges = sorted(solid.by_dim[1])
    return build_complex(sorted(solid.vertices), {1: edges, 2: squares})


def hollow_square() -> CubeComplex:
    return build_complex(
        "abcd", {1: [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]})


def tree_complex(edges) -> CubeComplex:
    vertices = sorted({v for e in edges for v in e})
    return build_complex(vertices, {1: sorted(tuple(e) for e in edges)})


def path_complex(k: int) -> CubeComplex:
    return tree_complex([(i, i + 1) for i in range(k)])


def star_complex(k: int) -> CubeComplex:
    return tree_complex([(0, i) for i in range(1, k + 1)])


def random_tree_complex(n: int, seed: int) -> CubeComplex:
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return tree_complex(edges)


def cat0_corpus() -> list[tuple[str, CubeComplex]]:
    """At least 20 CAT(0) complexes, all with <= 64 vertices."""
    out = [
        ("edge", grid_complex(1)),
        ("square", grid_complex(1, 1)),
        ("cube3", grid_complex(1, 1, 1)),
        ("cube4", grid_complex(1, 1, 1, 1)),
        ("grid2x2", grid_complex(2, 2)),
        ("grid3x3", grid_complex(3, 3)),
        ("grid4x4", grid_complex(4, 4)),
        ("grid2x4", grid_complex(2, 4)),
        ("grid7x1", grid_complex(7, 1)),
        ("grid2x2x2", grid_complex(2, 2, 2)),
        ("grid3x2x1", grid_complex(3, 2, 1)),
        ("lshape", grid_from_cells([(0, 0), (1, 0), (0, 1)])),
        ("staircase", grid_from_cells([(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)])),
        ("plus", grid_from_cells([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])),
        ("path1", path_complex(1)),
        ("path5", path_complex(5)),
        ("star3", star_complex(3)),
        ("star5", star_complex(5)),
        ("rtree17", random_tree_complex(17, seed=1)),
        ("rtree30", random_tree_complex(30, seed=7)),
        ("corner3d", grid_from_cells_3d([(0, 0, 0), (1, 0, 0), (0, 1, 0)])),
        ("tripod_square", tripod_with_square()),
    ]
    for name, x in out:
        assert len(x.vertices) <= 64, name
    return out


def grid_from_cells_3d(cells) -> CubeComplex:
    """3-complex from a list of unit-cube cells (i, j, k)."""
    vertices = set()
    cubes: dict[int, set] = {1: set(), 2: set(), 3: set()}
    for cell in cells:
        i, j, k = cell
        corners = []
        for bits in range(8):
            corners.append((i + (bits & 1), j + ((bits >> 1) & 1),
                            k + ((bits >> 2) & 1)))
        vertices.update(corners)
        cubes[3].add(tuple(corners))
        for axis in range(3):
            for eps in (0, 1):
                face = tuple(c for idx, c in enumerate(corners)
                             if (idx >> axis) & 1 == eps)
                cubes[2].add(face)
        for a in range(3):
            for bits in range(8):
                if (bits >> a) & 1:
                    continue
                cubes[1].add((corners[bits], corners[bits | (1 << a)]))
    return build_complex(sorted(vertices), {k: sorted(v) for k, v in cubes.items()})


def tripod_with_square() -> CubeComplex:
    """A square with a path of two edges hanging off one corner."""
    return build_complex(
        ["a", "b", "c", "d", "e", "f"],
        {1: [("a", "b"), ("c", "d"), ("a", "c"), ("b", "d"),
             ("d", "e"), ("e", "f")],
         2: [("a", "b", "c", "d")]})


# ---------------------------------------------------------------------------
# exact group models (oracles for the Coxeter module)


class DihedralOracle:
    """I2(m) as signed rotations of Z_m: element (a, d) acts x -> d*x + a."""

    def __init__(self, m: int):
        self.m = m

    def identity(self):
        return (0, 1)

    def generator(self, i: int):
        # two reflections whose product is the rotation x -> x + 1
        return (0, -1) if i == 0 else (1, -1)

    def mul(self, g, h):
        a, d = g
        b, e = h
        return ((b * d + a) % self.m, d * e)

    def eval_word(self, word):
        g = self.identity()
        for s in word:
            g = self.mul(g, self.generator(s))
        return g


class AffinePermOracle:
    """Rank-3 affine reflection group of the plane as affine permutations
    f: Z -> Z with f(i + 3) = f(i) + 3, stored by the window (f1, f2, f3)."""

    def identity(self):
        return (1, 2, 3)

    def generator(self, i: int):
        # right multiplication swaps window slots i, i+1 with a shift at the seam
        return i

    def eval_word(self, word):
        window = list(self.identity())
        for s in word:
            window = self._apply(window, s)
        return tuple(window)

    def _apply(self, window, s):
        w = list(window)
        if s == 0:
            w[0], w[1] = w[1], w[0]
        elif s == 1:
            w[1], w[2] = w[2], w[1]
        else:
            w[0], w[2] = w[2] - 3, w[0] + 3
        return w


class PGL2ZOracle:
    """PGL(2,Z) by integer matrices up to sign, generated by the three
    reflections in the sides of the fundamental hyperbolic triangle
    (unit circle, Re z = 1/2, imaginary axis); their orders match the
    Coxeter matrix [[1,3,2],[3,1,inf],[2,inf,1]]."""

    GENS = (
        ((0, 1), (1, 0)),    # g1: z -> 1/conj(z)
        ((-1, 1), (0, 1)),   # g2: z -> 1 - conj(z); (g1 g2)^3 = 1
        ((1, 0), (0, -1)),   # g3: z -> -conj(z); (g1 g3)^2 = 1, g2 g3 free
    )

    def identity(self):
        return ((1, 0), (0, 1))

    def generator(self, i: int):
        return self.GENS[i]

    def _norm(self, m):
        flat = (m[0][0], m[0][1], m[1][0], m[1][1])
        for x in flat:
            if x != 0:
                return m if x > 0 else tuple(tuple(-v for v in row) for row in m)
        raise ValueError("zero matrix")

    def mul(self, a, b):
        out = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
            for i in range(2))
        return self._norm(out)

    def eval_word(self, word):
        g = self.identity()
        for s in word:
            g = self.mul(g, self.generator(s))
        return g


def oracle_shortlex_forms(oracle, rank: int, radius: int):
    """BFS normal forms: element -> ShortLex-least reduced word, expanding
    words in lexicographic order level by level."""
    forms = {oracle.eval_word(()): ()}
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for s in range(rank):
                u = w + (s,)
                g = oracle.eval_word(u)
                if g not in forms:
                    forms[g] = u
                    nxt.append(u)
        frontier = sorted(nxt)
        if not frontier:
            break
    return forms
