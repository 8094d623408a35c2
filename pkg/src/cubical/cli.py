"""Command-line front end with machine-readable JSON verdicts.

Exit codes: 0 for an ok verdict, 1 for a negative verdict (still a valid
run), 2 for input errors. Output is deterministic for a fixed invocation;
--seed is recorded in the verdict for reproducibility of any sampling a
caller layers on top.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import __version__
from .complexes import (
    dump_complex,
    halfspaces_of,
    hyperplanes,
    hyperplanes_cross,
    is_cat0,
    is_flag,
    is_locally_cat0,
    load_complex,
    vertex_link,
)
from .coxeter import (
    cayley_ball,
    cubulate,
    ends_profile,
    halfspace_system,
    load_matrix,
    reduce_word,
    walls,
)
from .coxeter import halfspace as cox_halfspace
from .dotio import ball_dot, crossing_graph_dot, simple_graph_dot, skeleton_dot
from .errors import CubicalError, InputFormatError
from .graphs import girth, graph_isomorphic, is_regular
from .pocsets import dual_complex, dump_system, load_system, maximal_cubes, seed_vertex
from .treespace import (
    cone_distance,
    count_binary,
    dump_tree,
    enumerate_topologies,
    link_of_origin,
    to_orthant,
    treespace_complex,
    validate_tree,
)

PETERSEN = {
    0: {1, 4, 5}, 1: {0, 2, 6}, 2: {1, 3, 7}, 3: {2, 4, 8}, 4: {0, 3, 9},
    5: {0, 7, 8}, 6: {1, 8, 9}, 7: {2, 5, 9}, 8: {3, 5, 6}, 9: {4, 6, 7},
}


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputFormatError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON in {path}: {exc}")


def _write(path: str, text: str):
    with open(path, "w") as fh:
        fh.write(text)


class Run:
    """Collects the verdict of one invocation."""

    def __init__(self, args):
        self.args = args
        self.ok = True
        self.certificate: dict = {}
        self.stats: dict = {}

    def emit(self) -> int:
        verdict = {"ok": self.ok, "certificate": self.certificate,
                   "stats": self.stats}
        if self.args.seed is not None:
            verdict["seed"] = self.args.seed
        if self.args.pretty:
            text = json.dumps(verdict, indent=2, sort_keys=True)
        else:
            text = json.dumps(verdict, sort_keys=True, separators=(",", ":"))
        print(text)
        return 0 if self.ok else 1


def _common_flags(p):
    p.add_argument("--cap", type=int, default=100_000,
                   help="size cap for enumerations")
    p.add_argument("--seed", type=int, default=None,
                   help="seed recorded in the verdict")
    p.add_argument("--pretty", action="store_true", help="indent the verdict")
    p.add_argument("--dot", metavar="PATH", default=None,
                   help="write a DOT rendering here")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write the primary JSON payload here")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cubical",
        description="exact CAT(0) cube complex combinatorics")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="group", required=True)

    cx = sub.add_parser("complex", help="cubical complexes").add_subparsers(
        dest="cmd", required=True)
    p = cx.add_parser("check", help="link condition, medians, CAT(0) verdict")
    p.add_argument("file")
    _common_flags(p)
    p = cx.add_parser("links", help="vertex links and flag verdicts")
    p.add_argument("file")
    p.add_argument("--vertex", default=None, help="restrict to one vertex id")
    _common_flags(p)
    p = cx.add_parser("hyperplanes", help="hyperplanes, halfspaces, crossings")
    p.add_argument("file")
    _common_flags(p)
    p = cx.add_parser("export", help="re-emit canonical JSON / DOT")
    p.add_argument("file")
    _common_flags(p)

    pc = sub.add_parser("pocset", help="halfspace systems").add_subparsers(
        dest="cmd", required=True)
    p = pc.add_parser("validate", help="validate a halfspace system")
    p.add_argument("file")
    _common_flags(p)
    p = pc.add_parser("dual", help="dual cube complex of one component")
    p.add_argument("file")
    _common_flags(p)
    p = pc.add_parser("cubes", help="maximal cubes and their families")
    p.add_argument("file")
    _common_flags(p)

    co = sub.add_parser("coxeter", help="Coxeter groups").add_subparsers(
        dest="cmd", required=True)
    for name, extra in [
        ("ball", []), ("walls", ["root-edge"]), ("halfspaces", ["margin"]),
        ("cubulate", ["margin"]), ("ends", []), ("reduce", ["word"]),
    ]:
        p = co.add_parser(name)
        p.add_argument("--matrix", required=True, help="Coxeter matrix JSON")
        if name != "reduce":
            p.add_argument("--radius", type=int, required=True)
        if "margin" in extra:
            p.add_argument("--margin", type=int, default=2,
                           help="walls are kept only when defined within "
                                "radius - margin (default 2)")
        if "word" in extra:
            p.add_argument("--word", required=True,
                           help="1-based generator indices, e.g. '1 2 1'")
        if "root-edge" in extra:
            p.add_argument("--root-edge", default=None, metavar="U,V",
                           help="two adjacent words ('e,1'): color the DOT "
                                "vertices by the root H(U,V)")
        p.add_argument("--seed-element", default=None,
                       help="1-based word seeding the dual enumeration")
        _common_flags(p)

    tr = sub.add_parser("tree", help="BHV tree space").add_subparsers(
        dest="cmd", required=True)
    p = tr.add_parser("validate", help="canonicalize a tree")
    p.add_argument("file")
    _common_flags(p)
    p = tr.add_parser("count", help="(2n-3)!! binary topologies")
    p.add_argument("-n", type=int, required=True)
    _common_flags(p)
    p = tr.add_parser("enumerate", help="enumerate binary topologies")
    p.add_argument("-n", type=int, required=True)
    _common_flags(p)
    p = tr.add_parser("link", help="link of the origin")
    p.add_argument("-n", type=int, required=True)
    _common_flags(p)
    p = tr.add_parser("complex", help="unit truncation as a cube complex")
    p.add_argument("-n", type=int, required=True)
    _common_flags(p)
    p = tr.add_parser("dist", help="distance between two trees")
    p.add_argument("file1")
    p.add_argument("file2")
    _common_flags(p)
    return top


# ---------------------------------------------------------------------------
# handlers


def _complex_check(run):
    x = load_complex(_read_json(run.args.file))
    local = is_locally_cat0(x)
    run.stats = x.counts()
    run.certificate["locally_cat0"] = {"ok": local.ok, **local.certificate()}
    if local.ok:
        global_ = is_cat0(x, cap=run.args.cap)
        run.certificate["cat0"] = {"ok": global_.ok, **global_.certificate()}
        run.ok = global_.ok
    else:
        run.certificate["cat0"] = {"ok": False, "reason": "link"}
        run.ok = False
    if run.args.dot:
        _write(run.args.dot, skeleton_dot(x, hyperplanes(x)))


def _complex_links(run):
    x = load_complex(_read_json(run.args.file))
    targets = list(x.vertex_order)
    if run.args.vertex is not None:
        targets = [v for v in targets if str(v) == run.args.vertex]
        if not targets:
            raise InputFormatError(f"unknown vertex {run.args.vertex}")
    links = {}
    for v in targets:
        link = vertex_link(x, v)
        res = is_flag(link)
        links[str(v)] = {**link.counts(), "flag": res.ok, **res.certificate()}
    run.stats = {"vertices_checked": len(targets), "links": links}
    run.ok = all(entry["flag"] for entry in links.values())
    if not run.ok:
        run.certificate["non_flag_links"] = [
            v for v, entry in links.items() if not entry["flag"]]


def _complex_hyperplanes(run):
    x = load_complex(_read_json(run.args.file))
    hps = hyperplanes(x)
    sides = {h.index: halfspaces_of(x, h) for h in hps}
    crossing = sorted(
        (h1.index, h2.index)
        for h1, h2 in itertools.combinations(hps, 2)
        if hyperplanes_cross(x, h1, h2))
    run.stats = {
        **x.counts(),
        "hyperplanes": len(hps),
        "edge_class_sizes": [len(h.edges) for h in hps],
        "halfspace_counts": {str(i): len(c) for i, c in sides.items()},
        "crossing_pairs": [list(p) for p in crossing],
    }
    run.ok = all(len(c) == 2 for c in sides.values())
    if not run.ok:
        run.certificate["bad_separations"] = {
            str(i): len(c) for i, c in sides.items() if len(c) != 2}
    if run.args.dot:
        _write(run.args.dot, crossing_graph_dot(crossing, len(hps)))


def _complex_export(run):
    x = load_complex(_read_json(run.args.file))
    payload = dump_complex(x)
    run.stats = x.counts()
    if run.args.out:
        _write(run.args.out, json.dumps(payload, indent=2, sort_keys=True))
    else:
        run.certificate["complex"] = payload
    if run.args.dot:
        _write(run.args.dot, skeleton_dot(x, hyperplanes(x)))


def _pocset_validate(run):
    s = load_system(_read_json(run.args.file))
    run.stats = {"halfspaces": len(s.halfspaces),
                 "hyperplanes": len(s.hyperplanes),
                 "strict_relations": len(s.leq)}


def _pocset_dual(run):
    s = load_system(_read_json(run.args.file))
    seed = seed_vertex(s)
    dual = dual_complex(s, seed, cap=run.args.cap)
    x = dual.complex
    run.stats = {**x.counts(), "hyperplanes": len(s.hyperplanes)}
    payload = {
        "complex": dump_complex(x),
        "orientations": {str(i): dual.bitmap(i)
                         for i in range(len(dual.orientations))},
    }
    if run.args.out:
        _write(run.args.out, json.dumps(payload, indent=2, sort_keys=True))
    else:
        run.certificate["dual"] = payload
    if run.args.dot:
        _write(run.args.dot, skeleton_dot(x, hyperplanes(x)))


def _pocset_cubes(run):
    s = load_system(_read_json(run.args.file))
    seed = seed_vertex(s)
    dual = dual_complex(s, seed, cap=run.args.cap)
    cubes = maximal_cubes(dual)
    run.stats = {
        "maximal_cubes": len(cubes),
        "dimensions": sorted({len(fam) for _, fam in cubes}),
        "families": [list(fam) for _, fam in cubes],
    }


def _parse_word(text: str) -> tuple:
    """1-based generator word: '1 2 1', '121', or 'e' for the identity."""
    text = text.strip()
    if text in ("e", ""):
        return ()
    letters = text.replace(",", " ").split()
    if len(letters) == 1 and len(letters[0]) > 1:
        letters = list(letters[0])
    try:
        return tuple(int(ch) - 1 for ch in letters)
    except ValueError:
        raise InputFormatError(f"cannot parse word {text!r}")


def _coxeter_ball(run):
    sys_ = load_matrix(_read_json(run.args.matrix))
    ball = cayley_ball(sys_, run.args.radius, cap=run.args.cap)
    run.stats = {
        "rank": sys_.rank,
        "radius": ball.radius,
        "elements": len(ball.elements),
        "sphere_sizes": {str(r): len(ball.sphere(r))
                         for r in range(ball.radius + 1) if ball.sphere(r)},
        "edges": len(ball.edges),
    }
    if run.args.dot:
        _write(run.args.dot, ball_dot(ball, walls(ball)))


def _coxeter_walls(run):
    sys_ = load_matrix(_read_json(run.args.matrix))
    ball = cayley_ball(sys_, run.args.radius, cap=run.args.cap)
    ws = walls(ball)
    covered = sum(len(w.edges) for w in ws)
    run.stats = {
        "walls": len(ws),
        "edges": len(ball.edges),
        "edges_in_walls": covered,
        "wall_sizes": [len(w.edges) for w in ws],
    }
    run.ok = covered == len(ball.edges)
    if not run.ok:
        run.certificate["uncovered_edges"] = len(ball.edges) - covered
    if run.args.dot:
        root = None
        if run.args.root_edge:
            parts = run.args.root_edge.split(",")
            if len(parts) != 2:
                raise InputFormatError("--root-edge wants 'U,V'")
            root = cox_halfspace(ball, _parse_word(parts[0]),
                                 _parse_word(parts[1]))
            run.stats["root_side_size"] = len(root.side)
        _write(run.args.dot, ball_dot(ball, ws, root=root))


def _coxeter_halfspaces(run):
    sys_ = load_matrix(_read_json(run.args.matrix))
    ball = cayley_ball(sys_, run.args.radius, cap=run.args.cap)
    th = halfspace_system(ball, run.args.margin)
    run.stats = {
        "walls_selected": len(th.walls),
        "hyperplanes": len(th.system.hyperplanes),
        "untrusted_pairs": [[i, j] for i, j, _ in th.untrusted_pairs],
    }
    payload = dump_system(th.system)
    if run.args.out:
        _write(run.args.out, json.dumps(payload, indent=2, sort_keys=True))
    else:
        run.certificate["system"] = payload


def _coxeter_cubulate(run):
    sys_ = load_matrix(_read_json(run.args.matrix))
    ball = cayley_ball(sys_, run.args.radius, cap=run.args.cap)
    seed_element = ()
    if run.args.seed_element:
        seed_element = _parse_word(run.args.seed_element)
    cub = cubulate(ball, run.args.margin, cap=run.args.cap,
                   seed_element=seed_element)
    dims = sorted(cub.maximal_cube_dimensions())
    run.stats = {
        **cub.dual.complex.counts(),
        "ball_elements": len(ball.elements),
        "walls_selected": len(cub.truncated.walls),
        "maximal_cube_dimensions": dims,
        "injective_on_ball": cub.injective_on_ball,
        "trusted_radius": cub.trusted_radius,
    }
    if run.args.out:
        payload = {
            "complex": dump_complex(cub.dual.complex),
            "nu": {"".join(str(s + 1) for s in g) or "e": vid
                   for g, vid in cub.nu.items()},
        }
        _write(run.args.out, json.dumps(payload, indent=2, sort_keys=True))
    if run.args.dot:
        _write(run.args.dot, skeleton_dot(cub.dual.complex))


def _coxeter_ends(run):
    sys_ = load_matrix(_read_json(run.args.matrix))
    report = ends_profile(sys_, run.args.radius, cap=run.args.cap)
    run.stats = report.certificate()
    run.certificate["verdict"] = report.verdict


def _coxeter_reduce(run):
    sys_ = load_matrix(_read_json(run.args.matrix))
    w = _parse_word(run.args.word)
    canon = reduce_word(sys_, w)
    run.stats = {
        "input_length": len(w),
        "length": len(canon),
        "canonical": "".join(str(s + 1) for s in canon) or "e",
    }


def _tree_validate(run):
    t = validate_tree(_read_json(run.args.file))
    o = to_orthant(t)
    run.stats = {
        "n": t.n,
        "clusters": [sorted(c) for c, _ in o.coords],
        "lengths": [l for _, l in o.coords],
        "binary": len(o.topology) == t.n - 2,
        "notes": list(t.notes),
    }
    if run.args.out:
        _write(run.args.out, json.dumps(dump_tree(t), indent=2, sort_keys=True))


def _tree_count(run):
    run.stats = {"n": run.args.n, "binary_topologies": count_binary(run.args.n)}


def _tree_enumerate(run):
    tops = enumerate_topologies(run.args.n, cap=run.args.cap)
    run.stats = {
        "n": run.args.n,
        "enumerated": len(tops),
        "formula": count_binary(run.args.n),
    }
    run.ok = run.stats["enumerated"] == run.stats["formula"]
    if not run.ok:
        run.certificate["count_mismatch"] = run.stats
    if run.args.out:
        payload = sorted(sorted(sorted(c) for c in t) for t in tops)
        _write(run.args.out, json.dumps(payload, indent=2))


def _tree_link(run):
    link = link_of_origin(run.args.n)
    adj = link.adjacency
    run.stats = {
        "n": run.args.n,
        **link.counts(),
        "edges": len(link.edges),
        "girth": girth(adj),
    }
    if run.args.n == 4:
        cert = {
            "vertices": len(link.vertices) == 10,
            "edges": len(link.edges) == 15,
            "three_regular": is_regular(adj, 3),
            "girth_five": girth(adj) == 5,
            "isomorphic_to_petersen": graph_isomorphic(adj, PETERSEN),
        }
        run.certificate["is_petersen"] = all(cert.values())
        run.certificate["petersen_checks"] = cert
        run.ok = all(cert.values())
    if run.args.dot:
        _write(run.args.dot, simple_graph_dot(adj, "link"))


def _tree_complex(run):
    from cubical.complexes import DEFAULT_MEDIAN_CAP

    x = treespace_complex(run.args.n, cap=run.args.cap)
    run.stats = {**x.counts(), "n": run.args.n}
    if len(x.vertices) <= DEFAULT_MEDIAN_CAP:
        verdict = is_cat0(x)
        run.certificate["cat0"] = {"ok": verdict.ok, **verdict.certificate()}
        run.ok = verdict.ok
    else:
        # exhaustive median verification is cubic in memory; fall back to
        # the link condition and say so
        local = is_locally_cat0(x)
        run.certificate["cat0"] = {
            "checked": False,
            "reason": f"median check over {len(x.vertices)} vertices "
                      f"exceeds the exhaustive cap {DEFAULT_MEDIAN_CAP}"}
        run.certificate["locally_cat0"] = {"ok": local.ok, **local.certificate()}
        run.ok = local.ok
    if run.args.out:
        _write(run.args.out,
               json.dumps(dump_complex(x), indent=2, sort_keys=True))
    if run.args.dot:
        _write(run.args.dot, skeleton_dot(x))


def _tree_dist(run):
    t1 = validate_tree(_read_json(run.args.file1))
    t2 = validate_tree(_read_json(run.args.file2))
    res = cone_distance(t1, t2)
    run.stats = {"value": res.value, "exact": res.exact, "path": res.path}


HANDLERS = {
    ("complex", "check"): _complex_check,
    ("complex", "links"): _complex_links,
    ("complex", "hyperplanes"): _complex_hyperplanes,
    ("complex", "export"): _complex_export,
    ("pocset", "validate"): _pocset_validate,
    ("pocset", "dual"): _pocset_dual,
    ("pocset", "cubes"): _pocset_cubes,
    ("coxeter", "ball"): _coxeter_ball,
    ("coxeter", "walls"): _coxeter_walls,
    ("coxeter", "halfspaces"): _coxeter_halfspaces,
    ("coxeter", "cubulate"): _coxeter_cubulate,
    ("coxeter", "ends"): _coxeter_ends,
    ("coxeter", "reduce"): _coxeter_reduce,
    ("tree", "validate"): _tree_validate,
    ("tree", "count"): _tree_count,
    ("tree", "enumerate"): _tree_enumerate,
    ("tree", "link"): _tree_link,
    ("tree", "complex"): _tree_complex,
    ("tree", "dist"): _tree_dist,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    run = Run(args)
    handler = HANDLERS[(args.group, args.cmd)]
    try:
        handler(run)
    except CubicalError as exc:
        verdict = {"ok": False, "certificate": exc.certificate(), "stats": {}}
        text = (json.dumps(verdict, indent=2, sort_keys=True) if args.pretty
                else json.dumps(verdict, sort_keys=True, separators=(",", ":")))
        print(text)
        return 2
    return run.emit()


if __name__ == "__main__":
    sys.exit(main())
