"""Command-line front end.

Every command reads JSON (from --input FILE or standard input), dispatches to
the library, and writes deterministic JSON (or best-effort SVG) to --output
or standard output.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .core import (
    INF,
    DomainError,
    TropMatrix,
    TropVector,
    dumps,
    matrix_from_json,
    matrix_to_json,
    vector_from_json,
)
from .bipartite import (
    BipartiteGraph,
    enumerate_support_sets,
    graph_from_json,
    is_coherent,
    is_support_set,
    matching_multifield,
    multifield_from_json,
    multifield_to_json,
    support_face_dimension,
)
from .plucker import (
    check_plucker,
    plucker_from_json,
    plucker_to_json,
    recover_matrix,
    stiefel_map,
)
from .arrangement import complex_to_json, enumerate_covectors
from .subdivision import facets_of_D, facets_to_json
from .linspace import (
    bounded_complex,
    bounded_membership,
    certificate_to_json,
    contains,
    decompose,
)

COMMANDS = (
    "stiefel",
    "plucker-check",
    "multifield",
    "coherent",
    "support-set",
    "covectors",
    "facets",
    "member",
    "decompose",
    "bounded",
    "recover",
    "gen",
    "render",
)


def _read_input(args):
    path = getattr(args, "input", "-") or "-"
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read input: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON input: {exc}")


class UsageError(Exception):
    pass


def _matrix_and_vector(obj):
    if not isinstance(obj, dict) or "matrix" not in obj or "vector" not in obj:
        raise UsageError("expected {'matrix': ..., 'vector': ...}")
    return matrix_from_json(obj["matrix"]), vector_from_json(obj["vector"])


def _budget_kwargs(args):
    if getattr(args, "budget", None) is not None:
        return {"budget": args.budget}
    return {}


# ---------------------------------------------------------------------------
# Command handlers: each returns (payload, is_svg_text)
# ---------------------------------------------------------------------------

def cmd_stiefel(args):
    A = matrix_from_json(_read_input(args))
    return plucker_to_json(stiefel_map(A))


def cmd_plucker_check(args):
    p = plucker_from_json(_read_input(args))
    return {"is_plucker": check_plucker(p)}


def cmd_multifield(args):
    A = matrix_from_json(_read_input(args))
    return multifield_to_json(matching_multifield(A))


def cmd_coherent(args):
    mf = multifield_from_json(_read_input(args))
    witness = is_coherent(mf)
    if witness is None:
        return {"coherent": False}
    return {"coherent": True, "witness": matrix_to_json(witness)}


def cmd_support_set(args):
    G = graph_from_json(_read_input(args))
    return {
        "is_support_set": is_support_set(G),
        "h1": support_face_dimension(G),
    }


def cmd_covectors(args):
    A = matrix_from_json(_read_input(args))
    tc = enumerate_covectors(A, **_budget_kwargs(args))
    if args.format == "svg":
        return _svg_arrangement(A, tc)
    return complex_to_json(tc)


def cmd_facets(args):
    A = matrix_from_json(_read_input(args))
    return facets_to_json(facets_of_D(A))


def cmd_member(args):
    A, y = _matrix_and_vector(_read_input(args))
    return {"in_L": contains(stiefel_map(A), y)}


def cmd_decompose(args):
    A, y = _matrix_and_vector(_read_input(args))
    cert = decompose(A, y)
    if cert is None:
        return {"in_L": False}
    return {"in_L": True, "certificate": certificate_to_json(cert)}


def cmd_bounded(args):
    obj = _read_input(args)
    if args.format == "svg":
        A = matrix_from_json(obj["matrix"] if "matrix" in obj else obj)
        return _svg_tree(A)
    A, y = _matrix_and_vector(obj)
    return {"in_bounded_part": bounded_membership(stiefel_map(A), y)}


def cmd_recover(args):
    obj = _read_input(args)
    if not isinstance(obj, dict) or "plucker" not in obj or "support" not in obj:
        raise UsageError("expected {'plucker': ..., 'support': ...}")
    p = plucker_from_json(obj["plucker"])
    G = graph_from_json(obj["support"])
    return matrix_to_json(recover_matrix(p, G))


def cmd_gen(args):
    if args.d < 1 or args.n < args.d:
        raise DomainError("BAD_SHAPE", "need 1 <= d <= n")
    rng = random.Random(args.seed)
    lo, hi = args.min, args.max
    if lo > hi:
        raise UsageError("--min must not exceed --max")
    d, n = args.d, args.n
    if args.mode == "dense":
        entries = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(d)]
    elif args.mode == "support-set":
        kwargs = _budget_kwargs(args)
        supports = enumerate_support_sets(d, n, **kwargs)
        G = rng.choice(supports)
        entries = [
            [rng.randint(lo, hi) if (i, j) in G.edges else "inf" for j in range(1, n + 1)]
            for i in range(1, d + 1)
        ]
    elif args.mode == "pointed":
        # identity block on [d] columns, dense on the remaining columns
        entries = [
            [
                (rng.randint(lo, hi) if (j == i or j > d) else "inf")
                for j in range(1, n + 1)
            ]
            for i in range(1, d + 1)
        ]
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown mode {args.mode}")
    return matrix_to_json(TropMatrix(entries))


def cmd_render(args):
    A = matrix_from_json(_read_input(args))
    if args.kind == "tree":
        return _svg_tree(A)
    return _svg_arrangement(A, enumerate_covectors(A, **_budget_kwargs(args)))


# ---------------------------------------------------------------------------
# Best-effort SVG (exact integer pixel arithmetic only)
# ---------------------------------------------------------------------------

class SvgText(str):
    """Marker type: payload is already-rendered SVG, not JSON."""


def _px(value, lo, span, size, margin):
    """Map an exact rational into integer pixel space."""
    if span == 0:
        return margin + size // 2
    t = (Fraction(value) - lo) / span  # in [0, 1]
    return margin + int(t * size)


def _svg_document(width, height, body):
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    )
    return SvgText(head + "".join(body) + "</svg>")


def _svg_arrangement(A, tc):
    if A.d > 3:
        raise DomainError("BAD_FORMAT", "arrangement rendering requires d <= 3")
    size, margin = 400, 40
    # gauge-fixed coordinates: use (x_2, x_3) (missing coordinates are 0)
    pts = {}
    for cell in tc.cells:
        x = cell.point
        u = x[1] if A.d >= 2 else Fraction(0)
        v = x[2] if A.d >= 3 else Fraction(0)
        pts[cell.covector.key()] = (u, v)
    us = [u for u, _ in pts.values()]
    vs = [v for _, v in pts.values()]
    ulo, uspan = min(us), max(us) - min(us)
    vlo, vspan = min(vs), max(vs) - min(vs)
    body = []
    verts = [c for c in tc.cells if c.dim == 0]
    for cell in tc.cells:
        if cell.dim != 1:
            continue
        mid = pts[cell.covector.key()]
        ends = [
            pts[v.covector.key()]
            for v in verts
            if cell.polyhedron.contains(v.point)
        ]
        if len(ends) == 2:
            (u1, v1), (u2, v2) = ends
        elif len(ends) == 1:
            (u1, v1) = ends[0]
            # extend the ray through the relative-interior witness
            u2 = mid[0] + (mid[0] - u1)
            v2 = mid[1] + (mid[1] - v1)
        else:
            continue
        body.append(
            '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
            % (
                _px(u1, ulo, uspan, size, margin),
                _px(v1, vlo, vspan, size, margin),
                _px(u2, ulo, uspan, size, margin),
                _px(v2, vlo, vspan, size, margin),
            )
        )
    for cell in tc.cells:
        u, v = pts[cell.covector.key()]
        x = _px(u, ulo, uspan, size, margin)
        y = _px(v, vlo, vspan, size, margin)
        if cell.dim == 0:
            body.append('<circle cx="%d" cy="%d" r="4" fill="black"/>' % (x, y))
        label = "".join(
            "{" + ",".join(str(i) for i in I) + "}" for I in cell.covector.tuple_view()
        )
        body.append(
            '<text x="%d" y="%d" font-size="9">%s</text>' % (x + 6, y - 6, label)
        )
    return _svg_document(size + 2 * margin, size + 2 * margin, body)


def _svg_tree(A):
    if A.d != 2:
        raise DomainError("BAD_FORMAT", "tree rendering requires d = 2")
    cells = bounded_complex(A)
    dims = {}
    from .arrangement import enumerate_covectors as _tc

    tc = _tc(A)
    for cov, _ in cells:
        dims[cov.key()] = tc.cell_of(cov).dim
    verts = [cov for cov, _ in cells if dims[cov.key()] == 0]
    segs = [cov for cov, _ in cells if dims[cov.key()] == 1]
    order = {v.key(): idx for idx, v in enumerate(verts)}
    step, y0, margin = 90, 60, 40
    body = []
    for seg in segs:
        ends = [v for v in verts if v.edges > seg.edges]
        if len(ends) == 2:
            x1 = margin + step * order[ends[0].key()]
            x2 = margin + step * order[ends[1].key()]
            body.append(
                '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
                % (x1, y0, x2, y0)
            )
    for v in verts:
        x = margin + step * order[v.key()]
        body.append('<circle cx="%d" cy="%d" r="4" fill="black"/>' % (x, y0))
    width = 2 * margin + step * max(len(verts) - 1, 0)
    return _svg_document(max(width, 2 * margin), 2 * y0, body)


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

HANDLERS = {
    "stiefel": cmd_stiefel,
    "plucker-check": cmd_plucker_check,
    "multifield": cmd_multifield,
    "coherent": cmd_coherent,
    "support-set": cmd_support_set,
    "covectors": cmd_covectors,
    "facets": cmd_facets,
    "member": cmd_member,
    "decompose": cmd_decompose,
    "bounded": cmd_bounded,
    "recover": cmd_recover,
    "gen": cmd_gen,
    "render": cmd_render,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tropstiefel",
        description="Exact tropical Stiefel map toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name != "gen":
            p.add_argument("--input", default="-", help="input JSON file or - for stdin")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--output", default=None)
        p.add_argument("--format", choices=("json", "svg"), default="json")
        if name == "gen":
            p.add_argument("d", type=int)
            p.add_argument("n", type=int)
            p.add_argument(
                "--mode", choices=("dense", "support-set", "pointed"), default="dense"
            )
            p.add_argument("--min", type=int, default=0)
            p.add_argument("--max", type=int, default=9)
        if name == "render":
            p.add_argument("--kind", choices=("arrangement", "tree"), default="arrangement")
    return parser


def _emit(args, payload):
    if isinstance(payload, SvgText):
        text = str(payload)
    else:
        text = dumps(payload)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        payload = HANDLERS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except DomainError as exc:
        _emit(args, {"error": exc.code})
        return 1
    _emit(args, payload)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
