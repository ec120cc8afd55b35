"""Command-line front end: cell generation, dimension/mos queries, sweep
tables, verification and witness export.

Exit codes: 0 ok, 2 invalid input or geometry, 3 scan cap reached,
4 oracle/formula mismatch, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
from itertools import combinations

from . import formulas, splinespace, taylor
from .errors import CapReachedError, InputError, InvalidGeometryError, SupersmoothError
from .geometry import (
    Cell,
    as_point,
    cell_from_dict,
    cell_to_dict,
    count_distinct_slopes_2d,
    make_alfeld,
    make_clough_tocher,
    make_facet_split,
    make_split_k_n,
    make_star_cell_2d,
    make_two_cell,
    parse_scalar,
    validate_cell,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4
EXIT_VERIFY = 5

GEN_KINDS = ("clough-tocher", "star2d", "alfeld", "split-kn", "facet", "two-cell")


# ---------------------------------------------------------------------------
# small parsing helpers


def _parse_point(text: str):
    return as_point([parse_scalar(t.strip()) for t in text.split(",")])


def _parse_points(text: str):
    return [_parse_point(part) for part in text.split(";") if part.strip()]


def _unit_simplex(n: int):
    zero = [parse_scalar("0")] * n
    pts = [tuple(zero)]
    for i in range(n):
        pts.append(tuple(parse_scalar("1") if j == i else parse_scalar("0") for j in range(n)))
    return pts


def _barycenter(points):
    n = len(points[0])
    m = len(points)
    return tuple(sum(p[i] for p in points) / m for i in range(n))


_GENERIC_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def _generic_choices(k: int, n: int, points):
    """Deterministic non-symmetric interior points for every split face;
    facet points are verified non-collinear with v and the opposite vertex."""
    choices = {}
    for j in range(k, n + 1):
        for ids in combinations(range(n + 1), j + 1):
            weights = [_GENERIC_PRIMES[t] + 1 + len(ids) for t in ids]
            total = sum(weights)
            pts = [points[i] for i in ids]
            choices[ids] = tuple(
                sum(w * p[c] for w, p in zip(weights, pts)) / total for c in range(n)
            )
    if k == n - 1:
        full = tuple(range(n + 1))
        v = choices[full]
        for i in range(n + 1):
            ids = tuple(t for t in range(n + 1) if t != i)
            bump = 0
            while _collinear(points[i], v, choices[ids]):
                bump += 1
                weights = [_GENERIC_PRIMES[t] + 1 + len(ids) for t in ids]
                weights[0] += bump
                total = sum(weights)
                pts = [points[t] for t in ids]
                choices[ids] = tuple(
                    sum(w * p[c] for w, p in zip(weights, pts)) / total for c in range(n)
                )
    return choices


def _collinear(a, b, c) -> bool:
    n = len(a)
    u = [b[i] - a[i] for i in range(n)]
    w = [c[i] - a[i] for i in range(n)]
    for i, j in combinations(range(n), 2):
        if u[i] * w[j] - u[j] * w[i] != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# family stamps and formula pairing


def _family_for_dim(family: dict, d: int, r: int):
    kind = family.get("kind")
    if kind == "cell2d":
        return formulas.dim_2d_cell(family["m"], family["m_v"], d, r)
    if kind == "alfeld":
        return formulas.dim_alfeld(family["n"], d, r)
    if kind == "facet":
        if family.get("aligned") or r == 1:
            return formulas.dim_facet_aligned(family["n"], d, r)
        return None
    if kind == "two_cell":
        return formulas.dim_two_cell(family["n"], d, r)
    return None


def _family_for_mos(family: dict, r: int):
    """("exact", value) or ("bounds", lo, hi) or None."""
    kind = family.get("kind")
    if kind == "cell2d":
        return ("exact", formulas.mos_2d(family["m"], family["m_v"], r))
    if kind == "alfeld":
        return ("exact", formulas.mos_alfeld(family["n"], r))
    if kind == "facet":
        if family.get("aligned") or r == 1:
            return ("exact", formulas.mos_facet(family["n"], r))
        return ("bounds",) + formulas.wf_bounds(family["n"] - 1, family["n"], r)
    if kind == "two_cell":
        return ("exact", formulas.mos_two_cell(family["n"], r))
    if kind == "wf" and family["k"] >= 2:
        return ("bounds",) + formulas.wf_bounds(family["k"], family["n"], r)
    return None


def _resolve_family(args, stamped: dict | None) -> dict | None:
    requested = getattr(args, "formula", "auto")
    if requested == "none":
        return None
    if requested == "auto":
        return stamped
    if stamped is None:
        raise InputError("explicit --formula needs a generator-stamped cell file")
    aliases = {"two-cell": "two_cell"}
    if aliases.get(requested, requested) != stamped.get("kind"):
        raise InputError(
            f"cell file is stamped {stamped.get('kind')!r}, not {requested!r}"
        )
    return stamped


def _load_cell(path: str, validate: bool = True) -> tuple[Cell, dict | None]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read cell file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in cell file: {exc}") from exc
    family = data.pop("family", None)
    cell = cell_from_dict(data)
    if validate:
        diag = validate_cell(cell)
        if not diag.ok:
            raise InvalidGeometryError(f"invalid cell file: {diag.message}")
    return cell, family


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _default_cap(args, n: int, r: int) -> int:
    if getattr(args, "cap", None) is not None:
        return args.cap
    env = os.environ.get("SUPERSMOOTH_CAP")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"SUPERSMOOTH_CAP must be an integer, got {env!r}") from exc
    return splinespace.default_cap(n, r)


# ---------------------------------------------------------------------------
# gen


def _generate(args) -> tuple[Cell, dict]:
    kind = args.kind
    if kind == "clough-tocher":
        tri = _parse_points(args.triangle) if args.triangle else _unit_simplex(2)
        v = _parse_point(args.vertex) if args.vertex else _barycenter(tri)
        cell = make_clough_tocher(tri, v)
        return cell, {"kind": "cell2d", "m": 3, "m_v": count_distinct_slopes_2d(cell)}
    if kind == "star2d":
        if not args.directions:
            raise InputError("star2d needs --directions \"x,y;x,y;...\"")
        boundary = _parse_points(args.directions)
        v = _parse_point(args.vertex) if args.vertex else as_point(("0", "0"))
        cell = make_star_cell_2d(v, boundary)
        return cell, {
            "kind": "cell2d",
            "m": len(boundary),
            "m_v": count_distinct_slopes_2d(cell),
        }
    if args.dim is None:
        raise InputError(f"{kind} needs --dim")
    n = args.dim
    outer = _parse_points(args.simplex) if args.simplex else _unit_simplex(n)
    v = _parse_point(args.vertex) if args.vertex else _barycenter(outer)
    if kind == "alfeld":
        return make_alfeld(n, outer, v), {"kind": "alfeld", "n": n}
    if kind == "split-kn":
        if args.k is None:
            raise InputError("split-kn needs --k")
        k = args.k
        choices = _generic_choices(k, n, outer) if args.generic else None
        if choices is not None and args.vertex:
            choices[tuple(range(n + 1))] = v
        cell = make_split_k_n(k, n, outer, choices)
        if k == n:
            return cell, {"kind": "alfeld", "n": n}
        if k == n - 1:
            return cell, {"kind": "facet", "n": n, "aligned": _stamp_alignment(cell, n, outer)}
        return cell, {"kind": "wf", "k": k, "n": n}
    if kind == "facet":
        face_points = _parse_points(args.face_points) if args.face_points else None
        cell = make_facet_split(n, outer, v, face_points, aligned=args.aligned)
        if args.aligned:
            aligned = True
        else:
            aligned = _stamp_alignment(cell, n, outer)
        return cell, {"kind": "facet", "n": n, "aligned": aligned}
    if kind == "two-cell":
        cell = make_two_cell(n, outer, v, args.face)
        return cell, {"kind": "two_cell", "n": n}
    raise InputError(f"unknown generator kind {kind!r}")


def _stamp_alignment(cell: Cell, n: int, outer) -> bool:
    """Exact alignment check for a Delta_{n-1,n} cell built over `outer`:
    every facet point must be collinear with v and the opposite vertex."""
    v = cell.center_point
    # facet split points were appended per (n-1)-face in combination order
    offset = n + 1
    faces = list(combinations(range(n + 1), n))
    for idx, ids in enumerate(faces):
        opposite = next(t for t in range(n + 1) if t not in ids)
        w = cell.points[offset + idx]
        if not _collinear(outer[opposite], v, w):
            return False
    return True


def cmd_gen(args) -> int:
    cell, family = _generate(args)
    diag = validate_cell(cell)
    if not diag.ok:
        raise InvalidGeometryError(f"generated cell failed validation: {diag.message}")
    data = cell_to_dict(cell)
    data["family"] = family
    _write_text(args.out, json.dumps(data))
    from .geometry import interior_faces

    print(
        f"ok: {args.kind} cell, n={cell.dimension}, {len(cell.elements)} elements, "
        f"{len(interior_faces(cell))} interior faces, validation passed",
        file=sys.stderr,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# dim


def cmd_dim(args) -> int:
    cell, stamped = _load_cell(args.cell)
    family = _resolve_family(args, stamped)
    report = splinespace.dim_spline_space(cell, args.d, args.r)
    formula_dim = _family_for_dim(family, args.d, args.r) if family else None
    match = None if formula_dim is None else (formula_dim == report.dimension)
    row = {
        "n": report.n,
        "d": report.d,
        "r": report.r,
        "oracle_dim": report.dimension,
        "formula_dim": formula_dim,
        "degenerate": report.degenerate,
        "match": match,
    }
    if args.json:
        print(json.dumps(row))
    else:
        formula_txt = "-" if formula_dim is None else str(formula_dim)
        match_txt = "-" if match is None else str(match).lower()
        print(
            f"n={report.n} d={report.d} r={report.r} oracle_dim={report.dimension} "
            f"formula_dim={formula_txt} degenerate={str(report.degenerate).lower()} "
            f"match={match_txt}"
        )
    if match is False:
        print("oracle/formula mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# mos


def _mos_report_dict(report: splinespace.MosReport) -> dict:
    return {
        "r": report.r,
        "mos": report.mos,
        "exact": report.exact,
        "trace": [
            {"d": d, "dimension": dim, "degenerate": deg} for d, dim, deg in report.trace
        ],
        "witness": report.witness.to_dict() if report.witness is not None else None,
    }


def cmd_mos(args) -> int:
    cell, _ = _load_cell(args.cell)
    cap = _default_cap(args, cell.dimension, args.r)
    report = splinespace.mos_oracle(cell, args.r, cap)
    if args.json:
        print(json.dumps(_mos_report_dict(report)))
    else:
        if report.exact:
            print(f"mos(r={report.r}) = {report.mos} (exact)")
        else:
            print(f"mos(r={report.r}) >= {report.mos} (cap reached)")
        for d, dim, degenerate in report.trace:
            print(f"  d={d}: dim={dim} degenerate={str(degenerate).lower()}")
    if not report.exact:
        return EXIT_CAP
    return EXIT_OK


# ---------------------------------------------------------------------------
# table


def _table_worker(payload):
    cell_json, d, r = payload
    from .geometry import cell_from_json

    cell = cell_from_json(cell_json)
    report = splinespace.dim_spline_space(cell, d, r)
    return (d, r, report.dimension, report.degenerate)


def cmd_table(args) -> int:
    cell, stamped = _load_cell(args.cell)
    family = _resolve_family(args, stamped)
    r_max, d_max = args.r_max, args.d_max
    cap = _default_cap(args, cell.dimension, r_max)
    if not (0 <= r_max <= d_max <= cap):
        raise InputError("need 0 <= r_max <= d_max <= cap")
    pairs = [(d, r) for r in range(r_max + 1) for d in range(r, d_max + 1)]
    if args.jobs > 1:
        from .geometry import cell_to_json

        payloads = [(cell_to_json(cell), d, r) for d, r in pairs]
        ctx = multiprocessing.get_context("fork" if sys.platform != "win32" else "spawn")
        with ctx.Pool(args.jobs) as pool:
            results = pool.map(_table_worker, payloads)
        for d, r, dimension, degenerate in results:
            splinespace.seed_report(
                splinespace.SpaceReport(cell.dimension, d, r, dimension, degenerate), cell
            )
    rows = []
    mismatch = False
    for d, r in pairs:
        report = splinespace.dim_spline_space(cell, d, r)
        formula_dim = _family_for_dim(family, d, r) if family else None
        match = None if formula_dim is None else (formula_dim == report.dimension)
        if match is False:
            mismatch = True
        rows.append(
            {
                "n": report.n,
                "d": d,
                "r": r,
                "oracle_dim": report.dimension,
                "formula_dim": formula_dim,
                "degenerate": report.degenerate,
                "match": match,
            }
        )
    rows.sort(key=lambda row: (row["r"], row["d"]))
    mos_lines = []
    cap_hit = False
    for r in range(r_max + 1):
        report = splinespace.mos_oracle(cell, r, cap)
        if not report.exact:
            cap_hit = True
        expectation = _family_for_mos(family, r) if family else None
        if expectation is None:
            formula_txt, match = None, None
        elif expectation[0] == "exact":
            formula_txt = str(expectation[1])
            match = report.exact and report.mos == expectation[1]
        else:
            lo, hi = expectation[1], expectation[2]
            formula_txt = f"{lo}..{hi}"
            match = report.exact and lo <= report.mos <= hi
        if match is False:
            mismatch = True
        mos_lines.append(
            {
                "r": r,
                "mos": report.mos,
                "exact": report.exact,
                "formula": formula_txt,
                "match": match,
            }
        )

    def cell_text(v):
        if v is None:
            return ""
        if isinstance(v, bool):
            return str(v).lower()
        return str(v)

    if args.format == "csv":
        lines = ["n,d,r,oracle_dim,formula_dim,degenerate,match"]
        for row in rows:
            lines.append(
                ",".join(
                    cell_text(row[k])
                    for k in ("n", "d", "r", "oracle_dim", "formula_dim", "degenerate", "match")
                )
            )
        for m in mos_lines:
            lines.append(
                f"# mos r={m['r']}: {m['mos']} exact={cell_text(m['exact'])}"
                f" formula={m['formula'] if m['formula'] is not None else '-'}"
                f" match={cell_text(m['match']) if m['match'] is not None else '-'}"
            )
        _write_text(args.out, "\n".join(lines) + "\n")
    else:
        _write_text(args.out, json.dumps({"rows": rows, "mos": mos_lines}))
    if mismatch:
        return EXIT_MISMATCH
    if cap_hit:
        return EXIT_CAP
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    cell, _ = _load_cell(args.cell)
    d, r = args.d, args.r
    if r < 0 or d < r:
        raise InputError("need 0 <= r <= d")
    system = splinespace.smoothness_constraints(cell, d, r)
    failures = []

    if args.splines:
        try:
            with open(args.splines, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read splines file: {exc}") from exc
        entries = data if isinstance(data, list) else [data]
        splines = [splinespace.PiecewisePolynomial.from_dict(e, cell) for e in entries]
        ok = system.all_satisfied(splines)
        print(f"{'PASS' if ok else 'FAIL'} basis soundness ({len(splines)} splines)")
        if not ok:
            failures.append("basis soundness")
        return EXIT_VERIFY if failures else EXIT_OK

    report = splinespace.dim_spline_space(cell, d, r)
    basis = splinespace.basis_spline_space(cell, d, r)
    sound = len(basis) == report.dimension and system.all_satisfied(basis)
    print(f"{'PASS' if sound else 'FAIL'} basis soundness (dimension {report.dimension})")
    if not sound:
        failures.append("basis soundness")

    cap = _default_cap(args, cell.dimension, r)
    mos_report = splinespace.mos_oracle(cell, r, cap)
    if not mos_report.exact:
        print(f"mos scan hit the cap ({cap}); cannot verify vertex smoothness")
        return EXIT_CAP
    mos = mos_report.mos
    smooth_ok = all(
        splinespace.vertex_smoothness_order(s, mos) == mos for s in basis
    )
    print(f"{'PASS' if smooth_ok else 'FAIL'} vertex smoothness >= mos ({mos}) for every basis spline")
    if not smooth_ok:
        failures.append("vertex smoothness")

    taylor_ok = True
    for rho in range(d + 1):
        target = splinespace.smoothness_constraints(cell, max(rho, r), r)
        truncated = [taylor.piecewise_taylor(s, rho) for s in basis]
        if not target.all_satisfied(truncated):
            taylor_ok = False
            break
    print(f"{'PASS' if taylor_ok else 'FAIL'} piecewise Taylor stays C^{r} for every order <= d")
    if not taylor_ok:
        failures.append("piecewise taylor membership")

    return EXIT_VERIFY if failures else EXIT_OK


# ---------------------------------------------------------------------------
# witness


def cmd_witness(args) -> int:
    cell, _ = _load_cell(args.cell)
    cap = _default_cap(args, cell.dimension, args.r)
    try:
        witness = splinespace.find_witness(cell, args.r, cap)
    except CapReachedError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAP
    mos = splinespace.mos_oracle(cell, args.r, cap).mos
    hit = splinespace.first_mismatch(witness, mos + 1)
    assert hit is not None
    order, alpha = hit
    _write_text(args.out, witness.to_json())
    print(f"witness mismatch at order {order} (= mos+1), multi-index {','.join(map(str, alpha))}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supersmooth",
        description="Exact spline-space dimensions and vertex supersmoothness over cells.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a cell file")
    gen.add_argument("kind", choices=GEN_KINDS)
    gen.add_argument("--dim", type=int, help="ambient dimension n")
    gen.add_argument("--simplex", help="outer simplex points 'x,y,...;x,y,...'")
    gen.add_argument("--triangle", help="outer triangle for clough-tocher")
    gen.add_argument("--vertex", help="interior point v")
    gen.add_argument("--directions", help="star2d boundary points 'x,y;x,y;...'")
    gen.add_argument("--k", type=int, help="initial split dimension for split-kn")
    gen.add_argument("--generic", action="store_true", help="deterministic generic split points")
    gen.add_argument("--aligned", dest="aligned", action="store_true", default=True)
    gen.add_argument("--non-aligned", dest="aligned", action="store_false")
    gen.add_argument("--face-points", help="facet points for a non-aligned facet split")
    gen.add_argument("--face", type=int, default=0, help="two-cell: index of the opposite vertex")
    gen.add_argument("--out", help="output file (default stdout)")
    gen.set_defaults(func=cmd_gen)

    dim = sub.add_parser("dim", help="dimension of S_d^r over a cell")
    dim.add_argument("--cell", required=True)
    dim.add_argument("--d", type=int, required=True)
    dim.add_argument("--r", type=int, required=True)
    dim.add_argument(
        "--formula",
        default="auto",
        choices=("auto", "none", "cell2d", "alfeld", "facet", "two-cell", "wf"),
    )
    dim.add_argument("--json", action="store_true")
    dim.set_defaults(func=cmd_dim)

    mos = sub.add_parser("mos", help="maximal order of supersmoothness at v")
    mos.add_argument("--cell", required=True)
    mos.add_argument("--r", type=int, required=True)
    mos.add_argument("--cap", type=int)
    mos.add_argument("--json", action="store_true")
    mos.set_defaults(func=cmd_mos)

    table = sub.add_parser("table", help="sweep (d, r) and compare with formulas")
    table.add_argument("--cell", required=True)
    table.add_argument("--r-max", type=int, required=True)
    table.add_argument("--d-max", type=int, required=True)
    table.add_argument("--cap", type=int)
    table.add_argument("--format", default="csv", choices=("csv", "json"))
    table.add_argument("--jobs", type=int, default=1)
    table.add_argument(
        "--formula",
        default="auto",
        choices=("auto", "none", "cell2d", "alfeld", "facet", "two-cell", "wf"),
    )
    table.add_argument("--out", help="output file (default stdout)")
    table.set_defaults(func=cmd_table)

    verify = sub.add_parser("verify", help="run the property suite for (cell, d, r)")
    verify.add_argument("--cell", required=True)
    verify.add_argument("--d", type=int, required=True)
    verify.add_argument("--r", type=int, required=True)
    verify.add_argument("--cap", type=int)
    verify.add_argument("--splines", help="verify the splines in this file instead")
    verify.set_defaults(func=cmd_verify)

    witness = sub.add_parser("witness", help="export a supersmoothness witness spline")
    witness.add_argument("--cell", required=True)
    witness.add_argument("--r", type=int, required=True)
    witness.add_argument("--cap", type=int)
    witness.add_argument("--out", help="output file (default stdout)")
    witness.set_defaults(func=cmd_witness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, InvalidGeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapReachedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SupersmoothError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
