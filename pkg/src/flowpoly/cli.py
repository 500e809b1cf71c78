"""Command-line front end: ``flowpoly <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 bad usage or bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import goldens
from .errors import FlowpolyError, ValidationError
from .graphmat import (SpinalGraph, ZeroOneMatrix, graph_to_matrix, intervals_to_graph,
                       intervals_to_matrix, matrix_to_graph)

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class CheckFailed(Exception):
    pass


# ---------------------------------------------------------------- input


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read ({exc.strerror})")


def load_graph(path: str) -> SpinalGraph:
    text = _read(path)
    try:
        return SpinalGraph.from_json(text)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}")


def load_matrix(path: str) -> ZeroOneMatrix:
    return ZeroOneMatrix.from_text(_read(path), source=path)


def load_intervals(path: str) -> tuple[int | None, list]:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: line {exc.lineno}: {exc.msg}")
    if not isinstance(data, dict) or "intervals" not in data:
        raise ValidationError(f"{path}: expected an object with field 'intervals'")
    d = data.get("d")
    if d is not None and (not isinstance(d, int) or d < 1):
        raise ValidationError(f"{path}: field 'd' must be a positive integer")
    ivs = data["intervals"]
    if not isinstance(ivs, list):
        raise ValidationError(f"{path}: field 'intervals' must be a list")
    for pos, iv in enumerate(ivs):
        if not (isinstance(iv, list) and len(iv) == 2 and all(isinstance(x, int) for x in iv)):
            raise ValidationError(f"{path}: intervals[{pos}] must be a pair of integers")
    return d, ivs


def parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise ValidationError(f"{what}: expected comma-separated integers, got {text!r}")


# ---------------------------------------------------------------- output


class Out:
    def __init__(self, path: str | None):
        self.path = path
        self.parts: list[str] = []

    def write(self, text: str) -> None:
        if self.path is None:
            sys.stdout.write(text)
        else:
            self.parts.append(text)

    def json(self, obj) -> None:
        self.write(json.dumps(obj, indent=2) + "\n")

    def close(self) -> None:
        if self.path is not None:
            Path(self.path).write_text("".join(self.parts))


def _poly_obj(p) -> dict:
    return {"coefficients": [str(c) for c in p.coefficients], "text": str(p)}


def _emit_value(out: Out, fmt: str, name: str, value) -> None:
    if fmt == "json":
        out.json({name: str(value)})
    elif fmt == "tsv":
        out.write(f"{name}\t{value}\n")
    else:
        out.write(f"{value}\n")


def _emit_poly(out: Out, fmt: str, name: str, p) -> None:
    if fmt == "json":
        out.json({name: _poly_obj(p)})
    elif fmt == "tsv":
        out.write(f"{name}\t" + "\t".join(str(c) for c in p.coefficients) + "\n")
    else:
        out.write(f"{name}: [{', '.join(str(c) for c in p.coefficients)}]  {p}\n")


# ---------------------------------------------------------------- commands


def cmd_convert(args, out: Out) -> int:
    sources = [x for x in (args.matrix, args.graph, args.intervals) if x]
    if len(sources) != 1:
        raise ValidationError("convert needs exactly one of --matrix, --graph, --intervals")
    if args.matrix:
        m = load_matrix(args.matrix)
        try:
            g, perm = matrix_to_graph(m, with_permutation=True)
        except ValidationError as exc:
            raise ValidationError(f"{args.matrix}: {exc}")
    elif args.graph:
        g, perm, m = load_graph(args.graph), None, None
    else:
        d, ivs = load_intervals(args.intervals)
        try:
            m = intervals_to_matrix(ivs, d, args.keep_redundant)
            g, perm = intervals_to_graph(ivs, d, args.keep_redundant), None
        except ValidationError as exc:
            raise ValidationError(f"{args.intervals}: {exc}")
    if args.to == "graph":
        if args.format == "tsv":
            out.write(f"vertices\t{g.vertex_count}\n")
            for t, h in g.nonslack_edges:
                out.write(f"{t}\t{h}\n")
        else:
            obj = g.to_dict()
            if perm is not None and args.format == "json":
                obj["column_order"] = [p + 1 for p in perm]
            out.write(json.dumps(obj, separators=(",", ":")) + "\n")
    else:
        m = graph_to_matrix(g) if args.graph or m is None else m
        if args.format == "json":
            out.json({"rows": [line for line in m.to_text().splitlines()]})
        elif args.format == "tsv":
            for row in m.entries:
                out.write("\t".join(str(x) for x in row) + "\n")
        else:
            out.write(m.to_text())
    return EXIT_OK


def cmd_kpf(args, out: Out) -> int:
    from .flows import check_netflow, enumerate_flows, kostant

    g = load_graph(args.graph)
    a = check_netflow(g, parse_int_list(args.netflow, "--netflow"))
    if args.list:
        for f in enumerate_flows(g, a):
            out.write(json.dumps([str(x) for x in f.edge_values()]) + "\n")
        return EXIT_OK
    _emit_value(out, args.format, "kpf", kostant(g, a))
    return EXIT_OK


def cmd_volume(args, out: Out) -> int:
    from .flows import check_netflow, unit_netflow
    from .volume import volume_compact, volume_general

    g = load_graph(args.graph)
    a = check_netflow(g, parse_int_list(args.netflow, "--netflow")) if args.netflow else unit_netflow(g)
    unit = a == unit_netflow(g)
    if args.method is None:
        args.method = "both" if unit else "lidskii"
    if args.method in ("compact", "both") and not unit:
        raise ValidationError("--method compact only applies to the unit netflow e_1 - e_{n+1}")
    values = {}
    if args.method in ("compact", "both"):
        values["compact"] = volume_compact(g)
    if args.method in ("lidskii", "both"):
        values["lidskii"] = volume_general(g, a)
    if len(set(values.values())) != 1:
        raise CheckFailed(f"volume formulas disagree: {values}")
    _emit_value(out, args.format, "volume", next(iter(values.values())))
    return EXIT_OK


def cmd_vertices(args, out: Out) -> int:
    from .eulerent import distance_vertex_count, distance_vertex_count_paths
    from .flows import count_vertices

    if args.graph:
        _emit_value(out, args.format, "vertices", count_vertices(load_graph(args.graph)))
        return EXIT_OK
    if args.k is None or args.d is None:
        raise ValidationError("vertices needs --graph, or both --k and --d")
    rec, paths = distance_vertex_count(args.k, args.d), distance_vertex_count_paths(args.k, args.d)
    if rec != paths:
        raise CheckFailed(f"recurrence gives {rec}, path count gives {paths}")
    _emit_value(out, args.format, "vertices", rec)
    return EXIT_OK


def cmd_orders(args, out: Out) -> int:
    from .cyclic import descent_polynomial, enumerate_orders

    g = load_graph(args.graph)
    mode = "all_compatible" if args.mode == "all" else args.mode
    orders = enumerate_orders(g, mode)
    poly = descent_polynomial(orders) if args.stats == "descents" else None
    if args.format == "json":
        obj = {"mode": args.mode, "count": str(len(orders)), "orders": [str(o) for o in orders]}
        if poly is not None:
            obj["descents"] = _poly_obj(poly)
        out.json(obj)
    else:
        for o in orders:
            out.write(f"{o}\n")
        if poly is not None:
            if args.format == "tsv":
                out.write("descents\t" + "\t".join(str(c) for c in poly.coefficients) + "\n")
            else:
                out.write(f"# descents: [{', '.join(str(c) for c in poly.coefficients)}]  {poly}\n")
    return EXIT_OK


def _d_range(args) -> list[int]:
    if args.d is not None:
        return [args.d]
    if args.dmax is not None:
        return list(range(1, args.dmax + 1))
    raise ValidationError("give --d or --dmax")


def _emit_series(out: Out, fmt: str, name: str, k: int, rows: list[tuple[int, int]]) -> None:
    if fmt == "json":
        out.json({"k": k, name: {str(d): str(v) for d, v in rows}})
    elif fmt == "tsv":
        out.write("d\t" + name + "\n")
        for d, v in rows:
            out.write(f"{d}\t{v}\n")
    else:
        for d, v in rows:
            out.write(f"{v}\n")


def cmd_euler(args, out: Out) -> int:
    from .eulerent import k_euler, k_euler_kpf

    rows = []
    for d in _d_range(args):
        v = k_euler(args.k, d)
        if d > args.k and k_euler_kpf(args.k, d) != v:
            raise CheckFailed(f"A_({args.k},{d}): volume and partition-function forms disagree")
        rows.append((d, v))
    _emit_series(out, args.format, "euler", args.k, rows)
    return EXIT_OK


def cmd_springer(args, out: Out) -> int:
    from .eulerent import k_springer

    try:
        rows = [(d, k_springer(args.k, d)) for d in _d_range(args)]
    except AssertionError as exc:
        raise CheckFailed(str(exc))
    _emit_series(out, args.format, "springer", args.k, rows)
    return EXIT_OK


def _emit_table(out: Out, fmt: str, table) -> None:
    if fmt == "json":
        out.json(table.to_dict())
    else:
        out.write(table.to_tsv())


def cmd_entringer(args, out: Out) -> int:
    from .eulerent import boustrophedon_fill, entringer_table

    if args.via in ("kpf", "both"):
        table = entringer_table(args.k, args.N)
    if args.via in ("boustrophedon", "both"):
        other = boustrophedon_fill(args.k, args.N)[-1]
        if args.via == "both" and other.values != table.values:
            bad = next(s for s in table if table[s] != other[s])
            raise CheckFailed(f"E_{bad}: partition function {table[bad]}, recursion {other[bad]}")
        table = other if args.via == "boustrophedon" else table
    _emit_table(out, args.format, table)
    return EXIT_OK


def cmd_hstar(args, out: Out) -> int:
    from .hstar import hstar_polynomial, hstar_via_descents

    g = load_graph(args.graph)
    polys = {}
    if args.via in ("ehrhart", "both"):
        polys["ehrhart"] = hstar_polynomial(g)
    if args.via in ("descents", "both"):
        polys["descents"] = hstar_via_descents(g)
    if len(set(polys.values())) != 1:
        raise CheckFailed("h* computations disagree: " + ", ".join(f"{k}={v}" for k, v in polys.items()))
    _emit_poly(out, args.format, "hstar", next(iter(polys.values())))
    return EXIT_OK


def cmd_conjecture(args, out: Out) -> int:
    from .hstar import check_conjecture

    g = load_graph(args.graph)
    rep = check_conjecture(g)
    if args.format == "json":
        out.json({"graph": g.to_dict(), **rep.to_dict()})
    else:
        for name, p in (("lower", rep.lower), ("hstar", rep.hstar), ("upper", rep.upper)):
            _emit_poly(out, args.format, name, p)
        if args.format == "tsv":
            out.write(f"passed\t{str(rep.passed).lower()}\n")
        else:
            out.write(f"lower <| hstar: {rep.lower_violation is None}\n")
            out.write(f"hstar <| upper: {rep.upper_violation is None}\n")
    return EXIT_OK if rep.passed else EXIT_CHECK


def cmd_sweep(args, out: Out) -> int:
    from .families import sweep

    if args.simple and args.multigraph:
        raise ValidationError("--simple and --multigraph are mutually exclusive")
    simple = True if args.simple else (False if args.multigraph else None)
    params = {
        "max_vertices": args.max_vertices, "max_nonslack": args.max_nonslack,
        "simple": simple, "non_nested": True if args.non_nested else None,
        "kmax": args.kmax, "nmax": args.nmax,
    }
    rep = sweep(args.check, threads=args.threads, **params)
    if args.format == "tsv":
        out.write(f"check\t{rep.check}\ntotal\t{rep.total}\npassed\t{rep.passed}\nfailed\t{len(rep.failures)}\n")
    else:
        out.json(rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_CHECK


def _table_rows(which: str, kmax: int, dmax: int) -> dict[int, list[int]]:
    from .eulerent import k_euler, k_springer

    fn = k_euler if which == "euler" else k_springer
    return {k: [fn(k, d) for d in range(1, dmax + 1)] for k in range(1, kmax + 1)}


def _seed_mismatches(which: str, rows: dict[int, list[int]]) -> list[str]:
    ref = goldens.EULER if which == "euler" else goldens.SPRINGER
    bad = []
    for k, vals in rows.items():
        for d, v in enumerate(vals, start=1):
            if k in ref and d <= len(ref[k]) and ref[k][d - 1] != v:
                bad.append(f"{which} k={k} d={d}: computed {v}, reference {ref[k][d - 1]}")
    return bad


def cmd_tables(args, out: Out) -> int:
    from .eulerent import boustrophedon_fill, entringer_table

    which = ["euler", "springer", "entringer"] if args.which == "all" else [args.which]
    problems = []
    blobs = {}
    for w in which:
        if w == "entringer":
            tables = {}
            for N in (3, 4, 5):
                t = entringer_table(3, N)
                if boustrophedon_fill(3, N)[-1].values != t.values:
                    problems.append(f"entringer k=3 N={N}: recursion and partition function disagree")
                tables[N] = t
                if args.seed_check:
                    for s, v in goldens.entringer_k3_cells(N).items():
                        if t[s] != v:
                            problems.append(f"entringer k=3 N={N} s={s}: computed {t[s]}, reference {v}")
            blobs[w] = tables
        else:
            try:
                rows = _table_rows(w, args.kmax, args.dmax)
            except AssertionError as exc:
                problems.append(str(exc))
                continue
            if args.seed_check:
                problems += _seed_mismatches(w, rows)
            blobs[w] = rows
    if args.format == "json":
        obj = {}
        for w, blob in blobs.items():
            if w == "entringer":
                obj[w] = [t.to_dict() for t in blob.values()]
            else:
                obj[w] = {str(k): [str(v) for v in vals] for k, vals in blob.items()}
        out.json(obj)
    else:
        for w, blob in blobs.items():
            if w == "entringer":
                for N, t in blob.items():
                    out.write(f"# entringer k=3 N={N}\n")
                    out.write(t.to_tsv())
            else:
                out.write(f"# {w}\nk\\d\t" + "\t".join(str(d) for d in range(1, args.dmax + 1)) + "\n")
                for k, vals in blob.items():
                    out.write(f"{k}\t" + "\t".join(str(v) for v in vals) + "\n")
    if problems:
        for p in problems:
            print(f"seed-check: {p}", file=sys.stderr)
        return EXIT_CHECK
    if args.seed_check:
        print("seed-check: all reference cells match", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flowpoly", description="Flow polytopes of spinal graphs, exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, fmt=True):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write output to this file instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=("text", "json", "tsv"), default="text")
        return sp

    sp = add("convert", cmd_convert, "convert between matrix, graph and interval files")
    sp.add_argument("--matrix")
    sp.add_argument("--graph")
    sp.add_argument("--intervals")
    sp.add_argument("--to", choices=("graph", "matrix"), required=True)
    sp.add_argument("--keep-redundant", action="store_true", help="keep contained intervals")

    sp = add("kpf", cmd_kpf, "Kostant partition function value or flow listing")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--netflow", required=True)
    sp.add_argument("--list", action="store_true", help="stream flows as JSON lines")

    sp = add("volume", cmd_volume, "normalized volume")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--netflow")
    sp.add_argument("--method", choices=("compact", "lidskii", "both"),
                    help="default: both at the unit netflow, lidskii otherwise")

    sp = add("vertices", cmd_vertices, "number of vertices of the flow polytope")
    sp.add_argument("--graph")
    sp.add_argument("--k", type=int)
    sp.add_argument("--d", type=int)

    sp = add("orders", cmd_orders, "upper, lower or all G-compatible cyclic orders")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--mode", choices=("upper", "lower", "all"), default="upper")
    sp.add_argument("--stats", choices=("descents", "none"), default="none")

    sp = add("euler", cmd_euler, "k-Euler numbers")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int)
    sp.add_argument("--dmax", type=int)

    sp = add("entringer", cmd_entringer, "k-Entringer table at one level")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--via", choices=("kpf", "boustrophedon", "both"), default="both")

    sp = add("springer", cmd_springer, "k-Springer numbers")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int)
    sp.add_argument("--dmax", type=int)

    sp = add("hstar", cmd_hstar, "h*-polynomial")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--via", choices=("ehrhart", "descents", "both"), default="ehrhart")

    sp = add("conjecture", cmd_conjecture, "dominance check P_lower <| h* <| P_upper")
    sp.add_argument("--graph", required=True)

    sp = add("sweep", cmd_sweep, "run a named check over a family")
    sp.add_argument("--check", required=True)
    sp.add_argument("--max-vertices", type=int)
    sp.add_argument("--max-nonslack", type=int)
    sp.add_argument("--simple", action="store_true")
    sp.add_argument("--multigraph", action="store_true", help="allow repeated edges (needs --max-nonslack)")
    sp.add_argument("--non-nested", action="store_true")
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--nmax", type=int)
    sp.add_argument("--threads", type=int)

    sp = add("tables", cmd_tables, "k-Euler, k-Springer and 3-Entringer tables")
    sp.add_argument("--which", choices=("euler", "springer", "entringer", "all"), default="all")
    sp.add_argument("--kmax", type=int, default=4)
    sp.add_argument("--dmax", type=int, default=10)
    sp.add_argument("--seed-check", action="store_true", help="compare against embedded reference tables")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    out = Out(args.out)
    try:
        code = args.func(args, out)
        out.close()
        return code
    except CheckFailed as exc:
        out.close()
        print(f"flowpoly: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (FlowpolyError, ValueError) as exc:
        print(f"flowpoly: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
