"""Command-line front door.

Subcommands: count, validate, search, verify, table, emit-catalog.
stdout carries exactly one JSON document with stable key order and no
timestamps, so identical invocations print identical bytes; timing goes
to stderr.  Exit codes: 0 success or valid, 1 well-posed negative
(invalid object, no certificate), 2 input error, 3 budget exceeded.
Results are cached under RF_CACHE_DIR (default .rf_cache) keyed by
command, parameters and code version; --no-cache bypasses.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__, census, joyce
from .colorings import (ApproxOracle, Coloring, devlin_f0, f_lt_q,
                        jockusch_f_pairs, product_coloring,
                        tuple_type_coloring)
from .hl import (BudgetExceeded, DenseMatrixCertificate, HLCertificate,
                 KOverflowError, LevelProductColoring, MillikenCertificate,
                 find_dense_matrix, milliken_search, min_hl_height,
                 search_level_product_mono, verify_certificate)
from .joyce import BlossomTable
from .trees import (FiniteTree, StrongSubtreeWitness, full_binary_tree,
                    is_strong_subtree, nodes_from_text)
from .words import format_word, parse_word

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# output and cache

def _emit(command: str, params: dict, result, started: float,
          no_cache: bool) -> None:
    record = {
        "code_version": __version__,
        "command": command,
        "params": {k: params[k] for k in sorted(params)},
        "result": result,
    }
    print(json.dumps(record, sort_keys=True, separators=(",", ":")))
    ms = int((time.monotonic() - started) * 1000)
    print(f"{command}: {ms} ms", file=sys.stderr)
    if not no_cache:
        _cache_store(command, params, result)


def _cache_dir() -> Path:
    return Path(os.environ.get("RF_CACHE_DIR", ".rf_cache"))


def _cache_key(command: str, params: dict) -> str:
    blob = json.dumps([command, {k: params[k] for k in sorted(params)},
                       __version__], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_load(command: str, params: dict):
    path = _cache_dir() / (_cache_key(command, params) + ".json")
    if path.is_file():
        return json.loads(path.read_text())
    return None


def _cache_store(command: str, params: dict, result) -> None:
    d = _cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    path = d / (_cache_key(command, params) + ".json")
    path.write_text(json.dumps(result, sort_keys=True))


# ---------------------------------------------------------------------------
# coloring specs

def parse_coloring(spec: str, oracles_dir: Path | None = None) -> Coloring:
    spec = spec.strip()
    if spec.startswith("product(") and spec.endswith(")"):
        inner = spec[len("product("):-1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return product_coloring(parse_coloring(inner[:i]),
                                        parse_coloring(inner[i + 1:]))
        raise InputError(f"cannot split product spec {spec!r}")
    if spec == "f-lt-q":
        return f_lt_q()
    if spec == "devlin-f0":
        return devlin_f0()
    if spec.startswith("tuple-type:"):
        return tuple_type_coloring(int(spec.split(":", 1)[1]))
    if spec.startswith("jockusch:"):
        path = Path(spec.split(":", 1)[1])
        rows = json.loads(path.read_text())
        return jockusch_f_pairs(ApproxOracle.from_json(rows))
    if spec.startswith("constant:"):
        c = int(spec.split(":", 1)[1])
        return Coloring(spec, -1, c + 1, lambda *w: c)
    if spec == "level-parity":
        return Coloring(spec, -1, 2, None)
    if spec == "level-identity":
        return Coloring(spec, -1, -1, None)
    raise InputError(f"unknown coloring spec {spec!r}")


def _node_coloring_table(trees, spec: str):
    """(k, fn) for a coloring of same-level node tuples."""
    c = parse_coloring(spec)
    if spec == "level-parity":
        return 2, lambda *tup: sum(trees[i].level_of(w)
                                   for i, w in enumerate(tup)) % 2
    if spec == "level-identity":
        h = min(t.height for t in trees)
        return h, lambda *tup: trees[0].level_of(tup[0])
    if c.arity not in (-1, len(trees)):
        raise InputError(
            f"coloring {spec!r} has arity {c.arity}, need {len(trees)}")
    return c.colors, lambda *tup: c(*tup)


def _subtree_coloring(tree: FiniteTree, spec: str, n: int):
    """Color table on the height-n strong subtrees of the tree."""
    from .trees import enumerate_strong_subtrees
    subs = enumerate_strong_subtrees(tree, n)
    if spec == "level-parity":
        return {frozenset(w.subtree.nodes): w.level_fn[0] % 2 for w in subs}
    if spec.startswith("constant:"):
        c = int(spec.split(":", 1)[1])
        return {frozenset(w.subtree.nodes): c for w in subs}
    if spec == "leaf-type":
        leaves0 = subs[0].subtree.leaves if subs else ()
        tt = tuple_type_coloring(len(leaves0))
        return {frozenset(w.subtree.nodes): tt(*w.subtree.leaves)
                for w in subs}
    raise InputError(f"unknown subtree coloring {spec!r}")


# ---------------------------------------------------------------------------
# trees and files

def _parse_tree(spec: str) -> FiniteTree:
    if spec.startswith("full:"):
        return full_binary_tree(int(spec.split(":", 1)[1]))
    path = Path(spec)
    if not path.is_file():
        raise InputError(f"tree spec {spec!r} is neither full:H nor a file")
    return FiniteTree(nodes_from_text(path.read_text()))


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from None


def _read_words(path: str) -> list[str]:
    try:
        return nodes_from_text(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise InputError(f"cannot read {path}: {e}") from None


def _order_from_json(obj) -> joyce.JoyceOrder:
    try:
        elements = list(obj["elements"])
        labels = {(r[0], r[1]): int(r[2]) for r in obj["labels"]}
        return joyce.make_order(elements, labels)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise InputError(f"malformed order file: {e}") from None


# ---------------------------------------------------------------------------
# commands

def cmd_count(args) -> int:
    started = time.monotonic()
    if args.object == "types":
        params = {"object": "types", "n": args.n, "kind": args.kind,
                  "method": args.method}
        cached = None if args.no_cache else _cache_load("count", params)
        if cached is not None:
            result = cached
        else:
            tc = census.count_types(args.n, args.kind, args.method,
                                    threads=args.threads)
            result = {"count": tc.count, "kind": tc.kind,
                      "method": tc.method, "n": tc.n}
    elif args.object == "joyce-trees":
        params = {"object": "joyce-trees", "n": args.n}
        cached = None if args.no_cache else _cache_load("count", params)
        result = cached if cached is not None else {
            "count": joyce.count_joyce_trees(args.n), "n": args.n,
            "object": "joyce-tree"}
    elif args.object == "joyce-graphs":
        params = {"object": "joyce-graphs", "n": args.n,
                  "graph": args.graph or "none"}
        cached = None if args.no_cache else _cache_load("count", params)
        if cached is not None:
            result = cached
        else:
            flt = _parse_graph_filter(args.graph, args.n)
            result = {"count": joyce.count_joyce_graphs(args.n, flt),
                      "graph": args.graph or "none", "n": args.n,
                      "object": "joyce-graph"}
    elif args.object == "emb-height":
        params = {"object": "emb-height", "n": args.n}
        cached = None if args.no_cache else _cache_load("count", params)
        result = cached if cached is not None else {
            "count": census.embedding_types_of_height(args.n), "n": args.n,
            "object": "embedding-types-of-height"}
    else:
        raise InputError(f"unknown count object {args.object!r}")
    _emit("count", params, result, started, args.no_cache)
    return EXIT_OK


def _parse_graph_filter(spec, n):
    if not spec or spec == "none":
        return None
    if spec == "K%d" % n or spec == "K{}".format(n):
        from itertools import combinations
        return frozenset(frozenset(p) for p in combinations(range(n), 2))
    if spec == "empty":
        return frozenset()
    try:
        pairs = json.loads(spec)
        return frozenset(frozenset((int(a), int(b))) for a, b in pairs)
    except (json.JSONDecodeError, TypeError, ValueError):
        raise InputError(f"bad graph filter {spec!r}") from None


def cmd_validate(args) -> int:
    started = time.monotonic()
    params = {"object": args.object, "file": os.path.basename(args.file)}
    obj = args.object
    if obj in ("coded-order", "coded-graph"):
        words = _read_words(args.file)
        violations = (joyce.validate_coded_joyce_order(words)
                      if obj == "coded-order"
                      else joyce.validate_coded_joyce_graph(words))
    elif obj == "joyce-order":
        violations = joyce.validate_joyce_order(
            _order_from_json(_read_json(args.file)))
    elif obj == "joyce-graph":
        data = _read_json(args.file)
        order = _order_from_json(data)
        pos = {x: i for i, x in enumerate(order.elements)}
        try:
            edges = frozenset(frozenset((pos[a], pos[b]))
                              for a, b in data.get("edges", []))
        except KeyError as e:
            raise InputError(f"edge references unknown element: {e}") from None
        violations = joyce.validate_joyce_graph(joyce.JoyceGraph(order, edges))
    elif obj == "blossom":
        data = _read_json(args.file)
        try:
            table = BlossomTable(
                int(data["depth"]),
                {parse_word(k): parse_word(v) for k, v in data["f"].items()},
                {parse_word(k): parse_word(v) for k, v in data["g"].items()})
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed blossom file: {e}") from None
        try:
            violations = joyce.validate_blossom(table)
        except ValueError as e:
            raise InputError(str(e)) from None
    elif obj == "strong-subtree":
        data = _read_json(args.file)
        try:
            ambient = FiniteTree(parse_word(w) for w in data["ambient"])
            nodes = [parse_word(w) for w in data["nodes"]]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed subtree file: {e}") from None
        w = is_strong_subtree(nodes, ambient)
        violations = [] if w is not None else ["not a strong subtree"]
    else:
        raise InputError(f"unknown validate object {obj!r}")
    result = {"valid": not violations, "violations": sorted(set(violations))}
    _emit("validate", params, result, started, True)
    return EXIT_OK if not violations else EXIT_NEGATIVE


def _witness_json(w: StrongSubtreeWitness) -> dict:
    return w.to_json()


def cmd_search(args) -> int:
    started = time.monotonic()
    if args.kind == "min-fhl":
        params = {"kind": "min-fhl", "N": args.N, "k": args.k, "d": args.d,
                  "cap": args.cap}
        cached = None if args.no_cache else _cache_load("search", params)
        if cached is not None:
            result = cached
        else:
            h, defeat = min_hl_height(args.N, args.k, args.d, 2,
                                      h_max=args.cap, workers=args.threads)
            result = {
                "defeating": None if defeat is None else
                [{"colors": c, "tuple": [format_word(w) for w in tup]}
                 for tup, c in sorted(defeat.items())],
                "h": h,
            }
        _emit("search", params, result, started, args.no_cache)
        if args.out:
            Path(args.out).write_text(json.dumps(
                {"kind": "min-fhl", "params": params, "result": result},
                sort_keys=True))
        return EXIT_OK

    trees = [_parse_tree(s) for s in args.tree]
    params = {"kind": args.kind, "trees": args.tree,
              "coloring": args.coloring,
              **({"N": args.N} if args.kind == "hl" else {}),
              **({"n": args.n, "m": args.m} if args.kind == "milliken" else {}),
              **({"leaf_preserving": args.leaf_preserving}
                 if args.kind == "hl" else {})}
    cert_json = None
    if args.kind == "hl":
        k, fn = _node_coloring_table(trees, args.coloring)
        coloring = LevelProductColoring.from_function(trees, k, fn)
        cert = search_level_product_mono(coloring, args.N,
                                         args.leaf_preserving)
        if cert is not None:
            cert_json = {
                "color": cert.color, "coloring": args.coloring,
                "kind": "hl", "leaf_preserving": cert.leaf_preserving,
                "trees": [[format_word(w) for w in t.sorted_nodes]
                          for t in trees],
                "witnesses": [_witness_json(w) for w in cert.witnesses],
            }
    elif args.kind == "dense":
        k, fn = _node_coloring_table(trees, args.coloring)
        from itertools import product as _product
        table = {tup: fn(*tup) for tup in
                 _product(*(t.sorted_nodes for t in trees))}
        cert = find_dense_matrix(trees, table)
        if cert is not None:
            cert_json = {
                "color": cert.color, "coloring": args.coloring,
                "kind": "dense", "m": cert.m,
                "parts": [[format_word(w) for w in sorted(p)]
                          for p in cert.parts],
                "pi": [format_word(w) for w in cert.pi],
                "trees": [[format_word(w) for w in t.sorted_nodes]
                          for t in trees],
            }
    elif args.kind == "milliken":
        table = _subtree_coloring(trees[0], args.coloring, args.n)
        cert = milliken_search(trees[0], args.n, table, args.m)
        if cert is not None:
            cert_json = {
                "color": cert.color, "coloring": args.coloring,
                "kind": "milliken", "n": args.n,
                "tree": [format_word(w) for w in trees[0].sorted_nodes],
                "witness": _witness_json(cert.witness),
            }
    else:
        raise InputError(f"unknown search kind {args.kind!r}")
    result = {"found": cert_json is not None, "certificate": cert_json}
    _emit("search", params, result, started, True)
    if cert_json is not None and args.out:
        Path(args.out).write_text(
            json.dumps(cert_json, sort_keys=True) + "\n")
    return EXIT_OK if cert_json is not None else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    started = time.monotonic()
    data = _read_json(args.file)
    params = {"file": os.path.basename(args.file)}
    kind = data.get("kind")
    try:
        if kind == "hl":
            trees = tuple(FiniteTree(parse_word(w) for w in ns)
                          for ns in data["trees"])
            k, fn = _node_coloring_table(trees, data["coloring"])
            coloring = LevelProductColoring.from_function(trees, k, fn)
            cert = HLCertificate(
                tuple(StrongSubtreeWitness.from_json(wj, t)
                      for wj, t in zip(data["witnesses"], trees)),
                data["color"], data.get("leaf_preserving", False))
            ok = verify_certificate(cert, coloring)
        elif kind == "dense":
            trees = tuple(FiniteTree(parse_word(w) for w in ns)
                          for ns in data["trees"])
            k, fn = _node_coloring_table(trees, data["coloring"])
            from itertools import product as _product
            table = {tup: fn(*tup) for tup in
                     _product(*(t.sorted_nodes for t in trees))}
            cert = DenseMatrixCertificate(
                trees, tuple(parse_word(w) for w in data["pi"]),
                int(data["m"]),
                tuple(frozenset(parse_word(w) for w in p)
                      for p in data["parts"]),
                data["color"])
            ok = verify_certificate(cert, table)
        elif kind == "milliken":
            tree = FiniteTree(parse_word(w) for w in data["tree"])
            table = _subtree_coloring(tree, data["coloring"], data["n"])
            cert = MillikenCertificate(
                StrongSubtreeWitness.from_json(data["witness"], tree),
                data["n"], data["color"])
            ok = verify_certificate(cert, table)
        else:
            raise InputError(f"unknown certificate kind {kind!r}")
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"malformed certificate: {e}") from None
    result = {"valid": bool(ok)}
    _emit("verify", params, result, started, True)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_table(args) -> int:
    started = time.monotonic()
    params = {"max_n": args.max_n}
    cached = None if args.no_cache else _cache_load("table", params)
    if cached is not None:
        rows = cached
    else:
        rows = []
        for n in range(args.max_n + 1):
            row = census.census(n, threads=args.threads)
            rows.append({"emb_all": row["emb-all"], "emb_min": row["emb-min"],
                         "n": n, "tup_all": row["tup-all"],
                         "tup_min": row["tup-min"]})
    if args.csv:
        print("n,emb_all,tup_all,emb_min,tup_min")
        for r in rows:
            print(f"{r['n']},{r['emb_all']},{r['tup_all']},"
                  f"{r['emb_min']},{r['tup_min']}")
        if not args.no_cache:
            _cache_store("table", params, rows)
        print(f"table: {int((time.monotonic()-started)*1000)} ms",
              file=sys.stderr)
        return EXIT_OK
    _emit("table", params, rows, started, args.no_cache)
    return EXIT_OK


def cmd_emit_catalog(args) -> int:
    started = time.monotonic()
    params = {"n": args.n, "kind": args.kind}
    cached = None if args.no_cache else _cache_load("emit-catalog", params)
    rows = cached if cached is not None else census.type_catalog(
        args.n, args.kind)
    _emit("emit-catalog", params, rows, started, args.no_cache)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="treeramsey",
        description="Finite Ramsey computations on binary trees")
    p.add_argument("--threads", type=int,
                   default=os.cpu_count() or 1, help="worker processes")
    p.add_argument("--no-cache", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("count")
    c.add_argument("object",
                   choices=["types", "joyce-trees", "joyce-graphs",
                            "emb-height"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--kind", choices=list(census.KINDS))
    c.add_argument("--method", choices=list(census.METHODS))
    c.add_argument("--graph")
    c.set_defaults(fn=cmd_count)

    v = sub.add_parser("validate")
    v.add_argument("object",
                   choices=["joyce-order", "coded-order", "joyce-graph",
                            "coded-graph", "blossom", "strong-subtree"])
    v.add_argument("file")
    v.set_defaults(fn=cmd_validate)

    s = sub.add_parser("search")
    s.add_argument("kind", choices=["hl", "dense", "milliken", "min-fhl"])
    s.add_argument("--tree", action="append", default=[])
    s.add_argument("--coloring")
    s.add_argument("--N", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--cap", type=int, default=6)
    s.add_argument("--leaf-preserving", action="store_true")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_search)

    vf = sub.add_parser("verify")
    vf.add_argument("file")
    vf.set_defaults(fn=cmd_verify)

    t = sub.add_parser("table")
    t.add_argument("--max-n", type=int, default=4)
    t.add_argument("--csv", action="store_true")
    t.set_defaults(fn=cmd_table)

    e = sub.add_parser("emit-catalog")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--kind", choices=list(census.KINDS), default="tup-all")
    e.set_defaults(fn=cmd_emit_catalog)
    return p


def _check_args(args) -> None:
    if args.cmd == "count":
        if args.object == "types":
            if args.kind is None:
                raise InputError("count types requires --kind")
            if args.method is None:
                args.method = ("brute" if args.kind.endswith("-all")
                               else "predicate")
        if args.n < 0:
            raise InputError("--n must be >= 0")
    if args.cmd == "search" and args.kind != "min-fhl":
        if not args.tree:
            raise InputError("search requires at least one --tree")
        if not args.coloring:
            raise InputError("search requires --coloring")
        if args.kind == "hl" and args.N is None:
            raise InputError("search hl requires --N")
        if args.kind == "milliken" and (args.n is None or args.m is None):
            raise InputError("search milliken requires --n and --m")
    if args.cmd == "search" and args.kind == "min-fhl":
        if args.N is None or args.k is None:
            raise InputError("search min-fhl requires --N and --k")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _check_args(args)
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, KOverflowError) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
