"""Command-line front-end.

Commands: construct, verify, enumerate, pairing, symplectic.  Files are
UTF-8 JSON in canonical key order; exit codes are the only success
channel (0 ok, 1 verification/decomposition failure, 2 bad input,
3 construction error).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import serialize
from .abelian import FinAbGroup
from .classify import enumerate_multi_orbit, enumerate_single_orbit
from .construct import SingleOrbitIngredients, multi_orbit_glue, single_orbit_pair
from .cyclo import set_conductor_cap
from .errors import DegeneratePairing, NotAlternating, ProjPairError
from .verify import pairing_table, verify_dual_pair


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    max_parts: int | None = None
    check: bool = False
    fmt: str = "table"
    workers: int = 1
    output: str | None = None
    input_path: str | None = None
    b: int = 1
    e: int = 1
    L: str = "1"
    J: str = "1"
    K: str = "1"
    glue: str | None = None
    conductor_cap: int | None = None


def _parse_group(text: str) -> FinAbGroup:
    factors = [int(t) for t in text.split(",") if t.strip()]
    if not factors or any(f < 1 for f in factors):
        raise ValueError(f"bad group factors {text!r}")
    return FinAbGroup.from_factors(factors)


def _write_output(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_construct(cfg: RunConfig) -> int:
    try:
        if cfg.glue is not None:
            data = _load_json(cfg.glue)
            spec = serialize.multi_spec_from_json(data)
            g, h = multi_orbit_glue(spec)
            meta = {"construction": "multi_orbit", "summands": len(spec.summands)}
        else:
            ing = SingleOrbitIngredients(
                cfg.b, cfg.e, _parse_group(cfg.L), _parse_group(cfg.J),
                _parse_group(cfg.K),
            )
            g, h = single_orbit_pair(ing)
            meta = {
                "construction": "single_orbit",
                "ingredients": serialize.ingredients_to_json(ing),
            }
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 2
    except ProjPairError as exc:
        print(f"error: construction failed: {exc}", file=sys.stderr)
        return 3
    meta["ambient_dim"] = g.ambient.dim
    _write_output(
        serialize.dumps_canonical(serialize.pair_to_json(g, h, meta)), cfg.output
    )
    return 0


def _report_lines(report) -> str:
    lines = [
        f"is_dual_pair: {report.is_dual_pair}",
        f"identity component dims: {report.g_dim}, {report.h_dim}",
        f"components: {report.g_components}, {report.h_components}",
    ]
    for f in report.failures:
        lines.append(f"failure: {f.code}: {f.detail}")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> int:
    try:
        data = _load_json(cfg.input_path)
        g, h = serialize.pair_from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        print(f"error: malformed pair file: {exc}", file=sys.stderr)
        return 2
    report = verify_dual_pair(g, h, workers=cfg.workers)
    if cfg.fmt == "json":
        _write_output(serialize.dumps_canonical(report.to_json_dict()), cfg.output)
    else:
        _write_output(_report_lines(report), cfg.output)
    return 0 if report.is_dual_pair else 1


def _row_cells(row):
    if row.kind == "single":
        ing = row.single
        return [
            str(row.ambient_dim),
            str(ing.b),
            str(ing.e),
            str(ing.L_group),
            str(ing.J_group),
            str(ing.K_group),
            str(row.gamma),
            str(row.gamma_hat),
            "1",
        ]
    summary = " + ".join(
        f"{ing.b}x{ing.e}x[{ing.L_group}]x[{ing.J_group}]x[{ing.K_group}]"
        for ing, _ in row.multi.summands
    )
    return [
        str(row.ambient_dim), summary, "", "", "", "",
        str(row.gamma), str(row.gamma_hat), str(row.parts),
    ]


def _format_table(rows) -> str:
    header = ["n", "b", "e", "L", "J", "K", "Gamma", "GammaHat", "r"]
    cells = [header] + [_row_cells(r) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    lines = [
        "  ".join(c[i].ljust(widths[i]) for i in range(len(header))).rstrip()
        for c in cells
    ]
    return "\n".join(lines) + "\n"


def _check_one(row_json: dict):
    """Worker: rebuild a row from JSON, construct and verify it."""
    if row_json["kind"] == "single":
        ing = serialize.ingredients_from_json(row_json["ingredients"])
        g, h = single_orbit_pair(ing)
    else:
        g, h = multi_orbit_glue(serialize.multi_spec_from_json(row_json["glue"]))
    report = verify_dual_pair(g, h)
    return report.is_dual_pair, report.failure_codes()


def cmd_enumerate(cfg: RunConfig) -> int:
    if cfg.n is None:
        print("error: --n is required", file=sys.stderr)
        return 2
    max_parts = cfg.max_parts if cfg.max_parts is not None else 1
    if max_parts > 1:
        rows = enumerate_multi_orbit(cfg.n, max_parts)
    else:
        rows = enumerate_single_orbit(cfg.n)
    out = []
    if cfg.fmt == "json":
        payload = {"n": cfg.n, "rows": [serialize.row_to_json(r) for r in rows]}
    check_results = None
    if cfg.check:
        row_jsons = [serialize.row_to_json(r) for r in rows]
        workers = cfg.workers
        if workers > 1 and len(rows) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                check_results = list(pool.map(_check_one, row_jsons))
        else:
            check_results = [_check_one(rj) for rj in row_jsons]
    if cfg.fmt == "json":
        if check_results is not None:
            for rj, (ok, codes) in zip(payload["rows"], check_results):
                rj["verified"] = ok
                rj["failure_codes"] = codes
            payload["passed"] = sum(1 for ok, _ in check_results if ok)
            payload["failed"] = sum(1 for ok, _ in check_results if not ok)
        _write_output(serialize.dumps_canonical(payload), cfg.output)
    else:
        text = _format_table(rows)
        if check_results is not None:
            passed = sum(1 for ok, _ in check_results if ok)
            text += f"verified: {passed}/{len(rows)} pairs pass\n"
            for row, (ok, codes) in zip(rows, check_results):
                if not ok:
                    text += f"FAILED: {_row_cells(row)} {codes}\n"
        _write_output(text, cfg.output)
    if check_results is not None and any(not ok for ok, _ in check_results):
        return 1
    return 0


def cmd_pairing(cfg: RunConfig) -> int:
    try:
        data = _load_json(cfg.input_path)
        g, h = serialize.pair_from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        print(f"error: malformed pair file: {exc}", file=sys.stderr)
        return 2
    try:
        table = pairing_table(g, h)
    except ProjPairError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.fmt == "json":
        _write_output(serialize.dumps_canonical(table.to_json_dict()), cfg.output)
    else:
        lines = [
            " ".join(f"z{order}^{expo}" if order > 1 else "1" for order, expo in row)
            for row in table.values
        ]
        nondeg = table.is_nondegenerate()
        _write_output("\n".join(lines) + f"\nnondegenerate: {nondeg}\n", cfg.output)
    return 0


def cmd_symplectic(cfg: RunConfig) -> int:
    from .abelian import symplectic_decompose

    try:
        data = _load_json(cfg.input_path)
        pairing = serialize.pairing_from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        print(f"error: malformed pairing file: {exc}", file=sys.stderr)
        return 2
    try:
        dec = symplectic_decompose(pairing)
    except (DegeneratePairing, NotAlternating) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.fmt == "json":
        payload = {
            "pairs": [
                {"lambda": list(lam.coords), "lambda_prime": list(lp.coords), "order": r}
                for lam, lp, r in dec.pairs
            ],
            "lagrangian": serialize.group_to_json(dec.lagrangian),
        }
        _write_output(serialize.dumps_canonical(payload), cfg.output)
    else:
        lines = [
            f"pair: lambda={list(lam.coords)} lambda'={list(lp.coords)} order={r}"
            for lam, lp, r in dec.pairs
        ]
        lines.append(f"lagrangian: {dec.lagrangian}")
        _write_output("\n".join(lines) + "\n", cfg.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projpair",
        description="Construct, verify, and enumerate dual pairs in PGL(n, C) "
        "with exact cyclotomic arithmetic.",
    )
    parser.add_argument("--conductor-cap", type=int, default=None,
                        help="override the cyclotomic conductor cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a pair from ingredients")
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--L", default="1", help="invariant factors, e.g. '2,4'")
    p.add_argument("--J", default="1")
    p.add_argument("--K", default="1")
    p.add_argument("--glue", default=None, help="multi-orbit glue spec file")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("verify", help="verify a pair file")
    p.add_argument("pair_file")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("enumerate", help="enumerate classification rows")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-parts", type=int, default=None)
    p.add_argument("--check", action="store_true",
                   help="construct and verify every row")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("pairing", help="print the component pairing table")
    p.add_argument("pair_file")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("symplectic", help="hyperbolic decomposition of a pairing")
    p.add_argument("pairing_file")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--output", "-o", default=None)

    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.conductor_cap = args.conductor_cap
    cfg.fmt = getattr(args, "format", "table")
    cfg.output = getattr(args, "output", None)
    if args.command == "construct":
        cfg.b, cfg.e = args.b, args.e
        cfg.L, cfg.J, cfg.K = args.L, args.J, args.K
        cfg.glue = args.glue
    elif args.command == "verify":
        cfg.input_path = args.pair_file
        cfg.workers = args.workers
    elif args.command == "enumerate":
        cfg.n = args.n
        cfg.max_parts = args.max_parts
        cfg.check = args.check
        if args.workers is not None:
            cfg.workers = args.workers
        elif args.check:
            cfg.workers = os.cpu_count() or 1
        else:
            cfg.workers = 1
    elif args.command in ("pairing", "symplectic"):
        cfg.input_path = getattr(args, "pair_file", None) or args.pairing_file
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    if cfg.conductor_cap is not None:
        set_conductor_cap(cfg.conductor_cap)
    handlers = {
        "construct": cmd_construct,
        "verify": cmd_verify,
        "enumerate": cmd_enumerate,
        "pairing": cmd_pairing,
        "symplectic": cmd_symplectic,
    }
    return handlers[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
