"""Command-line front end.

Exit codes: 0 verified, 1 falsified, 2 capacity exceeded (argparse usage
errors also exit with 2), 3 degenerate eigenproblem.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from typing import Any

from .exceptions import CapacityError, DegeneracyError, DomainError
from .patterns import (
    BlockStructure,
    admissible_count_formula,
    catalan,
    enumerate_admissible,
    enumerate_block,
    enumerate_words,
    from_word,
    max_dim,
    to_word,
)
from .scalars import CycScalar, make_field, parse_rational
from .schur import TABLE1, YoungDiagramY, schur_all_ones

EXIT_OK, EXIT_FALSIFIED, EXIT_CAPACITY, EXIT_DEGENERATE = 0, 1, 2, 3


def render(x: Any) -> Any:
    """JSON-friendly form: rationals as int or "p/q", other field elements as coefficient records."""
    if isinstance(x, CycScalar):
        if x.is_rational():
            return render(x.to_fraction())
        return x.to_json()
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {k: render(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [render(v) for v in x]
    return x


def _check_capacity(blocks: BlockStructure) -> None:
    if catalan(blocks.n) > max_dim():
        raise CapacityError(
            f"ambient dimension c_{blocks.n} = {catalan(blocks.n)} exceeds FUSED_TL_MAX_DIM={max_dim()}"
        )


def cmd_enumerate(args) -> tuple[dict, int]:
    blocks = BlockStructure(args.ell, args.m)
    L = enumerate_block(args.ell, args.m)
    adm = enumerate_admissible(args.ell, args.m)
    words = enumerate_words(args.ell, args.m)
    roundtrip = all(from_word(to_word(p, blocks), blocks) == p for p in adm)
    image = {to_word(p, blocks) for p in adm}
    bijection_ok = roundtrip and image == set(words) and len(image) == len(adm)
    out = {
        "params": {"ell": args.ell, "m": args.m},
        "L_2n": catalan(blocks.n),
        "L": len(L),
        "L_admissible": len(adm),
        "L_admissible_formula": admissible_count_formula(args.ell, args.m),
        "W": len(words),
        "bijection_ok": bijection_ok,
    }
    ok = bijection_ok and out["L_admissible"] == out["L_admissible_formula"] == out["W"]
    return out, EXIT_OK if ok else EXIT_FALSIFIED


def cmd_verify(args) -> tuple[dict, int]:
    from .verification import run_suite

    blocks = BlockStructure(args.ell, args.m)
    _check_capacity(blocks)
    reports = run_suite(blocks, args.seed)
    failing = [r.claim for r in reports if not r.ok]
    out = {
        "params": {"ell": args.ell, "m": args.m, "seed": args.seed},
        "checks": [r.to_json() for r in reports],
        "status": "verified" if not failing else "falsified",
        "failing": failing,
    }
    return out, EXIT_OK if not failing else EXIT_FALSIFIED


def _parse_z(args, m: int) -> list[Fraction] | None:
    if args.z is None:
        return None
    z = [parse_rational(s.strip()) for s in args.z.split(",") if s.strip()]
    if len(z) != 2 * m:
        raise DomainError(f"--z needs {2 * m} values, got {len(z)}")
    return z


def cmd_sumrule(args) -> tuple[dict, int]:
    from .spectra import sum_rule

    blocks = BlockStructure(args.ell, args.m)
    z = _parse_z(args, args.m)
    Y = YoungDiagramY(args.ell, args.m)
    try:
        _check_capacity(blocks)
    except CapacityError:
        if z is not None:
            raise
        s = schur_all_ones(Y)
        table = TABLE1.get((args.ell, args.m))
        out = {
            "params": {"ell": args.ell, "m": args.m, "z": "homogeneous"},
            "Z": None,
            "schur_value": s,
            "table_value": table,
            "schur_only": True,
            "match": None if table is None else s == table,
        }
        return out, EXIT_OK if table is None or s == table else EXIT_FALSIFIED
    rep = sum_rule(blocks, z, check_norm=True)
    out = {
        "params": rep.params,
        "Z": render(rep.Z),
        "schur_value": render(rep.schur_value),
        "schur_only": False,
        "match": rep.match,
        "norm_equals_Z_squared": rep.norm_consistent,
    }
    if z is None:
        out["table_value"] = TABLE1.get((args.ell, args.m))
    return out, EXIT_OK if rep.match and rep.norm_consistent else EXIT_FALSIFIED


def cmd_groundstate(args) -> tuple[dict, int]:
    from .spectra import ground_state_at, ground_state_homogeneous

    blocks = BlockStructure(args.ell, args.m)
    _check_capacity(blocks)
    z = _parse_z(args, args.m)
    gs = ground_state_homogeneous(blocks) if z is None else ground_state_at(blocks, z)
    data = gs.to_json()
    for comp in data["components"]:
        comp["value"] = render(CycScalar.from_json(comp["value"]))
    return data, EXIT_OK


def cmd_conjecture(args) -> tuple[dict, int]:
    from .spectra import conjecture_largest

    blocks = BlockStructure(args.ell, args.m)
    _check_capacity(blocks)
    rep = conjecture_largest(blocks)
    out = rep.to_json()
    out["label"] = "conjecture check"
    out["witness"] = render(
        {k: (CycScalar.from_json(v) if isinstance(v, dict) else v) for k, v in out["witness"].items()}
    )
    return out, EXIT_OK if rep.ok else EXIT_FALSIFIED


COMMANDS = {
    "enumerate": (cmd_enumerate, "count link patterns, admissible patterns and words"),
    "verify": (cmd_verify, "run the structural verification suite"),
    "sumrule": (cmd_sumrule, "compare the ground-state sum with the Schur function"),
    "groundstate": (cmd_groundstate, "solve for the normalized ground state"),
    "conjecture": (cmd_conjecture, "check the largest-entry conjecture"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusedtl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--ell", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--z", help="comma-separated rationals p/q, 2m of them")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _flat(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return "" if v is None else str(v)


def serialize(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    rows = payload.get("checks") or payload.get("components")
    if rows:
        keys = sorted(rows[0])
        w.writerow(keys)
        for r in rows:
            w.writerow([_flat(r[k]) for k in keys])
    else:
        keys = sorted(payload)
        w.writerow(keys)
        w.writerow([_flat(payload[k]) for k in keys])
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fusedtl-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.ell < 1 or args.m < 1:
        parser.error("--ell and --m must be positive")
    make_field(args.ell)
    func = COMMANDS[args.command][0]
    try:
        payload, code = func(args)
    except CapacityError as exc:
        payload, code = {"status": "capacity", "error": str(exc)}, EXIT_CAPACITY
    except DegeneracyError as exc:
        payload, code = {"status": "degenerate", "error": str(exc)}, EXIT_DEGENERATE
    except DomainError as exc:
        parser.error(str(exc))
    text = serialize(payload, args.format)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
