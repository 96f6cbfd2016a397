"""Command-line front end.

Every subcommand is a thin adapter: it parses inputs, calls one library
operation and renders the result either as a table or as structured JSON.
Exit codes: 0 success, 1 a checked inequality or identity was VIOLATED,
2 input error, 3 an enumeration cap or limit was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import clone as clone_mod
from . import cover as cover_mod
from . import verify
from .errors import CapExceeded, InputError, LimitExceeded
from .formats import (
    clonemap_to_json,
    cover_to_json,
    family_to_json,
    fractional_to_json,
    load_family,
    load_group,
)
from .setsystem import Family, GroundSet, largest_minimal_size, member_count
from .threshold import DEFAULT_WIDTH, Enclosure, frac_str, p_c

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
FAMILY_SUFFIXES = (".family", ".json")


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    width: Fraction = DEFAULT_WIDTH
    k: int = 2
    q: Fraction | None = None
    K: Fraction = verify.DEFAULT_K
    seed: int = 0
    limit: int = cover_mod.DEFAULT_LIMIT
    format: str = "table"
    all: bool = False
    n: int = 3
    group: str = "swap"
    trials: int = 100
    jobs: int = 1

    def validate(self) -> None:
        if self.width <= 0:
            raise InputError("--width must be positive")
        if self.k < 1:
            raise InputError("-k must be at least 1")
        if self.q is not None and not 0 < self.q < 1:
            raise InputError("-q must lie strictly between 0 and 1")
        if self.limit < 1:
            raise InputError("--limit must be at least 1")


def _dec(x: Fraction) -> str:
    return f"{float(x):.6g}"


def _enc_json(e: Enclosure) -> dict:
    out = e.to_json()
    out["approx"] = _dec((e.lo + e.hi) / 2)
    out["exact_point"] = e.is_point
    return out


def _enc_text(e: Enclosure) -> str:
    if e.is_point:
        return f"{frac_str(e.lo)} (exact)"
    return f"~{_dec((e.lo + e.hi) / 2)} in [{frac_str(e.lo)}, {frac_str(e.hi)}]"


def _need_q(cfg: RunConfig) -> Fraction:
    if cfg.q is None:
        raise InputError(f"{cfg.command} requires -q")
    return cfg.q


# each handler returns (payload, table lines, exit code)
Result = tuple[dict, list[str], int]


def cmd_analyze(F: Family, cfg: RunConfig) -> Result:
    pc = p_c(F, cfg.width)
    qc, certs = cover_mod.q_c(F, cfg.width)
    qf, _ = cover_mod.q_f(F, cfg.width)
    payload = {
        "family": family_to_json(F),
        "l": largest_minimal_size(F),
        "member_count": member_count(F),
        "p_c": _enc_json(pc),
        "q_c": _enc_json(qc),
        "q_c_certificate": {"q_lo": frac_str(certs.q_lo), "cover": cover_to_json(certs.cover_lo, F.ground)},
        "q_f": _enc_json(qf),
    }
    lines = [f"family       {F}", f"l            {payload['l']}", f"members      {payload['member_count']}",
             f"p_c          {_enc_text(pc)}", f"q_c          {_enc_text(qc)}", f"q_f          {_enc_text(qf)}"]
    return payload, lines, EXIT_OK


def cmd_pc(F: Family, cfg: RunConfig) -> Result:
    pc = p_c(F, cfg.width)
    return {"p_c": _enc_json(pc)}, [f"p_c  {_enc_text(pc)}"], EXIT_OK


def cmd_qc(F: Family, cfg: RunConfig) -> Result:
    qc, certs = cover_mod.q_c(F, cfg.width)
    payload = {"q_c": _enc_json(qc),
               "lower_certificate": {"q": frac_str(certs.q_lo), "cover": cover_to_json(certs.cover_lo, F.ground)},
               "upper_certificate": {"q": frac_str(certs.q_hi), "min_cost": frac_str(certs.min_cost_hi)}}
    lines = [f"q_c  {_enc_text(qc)}",
             f"cheap cover at {frac_str(certs.q_lo)}: " + " ".join(F.ground.render(S) for S in certs.cover_lo),
             f"min cost at {frac_str(certs.q_hi)}: {frac_str(certs.min_cost_hi)}"]
    return payload, lines, EXIT_OK


def cmd_qf(F: Family, cfg: RunConfig) -> Result:
    qf, w = cover_mod.q_f(F, cfg.width)
    payload = {"q_f": _enc_json(qf), "fractional_cover": fractional_to_json(w, F.ground)}
    lines = [f"q_f  {_enc_text(qf)}"] + [f"  w({k}) = {v}" for k, v in payload["fractional_cover"].items()]
    return payload, lines, EXIT_OK


def cmd_clone(F: Family, cfg: RunConfig) -> Result:
    Fk, cm = clone_mod.clone_family(F, cfg.k)
    payload = {"clone_map": clonemap_to_json(cm), "family": family_to_json(Fk)}
    return payload, [f"k={cfg.k}  {Fk}", f"generators  {len(Fk.generators)}"], EXIT_OK


def cmd_min_cover(F: Family, cfg: RunConfig) -> Result:
    q = _need_q(cfg)
    G, val = cover_mod.min_cost_cover(F, q, cfg.limit)
    payload = {"q": frac_str(q), "cover": cover_to_json(G, F.ground), "cost": frac_str(val)}
    return payload, [f"cost {frac_str(val)}  cover " + " ".join(F.ground.render(S) for S in G)], EXIT_OK


def cmd_cheapest(F: Family, cfg: RunConfig) -> Result:
    q = _need_q(cfg)
    if not cfg.all:
        return cmd_min_cover(F, cfg)
    covers = cover_mod.enumerate_cheapest_covers(F, q, cfg.limit)
    val = cover_mod.cost(covers[0], q)
    payload = {"q": frac_str(q), "cost": frac_str(val), "covers": [cover_to_json(G, F.ground) for G in covers]}
    lines = [f"{len(covers)} cheapest covers at q={frac_str(q)}, cost {frac_str(val)}"]
    lines += ["  " + " ".join(F.ground.render(S) for S in G) for G in covers]
    return payload, lines, EXIT_OK


def cmd_verify_bounds(F: Family, cfg: RunConfig) -> Result:
    rep = verify.check_bounds(F, cfg.K, cfg.width)
    payload = {"family": str(F), "l": rep.l, "K": frac_str(rep.K), "width": frac_str(rep.width),
               "p_c": _enc_json(rep.p_c), "q_c": _enc_json(rep.q_c), "q_f": _enc_json(rep.q_f),
               "verdicts": rep.verdicts, "notes": rep.notes}
    lines = [f"{name:45s} {v}" for name, v in rep.verdicts.items()] + [f"note: {x}" for x in rep.notes]
    return payload, lines, EXIT_VIOLATED if rep.violated else EXIT_OK


def cmd_verify_scaling(F: Family, cfg: RunConfig) -> Result:
    rep = verify.check_clone_scaling(F, cfg.k, cfg.width)
    payload = {"family": str(F), "k": cfg.k,
               "quantities": {k: _enc_json(v) for k, v in rep.quantities.items()},
               "residuals": {k: {"lo": frac_str(lo), "hi": frac_str(hi), "contains_zero": lo <= 0 <= hi}
                             for k, (lo, hi) in rep.residuals.items()},
               "ok": rep.ok}
    lines = [f"{name:38s} {_enc_text(v)}" for name, v in rep.quantities.items()]
    for name, (lo, hi) in rep.residuals.items():
        shown = "0 (exact)" if lo == hi == 0 else f"[{_dec(lo)}, {_dec(hi)}]"
        lines.append(f"residual {name:29s} {shown}  {'ok' if lo <= 0 <= hi else 'VIOLATED'}")
    return payload, lines, EXIT_OK if rep.ok else EXIT_VIOLATED


def cmd_noncloned(F: Family, cfg: RunConfig) -> Result:
    q = _need_q(cfg)
    Fk, _ = clone_mod.clone_family(F, cfg.k)
    H = verify.find_noncloned_cheapest(F, cfg.k, q, cfg.limit)
    payload = {"k": cfg.k, "q": frac_str(q),
               "witness": None if H is None else cover_to_json(H, Fk.ground),
               "cost": None if H is None else frac_str(cover_mod.cost(H, q))}
    if H is None:
        lines = ["no non-cloned cheapest cover"]
    else:
        lines = [f"non-cloned cheapest cover (cost {payload['cost']}): " + " ".join(Fk.ground.render(S) for S in H)]
    return payload, lines, EXIT_OK


HANDLERS: dict[str, Callable[[Family, RunConfig], Result]] = {
    "analyze": cmd_analyze,
    "pc": cmd_pc,
    "qc": cmd_qc,
    "qf": cmd_qf,
    "clone": cmd_clone,
    "min-cover": cmd_min_cover,
    "cheapest": cmd_cheapest,
    "verify-bounds": cmd_verify_bounds,
    "verify-scaling": cmd_verify_scaling,
    "noncloned": cmd_noncloned,
}


def _group(cfg: RunConfig) -> cover_mod.PermutationGroup:
    n = cfg.n
    if cfg.group == "trivial":
        return cover_mod.PermutationGroup.trivial(n)
    if cfg.group == "symmetric":
        return cover_mod.PermutationGroup.symmetric(n)
    if cfg.group == "swap":
        if n < 2:
            raise InputError("the swap group needs n >= 2")
        return cover_mod.PermutationGroup((tuple([1, 0] + list(range(2, n))),), n)
    return load_group(cfg.group, GroundSet.range(n))


def cmd_falsify_symmetry(cfg: RunConfig) -> Result:
    group = _group(cfg)
    found = verify.falsify_symmetry(cfg.n, group, cfg.trials, cfg.seed)
    payload = {"n": cfg.n, "trials": cfg.trials, "seed": cfg.seed,
               "witnesses": [{"family": family_to_json(F), "q": frac_str(q)} for F, q in found]}
    lines = [f"{len(found)} families without a symmetric cheapest cover"]
    lines += [f"  {F} at q={frac_str(q)}" for F, q in found]
    return payload, lines, EXIT_OK


def _run_one(args: tuple[str, RunConfig]) -> tuple[str, dict, list[str], int]:
    path, cfg = args
    try:
        F = load_family(path)
        payload, lines, code = HANDLERS[cfg.command](F, cfg)
    except InputError as exc:
        return path, {"error": str(exc)}, [], EXIT_INPUT
    except (CapExceeded, LimitExceeded) as exc:
        return path, {"error": str(exc)}, [], EXIT_CAP
    return path, payload, lines, code


def _expand(inputs) -> list[str]:
    paths = []
    for p in inputs:
        path = Path(p)
        if path.is_dir():
            paths += sorted(str(x) for x in path.iterdir() if x.suffix in FAMILY_SUFFIXES)
        else:
            paths.append(str(path))
    return paths


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg.validate()
        if cfg.command == "falsify-symmetry":
            payload, lines, code = cmd_falsify_symmetry(cfg)
            results = [("", payload, lines, code)]
        else:
            paths = _expand(cfg.inputs)
            if not paths:
                raise InputError(f"{cfg.command} needs at least one family file")
            jobs = [(p, cfg) for p in paths]
            if cfg.jobs > 1 and len(jobs) > 1:
                with ProcessPoolExecutor(cfg.jobs) as pool:
                    results = list(pool.map(_run_one, jobs))
            else:
                results = [_run_one(j) for j in jobs]
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CapExceeded, LimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP

    if cfg.format == "structured":
        docs = [dict(payload, input=path) if path else payload for path, payload, _, _ in results]
        json.dump(docs[0] if len(docs) == 1 else docs, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        for path, _, lines, _ in results:
            if path and len(results) > 1:
                out.write(f"== {path}\n")
            for line in lines:
                out.write(line + "\n")
    for path, payload, _, code in results:
        if "error" in payload:
            print(f"error: {payload['error']}", file=sys.stderr)
    codes = [code for *_, code in results]
    for code in (EXIT_INPUT, EXIT_CAP, EXIT_VIOLATED):
        if code in codes:
            return code
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--width", type=Fraction, default=DEFAULT_WIDTH, help="enclosure width (rational)")
    common.add_argument("-k", type=int, default=2, help="cloning factor")
    common.add_argument("-q", type=Fraction, default=None, help="cost parameter q in (0, 1)")
    common.add_argument("-K", type=Fraction, default=verify.DEFAULT_K, help="constant K in the upper bounds")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--limit", type=int, default=cover_mod.DEFAULT_LIMIT)
    common.add_argument("--format", choices=("table", "structured"), default="table")
    common.add_argument("--jobs", type=int, default=1, help="worker processes in batch mode")

    parser = argparse.ArgumentParser(prog="threshkit", description="Exact thresholds of increasing families.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in HANDLERS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("inputs", nargs="+", help="family file(s) or directories")
        if name == "cheapest":
            p.add_argument("--all", action="store_true", help="list every cheapest cover")
    p = sub.add_parser("falsify-symmetry", parents=[common])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--group", default="swap", help="trivial, swap, symmetric or a group file")
    p.add_argument("--trials", type=int, default=100)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    if "inputs" in fields:
        fields["inputs"] = tuple(fields["inputs"])
    cfg = RunConfig(**fields)
    if ns.q is None:
        cfg = replace(cfg, q=None)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
