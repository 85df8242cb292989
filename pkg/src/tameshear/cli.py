"""Command-line verification harness.

    python -m tameshear verify-sl2 --input '{"pairs": [[1, 2]]}' --backend exact

Exit status: 0 when every case passes, 1 on any failure, 2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .danielewski import build_dani_construction, check_dani_row
from .density import density_certificates
from .perturb import perturb_last_shear
from .quotients import verify_dani_quotient_tame, verify_psl2_tame
from .scalar import EXACT, FloatBackend, GaussianRational, InexactError
from .spectral import FiberTask, build_fiber_construction, check_fiber_row
from .tame_sl2 import (ConstructionError, InjectionTable, InvalidTableError,
                       build_sl2_construction, check_sl2_row)

DEFAULT_BACKEND = {
    "verify-sl2": "exact",
    "verify-psl2": "exact",
    "verify-dani": "float",
    "verify-dani-quotient": "float",
    "verify-spectral": "float",
    "verify-density": "exact",
    "selftest": "exact",
}
DEFAULT_DPS = 50


class InputError(ValueError):
    """Bad task file or option; maps to exit status 2."""


# -- input ------------------------------------------------------------------------

def load_input(arg: str | None) -> dict:
    if arg is None:
        return {}
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("task must be a JSON object")
    return data


def parse_scalar(v):
    """[re, im] doubles, {"num", "den"} rationals (re only) or {"re": .., "im": ..} of those."""
    if isinstance(v, bool):
        raise InputError(f"not a scalar: {v!r}")
    if isinstance(v, int):
        return GaussianRational(v)
    if isinstance(v, float):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        if all(isinstance(x, int) for x in v):
            return GaussianRational(v[0], v[1])
        return complex(v[0], v[1])
    if isinstance(v, dict) and "num" in v:
        try:
            return GaussianRational(Fraction(int(v["num"]), int(v.get("den", 1))))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {v!r}") from exc
    if isinstance(v, dict) and "re" in v:
        re, im = parse_scalar(v["re"]), parse_scalar(v.get("im", 0))
        if isinstance(re, GaussianRational) and isinstance(im, GaussianRational):
            return re + im * GaussianRational(0, 1)
        return complex(re) + 1j * complex(im)
    raise InputError(f"not a scalar: {v!r}")


def for_backend(x, backend):
    if backend.exact and not isinstance(x, GaussianRational):
        # doubles are binary fractions; convert without rounding
        return GaussianRational.from_float(x)
    return backend.coerce(x)


def parse_table(data: dict) -> InjectionTable:
    if "pairs" not in data:
        raise InputError('task needs "pairs": [[n, l(n)], ...]')
    pairs = data["pairs"]
    if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) and not isinstance(x, bool)
                                                        for x in p) for p in pairs):
        raise InputError("pairs must be a list of integer pairs")
    try:
        return InjectionTable.from_pairs(pairs)
    except InvalidTableError as exc:
        raise InputError(str(exc)) from exc


def parse_fiber_task(data: dict, backend) -> FiberTask:
    table = parse_table(data)
    try:
        lam = for_backend(parse_scalar(data.get("lambda", 0)), backend)
        mu = for_backend(parse_scalar(data.get("mu", 0)), backend)
        return FiberTask(lam, mu, table)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def make_backend(config: dict):
    if config["backend"] == "exact":
        return EXACT
    dps = config.get("dps") or None
    return FloatBackend(config["tol"], dps=dps)


# -- row suites (parallel-safe: workers rebuild from the JSON payload) ----------------

def _build(suite: str, data: dict, backend, perturb):
    """Returns (program, table, attachments) for one of the row-wise suites."""
    table = parse_table(data)
    if suite == "verify-sl2":
        cons = build_sl2_construction(table, backend)
        extra = {"theta": cons.theta}
    elif suite == "verify-dani":
        cons = build_dani_construction(table, backend)
        extra = {}
    else:
        task = parse_fiber_task(data, backend)
        cons = build_fiber_construction(task, backend)
        extra = {"lambda": task.lam, "mu": task.mu}
    prog = cons.program
    if perturb is not None:
        if not 0 <= perturb < len(table):
            raise InputError(f"--perturb index {perturb} outside the table")
        delta = backend.coerce(Fraction(1, 1000))
        prog = perturb_last_shear(prog, table.pairs[perturb][1], delta, backend)
        extra["perturbed_row"] = perturb
    return prog, table, extra


def _run_rows(suite: str, data: dict, config: dict, indices):
    backend = make_backend(config)
    prog, table, extra = _build(suite, data, backend, config.get("perturb"))
    out = []
    for i in indices:
        n, ln = table.pairs[i]
        if suite == "verify-sl2":
            rec = check_sl2_row(i, n, ln, prog, backend)
        elif suite == "verify-dani":
            rec = check_dani_row(i, n, ln, prog, backend)
        else:
            rec = check_fiber_row(i, n, ln, for_backend(extra["lambda"], backend),
                                  for_backend(extra["mu"], backend), prog, backend)
        out.append(rec.to_dict())
    return out


def _chunks(n: int, jobs: int):
    size = max(1, math.ceil(n / jobs))
    return [list(range(k, min(n, k + size))) for k in range(0, n, size)]


def run_row_suite(suite: str, data: dict, config: dict) -> dict:
    backend = make_backend(config)
    prog, table, extra = _build(suite, data, backend, config.get("perturb"))
    jobs = config.get("jobs", 1)
    if jobs > 1 and len(table) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_rows, suite, data, config, idx)
                       for idx in _chunks(len(table), jobs)]
            cases = [c for f in futures for c in f.result()]
    else:
        cases = _run_rows(suite, data, config, range(len(table)))
    attachments = {"shears": prog.describe(), **extra}
    return assemble(suite, config, cases, [], attachments)


# -- whole-table suites -------------------------------------------------------------

def run_quotient_suite(suite: str, data: dict, config: dict) -> dict:
    backend = make_backend(config)
    table = parse_table(data)
    mirror = not config.get("no_mirror", False)
    post = None
    row = config.get("perturb")
    if row is not None:
        if not 0 <= row < len(table):
            raise InputError(f"--perturb index {row} outside the table")
        delta = backend.coerce(Fraction(1, 1000))
        post = lambda prog: perturb_last_shear(prog, table.pairs[row][1], delta, backend)
    verify = verify_psl2_tame if suite == "verify-psl2" else verify_dani_quotient_tame
    report = verify(table, backend, mirror=mirror, seed=config["seed"], post_build=post)
    return assemble(suite, config, [c.to_dict() for c in report.cases],
                    [c.to_dict() for c in report.certificates], report.attachments)


def run_density(data: dict, config: dict) -> dict:
    samples = int(data.get("order_samples", 3))
    row = config.get("perturb")
    if row is not None and row not in range(-2, 3):
        raise InputError("--perturb for verify-density names a point j in -2..2")
    certs = density_certificates(seed=config["seed"], order_samples=samples,
                                 solve_samples=int(data.get("solve_samples", 20)), perturb=row)
    return assemble("verify-density", config, [], [c.to_dict() for c in certs], {})


SELFTEST = [
    ("verify-sl2", {"pairs": [[1, 2], [2, 5], [3, 1]]}, {"backend": "exact"}, True),
    ("verify-sl2", {"pairs": [[1, 2], [2, 5], [3, 1]]}, {"backend": "exact", "perturb": 1}, False),
    ("verify-dani", {"pairs": [[1, 3]]}, {"backend": "exact"}, True),
    ("verify-dani", {"pairs": [[1, 3], [2, 1], [4, 7]]}, {"backend": "float"}, True),
    ("verify-spectral", {"lambda": 0, "mu": 0, "pairs": [[1, 2]]}, {"backend": "float"}, True),
    ("verify-spectral", {"lambda": {"num": 1, "den": 2}, "mu": {"num": -1, "den": 4},
                         "pairs": [[1, 3], [2, 1]]}, {"backend": "float"}, True),
    ("verify-psl2", {"pairs": [[1, 2], [2, 5], [3, 1]]}, {"backend": "exact"}, True),
    ("verify-psl2", {"pairs": [[1, 2], [2, 5], [3, 1]]}, {"backend": "exact", "no_mirror": True}, False),
    ("verify-dani-quotient", {"pairs": [[1, 3]]}, {"backend": "exact"}, True),
    ("verify-dani-quotient", {"pairs": [[1, 3], [2, 1], [4, 7]]}, {"backend": "float"}, True),
    ("verify-density", {"order_samples": 1, "solve_samples": 5}, {"backend": "exact"}, True),
    ("verify-density", {"order_samples": 1, "solve_samples": 5}, {"backend": "exact", "perturb": 0}, False),
]


def run_selftest(data: dict, config: dict) -> dict:
    cases = []
    for i, (suite, task, overrides, expect) in enumerate(SELFTEST):
        cfg = {**config, "jobs": 1, "perturb": None, **overrides}
        rep = run_suite(suite, task, cfg)
        ok = rep["summary"]["ok"] == expect
        # a negative control is expected to carry a large residual
        res = rep["summary"]["max_residual"] if expect else "0"
        cases.append({"index": i, "input": {"suite": suite, "task": task, "overrides": overrides},
                      "residual": res, "pass": ok,
                      "detail": f"expected {'pass' if expect else 'fail'}, "
                                f"got {'pass' if rep['summary']['ok'] else 'fail'}"})
    return assemble("selftest", config, cases, [], {})


def run_suite(suite: str, data: dict, config: dict) -> dict:
    if suite in ("verify-sl2", "verify-dani", "verify-spectral"):
        return run_row_suite(suite, data, config)
    if suite in ("verify-psl2", "verify-dani-quotient"):
        return run_quotient_suite(suite, data, config)
    if suite == "verify-density":
        return run_density(data, config)
    return run_selftest(data, config)


# -- report ------------------------------------------------------------------------

def _res_value(r):
    if r == "0":
        return 0.0
    if r == "inf":
        return math.inf
    return float(r)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return str(obj)


def assemble(task: str, config: dict, cases, certificates, attachments) -> dict:
    cases = sorted(cases, key=lambda c: c["index"])
    known = [c["name"] for c in certificates if c.get("data", {}).get("known_defect") == "True"]
    hard = [c for c in certificates if c["name"] not in known]
    worst = max((_res_value(c["residual"]) for c in cases), default=0.0)
    ok = all(c["pass"] for c in cases) and all(c["pass"] for c in hard)
    cfg = {k: v for k, v in config.items() if k != "jobs"}
    return {
        "task": task,
        "config": _jsonable(cfg),
        "cases": cases,
        "certificates": certificates,
        "attachments": _jsonable(attachments),
        "summary": {"total": len(cases), "passed": sum(c["pass"] for c in cases),
                    "certificates": len(certificates),
                    "certificates_passed": sum(c["pass"] for c in certificates),
                    "known_defects": known,
                    "max_residual": worst if math.isfinite(worst) else "inf",
                    "ok": ok, "wall_time": 0.0},
    }


# -- entry point ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tameshear", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in DEFAULT_BACKEND:
        sp = sub.add_parser(name)
        sp.add_argument("--input", help="task JSON file, or inline JSON")
        sp.add_argument("--backend", choices=["exact", "float"], default=None)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--dps", type=int, default=DEFAULT_DPS,
                        help="decimal digits of the float backend; 0 means IEEE double")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--perturb", type=int, default=None, metavar="ROW",
                        help="negative control: nudge the final shear value of one row")
        sp.add_argument("--no-mirror", action="store_true",
                        help="quotient suites: drop the mirrored nodes (negative control)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 2
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return 2
    if args.dps and args.dps < 15:
        print("error: --dps must be 0 (double) or at least 15", file=sys.stderr)
        return 2
    config = {"backend": args.backend or DEFAULT_BACKEND[args.command], "tol": args.tol,
              "dps": args.dps, "seed": args.seed, "jobs": args.jobs,
              "perturb": args.perturb, "no_mirror": args.no_mirror}
    t0 = time.perf_counter()
    try:
        data = load_input(args.input)
        report = run_suite(args.command, data, config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InexactError, ConstructionError) as exc:
        print(f"error: construction not available for this input/backend: {exc}", file=sys.stderr)
        return 2
    report["summary"]["wall_time"] = round(time.perf_counter() - t0, 6)
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["summary"]["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
