"""Command-line front end: ``rcatalan {catalan,orbits,nabla,verify}``.

Exit codes: 0 when every check passes, 1 when any identity fails,
2 for usage and budget errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from ._config import BudgetError, PoleError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
IDENTITIES = ("main", "type-a", "signtwist", "subspaces", "shuffle")


class UsageError(ValueError):
    pass


# -- argument grammar ---------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``7``, ``5,7,11``, ``5..13`` or ``5..13:odd`` (also ``:even``)."""
    out: set[int] = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise UsageError(f"empty item in range {text!r}")
        body, _, parity = chunk.partition(":")
        try:
            if ".." in body:
                lo, hi = (int(x) for x in body.split("..", 1))
                values = range(lo, hi + 1)
            else:
                values = [int(body)]
        except ValueError:
            raise UsageError(f"bad range {chunk!r}; expected a, a..b or a..b:odd") from None
        if parity == "odd":
            values = [v for v in values if v % 2]
        elif parity == "even":
            values = [v for v in values if v % 2 == 0]
        elif parity:
            raise UsageError(f"unknown range filter {parity!r}")
        out.update(values)
    if not out:
        raise UsageError(f"range {text!r} is empty")
    return sorted(out)


def parse_types(text: str) -> list[str]:
    from .root_systems import CartanType

    types = []
    for chunk in text.split(","):
        try:
            types.append(str(CartanType.parse(chunk.strip())))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return sorted(set(types), key=_type_key)


def _type_key(name: str | None):
    if name is None:
        return ("", 0)
    return (name[0], int(name[1:]))


@dataclass(frozen=True)
class SweepConfig:
    types: tuple
    ells: tuple
    ns: tuple
    fmt: str
    jobs: int
    timing: bool


_BUDGET_FLAGS = {"max_points": "MAX_POINTS", "max_weyl": "MAX_WEYL", "max_degree": "MAX_DEGREE"}


@contextmanager
def _budget_env(args):
    saved = {}
    try:
        for attr, var in _BUDGET_FLAGS.items():
            value = getattr(args, attr, None)
            if value is None:
                continue
            if value <= 0:
                raise UsageError(f"--{attr.replace('_', '-')} must be positive")
            names = [var, "MAX_MACDONALD"] if var == "MAX_DEGREE" else [var]
            for name in names:
                saved[name] = os.environ.get(name)
                os.environ[name] = str(value)
        yield
    finally:
        for name, old in saved.items():
            if old is None:
                os.environ.pop(name, None)
            else:
                os.environ[name] = old


def _format_value(v) -> str:
    if isinstance(v, Fraction):
        return str(int(v)) if v.denominator == 1 else str(v)
    return str(v)


# -- catalan ------------------------------------------------------------------


def cmd_catalan(args, out) -> int:
    from .root_systems import build_root_system, coxeter_catalan

    rows = []
    for name in parse_types(args.type):
        rs = build_root_system(name)
        for m in parse_range(args.m):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rows.append((name, m, coxeter_catalan(rs, m)))
    fmt = args.format or "pretty"
    if fmt == "json":
        out.write(json.dumps([{"type": t, "m": m, "catalan": _json_num(v)} for t, m, v in rows]) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["type", "m", "catalan"])
        for t, m, v in rows:
            w.writerow([t, m, _format_value(v)])
    elif len(rows) == 1:
        out.write(_format_value(rows[0][2]) + "\n")
    else:
        for t, m, v in rows:
            out.write(f"{t} m={m}: {_format_value(v)}\n")
    return EXIT_OK


def _json_num(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


# -- orbits -------------------------------------------------------------------


def _burnside_census(rs, m) -> dict:
    from math import gcd

    from .finite_torus import burnside_orbit_count, regular_orbit_count

    regular = regular_orbit_count(rs, m) if gcd(m, rs.coxeter_number) == 1 else None
    return {
        "type": str(rs.cartan_type),
        "m": m,
        "entries": [],
        "total": burnside_orbit_count(rs, m),
        "regular": _json_num(regular),
    }


def cmd_orbits(args, out) -> int:
    from .finite_torus import enumerate_orbits
    from .root_systems import build_root_system

    censuses = []
    for name in parse_types(args.type):
        rs = build_root_system(name)
        for m in parse_range(args.m):
            if args.mode == "burnside":
                censuses.append(_burnside_census(rs, m))
            else:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    censuses.append(enumerate_orbits(rs, m).to_dict())
    fmt = args.format or "pretty"
    if fmt == "json":
        payload = censuses[0] if len(censuses) == 1 else censuses
        out.write(json.dumps(payload) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["type", "m", "stabilizer", "conjugacy_class_id", "count"])
        for c in censuses:
            for e in c["entries"]:
                w.writerow([c["type"], c["m"], e["stabilizer"], e["conjugacy_class_id"], e["count"]])
            w.writerow([c["type"], c["m"], "total", "", c["total"]])
    else:
        for c in censuses:
            out.write(f"{c['type']} on Q/{c['m']}Q\n")
            for e in c["entries"]:
                label = "regular" if e["stabilizer"] == "empty" else e["stabilizer"]
                out.write(f"  {label:<24} class {e['conjugacy_class_id']:>2}  {e['count']}\n")
            out.write(f"  total {c['total']}, regular {c['regular']}\n")
    return EXIT_OK


# -- nabla --------------------------------------------------------------------


def coefficient_grid(poly) -> str:
    """Rows by t-degree, columns by q-degree; the staircase shows up as a triangle."""
    coeffs = poly.numerator_dict()
    if not poly.is_polynomial() or not coeffs:
        return str(poly)
    qmax = max(i for i, _ in coeffs)
    tmax = max(j for _, j in coeffs)
    width = max(len(str(c)) for c in coeffs.values())
    lines = []
    for j in range(tmax, -1, -1):
        cells = [str(coeffs.get((i, j), "")).rjust(width) if coeffs.get((i, j)) else " " * width for i in range(qmax + 1)]
        lines.append(" ".join(cells).rstrip())
    return "\n".join(lines)


def cmd_nabla(args, out) -> int:
    from .macdonald import nabla
    from .symfunc import convert, e, hall_inner, parse_symfunc, to_string

    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    value = nabla(e(n))
    if args.pair:
        try:
            other = parse_symfunc(args.pair if "*" in args.pair else f"1*{args.pair}")
        except ValueError as exc:
            raise UsageError(f"bad --pair: {exc}") from None
        if other.degree != n:
            raise UsageError(f"--pair has degree {other.degree}, expected {n}")
        result = hall_inner(other, value)
        fmt = args.format
        if fmt == "json":
            out.write(json.dumps({"n": n, "pair": args.pair, "value": str(result)}) + "\n")
        else:
            out.write(str(result) + "\n")
            if fmt == "pretty":
                out.write(coefficient_grid(result) + "\n")
        return EXIT_OK
    text = to_string(convert(value, args.basis))
    if args.format == "json":
        out.write(json.dumps({"n": n, "basis": args.basis, "value": text}) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def _jobs_for(identity: str, cfg: SweepConfig) -> list[tuple]:
    if identity in ("main", "subspaces", "signtwist"):
        if not cfg.types or not cfg.ells:
            raise UsageError(f"verify {identity} needs --type and --ell/--m")
        return [(identity, t, ell, None) for t in cfg.types for ell in cfg.ells]
    if identity == "type-a":
        if not cfg.ns or not cfg.ells:
            raise UsageError("verify type-a needs --n and --ell")
        return [(identity, _typeA_name(n), ell, n) for n in cfg.ns for ell in cfg.ells]
    if not cfg.ns:
        raise UsageError("verify shuffle needs --n")
    return [(identity, _typeA_name(n), None, n) for n in cfg.ns]


def _typeA_name(n: int) -> str | None:
    return f"A{n - 1}" if n > 1 else None


def run_job(job: tuple):
    """Run one verification; returns ``(report dict, pretty line)`` or raises BudgetError."""
    from . import coinvariants as co
    from .root_systems import build_root_system

    identity, tname, ell, n = job
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if identity == "main":
            rep = co.verify_main_identity(build_root_system(tname), ell)
        elif identity == "subspaces":
            rep = co.special_subspace_dims(build_root_system(tname), ell)
        elif identity == "signtwist":
            rep = co.verify_signtwist_shift(build_root_system(tname), ell)
        elif identity == "type-a":
            rep = co.verify_typeA_identity(n, ell)
        else:
            rep = co.verify_shuffle(n)
    return rep.to_dict(), _pretty_line(rep)


def _budget_report(job: tuple, exc: Exception):
    identity, tname, ell, n = job
    d = {
        "identity": identity,
        "type": tname,
        "ell": ell,
        "n": n,
        "paths": {},
        "expected": None,
        "verdict": "skipped",
        "ms": None,
        "in_hypothesis": None,
        "notes": [f"budget: {exc}"],
    }
    where = " ".join(x for x in (tname, f"ell={ell}" if ell is not None else None, f"n={n}" if n else None) if x)
    return d, f"SKIP {identity} {where}: {exc}"


def _pretty_line(rep) -> str:
    where = " ".join(
        x
        for x in (
            rep.cartan_type if rep.identity != "type-a" else None,
            f"ell={rep.ell}" if rep.ell is not None else None,
            f"n={rep.n}" if rep.n is not None else None,
        )
        if x
    )
    verdict = "SKIP" if rep.skipped else rep.verdict.upper()
    if rep.identity == "shuffle":
        line = f"{verdict} {rep.identity} {where}: parking_functions {'==' if rep.passed else '!='} nabla e_n"
    else:
        paths = " ".join(f"{k}={_format_value(v)}" for k, v in rep.paths.items())
        line = f"{verdict} {rep.identity} {where}: {paths + ' ' if paths else ''}(expected {_format_value(rep.expected)})"
    if rep.notes:
        line += " [" + "; ".join(rep.notes) + "]"
    return line


def _run_all(jobs: list[tuple], n_workers: int) -> list:
    def guarded(job):
        try:
            return run_job(job)
        except BudgetError as exc:
            return _budget_report(job, exc)

    if n_workers <= 1 or len(jobs) <= 1:
        return [guarded(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        futures = [pool.submit(run_job, j) for j in jobs]
        results = []
        for job, fut in zip(jobs, futures):
            try:
                results.append(fut.result())
            except BudgetError as exc:
                results.append(_budget_report(job, exc))
        return results


def _sort_key(job: tuple):
    identity, tname, ell, n = job
    return (identity, _type_key(tname), ell if ell is not None else -1, n if n is not None else -1)


def cmd_verify(args, out) -> int:
    cfg = SweepConfig(
        types=tuple(parse_types(args.type)) if args.type else (),
        ells=tuple(parse_range(args.ell)) if args.ell else (),
        ns=tuple(parse_range(args.n)) if args.n else (),
        fmt=args.format or "pretty",
        jobs=args.jobs,
        timing=args.timing,
    )
    if cfg.jobs < 1:
        raise UsageError("--jobs must be positive")
    jobs = sorted(_jobs_for(args.identity, cfg), key=_sort_key)
    results = _run_all(jobs, cfg.jobs)
    dicts = []
    for d, _ in results:
        if not cfg.timing:
            d["ms"] = None
        dicts.append(d)
    if cfg.fmt == "json":
        for d in dicts:
            out.write(json.dumps(d) + "\n")
    elif cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["identity", "type", "ell", "n", "paths", "expected", "verdict", "in_hypothesis", "ms"])
        for d in dicts:
            paths = ";".join(f"{k}={_csv_value(v)}" for k, v in d["paths"].items())
            w.writerow(
                [
                    d["identity"],
                    d["type"] or "",
                    "" if d["ell"] is None else d["ell"],
                    "" if d["n"] is None else d["n"],
                    paths,
                    _csv_value(d["expected"]),
                    d["verdict"],
                    d["in_hypothesis"],
                    "" if d["ms"] is None else d["ms"],
                ]
            )
    else:
        for d, (_, line) in zip(dicts, results):
            if cfg.timing and d["ms"] is not None:
                line += f" {d['ms']:.1f} ms"
            out.write(line + "\n")
    verdicts = [d["verdict"] for d in dicts]
    if "fail" in verdicts:
        return EXIT_FAIL
    if "skipped" in verdicts:
        return EXIT_USAGE
    return EXIT_OK


def _csv_value(v) -> str:
    if isinstance(v, list):
        return "(" + ",".join(str(x) for x in v) + ")"
    return "" if v is None else str(v)


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rcatalan", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default=None)
    common.add_argument("--max-points", type=int, default=None, help="point budget for torus enumeration")
    common.add_argument("--max-weyl", type=int, default=None, help="largest Weyl group to enumerate")
    common.add_argument("--max-degree", type=int, default=None, help="largest symmetric function degree")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalan", parents=[common], help="rational Coxeter-Catalan number Cat_W(m)")
    p.add_argument("--type", required=True, help="Cartan types, e.g. B2 or A1,A2")
    p.add_argument("--m", "--ell", dest="m", required=True, help="modulus or range a..b[:odd]")
    p.set_defaults(func=cmd_catalan)

    p = sub.add_parser("orbits", parents=[common], help="W-orbits on Q/mQ by stabilizer type")
    p.add_argument("--type", required=True)
    p.add_argument("--m", "--ell", dest="m", required=True)
    p.add_argument("--mode", choices=("enum", "burnside"), default="enum")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("nabla", parents=[common], help="nabla e_n in a basis, or paired with a symmetric function")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=("s", "m", "e", "h", "p"), default="s")
    p.add_argument("--pair", default=None, help='Hall-pair with e.g. "h[2,1]"')
    p.set_defaults(func=cmd_nabla)

    p = sub.add_parser("verify", parents=[common], help="check an identity over a sweep")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--type", default=None)
    p.add_argument("--ell", "--m", dest="ell", default=None)
    p.add_argument("--n", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall-clock times (output no longer byte-stable)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with _budget_env(args):
            return args.func(args, out)
    except (UsageError, BudgetError, PoleError, ValueError) as exc:
        print(f"rcatalan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
