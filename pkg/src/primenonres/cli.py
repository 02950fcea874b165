"""primenonres command line: every computation as a subcommand writing CSV or JSON lines.

Configuration precedence is command-line flag > config file (key=value
lines, --config) > built-in default.  Data goes to stdout (or --output);
progress and errors go to stderr.  Exit status is 2 for usage errors and
1 when an invariant check fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .arithmetic import is_prime
from .characters import (
    DirichletCharacter,
    character_from_label,
    enumerate_characters,
    quadratic_characters,
)
from .charsums import BURGESS_RS, CSV_FIELDS as CHARSUM_FIELDS, burgess_bound_shape, burgess_factors, charsum_rows
from .dickman import dump_table, rho, u_k
from .lfunc import CSV_FIELDS as LFUNC_FIELDS, csv_row, l_one, sum_r_hyperbola, wolke_compare
from .residues import SurveyRecord, ThresholdKind, fund_identity_check, survey_modulus
from .smooth import SmoothCountReport, tenenbaum_compare

THREADS_ENV = "PRIMENONRES_THREADS"


class UsageError(Exception):
    pass


# -- output ----------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, np.generic):
        return v.item()
    return v


def format_lines(fields, rows, fmt: str) -> str:
    """Rows rendered as CSV (RFC 4180, CRLF) or JSON lines, without any header."""
    if fmt == "jsonl":
        return "".join(
            json.dumps({f: _jsonable(v) for f, v in zip(fields, row)}) + "\n" for row in rows
        )
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerows(rows)
    return buf.getvalue()


class Emitter:
    def __init__(self, args, command: str, fields):
        self.fmt = args.format
        self.fields = list(fields)
        self.stream = open(args.output, "w", newline="") if args.output else sys.stdout
        if not args.no_header:
            stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
            if self.fmt == "csv":
                self.stream.write(f"# primenonres {__version__} {command} {stamp}\r\n")
            else:
                meta = {"_meta": {"program": "primenonres", "version": __version__,
                                  "command": command, "generated": stamp}}
                self.stream.write(json.dumps(meta) + "\n")
        if self.fmt == "csv":
            self.stream.write(format_lines(None, [self.fields], "csv"))

    def rows(self, rows):
        self.stream.write(format_lines(self.fields, rows, self.fmt))

    def text(self, chunk: str):
        self.stream.write(chunk)

    def close(self):
        if self.stream is not sys.stdout:
            self.stream.close()
        else:
            self.stream.flush()


def progress(args, msg: str):
    if not args.quiet:
        print(msg, file=sys.stderr, flush=True)


# -- character selection ---------------------------------------------------


def pick_character(m: int, label: str | None, quadratic: bool = False) -> DirichletCharacter:
    """The character named by label, else the first quadratic (or first nontrivial) one."""
    if m < 2:
        raise UsageError("modulus must be >= 2")
    if label:
        chi = character_from_label(m, label)
        if quadratic and chi.order != 2:
            raise UsageError(f"character {chi.label} mod {m} is not quadratic")
        return chi
    if quadratic:
        qs = quadratic_characters(m)
        if not qs:
            raise UsageError(f"no quadratic character mod {m}")
        return qs[0]
    for chi in enumerate_characters(m):
        if not chi.is_principal:
            return chi
    raise UsageError(f"no nontrivial character mod {m}")


# -- surveys ---------------------------------------------------------------


@dataclass
class SurveyConfig:
    mod_start: int
    mod_end: int
    modulus_filter: str = "all"
    epsilon: float = 0.1
    k0: int = 2
    threshold_kinds: list = field(default_factory=lambda: ["T11"])
    B_override: float | None = None
    output_path: str | None = None
    format: str = "csv"
    threads: int = 1
    orders: tuple | None = None

    def validate(self):
        if not 2 <= self.mod_start <= self.mod_end:
            raise UsageError("need 2 <= mod-start <= mod-end")
        if self.epsilon <= 0:
            raise UsageError("epsilon must be positive")
        if self.k0 < 2:
            raise UsageError("k0 must be >= 2")
        if self.threads < 1:
            raise UsageError("threads must be >= 1")
        if self.modulus_filter not in ("all", "primes", "odd"):
            raise UsageError(f"unknown modulus filter {self.modulus_filter}")
        for kd in self.threshold_kinds:
            try:
                ThresholdKind(kd)
            except ValueError:
                raise UsageError(f"unknown threshold kind {kd}") from None

    def moduli(self) -> list[int]:
        ms = range(self.mod_start, self.mod_end + 1)
        if self.modulus_filter == "primes":
            return [m for m in ms if is_prime(m)]
        if self.modulus_filter == "odd":
            return [m for m in ms if m % 2]
        return list(ms)


def _survey_chunk(task) -> str:
    m, kinds, epsilon, k0, B, orders, fmt = task
    recs = survey_modulus(m, kinds, epsilon, k0, B, set(orders) if orders else None)
    return format_lines(SurveyRecord.field_names(), [r.row() for r in recs], fmt)


def run_survey(cfg: SurveyConfig, emit: Emitter, args):
    cfg.validate()
    ms = cfg.moduli()
    tasks = [(m, tuple(cfg.threshold_kinds), cfg.epsilon, cfg.k0, cfg.B_override, cfg.orders, cfg.format)
             for m in ms]
    step = max(1, len(tasks) // 10)

    def consume(chunks):
        for i, chunk in enumerate(chunks, 1):
            emit.text(chunk)
            if i % step == 0 or i == len(tasks):
                progress(args, f"survey: {i}/{len(tasks)} moduli")

    if cfg.threads == 1:
        consume(map(_survey_chunk, tasks))
    else:
        # map() yields in submission order, so output bytes do not depend on scheduling
        with ProcessPoolExecutor(max_workers=cfg.threads) as ex:
            consume(ex.map(_survey_chunk, tasks, chunksize=max(1, len(tasks) // (cfg.threads * 16))))


# -- subcommands -----------------------------------------------------------


def cmd_rho(args):
    emit = Emitter(args, "rho", ["u", "rho"])
    if args.table:
        emit.rows(dump_table(args.step, args.max_u, args.tol))
    else:
        if args.u is None:
            raise UsageError("give --u or --table")
        emit.rows([[u, rho(u, args.tol)] for u in args.u])
    emit.close()


def cmd_uk(args):
    emit = Emitter(args, "uk", ["k", "u_k", "abs_residual"])
    rows = []
    for k in args.k:
        u = u_k(k, args.tol)
        rows.append([k, u, abs(rho(u, args.tol) - 1 / k)])
    emit.rows(rows)
    emit.close()


def _smooth(args, q):
    emit = Emitter(args, args.command, SmoothCountReport.CSV_FIELDS)
    emit.rows([tenenbaum_compare(args.x, y, q).row() for y in args.y])
    emit.close()


def cmd_psi(args):
    _smooth(args, 1)


def cmd_psiq(args):
    _smooth(args, args.q)


def _grid(args, m):
    if args.x:
        return args.x
    top = args.x_max if args.x_max is not None else m
    pts = args.points
    return sorted({max(1, round(top * (i + 1) / pts)) for i in range(pts)})


def cmd_charsum(args):
    chi = pick_character(args.m, args.chi)
    emit = Emitter(args, "charsum", CHARSUM_FIELDS)
    emit.rows(charsum_rows(chi, _grid(args, args.m), args.eps))
    emit.close()


def cmd_burgess(args):
    fields = ["m", "k", "M", "Q", "R", "x", "eps"] + [f"burgess_r{r}" for r in BURGESS_RS]
    emit = Emitter(args, "burgess", fields)
    bf = burgess_factors(args.m, args.k)
    rows = []
    for x in args.x or [args.m]:
        rows.append([args.m, args.k, bf.M, bf.Q, bf.R, x, args.eps]
                    + [burgess_bound_shape(args.m, args.k, r, args.eps, x) for r in BURGESS_RS])
    emit.rows(rows)
    emit.close()


def _survey_config(args, default_kinds) -> SurveyConfig:
    return SurveyConfig(
        mod_start=args.mod_start, mod_end=args.mod_end, modulus_filter=args.modulus_filter,
        epsilon=args.epsilon, k0=args.k0, threshold_kinds=args.kinds or default_kinds,
        B_override=args.B, output_path=args.output, format=args.format, threads=args.threads,
        orders=tuple(sorted(args.order)) if args.order else None,
    )


def cmd_nonres_survey(args):
    cfg = _survey_config(args, ["T11"])
    cfg.validate()
    emit = Emitter(args, "nonres-survey", SurveyRecord.field_names())
    run_survey(cfg, emit, args)
    emit.close()


def cmd_residue_survey(args):
    cfg = _survey_config(args, ["T15"])
    cfg.validate()
    emit = Emitter(args, "residue-survey", SurveyRecord.field_names())
    run_survey(cfg, emit, args)
    emit.close()


def cmd_hyperbola(args):
    chi = pick_character(args.m, args.chi, quadratic=True)
    emit = Emitter(args, "hyperbola", LFUNC_FIELDS)
    rows = []
    for x in args.x:
        b = sum_r_hyperbola(chi, x, args.upsilon)
        if not b.ok:
            raise AssertionError(f"hyperbola split {b.total} != direct sum {b.direct_total} at x={x}")
        rows.append(csv_row(args.m, x, args.upsilon, breakdown=b))
    emit.rows(rows)
    emit.close()


def cmd_l1(args):
    chi = pick_character(args.m, args.chi, quadratic=True)
    emit = Emitter(args, "l1", LFUNC_FIELDS)
    T = args.T if args.T is not None else max(args.m, 10**6)
    emit.rows([csv_row(args.m, l1=l_one(chi, T))])
    emit.close()


def cmd_wolke(args):
    chi = pick_character(args.m, args.chi, quadratic=True)
    emit = Emitter(args, "wolke", LFUNC_FIELDS)
    T = args.T if args.T is not None else max(args.m, 10**6)
    emit.rows([csv_row(args.m, l1=l_one(chi, T), wolke=wolke_compare(chi, T))])
    emit.close()


def cmd_identity_check(args):
    if args.all_chars:
        chars = [c for c in enumerate_characters(args.m) if not c.is_principal]
    else:
        chars = [pick_character(args.m, args.chi)]
    out = open(args.output, "w") if args.output else sys.stdout
    failed = False
    for chi in chars:
        res = fund_identity_check(chi, args.x, args.y)
        if res.ok:
            out.write(f"OK lhs=rhs={res.rhs}\n")
        else:
            failed = True
            out.write(f"FAIL chi={chi.label} lhs={res.lhs!r} rhs={res.rhs}\n")
    if out is not sys.stdout:
        out.close()
    if failed:
        raise AssertionError("identity check failed")


# -- parser ----------------------------------------------------------------


def _common(p):
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--output", "-o", default=None, help="write data here instead of stdout")
    p.add_argument("--no-header", action="store_true", help="omit the timestamp header line")
    p.add_argument("--config", default=None, help="file of key=value defaults")
    p.add_argument("--threads", type=int, default=None, help=f"worker processes (default ${THREADS_ENV} or 1)")
    p.add_argument("--quiet", "-q", action="store_true", help="no progress on stderr")


def _survey_flags(p):
    p.add_argument("--mod-start", type=int, default=3)
    p.add_argument("--mod-end", type=int, default=1000)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--filter", dest="modulus_filter", choices=["all", "primes", "odd"], default="all")
    g.add_argument("--primes", dest="modulus_filter", action="store_const", const="primes")
    g.add_argument("--odd", dest="modulus_filter", action="store_const", const="odd")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--k0", type=int, default=2)
    p.add_argument("--kinds", type=_kinds, default=None, help="comma-separated threshold kinds")
    p.add_argument("--B", type=float, default=None, help="override the counting bound")
    p.add_argument("--order", type=int, action="append", default=None, help="keep characters of this order")


def _num(text: str):
    """Float argument, kept as int when integral (so 1e6 prints as 1000000)."""
    v = float(text)
    return int(v) if v.is_integer() and abs(v) < 2**63 else v


def _kinds(text: str) -> list[str]:
    return [t.strip().upper() for t in text.split(",") if t.strip()]


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(prog="primenonres", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.set_defaults(func=func)
        subs[name] = p
        return p

    p = add("rho", cmd_rho, "Dickman rho at points, or a table")
    p.add_argument("--u", type=float, nargs="+")
    p.add_argument("--table", action="store_true")
    p.add_argument("--step", type=float, default=2.0**-6)
    p.add_argument("--max-u", type=float, default=10.0)
    p.add_argument("--tol", type=float, default=1e-12)

    p = add("uk", cmd_uk, "roots u_k of rho(u) = 1/k")
    p.add_argument("--k", type=float, nargs="+", required=True)
    p.add_argument("--tol", type=float, default=1e-12)

    p = add("psi", cmd_psi, "exact Psi(x, y) against x rho(u)")
    p.add_argument("--x", type=_num, required=True)
    p.add_argument("--y", type=_num, nargs="+", required=True)

    p = add("psiq", cmd_psiq, "exact Psi_q(x, y) against the coprimality-corrected predictions")
    p.add_argument("--x", type=_num, required=True)
    p.add_argument("--y", type=_num, nargs="+", required=True)
    p.add_argument("--q", type=int, required=True)

    p = add("charsum", cmd_charsum, "partial character sums with Polya-Vinogradov and Burgess ratios")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--chi", default=None, help="exponent vector, e.g. [1,0]")
    p.add_argument("--x", type=int, nargs="+")
    p.add_argument("--x-max", type=int, default=None)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--eps", type=float, default=0.01)

    p = add("burgess", cmd_burgess, "Burgess bound shapes and the R_k(m) factor")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=_num, nargs="+")
    p.add_argument("--eps", type=float, default=0.01)

    p = add("nonres-survey", cmd_nonres_survey, "prime nonresidue counts against theorem thresholds")
    _survey_flags(p)
    p = add("residue-survey", cmd_residue_survey, "prime residue counts (default threshold T15)")
    _survey_flags(p)

    p = add("hyperbola", cmd_hyperbola, "three-term split of sum r(n) for a quadratic character")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--chi", default=None)
    p.add_argument("--x", type=_num, nargs="+", required=True)
    p.add_argument("--upsilon", type=float, default=0.5)

    for name, func, help_ in (("l1", cmd_l1, "L(1, chi) with a tail bound"),
                              ("wolke", cmd_wolke, "split-prime reciprocal sum against log L(1, chi)")):
        p = add(name, func, help_)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--chi", default=None)
        p.add_argument("--T", type=float, default=None)

    p = add("identity-check", cmd_identity_check, "exact check of the power-sum indicator identity")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=_num, required=True)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--chi", default=None)
    p.add_argument("--all-chars", action="store_true")
    return parser, subs


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off", ""}


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _apply_config(sub: argparse.ArgumentParser, cfg: dict[str, str]):
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in cfg.items():
        act = actions.get(key)
        if act is None or key in ("help", "config"):
            raise UsageError(f"config key {key!r} is not an option of this command")
        if isinstance(act, argparse._StoreConstAction) and act.const is True:
            if value.lower() not in _TRUE | _FALSE:
                raise UsageError(f"config key {key!r} needs a boolean")
            defaults[key] = value.lower() in _TRUE
        elif act.nargs in ("+", "*") or isinstance(act, argparse._AppendAction):
            conv = act.type or str
            defaults[key] = [conv(v) for v in value.replace(",", " ").split()]
        else:
            # string defaults go through the option's type conversion
            defaults[key] = value
    sub.set_defaults(**defaults)
    for key in defaults:
        actions[key].required = False


def parse_args(argv=None) -> argparse.Namespace:
    parser, subs = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    # the config must be applied before the real parse so it can fill required options
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    command = next((a for a in argv if not a.startswith("-")), None)
    if known.config and command in subs:
        try:
            _apply_config(subs[command], read_config(known.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    args = parser.parse_args(argv)
    if args.threads is None:
        env = os.environ.get(THREADS_ENV, "1")
        try:
            args.threads = int(env)
        except ValueError:
            raise UsageError(f"${THREADS_ENV} must be an integer, got {env!r}") from None
    if args.threads < 1:
        raise UsageError("threads must be >= 1")
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(f"primenonres: error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"primenonres: invariant failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"primenonres: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
