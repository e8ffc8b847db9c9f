"""Command-line front end; every command writes CSV."""

import argparse
import csv
from dataclasses import dataclass, field
import io
import sys

from .basis import BasisKind, Interval
from .catalog import KERNELS
from .errors import (CLOSED_FORM_OF, approximation_error, closed_form_error,
                     exact_error_theorem3, identity_partial_sum, identity_residual)
from .kernel_coeffs import WeightedKernel, build_table
from .mc_oracle import grid_allowance, ms_error_vs_truth

TABLE_Q = (1, 10, 100, 1000, 10000)
# (table id, closed form or identity, factor)
TABLES = (("table1", "e101_100", 1.0), ("table2", "e101_101", 4.0), ("table2", "e101_102", 4.0),
          ("table3", "edaug", 4.0), ("table4", "pi4_48", None), ("table5", "ninepi4_80", None))
MC_DEFAULTS = (("I00", (1, 2), 10), ("I000", (1, 2, 3), 1), ("I10", (1, 2), 10))
SEARCH_CAP = {1: 1024, 2: 256, 3: 64}


@dataclass
class RunConfig:
    command: str
    basis: list = field(default_factory=lambda: [BasisKind.LEGENDRE, BasisKind.TRIG])
    q: list = field(default_factory=list)
    seed: int = 20240601
    trials: int = 10_000
    grid_N: int = 10_000
    interval: Interval = Interval(0.0, 1.0)
    out: str = "-"
    threads: int = 1
    kernel: list = field(default_factory=list)
    target: float = 0.01

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")


def fmt(x):
    """Shortest round-trip decimal."""
    return repr(float(x))


def table_style(x):
    return f"{x:.4f}" if abs(x) >= 1e-3 else f"{x:.4e}"


def cmd_tables(cfg):
    rows = [("table_id", "formula", "q", "value", "rounded")]
    for q in cfg.q or TABLE_Q:
        for tid, name, factor in TABLES:
            if factor is None:
                value = identity_residual(name, q)
            else:
                value = factor * closed_form_error(name, Interval(0.0, 1.0), q)
            rows.append((tid, name, q, fmt(value), table_style(value)))
    return rows


def cmd_identities(cfg):
    rows = [("identity", "q", "partial_sum", "residual")]
    for q in cfg.q or TABLE_Q:
        for name in ("pi4_48", "ninepi4_80"):
            rows.append((name, q, fmt(identity_partial_sum(name, q)), fmt(identity_residual(name, q))))
    return rows


def _parse_kernel(text):
    if text in KERNELS:
        return text, KERNELS[text]
    exps = tuple(int(e) for e in text.split(","))
    return "I" + "".join(map(str, exps)), exps


def cmd_coeffs(cfg):
    name, exps = _parse_kernel(cfg.kernel[0] if cfg.kernel else "I00")
    orders = cfg.q[0] if cfg.q else 4
    buf = io.StringIO()
    for basis in cfg.basis:
        build_table(basis, WeightedKernel(exps, cfg.interval), orders).to_csv(buf)
    return [row.split(",") for row in buf.getvalue().splitlines()]


def _box_error(basis, exps, p, iv):
    k = len(exps)
    table = build_table(basis, WeightedKernel(exps, iv), p)
    return exact_error_theorem3(table, tuple(range(1, k + 1)))


def _first_below(err, target, cap):
    """Smallest n in 0..cap with err(n) <= target, for err nonincreasing in n.

    Doubling then bisection, so the expensive large-n cases are only reached
    when needed.  Returns (None, err(last tried)) if the cap is not enough.
    """
    lo, hi, e = -1, 0, err(0)
    while e > target:
        if hi == cap:
            return None, e
        lo, hi = hi, min(cap, max(1, 2 * hi))
        e = err(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        em = err(mid)
        if em <= target:
            hi, e = mid, em
        else:
            lo = mid
    return hi, e


def cmd_compare(cfg):
    """Smallest Legendre p / trigonometric q meeting an absolute error target."""
    rows = [("basis", "kernel", "p_min", "error")]
    iv = cfg.interval
    names = cfg.kernel or ["I1", "I2", "I00", "I10", "I01", "I000"]
    for text in names:
        name, exps = _parse_kernel(text)
        k = len(exps)
        target = cfg.target * iv.length ** (k + 2 * sum(exps))
        cap = SEARCH_CAP[min(k, 3)]
        for basis in cfg.basis:
            if basis is BasisKind.LEGENDRE:
                err = lambda p: _box_error(basis, exps, p, iv)
            elif k >= 2 and name in CLOSED_FORM_OF:
                err = lambda q: approximation_error(name, q, iv)
            else:
                # Gaussian single integrals: the tail variables make the printed
                # forms exact, so compare plain truncation at p = 2q instead.
                err = lambda q: _box_error(basis, exps, 2 * q, iv)
            n, e = _first_below(err, target, cap)
            rows.append((basis.value, name, "" if n is None else n, fmt(e)))
    return rows


def cmd_mc_verify(cfg):
    rows = [("integral_id", "basis", "q", "mc_error", "stderr", "closed_form", "pass")]
    iv = cfg.interval
    for name, idx, q0 in MC_DEFAULTS:
        for q in cfg.q or [q0]:
            est = ms_error_vs_truth(name, idx, q, cfg.trials, cfg.grid_N, cfg.seed, iv,
                                    threads=cfg.threads)
            closed = closed_form_error(CLOSED_FORM_OF[name], iv, q)
            ok = abs(est.error - closed) <= 4 * est.stderr + grid_allowance(len(idx), iv, cfg.grid_N)
            rows.append((name, "trig", q, fmt(est.error), fmt(est.stderr), fmt(closed),
                         str(ok).lower()))
    return rows


COMMANDS = {"tables": cmd_tables, "coeffs": cmd_coeffs, "compare": cmd_compare,
            "mc-verify": cmd_mc_verify, "identities": cmd_identities}


def _int_list(text):
    return [int(v) for v in text.split(",") if v]


def build_parser():
    p = argparse.ArgumentParser(prog="stochexp", description=__doc__)
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--basis", choices=["legendre", "trig"], action="append",
                   help="basis (repeatable; default both)")
    p.add_argument("--q", type=_int_list, action="extend", default=[],
                   help="truncation orders, comma separated")
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--grid", type=int, default=10_000, help="grid steps N of the MC oracle")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.add_argument("--threads", type=int, default=1, help="worker threads; 1 is deterministic")
    p.add_argument("--kernel", action="append", default=[],
                   help="catalog name (I1, I00, ...) or weight exponents such as 1,0")
    p.add_argument("--target", type=float, default=0.01,
                   help="compare: error target relative to (T-t)^(k + 2 sum l)")
    return p


def config_from_args(argv=None):
    a = build_parser().parse_args(argv)
    basis = [BasisKind(b) for b in a.basis] if a.basis else [BasisKind.LEGENDRE, BasisKind.TRIG]
    return RunConfig(a.command, basis, a.q, a.seed, a.trials, a.grid, Interval(a.t0, a.t1),
                     a.out, a.threads, a.kernel, a.target)


def write_rows(rows, out):
    if out == "-":
        csv.writer(sys.stdout, lineterminator="\n").writerows(rows)
        return
    with open(out, "w", newline="", encoding="utf-8") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)


def main(argv=None):
    cfg = config_from_args(argv)
    write_rows(COMMANDS[cfg.command](cfg), cfg.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
