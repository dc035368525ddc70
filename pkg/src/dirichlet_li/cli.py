"""Command-line surface: character listing, zero computation, Li coefficients
by either method, cross-method comparison, and reference-table reproduction.

Characters are addressed as q.label (`--q 3 --label 1`); with only --q the
quadratic (real primitive) character is selected.  CSV output is fixed-width
in columns n, lambda_arith, bound_arith, M, lambda_zeros, bound_zeros, N, T,
positive with 12 significant digits.  Exit status is 0 only if every
requested computation produced a finite error bound.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from . import zerosum
from .arith import choose_M, li_arith
from .characters import (DirichletCharacter, character_by_label,
                         enumerate_characters, real_primitive_character)
from .errors import DirichletLiError, InsufficientZeros
from .lfunc import (ZeroList, find_zeros, find_zeros_upper, height_for_count,
                    n_formula, read_zeros, write_zeros)
from .precision import PrecisionConfig, default_precision
from .tables import TABLES

CSV_COLUMNS = ("n", "lambda_arith", "bound_arith", "M",
               "lambda_zeros", "bound_zeros", "N", "T", "positive")

# On-the-fly zero lists are capped at this many ordinates; beyond it the
# user should compute a zero file once and pass --zeros.
_MAX_ONTHEFLY_ZEROS = 20_000


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return f"{x:.12g}"
    return str(x)


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if hi < lo or lo < 0:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}")
    return list(range(lo, hi + 1))


def _select_character(q: int, label: int | None) -> DirichletCharacter:
    if label is not None:
        return character_by_label(q, label)
    return real_primitive_character(q)


def _zero_source(args, chi: DirichletCharacter, n_max: int) -> ZeroList:
    """Zero list from --zeros, or computed up to a tail-bound-driven height."""
    if args.zeros:
        return read_zeros(args.zeros, chi_id=(chi.modulus, chi.label))
    k = args.k
    try:
        T = zerosum.choose_T0(max(n_max, 1), k, chi.modulus)
    except DirichletLiError:
        T = height_for_count(chi.modulus, _MAX_ONTHEFLY_ZEROS)
    T_cap = height_for_count(chi.modulus, _MAX_ONTHEFLY_ZEROS)
    if T > T_cap:
        print(f"note: capping zero scan at T={T_cap:.0f} "
              f"(the 10^-{k} tail target wanted T={T:.0f}); "
              "pass --zeros FILE for longer lists", file=sys.stderr)
        T = T_cap
    if chi.is_real:
        return find_zeros(chi, T)
    print(f"note: complex character {chi.modulus}.{chi.label}; using its "
          "upper-half-plane zeros with the factor-2 convention",
          file=sys.stderr)
    return find_zeros_upper(chi, T)


def _emit_rows(rows: list[dict], fmt: str, out_path: str | None) -> None:
    if fmt == "csv" or out_path:
        lines = [",".join(CSV_COLUMNS)]
        for r in rows:
            lines.append(",".join(_fmt(r.get(c)) for c in CSV_COLUMNS))
        text = "\n".join(lines) + "\n"
        if out_path:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        if fmt == "csv":
            sys.stdout.write(text)
    if fmt == "table":
        widths = {c: max(len(c), *(len(_fmt(r.get(c))) for r in rows)) if rows else len(c)
                  for c in CSV_COLUMNS}
        print("  ".join(c.rjust(widths[c]) for c in CSV_COLUMNS))
        for r in rows:
            print("  ".join(_fmt(r.get(c)).rjust(widths[c]) for c in CSV_COLUMNS))


# ----------------------------------------------------------------------------
# subcommands

def cmd_characters(args) -> int:
    print(f"{'label':>5}  {'order':>5}  {'parity':>6}  {'conductor':>9}  "
          f"{'primitive':>9}  {'real':>4}")
    for chi in enumerate_characters(args.q):
        g = math.gcd(chi.order, *(e for e in chi.exponents if e))
        char_order = chi.order // g
        print(f"{chi.label:>5}  {char_order:>5}  "
              f"{'odd' if chi.parity_a else 'even':>6}  {chi.conductor:>9}  "
              f"{'yes' if chi.is_primitive else 'no':>9}  "
              f"{'yes' if chi.is_real else 'no':>4}")
    return 0


def cmd_zeros(args) -> int:
    chi = _select_character(args.q, args.label)
    if args.tmax is not None:
        T = args.tmax
    elif args.zeros_count is not None:
        T = height_for_count(chi.modulus, args.zeros_count)
    else:
        print("error: need --tmax or --zeros-count", file=sys.stderr)
        return 2
    zl = find_zeros(chi, T) if chi.is_real else find_zeros_upper(chi, T)
    expected = n_formula(T, chi.modulus) if T >= 1 else 0.0
    print(f"found {len(zl)} zeros of L(s, chi_{chi.modulus}.{chi.label}) with "
          f"0 < gamma <= {T:g} (counting formula: {expected:.2f})")
    if len(zl) == 0:
        print("warning: no zeros below the requested height", file=sys.stderr)
    if args.out:
        write_zeros(args.out, zl)
        print(f"wrote {args.out}")
    return 0


def _li_rows(args, chi, ns, methods) -> tuple[list[dict], bool]:
    prec = PrecisionConfig(working_bits=args.prec_bits) if args.prec_bits else None
    zl = None
    if "zeros" in methods and any(n > 0 for n in ns):
        zl = _zero_source(args, chi, max(ns))
    rows = []
    all_finite = True
    for n in ns:
        row: dict = {"n": n}
        if n == 0:
            # empty power sum over zeros: lambda(0) = 0 identically
            row.update(lambda_arith=0.0 if "arith" in methods else None,
                       bound_arith=0.0 if "arith" in methods else None,
                       lambda_zeros=0.0 if "zeros" in methods else None,
                       bound_zeros=0.0 if "zeros" in methods else None,
                       positive=True)
            rows.append(row)
            continue
        pos = True
        if "arith" in methods:
            params = choose_M(n, args.nu)
            ra = li_arith(n, chi, params, prec)
            row.update(lambda_arith=ra.value, bound_arith=ra.error_bound,
                       M=params.M)
            pos = pos and ra.positive
            all_finite = all_finite and math.isfinite(ra.error_bound)
            if args.pair and ra.complex_character:
                row["lambda_pair"] = 2 * ra.value
        if "zeros" in methods:
            rz = zerosum.li_zero_sum(n, zl, prec=prec)
            row.update(lambda_zeros=rz.value, bound_zeros=rz.error_bound,
                       N=rz.params.N, T=rz.params.T)
            pos = pos and rz.positive
            all_finite = all_finite and math.isfinite(rz.error_bound)
        row["positive"] = pos
        rows.append(row)
    return rows, all_finite


def cmd_li(args) -> int:
    chi = _select_character(args.q, args.label)
    methods = ("arith", "zeros") if args.method == "both" else (args.method,)
    rows, all_finite = _li_rows(args, chi, args.n, methods)
    if args.pair and any("lambda_pair" in r for r in rows):
        for r in rows:
            if "lambda_pair" in r:
                print(f"# n={r['n']}: conjugate-paired sum "
                      f"lambda_chi + lambda_chibar = {_fmt(r['lambda_pair'])}")
    _emit_rows(rows, args.format, args.out)
    return 0 if all_finite else 1


def cmd_compare(args) -> int:
    chi = _select_character(args.q, args.label)
    prec = PrecisionConfig(working_bits=args.prec_bits) if args.prec_bits else None
    ns = [n for n in args.n if n >= 1]
    zl = _zero_source(args, chi, max(ns))
    all_ok = True
    t0 = time.perf_counter()
    arith = {}
    for n in ns:
        arith[n] = li_arith(n, chi, choose_M(n, args.nu), prec)
    t_arith = time.perf_counter() - t0
    t0 = time.perf_counter()
    zsum = {n: zerosum.li_zero_sum(n, zl, prec=prec) for n in ns}
    t_zeros = time.perf_counter() - t0
    print(f"character {chi.modulus}.{chi.label}; zero list of {len(zl)} "
          f"ordinates to T={zl.height:g}")
    print(f"timing: arithmetic {t_arith:.2f}s, zero-sum {t_zeros:.2f}s")
    print(f"{'n':>3}  {'arith':>16}  {'zero_sum':>16}  {'|delta|':>10}  "
          f"{'budget':>10}  verdict")
    for n in ns:
        ra, rz = arith[n], zsum[n]
        delta = abs(ra.value - rz.value)
        budget = ra.error_bound + rz.error_bound
        ok = delta <= budget
        all_ok = all_ok and ok
        print(f"{n:>3}  {ra.value:>16.9f}  {rz.value:>16.9f}  {delta:>10.3e}  "
              f"{budget:>10.3e}  {'PASS' if ok else 'FAIL'}")
    if not all_ok:
        print("note: the truncation estimates are the published closed forms; "
              "the arithmetic-side estimate is exceeded by the true remainder "
              "for some n (see README)")
    return 0 if all_ok else 1


_PLOT_SCRIPT = """\
#!/usr/bin/env python3
\"\"\"Plot computed Li coefficients from the CSV produced alongside.\"\"\"
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else {csv_path!r}
ns, lam = [], []
with open(path, newline="") as fh:
    for row in csv.DictReader(fh):
        if row["lambda_zeros"]:
            ns.append(int(row["n"]))
            lam.append(float(row["lambda_zeros"]))
plt.plot(ns, lam, "o-", markersize=3)
plt.xlabel("n")
plt.ylabel("lambda(n, N)")
plt.title({title!r})
plt.tight_layout()
plt.savefig({png_path!r}, dpi=150)
print("wrote", {png_path!r})
"""


def cmd_table(args) -> int:
    spec = TABLES[args.name]
    chi = spec.character()
    if args.zeros:
        zl = read_zeros(args.zeros, chi_id=(chi.modulus, chi.label))
    else:
        count = args.zeros_count or 10 ** 4
        T = height_for_count(chi.modulus, count)
        zl = find_zeros(chi, T) if chi.is_real else find_zeros_upper(chi, T)
    if len(zl) < 10 ** 4:
        raise InsufficientZeros(
            f"table reproduction needs >= 10^4 zeros, got {len(zl)}")
    print(f"table {spec.name}: character {chi.modulus}.{chi.label}")
    print(f"assumption: {spec.assumption}")
    ns = sorted(spec.rows)
    params = zerosum.PartialSumParams(N=10 ** 4, T=min(
        zl.records[10 ** 4 - 1].gamma, zl.height))
    vals = zerosum.zero_sum_values(zl, ns, N=10 ** 4)
    rows = []
    worst = 0.0
    print(f"{'n':>3}  {'published':>12}  {'computed':>12}  {'|delta|':>10}")
    for n, v in zip(ns, vals):
        ref = spec.rows[n][1]
        delta = abs(v - ref)
        worst = max(worst, delta)
        print(f"{n:>3}  {ref:>12.6f}  {v:>12.6f}  {delta:>10.2e}")
        rows.append({"n": n, "lambda_zeros": float(v),
                     "bound_zeros": zerosum.tail_bound(n, params.T, chi.modulus),
                     "N": params.N, "T": params.T, "positive": v >= 0})
    print(f"largest deviation: {worst:.2e}")
    out_csv = args.out or f"{spec.name}_table.csv"
    _emit_rows(rows, "csv" if args.format == "csv" else "none", out_csv)
    script_path = args.plot_script or f"{spec.name}_plot.py"
    with open(script_path, "w", encoding="utf-8") as fh:
        fh.write(_PLOT_SCRIPT.format(csv_path=out_csv,
                                     title=f"Li coefficients, {spec.name}",
                                     png_path=f"{spec.name}.png"))
    print(f"wrote {out_csv} and {script_path}")
    return 0


# ----------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dirichlet-li",
        description="Li coefficients of Dirichlet L-functions by the "
                    "arithmetic and zero-sum formulas")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("characters", help="list the character group mod q")
    pc.add_argument("--q", type=int, required=True)
    pc.set_defaults(func=cmd_characters)

    pz = sub.add_parser("zeros", help="compute critical-line zeros")
    pz.add_argument("--q", type=int, required=True)
    pz.add_argument("--label", type=int)
    pz.add_argument("--tmax", type=float)
    pz.add_argument("--zeros-count", type=int)
    pz.add_argument("--out")
    pz.set_defaults(func=cmd_zeros)

    def add_common(sp):
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--label", type=int)
        sp.add_argument("--n", type=_parse_n_range, required=True,
                        help="single n or range A..B")
        sp.add_argument("--nu", type=int, default=3,
                        help="arithmetic truncation target 10^-nu")
        sp.add_argument("--k", type=int, default=3,
                        help="zero-sum tail target 10^-k")
        sp.add_argument("--prec-bits", type=int,
                        default=None)
        sp.add_argument("--zeros", help="zero file (lfunc format)")
        sp.add_argument("--out")

    pl = sub.add_parser("li", help="compute Li coefficients")
    add_common(pl)
    pl.add_argument("--method", choices=("arith", "zeros", "both"),
                    default="both")
    pl.add_argument("--format", choices=("table", "csv"), default="table")
    pl.add_argument("--pair", action="store_true",
                    help="for complex characters also print the "
                         "conjugate-paired sum")
    pl.set_defaults(func=cmd_li)

    pcmp = sub.add_parser("compare", help="cross-method comparison report")
    add_common(pcmp)
    pcmp.set_defaults(func=cmd_compare)

    pt = sub.add_parser("table", help="reproduce a published table")
    pt.add_argument("--name", choices=sorted(TABLES), required=True)
    pt.add_argument("--zeros")
    pt.add_argument("--zeros-count", type=int)
    pt.add_argument("--out")
    pt.add_argument("--plot-script")
    pt.add_argument("--format", choices=("table", "csv"), default="table")
    pt.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except DirichletLiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        code = 2
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
