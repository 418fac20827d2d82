"""Command-line front end.

Subcommands::

    fit          fit one or more links to a CSV and print coefficients
    structural   nested R x S probit-on-logit slope experiment
    predictive   paired test-error replication study
    concordance  sign-disagreement grid between links
    ic           AIC/BIC replication study
    gen          write a synthetic dataset CSV
    cdfgrid      write plot-ready CDF/density curves

Every subcommand is a pure function of its arguments, its seed and its
input files: reruns produce byte-identical output, including under
different ``--jobs`` values.  CSV input needs a header row, "."-decimal
numeric cells and a 0/1 response column (``--response``, default "y");
missing values abort ingestion.  Exit status is 0 when the computation
completed with at most ``--max-invalid-frac`` failed replicates, 3 when
more replicates failed, and 1 on any error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from .concord import ConcordanceMatrix, SplitPlan, sign_disagreement_grid
from .equiv import (
    Equispaced,
    Gaussian,
    GenConfig,
    STAT_ORDER,
    SummaryStats,
    generate_dataset,
    ic_compare,
    predictive_sim,
    structural_sim,
)
from .errors import ArgumentError, LinkEquivError
from .fit import Dataset, ModelSpec, fit_mle
from .links import LinkKind, cdf, density

ALL_LINKS = tuple(LinkKind)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TOO_MANY_INVALID = 3


# ---------------------------------------------------------------------------
# CSV plumbing
# ---------------------------------------------------------------------------


def _full(x: float) -> str:
    """Full-precision, round-trippable decimal text; NaN becomes empty."""
    if isinstance(x, float) and math.isnan(x):
        return ""
    return repr(float(x))


def read_dataset_csv(path: str, response: str) -> Dataset:
    """Load a dataset from a headed CSV file.

    All non-response columns become predictors in file order.  Cells
    must parse as numbers; the response column must be 0/1.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ArgumentError(f"{path}: empty file (header row required)") from None
        header = [h.strip() for h in header]
        if response not in header:
            raise ArgumentError(f"{path}: no column named {response!r}")
        y_col = header.index(response)
        names = tuple(h for i, h in enumerate(header) if i != y_col)
        rows = []
        ys = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ArgumentError(f"{path}:{lineno}: expected {len(header)} cells")
            values = []
            for cell, name in zip(row, header):
                text = cell.strip()
                if text == "":
                    raise ArgumentError(
                        f"{path}:{lineno}: missing value in column {name!r}"
                    )
                try:
                    values.append(float(text))
                except ValueError:
                    raise ArgumentError(
                        f"{path}:{lineno}: non-numeric cell {text!r} in column {name!r}"
                    ) from None
            ys.append(values.pop(y_col))
            rows.append(values)
    if not rows:
        raise ArgumentError(f"{path}: no data rows")
    y = np.asarray(ys)
    if not np.all((y == 0.0) | (y == 1.0)):
        raise ArgumentError(f"{path}: response column {response!r} must be 0/1")
    return Dataset(np.asarray(rows, dtype=float), y, names)


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# printing helpers
# ---------------------------------------------------------------------------


def _print_table(headers: list[str], rows: list[list[str]]) -> None:
    widths = [
        max(len(str(headers[i])), *(len(r[i]) for r in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    print("  ".join(str(h).ljust(widths[i]) for i, h in enumerate(headers)).rstrip())
    for row in rows:
        print("  ".join(row[i].ljust(widths[i]) for i in range(len(row))).rstrip())


def _stats_table(per_link: dict[LinkKind, SummaryStats], decimals: int) -> None:
    links = list(per_link)
    headers = ["statistic"] + [str(link) for link in links]
    rows = []
    for stat in STAT_ORDER:
        row = [stat]
        for link in links:
            value = getattr(per_link[link], stat)
            row.append("" if math.isnan(value) else f"{value:.{decimals}f}")
        rows.append(row)
    _print_table(headers, rows)


def _parse_links(text: str) -> tuple[LinkKind, ...]:
    if text.strip().lower() == "all":
        return ALL_LINKS
    links = []
    for part in text.split(","):
        name = part.strip().lower()
        try:
            links.append(LinkKind(name))
        except ValueError:
            raise ArgumentError(
                f"unknown link {name!r}; choose from "
                + ", ".join(k.value for k in LinkKind)
            ) from None
    if not links:
        raise ArgumentError("no links given")
    return tuple(links)


def _invalid_exit(n_failed: int, total: int, max_frac: float) -> int:
    if total > 0 and n_failed > max_frac * total:
        print(
            f"warning: {n_failed} of {total} replicates failed "
            f"(threshold {max_frac:.0%})",
            file=sys.stderr,
        )
        return EXIT_TOO_MANY_INVALID
    return EXIT_OK


def _gen_config(args) -> GenConfig:
    if args.design == "equispaced":
        design = Equispaced(args.interval[0], args.interval[1])
    else:
        design = Gaussian(args.mean, args.sd)
    return GenConfig(
        design=design,
        truth_link=LinkKind(args.truth_link),
        beta0=args.beta0,
        beta1=args.beta1,
        n=args.n,
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_fit(args) -> int:
    data = read_dataset_csv(args.csv, args.response)
    links = _parse_links(args.links)
    results = {}
    for link in links:
        spec = ModelSpec(link, intercept=not args.no_intercept)
        results[link] = (spec, fit_mle(spec, data))
    coef_names = results[links[0]][0].coefficient_names(data)
    headers = ["coefficient"] + [str(link) for link in links]
    ratio = len(links) == 2
    if ratio:
        headers.append(f"ratio {links[0]}/{links[1]}")
    rows = []
    for i, name in enumerate(coef_names):
        row = [name] + [f"{results[link][1].coefficients[i]:.4f}" for link in links]
        if ratio:
            top = results[links[0]][1].coefficients[i]
            bottom = results[links[1]][1].coefficients[i]
            row.append(f"{top / bottom:.4f}" if bottom != 0.0 else "")
        rows.append(row)
    _print_table(headers, rows)
    print()
    summary_rows = [
        [label] + [f"{getattr(results[link][1], label):.4f}" for link in links]
        for label in ("loglik", "aic", "bic")
    ]
    _print_table(["measure"] + [str(link) for link in links], summary_rows)
    for link in links:
        fitted = results[link][1]
        for warning in fitted.warnings:
            print(f"note: {link}: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_structural(args) -> int:
    cfg = _gen_config(args)
    report = structural_sim(cfg, args.reps, args.inner, args.seed, jobs=args.jobs)
    rows = [
        [
            str(r),
            _full(report.theta_hats[r]),
            _full(report.tau_hats[r]),
            _full(report.rho_hats[r]),
            _full(report.r_squared[r]),
            str(int(report.dropped[r])),
        ]
        for r in range(args.reps)
    ]
    _write_csv(args.out, ["replicate", "theta", "tau", "rho", "r_squared", "dropped"], rows)
    invalid = int(np.sum(~np.isfinite(report.theta_hats)))
    print(f"structural run: R={args.reps} S={args.inner} n={cfg.n} "
          f"truth={cfg.truth_link} seed={args.seed}")
    print(f"wrote {args.out}; invalid replicates: {invalid}")
    if report.theta_summary is not None:
        valid_r2 = report.r_squared[np.isfinite(report.r_squared)]
        print(f"median r_squared: {np.median(valid_r2):.4f}")
        print("theta summary:")
        for stat in STAT_ORDER:
            value = getattr(report.theta_summary, stat)
            text = "" if math.isnan(value) else f"{value:.4f}"
            print(f"  {stat:<9} {text}")
    return _invalid_exit(invalid, args.reps, args.max_invalid_frac)


def cmd_predictive(args) -> int:
    if args.csv is not None:
        data = read_dataset_csv(args.csv, args.response)
    else:
        data = generate_dataset(_gen_config(args), args.seed, 0)
    links = _parse_links(args.links)
    plan = SplitPlan(
        replications=args.reps, seed=args.seed, train_fraction=args.train_frac
    )
    reports = predictive_sim(data, links, plan, jobs=args.jobs)
    header = ["replicate"] + [str(link) for link in links]
    rows = [
        [str(r)] + [_full(reports[link].values[r]) for link in links]
        for r in range(args.reps)
    ]
    _write_csv(args.out, header, rows)
    print(f"test errors over R={args.reps} splits "
          f"(train fraction {args.train_frac:g}, seed {args.seed}):")
    _stats_table({link: reports[link].stats for link in links}, decimals=2)
    n_failed = max(reports[link].n_failed for link in links)
    print(f"wrote {args.out}; worst-link failed replicates: {n_failed}")
    return _invalid_exit(n_failed, args.reps, args.max_invalid_frac)


def cmd_concordance(args) -> int:
    links = _parse_links(args.links)
    matrix = sign_disagreement_grid(
        links, args.interval[0], args.interval[1], args.s,
        mode=args.mode, seed=args.seed,
    )
    rows = []
    for i, li in enumerate(links):
        for j, lj in enumerate(links):
            if j < i:
                continue
            rows.append([args.mode, str(li), str(lj), _full(matrix.rates[i, j])])
    _write_csv(args.out, ["mode", "link_a", "link_b", "rate"], rows)
    print(f"sign disagreement over {args.s} {args.mode} points of "
          f"[{args.interval[0]:g}, {args.interval[1]:g}]"
          + (f" (seed {args.seed})" if args.mode == "uniform_random" else "") + ":")
    _print_matrix(matrix)
    print(f"wrote {args.out}")
    return EXIT_OK


def _print_matrix(matrix: ConcordanceMatrix) -> None:
    headers = [""] + [str(link) for link in matrix.links]
    rows = [
        [str(li)] + [f"{matrix.rates[i, j]:.4f}" for j in range(len(matrix.links))]
        for i, li in enumerate(matrix.links)
    ]
    _print_table(headers, rows)


def cmd_ic(args) -> int:
    data = read_dataset_csv(args.csv, args.response)
    links = _parse_links(args.links)
    plan = SplitPlan(
        replications=args.reps, seed=args.seed, train_fraction=args.train_frac
    )
    reports = ic_compare(data, links, plan, jobs=args.jobs)
    header = ["replicate"]
    for link in links:
        header += [f"{link}_aic", f"{link}_bic"]
    rows = []
    for r in range(args.reps):
        row = [str(r)]
        for link in links:
            row += [_full(reports[link].aic[r]), _full(reports[link].bic[r])]
        rows.append(row)
    _write_csv(args.out, header, rows)
    print(f"AIC over R={args.reps} training fits (seed {args.seed}):")
    _stats_table({link: reports[link].aic_stats for link in links}, decimals=2)
    print("BIC:")
    _stats_table({link: reports[link].bic_stats for link in links}, decimals=2)
    n_failed = max(reports[link].n_failed for link in links)
    print(f"wrote {args.out}; worst-link failed replicates: {n_failed}")
    return _invalid_exit(n_failed, args.reps, args.max_invalid_frac)


def cmd_gen(args) -> int:
    cfg = _gen_config(args)
    data = generate_dataset(cfg, args.seed, 0)
    rows = [
        [_full(data.predictors[i, 0]), str(int(data.response[i]))]
        for i in range(data.n)
    ]
    _write_csv(args.out, ["x", "y"], rows)
    print(f"wrote {args.out}: n={cfg.n}, truth={cfg.truth_link}, "
          f"beta0={cfg.beta0:g}, beta1={cfg.beta1:g}, seed={args.seed}")
    return EXIT_OK


def cmd_cdfgrid(args) -> int:
    links = _parse_links(args.links)
    a, b = args.interval
    if not a < b:
        raise ArgumentError("interval must satisfy a < b")
    if args.s < 2:
        raise ArgumentError("need at least 2 grid points")
    grid = np.linspace(a, b, args.s)
    header = ["u"]
    columns = [grid]
    for link in links:
        header += [f"{link}_density", f"{link}_cdf"]
        columns.append(density(link, grid))
        columns.append(cdf(link, grid))
    rows = [[_full(col[i]) for col in columns] for i in range(args.s)]
    _write_csv(args.out, header, rows)
    print(f"wrote {args.out}: {args.s} points of [{a:g}, {b:g}] "
          f"for {', '.join(str(k) for k in links)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_generator_flags(p, *, design, interval, mean, sd, truth, beta0, beta1, n):
    p.add_argument("--design", choices=["equispaced", "gaussian"], default=design,
                   help="x design (default %(default)s)")
    p.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"),
                   default=list(interval), help="equispaced bounds (default %(default)s)")
    p.add_argument("--mean", type=float, default=mean,
                   help="gaussian design mean (default %(default)s)")
    p.add_argument("--sd", type=float, default=sd,
                   help="gaussian design sd (default %(default)s)")
    p.add_argument("--truth-link", default=truth,
                   choices=[k.value for k in LinkKind],
                   help="data-generating link (default %(default)s)")
    p.add_argument("--beta0", type=float, default=beta0,
                   help="true intercept (default %(default)s)")
    p.add_argument("--beta1", type=float, default=beta1,
                   help="true slope (default %(default)s)")
    p.add_argument("--n", type=int, default=n,
                   help="sample size (default %(default)s)")


def _add_replication_flags(p, *, reps, out):
    p.add_argument("--reps", "-R", type=int, default=reps,
                   help="number of replications (default %(default)s)")
    p.add_argument("--seed", type=int, default=0,
                   help="stream seed (default %(default)s)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes (default %(default)s)")
    p.add_argument("--max-invalid-frac", type=float, default=0.01,
                   help="failed-replicate fraction tolerated before a "
                        "nonzero exit (default %(default)s)")
    p.add_argument("--out", default=out,
                   help="output CSV path (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkequiv",
        description="Binary-regression link functions: fitting, closed-form "
                    "estimators and equivalence experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit links to a CSV dataset")
    p.add_argument("csv", help="input CSV with a header row")
    p.add_argument("--response", default="y", help="response column (default %(default)s)")
    p.add_argument("--links", default="probit,logit",
                   help="comma list or 'all' (default %(default)s)")
    p.add_argument("--no-intercept", action="store_true", help="drop the intercept")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("structural", help="nested R x S slope experiment")
    _add_generator_flags(p, design="equispaced", interval=(0.0, 1.0), mean=0.0,
                         sd=1.0, truth="cauchit", beta0=0.0, beta1=0.5, n=199)
    p.add_argument("--inner", "-S", type=int, default=199,
                   help="datasets per replicate (default %(default)s)")
    _add_replication_flags(p, reps=99, out="theta.csv")
    p.set_defaults(handler=cmd_structural)

    p = sub.add_parser("predictive", help="paired test-error study")
    p.add_argument("--csv", default=None, help="input CSV; omit to generate data")
    p.add_argument("--response", default="y", help="response column (default %(default)s)")
    p.add_argument("--links", default="all", help="comma list or 'all' (default)")
    p.add_argument("--train-frac", type=float, default=2.0 / 3.0,
                   help="training fraction (default 2/3)")
    _add_generator_flags(p, design="gaussian", interval=(0.0, 1.0), mean=0.0,
                         sd=2.0, truth="cauchit", beta0=1.0, beta1=2.0, n=500)
    _add_replication_flags(p, reps=1000, out="te.csv")
    p.set_defaults(handler=cmd_predictive)

    p = sub.add_parser("concordance", help="sign-disagreement grid")
    p.add_argument("--links", default="all", help="comma list or 'all' (default)")
    p.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"),
                   default=[-15.0, 15.0], help="grid bounds (default %(default)s)")
    p.add_argument("--s", type=int, default=10000,
                   help="number of points (default %(default)s)")
    p.add_argument("--mode", choices=["equispaced", "uniform_random"],
                   default="equispaced", help="point layout (default %(default)s)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for uniform_random mode (default %(default)s)")
    p.add_argument("--out", default="concordance.csv",
                   help="output CSV path (default %(default)s)")
    p.set_defaults(handler=cmd_concordance)

    p = sub.add_parser("ic", help="AIC/BIC replication study")
    p.add_argument("csv", help="input CSV with a header row")
    p.add_argument("--response", default="y", help="response column (default %(default)s)")
    p.add_argument("--links", default="all", help="comma list or 'all' (default)")
    p.add_argument("--train-frac", type=float, default=2.0 / 3.0,
                   help="training fraction (default 2/3)")
    _add_replication_flags(p, reps=1000, out="ic.csv")
    p.set_defaults(handler=cmd_ic)

    p = sub.add_parser("gen", help="write a synthetic dataset CSV")
    _add_generator_flags(p, design="equispaced", interval=(0.0, 1.0), mean=0.0,
                         sd=1.0, truth="cauchit", beta0=0.0, beta1=0.5, n=199)
    p.add_argument("--seed", type=int, default=0,
                   help="stream seed (default %(default)s)")
    p.add_argument("--out", default="dataset.csv",
                   help="output CSV path (default %(default)s)")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("cdfgrid", help="write CDF/density plot data")
    p.add_argument("--links", default="all", help="comma list or 'all' (default)")
    p.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"),
                   default=[-5.0, 5.0], help="grid bounds (default %(default)s)")
    p.add_argument("--s", type=int, default=1001,
                   help="number of grid points (default %(default)s)")
    p.add_argument("--out", default="cdfgrid.csv",
                   help="output CSV path (default %(default)s)")
    p.set_defaults(handler=cmd_cdfgrid)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except LinkEquivError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
