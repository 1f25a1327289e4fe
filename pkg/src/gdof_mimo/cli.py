"""Command-line front end: point queries, region sweeps and verification studies.

Exit codes: 0 ok, 2 domain error, 3 I/O error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channel_model import SystemConfig, derive_seed, generate_channel
from .closed_form import Regime, gdof, regime_of
from .deterministic_model import build_shift_channel, check_assumptions, det_sym_capacity, dump_model
from .errors import BoundaryError, DomainError, GdofError, NumericalError
from .high_snr import PrelogSpec, estimate_slope, numeric_logdet, predicted_prelog, random_matrices
from .hk_achievable import achievable_sym_rate
from .outer_bounds import outer_proxies

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4

DEFAULT_RHOS = {
    "sweep": "1e6,1e9",
    "achievable": "1e6,1e9",
    "outer": "1e8,1e10",
    "gap": "1e4,1e6,1e8",
    "verify-lemma": "1e8,1e10",
}


def fmt(x) -> str:
    """CSV cell: floats with 10 significant digits, everything else via ``str``."""
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.10g}"
    return str(x)


def _parse_rhos(text: str) -> list[float]:
    try:
        rhos = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise DomainError(f"cannot parse --rhos {text!r}") from exc
    if len(rhos) < 2 or any(r <= 1 for r in rhos):
        raise DomainError("--rhos needs at least two values > 1")
    return sorted(rhos)


def write_csv(path: str | None, header: Sequence[str], rows: Sequence[Sequence], args, command: str) -> None:
    """Write rows to ``path``; a timestamp comment is added unless ``--reproducible``."""
    if not path:
        return
    buf = io.StringIO()
    if not args.reproducible:
        stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        buf.write(f"# gdof-mimo {command} generated {stamp}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) for x in r])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def _config(args) -> SystemConfig:
    return SystemConfig(args.m, args.n, args.a1, args.a2)


def _trial_seeds(seed: int, trials: int) -> list[int]:
    if trials < 1:
        raise DomainError("--trials must be >= 1")
    return [seed if t == 0 else derive_seed(seed, t) for t in range(trials)]


def _slope_of(values: Sequence[float], rhos: Sequence[float]) -> float:
    lookup = dict(zip(rhos, values))
    return estimate_slope(lambda r: lookup[r], rhos)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_gdof(args) -> int:
    c = _config(args)
    r = gdof(c)
    print(f"GDOF {r.value:.10g} (regime {r.regime}, active term {r.active_term}, face {r.face_id})")
    header = ["M", "N", "alpha1", "alpha2", "regime", "gdof", "active_term", "face_id"]
    row = [c.M, c.N, c.alpha1, c.alpha2, r.regime, r.value, r.active_term, r.face_id]
    print(",".join(fmt(x) for x in row))
    write_csv(args.out, header, [row], args, "gdof")
    return EXIT_OK


@dataclass(frozen=True)
class SweepRow:
    alpha1: float
    alpha2: float
    regime: str
    gdof: float
    active_term: str
    face_id: int
    achievable_slope: float | None = None
    outer_slope: float | None = None


def grid_values(step: float, vmax: float) -> list[float]:
    """``k * step`` for ``k >= 1`` while below ``vmax``, rounded to kill binary fuzz."""
    if not step > 0:
        raise DomainError("--step must be positive")
    out, k = [], 1
    while k * step < vmax - 1e-12:
        out.append(round(k * step, 12))
        k += 1
    return out


def sweep_cells(step: float, vmax: float, a2: float | None) -> tuple[list[tuple[int, int, float, float]], int]:
    """Admissible ``(i, j, alpha1, alpha2)`` cells and the number skipped."""
    vals = grid_values(step, vmax)
    if a2 is None:
        pairs = [(i, j, x, y) for i, x in enumerate(vals, 1) for j, y in enumerate(vals, 1)]
    else:
        pairs = [(i, 0, x, a2) for i, x in enumerate(vals, 1)]
    cells, skipped = [], 0
    for i, j, x, y in pairs:
        if x <= y or x == 1.0 or y == 1.0:
            skipped += 1
            continue
        cells.append((i, j, x, y))
    return cells, skipped


def _verify_cell(M: int, N: int, a1: float, a2: float, seed: int, rhos: Sequence[float]) -> tuple[float, float]:
    ch = generate_channel(SystemConfig(M, N, a1, a2), seed)
    ach = [achievable_sym_rate(ch, r) for r in rhos]
    out = [min(outer_proxies(ch, r).values()) for r in rhos]
    return _slope_of(ach, rhos), _slope_of(out, rhos)


def _sweep_row(task) -> SweepRow:
    M, N, i, j, a1, a2, verify, seed, rhos = task
    r = gdof(SystemConfig(M, N, a1, a2))
    row = SweepRow(a1, a2, str(r.regime), r.value, r.active_term, r.face_id)
    if verify:
        s_ach, s_out = _verify_cell(M, N, a1, a2, derive_seed(seed, i, j), rhos)
        row = SweepRow(*[getattr(row, f) for f in ("alpha1", "alpha2", "regime", "gdof", "active_term", "face_id")], s_ach, s_out)
    return row


def run_sweep(M: int, N: int, step: float, vmax: float, a2: float | None = None, verify: bool = False,
              seed: int = 0, rhos: Sequence[float] = (1e6, 1e9), jobs: int = 1) -> tuple[list[SweepRow], int]:
    SystemConfig(M, N, 0.5, 0.25).require_theorem_range()
    cells, skipped = sweep_cells(step, vmax, a2)
    tasks = [(M, N, i, j, x, y, verify, seed, tuple(rhos)) for i, j, x, y in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_sweep_row, tasks, chunksize=8))
    else:
        rows = [_sweep_row(t) for t in tasks]
    rows.sort(key=lambda r: (r.alpha1, r.alpha2))
    return rows, skipped


def cmd_sweep(args) -> int:
    rhos = _parse_rhos(args.rhos)
    rows, skipped = run_sweep(args.m, args.n, args.step, args.max, args.a2, args.verify, args.seed, rhos, args.jobs)
    if not rows:
        raise DomainError("the grid has no admissible cell")
    header = ["alpha1", "alpha2", "regime", "gdof", "active_term", "face_id"]
    if args.verify:
        header += ["achievable_slope", "outer_slope"]
    table = []
    for r in rows:
        vals = [r.alpha1, r.alpha2, r.regime, r.gdof, r.active_term, r.face_id]
        if args.verify:
            vals += [r.achievable_slope, r.outer_slope]
        table.append(vals)
    if args.out:
        write_csv(args.out, header, table, args, "sweep")
    else:
        print(",".join(header))
        for vals in table:
            print(",".join(fmt(x) for x in vals))
    gmin = min(r.gdof for r in rows)
    print(f"rows {len(rows)}, skipped {skipped}, min gdof {gmin:.10g}", file=sys.stderr)
    if args.verify:
        d_ach = max(abs(r.gdof - r.achievable_slope) for r in rows)
        d_out = max(abs(r.gdof - r.outer_slope / 3.0) for r in rows)
        print(f"max |gdof - achievable_slope| {d_ach:.4g}, max |gdof - outer_slope/3| {d_out:.4g}", file=sys.stderr)
    return EXIT_OK


def cmd_verify_lemma(args) -> int:
    try:
        exps = tuple(float(t) for t in args.exps.split(","))
    except ValueError as exc:
        raise DomainError(f"cannot parse --exps {args.exps!r}") from exc
    spec = PrelogSpec(args.r, args.n, exps)
    rhos = _parse_rhos(args.rhos)
    H = random_matrices(spec, np.random.default_rng(args.seed))
    measured = estimate_slope(lambda rho: numeric_logdet(spec, *H, rho=rho), rhos)
    pred = predicted_prelog(spec)
    print(f"predicted prelog {pred:.10g}, measured slope {measured:.10g}, |diff| {abs(measured - pred):.3g}")
    write_csv(args.out, ["r", "N", "exps", "predicted", "measured"],
              [[spec.r, spec.N, " ".join(fmt(e) for e in exps), pred, measured]], args, "verify-lemma")
    return EXIT_OK


def _per_rho(args, fn: Callable) -> tuple[list[float], list]:
    rhos = _parse_rhos(args.rhos)
    c = _config(args)
    chans = [generate_channel(c, s) for s in _trial_seeds(args.seed, args.trials)]
    return rhos, [[fn(ch, r) for r in rhos] for ch in chans]


def cmd_achievable(args) -> int:
    c = _config(args)
    g = gdof(c)
    rhos, vals = _per_rho(args, achievable_sym_rate)
    R = np.mean(np.array(vals), axis=0)
    slope = _slope_of(list(R), rhos)
    for r, v in zip(rhos, R):
        print(f"rho {r:.3g}: R {v:.6f} bits")
    print(f"slope {slope:.6f}, gdof {g.value:.6f}, deviation {slope - g.value:+.4f}")
    write_csv(args.out, ["rho", "R"], [[r, v] for r, v in zip(rhos, R)], args, "achievable")
    return EXIT_OK


def _outer_table(args):
    rhos, vals = _per_rho(args, outer_proxies)
    labels = list(vals[0][0].keys())
    mean = {lab: [float(np.mean([v[k][lab] for v in vals])) for k in range(len(rhos))] for lab in labels}
    mins = [min(mean[lab][k] for lab in labels) for k in range(len(rhos))]
    return rhos, labels, mean, mins


def cmd_outer(args) -> int:
    g = gdof(_config(args))
    rhos, labels, mean, mins = _outer_table(args)
    for lab in labels:
        s = _slope_of(mean[lab], rhos)
        print(f"{lab:>12}: " + "  ".join(f"{v:10.4f}" for v in mean[lab]) + f"   slope/3 {s / 3:.4f}")
    s = _slope_of(mins, rhos)
    print(f"min outer slope/3 {s / 3:.6f}, gdof {g.value:.6f}, deviation {s / 3 - g.value:+.4f}")
    write_csv(args.out, ["rho"] + labels + ["min"],
              [[r] + [mean[lab][k] for lab in labels] + [mins[k]] for k, r in enumerate(rhos)], args, "outer")
    return EXIT_OK


def cmd_gap(args) -> int:
    rhos, ach = _per_rho(args, achievable_sym_rate)
    R = np.mean(np.array(ach), axis=0)
    _, _, _, mins = _outer_table(args)
    per_user = np.array(mins) / 3.0
    gap = per_user - R
    slope = _slope_of(list(gap), rhos)
    for r, a, o, d in zip(rhos, R, per_user, gap):
        print(f"rho {r:.3g}: achievable {a:.6f}, outer {o:.6f}, gap {d:+.6f}")
    print(f"gap slope {slope:+.6f} bits per log2(rho)")
    write_csv(args.out, ["rho", "achievable", "outer_per_user", "gap"],
              [[r, a, o, d] for r, a, o, d in zip(rhos, R, per_user, gap)], args, "gap")
    return EXIT_OK


def cmd_det(args) -> int:
    c = _config(args)
    model = build_shift_channel(c, args.levels, args.seed)
    rep = check_assumptions(model)
    for (eq, rx), ok in sorted(rep.summary().items()):
        print(f"assumption {eq} rx{rx}: {'PASS' if ok else 'FAIL'}")
    target = args.levels * gdof(c).value
    if not rep.passed:
        print("assumptions FAIL; capacity formula not applicable")
        return EXIT_DOMAIN
    cap = det_sym_capacity(model, require_assumptions=False)
    print(f"capacity {cap.value:.10g} bits (term {cap.term_index}), target L*gdof {target:.10g}, "
          f"normalized {cap.value / args.levels:.6f} vs {gdof(c).value:.6f}; assumptions PASS")
    write_csv(args.out, ["term", "value"], [[k + 1, v] for k, v in enumerate(cap.terms)], args, "det")
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write(dump_model(model))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, rhos: str | None) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reproducible", action="store_true", help="omit the timestamp comment from CSV output")
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--config", default=None, help="JSON file with flag defaults (flags win)")
    if rhos is not None:
        p.add_argument("--rhos", default=rhos, help="comma-separated SNR values (linear)")


def _point(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--a1", type=float, required=True)
    p.add_argument("--a2", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gdof-mimo", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gdof", help="closed-form GDOF at one point")
    _point(p)
    _common(p, None)
    p.set_defaults(func=cmd_gdof)

    p = sub.add_parser("sweep", help="GDOF over an exponent grid")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--max", type=float, default=2.0)
    p.add_argument("--a2", type=float, default=None, help="fix alpha2 and sweep alpha1 only")
    p.add_argument("--verify", action="store_true", help="add achievable and outer slopes per cell")
    p.add_argument("--jobs", type=int, default=1)
    _common(p, DEFAULT_RHOS["sweep"])
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-lemma", help="prelog formula vs numeric log-det slope")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exps", required=True, help="comma-separated exponents, nonincreasing")
    _common(p, DEFAULT_RHOS["verify-lemma"])
    p.set_defaults(func=cmd_verify_lemma)

    for name, func, help_ in (
        ("achievable", cmd_achievable, "rate-splitting symmetric rate vs rho"),
        ("outer", cmd_outer, "outer-bound recipes vs rho"),
        ("gap", cmd_gap, "outer minus achievable vs rho"),
    ):
        p = sub.add_parser(name, help=help_)
        _point(p)
        p.add_argument("--trials", type=int, default=1)
        _common(p, DEFAULT_RHOS[name])
        p.set_defaults(func=func)

    p = sub.add_parser("det", help="deterministic-model capacity")
    _point(p)
    p.add_argument("--levels", type=int, default=10)
    p.add_argument("--dump", default=None, help="write the model as a 0/1 matrix listing")
    _common(p, None)
    p.set_defaults(func=cmd_det)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise DomainError("config file must hold a JSON object")
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    for action in ap._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sp in action.choices.values():
                dests = {a.dest for a in sp._actions}
                sp.set_defaults(**{k: v for k, v in cfg.items() if k in dests})
                for a in sp._actions:
                    if a.dest in cfg:
                        a.required = False


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        _apply_config(ap, argv)
        args = ap.parse_args(argv)
        if hasattr(args, "a1") and hasattr(args, "a2") and args.command != "sweep":
            regime_of(args.a1, args.a2)  # boundary check before any heavy work
        return args.func(args)
    except BoundaryError as exc:
        print(f"error: boundary: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DomainError as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: I/O: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"error: numerical: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except GdofError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
