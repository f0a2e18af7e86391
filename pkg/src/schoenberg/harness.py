"""Experiment sweeps, CSV/JSON emission and the command line interface.

Exit codes: 0 when every check passes, 1 when some check fails, 2 for usage
or configuration errors.
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import basis, bounds, modulus, operator
from .basis import DomainError, make_mesh
from .corpus import builtin_corpus, corpus_by_name, get_function

CSV_COLUMNS = (
    "fn", "n", "k", "t", "delta", "omega2_t", "omega2_delta", "err_norm", "epsilon_nk",
    "d_k", "lower_const", "upper_const", "five_check", "sandwich_check", "slack",
)
AUTO_DELTA = ("auto-δ", "auto-delta", "delta")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    n_list: list[int] = field(default_factory=lambda: [32, 64])
    k_list: list[int] = field(default_factory=lambda: [3, 4])
    t_list: list[str] = field(default_factory=lambda: ["h", "2h", "0.25", "auto-δ"])
    function_names: list[str] = field(default_factory=lambda: [f.name for f in builtin_corpus()])
    grid: modulus.GridSpec = field(default_factory=modulus.GridSpec)
    dk_strategy: str = "alternating"
    output_format: str = "csv"
    seed: int = 0
    slack: float = 1e-9

    def validate(self) -> None:
        problems = []
        if not self.n_list:
            problems.append("n_list: empty")
        if not self.k_list:
            problems.append("k_list: empty")
        for k in self.k_list:
            if k < 3:
                problems.append(f"k_list: k = {k} < 3")
        for n in self.n_list:
            for k in self.k_list:
                if k >= 1 and n < 4 * k + 8:
                    problems.append(f"n_list: n = {n} < 4k+8 = {4 * k + 8} for k = {k}")
        if not self.t_list:
            problems.append("t_list: empty")
        for t in self.t_list:
            try:
                for n in self.n_list:
                    v = resolve_t(t, n, None)
                    if v is not None and not 0.0 < v <= 0.5:
                        problems.append(f"t_list: t = {t} resolves to {v} outside (0, 1/2] for n = {n}")
            except ValueError:
                problems.append(f"t_list: cannot parse {t!r}")
        known = corpus_by_name()
        for name in self.function_names:
            if name not in known:
                problems.append(f"function_names: unknown function {name!r}")
        if self.dk_strategy not in bounds.DK_STRATEGIES:
            problems.append(f"dk_strategy: {self.dk_strategy!r} not in {bounds.DK_STRATEGIES}")
        if self.output_format not in ("csv", "json"):
            problems.append(f"output_format: {self.output_format!r} not in ('csv', 'json')")
        if problems:
            raise ConfigError("; ".join(problems))


def resolve_t(token: str, n: int, delta: float | None) -> float | None:
    """Resolve 'h', '2h', 'auto-δ' or a number; auto-δ gives ``delta`` (None if unknown)."""
    tok = str(token).strip()
    if tok in AUTO_DELTA:
        return delta
    if tok.endswith("h"):
        mult = tok[:-1].strip()
        return (float(mult) if mult else 1.0) / n
    return float(tok)


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def load_config(path: str | Path) -> SweepConfig:
    """Read a flat ``key = value`` file; list values are comma separated."""
    text = Path(path).read_text(encoding="utf-8")
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    try:
        parser.read_string("[sweep]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    raw = dict(parser["sweep"])
    cfg = SweepConfig()
    grid_kw = {}
    try:
        for key, value in raw.items():
            if key in ("n_list", "k_list"):
                setattr(cfg, key, [int(v) for v in _split(value)])
            elif key == "t_list":
                cfg.t_list = _split(value)
            elif key == "function_names":
                names = _split(value)
                cfg.function_names = [f.name for f in builtin_corpus()] if names == ["all"] else names
            elif key in ("x_points", "h_points", "per_interval"):
                grid_kw[key] = int(value)
            elif key in ("dk_strategy", "output_format"):
                setattr(cfg, key, value.strip())
            elif key == "seed":
                cfg.seed = int(value)
            elif key == "slack":
                cfg.slack = float(value)
            else:
                raise ConfigError(f"{key}: unknown config field")
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{key}: {exc}") from None
    try:
        cfg.grid = modulus.GridSpec(**grid_kw)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    cfg.validate()
    return cfg


def run_sweep(cfg: SweepConfig) -> list[bounds.BoundReport]:
    """One report per (f, n, k, t) in config order."""
    cfg.validate()
    rows = []
    for name in cfg.function_names:
        f = get_function(name)
        for n in cfg.n_list:
            for k in cfg.k_list:
                mesh = make_mesh(n, k)
                d_k = bounds.estimate_dk(mesh, cfg.dk_strategy, cfg.seed)
                dl = bounds.delta(mesh, d_k)
                for tok in cfg.t_list:
                    t = resolve_t(tok, n, dl)
                    rows.append(
                        bounds.lower_bound_report(
                            f, mesh, t, cfg.grid, cfg.dk_strategy, cfg.slack, cfg.seed
                        )
                    )
    return rows


def all_pass(rows) -> bool:
    return all(r.five_check and r.sandwich_check for r in rows)


def _num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    return format(x, ".17g")


def to_csv(rows) -> str:
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for r in rows:
        d = r.as_dict()
        out.write(",".join(d[c] if c == "fn" else _num(d[c]) for c in CSV_COLUMNS) + "\n")
    return out.getvalue()


def to_json(rows) -> str:
    objs = []
    for r in rows:
        d = r.as_dict()
        fields = [
            f"{json.dumps(c)}: {json.dumps(d[c]) if c == 'fn' else _num(d[c])}" for c in CSV_COLUMNS
        ]
        objs.append("  {" + ", ".join(fields) + "}")
    return "[\n" + ",\n".join(objs) + "\n]\n"


# --- CLI ---------------------------------------------------------------------


def basis_check(n: int, k: int, x_points: int = 200) -> dict[str, tuple[float, float]]:
    """Max deviations of the basis identities, each paired with its tolerance."""
    mesh = make_mesh(n, k)
    x = np.linspace(0.0, 1.0, x_points)
    B = basis.basis_matrix(mesh, k, x)
    xi = basis.greville_nodes(mesh, k).nodes
    out = {
        "partition_of_unity": (float(np.max(np.abs(B.sum(axis=1) - 1.0))), 1e-12),
        "linear_reproduction": (float(np.max(np.abs(B @ xi - x))), 1e-12),
        "nonnegativity": (float(max(0.0, -B.min())), 0.0),
    }
    A = operator.collocation_matrix(mesh)
    out["collocation_row_sums"] = (float(np.max(np.abs(A.sum(axis=1) - 1.0))), 1e-12)
    out["shift_invariance"] = (basis.shift_invariance_defect(mesh), 1e-13)
    if n <= 16 and k <= 5:
        xs = np.linspace(0.0, 1.0, 33)
        dev = max(
            abs(basis.bspline_value(mesh, k, j, xv) - basis.bspline_value_reference(mesh, k, j, xv))
            for j in range(-k, n)
            for xv in xs
        )
        out["reference_agreement"] = (float(dev), 1e-8)
    return out


def _cmd_basis_check(args) -> int:
    ok = True
    for name, (dev, tol) in basis_check(args.n, args.k).items():
        good = dev <= tol
        ok &= good
        print(f"{name:22s} max_dev={dev:.3e} tol={tol:.0e} {'PASS' if good else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_approx(args) -> int:
    f = get_function(args.fn)
    mesh = make_mesh(args.n, args.k)
    s = operator.schoenberg(mesh, f)
    err = modulus.sup_norm_error(f, s)
    print(f"fn={f.name} n={args.n} k={args.k} err_norm={_num(err)}")
    if args.plot_csv:
        x = np.linspace(0.0, 1.0, args.points)
        fx, sx = f(x), operator.eval_spline(s, x)
        with open(args.plot_csv, "w", encoding="utf-8") as fh:
            fh.write("x,f,Sf,error\n")
            for row in zip(x, fx, sx, fx - sx):
                fh.write(",".join(_num(v) for v in row) + "\n")
    return EXIT_OK


def _cmd_epsilon(args) -> int:
    print("n,k,epsilon_nk")
    for n in args.n_list:
        print(f"{n},{args.k},{_num(bounds.epsilon_nk(make_mesh(n, args.k)))}")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    f = get_function(args.fn)
    mesh = make_mesh(args.n, args.k)
    t = None if args.t in AUTO_DELTA else resolve_t(args.t, args.n, None)
    r = bounds.lower_bound_report(f, mesh, t, dk_strategy=args.dk_strategy, seed=args.seed)
    for c in CSV_COLUMNS:
        v = getattr(r, c)
        print(f"{c:15s} {v if c == 'fn' else _num(v)}")
    return EXIT_OK if r.five_check and r.sandwich_check else EXIT_FAIL


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    rows = run_sweep(cfg)
    text = to_json(rows) if cfg.output_format == "json" else to_csv(rows)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if all_pass(rows) else EXIT_FAIL


def _cmd_corpus(args) -> int:
    for f in builtin_corpus():
        print(f"{f.name}\t{f.smoothness_tag}")
    return EXIT_OK


def _int_list(s: str) -> list[int]:
    return [int(v) for v in _split(s)]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schoenberg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("basis-check", help="check basis identities on one mesh")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.set_defaults(func=_cmd_basis_check)

    q = sub.add_parser("approx", help="approximation error of S_{n,k} f")
    q.add_argument("--fn", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--plot-csv", dest="plot_csv")
    q.add_argument("--points", type=int, default=1001)
    q.set_defaults(func=_cmd_approx)

    q = sub.add_parser("epsilon", help="epsilon_{n,k} for several n")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n-list", dest="n_list", type=_int_list, required=True)
    q.set_defaults(func=_cmd_epsilon)

    q = sub.add_parser("bounds", help="full bound report for one function")
    q.add_argument("--fn", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--t", default="auto-δ")
    q.add_argument("--dk-strategy", dest="dk_strategy", default="alternating", choices=bounds.DK_STRATEGIES)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_bounds)

    q = sub.add_parser("sweep", help="run a sweep config and emit CSV/JSON")
    q.add_argument("--config", required=True)
    q.add_argument("--output")
    q.set_defaults(func=_cmd_sweep)

    q = sub.add_parser("corpus", help="list the built-in test functions")
    q.add_argument("--list", action="store_true", required=True)
    q.set_defaults(func=_cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
