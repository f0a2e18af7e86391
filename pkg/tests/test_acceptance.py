"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line (collected into the
"acceptance criteria" section of the pytest summary) before asserting.
"""

import itertools
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import bernstein, central_difference, off_knot_points, zeta_partial_bracket
from schoenberg import bounds
from schoenberg.basis import basis_matrix, make_mesh, shift_invariance_defect
from schoenberg.corpus import builtin_corpus
from schoenberg.harness import SweepConfig, main, run_sweep
from schoenberg.modulus import DEFAULT_GRID, d2_sup_norm, sup_norm_error
from schoenberg.operator import (
    derivative,
    eval_spline,
    iterate,
    iterate_naive,
    schoenberg,
    second_derivative,
)

CORPUS = builtin_corpus()
SWEEP = dict(n_list=[32, 64, 128], k_list=[3, 4, 5], t_list=["h", "2h", "0.25", "auto-δ"])


def record(label, ok, detail):
    line = f"{label:4s} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def basis_sweep():
    for n in range(4, 65):
        for k in range(1, 9):
            yield make_mesh(n, k)


@pytest.fixture(scope="module")
def headline_rows():
    return run_sweep(SweepConfig(function_names=[f.name for f in CORPUS], **SWEEP))


def test_ac01_partition_of_unity():
    start = time.perf_counter()
    x = np.linspace(0.0, 1.0, 200)
    worst = max(float(np.max(np.abs(basis_matrix(m, m.k, x).sum(axis=1) - 1.0))) for m in basis_sweep())
    elapsed = time.perf_counter() - start
    record("AC01", worst < 1e-12 and elapsed < 10.0, f"partition of unity max dev {worst:.2e}, {elapsed:.2f} s")


def test_ac02_linear_reproduction():
    x = np.linspace(0.0, 1.0, 200)
    worst = 0.0
    for m in basis_sweep():
        s = schoenberg(m, lambda z: 3.0 * z - 1.25)
        worst = max(worst, float(np.max(np.abs(eval_spline(s, x) - (3.0 * x - 1.25)))))
    record("AC02", worst < 1e-12, f"linear reproduction max dev {worst:.2e}")


def test_ac03_shift_invariance():
    worst = max(shift_invariance_defect(m) for m in basis_sweep())
    record("AC03", worst < 1e-13, f"shift invariance max dev {worst:.2e}")


def test_ac04_bernstein_degeneration():
    x = np.linspace(0.0, 1.0, 101)
    worst = 0.0
    for k in range(1, 9):
        mesh = make_mesh(1, k)
        for f in CORPUS:
            worst = max(worst, float(np.max(np.abs(eval_spline(schoenberg(mesh, f), x) - bernstein(f, k, x)))))
    record("AC04", worst < 1e-12, f"n = 1 vs binomial Bernstein max dev {worst:.2e}")


def test_ac05_iterates():
    worst = 0.0
    for n, k, m in itertools.product(range(1, 17), range(1, 5), range(1, 6)):
        mesh = make_mesh(n, k)
        f = CORPUS[(n + k + m) % len(CORPUS)]
        a = iterate(mesh, f, m).coefficients
        b = iterate_naive(mesh, f, m).coefficients
        worst = max(worst, float(np.max(np.abs(a - b))))
    record("AC05", worst < 1e-10, f"matrix-power vs naive iterates max dev {worst:.2e}")


def test_ac06_derivatives():
    worst = 0.0
    for k in (3, 4, 5):
        for n in (8, 32):
            mesh = make_mesh(n, k)
            x = off_knot_points(n, 50, np.random.default_rng(100 * k + n))
            for f in CORPUS:
                s = schoenberg(mesh, f)
                ds = derivative(s)
                fd1 = central_difference(lambda z: eval_spline(s, z), x)
                fd2 = central_difference(lambda z: eval_spline(ds, z), x)
                worst = max(
                    worst,
                    float(np.max(np.abs(eval_spline(ds, x) - fd1))),
                    float(np.max(np.abs(eval_spline(second_derivative(s), x) - fd2))),
                )
    record("AC06", worst < 1e-5, f"spline derivatives vs central differences max dev {worst:.2e}")


def test_ac07_iterate_second_derivative_bound():
    start = time.perf_counter()
    worst, ratio = -math.inf, 0.0
    x = np.linspace(0.0, 1.0, DEFAULT_GRID.x_points)
    for n, k in itertools.product((32, 64), (3, 4)):
        mesh = make_mesh(n, k)
        for f in CORPUS:
            sup_f = float(np.max(np.abs(f(x))))
            for m in range(2, 11):
                lhs = bounds.interior_d2_iterate_norm(mesh, f, m)
                bound = bounds.iterate_d2_bound(mesh, m) * sup_f
                worst = max(worst, lhs - bound)
                ratio = max(ratio, lhs / bound)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 60.0
    record("AC07", ok, f"max(lhs - bound) {worst:.3e}, worst lhs/bound {ratio:.3f}, {elapsed:.2f} s")


def test_ac08_kfunctional(headline_rows):
    worst = -math.inf
    for r in headline_rows:
        f = next(g for g in CORPUS if g.name == r.fn)
        mesh = make_mesh(r.n, r.k)
        rhs = 4.0 * sup_norm_error(f, schoenberg(mesh, f)) + r.t**2 * d2_sup_norm(mesh, f)
        worst = max(worst, r.omega2_t - rhs)
    record("AC08", worst <= 1e-9, f"max(omega2 - K rhs) {worst:.3e} over {len(headline_rows)} cells")


def test_ac09_headline_constant(headline_rows):
    rows = [r for r in headline_rows if r.t == r.delta and r.omega2_delta > 0]
    worst = max(r.omega2_delta - 5.0 * r.err_norm for r in rows)
    ratio = max(r.omega2_delta / r.err_norm for r in rows if r.err_norm > 1e-12)
    ok = worst <= 1e-9 and all(r.five_check for r in headline_rows)
    record("AC09", ok, f"max(omega2(delta) - 5 err) {worst:.3e}, worst ratio {ratio:.3f}")


def test_ac10_two_sided(headline_rows):
    lo = max(r.omega2_t / r.lower_const - r.err_norm for r in headline_rows)
    hi = max(r.err_norm - r.upper_const * r.omega2_t for r in headline_rows)
    ok = lo <= 1e-9 and hi <= 1e-9 and all(r.sandwich_check for r in headline_rows)
    record("AC10", ok, f"lower side {lo:.3e}, upper side {hi:.3e}")


def test_ac11_zeta():
    lo, hi = zeta_partial_bracket()
    z = bounds.zeta_three_halves()
    ok = lo - 1e-9 <= z <= hi + 1e-9 and abs(z - 0.5 * (lo + hi)) < 1e-9
    record("AC11", ok, f"zeta(3/2) = {z:.12f}, oracle bracket [{lo:.12f}, {hi:.12f}]")


def test_ac12_epsilon_stabilization():
    spreads = {}
    for k in (3, 4, 5):
        base = 4 * k + 8
        vals = [bounds.epsilon_nk(make_mesh(m * base, k)) for m in (1, 2, 4)]
        spreads[k] = max(vals) - min(vals)
    ok = max(spreads.values()) < 1e-12
    record("AC12", ok, "epsilon spread " + ", ".join(f"k={k}: {v:.1e}" for k, v in spreads.items()))


def test_ac13_determinism(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "n_list = 32, 64\nk_list = 3, 4\nt_list = h, 0.25, auto-δ\n"
        "function_names = abs_half, sqrt_third, runge\nx_points = 1025\nh_points = 128\n",
        encoding="utf-8",
    )
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    codes = [main(["sweep", "--config", str(cfg), "--output", str(p)]) for p in (a, b)]
    bad = tmp_path / "bad.cfg"
    bad.write_text(cfg.read_text() + "slack = -1\n", encoding="utf-8")
    codes.append(main(["sweep", "--config", str(bad), "--output", str(c)]))
    codes.append(main(["sweep", "--config", str(tmp_path / "missing.cfg")]))
    same = a.read_bytes() == b.read_bytes()
    ok = same and codes == [0, 0, 1, 2]
    record("AC13", ok, f"byte-identical CSV {same}, exit codes {codes} (expected [0, 0, 1, 2])")
