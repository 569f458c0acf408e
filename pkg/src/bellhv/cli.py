"""Command-line front end: ``bellhv <subcommand> [options]``.

Every subcommand writes a JSON document (top-level ``"schema": "1"``) or a
CSV table.  Exit status is 0 on success, 1 when a reported check fails and
2 on a usage or input error.
"""

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import dynamics, ghz, reconstruction, schmidt, singlet, spin
from ._rng import hidden_variables

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- serialization ----------------------------------------------------------


def _num(x):
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def to_json(obj, indent=0):
    """JSON text with doubles written at 17 significant digits."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + to_json(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return json.dumps(str(obj))


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format(float(v), ".17g") if isinstance(v, (float, np.floating)) else v
                    for v in row])
    return buf.getvalue()


# -- argument parsing -------------------------------------------------------

_PI_TERM = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/((?:\d+(?:\.\d*)?|\.\d+)))?$")


def parse_angle(text):
    """A float, or a multiple of pi such as ``3pi/4``, ``-pi/2``, ``0.5*pi``."""
    t = text.strip().replace(" ", "")
    m = _PI_TERM.match(t)
    if m:
        coef = m.group(1)
        c = -1.0 if coef == "-" else 1.0 if coef in ("", "+") else float(coef)
        d = float(m.group(2)) if m.group(2) else 1.0
        return c * math.pi / d
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def parse_angles(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected four comma-separated angles")
    return tuple(parse_angle(p) for p in parts)


def parse_float(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _add_output(p):
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _add_ensemble(p, n=10**6):
    p.add_argument("--n", type=int, default=n, help="ensemble size")
    p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")


def build_parser():
    parser = argparse.ArgumentParser(prog="bellhv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spin", help="single-spin outcome frequencies vs cos^2(theta/2)")
    p.add_argument("--theta", type=parse_angle, default=math.pi / 3)
    _add_ensemble(p)
    _add_output(p)

    p = sub.add_parser("density", help="hidden-variable density under repeated measurement")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--lambda0", type=parse_float)
    g.add_argument("--theta", type=parse_angle)
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--iters", type=int, default=25)
    p.add_argument("--profile", choices=sorted(PROFILES), default="sine")
    _add_output(p)

    p = sub.add_parser("sequence", help="x-then-z measurements with relaxation time tau")
    p.add_argument("--tau", type=parse_float, default=1.0)
    p.add_argument("--t-max", type=parse_float, default=None, help="default 10 tau")
    p.add_argument("--points", type=int, default=21)
    _add_ensemble(p)
    _add_output(p)

    p = sub.add_parser("chsh", help="analytic and Monte-Carlo CHSH value")
    p.add_argument("--angles", type=parse_angles, default=singlet.ChshGeometry().as_tuple(),
                   help="planar angles phi_a1,phi_a2,phi_b1,phi_b2")
    _add_ensemble(p)
    _add_output(p)

    p = sub.add_parser("reconstruct", help="SVD reconstruction of the hypothetical joint distribution")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--angles", type=parse_angles, help="theta11,theta12,theta21,theta22")
    g.add_argument("--b-file", help="16 newline-separated measured probabilities")
    p.add_argument("--regularize", action="store_true",
                   help="drop inconsistent components instead of failing")
    _add_output(p)

    p = sub.add_parser("ghz", help="Mermin-star edge parities and zero-forcing coverage")
    _add_output(p)

    p = sub.add_parser("ks", help="spin-1 operator identities")
    p.add_argument("--seed", type=int, default=0, help="seed for the random triad")
    _add_output(p)

    p = sub.add_parser("schmidt", help="Schmidt weights and entanglement measures")
    p.add_argument("--matrix", required=True,
                   help="coefficients: JSON [[[re, im], ...], ...] or CSV of complex literals")
    p.add_argument("--normalize", action="store_true")
    _add_output(p)
    return parser


# -- subcommands -------------------------------------------------------------


def _check_ensemble(args):
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    return dynamics.EnsembleConfig(args.n, args.seed)


def cmd_spin(args):
    if not 0.0 <= args.theta <= math.pi:
        raise UsageError("--theta must lie in [0, pi]")
    cfg = _check_ensemble(args)
    lam = hidden_variables(cfg.seed, cfg.n)[:, 0]
    obs = spin.Observable(0.0, (math.sin(args.theta), 0.0, math.cos(args.theta)))
    p_up, _ = spin.outcome_probabilities(obs)
    band = 4.0 * math.sqrt(p_up * (1.0 - p_up) / cfg.n)
    geo = float(np.mean(np.asarray(dynamics.geometric_outcome(args.theta, lam)) > 0))
    bell = float(np.mean(np.asarray(dynamics.bell_outcome(obs, lam)) > 0))
    ok = abs(geo - p_up) <= band and abs(bell - p_up) <= band
    doc = {
        "theta": args.theta, "n": cfg.n, "seed": cfg.seed,
        "exact_p_up": p_up, "band": band,
        "geometric_p_up": geo, "bell_p_up": bell, "within_band": ok,
    }
    table = (["theta", "n", "seed", "exact_p_up", "band", "geometric_p_up", "bell_p_up", "within_band"],
             [[args.theta, cfg.n, cfg.seed, p_up, band, geo, bell, int(ok)]])
    return doc, table, EXIT_OK if ok else EXIT_FAIL


PROFILES = {
    "uniform": lambda x: np.ones_like(x),
    "sine": lambda x: 1.0 + np.sin(2 * np.pi * x),
    "gauss": lambda x: np.exp(-(((x - 0.2) / 0.08) ** 2)),
    "step": lambda x: (x >= 0.25).astype(float),
}


def cmd_density(args):
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    if args.iters < 0:
        raise UsageError("--iters must be nonnegative")
    if args.theta is not None:
        if not 0.0 <= args.theta <= math.pi:
            raise UsageError("--theta must lie in [0, pi]")
        split = dynamics.SplitPoint.from_angle(args.theta)
    else:
        lam0 = 0.0 if args.lambda0 is None else args.lambda0
        if not -0.5 <= lam0 <= 0.5:
            raise UsageError("--lambda0 must lie in [-0.5, 0.5]")
        split = dynamics.SplitPoint.from_lambda0(lam0)
    if split.degenerate:
        raise UsageError("degenerate split: lambda0 = +/-0.5 leaves one segment empty")
    rho0 = dynamics.DensityGrid.from_profile(PROFILES[args.profile], args.grid)
    seq = dynamics.evolve_density(rho0, split, args.iters)
    devs = [g.sup_deviation() for g in seq]
    x = rho0.centers
    doc = {
        "lambda0": split.lambda0, "theta": split.theta, "grid": args.grid,
        "iters": args.iters, "profile": args.profile,
        "sup_deviation": devs, "centers": x, "densities": [g.values for g in seq],
    }
    rows = [[k, float(x[i]), float(g.values[i]), devs[k]]
            for k, g in enumerate(seq) for i in range(args.grid)]
    return doc, (["iteration", "lambda", "density", "sup_deviation"], rows), EXIT_OK


def cmd_sequence(args):
    if args.tau < 0 or math.isnan(args.tau):
        raise UsageError("--tau must be nonnegative")
    if args.points < 1:
        raise UsageError("--points must be positive")
    cfg = _check_ensemble(args)
    t_max = args.t_max
    if t_max is None:
        t_max = 10.0 * args.tau if 0 < args.tau < math.inf else 10.0
    if not (0 <= t_max < math.inf):
        raise UsageError("--t-max must be finite and nonnegative")
    ts = np.linspace(0.0, t_max, args.points)
    axes = [(1.0, 0.0, 0.0), (0.0, 0.0, 1.0)]
    rows = []
    for t in ts:
        clock = dynamics.RelaxationClock(args.tau, float(t))
        res = dynamics.simulate_sequence(axes, (0.0, 0.0, 1.0), cfg, clock)
        rows.append([float(t), clock.weight, float(res.up_fractions[-1]),
                     dynamics.sequence_up_fraction(clock)])
    fractions = [r[2] for r in rows]
    monotone = all(b <= a for a, b in zip(fractions, fractions[1:]))
    doc = {
        "tau": args.tau, "n": cfg.n, "seed": cfg.seed, "axes": ["x", "z"],
        "t": [r[0] for r in rows], "relaxation_weight": [r[1] for r in rows],
        "fraction_up": fractions, "expected_fraction_up": [r[3] for r in rows],
        "monotone_nonincreasing": monotone,
    }
    header = ["t", "relaxation_weight", "fraction_up", "expected_fraction_up"]
    return doc, (header, rows), EXIT_OK if monotone else EXIT_FAIL


def cmd_chsh(args):
    cfg = _check_ensemble(args)
    geom = singlet.ChshGeometry(*args.angles)
    exact = [singlet.correlation(geom.theta(i, j)) for i, j in singlet.SETTINGS]
    mc = singlet.chsh_correlations_monte_carlo(geom, cfg)
    doc = {
        "angles": geom.as_tuple(), "n": cfg.n, "seed": cfg.seed,
        "theta": [geom.theta(i, j) for i, j in singlet.SETTINGS],
        "correlations_exact": exact, "correlations_monte_carlo": mc,
        "chsh_analytic": singlet.chsh_combination(*exact),
        "chsh_monte_carlo": singlet.chsh_combination(*mc),
    }
    rows = [[f"X{i}Y{j}", geom.theta(i, j), e, m]
            for (i, j), e, m in zip(singlet.SETTINGS, exact, mc)]
    rows.append(["CHSH", "", doc["chsh_analytic"], doc["chsh_monte_carlo"]])
    return doc, (["setting", "theta", "exact", "monte_carlo"], rows), EXIT_OK


def _read_b(path):
    try:
        with open(path) as fh:
            values = [float(line) for line in fh if line.strip()]
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read b-file: {exc}") from None
    if len(values) != 16:
        raise UsageError(f"b-file must hold 16 values, found {len(values)}")
    return values


def cmd_reconstruct(args):
    if args.b_file:
        system = reconstruction.ConstraintSystem.from_rhs(_read_b(args.b_file))
        source = {"b_file": args.b_file}
    else:
        angles = args.angles or reconstruction.CHSH_ANGLES
        system = reconstruction.ConstraintSystem.from_angles(angles)
        source = {"angles": angles}
    fam = reconstruction.svd_solve(system, strict=False)
    ok = fam.residual_ok or args.regularize
    p = fam.p_reg
    negative = p < -1e-12
    doc = dict(source)
    doc.update({
        "b": system.b, "rank": fam.rank, "singular_values": fam.S,
        "residuals": fam.residuals, "residual_ok": fam.residual_ok,
        "regularized": bool(args.regularize and not fam.residual_ok),
        "p_reg": p, "sum_p": float(p.sum()), "sum_p_squared": float(p @ p),
        "bell_invariant": reconstruction.bell_invariant(p),
        "negative_entries": [int(i) + 1 for i in np.flatnonzero(negative)],
        "has_negative": bool(negative.any()),
    })
    a = reconstruction.bell_row()
    rows = [[k + 1, "".join("+" if s > 0 else "-" for s in atom), float(p[k]), float(a[k])]
            for k, atom in enumerate(reconstruction.ATOMS)]
    return doc, (["atom", "signs_X1X2Y1Y2", "p_reg", "a"], rows), EXIT_OK if ok else EXIT_FAIL


def cmd_ghz(args):
    star = ghz.build_mermin_star()
    signs = ghz.edge_products(star)
    system = ghz.build_ghz_system(star, ghz.ghz_state())
    cover = ghz.verify_zero_forcing(system)
    partial = ghz.verify_zero_forcing(system, exclude_edges=(star.horizontal,))
    vals = ghz.assignments(len(star.words))
    value_products = {ghz.assignment_parity_product(star, v) for v in vals}
    edges = []
    for e in range(len(star.edges)):
        rows = system.edge_rows(e)
        edges.append({
            "operators": star.edge_labels(e),
            "product": signs[e],
            "horizontal": e == star.horizontal,
            "zero_rows": int(np.isin(system.zero_rows, rows).sum()),
            "state_zero_rows": int(np.isin(system.state_zero_rows, rows).sum()),
            "b_sum": float(system.b[rows].sum()),
        })
    doc = {
        "operators": star.labels,
        "edges": edges,
        "edge_sign_product": int(np.prod(signs)),
        "assignment_value_products": sorted(value_products),
        "system_shape": list(system.A.shape),
        "ones_per_row": sorted({int(c) for c in system.A.sum(axis=1)}),
        "all_columns_covered": cover.all_covered,
        "uncovered_without_horizontal_edge": int(partial.uncovered.size),
    }
    ok = cover.all_covered and tuple(signs) == (1, 1, 1, 1, -1)
    rows = [[e, " ".join(d["operators"]), d["product"], d["zero_rows"], d["state_zero_rows"], d["b_sum"]]
            for e, d in enumerate(edges)]
    header = ["edge", "operators", "product", "zero_rows", "state_zero_rows", "b_sum"]
    return doc, (header, rows), EXIT_OK if ok else EXIT_FAIL


def cmd_ks(args):
    report = ghz.spin1_identities(seed=args.seed)
    doc = {"seed": args.seed, **report}
    rows = [[k, v] for k, v in report["deviations"].items()]
    return doc, (["identity", "max_deviation"], rows), EXIT_OK if report["passed"] else EXIT_FAIL


def load_matrix(path):
    """Complex coefficient matrix from JSON ``[[[re, im], ...], ...]`` or CSV."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read matrix: {exc}") from None
    try:
        if path.lower().endswith(".csv"):
            rows = [r for r in csv.reader(io.StringIO(text)) if r]
            m = np.array([[complex(c.strip().replace(" ", "")) for c in r] for r in rows])
        else:
            data = json.loads(text)
            m = np.array([[complex(float(re_), float(im)) for re_, im in row] for row in data])
    except (ValueError, TypeError) as exc:
        raise UsageError(f"malformed matrix file: {exc}") from None
    if m.ndim != 2 or 0 in m.shape:
        raise UsageError("malformed matrix file: not a rectangular matrix")
    return m


def cmd_schmidt(args):
    m = load_matrix(args.matrix)
    try:
        state = (schmidt.BipartiteState.normalized(m) if args.normalize
                 else schmidt.BipartiteState(m))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = schmidt.schmidt_decompose(state)
    K, info, S = schmidt.entanglement_measures(res)
    doc = {
        "shape": list(m.shape), "weights": res.weights, "schmidt_rank": res.rank,
        "K": K, "I": info, "S": S, "separable": schmidt.separability_check(state),
        "log_base": 2,
    }
    rows = [[j + 1, float(w)] for j, w in enumerate(res.weights)]
    return doc, (["mode", "weight"], rows), EXIT_OK


COMMANDS = {
    "spin": cmd_spin,
    "density": cmd_density,
    "sequence": cmd_sequence,
    "chsh": cmd_chsh,
    "reconstruct": cmd_reconstruct,
    "ghz": cmd_ghz,
    "ks": cmd_ks,
    "schmidt": cmd_schmidt,
}


def run(argv=None):
    """Run one subcommand; returns ``(exit_code, text, out_path)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, table, code = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"bellhv {args.command}: error: {exc}\n")
    if args.format == "csv":
        text = to_csv(*table)
    else:
        text = to_json({"schema": SCHEMA, "command": args.command, **doc}) + "\n"
    return code, text, args.out


def main(argv=None):
    code, text, out = run(argv)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
