"""Command-line front end.

Verbs: seq, region, classify, orbit, check, solve, atlas-tongues, atlas,
conjugacy, render.  Flags are long-form; a plain ``key = value`` config file
(# comments) may supply defaults, with explicit flags taking precedence.
Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import atlas as atlas_mod
from . import conjugacy as conj_mod
from . import families, linear_model, piecewise_map, tongue_solver
from .farey import Rational, char_seq
from .tongue_solver import FamilyError, NonOverlapError

USAGE_EXIT = 1
NUMERIC_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; usage errors are 1 here
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_EXIT)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


_CONFIG_ALIASES = {
    "c_min": "second_min", "beta_min": "second_min",
    "c_max": "second_max", "beta_max": "second_max",
}
_CONFIG_RESERVED = {"func", "command", "config"}


def load_config(path: str) -> dict:
    """Parse ``key = value`` lines; values coerce to int, then float, else string."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {raw!r} is not of the form key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        key = _CONFIG_ALIASES.get(key, key)
        if key in _CONFIG_RESERVED:
            raise ValueError(f"config key {key!r} is reserved")
        for cast in (int, float):
            try:
                out[key] = cast(value)
                break
            except ValueError:
                continue
        else:
            out[key] = value
    return out


def _rational(ns) -> Rational:
    return Rational(ns.n, ns.l)


def _solver_family(ns) -> tongue_solver.FamilySpec:
    return families.solver_family(ns.family, alpha=getattr(ns, "alpha", None),
                                  c_star=getattr(ns, "c_star", None))


def _sweep_second(ns) -> float:
    if getattr(ns, "c", None) is not None:
        return ns.c
    if getattr(ns, "beta", None) is not None:
        return ns.beta
    raise ValueError("need --c (nonlinear families) or --beta (linear)")


def _cmd_seq(ns) -> int:
    bits = char_seq(_rational(ns)).bits
    print(",".join(str(b) for b in bits))
    return 0


def _cmd_region(ns) -> int:
    lower, upper = linear_model.region_boundaries(_rational(ns), ns.alpha)
    print(f"{_fmt(lower)},{_fmt(upper)}")
    return 0


def _cmd_classify(ns) -> int:
    params = linear_model.LinearParams(ns.alpha, ns.beta)
    result = linear_model.classify(params, max_n=ns.max_period)
    if isinstance(result, Rational):
        print(f"{result.n},{result.l}")
    else:
        print(result.value)
    return 0


def _build_map(ns) -> piecewise_map.PiecewiseMap:
    alpha = ns.alpha
    if ns.family == "sine" and getattr(ns, "c_star", None) is not None:
        alpha = families.sine_alpha(ns.c_star)
    if alpha is None:
        raise ValueError("need --alpha (or --c-star for the sine family)")
    return families.sweep_map(ns.family, alpha, _sweep_second(ns))


def _cmd_orbit(ns) -> int:
    if ns.family == "linear":
        params = linear_model.LinearParams(ns.alpha, _sweep_second(ns))
        if params.alpha + params.beta <= 1:
            print("period,1")
            print(f"points,{_fmt(params.fixed_point)}")
            print("rotation,0/1")
            return 0
    m = _build_map(ns)
    x0 = ns.x0 if ns.x0 is not None else m.lo
    summary = piecewise_map.detect_period(m, x0, tol=ns.tol, max_iter=ns.max_iter,
                                          burn_in=ns.burn_in, max_period=ns.max_period)
    if summary is None:
        print("period,0")
        return 0
    print(f"period,{summary.period}")
    print(f"points,{','.join(_fmt(x) for x in summary.points)}")
    print(f"itinerary,{','.join(str(b) for b in summary.itinerary)}")
    print(f"rotation,{summary.rotation.numerator}/{summary.rotation.denominator}")
    print(f"transient,{summary.transient}")
    print(f"residual,{_fmt(summary.residual)}")
    return 0


def _cmd_check(ns) -> int:
    m = _build_map(ns)
    rep = piecewise_map.check_assumptions(m, max_n=ns.max_period)
    for key in ("a1", "a2", "a3", "a4"):
        print(f"{key},{str(getattr(rep, key)).lower()}")
    print(f"n,{rep.n if rep.n is not None else 0}")
    print(f"l,{rep.l if rep.l is not None else 0}")
    print(f"chain,{','.join(_fmt(q) for q in rep.chain)}")
    if rep.failure:
        print(f"failure,{rep.failure}")
    return 0 if rep.ok else NUMERIC_EXIT


def _cmd_solve(ns) -> int:
    fam = _solver_family(ns)
    r = _rational(ns)
    if ns.bracket_lo is not None and ns.bracket_hi is not None:
        result = tongue_solver.solve_tongue(fam, r, (ns.bracket_lo, ns.bracket_hi), tol=ns.tol)
    else:
        result = tongue_solver.solve_by_descent(fam, r, tol=ns.tol)
    if result is None:
        print("not-found")
        return NUMERIC_EXIT
    print(f"{_fmt(result.c_left)},{_fmt(result.c_right)},{result.iterations},"
          f"{_fmt(result.residuals[0])},{_fmt(result.residuals[1])}")
    return 0


def _cmd_atlas_tongues(ns) -> int:
    fam = _solver_family(ns)
    failures: list = []
    tongues = tongue_solver.farey_atlas(fam, ns.depth, tol=ns.tol, failures=failures)
    for r, reason in failures:
        print(f"warning: tongue {r} failed: {reason}", file=sys.stderr)
    if not tongues:
        print("no tongue solved", file=sys.stderr)
        return NUMERIC_EXIT
    text = atlas_mod.tongues_csv_text(tongues)
    if ns.out:
        Path(ns.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return 0


def _grid_dims(dims: str) -> tuple[int, int]:
    try:
        w, h = dims.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise ValueError(f"grid must look like 64x64, got {dims!r}") from None


def _cmd_atlas(ns) -> int:
    width, height = _grid_dims(ns.grid)
    defaults = {
        "linear": (0.05, 0.95, 0.05, 0.95),
        "quadratic": (0.05, 0.95, 0.02, 0.98),
        "sqrt": (0.05, 0.95, 0.02, 0.98),
        "sine": (0.30, 1.20, 0.05, 3.00),
    }[ns.family]
    cfg = atlas_mod.SweepConfig(
        family=ns.family, width=width, height=height,
        alpha_min=ns.alpha_min if ns.alpha_min is not None else defaults[0],
        alpha_max=ns.alpha_max if ns.alpha_max is not None else defaults[1],
        second_min=ns.second_min if ns.second_min is not None else defaults[2],
        second_max=ns.second_max if ns.second_max is not None else defaults[3],
        max_period=ns.max_period, tol=ns.tol, burn_in=ns.burn_in, seed=ns.seed,
        out_csv=ns.out, out_svg=ns.svg,
    )
    result = atlas_mod.run_atlas(cfg)
    text = atlas_mod.atlas_csv_text(result)
    if ns.out:
        Path(ns.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    if ns.svg:
        if not ns.out:
            raise ValueError("--svg needs --out so the SVG can be rendered from the CSV")
        atlas_mod.render_svg(ns.out, ns.svg)
    return 0


def _cmd_conjugacy(ns) -> int:
    params = linear_model.LinearParams(ns.alpha, ns.beta)
    r = linear_model.classify(params, max_n=ns.max_period)
    if not isinstance(r, Rational):
        raise ValueError(f"source parameters classify as {r.value}; need a tongue interior")
    if ns.target_family == "linear":
        if ns.target_beta is None:
            raise ValueError("linear target needs --target-beta")
        target = piecewise_map.from_linear(ns.target_alpha, ns.target_beta)
    else:
        if ns.target_c is None:
            raise ValueError("nonlinear target needs --target-c")
        target = families.sweep_map(ns.target_family, ns.target_alpha, ns.target_c)
    cmap = conj_mod.build_homeomorphism(params, r, target, depth=ns.depth)
    print(f"rational,{r.n},{r.l}")
    print(f"knots,{cmap.knots_s.size}")
    print(f"residual,{_fmt(cmap.residual)}")
    if ns.out:
        lines = ["side_s,side_t"]
        lines.extend(f"{_fmt(s)},{_fmt(t)}" for s, t in zip(cmap.knots_s, cmap.knots_t))
        Path(ns.out).write_text("\n".join(lines) + "\n", encoding="ascii")
    return 0


def _overlay(pair: str) -> tuple[float, str]:
    if "=" not in pair:
        raise argparse.ArgumentTypeError(f"overlay must be alpha=path, got {pair!r}")
    a, path = pair.split("=", 1)
    return float(a), path


def _cmd_render(ns) -> int:
    overlays = ns.tongues or None
    atlas_mod.render_svg(ns.grid, ns.svg, tongue_overlays=overlays)
    return 0


def build_parser(config: dict | None = None) -> _Parser:
    parser = _Parser(prog="fareytongues",
                     description="Arnold-tongue structure of piecewise contracting interval maps")
    parser.add_argument("--config", help="key = value defaults file; flags override")
    sub = parser.add_subparsers(dest="command", required=True)

    subparsers = []

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        subparsers.append(p)
        return p

    p = add("seq", _cmd_seq, help="characteristic bit sequence of a tongue")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)

    p = add("region", _cmd_region, help="linear-model tongue boundaries at a slope")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)

    p = add("classify", _cmd_classify, help="tongue containing a linear parameter pair")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--max-period", type=int, default=64)

    for name, func in (("orbit", _cmd_orbit), ("check", _cmd_check)):
        p = add(name, func, help=f"{name} a family member map")
        p.add_argument("--family", choices=families.FAMILY_NAMES, default="linear")
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--c", type=float)
        p.add_argument("--c-star", type=float)
        p.add_argument("--x0", type=float)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--max-iter", type=int, default=20000)
        p.add_argument("--burn-in", type=int, default=10000)
        p.add_argument("--max-period", type=int, default=64)

    p = add("solve", _cmd_solve, help="solve one tongue interval")
    p.add_argument("--family", choices=families.FAMILY_NAMES, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--c-star", type=float)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--bracket-lo", type=float)
    p.add_argument("--bracket-hi", type=float)
    p.add_argument("--tol", type=float, default=tongue_solver.DEFAULT_TOL)

    p = add("atlas-tongues", _cmd_atlas_tongues, help="solve a whole tongue atlas")
    p.add_argument("--family", choices=families.FAMILY_NAMES, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--c-star", type=float)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--tol", type=float, default=tongue_solver.DEFAULT_TOL)
    p.add_argument("--out")

    p = add("atlas", _cmd_atlas, help="period sweep over a parameter grid")
    p.add_argument("--family", choices=families.FAMILY_NAMES, default="linear")
    p.add_argument("--grid", default="64x64")
    p.add_argument("--alpha-min", type=float)
    p.add_argument("--alpha-max", type=float)
    p.add_argument("--beta-min", "--c-min", dest="second_min", type=float)
    p.add_argument("--beta-max", "--c-max", dest="second_max", type=float)
    p.add_argument("--max-period", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--burn-in", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--svg")

    p = add("conjugacy", _cmd_conjugacy, help="conjugacy between a linear map and a target")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--target-family", choices=families.FAMILY_NAMES, required=True)
    p.add_argument("--target-alpha", type=float, required=True)
    p.add_argument("--target-beta", type=float)
    p.add_argument("--target-c", type=float)
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--max-period", type=int, default=64)
    p.add_argument("--out")

    p = add("render", _cmd_render, help="render a sweep CSV (plus tongue overlays) to SVG")
    p.add_argument("--grid", required=True, help="sweep CSV produced by the atlas verb")
    p.add_argument("--tongues", action="append", type=_overlay,
                   help="alpha=path overlay, repeatable")
    p.add_argument("--svg", required=True)

    if config:
        # subparsers parse into a fresh namespace, so config defaults must be
        # planted on every subparser once all of its arguments exist
        for p in subparsers:
            p.set_defaults(**config)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config = None
        if "--config" in argv:
            cfg_path = argv[argv.index("--config") + 1]
            config = load_config(cfg_path)
        parser = build_parser(config)
        ns = parser.parse_args(argv)
        return ns.func(ns)
    except SystemExit:
        raise
    except (FamilyError, atlas_mod.CsvFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (NonOverlapError, ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERIC_EXIT


if __name__ == "__main__":
    sys.exit(main())
