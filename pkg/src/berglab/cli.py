"""Batch front-end: kernel/oracle/moment evaluation, asymptotic sweeps, and
the pass/fail verification suites.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
non-convergence.  CSV output uses fixed 15-significant-digit scientific
formatting with a header row, so runs diff cleanly.  BERGLAB_THREADS caps
the sweep fan-out; results are emitted in grid order regardless.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

from . import asymptotics
from .ball_kernel import harmonic_ball_diag, holomorphic_ball_diag
from .errors import (
    BerglabError,
    NoConvergence,
    NoDecay,
    ParseError,
    ValidationError,
)
from .halfspace_kernel import harmonic_halfspace_diag, siegel_holo_diag
from .oracles import (
    HARM_GEOMETRIES,
    HOLO_GEOMETRIES,
    OracleSelector,
    oracle_harm_diag,
    oracle_holo_diag,
)
from .quadrature import moment_table
from .weights import RadialWeightProfile, VerticalWeightProfile, parse_weight

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3

KERNEL_GEOMETRIES = ("ball", "fock", "disc", "complex-ball", "halfspace", "siegel")
ORACLE_GEOMETRIES = HOLO_GEOMETRIES + HARM_GEOMETRIES
THEOREMS = ("1", "2", "3", "origin", "holo")


def _fmt(x):
    return f"{x:.14e}"


@dataclass
class RunConfig:
    command: str
    weight: str = None
    geometry: str = None
    n: int = None
    m: int = None
    t: float = None
    y: float = None
    alpha: float = None
    alphas: tuple = None
    kmax: int = None
    theorem: str = None
    tol: float = 1e-9
    out: str = None
    suite: str = None
    path: str = "series"
    inner: str = "auto"

    def profile(self):
        return parse_weight(self.weight)


def _parse_alphas(text):
    if isinstance(text, (list, tuple)):
        vals = [float(v) for v in text]
    else:
        try:
            vals = [float(v) for v in str(text).split(",") if v]
        except ValueError as exc:
            raise ParseError(f"bad alpha list: {exc}") from None
    if not vals:
        raise ParseError("empty alpha list")
    return tuple(vals)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="berglab",
        description="Weighted harmonic/holomorphic kernel diagonals and their "
        "high-power asymptotics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *names):
        if "weight" in names:
            p.add_argument("--weight", help="weight spec, e.g. power:1 or vert-power:2")
        if "geometry" in names:
            p.add_argument("--geometry")
        for flag, typ in (
            ("--alpha", float),
            ("--n", int),
            ("--m", int),
            ("--t", float),
            ("--y", float),
            ("--tol", float),
            ("--kmax", int),
        ):
            if flag.lstrip("-") in names:
                p.add_argument(flag, type=typ)
        if "alphas" in names:
            p.add_argument("--alphas")
        if "out" in names:
            p.add_argument("--out")
        p.add_argument("--config", help="JSON file of flag values (flags override)")

    p = sub.add_parser("kernel", help="evaluate one kernel diagonal")
    common(p, "weight", "geometry", "alpha", "n", "m", "t", "y", "tol", "out")
    p.add_argument("--inner", choices=("auto", "closed", "numeric"), default=None)

    p = sub.add_parser("moments", help="weight moment table as CSV")
    common(p, "weight", "alpha", "kmax", "tol", "out")

    p = sub.add_parser("oracle", help="closed-form kernel value")
    common(p, "geometry", "alpha", "n", "m", "t", "y", "out")

    for name in ("asymptotics", "sweep"):
        p = sub.add_parser(name, help="scaled kernels vs predicted leading term")
        common(p, "weight", "alphas", "n", "m", "t", "y", "tol", "out")
        p.add_argument("--theorem", choices=THEOREMS)
        p.add_argument("--path", choices=("series", "oracle"), default=None)
        p.add_argument("--inner", choices=("auto", "closed", "numeric"), default=None)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--out")
    p.add_argument("--config")
    return parser


def parse_config(argv):
    """argv -> validated RunConfig; --config supplies defaults, flags override."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    values = {}
    cfg_path = getattr(ns, "config", None)
    if cfg_path:
        try:
            with open(cfg_path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read config file: {exc}") from None
        if not isinstance(doc, dict):
            raise ParseError("config file must hold a JSON object")
        known = {f.name for f in fields(RunConfig)}
        for key, val in doc.items():
            if key not in known:
                raise ParseError(f"unknown config key {key!r}")
            values[key] = val
    for f in fields(RunConfig):
        flag = getattr(ns, f.name, None)
        if flag is not None:
            values[f.name] = flag
    values["command"] = ns.command
    if "alphas" in values and values["alphas"] is not None:
        values["alphas"] = _parse_alphas(values["alphas"])
    config = RunConfig(**values)
    _validate(config)
    return config


def _validate(config):
    if config.command not in ("kernel", "moments", "oracle", "asymptotics", "sweep", "verify"):
        raise ValidationError(f"unknown command {config.command!r}")
    if config.tol is not None and config.tol <= 0.0:
        raise ValidationError("tolerance must be positive")
    if config.alphas is not None:
        if any(b <= a for a, b in zip(config.alphas, config.alphas[1:])):
            raise ValidationError("alpha list must be strictly increasing")
    if config.weight is not None:
        parse_weight(config.weight)
    if config.command == "kernel" and config.geometry not in KERNEL_GEOMETRIES:
        raise ValidationError(f"kernel geometry must be one of {KERNEL_GEOMETRIES}")
    if config.command == "oracle" and config.geometry not in ORACLE_GEOMETRIES:
        raise ValidationError(f"oracle geometry must be one of {ORACLE_GEOMETRIES}")
    if config.command in ("asymptotics", "sweep"):
        if config.theorem not in THEOREMS:
            raise ValidationError(f"--theorem must be one of {THEOREMS}")
        if config.alphas is None:
            raise ValidationError("an increasing --alphas grid is required")


def render(config):
    """RunConfig -> argv round trip (parse_config(render(c)) == c)."""
    argv = [config.command]
    for f in fields(RunConfig):
        if f.name == "command":
            continue
        val = getattr(config, f.name)
        if val is None:
            continue
        if f.name == "alphas":
            val = ",".join(repr(a) for a in val)
        default = RunConfig.__dataclass_fields__[f.name].default
        if val == default:
            continue
        argv.extend([f"--{f.name}", str(val)])
    return argv


def _open_out(config):
    return open(config.out, "w") if config.out else sys.stdout


def _threads():
    try:
        return max(1, int(os.environ.get("BERGLAB_THREADS", "1")))
    except ValueError:
        return 1


def _run_kernel(config, out):
    profile = config.profile()
    tol = config.tol
    geom = config.geometry
    if geom in ("ball", "fock"):
        if not isinstance(profile, RadialWeightProfile):
            raise ValidationError("ball/fock kernels need a radial weight")
        infinite = math.isinf(profile.support_radius)
        if (geom == "fock") != infinite:
            raise ValidationError("fock needs exp:* weights; ball needs finite support")
        ev = harmonic_ball_diag(profile, config.alpha, config.n, config.t, tol)
        coord = config.t
    elif geom in ("disc", "complex-ball"):
        if not isinstance(profile, RadialWeightProfile):
            raise ValidationError("disc/complex-ball kernels need a radial weight")
        m = 1 if geom == "disc" else config.m
        ev = holomorphic_ball_diag(profile, config.alpha, m, config.t, tol)
        coord = config.t
    elif geom == "halfspace":
        if not isinstance(profile, VerticalWeightProfile):
            raise ValidationError("halfspace kernels need a vertical weight")
        ev = harmonic_halfspace_diag(
            profile, config.alpha, config.n, config.y, tol, inner=config.inner
        )
        coord = config.y
    else:
        if not isinstance(profile, VerticalWeightProfile):
            raise ValidationError("siegel kernels need a vertical weight")
        ev = siegel_holo_diag(
            profile, config.alpha, config.m, config.y, tol, inner=config.inner
        )
        coord = config.y
    print("alpha,coordinate,value,log_value,terms_used,tail_bound", file=out)
    row = [
        _fmt(config.alpha),
        _fmt(coord),
        _fmt(ev.value),
        _fmt(ev.log_value),
        str(ev.terms_used),
        _fmt(ev.tail_bound),
    ]
    print(",".join(row), file=out)
    return EXIT_OK


def _run_moments(config, out):
    profile = config.profile()
    table = moment_table(profile, config.alpha, config.kmax)
    print("k,rho_k,err", file=out)
    for k in range(config.kmax + 1):
        print(
            f"{k},{_fmt(table.values[k])},{_fmt(table.error_estimates[k])}",
            file=out,
        )
    return EXIT_OK


def _run_oracle(config, out):
    geom = config.geometry
    if geom in HOLO_GEOMETRIES:
        dim = config.m if geom == "complex_ball" else 1
        coord = config.y if geom == "halfplane" else config.t
        sel = OracleSelector(geom, "holomorphic", config.alpha, dim, coord)
        val = oracle_holo_diag(sel)
    else:
        coord = config.y if geom == "halfspace" else config.t
        sel = OracleSelector(geom, "harmonic", config.alpha, config.n, coord)
        val = oracle_harm_diag(sel)
    print("alpha,coordinate,value,log_value", file=out)
    print(
        ",".join([_fmt(config.alpha), _fmt(coord), _fmt(val.value), _fmt(val.log_value)]),
        file=out,
    )
    return EXIT_OK


def _sweep_report(config):
    profile = config.profile()
    tol = config.tol
    thm = config.theorem
    if thm == "2":
        return asymptotics.thm2_report(
            profile, config.n, config.t, list(config.alphas), tol,
            use_oracle=config.path == "oracle",
        )
    if thm == "3":
        return asymptotics.thm3_report(
            profile, config.n, config.y, list(config.alphas), tol, inner=config.inner
        )
    if thm == "origin":
        return asymptotics.origin_report(profile, config.n, list(config.alphas), tol)
    if thm == "holo":
        return asymptotics.holo_report(profile, config.m, config.t, list(config.alphas), tol)
    return asymptotics.thm1_report(profile, config.n, config.t, list(config.alphas), tol)


def _run_sweep(config, out, with_value):
    # Fan out per-alpha evaluations, then assemble in grid order.
    alphas = list(config.alphas)
    workers = _threads()
    if workers > 1:
        single = [
            RunConfig(**{**config.__dict__, "alphas": (a,)}) for a in alphas
        ]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_sweep_report, single))
        scaled = [r.scaled_values[0] for r in reports]
        prediction = reports[0].predicted_leading
        ratios = [r.ratios[0] for r in reports]
    else:
        report = _sweep_report(config)
        scaled = report.scaled_values
        prediction = report.predicted_leading
        ratios = report.ratios
    if with_value:
        print("alpha,value,scaled,prediction,ratio", file=out)
    else:
        print("alpha,scaled_value,prediction,ratio", file=out)
    for i, a in enumerate(alphas):
        row = [_fmt(a)]
        if with_value:
            value = _raw_kernel_value(config, a)
            row.append(_fmt(value))
        row.extend([_fmt(scaled[i]), _fmt(prediction), _fmt(ratios[i])])
        print(",".join(row), file=out)
    return EXIT_OK


def _raw_kernel_value(config, alpha):
    profile = config.profile()
    thm = config.theorem
    if thm == "3":
        return harmonic_halfspace_diag(
            profile, alpha, config.n, config.y, config.tol, inner=config.inner
        ).value
    if thm == "holo":
        return holomorphic_ball_diag(profile, alpha, config.m, config.t, config.tol).value
    t = 0.0 if thm == "origin" else config.t
    return harmonic_ball_diag(profile, alpha, config.n, t, config.tol).value


def _run_verify(config, out):
    from . import acceptance

    try:
        results = acceptance.run_suite(config.suite)
    except KeyError:
        raise ValidationError(
            f"unknown suite {config.suite!r}; choose from {sorted(acceptance.SUITES)} or 'all'"
        ) from None
    failed = 0
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(
            f"{status}  {r.name:<{width}}  got={r.got:.6g}  want={r.want:.6g}  tol={r.tol:.2g}",
            file=out,
        )
        if not r.passed:
            failed += 1
            print(f"FAIL,{r.name},{r.got!r},{r.want!r},{r.tol!r}", file=out)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


def run(config):
    """Execute a validated RunConfig; returns the process exit code."""
    out = _open_out(config)
    try:
        if config.command == "kernel":
            return _run_kernel(config, out)
        if config.command == "moments":
            return _run_moments(config, out)
        if config.command == "oracle":
            return _run_oracle(config, out)
        if config.command == "asymptotics":
            return _run_sweep(config, out, with_value=False)
        if config.command == "sweep":
            return _run_sweep(config, out, with_value=True)
        return _run_verify(config, out)
    finally:
        if out is not sys.stdout:
            out.close()


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(argv)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return run(config)
    except (NoConvergence, NoDecay) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BerglabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
