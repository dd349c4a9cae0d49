"""Command-line entry point: ``spinab verify | curve | kappa``.

Exit codes: 0 success, 1 failed check or I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from fractions import Fraction

from .errors import SpinabError

SUITE_NAMES = ("all", "algebra", "potentials", "eigen", "interference", "dirac")
CURVE_KINDS = ("ordinary", "magnetic", "spin")

VERIFY_DEFAULTS = {"suite": "all", "seed": 42, "tol_scale": 1.0, "out": None}
CURVE_DEFAULTS = {
    "kind": "ordinary", "mu": [-1.0, 0.0, 1.0, 2.0], "l": 20, "m": 2, "delta2": None,
    "flux_ratio": None, "N": None, "min": 0.0, "max": 4 * math.pi, "n": 1024, "out": None,
}
KAPPA_DEFAULTS = {"g": 2, "lmax": 3, "out": None}


class UsageFailure(Exception):
    pass


def fmt(x: float) -> str:
    """12 significant digits, scientific notation."""
    return f"{x:.11e}"


_ANGLE = re.compile(r"^\s*([+-]?)(\d*(?:\.\d*)?)\s*(pi)?\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_angle(text: str) -> float:
    """Parse '3pi/5', '-pi', 'pi/2', '2pi', '0.75' or '1/3'. Rationals are exact."""
    m = _ANGLE.match(str(text))
    if not m or (not m.group(2) and not m.group(3)):
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    sign, coef, has_pi, den = m.groups()
    value = Fraction(coef) if coef not in ("", ".") else Fraction(1)
    if den is not None:
        value /= Fraction(den)
    if sign == "-":
        value = -value
    return float(value) * math.pi if has_pi else float(value)


def _read_config(path):
    if path is None:
        return {}
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageFailure(f"{path}:{lineno}: expected key=value")
                k, v = line.split("=", 1)
                out[k.strip().replace("-", "_")] = v.strip()
    except OSError as exc:
        raise UsageFailure(f"cannot read config {path}: {exc}") from exc
    return out


def _merge(args, defaults, config, converters):
    """CLI value if given, else config file value, else default."""
    merged = {}
    for key, default in defaults.items():
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            merged[key] = cli_val
        elif key in config:
            conv = converters.get(key, str)
            try:
                merged[key] = conv(config[key])
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageFailure(f"bad config value for {key}: {config[key]!r}") from exc
        else:
            merged[key] = default
    unknown = set(config) - set(defaults) - {"config"}
    if unknown:
        raise UsageFailure(f"unknown config keys: {', '.join(sorted(unknown))}")
    return merged


def _suite_name(v):
    if v not in SUITE_NAMES:
        raise argparse.ArgumentTypeError(f"unknown suite {v!r}; choose from {', '.join(SUITE_NAMES)}")
    return v


def _positive(v):
    x = float(v)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _nonneg_int(v):
    x = int(v)
    if x < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return x


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spinab", description="Spin-source and solenoid phase toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", type=_suite_name, help="one of " + ", ".join(SUITE_NAMES))
    v.add_argument("--seed", type=_nonneg_int)
    v.add_argument("--tol-scale", dest="tol_scale", type=_positive)
    v.add_argument("--out", help="write check results as CSV")
    v.add_argument("--config", help="key=value defaults file")

    c = sub.add_parser("curve", help="write an interference curve as CSV")
    c.add_argument("--kind", choices=CURVE_KINDS)
    c.add_argument("--mu", type=float, nargs=4, metavar=("MU1", "MU2", "MU3", "MU4"))
    c.add_argument("--l", type=_nonneg_int)
    c.add_argument("--m", type=int)
    c.add_argument("--delta2", type=parse_angle, help="solenoid phase, e.g. 3pi/5")
    c.add_argument("--flux-ratio", dest="flux_ratio", type=float)
    c.add_argument("--N", type=_positive, help="normaliser (spin default: normalised)")
    c.add_argument("--min", type=parse_angle)
    c.add_argument("--max", type=parse_angle)
    c.add_argument("--n", type=int)
    c.add_argument("--out", help="CSV path (default stdout)")
    c.add_argument("--config")

    k = sub.add_parser("kappa", help="tabulate kappa and nu")
    k.add_argument("--g", type=int)
    k.add_argument("--lmax", type=_nonneg_int)
    k.add_argument("--out")
    k.add_argument("--config")
    return ap


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_verify(opts) -> int:
    from .suites import run_suite

    checks = run_suite(opts["suite"], int(opts["seed"]))
    scale = float(opts["tol_scale"])
    n_pass = n_fail = 0
    rows = ["name,value,bound,mode,status"]
    for c in checks:
        ok = c.passed(scale)
        n_pass += ok
        n_fail += not ok
        status = "PASS" if ok else "FAIL"
        print(f"{c.name:<44s} {fmt(float(c.value))} {c.mode:>5s} {fmt(c.bound(scale))} {status}")
        rows.append(f"{c.name},{fmt(float(c.value))},{fmt(c.bound(scale))},{c.mode},{status}")
    if opts["out"] is not None:
        _write(opts["out"], "\n".join(rows) + "\n")
    print(f"SUMMARY pass={n_pass} fail={n_fail}")
    return 0 if n_fail == 0 else 1


def cmd_curve(opts) -> int:
    from . import interference as itf

    kind = opts["kind"]
    if int(opts["n"]) < 2:
        raise UsageFailure("--n must be at least 2")
    if kind == "spin":
        mu = [float(x) for x in opts["mu"]]
        if len(mu) != 4:
            raise UsageFailure("--mu needs four values")
        params = itf.InterferenceParams(*mu, int(opts["l"]), int(opts["m"]), N=opts["N"])
    elif kind == "magnetic":
        if opts["delta2"] is None and opts["flux_ratio"] is None:
            raise UsageFailure("magnetic curves need --delta2 or --flux-ratio")
        if opts["delta2"] is not None and opts["flux_ratio"] is not None:
            raise UsageFailure("give only one of --delta2 and --flux-ratio")
        params = {"N": 0.5 if opts["N"] is None else opts["N"],
                  "delta2": opts["delta2"], "flux_ratio": opts["flux_ratio"]}
    else:
        params = {"N": 0.5 if opts["N"] is None else opts["N"]}
    samples = itf.curve(kind, params, (opts["min"], opts["max"], int(opts["n"])))
    lines = ["delta,P"] + [f"{fmt(s.delta)},{fmt(s.value)}" for s in samples]
    _write(opts["out"], "\n".join(lines) + "\n")
    return 0


def cmd_kappa(opts) -> int:
    from .spectra import SpinQN

    g = int(opts["g"])
    lines = ["l,branch,K,kappa,nu"]
    for l in range(int(opts["lmax"]) + 1):
        for b in ("A", "B"):
            if b == "B" and l == 0:
                continue
            qn = SpinQN(g, l, 0, b)
            lines.append(f"{l},{b},{fmt(qn.K)},{fmt(qn.kappa)},{fmt(qn.nu)}")
    _write(opts["out"], "\n".join(lines) + "\n")
    return 0


_CONVERTERS = {
    "verify": {"suite": _suite_name, "seed": _nonneg_int, "tol_scale": _positive},
    "curve": {"kind": str, "mu": lambda s: [float(x) for x in s.replace(",", " ").split()], "l": int,
              "m": int, "delta2": parse_angle, "flux_ratio": float, "N": _positive, "min": parse_angle,
              "max": parse_angle, "n": int},
    "kappa": {"g": int, "lmax": _nonneg_int},
}
_DEFAULTS = {"verify": VERIFY_DEFAULTS, "curve": CURVE_DEFAULTS, "kappa": KAPPA_DEFAULTS}
_COMMANDS = {"verify": cmd_verify, "curve": cmd_curve, "kappa": cmd_kappa}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        config = _read_config(getattr(args, "config", None))
        opts = _merge(args, _DEFAULTS[args.command], config, _CONVERTERS[args.command])
        if args.command == "curve" and opts["kind"] not in CURVE_KINDS:
            raise UsageFailure(f"unknown curve kind {opts['kind']!r}")
        return _COMMANDS[args.command](opts)
    except UsageFailure as exc:
        parser.print_usage(sys.stderr)
        print(f"spinab: error: {exc}", file=sys.stderr)
        return 2
    except SpinabError as exc:
        # invalid parameter combinations such as m = 0 for spin curves
        print(f"spinab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"spinab: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
