"""Command-line interface: exact computations with machine-readable output.

All numbers are serialized as exact strings ("p/q", "p/q + r/s*sqrt(t/u)");
identical configurations produce byte-identical JSON.  Exit codes: 0 on
success, 1 on a verification failure, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .field import QQ, format_value
from .ratfunc import Polynomial, RationalFunction
from .catalog import (
    CURVE_CONSTRAINTS,
    CURVE_LABELS,
    CURVE_NAMES,
    CURVE_PARAMETERS,
    build_curve,
)
from .curve import ConstraintViolated, CurveError, analyze_geometry
from .recursion import RecursionTable
from .free_energy import free_energy
from .quantize import divisor_from_label_data, quantize, riccati_expand, verify_quantization, voros_from_w, voros_riccati
from . import oracles


class ConfigError(ValueError):
    pass


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("HGTR_THREADS", "1")))
    except ValueError:
        return 1


def run_tasks(tasks):
    """Deterministic evaluation of a list of thunks, optionally threaded."""
    n = _thread_count()
    if n == 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=n) as pool:
        futures = [pool.submit(t) for t in tasks]
        return [f.result() for f in futures]


def _parse_rational(text: str) -> QQ:
    try:
        return QQ(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError("bad rational %r" % text) from exc


def _collect_params(args) -> dict:
    params = {}
    if args.lambda0 is not None:
        params["lambda0"] = _parse_rational(args.lambda0)
    if args.lambda1 is not None:
        params["lambda1"] = _parse_rational(args.lambda1)
    if args.lambda_inf is not None:
        params["lambda_inf"] = _parse_rational(args.lambda_inf)
    if args.lambdas is not None:
        names = CURVE_PARAMETERS[args.curve]
        values = [v for v in args.lambdas.split(",") if v]
        if len(values) != len(names):
            raise ConfigError("--lambda expects %d comma-separated values for %s" % (len(names), args.curve))
        for name, v in zip(names, values):
            params[name] = _parse_rational(v)
    return params


def _collect_nu(args) -> dict:
    nu = {}
    if getattr(args, "nu0", None) is not None:
        nu["0"] = _parse_rational(args.nu0)
    if getattr(args, "nu1", None) is not None:
        nu["1"] = _parse_rational(args.nu1)
    if getattr(args, "nu_inf", None) is not None:
        nu["inf"] = _parse_rational(args.nu_inf)
    if getattr(args, "nu", None):
        for item in args.nu:
            if "=" not in item:
                raise ConfigError("--nu expects label=value, got %r" % item)
            key, val = item.split("=", 1)
            nu[key.strip()] = _parse_rational(val)
    return nu


def _geometry(args):
    if args.curve not in CURVE_NAMES:
        raise ConfigError("unknown curve %r (see `hgtr catalog`)" % args.curve)
    params = _collect_params(args)
    missing = [p for p in CURVE_PARAMETERS[args.curve] if p not in params]
    if missing:
        raise ConfigError("missing parameters: %s" % ", ".join(missing))
    try:
        curve = build_curve(args.curve, params)
        return params, analyze_geometry(curve)
    except ConstraintViolated as exc:
        raise ConfigError(str(exc)) from exc


def _poly_strings(p: Polynomial):
    return [format_value(c) for c in p.coeffs]


def _rf_json(f: RationalFunction):
    return {"numerator": _poly_strings(f.num), "denominator": _poly_strings(f.den)}


def _form_json(form):
    if form[0] == "f":
        return {"pole": format_value(form[1]), "power": form[2]}
    return {"at_infinity": True, "power": form[1]}


def _differential_json(w):
    items = []
    for key, c in w.canonical_items():
        items.append({"coefficient": format_value(c), "factors": [_form_json(f) for f in key]})
    return items


def _emit(payload, args) -> None:
    if getattr(args, "format", "json") == "csv":
        lines = []
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (list, dict)):
                v = json.dumps(v, sort_keys=True, separators=(",", ":"))
            lines.append("%s,%s" % (k, v))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p):
    p.add_argument("--curve", required=True, help="catalog curve name")
    p.add_argument("--lambda0", help="exact rational value of lambda0")
    p.add_argument("--lambda1", help="exact rational value of lambda1")
    p.add_argument("--lambda-inf", dest="lambda_inf", help="exact rational value of lambda_inf")
    p.add_argument("--lambda", dest="lambdas", help="comma-separated parameter values in catalog order")
    p.add_argument("--out", help="write output to a file instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _add_nu(p):
    p.add_argument("--nu0", help="difference nu_{0+} - nu_{0-}")
    p.add_argument("--nu1", help="difference nu_{1+} - nu_{1-}")
    p.add_argument("--nu-inf", dest="nu_inf", help="difference nu_{inf+} - nu_{inf-}")
    p.add_argument("--nu", action="append", help="label=value difference (repeatable)")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hgtr", description=__doc__)
    ap.add_argument("--config", help="key=value file whose entries mirror the flags")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list the curve catalog")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("wgn", help="one correlation differential as a pole-basis sum")
    _add_common(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("free-energy", help="free energies F_2..F_gmax")
    _add_common(p)
    p.add_argument("--g-max", dest="g_max", type=int, default=3)

    p = sub.add_parser("voros", help="Voros coefficients for one singular label")
    _add_common(p)
    _add_nu(p)
    p.add_argument("--label", default=None, help="singular label (0, 1 or inf); default: the curve's only label")
    p.add_argument("--m-max", dest="m_max", type=int, default=5)
    p.add_argument("--method", choices=("correlators", "riccati", "closed-form"), default="correlators")

    p = sub.add_parser("quantize", help="quantum-curve coefficient functions")
    _add_common(p)
    _add_nu(p)

    p = sub.add_parser("verify-quantization", help="exit 0 iff the quantization identities hold")
    _add_common(p)
    _add_nu(p)

    p = sub.add_parser("verify", help="run identity checks")
    _add_common(p)
    _add_nu(p)
    p.add_argument("--checks", default="relation-i,three-term,contiguity,appendix-b")
    p.add_argument("--order", type=int, default=8)
    return ap


def _apply_config_file(argv):
    """Expand --config key=value lines into flags (flags win)."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    extra = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError("bad config line %r" % line)
            key, val = line.split("=", 1)
            extra += ["--" + key.strip().replace("_", "-"), val.strip()]
    return argv[: idx] + argv[idx + 2 :] + extra


def _label_point(geom, label_key):
    for b in geom.labels:
        if (b.is_infinity and label_key == "inf") or (not b.is_infinity and str(b.value) == label_key):
            return b
    raise ConfigError("label %r is not a singular label of this curve" % label_key)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config_file(argv)
    except (OSError, ConfigError) as exc:
        print("configuration error: %s" % exc, file=sys.stderr)
        return 2
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print("configuration error: %s" % exc, file=sys.stderr)
        return 2
    except (CurveError, oracles.UnknownCurve, oracles.PoleOfFormula) as exc:
        print("configuration error: %s" % exc, file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "catalog":
        payload = {}
        for name in CURVE_NAMES:
            payload[name] = {
                "parameters": list(CURVE_PARAMETERS[name]),
                "constraints": CURVE_CONSTRAINTS[name],
                "singular_labels": list(CURVE_LABELS[name]),
            }
        _emit(payload, args)
        return 0

    if args.command == "wgn":
        params, geom = _geometry(args)
        if args.g < 0 or args.n < 1 or 2 * args.g - 2 + args.n < 1:
            raise ConfigError("need g >= 0, n >= 1 and 2g - 2 + n >= 1")
        table = RecursionTable(geom)
        w = table.compute_w(args.g, args.n)
        _emit({"curve": args.curve, "g": args.g, "n": args.n, "terms": _differential_json(w)}, args)
        return 0

    if args.command == "free-energy":
        params, geom = _geometry(args)
        if args.g_max < 2:
            raise ConfigError("--g-max must be at least 2")
        table = RecursionTable(geom)
        results = run_tasks([lambda g=g: (g, free_energy(table, g)[0]) for g in range(2, args.g_max + 1)])
        payload = {str(g): format_value(v) for g, v in results}
        _emit(payload, args)
        return 0

    if args.command == "voros":
        params, geom = _geometry(args)
        nu = _collect_nu(args)
        if not geom.labels:
            raise ConfigError("curve %s has no singular labels (trivial Voros data)" % args.curve)
        label_key = args.label or ("inf" if geom.labels[0].is_infinity else str(geom.labels[0].value))
        label = _label_point(geom, label_key)
        if args.method == "closed-form":
            values = [oracles.oracle_voros(args.curve, label_key, m, params, nu) for m in range(1, args.m_max + 1)]
        else:
            divisor = divisor_from_label_data(geom, nu)
            if args.method == "correlators":
                values = voros_from_w(geom, divisor, label, args.m_max).coefficients
            else:
                qc = quantize(geom, divisor)
                wkb = riccati_expand(qc, geom, args.m_max)
                values = voros_riccati(wkb, geom, label, args.m_max).coefficients
        payload = {
            "curve": args.curve,
            "label": label_key,
            "method": args.method,
            "coefficients": [format_value(v) for v in values],
        }
        _emit(payload, args)
        return 0

    if args.command in ("quantize", "verify-quantization"):
        params, geom = _geometry(args)
        nu = _collect_nu(args)
        divisor = divisor_from_label_data(geom, nu)
        qc = quantize(geom, divisor)
        if args.command == "verify-quantization":
            ok = verify_quantization(geom, divisor, qc)
            _emit({"verified": bool(ok)}, args)
            return 0 if ok else 1
        payload = {name: _rf_json(f) for name, f in qc.coefficients().items()}
        _emit(payload, args)
        return 0

    if args.command == "verify":
        params, geom = _geometry(args)
        nu = _collect_nu(args)
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        tasks = []
        for check in checks:
            if check == "relation-i":
                for b in geom.labels:
                    key = "inf" if b.is_infinity else str(b.value)
                    tasks.append(("relation-i:%s" % key, lambda k=key: oracles.check_relation_i(args.curve, k, params, nu, args.order)))
            elif check == "three-term":
                for b in geom.labels:
                    key = "inf" if b.is_infinity else str(b.value)
                    tasks.append(("three-term:%s" % key, lambda k=key: oracles.check_three_term(args.curve, k, params, args.order)))
            elif check == "contiguity":
                if args.curve == "gauss":
                    tasks.append(("contiguity", lambda: oracles.check_contiguity_gauss(params, nu, min(args.order, 6), with_a_diagnostic=True)))
            elif check == "appendix-b":
                tasks.append(("appendix-b", lambda: oracles.check_appendix_toolbox(args.order)))
            else:
                raise ConfigError("unknown check %r" % check)
        results = run_tasks([t for _, t in tasks])
        payload = {name: bool(res) for (name, _), res in zip(tasks, results)}
        _emit(payload, args)
        return 0 if all(payload.values()) else 1

    raise ConfigError("unknown command %r" % args.command)


if __name__ == "__main__":
    sys.exit(main())
