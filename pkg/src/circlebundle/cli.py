"""Batch command-line driver.

Every invocation runs one command and writes a single JSON report to the
output path (stdout by default); a one-line summary goes to stderr.
Exit status: 0 pass, 1 fail, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import interchange as io
from .bundles import (
    NeedsMoreSamples,
    OrientationMismatch,
    common_point,
    decompose_quaternionic,
    descriptor_from_A,
    determine_family,
    fit_bundle,
    lines_subspace,
    barycentric_combine,
)
from .cone import ConditionViolation, UnsupportedDimension, canonicalize, check_conditions
from .scalars import EXACT, FLOAT, UnsupportedBackend, parse_exact
from .transforms import synthesize_rectifier, verify_rounds_lines

COMMANDS = (
    "check",
    "canonicalize",
    "family",
    "decompose",
    "common-point",
    "centers",
    "lines",
    "synthesize",
    "verify",
    "fit",
    "combine",
)

DEFAULT_BACKEND = {"verify": FLOAT, "fit": FLOAT}

EXIT = {"pass": 0, "fail": 1, "error": 2}


class InputError(ValueError):
    pass


def _load_json(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    # reports produced by this tool can be fed back in
    if isinstance(data, dict) and "payload" in data and "command" in data:
        data = data["payload"]
    return data


def _pick(data, key):
    if isinstance(data, dict) and key in data:
        return data[key]
    return data


def _rational_directions(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        v = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(4)]
        if any(v):
            out.append(v)
    return out


def _float_directions(count, seed, n=4):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(count, n)).tolist()


# -- commands --------------------------------------------------------------------


def cmd_check(args, data):
    res = check_conditions(io.load_quadratic(data, args.backend))
    return ("pass" if res.satisfied else "fail"), io.dump_check(res), {}


def cmd_canonicalize(args, data):
    gamma = io.load_quadratic(data, args.backend)
    res = check_conditions(gamma)
    if not res.satisfied:
        return "fail", None, {"remainders": io.dump_check(res)["remainders"]}
    return "pass", {"gamma": io.dump_quadratic(canonicalize(gamma)), "lambda": io.dump_poly(res.lam)}, {}


def cmd_family(args, data):
    gamma = io.load_quadratic(data, args.backend)
    res = check_conditions(gamma)
    fam = determine_family(gamma)
    diag = {} if res.satisfied else {"remainders": io.dump_check(res)["remainders"]}
    if fam is None:
        return "fail", None, diag
    return "pass", {"family": fam}, diag


def _resolve_side(gamma, requested):
    if requested != "auto":
        return requested
    fam = determine_family(gamma)
    if fam is None:
        return None
    return "left" if fam == "both" else fam


def cmd_decompose(args, data):
    gamma = io.load_quadratic(data, args.backend)
    side = _resolve_side(gamma, args.side)
    if side is None:
        return "fail", None, {"reason": "Gamma preserves neither generating family"}
    A = decompose_quaternionic(gamma, side)
    desc = descriptor_from_A(A, side)
    circles = [desc.circle(x) for x in _rational_directions(args.directions, args.seed)]
    payload = {
        "side": side,
        "A": io.dump_linear_map(A),
        "descriptor": io.dump_descriptor(desc),
        "lines": [io.dump_vector(v) for v in lines_subspace(A, side)],
        "circles": [io.dump_circle(c) for c in circles],
    }
    return "pass", payload, {}


def cmd_common_point(args, data):
    gamma = io.load_quadratic(data, args.backend)
    res = check_conditions(gamma)
    if not res.satisfied:
        return "fail", None, {"remainders": io.dump_check(res)["remainders"]}
    p = common_point(gamma)
    if p is None:
        value = None
    elif isinstance(p, tuple):
        value = io.dump_vector(p)
    else:
        value = "infinity"
    return "pass", {"common_point": value}, {}


def cmd_centers(args, data):
    desc = io.load_descriptor(_pick(data, "descriptor"), args.backend)
    if args.backend == EXACT:
        dirs = _rational_directions(args.directions, args.seed)
    else:
        dirs = _float_directions(args.directions, args.seed)
    circles = [desc.circle(x) for x in dirs]
    return "pass", {"descriptor": io.dump_descriptor(desc), "circles": [io.dump_circle(c) for c in circles]}, {}


def cmd_lines(args, data):
    desc = io.load_descriptor(_pick(data, "descriptor"), args.backend)
    basis = lines_subspace(desc.A)
    return "pass", {"dimension": len(basis), "basis": [io.dump_vector(v) for v in basis]}, {}


def cmd_synthesize(args, data):
    gamma = io.load_quadratic(data, EXACT)
    res = check_conditions(gamma)
    if not res.satisfied:
        return "fail", None, {"remainders": io.dump_check(res)["remainders"]}
    rect = synthesize_rectifier(gamma)
    payload = {
        "a": None if rect.a is None else io.dump_vector(rect.a),
        "lambda": io.dump_poly(res.lam),
        "gamma_prime": io.dump_quadratic(rect.gamma_prime),
        "mu": io.dump_poly(rect.mu),
        "radius": rect.radius if rect.radius != float("inf") else None,
    }
    return "pass", payload, {}


def cmd_verify(args, data):
    diag = {}
    if isinstance(data, dict) and "den" in data:
        transform = io.load_transform(data, args.backend)
        if args.backend == EXACT:
            transform = transform.to_float()
        n = 4
    else:
        gamma = io.load_quadratic(_pick(data, "gamma"), EXACT)
        res = check_conditions(gamma)
        if not res.satisfied:
            return "fail", None, {"remainders": io.dump_check(res)["remainders"]}
        transform = synthesize_rectifier(gamma)
        n = gamma.n
        if args.radius > transform.radius:
            diag["warning"] = f"radius {args.radius} exceeds certified radius {transform.radius}"
    dirs = _float_directions(args.directions, args.seed, n)
    rep = verify_rounds_lines(transform, dirs, args.radius, args.tol, args.samples_per_line)
    return ("pass" if rep.passed else "fail"), io.dump_report(rep), diag


def cmd_fit(args, data):
    circles = io.load_circles(_pick(data, "circles"), args.backend)
    desc = fit_bundle(circles)
    if desc is None:
        return "fail", None, {"reason": "no left or right bundle fits the samples"}
    return "pass", {"descriptor": io.dump_descriptor(desc)}, {}


def cmd_combine(args, datas):
    if len(datas) != 2:
        raise InputError("combine needs exactly two --input descriptors")
    d1, d2 = (io.load_descriptor(_pick(d, "descriptor"), args.backend) for d in datas)
    t = parse_exact(args.weight) if args.backend == EXACT else float(parse_exact(args.weight))
    return "pass", {"descriptor": io.dump_descriptor(barycentric_combine(d1, d2, t))}, {}


HANDLERS = {
    "check": cmd_check,
    "canonicalize": cmd_canonicalize,
    "family": cmd_family,
    "decompose": cmd_decompose,
    "common-point": cmd_common_point,
    "centers": cmd_centers,
    "lines": cmd_lines,
    "synthesize": cmd_synthesize,
    "verify": cmd_verify,
    "fit": cmd_fit,
    "combine": cmd_combine,
}


def build_parser():
    p = argparse.ArgumentParser(prog="circlebundle", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", action="append", required=True, help="input JSON file ('-' for stdin)")
    p.add_argument("--output", default="-", help="report destination (default stdout)")
    p.add_argument("--backend", choices=(EXACT, FLOAT), default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--radius", type=float, default=0.2)
    p.add_argument("--directions", type=int, default=30)
    p.add_argument("--samples-per-line", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--side", choices=("left", "right", "auto"), default="auto")
    p.add_argument("--weight", default="1/2", help="barycentric weight t for combine")
    return p


def execute(args):
    """Execute one parsed command; returns (report dict, exit status)."""
    if args.backend is None:
        args.backend = DEFAULT_BACKEND.get(args.command, EXACT)
    report = {"command": args.command, "status": "error", "payload": None, "diagnostics": {}}
    try:
        datas = [_load_json(p) for p in args.input]
        handler = HANDLERS[args.command]
        if args.command == "combine":
            status, payload, diag = handler(args, datas)
        else:
            if len(datas) != 1:
                raise InputError(f"{args.command} takes exactly one --input")
            status, payload, diag = handler(args, datas[0])
        report.update(status=status, payload=payload, diagnostics=diag)
    except (InputError, io.SchemaError, UnsupportedBackend, UnsupportedDimension, NeedsMoreSamples,
            OrientationMismatch, ConditionViolation, ValueError) as exc:
        report["diagnostics"] = {"error": str(exc), "type": type(exc).__name__}
    return report, EXIT[report["status"]]


def run(argv=None):
    return execute(build_parser().parse_args(argv))


def render(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv=None):
    args = build_parser().parse_args(argv)
    report, code = execute(args)
    text = render(report)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    summary = report["diagnostics"].get("error", "") if report["status"] == "error" else ""
    print(f"{report['command']}: {report['status']}" + (f" ({summary})" if summary else ""), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
