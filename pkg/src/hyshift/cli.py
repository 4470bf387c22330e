"""Command-line front-end.

Subcommands map one-to-one onto library entry points:

- ``analyze``   verdict on hypercyclic-subspace existence for one operator
- ``table``     criterion integrand values over an (n, k) grid
- ``simulate``  orbit seminorm table for a finitely supported vector
- ``witness``   divergence witness construction plus orbit verification
- ``prefix``    finite hypercyclic-prefix construction demo
- ``poly``      polynomial-in-the-shift hypothesis report + orbit cross-check
- ``verify``    seeded oracle suites (condn, prop44, certtransform, polyorbit)
- ``presets``   list built-in weight families, spaces, and anchor pairs

Reports are deterministic given argv (including ``--seed``): JSON is
emitted with sorted keys, CSV with ``,`` separator, ``.`` decimal point
and LF line endings.  Exit status: 0 for definitive verdicts and passing
verifications, 2 for UnknownAtHorizon/Boundary outcomes, 1 for errors.
Non-finite floats appear in JSON as the strings "inf", "-inf", "nan".
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, List, Optional, Sequence, Tuple

from . import __version__
from ._backend import BACKEND
from .criteria import (
    Horizons,
    blockcert_to_growthcert,
    find_block_certificate,
    integrand_array,
    poly_hypothesis_check,
    subspace_verdict,
    tail_inf,
)
from .dynamics import (
    TruncatedVector,
    apply_poly,
    apply_shift,
    build_divergence_witness,
    build_hypercyclic_prefix,
    log_seminorm,
    orbit_table,
    predicted_bound,
)
from .errors import HyshiftError
from .spaces import SpaceModel, parse_space_spec
from .tolerances import (
    DEFAULT_J_MAX,
    DEFAULT_K_HORIZON,
    DEFAULT_M_MAX,
    DEFAULT_N_MAX,
    LOG_TOL,
    MAX_WITNESS_STAGES,
)
from .verify import SUITES, run_suite
from .weights import WeightSequence, parse_weight_spec

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2

_UNDECIDED_OUTCOMES = {"UnknownAtHorizon", "Boundary"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the exit-1 error path."""

    def error(self, message: str):
        raise _UsageError(message)


def _jsonable(obj: Any) -> Any:
    """Recursively convert a report to JSON-safe values.

    Floats stay floats except non-finite ones, which become the strings
    "inf" / "-inf" / "nan" so the output is strict JSON.
    """
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        if math.isfinite(obj):
            return obj
        return {math.inf: "inf", -math.inf: "-inf"}.get(obj, "nan")
    return obj


def _dump_json(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _dump_csv(rows: Sequence[Sequence[Any]], header: Sequence[str]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(c) if isinstance(c, float) else str(c) for c in row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_vector(spec: str, space: SpaceModel) -> TruncatedVector:
    """``e:K`` for a basis vector, a JSON list of [index, coeff] pairs, or
    ``@path`` to read that JSON from a file."""
    base = None if space.bilateral else space.index_base
    spec = spec.strip()
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            spec = fh.read().strip()
    if spec.startswith("e:"):
        try:
            idx = int(spec[2:])
        except ValueError:
            raise _UsageError(f"bad basis index in vector spec {spec!r}")
        return TruncatedVector.basis(idx, index_base=base)
    try:
        pairs = json.loads(spec)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"vector spec is not valid JSON: {exc}")
    if not isinstance(pairs, list):
        raise _UsageError("vector spec must be a JSON list of [index, coeff] pairs")
    return TruncatedVector.from_pairs(
        [(int(i), c) for i, c in pairs], index_base=base
    )


def _parse_int_list(text: str, what: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise _UsageError(f"{what} must be a comma-separated list of integers, got {text!r}")


def _parse_float_list(text: str, what: str) -> List[float]:
    out: List[float] = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            if "/" in tok:
                num, den = tok.split("/", 1)
                out.append(float(int(num)) / float(int(den)))
            else:
                out.append(float(tok))
        except (ValueError, ZeroDivisionError):
            raise _UsageError(f"{what} has a bad entry {tok!r}")
    if not out:
        raise _UsageError(f"{what} is empty")
    return out


def _horizons(args: argparse.Namespace) -> Horizons:
    return Horizons(
        n_max=args.nmax,
        k_horizon=args.khorizon,
        m_max=args.mmax,
        j_max=args.jmax,
    )


def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", required=True, help="weight family spec, e.g. const:2")
    p.add_argument("--space", required=True, help="space spec, e.g. lp:2 or entire")


def _add_horizon_flags(
    p: argparse.ArgumentParser,
    nmax: int = DEFAULT_N_MAX,
    khorizon: int = DEFAULT_K_HORIZON,
) -> None:
    p.add_argument("--nmax", type=int, default=nmax, help="largest power scanned")
    p.add_argument("--khorizon", type=int, default=khorizon, help="largest offset scanned")
    p.add_argument("--mmax", type=int, default=DEFAULT_M_MAX, help="largest row index scanned")
    p.add_argument("--jmax", type=int, default=DEFAULT_J_MAX, help="largest witness row scanned")


def _add_output_flags(p: argparse.ArgumentParser, formats: Tuple[str, ...]) -> None:
    p.add_argument("--format", choices=formats, default=formats[0], help="output format")
    p.add_argument("--out", default=None, metavar="PATH", help="write the report to PATH")


def build_parser() -> _Parser:
    parser = _Parser(prog="hyshift", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hyshift {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("analyze", help="decide hypercyclic-subspace existence")
    _add_spec_flags(p)
    _add_horizon_flags(p)
    _add_output_flags(p, ("json", "text"))

    p = sub.add_parser("table", help="criterion integrand over an (n, k) grid")
    _add_spec_flags(p)
    p.add_argument("--J", type=int, default=1, help="numerator row")
    p.add_argument("--m", type=int, default=1, help="denominator row")
    _add_horizon_flags(p, nmax=8, khorizon=64)
    _add_output_flags(p, ("csv", "json"))

    p = sub.add_parser("simulate", help="orbit seminorm table for a vector")
    _add_spec_flags(p)
    p.add_argument("--vector", required=True, help="e:K, JSON [[index, coeff], ...], or @file")
    p.add_argument("--j", type=int, default=1, help="seminorm row")
    p.add_argument("--horizon", type=int, default=32, help="number of iterations")
    _add_output_flags(p, ("csv", "json"))

    p = sub.add_parser("witness", help="build and verify a divergence witness")
    _add_spec_flags(p)
    p.add_argument("--stages", type=int, default=0, help="witness stages (0 = derive from --verify-to)")
    p.add_argument("--verify-to", type=int, default=1000, dest="verify_to", help="check orbit bounds for powers up to this")
    p.add_argument("--q", type=int, default=1, help="seminorm row for the bounds")
    _add_horizon_flags(p)
    _add_output_flags(p, ("json", "text"))

    p = sub.add_parser("prefix", help="finite hypercyclic-prefix construction")
    _add_spec_flags(p)
    p.add_argument("--targets", required=True, help="JSON list of vectors (each [[index, coeff], ...]) or @file")
    p.add_argument("--times", required=True, help="comma-separated visit times")
    p.add_argument("--j", type=int, default=1, help="seminorm row for error reporting")
    _add_output_flags(p, ("json", "text"))

    p = sub.add_parser("poly", help="polynomial-in-the-shift hypothesis report")
    _add_spec_flags(p)
    p.add_argument("--poly", required=True, help="comma-separated coefficients, constant term first")
    _add_horizon_flags(p)
    _add_output_flags(p, ("json", "text"))

    p = sub.add_parser("verify", help="run a seeded oracle suite")
    p.add_argument("suite", choices=sorted(SUITES), help="suite name")
    p.add_argument("--seed", type=int, default=7, help="RNG seed")
    p.add_argument("--count", type=int, default=None, help="number of cases (suite default if omitted)")
    _add_output_flags(p, ("json", "text"))

    p = sub.add_parser("presets", help="list built-in weight families and spaces")
    _add_output_flags(p, ("json", "text"))

    return parser


# ---------------------------------------------------------------------------
# subcommand bodies


def _specs(args: argparse.Namespace) -> Tuple[WeightSequence, SpaceModel]:
    return parse_weight_spec(args.weights), parse_space_spec(args.space)


def cmd_analyze(args: argparse.Namespace) -> Tuple[str, int]:
    w, space = _specs(args)
    report = subspace_verdict(w, space, horizons=_horizons(args)).as_dict()
    code = EXIT_UNDECIDED if report["outcome"] in _UNDECIDED_OUTCOMES else EXIT_OK
    if args.format == "text":
        return _render_analyze_text(report), code
    return _dump_json(report), code


def _render_analyze_text(report: dict) -> str:
    lines = [
        f"operator : shift with weights {report['weights']} on {report['space']}",
        f"outcome  : {report['outcome']}",
    ]
    theta = report.get("theta")
    if theta is not None:
        lines.append(
            "theta    : log {} ({})".format(theta["log_value"], theta["status"])
        )
    cert = report.get("certificate")
    if cert:
        for part in ("block", "growth"):
            c = cert.get(part)
            if c:
                lines.append(
                    f"certificate : {part} (log_C={c['log_C']}, m={c['m']}, N={c['N']})"
                )
    for note in report.get("notes", ()):
        lines.append(f"note     : {note}")
    return "\n".join(lines) + "\n"


def cmd_table(args: argparse.Namespace) -> Tuple[str, int]:
    w, space = _specs(args)
    h = _horizons(args)  # validates positivity
    if args.J < 1 or args.m < 1:
        raise _UsageError("rows --J and --m must be >= 1")
    if space.bilateral:
        lo = -h.k_horizon
    else:
        lo = max(space.k_min, 0)
    hi = lo + h.k_horizon
    rows = []
    for n in range(1, h.n_max + 1):
        vals = integrand_array(w, space, args.J, args.m, n, lo, hi)
        for k, v in zip(range(lo, hi + 1), vals):
            rows.append((n, k, float(v)))
    if args.format == "json":
        report = {
            "schema": 1,
            "weights": w.render(),
            "space": space.render(),
            "J": args.J,
            "m": args.m,
            "k_range": [lo, hi],
            "n_max": h.n_max,
            "grid": [[n, k, v] for n, k, v in rows],
        }
        return _dump_json(report), EXIT_OK
    return _dump_csv(rows, ("n", "k", "log_value")), EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> Tuple[str, int]:
    w, space = _specs(args)
    if args.horizon < 0:
        raise _UsageError("--horizon must be >= 0")
    if args.j < 1:
        raise _UsageError("--j must be >= 1")
    x = _parse_vector(args.vector, space)
    table = orbit_table(x, w, space, j=args.j, horizon=args.horizon)
    if args.format == "json":
        report = {
            "schema": 1,
            "weights": w.render(),
            "space": space.render(),
            "j": args.j,
            "vector": x.to_pairs(),
            "orbit": [[n, v] for n, v in table],
        }
        return _dump_json(report), EXIT_OK
    return _dump_csv(table, ("n", "seminorm")), EXIT_OK


def cmd_witness(args: argparse.Namespace) -> Tuple[str, int]:
    w, space = _specs(args)
    h = _horizons(args)
    if args.verify_to < 1:
        raise _UsageError("--verify-to must be >= 1")
    cert = find_block_certificate(w, space, J=1, row=args.q, horizons=h)
    if cert is None:
        report = {
            "schema": 1,
            "outcome": "NoCertificate",
            "weights": w.render(),
            "space": space.render(),
            "note": "no expanding block found at these horizons; "
            "a divergence witness needs a certified growth family",
            "horizons": h.as_dict(),
        }
        text = report["outcome"] + ": " + report["note"] + "\n"
        return (text if args.format == "text" else _dump_json(report)), EXIT_UNDECIDED
    gcert = blockcert_to_growthcert(cert, w, space, k_horizon=h.k_horizon)
    stages = args.stages
    if stages == 0:
        stages = min(MAX_WITNESS_STAGES, args.verify_to + 2)
    built = build_divergence_witness(gcert, w, space, stages, q=args.q)
    verification = _verify_witness_orbit(
        built, w, space, args.q, args.verify_to
    )
    x = built["x"]
    report = {
        "schema": 1,
        "outcome": "WitnessBuilt" if verification["ok"] else "WitnessBoundViolated",
        "weights": w.render(),
        "space": space.render(),
        "q": built["q"],
        "block_certificate": cert.as_dict(),
        "growth_certificate": gcert.as_dict(),
        "stages": stages,
        "schedule": built["schedule"],
        "positions": built["positions"],
        "band_start": built["band_start"],
        "bands": [list(b) for b in built["bands"]],
        "x": x.to_pairs(),
        "overflow": built["overflow"],
        "notes": built["notes"],
        "verification": verification,
        "horizons": h.as_dict(),
    }
    code = EXIT_OK if verification["ok"] else EXIT_ERROR
    if args.format == "text":
        lines = [
            f"outcome  : {report['outcome']}",
            f"stages   : {stages} (positions {built['positions'][0]}..{built['positions'][-1]})",
            f"verified : powers 1..{verification['checked_to']} against band bounds, "
            f"worst margin {verification['worst_margin']:.3e}",
        ]
        return "\n".join(lines) + "\n", code
    return _dump_json(report), code


def _verify_witness_orbit(
    built: dict, w: WeightSequence, space: SpaceModel, q: int, verify_to: int
) -> dict:
    """Walk the orbit one shift at a time and compare each seminorm with the
    band bound the witness promises."""
    bands = built["bands"]
    last_k = bands[-1][1] if bands else 0
    checked_to = min(verify_to, last_k)
    y = built["x"]
    ok = True
    worst = math.inf
    failures = []
    for j in range(1, checked_to + 1):
        y = apply_shift(y, w, 1)
        bound = predicted_bound(bands, j)
        if bound <= 0.0:
            continue
        log_bound = math.log(bound)
        log_norm = log_seminorm(y, space, j=q)
        margin = log_norm - log_bound
        worst = min(worst, margin)
        if margin < -LOG_TOL:
            ok = False
            if len(failures) < 5:
                failures.append({"power": j, "bound": bound, "log_seminorm": log_norm})
    return {
        "checked_to": checked_to,
        "requested": verify_to,
        "ok": ok,
        "worst_margin": worst if worst is not math.inf else None,
        "failures": failures,
    }


def cmd_prefix(args: argparse.Namespace) -> Tuple[str, int]:
    w, space = _specs(args)
    spec = args.targets.strip()
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            spec = fh.read().strip()
    try:
        raw = json.loads(spec)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"--targets is not valid JSON: {exc}")
    if not isinstance(raw, list) or not raw:
        raise _UsageError("--targets must be a non-empty JSON list of vectors")
    base = None if space.bilateral else space.index_base
    targets = [
        TruncatedVector.from_pairs([(int(i), c) for i, c in vec], index_base=base)
        for vec in raw
    ]
    times = _parse_int_list(args.times, "--times")
    if args.j < 1:
        raise _UsageError("--j must be >= 1")
    built = build_hypercyclic_prefix(w, space, targets, times, j=args.j)
    report = {
        "schema": 1,
        "outcome": "PrefixBuilt",
        "weights": w.render(),
        "space": space.render(),
        "j": built["j"],
        "times": built["times"],
        "z": built["z"].to_pairs(),
        "visit_errors": built["errors"],
        "smallness": built["smallness"],
        "overflow": built["overflow"],
    }
    if args.format == "text":
        lines = [f"outcome : PrefixBuilt ({len(times)} visits)"]
        for t, e in zip(built["times"], built["errors"]):
            lines.append(f"visit at power {t}: seminorm error {e:.6e}")
        return "\n".join(lines) + "\n", EXIT_OK
    return _dump_json(report), EXIT_OK


def cmd_poly(args: argparse.Namespace) -> Tuple[str, int]:
    w, space = _specs(args)
    h = _horizons(args)
    coeffs = _parse_float_list(args.poly, "--poly")
    report = poly_hypothesis_check(w, space, coeffs, horizons=h)

    witness_m = report["parts"]["inf_zero"]["witness_m"] or 1
    evidence = []
    lo = max(space.k_min, 0)
    hor = min(h.k_horizon, 1 << 20)
    for n in range(1, min(h.n_max, 16) + 1):
        cv = tail_inf(w, space, 1, witness_m, n, k_horizon=h.k_horizon)
        vals = integrand_array(w, space, 1, witness_m, n, lo, hor)
        arg = int(vals.argmin())
        evidence.append(
            {
                "n": n,
                "log_value": cv.log_value,
                "status": cv.status.value,
                "horizon_min": float(vals.min()),
                "argmin_k": lo + arg,
            }
        )
    report["inf_certificates"] = evidence

    base = None if space.bilateral else space.index_base
    probe = TruncatedVector.from_pairs(
        [(base + i, 1.0) for i in range(1, 5)], index_base=base
    )
    d = len(report["poly"]) - 1
    n_orbit = max(1, min(4, 64 // max(1, d)))
    a = apply_poly(probe, w, coeffs, n_orbit, mode="expanded")
    b = apply_poly(probe, w, coeffs, n_orbit, mode="iterated")
    scale = 0.0
    diff = 0.0
    for idx in sorted(set(a.indices()) | set(b.indices())):
        va, vb = a.coefficient(idx), b.coefficient(idx)
        scale = max(scale, abs(va), abs(vb))
        diff = max(diff, abs(va - vb))
    report["orbit_check"] = {
        "power": n_orbit,
        "relative_gap": (diff / scale) if scale > 0 else 0.0,
        "probe_support": probe.to_pairs(),
    }

    code = EXIT_OK if report["outcome"] == "HasSubspace" else EXIT_UNDECIDED
    if args.format == "text":
        lines = [f"outcome : {report['outcome']}"]
        for name, part in report["parts"].items():
            flag = part.get("holds")
            lines.append(f"{name:14s}: {'ok' if flag else 'not certified'}")
        return "\n".join(lines) + "\n", code
    return _dump_json(report), code


def cmd_verify(args: argparse.Namespace) -> Tuple[str, int]:
    if args.seed < 0:
        raise _UsageError("--seed must be >= 0")
    if args.count is not None and args.count < 1:
        raise _UsageError("--count must be >= 1")
    report = run_suite(args.suite, seed=args.seed, count=args.count)
    code = EXIT_OK if report["ok"] else EXIT_ERROR
    if args.format == "text":
        line = (
            f"suite {report['suite']}: {report['checked'] - report['violations']}"
            f"/{report['checked']} agreements (seed {report['seed']})"
        )
        return line + "\n", code
    return _dump_json(report), code


_PRESET_WEIGHTS = [
    ("const:2", "constant doubling weights"),
    ("const:1", "the unweighted shift"),
    ("linear", "w_k = k (differentiation-style growth)"),
    ("geom:0.5", "geometric decay with ratio 1/2"),
    ("periodic:[3,0.5]", "period-2 alternation"),
    ("evper:[2]:[0.5,4]", "one-term prefix, period-2 tail"),
    ("blocks", "2 on dyadic blocks [2^{2i}, 2^{2i+1}), 1/2 elsewhere"),
    ("spikes", "2 everywhere except 2^{-i} at k = 2^i"),
    ("table:[...]", "explicit finite table with tail rule"),
    ("bilateral:const:2:const:0.5", "two one-sided families glued at 0"),
]

_PRESET_SPACES = [
    ("lp:2", "little lp with p = 2, all rows equal"),
    ("lp:1", "little lp with p = 1"),
    ("c0", "vanishing sequences, sup seminorms"),
    ("lpv:2:[...]", "weighted lp, one weight vector row family"),
    ("c0v:[...]", "weighted c0"),
    ("entire", "entire functions: rows j^k, sup norms"),
    ("rapid", "rapidly decreasing sequences: rows k^j"),
    ("kothe:@file", "explicit graded table from a file"),
    ("bi-lp:2", "bilateral lp"),
    ("bi-c0", "bilateral c0"),
]

_PRESET_ANCHORS = [
    ["const:2", "lp:2"],
    ["periodic:[3,0.5]", "lp:1"],
    ["linear", "entire"],
    ["geom:1.5", "rapid"],
    ["evper:[2]:[0.5,4]", "lpv:2:periodic:[1,2]"],
]


def cmd_presets(args: argparse.Namespace) -> Tuple[str, int]:
    report = {
        "schema": 1,
        "backend": BACKEND,
        "weights": [{"spec": s, "about": d} for s, d in _PRESET_WEIGHTS],
        "spaces": [{"spec": s, "about": d} for s, d in _PRESET_SPACES],
        "anchor_pairs": _PRESET_ANCHORS,
    }
    if args.format == "text":
        lines = ["weight families:"]
        lines += [f"  {s:28s} {d}" for s, d in _PRESET_WEIGHTS]
        lines.append("spaces:")
        lines += [f"  {s:28s} {d}" for s, d in _PRESET_SPACES]
        lines.append("anchor pairs (weights, space):")
        lines += [f"  {a}, {b}" for a, b in _PRESET_ANCHORS]
        return "\n".join(lines) + "\n", EXIT_OK
    return _dump_json(report), EXIT_OK


_COMMANDS = {
    "analyze": cmd_analyze,
    "table": cmd_table,
    "simulate": cmd_simulate,
    "witness": cmd_witness,
    "prefix": cmd_prefix,
    "poly": cmd_poly,
    "verify": cmd_verify,
    "presets": cmd_presets,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_ERROR
        text, code = _COMMANDS[args.command](args)
        _emit(text, args.out)
        return code
    except _UsageError as exc:
        sys.stderr.write(f"hyshift: error: {exc}\n")
        return EXIT_ERROR
    except HyshiftError as exc:
        sys.stderr.write(f"hyshift: error: {exc}\n")
        return EXIT_ERROR
    except OSError as exc:
        sys.stderr.write(f"hyshift: error: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
