"""Seeded self-check suites.

Each suite draws random problem instances from a fixed ``random.Random``
seed, evaluates them twice — once through the library's certified code
paths and once through an independent brute-force oracle or a second,
structurally different code path — and counts disagreements.  The draws
are fully determined by ``(seed, count)``, so a failure is reproducible
from the report alone.

Suites
------
``condn``
    Eventually periodic weight families on ``lp:2``: the threshold form
    ("some window infimum exceeds 1 on a tail") against the divergence
    form ("window infima grow without bound").  Both sides evaluate
    exactly on periodic data, so every case must decide and agree.
``prop44``
    The same family distribution checked against two graded spaces:
    ``entire`` with (J, m) = (2, 2), where the row correction is an exact
    per-power law and the verdict is discriminating, and ``rapid`` with
    (J, m) = (1, 2), where the row ratio certifies decay to -inf for
    every family.  Every case must decide and agree on both spaces.
``certtransform``
    Periodic families that admit a single-block certificate: the pumped
    growth certificate's claimed bound log C_n must stay below the exact
    tail minimum (brute-forced over one period with ``math.fsum``) for
    every power n <= 64.
``polyorbit``
    Random polynomials applied to random finitely supported vectors:
    the expanded form (exact convolution coefficients against shift
    powers) against the iterated form (n successive applications), with
    per-coordinate agreement measured relative to the largest magnitude.
"""
from __future__ import annotations

import math
import random
from typing import Callable, Dict, List, Optional, Sequence

from .criteria import blockcert_to_growthcert, condN_check, find_block_certificate
from .dynamics import TruncatedVector, apply_poly
from .errors import DomainError
from .spaces import parse_space_spec
from .tolerances import LOG_TOL, POLY_REL_TOL
from .weights import WeightSequence, parse_weight_spec

MAX_FAILURES_REPORTED = 5

_CONDN_DEFAULTS = {"condn": 200, "prop44": 100, "certtransform": 50, "polyorbit": 100}


def _draw_log_weight(rng: random.Random) -> float:
    """One positive weight with log-magnitude uniform in [-2, 2]."""
    return round(math.exp(rng.uniform(-2.0, 2.0)), 6)


def _draw_evper(rng: random.Random, max_prefix: int = 8, max_period: int = 8) -> WeightSequence:
    """An eventually periodic family: prefix length 0..max_prefix, period 1..max_period."""
    plen = rng.randrange(0, max_prefix + 1)
    q = rng.randrange(1, max_period + 1)
    prefix = [_draw_log_weight(rng) for _ in range(plen)]
    period = [_draw_log_weight(rng) for _ in range(q)]
    if plen:
        spec = "evper:[{}]:[{}]".format(
            ",".join(map(str, prefix)), ",".join(map(str, period))
        )
    else:
        spec = "periodic:[{}]".format(",".join(map(str, period)))
    return parse_weight_spec(spec)


def _draw_periodic(rng: random.Random, max_period: int = 8) -> WeightSequence:
    q = rng.randrange(1, max_period + 1)
    period = [_draw_log_weight(rng) for _ in range(q)]
    return parse_weight_spec("periodic:[{}]".format(",".join(map(str, period))))


def _report(
    suite: str,
    seed: int,
    count: int,
    checked: int,
    violations: int,
    failures: List[dict],
    extra: Optional[dict] = None,
) -> dict:
    rep = {
        "schema": 1,
        "suite": suite,
        "seed": seed,
        "count": count,
        "checked": checked,
        "violations": violations,
        "ok": violations == 0,
        "failures": failures[:MAX_FAILURES_REPORTED],
    }
    if extra:
        rep.update(extra)
    return rep


def suite_condn(seed: int = 7, count: int = 200) -> dict:
    """Threshold form vs divergence form on lp:2, exact on periodic data."""
    rng = random.Random(seed)
    space = parse_space_spec("lp:2")
    failures: List[dict] = []
    violations = 0
    decided = {"Holds": 0, "Fails": 0}
    for i in range(count):
        w = _draw_evper(rng)
        rep = condN_check(w, space, J=1, m=1)
        if rep["agree"] is True:
            decided[rep["lhs"]["holds"]] += 1
        else:
            violations += 1
            failures.append(
                {
                    "case": i,
                    "weights": w.render(),
                    "lhs": rep["lhs"],
                    "rhs": rep["rhs"],
                }
            )
    return _report(
        "condn", seed, count, count, violations, failures, {"decided": decided}
    )


def suite_prop44(seed: int = 7, count: int = 100) -> dict:
    """Graded-space form of the threshold/divergence equivalence.

    Runs each family against two spaces whose row structure is exactly
    decidable on periodic data: ``entire`` with (J, m) = (2, 2) (constant
    row correction -n log 2, exact per-power law, verdicts split between
    Holds and Fails) and ``rapid`` with (J, m) = (1, 2) (row ratio
    k/(k+n)^2 certifies every window infimum to -inf).
    """
    rng = random.Random(seed)
    legs = [
        ("entire", parse_space_spec("entire"), 2, 2),
        ("rapid", parse_space_spec("rapid"), 1, 2),
    ]
    failures: List[dict] = []
    violations = 0
    decided: Dict[str, Dict[str, int]] = {name: {"Holds": 0, "Fails": 0} for name, *_ in legs}
    for i in range(count):
        w = _draw_evper(rng)
        for name, space, J, m in legs:
            rep = condN_check(w, space, J=J, m=m)
            if rep["agree"] is True:
                decided[name][rep["lhs"]["holds"]] += 1
            else:
                violations += 1
                failures.append(
                    {
                        "case": i,
                        "space": name,
                        "weights": w.render(),
                        "lhs": rep["lhs"],
                        "rhs": rep["rhs"],
                    }
                )
    return _report(
        "prop44",
        seed,
        count,
        count * len(legs),
        violations,
        failures,
        {"decided": decided},
    )


def _exact_tail_min(w: WeightSequence, n: int, N: int, period: int) -> float:
    """min over k >= N of the n-window log-sum, brute-forced with fsum.

    Valid for weights that are exactly periodic beyond index N: the
    window value is then periodic in k, so one period of start positions
    covers the whole tail.
    """
    best = math.inf
    for k in range(N, N + period):
        window = math.fsum(w.log_magnitude(v) for v in range(k + 1, k + n + 1))
        best = min(best, window)
    return best


def suite_certtransform(seed: int = 7, count: int = 50) -> dict:
    """Block certificate -> growth certificate soundness on periodic families.

    Families are drawn until ``count`` of them admit a block certificate
    (resampling is deterministic under the seed).  For each, the pumped
    bound log C_n must stay at or below the exact tail minimum of the
    n-window for every n <= 64.
    """
    rng = random.Random(seed)
    space = parse_space_spec("lp:2")
    failures: List[dict] = []
    violations = 0
    kept = 0
    draws = 0
    max_draws = count * 64
    n_check = 64
    while kept < count and draws < max_draws:
        w = _draw_periodic(rng)
        draws += 1
        cert = find_block_certificate(w, space)
        if cert is None:
            continue
        kept += 1
        gcert = blockcert_to_growthcert(cert, w, space)
        period = w.period_info()[1]
        for n in range(1, n_check + 1):
            exact = _exact_tail_min(w, n, gcert.N, period)
            bound = gcert.log_C_n(n)
            if exact < bound - LOG_TOL:
                violations += 1
                failures.append(
                    {
                        "case": kept - 1,
                        "weights": w.render(),
                        "n": n,
                        "exact_tail_min": exact,
                        "claimed_bound": bound,
                        "certificate": gcert.as_dict(),
                    }
                )
                break
    return _report(
        "certtransform",
        seed,
        count,
        kept,
        violations,
        failures,
        {"draws": draws, "powers_per_case": n_check},
    )


_POLY_WEIGHT_POOL = ("const:2", "const:0.5", "periodic:[2,0.5]", "linear", "periodic:[3,1,0.25]")


def _draw_vector(rng: random.Random, max_entries: int = 8, max_index: int = 128) -> TruncatedVector:
    n_entries = rng.randrange(1, max_entries + 1)
    indices = rng.sample(range(1, max_index + 1), n_entries)
    pairs = []
    for idx in indices:
        c = 0.0
        while c == 0.0:
            c = round(rng.uniform(-2.0, 2.0), 6)
        pairs.append((idx, c))
    return TruncatedVector.from_pairs(pairs)


def _draw_poly(rng: random.Random, max_degree: int = 4) -> List[int]:
    d = rng.randrange(1, max_degree + 1)
    coeffs = [rng.randrange(-3, 4) for _ in range(d)]
    lead = 0
    while lead == 0:
        lead = rng.randrange(-3, 4)
    coeffs.append(lead)
    return coeffs


def suite_polyorbit(seed: int = 7, count: int = 100) -> dict:
    """Expanded vs iterated polynomial application on random vectors."""
    rng = random.Random(seed)
    failures: List[dict] = []
    violations = 0
    worst = 0.0
    for i in range(count):
        coeffs = _draw_poly(rng)
        n = rng.randrange(1, 9)
        x = _draw_vector(rng)
        w = parse_weight_spec(_POLY_WEIGHT_POOL[rng.randrange(len(_POLY_WEIGHT_POOL))])
        a = apply_poly(x, w, coeffs, n, mode="expanded")
        b = apply_poly(x, w, coeffs, n, mode="iterated")
        indices = sorted(set(a.indices()) | set(b.indices()))
        scale = 0.0
        diff = 0.0
        for idx in indices:
            va = a.coefficient(idx)
            vb = b.coefficient(idx)
            scale = max(scale, abs(va), abs(vb))
            diff = max(diff, abs(va - vb))
        rel = diff / scale if scale > 0.0 else 0.0
        worst = max(worst, rel)
        if rel > POLY_REL_TOL:
            violations += 1
            failures.append(
                {
                    "case": i,
                    "poly": coeffs,
                    "power": n,
                    "weights": w.render(),
                    "relative_gap": rel,
                }
            )
    return _report(
        "polyorbit", seed, count, count, violations, failures, {"worst_relative_gap": worst}
    )


SUITES: Dict[str, Callable[..., dict]] = {
    "condn": suite_condn,
    "prop44": suite_prop44,
    "certtransform": suite_certtransform,
    "polyorbit": suite_polyorbit,
}


def run_suite(name: str, seed: int = 7, count: Optional[int] = None) -> dict:
    """Run one named suite; ``count`` falls back to the suite default."""
    if name not in SUITES:
        raise DomainError(
            "unknown suite {!r}: expected one of {}".format(name, ", ".join(sorted(SUITES)))
        )
    if count is None:
        count = _CONDN_DEFAULTS[name]
    if count < 1:
        raise DomainError(f"suite count must be >= 1, got {count}")
    if seed < 0:
        raise DomainError(f"seed must be >= 0, got {seed}")
    return SUITES[name](seed=seed, count=count)
