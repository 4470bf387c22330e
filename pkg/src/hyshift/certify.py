"""Certified values and tail-shape decision procedures.

A *tail shape* is structural knowledge about a real sequence g(k) on
[start, infinity) — e.g. "eventually periodic with per-period drift d" or
"nondecreasing with limit L".  Given a shape plus a numeric evaluator for
g, the decision procedures below turn "inf over an infinite tail" into a
finite scan with an honest status:

- Exact: the returned value IS the infinite-tail quantity.
- LowerBounded / UpperBounded: the true quantity is >= / <= the value.
- HorizonOnly: empirical scan value, no structural certificate.

Shapes are produced by the weight/space modules, which know where each
sequence comes from; this module never guesses structure from samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .tolerances import MAX_CERTIFIED_SCAN

EvalFn = Callable[[int, int], np.ndarray]  # inclusive [lo, hi] -> g values

_DRIFT_TOL = 1e-12


class Status(str, Enum):
    EXACT = "Exact"
    LOWER_BOUNDED = "LowerBounded"
    UPPER_BOUNDED = "UpperBounded"
    HORIZON_ONLY = "HorizonOnly"


@dataclass(frozen=True)
class CertifiedValue:
    """A log-domain value together with how much it can be trusted."""

    log_value: float
    status: Status
    provenance: dict = field(default_factory=dict)
    horizon: Optional[int] = None

    def as_dict(self) -> dict:
        d = {
            "log_value": self.log_value,
            "status": self.status.value,
            "horizon": self.horizon,
        }
        d.update({k: v for k, v in self.provenance.items()})
        return d


@dataclass(frozen=True)
class TailShape:
    """Structural description of g(k) for k >= start.

    kinds:
      evper        g(k + period) = g(k) + drift for k >= start
      mono_up      nondecreasing on [start, inf), g -> limit
      mono_down    nonincreasing on [start, inf), g -> limit
      per_mono_up  g = (periodic part) + (nondecreasing part -> limit);
                   per-residue nondecreasing beyond start.  mono_fn, when
                   given, evaluates the nondecreasing part exactly.
      per_mono_down  same with a nonincreasing part
      tail_value   g(k) >= value for k >= start and inf over every tail
                   [N, inf), N >= start, equals value
      unknown      no structure
    """

    kind: str
    start: int = 0
    period: int = 1
    drift: float = 0.0
    limit: float = math.nan
    value: float = math.nan
    mono_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    note: str = ""

    @staticmethod
    def evper(start: int, period: int, drift: float, note: str = "") -> "TailShape":
        return TailShape("evper", start=start, period=max(1, period), drift=drift, note=note)

    @staticmethod
    def mono_up(start: int, limit: float, note: str = "") -> "TailShape":
        return TailShape("mono_up", start=start, limit=limit, note=note)

    @staticmethod
    def mono_down(start: int, limit: float, note: str = "") -> "TailShape":
        return TailShape("mono_down", start=start, limit=limit, note=note)

    @staticmethod
    def per_mono_up(start: int, period: int, limit: float, mono_fn=None, note: str = "") -> "TailShape":
        return TailShape(
            "per_mono_up", start=start, period=max(1, period), limit=limit, mono_fn=mono_fn, note=note
        )

    @staticmethod
    def per_mono_down(start: int, period: int, limit: float, mono_fn=None, note: str = "") -> "TailShape":
        return TailShape(
            "per_mono_down", start=start, period=max(1, period), limit=limit, mono_fn=mono_fn, note=note
        )

    @staticmethod
    def tail_value(value: float, start: int = 0, note: str = "") -> "TailShape":
        return TailShape("tail_value", start=start, value=value, note=note)

    @staticmethod
    def unknown(note: str = "") -> "TailShape":
        return TailShape("unknown", note=note)


@dataclass(frozen=True)
class InfDecision:
    log_value: float
    status: Status
    argmin: Optional[int]
    scan_hi: int
    note: str = ""


def _scan_min(evaluate: EvalFn, lo: int, hi: int) -> tuple[float, int]:
    vals = evaluate(lo, hi)
    j = int(np.argmin(vals))
    return float(vals[j]), lo + j


def _scan_max(evaluate: EvalFn, lo: int, hi: int) -> tuple[float, int]:
    vals = evaluate(lo, hi)
    j = int(np.argmax(vals))
    return float(vals[j]), lo + j


def decide_inf(shape: TailShape, evaluate: EvalFn, N: int, k_horizon: int) -> InfDecision:
    """Certified infimum of g over [N, inf)."""
    k = shape.kind
    if k == "evper":
        if shape.drift < -_DRIFT_TOL:
            return InfDecision(-math.inf, Status.EXACT, None, N, "negative per-period drift")
        if shape.drift != 0.0 and abs(shape.drift) <= _DRIFT_TOL:
            v, a = _scan_min(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "drift within tolerance of zero")
        hi = max(N, shape.start) + shape.period - 1
        if hi - N > MAX_CERTIFIED_SCAN:
            v, a = _scan_min(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "certified scan too long")
        v, a = _scan_min(evaluate, N, hi)
        return InfDecision(v, Status.EXACT, a, hi, "periodic tail" if shape.drift == 0.0 else "nonnegative drift")
    if k == "mono_up":
        hi = max(N, shape.start)
        if hi - N > MAX_CERTIFIED_SCAN:
            v, a = _scan_min(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "certified scan too long")
        v, a = _scan_min(evaluate, N, hi)
        return InfDecision(v, Status.EXACT, a, hi, "nondecreasing tail")
    if k == "mono_down":
        if math.isnan(shape.limit):
            v, a = _scan_min(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "monotone tail with unresolved limit")
        if N >= shape.start:
            return InfDecision(shape.limit, Status.EXACT, None, N, "nonincreasing to limit")
        v, a = _scan_min(evaluate, N, shape.start)
        if shape.limit <= v:
            return InfDecision(shape.limit, Status.EXACT, None, shape.start, "nonincreasing to limit")
        return InfDecision(v, Status.EXACT, a, shape.start, "prefix minimum below limit")
    if k == "per_mono_up":
        hi = max(N, shape.start) + shape.period - 1
        if hi - N > MAX_CERTIFIED_SCAN:
            v, a = _scan_min(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "certified scan too long")
        v, a = _scan_min(evaluate, N, hi)
        return InfDecision(v, Status.EXACT, a, hi, "per-residue nondecreasing")
    if k == "per_mono_down":
        if shape.limit == -math.inf:
            return InfDecision(-math.inf, Status.EXACT, None, N, "per-residue nonincreasing, diverging down")
        if shape.mono_fn is not None and math.isfinite(shape.limit):
            lo = max(N, shape.start)
            hi = lo + shape.period - 1
            ks = np.arange(lo, hi + 1)
            per_tail = float(np.min(evaluate(lo, hi) - shape.mono_fn(ks))) + shape.limit
            if N >= shape.start:
                return InfDecision(per_tail, Status.EXACT, None, hi, "periodic part + monotone limit")
            v, a = _scan_min(evaluate, N, hi)
            if v <= per_tail:
                return InfDecision(v, Status.EXACT, a, hi, "prefix minimum below tail limit")
            return InfDecision(per_tail, Status.EXACT, None, hi, "periodic part + monotone limit")
        v, a = _scan_min(evaluate, N, k_horizon)
        return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "monotone part not separable")
    if k == "tail_value":
        if N >= shape.start:
            arg = _locate_value(evaluate, shape.value, N, k_horizon)
            return InfDecision(shape.value, Status.EXACT, arg, k_horizon, shape.note or "known tail infimum")
        v, a = _scan_min(evaluate, N, max(N, shape.start - 1))
        if v <= shape.value:
            return InfDecision(v, Status.EXACT, a, shape.start, "prefix minimum")
        arg = _locate_value(evaluate, shape.value, shape.start, k_horizon)
        return InfDecision(shape.value, Status.EXACT, arg, k_horizon, shape.note or "known tail infimum")
    v, a = _scan_min(evaluate, N, k_horizon)
    return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, shape.note or "no structural certificate")


def _locate_value(evaluate: EvalFn, value: float, lo: int, hi: int) -> Optional[int]:
    """Best-effort argmin witness for a known tail infimum (may be None)."""
    if not math.isfinite(value) or hi < lo:
        return None
    cap = min(hi, lo + 65536)
    vals = evaluate(lo, cap)
    close = np.nonzero(vals <= value + 1e-12)[0]
    if close.size:
        return int(lo + close[0])
    return None


def decide_sup(shape: TailShape, evaluate: EvalFn, N: int, k_horizon: int) -> InfDecision:
    """Certified supremum of g over [N, inf)."""
    k = shape.kind
    if k == "evper":
        if shape.drift > _DRIFT_TOL:
            return InfDecision(math.inf, Status.EXACT, None, N, "positive per-period drift")
        if shape.drift != 0.0 and abs(shape.drift) <= _DRIFT_TOL:
            v, a = _scan_max(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "drift within tolerance of zero")
        hi = max(N, shape.start) + shape.period - 1
        if hi - N > MAX_CERTIFIED_SCAN:
            v, a = _scan_max(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "certified scan too long")
        v, a = _scan_max(evaluate, N, hi)
        return InfDecision(v, Status.EXACT, a, hi, "periodic tail" if shape.drift == 0.0 else "nonpositive drift")
    if k == "mono_up":
        if math.isnan(shape.limit):
            v, a = _scan_max(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "monotone tail with unresolved limit")
        if N >= shape.start:
            return InfDecision(shape.limit, Status.EXACT, None, N, "nondecreasing to limit")
        v, a = _scan_max(evaluate, N, shape.start)
        if shape.limit >= v:
            return InfDecision(shape.limit, Status.EXACT, None, shape.start, "nondecreasing to limit")
        return InfDecision(v, Status.EXACT, a, shape.start, "prefix maximum above limit")
    if k == "mono_down":
        hi = max(N, shape.start)
        if hi - N > MAX_CERTIFIED_SCAN:
            v, a = _scan_max(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "certified scan too long")
        v, a = _scan_max(evaluate, N, hi)
        return InfDecision(v, Status.EXACT, a, hi, "nonincreasing tail")
    if k == "per_mono_down":
        hi = max(N, shape.start) + shape.period - 1
        if hi - N > MAX_CERTIFIED_SCAN:
            v, a = _scan_max(evaluate, N, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "certified scan too long")
        v, a = _scan_max(evaluate, N, hi)
        return InfDecision(v, Status.EXACT, a, hi, "per-residue nonincreasing")
    if k == "per_mono_up":
        if shape.limit == math.inf:
            return InfDecision(math.inf, Status.EXACT, None, N, "per-residue nondecreasing, diverging up")
        if shape.mono_fn is not None and math.isfinite(shape.limit):
            lo = max(N, shape.start)
            hi = lo + shape.period - 1
            ks = np.arange(lo, hi + 1)
            per_tail = float(np.max(evaluate(lo, hi) - shape.mono_fn(ks))) + shape.limit
            if N >= shape.start:
                return InfDecision(per_tail, Status.EXACT, None, hi, "periodic part + monotone limit")
            v, a = _scan_max(evaluate, N, hi)
            if v >= per_tail:
                return InfDecision(v, Status.EXACT, a, hi, "prefix maximum above tail limit")
            return InfDecision(per_tail, Status.EXACT, None, hi, "periodic part + monotone limit")
        v, a = _scan_max(evaluate, N, k_horizon)
        return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "monotone part not separable")
    if k == "tail_value":
        v, a = _scan_max(evaluate, N, k_horizon)
        return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, "tail infimum known, supremum is not")
    v, a = _scan_max(evaluate, N, k_horizon)
    return InfDecision(v, Status.HORIZON_ONLY, a, k_horizon, shape.note or "no structural certificate")


def tail_limit_inf(shape: TailShape, evaluate: EvalFn, k_horizon: int) -> InfDecision:
    """sup over N of inf over [N, inf) of g — the limiting tail infimum.

    This is the quantity that survives dropping any finite prefix; it is what
    block-certificate searches need.  The returned argmin field carries the
    smallest usable N when the decision is exact and finite.
    """
    k = shape.kind
    if k == "evper":
        if shape.drift < -_DRIFT_TOL:
            return InfDecision(-math.inf, Status.EXACT, None, shape.start, "negative per-period drift")
        if shape.drift > _DRIFT_TOL:
            return InfDecision(math.inf, Status.EXACT, None, shape.start, "positive per-period drift")
        if shape.drift != 0.0:
            lo = max(shape.start, k_horizon // 2)
            v, _ = _scan_min(evaluate, lo, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, lo, k_horizon, "drift within tolerance of zero")
        v, _ = _scan_min(evaluate, shape.start, shape.start + shape.period - 1)
        return InfDecision(v, Status.EXACT, shape.start, shape.start + shape.period - 1, "periodic tail")
    if k == "mono_up":
        if math.isnan(shape.limit):
            lo = max(shape.start, k_horizon // 2)
            v, _ = _scan_min(evaluate, lo, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, lo, k_horizon, "monotone tail with unresolved limit")
        return InfDecision(shape.limit, Status.EXACT, None, shape.start, "nondecreasing to limit")
    if k == "mono_down":
        if math.isnan(shape.limit):
            lo = max(shape.start, k_horizon // 2)
            v, _ = _scan_min(evaluate, lo, k_horizon)
            return InfDecision(v, Status.HORIZON_ONLY, lo, k_horizon, "monotone tail with unresolved limit")
        return InfDecision(shape.limit, Status.EXACT, None, shape.start, "nonincreasing to limit")
    if k == "tail_value":
        return InfDecision(shape.value, Status.EXACT, shape.start, shape.start, shape.note or "known tail infimum")
    if k == "per_mono_up":
        if math.isinf(shape.limit):
            return InfDecision(shape.limit, Status.EXACT, None, shape.start, "monotone part diverges")
        if shape.mono_fn is not None:
            lo, hi = shape.start, shape.start + shape.period - 1
            ks = np.arange(lo, hi + 1)
            per = evaluate(lo, hi) - shape.mono_fn(ks)
            return InfDecision(
                float(np.min(per)) + shape.limit, Status.EXACT, lo, hi, "periodic part + monotone limit"
            )
        lo = max(shape.start, k_horizon // 2)
        v, _ = _scan_min(evaluate, lo, k_horizon)
        return InfDecision(v, Status.HORIZON_ONLY, lo, k_horizon, "monotone part not separable")
    if k == "per_mono_down":
        if shape.limit == -math.inf:
            return InfDecision(-math.inf, Status.EXACT, None, shape.start, "monotone part diverges down")
        if shape.mono_fn is not None and math.isfinite(shape.limit):
            lo, hi = shape.start, shape.start + shape.period - 1
            ks = np.arange(lo, hi + 1)
            per = evaluate(lo, hi) - shape.mono_fn(ks)
            return InfDecision(
                float(np.min(per)) + shape.limit, Status.EXACT, lo, hi, "periodic part + monotone limit"
            )
        lo = max(shape.start, k_horizon // 2)
        v, _ = _scan_min(evaluate, lo, k_horizon)
        return InfDecision(v, Status.HORIZON_ONLY, lo, k_horizon, "monotone part not separable")
    lo = k_horizon // 2
    v, _ = _scan_min(evaluate, lo, k_horizon)
    return InfDecision(v, Status.HORIZON_ONLY, lo, k_horizon, shape.note or "no structural certificate")
