"""Weight sequences for weighted backward shifts, and their log-domain windows.

A weight sequence assigns a nonzero magnitude |w_k| to every index k >= 1
(unilateral) or every k in Z (bilateral).  Only moduli are represented: all
criteria downstream depend on |w_k| alone.

The central quantity is the log window

    window_log(w, n, k) = sum_{v=1..n} log|w_{v+k}|

i.e. the log of the n-step product landing at offset k.  Offsets k >= 0 are
valid for unilateral sequences, any integer for bilateral ones.

Sequences are built either directly or through a small spec language:

    const:<c>         |w_k| = c
    linear            |w_k| = k
    geom:<r>          |w_k| = r^k
    periodic:[a,b,..] repeating block
    evper:[p..]:[v..] prefix p, then repeating block v
    table:<path>      prefix read from a CSV file with a tail= header
    blocks            2 on [2^{2i}, 2^{2i+1}), 1/2 elsewhere
    spikes            2 everywhere except 2^{-i} at k = 2^i (i >= 1)
    bilateral:<pos>:<nonpos>   two unilateral specs; <nonpos> covers k <= 0
                               via k -> 1 - k
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .certify import CertifiedValue, Status, TailShape
from .errors import DomainError, WeightSpecError

LOG2 = math.log(2.0)


def _check_index(k: int) -> None:
    if k < 1:
        raise DomainError(f"unilateral weight index must be >= 1, got {k}")


class WeightSequence:
    """Base class; subclasses implement log_magnitude and structure hooks."""

    family = "abstract"
    name = "abstract"
    index_base: object = 1  # first weight index; "Z" for bilateral

    # -- values ---------------------------------------------------------

    def log_magnitude(self, k: int) -> float:
        raise NotImplementedError

    def magnitude_at(self, k: int) -> float:
        return math.exp(self.log_magnitude(k))

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        """log|w_k| for k in [lo, hi] inclusive."""
        return np.array([self.log_magnitude(k) for k in range(lo, hi + 1)])

    # -- structure hooks used by certified decisions ---------------------

    def period_info(self) -> Optional[tuple[int, int, float]]:
        """(prefix_len, period, per-period log sum) when eventually periodic."""
        return None

    def sum_class(self) -> tuple:
        """Growth class of the partial sums S_n = window_log(n, 0).

        ("evper", prefix, period, drift) | ("superlinear", sign) |
        ("peaks_up",) | ("unknown",)
        """
        info = self.period_info()
        if info is not None:
            p, q, d = info
            return ("evper", p, q, d)
        return ("unknown",)

    def log_sup(self) -> float:
        """Certified sup_k log|w_k| (may be +inf)."""
        return math.inf

    def window_shape(self, n: int) -> TailShape:
        """Tail shape of k -> window_log(self, n, k) over offsets k >= 0."""
        return TailShape.unknown()

    def render(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()!r})"


def _fmt(x: float) -> str:
    return repr(int(x)) if float(x).is_integer() and abs(x) < 1e16 else repr(float(x))


@dataclass(frozen=True, repr=False)
class ConstantWeights(WeightSequence):
    c: float

    family = "constant"
    name = "const"

    def log_magnitude(self, k: int) -> float:
        _check_index(k)
        return math.log(self.c)

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        _check_index(lo)
        return np.full(hi - lo + 1, math.log(self.c))

    def period_info(self):
        return (0, 1, math.log(self.c))

    def log_sup(self) -> float:
        return math.log(self.c)

    def window_shape(self, n: int) -> TailShape:
        return TailShape.evper(0, 1, 0.0)

    def render(self) -> str:
        return f"const:{_fmt(self.c)}"


@dataclass(frozen=True, repr=False)
class PeriodicWeights(WeightSequence):
    values: tuple[float, ...]

    family = "periodic"
    name = "periodic"

    def __post_init__(self):
        object.__setattr__(self, "_logs", tuple(math.log(v) for v in self.values))

    def log_magnitude(self, k: int) -> float:
        _check_index(k)
        return self._logs[(k - 1) % len(self.values)]

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        _check_index(lo)
        logs = np.array(self._logs)
        return logs[(np.arange(lo, hi + 1) - 1) % len(self.values)]

    def period_info(self):
        return (0, len(self.values), math.fsum(self._logs))

    def log_sup(self) -> float:
        return max(self._logs)

    def window_shape(self, n: int) -> TailShape:
        return TailShape.evper(0, len(self.values), 0.0)

    def render(self) -> str:
        return "periodic:[" + ",".join(_fmt(v) for v in self.values) + "]"


@dataclass(frozen=True, repr=False)
class EventuallyPeriodicWeights(WeightSequence):
    prefix: tuple[float, ...]
    period: tuple[float, ...]

    family = "eventually-periodic"
    name = "evper"

    def __post_init__(self):
        object.__setattr__(self, "_plogs", tuple(math.log(v) for v in self.prefix))
        object.__setattr__(self, "_qlogs", tuple(math.log(v) for v in self.period))

    def log_magnitude(self, k: int) -> float:
        _check_index(k)
        if k <= len(self.prefix):
            return self._plogs[k - 1]
        return self._qlogs[(k - 1 - len(self.prefix)) % len(self.period)]

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        _check_index(lo)
        ks = np.arange(lo, hi + 1)
        out = np.empty(ks.shape)
        p = len(self.prefix)
        head = ks <= p
        if head.any():
            out[head] = np.array(self._plogs)[ks[head] - 1]
        tail = ~head
        if tail.any():
            out[tail] = np.array(self._qlogs)[(ks[tail] - 1 - p) % len(self.period)]
        return out

    def period_info(self):
        return (len(self.prefix), len(self.period), math.fsum(self._qlogs))

    def log_sup(self) -> float:
        return max(self._plogs + self._qlogs)

    def window_shape(self, n: int) -> TailShape:
        return TailShape.evper(len(self.prefix), len(self.period), 0.0)

    def render(self) -> str:
        pre = ",".join(_fmt(v) for v in self.prefix)
        per = ",".join(_fmt(v) for v in self.period)
        return f"evper:[{pre}]:[{per}]"


@dataclass(frozen=True, repr=False)
class TableWeights(EventuallyPeriodicWeights):
    path: str = ""

    family = "table"
    name = "table"

    def render(self) -> str:
        return f"table:{self.path}"


@dataclass(frozen=True, repr=False)
class LinearWeights(WeightSequence):
    """|w_k| = k."""

    family = "closed-form"
    name = "linear"

    def log_magnitude(self, k: int) -> float:
        _check_index(k)
        return math.log(k)

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        _check_index(lo)
        return np.log(np.arange(lo, hi + 1, dtype=np.float64))

    def sum_class(self):
        return ("superlinear", 1)

    def window_shape(self, n: int) -> TailShape:
        return TailShape.mono_up(0, math.inf)

    def render(self) -> str:
        return "linear"


@dataclass(frozen=True, repr=False)
class GeomWeights(WeightSequence):
    """|w_k| = r^k."""

    r: float

    family = "closed-form"
    name = "geom"

    def log_magnitude(self, k: int) -> float:
        _check_index(k)
        return k * math.log(self.r)

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        _check_index(lo)
        return np.arange(lo, hi + 1, dtype=np.float64) * math.log(self.r)

    def sum_class(self):
        if self.r == 1.0:
            return ("evper", 0, 1, 0.0)
        return ("superlinear", 1 if self.r > 1.0 else -1)

    def period_info(self):
        return (0, 1, 0.0) if self.r == 1.0 else None

    def log_sup(self) -> float:
        return math.inf if self.r > 1.0 else math.log(self.r)

    def window_shape(self, n: int) -> TailShape:
        return TailShape.evper(0, 1, n * math.log(self.r))

    def render(self) -> str:
        return f"geom:{_fmt(self.r)}"


def _block_exponent_even(ks: np.ndarray) -> np.ndarray:
    # floor(log2 k) is exact for int64 inputs below 2^53
    e = np.floor(np.log2(ks.astype(np.float64))).astype(np.int64)
    return (e % 2) == 0


@dataclass(frozen=True, repr=False)
class BlocksWeights(WeightSequence):
    """|w_k| = 2 on dyadic blocks [2^{2i}, 2^{2i+1}), 1/2 elsewhere."""

    family = "closed-form"
    name = "blocks"

    def log_magnitude(self, k: int) -> float:
        _check_index(k)
        return LOG2 if (k.bit_length() - 1) % 2 == 0 else -LOG2

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        _check_index(lo)
        ks = np.arange(lo, hi + 1)
        return np.where(_block_exponent_even(ks), LOG2, -LOG2)

    def sum_class(self):
        # partial sums peak at ends of 2-blocks: S(2^{2i+1}-1) -> +inf
        return ("peaks_up",)

    def log_sup(self) -> float:
        return LOG2

    def window_shape(self, n: int) -> TailShape:
        # every factor is >= 1/2, and windows fully inside a 1/2-block hit
        # the bound exactly, arbitrarily far out
        return TailShape.tail_value(-n * LOG2, 0, note="dyadic half-blocks")

    def render(self) -> str:
        return "blocks"


@dataclass(frozen=True, repr=False)
class SpikesWeights(WeightSequence):
    """|w_k| = 2 except |w_{2^i}| = 2^{-i} for i >= 1."""

    family = "closed-form"
    name = "spikes"

    def log_magnitude(self, k: int) -> float:
        _check_index(k)
        if k >= 2 and (k & (k - 1)) == 0:
            return -(k.bit_length() - 1) * LOG2
        return LOG2

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        _check_index(lo)
        ks = np.arange(lo, hi + 1)
        out = np.full(ks.shape, LOG2)
        pow2 = (ks >= 2) & ((ks & (ks - 1)) == 0)
        if pow2.any():
            exps = np.floor(np.log2(ks[pow2].astype(np.float64))).astype(np.int64)
            out[pow2] = -exps * LOG2
        return out

    def sum_class(self):
        # S_n = n log2 - O(log^2 n): diverges
        return ("peaks_up",)

    def log_sup(self) -> float:
        return LOG2

    def window_shape(self, n: int) -> TailShape:
        # windows across k = 2^i sink like -(i - n + 1) log2: unbounded below
        # on every tail, and bounded above by n log2
        return TailShape.tail_value(-math.inf, 0, note="collapsing powers of two")

    def render(self) -> str:
        return "spikes"


@dataclass(frozen=True, repr=False)
class BilateralWeights(WeightSequence):
    """Weights over Z: pos covers k >= 1, nonpos covers k <= 0 via k -> 1-k."""

    pos: WeightSequence
    nonpos: WeightSequence

    family = "bilateral"
    name = "bilateral"
    index_base = "Z"

    def log_magnitude(self, k: int) -> float:
        if k >= 1:
            return self.pos.log_magnitude(k)
        return self.nonpos.log_magnitude(1 - k)

    def log_array(self, lo: int, hi: int) -> np.ndarray:
        ks = np.arange(lo, hi + 1)
        out = np.empty(ks.shape)
        right = ks >= 1
        if right.any():
            out[right] = self.pos.log_array(max(lo, 1), hi)
        if (~right).any():
            sub = self.nonpos.log_array(1 - min(hi, 0), 1 - lo)
            out[~right] = sub[::-1]
        return out

    def log_sup(self) -> float:
        return max(self.pos.log_sup(), self.nonpos.log_sup())

    def render(self) -> str:
        return f"bilateral:{self.pos.render()}:{self.nonpos.render()}"


@dataclass(frozen=True)
class LogWindow:
    """A log-domain window value: sum_{v=1..n} log|w_{v+k}|."""

    n: int
    k: int
    log_value: float

    @classmethod
    def compute(cls, w: WeightSequence, n: int, k: int) -> "LogWindow":
        return cls(n, k, window_log(w, n, k))


def window_log(w: WeightSequence, n: int, k: int) -> float:
    """Log of the n-step weight product at offset k: sum_{v=1..n} log|w_{v+k}|.

    Offsets k >= 0 for unilateral sequences, any integer for bilateral.
    n = 0 gives the empty product, 0.0.
    """
    if n < 0:
        raise DomainError(f"window length must be >= 0, got {n}")
    if w.index_base != "Z" and k < 0:
        raise DomainError(f"window offset must be >= 0 for unilateral weights, got {k}")
    if n == 0:
        return 0.0
    if n <= 8:
        return math.fsum(w.log_magnitude(k + v) for v in range(1, n + 1))
    return float(math.fsum(w.log_array(k + 1, k + n)))


def cumulative_sup_log(w: WeightSequence, horizon: int) -> CertifiedValue:
    """sup over n <= horizon of the partial sums S_n = sum_{v<=n} log|w_v|,
    certified against the family's growth class.

    When the structure certifies divergence the value is +inf with status
    Exact and the horizon evidence (horizon_sup, argmax_n, drift) kept in
    provenance; when it certifies a finite supremum the horizon value is
    returned as Exact.  Unstructured families fall back to HorizonOnly.
    """
    if horizon < 1:
        raise DomainError(f"horizon must be >= 1, got {horizon}")
    if w.index_base == "Z":
        raise DomainError("cumulative_sup_log is unilateral; use bilateral_verdict for two-sided data")
    sums = np.cumsum(w.log_array(1, horizon))
    amax = int(np.argmax(sums))
    horizon_sup = float(sums[amax])
    prov = {"horizon_sup": horizon_sup, "argmax_n": amax + 1}
    cls = w.sum_class()
    if cls[0] == "evper":
        _, p, q, d = cls
        prov["per_period_drift"] = d
        if d > 0.0:
            prov["divergence"] = "positive per-period drift"
            return CertifiedValue(math.inf, Status.EXACT, prov, horizon)
        if horizon >= p + q:
            return CertifiedValue(horizon_sup, Status.EXACT, prov, horizon)
        return CertifiedValue(horizon_sup, Status.LOWER_BOUNDED, prov, horizon)
    if cls[0] == "superlinear":
        if cls[1] > 0:
            prov["divergence"] = "superlinear partial sums"
            return CertifiedValue(math.inf, Status.EXACT, prov, horizon)
        # increments strictly negative from the start: sup is S_1
        return CertifiedValue(horizon_sup, Status.EXACT, prov, horizon)
    if cls[0] == "peaks_up":
        prov["divergence"] = "certified divergent peak subsequence"
        return CertifiedValue(math.inf, Status.EXACT, prov, horizon)
    return CertifiedValue(horizon_sup, Status.HORIZON_ONLY, prov, horizon)


# ---------------------------------------------------------------------------
# spec-language parser


def _read_token(s: str, pos: int) -> tuple[str, int]:
    end = s.find(":", pos)
    if end < 0:
        return s[pos:], len(s)
    return s[pos:end], end


def _expect_colon(s: str, pos: int) -> int:
    if pos >= len(s) or s[pos] != ":":
        raise WeightSpecError("expected ':'", s, pos)
    return pos + 1


def _read_float(s: str, pos: int) -> tuple[float, int]:
    tok, end = _read_token(s, pos)
    try:
        return float(tok), end
    except ValueError:
        raise WeightSpecError(f"expected a number, got {tok!r}", s, pos) from None


def _read_list(s: str, pos: int) -> tuple[list[float], int]:
    if pos >= len(s) or s[pos] != "[":
        raise WeightSpecError("expected '['", s, pos)
    end = s.find("]", pos)
    if end < 0:
        raise WeightSpecError("unterminated list", s, pos)
    body = s[pos + 1 : end]
    items = []
    for part in body.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            items.append(float(part))
        except ValueError:
            raise WeightSpecError(f"bad list entry {part!r}", s, pos) from None
    if not items:
        raise WeightSpecError("empty list", s, pos)
    return items, end + 1


def _magnitudes(values: Sequence[float], s: str, pos: int) -> tuple[float, ...]:
    out = []
    for v in values:
        if v == 0.0:
            raise WeightSpecError("weights must be nonzero", s, pos)
        out.append(abs(v))
    return tuple(out)


def _load_table(path: str, spec: str, pos: int) -> TableWeights:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise WeightSpecError(f"cannot read weight table: {exc}", spec, pos) from None
    tail_spec = None
    prefix: list[float] = []
    for ln in lines:
        if not ln:
            continue
        body = ln.lstrip("#").strip()
        if body.startswith("tail="):
            tail_spec = body[len("tail=") :].strip()
            continue
        if ln.startswith("#"):
            continue
        for cell in ln.split(","):
            cell = cell.strip()
            if not cell:
                continue
            try:
                prefix.append(float(cell))
            except ValueError:
                raise WeightSpecError(f"bad table entry {cell!r} in {path}", spec, pos) from None
    if tail_spec is None:
        raise WeightSpecError("weight table needs a 'tail=' header to define the sequence beyond the file", spec, pos)
    tail = parse_weight_spec(tail_spec)
    if isinstance(tail, ConstantWeights):
        period: tuple[float, ...] = (tail.c,)
    elif isinstance(tail, PeriodicWeights):
        period = tail.values
    else:
        raise WeightSpecError("table tail must be const:<c> or periodic:[..]", spec, pos)
    return TableWeights(prefix=_magnitudes(prefix, spec, pos), period=period, path=path)


def _parse(s: str, pos: int) -> tuple[WeightSequence, int]:
    head, p = _read_token(s, pos)
    if head == "const":
        p = _expect_colon(s, p)
        val, p = _read_float(s, p)
        if val == 0.0:
            raise WeightSpecError("weights must be nonzero", s, pos)
        return ConstantWeights(abs(val)), p
    if head == "linear":
        return LinearWeights(), p
    if head == "geom":
        p = _expect_colon(s, p)
        val, p = _read_float(s, p)
        if val == 0.0:
            raise WeightSpecError("geometric ratio must be nonzero", s, pos)
        return GeomWeights(abs(val)), p
    if head == "blocks":
        return BlocksWeights(), p
    if head == "spikes":
        return SpikesWeights(), p
    if head == "periodic":
        p = _expect_colon(s, p)
        vals, p = _read_list(s, p)
        return PeriodicWeights(_magnitudes(vals, s, pos)), p
    if head == "evper":
        p = _expect_colon(s, p)
        pre, p = _read_list(s, p)
        p = _expect_colon(s, p)
        per, p = _read_list(s, p)
        return EventuallyPeriodicWeights(_magnitudes(pre, s, pos), _magnitudes(per, s, pos)), p
    if head == "table":
        p = _expect_colon(s, p)
        path, p = _read_token(s, p)
        if not path:
            raise WeightSpecError("missing table path", s, p)
        return _load_table(path, s, pos), p
    if head == "bilateral":
        p = _expect_colon(s, p)
        pos_side, p = _parse(s, p)
        p = _expect_colon(s, p)
        nonpos_side, p = _parse(s, p)
        if pos_side.index_base == "Z" or nonpos_side.index_base == "Z":
            raise WeightSpecError("bilateral sides must be unilateral specs", s, pos)
        return BilateralWeights(pos_side, nonpos_side), p
    raise WeightSpecError(f"unknown weight family {head!r}", s, pos)


def parse_weight_spec(spec: str) -> WeightSequence:
    """Parse the weight mini-language; raises WeightSpecError with a position."""
    if not isinstance(spec, str) or not spec.strip():
        raise WeightSpecError("empty weight spec", spec or "", 0)
    w, p = _parse(spec.strip(), 0)
    if p != len(spec.strip()):
        raise WeightSpecError("trailing characters after weight spec", spec, p)
    return w
