"""Certified criterion engine for weighted backward shifts.

Everything here revolves around the log-domain integrand

    g_n(k) = sum_{v=1..n} log|w_{v+k}| + log a_{J,k} - log a_{m,n+k}

over landing offsets k.  Its certified tail infima, their behaviour as the
power n grows, and a small certificate algebra decide whether the shift
(or a polynomial in it) carries a hypercyclic subspace:

- tail infima finite for some row m (with the criterion supremum <= 1, which
  the dichotomy forces whenever it is finite at all) -> subspace exists;
- a positive block certificate pumps into exponential coefficient growth on
  a basis tail -> no subspace;
- structure missing -> honest HorizonOnly values, never a silent guess.

Shapes come from the weight and row families; this module combines them and
never infers structure from samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._kernels import max_window_min, sweep_min_grid
from .certify import CertifiedValue, InfDecision, Status, TailShape, decide_inf, decide_sup, tail_limit_inf
from .errors import CertificateError, DomainError
from .spaces import (
    CustomRows,
    OnesRows,
    PowerOfJRows,
    PowerOfKRows,
    SpaceModel,
    WeightVectorRows,
    check_condition_B,
)
from .tolerances import (
    BOUNDARY_BAND,
    CERT_MIN_LOG,
    DEFAULT_J_MAX,
    DEFAULT_K_HORIZON,
    DEFAULT_M_MAX,
    DEFAULT_N_MAX,
    LOG_TOL,
    MAX_CERTIFIED_SCAN,
    MAX_LAW_EXTENSION_N,
)
from .weights import (
    LOG2,
    BilateralWeights,
    BlocksWeights,
    GeomWeights,
    LinearWeights,
    SpikesWeights,
    WeightSequence,
)


@dataclass(frozen=True)
class Horizons:
    """Scan limits for everything that cannot be decided symbolically."""

    n_max: int = DEFAULT_N_MAX
    k_horizon: int = DEFAULT_K_HORIZON
    m_max: int = DEFAULT_M_MAX
    j_max: int = DEFAULT_J_MAX

    def __post_init__(self):
        for name in ("n_max", "k_horizon", "m_max", "j_max"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1, got {getattr(self, name)}")

    def as_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "k_horizon": self.k_horizon,
            "m_max": self.m_max,
            "j_max": self.j_max,
        }


def _require_unilateral(w: WeightSequence, space: SpaceModel, what: str) -> None:
    if isinstance(w, BilateralWeights) or w.index_base == "Z":
        raise DomainError(f"{what} works on unilateral weights; use bilateral_verdict for two-sided data")
    if space.bilateral:
        raise DomainError(f"{what} works on unilateral spaces; use bilateral_verdict for two-sided data")


# ---------------------------------------------------------------------------
# integrand evaluation


def integrand_array(
    w: WeightSequence, space: SpaceModel, J: int, m: int, n: int, lo: int, hi: int
) -> np.ndarray:
    """g_n(k) for k in [lo, hi] inclusive."""
    if lo < 0:
        raise DomainError(f"window offsets must be >= 0, got {lo}")
    if hi < lo:
        return np.empty(0)
    ks = np.arange(lo, hi + 1, dtype=np.int64)
    if n > 0:
        logs = w.log_array(lo + 1, hi + n)
        c = np.concatenate(([0.0], np.cumsum(logs)))
        win = c[ks - lo + n] - c[ks - lo]
    else:
        win = np.zeros(ks.shape)
    aJ = space.log_a_array(J, lo, hi)
    am = space.log_a_array(m, lo + n, hi + n)
    return win + aJ - am


def _integrand_eval(w, space, J, m, n):
    return lambda lo, hi: integrand_array(w, space, J, m, n, lo, hi)


def criterion_grid(
    w: WeightSequence,
    space: SpaceModel,
    J: int,
    m: int,
    ns: Sequence[int],
    k0: int,
    k1: int,
) -> tuple[np.ndarray, np.ndarray]:
    """(mins, argmins) of g_n over k in [k0, k1], one row per n, via the
    sweep kernels (jitted when available)."""
    _require_unilateral(w, space, "criterion_grid")
    space.check_j(J)
    space.check_j(m)
    ns_arr = np.asarray(list(ns), dtype=np.int64)
    if ns_arr.size == 0 or int(ns_arr.min()) < 1:
        raise DomainError("criterion_grid needs powers n >= 1")
    k0 = max(k0, space.k_min, 0)
    if k1 < k0:
        raise DomainError(f"empty offset range [{k0}, {k1}]")
    n_top = int(ns_arr.max())
    cap = space.k_cap
    if cap is not None and k1 + n_top > cap:
        raise DomainError(f"offset range needs column {k1 + n_top}, beyond the table range ({cap})")
    S = np.zeros(k1 + n_top + 1)
    S[1:] = np.cumsum(w.log_array(1, k1 + n_top))
    A = np.zeros(k1 + 1)
    A[k0:] = space.log_a_array(J, k0, k1)
    lo_b = k0 + int(ns_arr.min())
    Bv = np.zeros(k1 + n_top + 1)
    Bv[lo_b:] = space.log_a_array(m, lo_b, k1 + n_top)
    return sweep_min_grid(S, A, Bv, ns_arr, k0, k1)


# ---------------------------------------------------------------------------
# window x row shape combination


def _eventual_step_start(abs_log_coeff: float, period: int, drift: float) -> int:
    """Offset beyond which a linear per-period drift dominates a log-rate
    term whose one-period step is bounded by abs_log_coeff * period / k."""
    if abs_log_coeff == 0.0 or drift == 0.0:
        return 1
    return int(math.ceil(abs_log_coeff * period / abs(drift))) + 1


def _combined_shape(
    w: WeightSequence, space: SpaceModel, J: int, m: int, n: int
) -> tuple[TailShape, bool]:
    """Tail shape of k -> g_n(k), plus a flag marking branches whose
    conclusion provably does not depend on n (used for all-power claims)."""
    win = w.window_shape(n)
    row = space.row_term(J, m, n)
    rs = row.shape
    floor = max(space.k_min, 0)

    def st(*starts: int) -> int:
        return max(floor, *starts)

    # constant row term: only value fields shift
    if row.const_value is not None:
        c = row.const_value
        if win.kind == "evper":
            return TailShape.evper(st(win.start), win.period, win.drift), False
        if win.kind == "mono_up":
            return TailShape.mono_up(st(win.start), win.limit + c), False
        if win.kind == "tail_value":
            return (
                TailShape.tail_value(win.value + c, st(win.start), note=win.note),
                win.value == -math.inf,
            )
        return TailShape.unknown(win.note), False

    if win.kind == "evper":
        dw = win.drift
        if rs.kind == "evper":
            L = math.lcm(win.period, rs.period)
            drift = dw * (L // win.period) + rs.drift * (L // rs.period)
            return TailShape.evper(st(win.start, rs.start), L, drift), False
        if rs.kind in ("mono_up", "mono_down"):
            if dw == 0.0:
                maker = TailShape.per_mono_up if rs.kind == "mono_up" else TailShape.per_mono_down
                return (
                    maker(st(win.start, rs.start), win.period, rs.limit, mono_fn=row.mono_fn),
                    True,
                )
            k0 = st(win.start, rs.start, _eventual_step_start(row.abs_log_coeff, win.period, dw))
            if dw > 0.0:
                return TailShape.per_mono_up(k0, win.period, math.inf), False
            # linear window decay beats any log-rate row term
            return TailShape.per_mono_down(k0, win.period, -math.inf), True
        return TailShape.unknown(rs.note), False

    if win.kind == "mono_up":
        # factorial-type windows: nondecreasing in k with log-rate n
        if rs.kind == "evper":
            if rs.drift >= 0.0:
                return TailShape.per_mono_up(st(win.start, rs.start), rs.period, math.inf), False
            return (
                TailShape.tail_value(
                    -math.inf,
                    st(win.start, rs.start),
                    note="linear row decay beats log-rate window growth",
                ),
                True,
            )
        if rs.kind == "mono_up":
            return TailShape.mono_up(st(win.start, rs.start), math.inf), False
        if rs.kind == "mono_down":
            c_net = float(n) + row.log_coeff
            if c_net > 0.0:
                return (
                    TailShape.mono_up(st(1, win.start, rs.start), math.inf, note="net log-rate positive"),
                    False,
                )
            if c_net == 0.0:
                return (
                    TailShape.mono_up(
                        st(1, win.start, rs.start), math.nan, note="net log-rate zero: bounded, limit unresolved"
                    ),
                    False,
                )
            return (
                TailShape.tail_value(
                    -math.inf, st(1, win.start, rs.start), note="net log-rate negative"
                ),
                False,
            )
        return TailShape.unknown(rs.note), False

    if win.kind == "tail_value":
        dips = win.value == -math.inf
        if not math.isfinite(n * w.log_sup()):
            return TailShape.unknown("window family unbounded above"), False
        if rs.kind == "evper":
            if rs.drift < 0.0:
                return (
                    TailShape.tail_value(
                        -math.inf, st(win.start, rs.start), note="bounded window, row term drifts down"
                    ),
                    True,
                )
            if rs.drift == 0.0 and dips:
                return (
                    TailShape.tail_value(
                        -math.inf, st(win.start, rs.start), note="bounded row term, window dips unboundedly"
                    ),
                    True,
                )
            return TailShape.unknown("window floor against a drifting row term"), False
        if rs.kind in ("mono_up", "mono_down"):
            if rs.limit == -math.inf:
                return (
                    TailShape.tail_value(
                        -math.inf, st(win.start, rs.start), note="row term diverges down under a bounded window"
                    ),
                    True,
                )
            if dips and math.isfinite(rs.limit):
                return (
                    TailShape.tail_value(
                        -math.inf, st(win.start, rs.start), note="bounded row term, window dips unboundedly"
                    ),
                    True,
                )
            if dips and rs.limit == math.inf and row.log_coeff < 1.0:
                # dips deepen like -log k; a slower log-rate row cannot fill them
                return (
                    TailShape.tail_value(
                        -math.inf, st(win.start, rs.start), note="window dips outrun the row log-rate"
                    ),
                    True,
                )
            return TailShape.unknown("bounded-window / monotone-row pairing unresolved"), False
        return TailShape.unknown(rs.note), False

    return TailShape.unknown(win.note or "window family without structural shape"), False


# ---------------------------------------------------------------------------
# single tail infimum


def _clamped_horizon(space: SpaceModel, n: int, k_horizon: int) -> int:
    cap = space.k_cap
    if cap is None:
        return k_horizon
    return min(k_horizon, cap - n)


def tail_inf(
    w: WeightSequence,
    space: SpaceModel,
    J: int = 1,
    m: int = 1,
    n: int = 1,
    N: Optional[int] = None,
    k_horizon: int = DEFAULT_K_HORIZON,
) -> CertifiedValue:
    """Certified inf over k >= N of g_n(k)."""
    _require_unilateral(w, space, "tail_inf")
    space.check_j(J)
    space.check_j(m)
    if n < 1:
        raise DomainError(f"power must be >= 1, got {n}")
    floor = max(space.k_min, 0)
    if N is None:
        N = floor
    if N < floor:
        raise DomainError(f"tail start {N} below the space's offset domain ({floor})")
    hor = _clamped_horizon(space, n, k_horizon)
    if hor < N:
        raise DomainError("table columns run out before the tail start")
    shape, _ = _combined_shape(w, space, J, m, n)
    dec = decide_inf(shape, _integrand_eval(w, space, J, m, n), N, hor)
    prov = {
        "J": J,
        "m": m,
        "n": n,
        "N": N,
        "argmin_k": dec.argmin,
        "shape": shape.kind,
        "note": dec.note,
    }
    return CertifiedValue(dec.log_value, dec.status, prov, horizon=dec.scan_hi)


def window_max_inf(
    w: WeightSequence,
    space: SpaceModel,
    J: int = 1,
    m: int = 1,
    n: int = 1,
    N: Optional[int] = None,
    k_horizon: int = DEFAULT_K_HORIZON,
) -> CertifiedValue:
    """Certified inf over source indices k of the best window ending at k:
    max over 1 <= i <= n of [window(i, k-i) + log a_{J,k-i} - log a_{m,k}].

    This is the log seminorm ratio of the best shift power applied to one
    basis vector e_k.  The scan starts at max(N, k_min + n) so that every
    length lands inside the table.  The pointwise best length often rescues
    indices that any single length loses, so this is NOT the max of the
    per-length infima.
    """
    _require_unilateral(w, space, "window_max_inf")
    space.check_j(J)
    space.check_j(m)
    if n < 1:
        raise DomainError(f"power must be >= 1, got {n}")
    floor = max(space.k_min, 0)
    if N is None:
        N = floor
    if N < floor:
        raise DomainError(f"tail start {N} below the space's offset domain ({floor})")
    # every window length up to n must land inside the table
    N_eff = max(N, floor + n)
    hor = min(k_horizon, space.k_cap) if space.k_cap is not None else k_horizon
    if hor < N_eff:
        raise DomainError("table columns run out before the tail start")

    shapes = []
    rows = []
    for i in range(1, n + 1):
        shapes.append(_combined_shape(w, space, J, m, i)[0])
        rows.append(space.row_term(J, m, i))

    def evaluate(lo: int, hi: int) -> np.ndarray:
        return np.maximum.reduce(
            [integrand_array(w, space, J, m, i, lo - i, hi - i) for i in range(1, n + 1)]
        )

    prov: dict = {"J": J, "m": m, "n": n, "N": N_eff}

    if all(s.kind == "evper" for s in shapes):
        if all(s.drift < 0.0 for s in shapes):
            prov.update({"argmin_k": None, "note": "every window length drifts down"})
            return CertifiedValue(-math.inf, Status.EXACT, prov, horizon=hor)
        if all(s.drift >= 0.0 for s in shapes):
            # each term is per-residue nondecreasing in the source index
            period = math.lcm(*[s.period for s in shapes])
            start = max(s.start + i for i, s in enumerate(shapes, 1))
            hi = max(N_eff, start) + period - 1
            vals = evaluate(N_eff, hi)
            j = int(np.argmin(vals))
            prov.update({"argmin_k": N_eff + j, "note": "periodic or rising in every window length"})
            return CertifiedValue(float(vals[j]), Status.EXACT, prov, horizon=hi)

    if all(s.kind == "mono_up" for s in shapes):
        hi = max(N_eff, max(s.start + i for i, s in enumerate(shapes, 1)))
        vals = evaluate(N_eff, hi)
        j = int(np.argmin(vals))
        prov.update({"argmin_k": N_eff + j, "note": "nondecreasing in every window length"})
        return CertifiedValue(float(vals[j]), Status.EXACT, prov, horizon=hi)

    consts = [r.const_value for r in rows]
    if isinstance(w, SpikesWeights) and all(c is not None for c in consts):
        # every window ending at a collapsing index contains the collapse
        prov.update({"argmin_k": None, "note": "all window lengths cross the collapsing indices"})
        return CertifiedValue(-math.inf, Status.EXACT, prov, horizon=hor)

    if isinstance(w, BlocksWeights) and all(c is not None for c in consts):
        # inside long half-blocks every length sits at its floor simultaneously
        value = max(-i * LOG2 + consts[i - 1] for i in range(1, n + 1))
        prov.update({"argmin_k": None, "note": "simultaneous window floors inside half-blocks"})
        return CertifiedValue(value, Status.EXACT, prov, horizon=hor)

    S = np.zeros(hor + 1)
    S[1:] = np.cumsum(w.log_array(1, hor))
    A = np.zeros(hor + 1)
    A[floor:] = space.log_a_array(J, floor, hor)
    Bv = np.zeros(hor + 1)
    Bv[N_eff:] = space.log_a_array(m, N_eff, hor)
    v, k = max_window_min(S, A, Bv, n, N_eff, hor, floor)
    prov.update({"argmin_k": k, "note": "no structural certificate"})
    return CertifiedValue(v, Status.HORIZON_ONLY, prov, horizon=hor)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class BlockCertificate:
    """inf over k >= N of g_m(k) >= log_C with log_C > 0: one positive block
    that number pumping turns into unbounded growth."""

    log_C: float
    m: int
    N: int
    J: int = 1
    row: int = 1
    note: str = ""

    def __post_init__(self):
        if not (self.log_C > LOG_TOL):
            raise CertificateError(f"block certificate needs log C > {LOG_TOL}, got {self.log_C}")
        if self.m < 1 or self.N < 0:
            raise CertificateError("block certificate needs m >= 1 and N >= 0")
        if self.row < self.J:
            raise CertificateError("block certificate needs row >= J for sound pumping")

    @property
    def C(self) -> float:
        return math.exp(self.log_C)

    def as_dict(self) -> dict:
        return {
            "kind": "block",
            "log_C": self.log_C,
            "C": self.C,
            "m": self.m,
            "N": self.N,
            "J": self.J,
            "row": self.row,
            "note": self.note,
        }


@dataclass(frozen=True)
class GrowthCertificate:
    """Pumped form: g_n(k) >= floor(n/m) * log_C - log_K for all k >= N,
    i.e. the n-th power stretches every basis tail vector e_s, s >= N + n,
    by at least C^floor(n/m) / K."""

    log_C: float
    m: int
    N: int
    log_K: float
    J: int = 1
    row: int = 1
    step_exact: bool = True
    note: str = ""

    def log_C_n(self, n: int) -> float:
        if n < 0:
            raise DomainError(f"power must be >= 0, got {n}")
        return (n // self.m) * self.log_C - self.log_K

    def tail_start(self, n: int) -> int:
        """e_s is stretched for every s >= tail_start(n)."""
        return self.N + n

    def as_dict(self) -> dict:
        return {
            "kind": "growth",
            "log_C": self.log_C,
            "m": self.m,
            "N": self.N,
            "log_K": self.log_K,
            "K": math.exp(self.log_K),
            "J": self.J,
            "row": self.row,
            "step_exact": self.step_exact,
            "note": self.note,
        }

    def verify(
        self,
        w: WeightSequence,
        space: SpaceModel,
        n_check: int = 64,
        k_horizon: int = DEFAULT_K_HORIZON,
        tol: float = LOG_TOL,
    ) -> dict:
        """Re-derive the claimed bounds for n <= n_check from scratch."""
        rows = []
        ok = True
        for n in range(1, n_check + 1):
            bound = self.log_C_n(n)
            got = tail_inf(w, space, self.J, self.row, n, N=self.N, k_horizon=k_horizon)
            margin = got.log_value - bound
            good = got.log_value >= bound - tol and got.status in (Status.EXACT, Status.LOWER_BOUNDED)
            ok = ok and good
            rows.append(
                {
                    "n": n,
                    "bound_log": bound,
                    "inf_log": got.log_value,
                    "margin": margin,
                    "status": got.status.value,
                    "ok": good,
                }
            )
        return {"ok": ok, "rows": rows}


def _step_sup(
    w: WeightSequence, space: SpaceModel, row: int, s: int, N: int, k_horizon: int
) -> tuple[float, bool]:
    """Certified upper bound for sup_{k>=N} [window_s(k) + a_{row,k} - a_{row,k+s}].

    Exact when the combined shape supports a certified supremum; otherwise
    falls back to the window supremum alone (sound for rows nondecreasing
    in k, where the row difference is <= 0)."""
    shape, _ = _combined_shape(w, space, row, row, s)
    dec = decide_sup(shape, _integrand_eval(w, space, row, row, s), N, k_horizon)
    if dec.status == Status.EXACT:
        return dec.log_value, True
    if space.matrix.monotone_in_k() is True:
        wdec = decide_sup(
            w.window_shape(s), lambda lo, hi: _window_array(w, s, lo, hi), N, k_horizon
        )
        if dec_is_usable_sup(wdec):
            return wdec.log_value, False
    raise CertificateError(f"cannot bound the {s}-step constant for row {row}")


def dec_is_usable_sup(dec: InfDecision) -> bool:
    return dec.status == Status.EXACT and math.isfinite(dec.log_value)


def _window_array(w: WeightSequence, n: int, lo: int, hi: int) -> np.ndarray:
    logs = w.log_array(lo + 1, hi + n)
    c = np.concatenate(([0.0], np.cumsum(logs)))
    ks = np.arange(lo, hi + 1) - lo
    return c[ks + n] - c[ks]


def blockcert_to_growthcert(
    cert: BlockCertificate,
    w: WeightSequence,
    space: SpaceModel,
    k_horizon: int = DEFAULT_K_HORIZON,
) -> GrowthCertificate:
    """Re-verify a block certificate and pump it into a growth certificate.

    The step constant K collects the worst leftover r-step window (plus row
    shift) over the tail, clamped at 1 so the floor(n/m) bound stays sound
    at multiples of m.
    """
    _require_unilateral(w, space, "blockcert_to_growthcert")
    space.check_j(cert.J)
    space.check_j(cert.row)
    floor = max(space.k_min, 0, 1)
    if cert.N < floor:
        raise CertificateError(f"certificate tail start {cert.N} below the offset domain ({floor})")
    hor = _clamped_horizon(space, cert.m, k_horizon)
    got = tail_inf(w, space, cert.J, cert.row, cert.m, N=cert.N, k_horizon=hor)
    if got.status != Status.EXACT:
        raise CertificateError(
            f"cannot certify the block on these weights (tail infimum is {got.status.value})"
        )
    if got.log_value < cert.log_C - 1e-12:
        raise CertificateError(
            f"block claims log C = {cert.log_C:.12g} but the certified tail infimum is {got.log_value:.12g}"
        )
    log_K = 0.0
    step_exact = True
    for s in range(1, cert.m):
        sup_s, exact = _step_sup(w, space, cert.row, s, cert.N, hor)
        log_K = max(log_K, sup_s)
        step_exact = step_exact and exact
    return GrowthCertificate(
        log_C=cert.log_C,
        m=cert.m,
        N=cert.N,
        log_K=log_K,
        J=cert.J,
        row=cert.row,
        step_exact=step_exact,
        note=cert.note,
    )


# ---------------------------------------------------------------------------
# the criterion supremum over powers


@dataclass(frozen=True)
class _NLaw:
    """g_{n+q}(k) = g_n(k) + delta for every valid k, once n >= n0."""

    q: int
    delta: float
    n0: int

    def as_dict(self) -> dict:
        return {"q": self.q, "delta": self.delta, "n0": self.n0}


def _n_law(w: WeightSequence, space: SpaceModel, J: int, row: int) -> Optional[_NLaw]:
    info = w.period_info()
    if info is None:
        return None
    P, q, d = info
    rd = space.row_n_delta(J, row, q)
    if rd is None:
        return None
    delta, n0r = rd
    return _NLaw(q, d + delta, max(1, P, n0r))


def _extract_cert(
    w: WeightSequence,
    space: SpaceModel,
    J: int,
    row: int,
    n: int,
    shape: TailShape,
    limit_value: float,
    hor: int,
) -> Optional[BlockCertificate]:
    """Turn a positive tail limit at power n into a concrete (C, m, N)."""
    if math.isfinite(limit_value):
        target = max(CERT_MIN_LOG, limit_value / 2.0)
    else:
        target = CERT_MIN_LOG
    evaluate = _integrand_eval(w, space, J, row, n)
    N = max(1, space.k_min, min(shape.start, MAX_CERTIFIED_SCAN))
    while N <= MAX_CERTIFIED_SCAN:
        dec = decide_inf(shape, evaluate, N, hor)
        if dec.status != Status.EXACT:
            return None
        if dec.log_value > target:
            return BlockCertificate(dec.log_value, n, N, J, row)
        N *= 2
    return None


@dataclass(frozen=True)
class ThetaDetails:
    value: CertifiedValue
    rows: tuple
    certificate: Optional[BlockCertificate]
    J: int
    row: int


def _certified_all_powers_neg_inf(
    w: WeightSequence,
    space: SpaceModel,
    law: Optional[_NLaw],
    scanned: list,
    n_scan: int,
) -> Optional[str]:
    """Reason string when every power (not just the scanned ones) certifiably
    has tail infimum -inf; None otherwise."""
    if not scanned:
        return None
    if not all(d.status == Status.EXACT and d.log_value == -math.inf for d, _, _ in scanned):
        return None
    if all(uniform for _, _, uniform in scanned):
        return "the collapsing branch does not depend on the power"
    if law is not None and n_scan >= law.n0 + law.q - 1:
        return "per-period growth law propagates the collapse to every power"
    if isinstance(w, GeomWeights) and w.r < 1.0:
        return "window drift shrinks with the power; the first power already collapses"
    return None


def theta_details(
    w: WeightSequence,
    space: SpaceModel,
    J: int = 1,
    row: int = 1,
    horizons: Optional[Horizons] = None,
) -> ThetaDetails:
    """sup over powers n of the certified tail infimum, with the per-power
    report rows and any block certificate found along the way."""
    _require_unilateral(w, space, "theta")
    space.check_j(J)
    space.check_j(row)
    h = horizons or Horizons()
    law = _n_law(w, space, J, row)
    n_scan = h.n_max if law is None else max(h.n_max, law.n0 + law.q)
    floor = max(space.k_min, 0)

    scanned = []  # (decision, shape, uniform) per n = 1..n_scan
    limits = {}  # n -> InfDecision from tail_limit_inf
    cert: Optional[BlockCertificate] = None
    pumped_from: Optional[int] = None
    for n in range(1, n_scan + 1):
        hor = _clamped_horizon(space, n, h.k_horizon)
        if hor < floor:
            break
        shape, uniform = _combined_shape(w, space, J, row, n)
        evaluate = _integrand_eval(w, space, J, row, n)
        dec = decide_inf(shape, evaluate, floor, hor)
        scanned.append((dec, shape, uniform))
        if cert is None:
            t = tail_limit_inf(shape, evaluate, hor)
            limits[n] = t
            if t.status == Status.EXACT and t.log_value > CERT_MIN_LOG:
                cert = _extract_cert(w, space, J, row, n, shape, t.log_value, hor)
                if cert is not None:
                    pumped_from = n

    if cert is None and law is not None and law.delta > LOG_TOL and law.n0 in limits:
        base = limits[law.n0]
        if base.status == Status.EXACT and math.isfinite(base.log_value):
            steps = max(1, math.ceil((2.0 * CERT_MIN_LOG - base.log_value) / law.delta))
            n_star = law.n0 + steps * law.q
            if n_star <= MAX_LAW_EXTENSION_N:
                hor = _clamped_horizon(space, n_star, h.k_horizon)
                shape_star, _ = _combined_shape(w, space, J, row, n_star)
                eval_star = _integrand_eval(w, space, J, row, n_star)
                t_star = tail_limit_inf(shape_star, eval_star, hor)
                if t_star.status == Status.EXACT and t_star.log_value > CERT_MIN_LOG:
                    cert = _extract_cert(w, space, J, row, n_star, shape_star, t_star.log_value, hor)
                    if cert is not None:
                        pumped_from = n_star

    rows_report = tuple(
        {
            "n": i + 1,
            "inf_log": d.log_value,
            "status": d.status.value,
            "argmin_k": d.argmin,
        }
        for i, (d, _, _) in enumerate(scanned[: h.n_max])
    )
    prov: dict = {
        "J": J,
        "row": row,
        "criterion_values": list(rows_report),
        "law": law.as_dict() if law else None,
        "certificate": cert.as_dict() if cert else None,
        "pumped_from_n": pumped_from,
    }

    if cert is not None:
        value = CertifiedValue(math.inf, Status.EXACT, prov, horizon=h.k_horizon)
        return ThetaDetails(value, rows_report, cert, J, row)

    finite_vals = [d.log_value for d, _, _ in scanned]
    all_exact = all(d.status == Status.EXACT for d, _, _ in scanned) and bool(scanned)
    best = max(finite_vals) if finite_vals else -math.inf
    argmax_n = (int(np.argmax(finite_vals)) + 1) if finite_vals else None
    prov["argmax_n"] = argmax_n

    reason = _certified_all_powers_neg_inf(w, space, law, scanned, n_scan)
    if reason is not None:
        prov["note"] = reason
        value = CertifiedValue(-math.inf, Status.EXACT, prov, horizon=h.k_horizon)
        return ThetaDetails(value, rows_report, None, J, row)

    if law is not None and law.delta <= 0.0 and all_exact and n_scan >= law.n0 + law.q - 1:
        prov["note"] = "per-period growth law caps every unscanned power"
        value = CertifiedValue(best, Status.EXACT, prov, horizon=h.k_horizon)
        return ThetaDetails(value, rows_report, None, J, row)

    if (
        isinstance(w, BlocksWeights)
        and all_exact
        and scanned
        and all(s.kind == "tail_value" for _, s, _ in scanned)
        and scanned[0][0].log_value <= 0.0
    ):
        # the window floor scales linearly in the power; a nonpositive first
        # slope keeps every later power below the first
        prov["note"] = "window floor scales linearly in the power"
        value = CertifiedValue(best, Status.EXACT, prov, horizon=h.k_horizon)
        return ThetaDetails(value, rows_report, None, J, row)

    status = Status.LOWER_BOUNDED if all_exact else Status.HORIZON_ONLY
    prov["note"] = "supremum over unscanned powers not certified"
    value = CertifiedValue(best, status, prov, horizon=h.k_horizon)
    return ThetaDetails(value, rows_report, None, J, row)


def theta(
    w: WeightSequence,
    space: SpaceModel,
    J: int = 1,
    m: int = 1,
    horizons: Optional[Horizons] = None,
) -> CertifiedValue:
    """Certified sup over powers of the tail infimum of g_n (log domain)."""
    return theta_details(w, space, J, m, horizons).value


def find_block_certificate(
    w: WeightSequence,
    space: SpaceModel,
    J: int = 1,
    row: int = 1,
    horizons: Optional[Horizons] = None,
) -> Optional[BlockCertificate]:
    return theta_details(w, space, J, row, horizons).certificate


# ---------------------------------------------------------------------------
# hypercyclicity of the shift itself


@dataclass(frozen=True)
class HcReport:
    outcome: str  # "yes" | "no" | "unknown"
    certified: bool
    witness_j: Optional[int]
    reason: str
    evidence: tuple

    def as_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "certified": self.certified,
            "witness_j": self.witness_j,
            "reason": self.reason,
            "evidence": list(self.evidence),
        }


def _cmp_band(a: float, b: float, band: float = 1e-12) -> Optional[int]:
    """-1/0/+1 when certain, None inside the uncertainty band."""
    if a == b:
        return 0
    if a > b + band:
        return 1
    if a < b - band:
        return -1
    return None


def hypercyclicity_test(
    w: WeightSequence, space: SpaceModel, horizons: Optional[Horizons] = None
) -> HcReport:
    """Does sup_n (prod_{v<=n} |w_v|) / a_{j,n} diverge for every row j?

    Decided symbolically from the weight-sum growth class against the row
    growth class; the evidence rows carry the empirical sups at the horizon.
    """
    _require_unilateral(w, space, "hypercyclicity_test")
    h = horizons or Horizons()
    mat = space.matrix
    cap = space.k_cap
    H = min(h.k_horizon, cap) if cap is not None else h.k_horizon
    n_lo = max(1, space.k_min)
    S = np.cumsum(w.log_array(1, H))
    evidence = []
    j_top = min(h.j_max, mat.j_cap) if mat.j_cap is not None else h.j_max
    for j in range(1, j_top + 1):
        vals = S[n_lo - 1 :] - space.log_a_array(j, n_lo, H)
        a = int(np.argmax(vals))
        evidence.append({"j": j, "sup_log": float(vals[a]), "argmax_n": n_lo + a})

    cls = w.sum_class()

    def decide() -> tuple[str, bool, Optional[int], str]:
        if isinstance(mat, CustomRows):
            return ("unknown", False, None, "custom rows: growth class not certified")
        if cls[0] == "superlinear":
            if cls[1] > 0:
                return ("yes", True, None, "superlinear weight-product growth outruns every row")
            return ("no", True, 1, "weight products collapse superlinearly")
        if cls[0] == "peaks_up":
            # certified linear peak rates: sums reach rate*n + O(1) along a
            # subsequence and never exceed rate*n + O(1) overall
            if isinstance(w, SpikesWeights):
                rate = LOG2  # S_n = n log 2 - Theta(log^2 n)
            elif isinstance(w, BlocksWeights):
                rate = 2.0 * LOG2 / 3.0  # peaks at ends of the doubling half-blocks
            else:
                return ("unknown", False, None, "peak rate not certified for this family")
            if isinstance(mat, OnesRows):
                return ("yes", True, None, "divergent weight-product peaks against constant rows")
            if isinstance(mat, PowerOfKRows):
                return ("yes", True, None, "linear-rate peaks outrun logarithmic rows")
            if isinstance(mat, PowerOfJRows):
                if rate > 700.0:
                    return ("no", True, None, "row slopes grow without bound and eventually exceed the peak rate")
                j_wit = max(1, math.ceil(math.exp(rate) - 1e-12))
                return (
                    "no",
                    True,
                    j_wit,
                    f"row slopes grow without bound; row {j_wit} already matches the peak rate",
                )
            if isinstance(mat, WeightVectorRows):
                growth1 = space.row_growth(1)
                if growth1[0] in ("const", "bounded", "log"):
                    return ("yes", True, None, "linear-rate peaks outrun the weight-vector rows")
                if growth1[0] == "linear":
                    side = _cmp_band(rate, growth1[1])
                    if side == 1:
                        return ("yes", True, None, "peak rate beats the row slope")
                    if side in (0, -1):
                        return ("no", True, 1, "row slope at or above the peak rate")
                    return ("unknown", False, None, "peak rate too close to the row slope")
            return ("unknown", False, None, "peak rate versus row growth not certified")
        if cls[0] == "evper":
            _, P, q, d = cls
            if isinstance(mat, OnesRows):
                if d > 0.0:
                    return ("yes", True, None, "positive per-period weight drift")
                return ("no", True, 1, "nonpositive per-period weight drift")
            if isinstance(mat, PowerOfKRows):
                if d > 0.0:
                    return ("yes", True, None, "linear weight drift beats logarithmic rows")
                return ("no", True, 1, "nonpositive weight drift against growing rows")
            if isinstance(mat, PowerOfJRows):
                mu = d / q
                if mu > 700.0:
                    return ("no", True, None, "row slopes grow without bound and eventually exceed the weight drift")
                j_wit = 1 if mu <= 0.0 else max(1, math.ceil(math.exp(mu) - 1e-12))
                return (
                    "no",
                    True,
                    j_wit,
                    f"row slopes grow without bound; row {j_wit} already matches the weight drift",
                )
            if isinstance(mat, WeightVectorRows):
                g = space.row_growth(1)
                if g[0] in ("const", "bounded"):
                    if d > 0.0:
                        return ("yes", True, None, "positive per-period weight drift")
                    return ("no", True, 1, "nonpositive per-period weight drift")
                if g[0] == "log":
                    if d > 0.0:
                        return ("yes", True, None, "linear weight drift beats the logarithmic rows")
                    return ("no", True, 1, "nonpositive weight drift against growing rows")
                if g[0] == "linear":
                    side = _cmp_band(d, q * g[1])
                    if side == 1:
                        return ("yes", True, None, "weight drift beats the row slope")
                    if side in (0, -1):
                        return ("no", True, 1, "row slope at or above the weight drift")
                    return ("unknown", False, None, "weight drift too close to the row slope")
            return ("unknown", False, None, "row growth class not certified")
        return ("unknown", False, None, "unstructured weight family")

    outcome, certified, witness, reason = decide()
    return HcReport(outcome, certified, witness, reason, tuple(evidence))


# ---------------------------------------------------------------------------
# operator continuity


def check_operator_continuity(w: WeightSequence, space: SpaceModel) -> tuple[Optional[bool], str]:
    """Certified True/False when structure decides whether the shift is a
    continuous operator on the space; None when it cannot be decided."""
    mat = space.matrix
    if isinstance(w, BilateralWeights):
        if math.isfinite(w.log_sup()):
            return True, "bounded weights"
        if isinstance(w.pos, (LinearWeights,)) or isinstance(w.nonpos, (LinearWeights,)):
            return False, "unbounded weights on an equal-row space"
        for side in (w.pos, w.nonpos):
            if isinstance(side, GeomWeights) and side.r > 1.0:
                return False, "unbounded weights on an equal-row space"
        return None, "weight supremum not certified"
    if isinstance(mat, (OnesRows, WeightVectorRows)):
        if math.isfinite(w.log_sup()):
            return True, "bounded weights on an equal-row space"
        if isinstance(w, LinearWeights) or (isinstance(w, GeomWeights) and w.r > 1.0):
            return False, "unbounded weights on an equal-row space"
        return None, "weight supremum not certified"
    if isinstance(mat, PowerOfJRows):
        return True, "weight growth is at most exponential; the row ladder absorbs it"
    if isinstance(mat, PowerOfKRows):
        if isinstance(w, GeomWeights) and w.r > 1.0:
            return False, "exponential weights outgrow every polynomial row"
        return True, "weight growth is at most polynomial; the row ladder absorbs it"
    return None, "custom rows: continuity not certified"


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class VerdictReport:
    outcome: str  # HasSubspace | NoSubspace | NotHypercyclic | Boundary | UnknownAtHorizon
    weights: str
    space: str
    horizons: Horizons
    theta: Optional[CertifiedValue] = None
    criterion_values: tuple = ()
    certificate: Optional[dict] = None
    witness_row: Optional[int] = None
    hypercyclic: Optional[dict] = None
    conditions: tuple = ()
    notes: tuple = ()
    evidence: Optional[dict] = None

    def as_dict(self) -> dict:
        return {
            "schema": 1,
            "outcome": self.outcome,
            "weights": self.weights,
            "space": self.space,
            "horizons": self.horizons.as_dict(),
            "theta": self.theta.as_dict() if self.theta is not None else None,
            "criterion_values": list(self.criterion_values),
            "certificate": self.certificate,
            "witness_row": self.witness_row,
            "hypercyclic": self.hypercyclic,
            "conditions": list(self.conditions),
            "notes": list(self.notes),
            "evidence": self.evidence,
        }


def _all_row_divergence(w: WeightSequence, space: SpaceModel) -> bool:
    """Certified: every row m >= 1 (not just the scanned ones) has a
    divergent criterion."""
    if space.equal_rows:
        return True
    if isinstance(space.matrix, PowerOfJRows):
        cls = w.sum_class()
        return cls[0] == "superlinear" and cls[1] > 0
    return False


def subspace_verdict(
    w: WeightSequence, space: SpaceModel, horizons: Optional[Horizons] = None
) -> VerdictReport:
    """Full decision: does the shift have a hypercyclic subspace?"""
    h = horizons or Horizons()
    if isinstance(w, BilateralWeights) or space.bilateral:
        return bilateral_verdict(w, space, h)

    cont, why = check_operator_continuity(w, space)
    if cont is False:
        raise DomainError(f"the shift is not a continuous operator on this space: {why}")
    notes: list[str] = []
    if cont is None:
        notes.append(f"operator continuity not certified: {why}")

    hc = hypercyclicity_test(w, space, h)
    conds: list[dict] = []
    b = None
    if not space.equal_rows:
        b = check_condition_B(space, 1, h.j_max, h.m_max, h.n_max, h.k_horizon)
        conds.append(b.as_dict())

    wrender, srender = w.render(), space.render()

    if hc.outcome == "no" and hc.certified:
        det = theta_details(w, space, 1, 1, h)
        return VerdictReport(
            "NotHypercyclic",
            wrender,
            srender,
            h,
            det.value,
            det.rows,
            None,
            None,
            hc.as_dict(),
            tuple(conds),
            tuple(notes + [hc.reason]),
        )
    if hc.outcome != "yes" or not hc.certified:
        det = theta_details(w, space, 1, 1, h)
        notes.append(f"hypercyclicity undecided: {hc.reason}")
        return VerdictReport(
            "UnknownAtHorizon",
            wrender,
            srender,
            h,
            det.value,
            det.rows,
            None,
            None,
            hc.as_dict(),
            tuple(conds),
            tuple(notes),
        )

    theorem_ok = space.equal_rows or (b is not None and b.holds == "Holds")
    if not theorem_ok:
        notes.append("row-domination condition unavailable: the subspace dichotomy is not certified here")

    rows_to_try = [1] if space.equal_rows else list(range(1, h.m_max + 1))
    witness: Optional[tuple[int, ThetaDetails]] = None
    certs: dict[int, ThetaDetails] = {}
    exact_boundary = False
    band_boundary = False
    first_det: Optional[ThetaDetails] = None
    for mr in rows_to_try:
        det = theta_details(w, space, 1, mr, h)
        if first_det is None:
            first_det = det
        v = det.value
        if det.certificate is not None:
            certs[mr] = det
            continue
        if v.status == Status.EXACT:
            if v.log_value <= LOG_TOL:
                witness = (mr, det)
                break
            if math.isfinite(v.log_value):
                exact_boundary = True
            continue
        if abs(v.log_value) <= BOUNDARY_BAND:
            band_boundary = True

    if witness is not None and theorem_ok:
        mr, det = witness
        return VerdictReport(
            "HasSubspace",
            wrender,
            srender,
            h,
            det.value,
            det.rows,
            None,
            mr,
            hc.as_dict(),
            tuple(conds),
            tuple(notes),
        )
    if witness is not None:
        mr, det = witness
        return VerdictReport(
            "UnknownAtHorizon",
            wrender,
            srender,
            h,
            det.value,
            det.rows,
            None,
            mr,
            hc.as_dict(),
            tuple(conds),
            tuple(notes),
        )

    if len(certs) == len(rows_to_try) and certs:
        det1 = certs[rows_to_try[0]]
        if theorem_ok and _all_row_divergence(w, space):
            cert_dict: dict = {"block": det1.certificate.as_dict()}
            try:
                growth = blockcert_to_growthcert(det1.certificate, w, space, h.k_horizon)
                cert_dict["growth"] = growth.as_dict()
            except CertificateError as exc:
                notes.append(f"growth constant not certified: {exc}")
            return VerdictReport(
                "NoSubspace",
                wrender,
                srender,
                h,
                det1.value,
                det1.rows,
                cert_dict,
                None,
                hc.as_dict(),
                tuple(conds),
                tuple(notes),
            )
        notes.append(
            "criterion diverges for every scanned row, but rows beyond the scan are not certified"
            if theorem_ok
            else "criterion diverges for every scanned row, but the dichotomy is not certified here"
        )
        return VerdictReport(
            "UnknownAtHorizon",
            wrender,
            srender,
            h,
            det1.value,
            det1.rows,
            {"block": det1.certificate.as_dict()},
            None,
            hc.as_dict(),
            tuple(conds),
            tuple(notes),
        )

    det1 = first_det if first_det is not None else theta_details(w, space, 1, 1, h)
    if exact_boundary or band_boundary:
        notes.append("criterion supremum sits at the threshold without a certificate either way")
        return VerdictReport(
            "Boundary",
            wrender,
            srender,
            h,
            det1.value,
            det1.rows,
            None,
            None,
            hc.as_dict(),
            tuple(conds),
            tuple(notes),
        )
    notes.append("criterion undecided for at least one row at these horizons")
    return VerdictReport(
        "UnknownAtHorizon",
        wrender,
        srender,
        h,
        det1.value,
        det1.rows,
        None,
        None,
        hc.as_dict(),
        tuple(conds),
        tuple(notes),
    )


# ---------------------------------------------------------------------------
# bilateral shifts


def _side_mean(u: WeightSequence) -> tuple[str, float]:
    """("evper", per-step mean) | ("pm", +/-inf) | ("none", nan)."""
    info = u.period_info()
    if info is not None:
        _, q, d = info
        return ("evper", d / q)
    cls = u.sum_class()
    if cls[0] == "superlinear":
        return ("pm", math.inf if cls[1] > 0 else -math.inf)
    return ("none", math.nan)


def _side_row_slope(u: WeightSequence, scale: float) -> Optional[tuple[str, float]]:
    """Per-index growth of scale * log v along one side: ("linear", c) |
    ("log", c) | ("bounded", 0); None when not certified."""
    from .weights import ConstantWeights, PeriodicWeights, EventuallyPeriodicWeights

    if isinstance(u, ConstantWeights):
        return ("bounded", 0.0)
    if isinstance(u, (PeriodicWeights, EventuallyPeriodicWeights)):
        return ("bounded", 0.0)
    if isinstance(u, GeomWeights):
        return ("linear", scale * math.log(u.r))
    if isinstance(u, LinearWeights):
        return ("log", scale)
    return None


def _combine_drift(
    wmean: tuple[str, float], slope: Optional[tuple[str, float]], sign: float
) -> tuple[Optional[bool], str]:
    """Certified sign of the per-step drift of [weight sum + sign * row term];
    True = diverges up, False = does not diverge up, None = uncertified."""
    kind, mu = wmean
    if kind == "pm":
        return (mu > 0, "superlinear weight sums")
    if kind != "evper":
        return (None, "weight side without a certified mean")
    if slope is None:
        return (None, "row side without a certified growth class")
    skind, c = slope
    if skind == "bounded":
        if mu > 0:
            return (True, "positive per-step weight drift")
        return (False, "nonpositive per-step weight drift")
    if skind == "log":
        eff = sign * c
        if mu > 0:
            return (True, "linear weight drift beats the logarithmic row term")
        if mu < 0:
            return (False, "negative weight drift")
        return (True, "logarithmic row term decides") if eff > 0 else (False, "logarithmic row term decides")
    # linear row slope
    side = _cmp_band(mu + sign * c, 0.0)
    if side == 1:
        return (True, "combined per-step drift positive")
    if side in (0, -1):
        return (False, "combined per-step drift nonpositive")
    return (None, "combined per-step drift too close to zero")


def _bilateral_witness_search(
    w: BilateralWeights, space: SpaceModel, h: Horizons
) -> tuple[list, bool]:
    """Greedy numeric search for times where forward products blow up while
    backward products shrink, uniformly over a window of centre indices."""
    span = min(h.j_max, 8)
    H = h.k_horizon
    lo, hi = -span - H, span + H
    logs = w.log_array(lo, hi)
    C = np.concatenate(([0.0], np.cumsum(logs)))  # C[t - lo + 1] = sum_{k=lo..t} log|w_k|

    def csum(t: int) -> float:
        return float(C[t - lo + 1])

    def aval(k: int) -> float:
        return space.log_a(1, k)

    js = list(range(-span, span + 1))
    times = []
    tau = 1.0
    for n in range(1, H + 1):
        fwd = min(csum(j + n) - csum(j) - aval(j + n) + aval(j) for j in js)
        back = max(csum(j) - csum(j - n) + aval(j - n) - aval(j) for j in js)
        if fwd >= tau and back <= -tau:
            times.append({"n": n, "forward_min_log": fwd, "backward_max_log": back, "level": tau})
            tau += 1.0
            if tau > 16.0:
                break
    return times, len(times) >= 8


def bilateral_verdict(
    w: WeightSequence, space: SpaceModel, horizons: Optional[Horizons] = None
) -> VerdictReport:
    """Two-sided shifts: certified side drifts first, then a numeric
    witness-time search."""
    h = horizons or Horizons()
    if not isinstance(w, BilateralWeights):
        raise DomainError("bilateral_verdict needs bilateral weights (bilateral:<pos>:<nonpos>)")
    if not space.bilateral:
        raise DomainError("bilateral_verdict needs a bilateral space (bi-<spec>)")
    cont, why = check_operator_continuity(w, space)
    if cont is False:
        raise DomainError(f"the shift is not a continuous operator on this space: {why}")
    notes: list[str] = []
    if cont is None:
        notes.append(f"operator continuity not certified: {why}")

    mat = space.matrix
    if isinstance(mat, WeightVectorRows):
        scale = mat.scale
        vpos = mat.v.pos
        vnonpos = mat.v.nonpos
    else:
        scale = 0.0
        vpos = vnonpos = None

    fwd_mean = _side_mean(w.pos)
    back_mean = _side_mean(w.nonpos)
    slope_pos = ("bounded", 0.0) if vpos is None else _side_row_slope(vpos, scale)
    slope_nonpos = ("bounded", 0.0) if vnonpos is None else _side_row_slope(vnonpos, scale)

    # forward: weight sums minus the row term at the landing index
    fwd_ok, fwd_why = _combine_drift(fwd_mean, slope_pos, -1.0)
    # backward: weight sums plus the row term at the source index; must sink
    back_up, back_why = _combine_drift(back_mean, slope_nonpos, +1.0)
    back_ok: Optional[bool]
    if back_up is None:
        back_ok = None
    else:
        # backward products must go to zero: drift must be certified negative,
        # which _combine_drift reports as "does not diverge up" plus a
        # strictly negative mean; re-derive the strict side.
        kind, mu = back_mean
        if kind == "pm":
            back_ok = mu < 0
        elif kind == "evper" and slope_nonpos is not None:
            skind, c = slope_nonpos
            if skind == "bounded":
                back_ok = mu < 0
            elif skind == "log":
                back_ok = mu < 0 or (mu == 0.0 and c < 0)
            else:
                side = _cmp_band(mu + c, 0.0)
                back_ok = None if side is None else side == -1
        else:
            back_ok = None

    drift_evidence = {
        "forward_drift": {"ok": fwd_ok, "reason": fwd_why},
        "backward_drift": {"ok": back_ok, "reason": back_why},
    }
    # numeric horizon check of the two product conditions at a few anchors
    nprod = min(1000, h.k_horizon)
    qs = list(range(-4, 5))
    fwd_vals = [float(np.sum(w.log_array(q + 1, q + nprod))) for q in qs]
    back_vals = [float(np.sum(w.log_array(q - nprod + 1, q))) for q in qs]
    drift_evidence["horizon_products"] = {
        "n": nprod,
        "offsets": qs,
        "forward_log_min": min(fwd_vals),
        "backward_log_max": max(back_vals),
        "forward_diverges": min(fwd_vals) > 0.0,
        "backward_vanishes": max(back_vals) < 0.0,
    }
    wrender, srender = w.render(), space.render()

    if fwd_ok is True and back_ok is True:
        return VerdictReport(
            "HasSubspace",
            wrender,
            srender,
            h,
            None,
            (),
            None,
            1,
            None,
            (),
            tuple(notes + ["certified side drifts: forward products diverge, backward products vanish"]),
            drift_evidence,
        )
    if fwd_ok is False or back_ok is False:
        reason = fwd_why if fwd_ok is False else back_why
        return VerdictReport(
            "NotHypercyclic",
            wrender,
            srender,
            h,
            None,
            (),
            None,
            None,
            None,
            (),
            tuple(notes + [f"certified failure of the two-sided orbit condition: {reason}"]),
            drift_evidence,
        )

    times, ok = _bilateral_witness_search(w, space, h)
    drift_evidence["witness_times"] = times
    if ok:
        return VerdictReport(
            "HasSubspace",
            wrender,
            srender,
            h,
            None,
            (),
            None,
            1,
            None,
            (),
            tuple(notes + ["witness times found at the horizon; side drifts not certified"]),
            drift_evidence,
        )
    return VerdictReport(
        "UnknownAtHorizon",
        wrender,
        srender,
        h,
        None,
        (),
        None,
        None,
        None,
        (),
        tuple(notes + ["no certified side drifts and no witness times at this horizon"]),
        drift_evidence,
    )


# ---------------------------------------------------------------------------
# the pumping equivalence, checked from both ends


def condN_check(
    w: WeightSequence,
    space: Optional[SpaceModel] = None,
    J: int = 1,
    m: int = 1,
    horizons: Optional[Horizons] = None,
) -> dict:
    """Left side: some power's limiting tail infimum clears the threshold.
    Right side: the criterion supremum diverges.  The two are equivalent;
    this derives each independently and reports whether they agree."""
    if space is None:
        space = SpaceModel("lp", "sum", 2.0, OnesRows(), 1, False)
    _require_unilateral(w, space, "condN_check")
    h = horizons or Horizons()
    law = _n_law(w, space, J, m)
    n_scan = h.n_max if law is None else max(h.n_max, law.n0 + law.q)

    lhs_holds: Optional[bool] = None
    lhs_witness = None
    lhs_value = -math.inf
    all_exact = True
    scanned = []
    for n in range(1, n_scan + 1):
        hor = _clamped_horizon(space, n, h.k_horizon)
        shape, uniform = _combined_shape(w, space, J, m, n)
        evaluate = _integrand_eval(w, space, J, m, n)
        t = tail_limit_inf(shape, evaluate, hor)
        scanned.append((t, shape, uniform))
        all_exact = all_exact and t.status == Status.EXACT
        if t.status == Status.EXACT and t.log_value > LOG_TOL:
            lhs_holds = True
            lhs_witness = n
            lhs_value = t.log_value
            break
        lhs_value = max(lhs_value, t.log_value)
    if lhs_holds is None and law is not None and law.delta > LOG_TOL:
        base = scanned[law.n0 - 1][0] if law.n0 <= len(scanned) else None
        if base is not None and base.status == Status.EXACT and math.isfinite(base.log_value):
            steps = max(1, math.ceil((2.0 * LOG_TOL - base.log_value) / law.delta))
            n_star = law.n0 + steps * law.q
            if n_star <= MAX_LAW_EXTENSION_N:
                lhs_holds = True
                lhs_witness = n_star
                lhs_value = base.log_value + steps * law.delta
    if lhs_holds is None:
        if all_exact and (
            (law is not None and law.delta <= 0.0 and n_scan >= law.n0 + law.q - 1)
            or _certified_all_powers_neg_inf(w, space, law, [(t, s, u) for (t, s, u) in scanned], n_scan)
            is not None
            or all(t.log_value == -math.inf for t, _, _ in scanned)
            and all(u for _, _, u in scanned)
        ):
            lhs_holds = False

    det = theta_details(w, space, J, m, h)
    if det.certificate is not None:
        rhs_holds: Optional[bool] = True
    elif det.value.status == Status.EXACT and det.value.log_value < math.inf:
        rhs_holds = False
    else:
        rhs_holds = None

    agree = (lhs_holds == rhs_holds) if (lhs_holds is not None and rhs_holds is not None) else None
    return {
        "lhs": {
            "holds": {True: "Holds", False: "Fails", None: "Unknown"}[lhs_holds],
            "value_log": lhs_value,
            "witness_n": lhs_witness,
        },
        "rhs": {
            "holds": {True: "Holds", False: "Fails", None: "Unknown"}[rhs_holds],
            "theta_log": det.value.log_value,
            "status": det.value.status.value,
        },
        "agree": agree,
        "J": J,
        "m": m,
    }


# ---------------------------------------------------------------------------
# polynomial hypotheses


def poly_hypothesis_check(
    w: WeightSequence,
    space: SpaceModel,
    coeffs: Sequence[float],
    horizons: Optional[Horizons] = None,
) -> dict:
    """Checks the hypotheses under which a polynomial in the shift carries a
    hypercyclic subspace: row domination, an all-powers vanishing tail
    infimum for some row, and a constant-term condition.  One-directional:
    failure reports UnknownAtHorizon, never a negative."""
    _require_unilateral(w, space, "poly_hypothesis_check")
    h = horizons or Horizons()
    cs = [float(c) for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0.0:
        cs.pop()
    if len(cs) < 2:
        raise DomainError("polynomial must have degree >= 1")
    if cs[-1] == 0.0:
        raise DomainError("leading coefficient must be nonzero")

    b = check_condition_B(space, 1, h.j_max, h.m_max, h.n_max, h.k_horizon)

    rows_to_try = [1] if space.equal_rows else list(range(1, h.m_max + 1))
    witness_m = None
    inf_note = ""
    for mr in rows_to_try:
        law = _n_law(w, space, 1, mr)
        n_scan = h.n_max if law is None else max(h.n_max, law.n0 + law.q)
        scanned = []
        ok = True
        for n in range(1, n_scan + 1):
            hor = _clamped_horizon(space, n, h.k_horizon)
            shape, uniform = _combined_shape(w, space, 1, mr, n)
            dec = decide_inf(shape, _integrand_eval(w, space, 1, mr, n), max(space.k_min, 0), hor)
            scanned.append((dec, shape, uniform))
            if not (dec.status == Status.EXACT and dec.log_value == -math.inf):
                ok = False
                break
        if not ok:
            continue
        reason = _certified_all_powers_neg_inf(w, space, law, scanned, n_scan)
        if reason is not None:
            witness_m = mr
            inf_note = reason
            break

    c0_ok = abs(cs[0]) <= 1.0
    ratio_ok = False
    ratio_note = ""
    if witness_m is not None and not c0_ok:
        rr = space.row_ratio(1, witness_m)
        if rr.shape.kind == "evper" and rr.shape.drift < 0.0:
            ratio_ok = True
            ratio_note = "row ratio drifts down"
        elif rr.shape.kind == "mono_down" and rr.shape.limit == -math.inf:
            ratio_ok = True
            ratio_note = "row ratio vanishes"

    if space.kind == "entire" and isinstance(w, LinearWeights):
        premise = {"class": "verified", "note": "differentiation-type shift on entire-function rows"}
    elif space.equal_rows and len(cs) == 2 and cs[0] == 1.0 and cs[1] == 1.0:
        premise = {"class": "verified", "note": "identity plus shift on equal-row spaces"}
    else:
        premise = {
            "class": "assumed",
            "note": "hypercyclicity of the polynomial in the shift is assumed, not derived",
        }

    parts = {
        "condition_b": b.as_dict(),
        "inf_zero": {
            "holds": witness_m is not None,
            "witness_m": witness_m,
            "note": inf_note or "no row with a certified all-powers collapse",
        },
        "constant_term": {
            "holds": c0_ok or ratio_ok,
            "c0": cs[0],
            "within_disc": c0_ok,
            "row_ratio_vanishes": ratio_ok,
            "note": ratio_note,
        },
    }
    outcome = (
        "HasSubspace"
        if b.holds == "Holds" and witness_m is not None and (c0_ok or ratio_ok)
        else "UnknownAtHorizon"
    )
    return {
        "schema": 1,
        "outcome": outcome,
        "weights": w.render(),
        "space": space.render(),
        "poly": cs,
        "premise": premise,
        "parts": parts,
        "horizons": h.as_dict(),
    }
