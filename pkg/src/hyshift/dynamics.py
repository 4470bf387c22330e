"""Finite-truncation laboratory for weighted backward shifts.

Everything here acts on finitely supported vectors, so shift orbits,
polynomial images, and seminorms are computed exactly (coefficients live as
sign/log-magnitude pairs, which keeps factorial-scale products representable
far beyond double range).  On top of the raw operator action the module
builds two constructive artifacts:

* a prefix of a vector whose orbit visits a given finite list of targets at
  given times (the quantitative content of a density/right-inverse argument);
* a divergence witness assembled from a growth certificate: a single vector
  x with ``q(B^j x) >= n`` on an explicit band schedule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .criteria import GrowthCertificate
from .errors import CertificateError, DomainError, SpacingError
from .spaces import SpaceModel
from .tolerances import MAX_POLY_BUDGET, MAX_WITNESS_STAGES, OVERFLOW_LOG
from .weights import WeightSequence

Coefficient = Union[int, float, Fraction, str]


def _to_fraction(c: Coefficient) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        if not math.isfinite(c):
            raise DomainError(f"coefficient must be finite, got {c}")
        return Fraction(c)
    raise DomainError(f"unsupported coefficient type {type(c).__name__}")


def _log_abs_fraction(c: Fraction) -> float:
    # big-int safe: never materialize the float value of the fraction
    return math.log(abs(c.numerator)) - math.log(c.denominator)


def _signed_log_add(s1: float, l1: float, s2: float, l2: float) -> tuple[float, float]:
    """(sign, log|.|) of s1*e^l1 + s2*e^l2; sign 0.0 means exact zero."""
    if s1 == 0.0:
        return s2, l2
    if s2 == 0.0:
        return s1, l1
    if l1 < l2:
        s1, l1, s2, l2 = s2, l2, s1, l1
    if s1 == s2:
        return s1, l1 + math.log1p(math.exp(l2 - l1))
    if l1 == l2:
        return 0.0, -math.inf
    return s1, l1 + math.log(-math.expm1(l2 - l1))


@dataclass(frozen=True)
class TruncatedVector:
    """Finitely supported vector with coefficients held in log form.

    ``entries`` is sorted by index; each entry is (index, sign, log-magnitude)
    with sign in {-1.0, +1.0}.  ``index_base`` is the lowest legal index
    (None for two-sided index sets), and shifting an entry below it
    annihilates the entry.
    """

    entries: tuple[tuple[int, float, float], ...]
    index_base: Optional[int] = 1

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_pairs(
        pairs: Iterable[tuple[int, float]], index_base: Optional[int] = 1
    ) -> "TruncatedVector":
        seen: dict[int, tuple[float, float]] = {}
        for idx, coeff in pairs:
            idx = int(idx)
            if idx in seen:
                raise DomainError(f"duplicate index {idx} in vector")
            if index_base is not None and idx < index_base:
                raise DomainError(f"index {idx} below the space's first index ({index_base})")
            c = float(coeff)
            if not math.isfinite(c):
                raise DomainError(f"coefficient at index {idx} must be finite, got {c}")
            if c == 0.0:
                continue
            seen[idx] = (math.copysign(1.0, c), math.log(abs(c)))
        entries = tuple((k, *seen[k]) for k in sorted(seen))
        return TruncatedVector(entries, index_base)

    @staticmethod
    def basis(k: int, index_base: Optional[int] = 1) -> "TruncatedVector":
        if index_base is not None and k < index_base:
            raise DomainError(f"index {k} below the space's first index ({index_base})")
        return TruncatedVector(((int(k), 1.0, 0.0),), index_base)

    @staticmethod
    def zero(index_base: Optional[int] = 1) -> "TruncatedVector":
        return TruncatedVector((), index_base)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def indices(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.entries)

    def max_support(self) -> Optional[int]:
        return self.entries[-1][0] if self.entries else None

    def min_support(self) -> Optional[int]:
        return self.entries[0][0] if self.entries else None

    def coefficient(self, k: int) -> float:
        for idx, s, l in self.entries:
            if idx == k:
                return s * math.exp(l)
        return 0.0

    def log_coefficient(self, k: int) -> tuple[float, float]:
        for idx, s, l in self.entries:
            if idx == k:
                return s, l
        return 0.0, -math.inf

    def coefficients_dict(self) -> dict[int, float]:
        return {idx: s * math.exp(l) for idx, s, l in self.entries}

    def to_pairs(self) -> list[list[float]]:
        """[[index, coefficient], ...]; magnitudes beyond double range land
        at 0.0/inf here — check overflow_entries() for the exact logs."""
        return [[idx, s * math.exp(l)] for idx, s, l in self.entries]

    def overflow_entries(self) -> list[dict]:
        return [
            {"index": idx, "sign": s, "log_magnitude": l}
            for idx, s, l in self.entries
            if abs(l) > OVERFLOW_LOG
        ]

    def render(self, max_terms: int = 12) -> str:
        if not self.entries:
            return "0"
        parts = []
        for idx, s, l in self.entries[:max_terms]:
            c = s * math.exp(l)
            if c == 1.0:
                parts.append(f"e_{idx}")
            elif c == -1.0:
                parts.append(f"-e_{idx}")
            else:
                parts.append(f"{c:.6g}*e_{idx}")
        tail = f" + ... ({len(self.entries)} terms)" if len(self.entries) > max_terms else ""
        return " + ".join(parts).replace("+ -", "- ") + tail

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "TruncatedVector") -> None:
        if self.index_base != other.index_base:
            raise DomainError(
                f"vectors indexed from {self.index_base} and {other.index_base} cannot combine"
            )

    def add(self, other: "TruncatedVector") -> "TruncatedVector":
        self._check_compatible(other)
        merged: list[tuple[int, float, float]] = []
        a, b = self.entries, other.entries
        i = j = 0
        while i < len(a) or j < len(b):
            if j >= len(b) or (i < len(a) and a[i][0] < b[j][0]):
                merged.append(a[i])
                i += 1
            elif i >= len(a) or b[j][0] < a[i][0]:
                merged.append(b[j])
                j += 1
            else:
                s, l = _signed_log_add(a[i][1], a[i][2], b[j][1], b[j][2])
                if s != 0.0:
                    merged.append((a[i][0], s, l))
                i += 1
                j += 1
        return TruncatedVector(tuple(merged), self.index_base)

    def subtract(self, other: "TruncatedVector") -> "TruncatedVector":
        return self.add(other.scale(-1.0))

    def scale(self, c: Coefficient) -> "TruncatedVector":
        frac = _to_fraction(c)
        if frac == 0:
            return TruncatedVector((), self.index_base)
        sc = 1.0 if frac > 0 else -1.0
        lc = _log_abs_fraction(frac)
        return self.scale_log(sc, lc)

    def scale_log(self, sign: float, log_mag: float) -> "TruncatedVector":
        if sign == 0.0:
            return TruncatedVector((), self.index_base)
        return TruncatedVector(
            tuple((idx, s * sign, l + log_mag) for idx, s, l in self.entries),
            self.index_base,
        )


# ---------------------------------------------------------------------------
# shift action


def apply_shift(x: TruncatedVector, w: WeightSequence, n: int) -> TruncatedVector:
    """B^n x where (B x)_k picks up the weight at the source index: the entry
    at index k moves to k - 1 carrying a factor |w_k|, and entries pushed
    below the first index vanish.

    The window product is accumulated one step at a time from the source
    index downward, so iterating matches a single call bit for bit.
    """
    if n < 0:
        raise DomainError(f"shift steps must be >= 0, got {n}")
    if n == 0:
        return x
    out: list[tuple[int, float, float]] = []
    for idx, s, l in x.entries:
        if x.index_base is not None and idx - n < x.index_base:
            continue
        acc = l
        for v in range(idx, idx - n, -1):
            acc += w.log_magnitude(v)
        out.append((idx - n, s, acc))
    return TruncatedVector(tuple(out), x.index_base)


def right_inverse(y: TruncatedVector, w: WeightSequence, n: int) -> TruncatedVector:
    """The x with B^n x = y exactly: the entry at k moves up to k + n and is
    divided by the window product it will pick up on the way back down."""
    if n < 0:
        raise DomainError(f"shift steps must be >= 0, got {n}")
    if n == 0:
        return y
    out: list[tuple[int, float, float]] = []
    for idx, s, l in y.entries:
        acc = l
        for v in range(idx + 1, idx + n + 1):
            acc -= w.log_magnitude(v)
        out.append((idx + n, s, acc))
    return TruncatedVector(tuple(out), y.index_base)


# ---------------------------------------------------------------------------
# seminorms


def log_seminorm(x: TruncatedVector, space: SpaceModel, j: int = 1) -> float:
    """log p_j(x); -inf for the zero vector."""
    space.check_j(j)
    if not x.entries:
        return -math.inf
    terms = [l + space.log_a(j, idx) for idx, _s, l in x.entries]
    if space.norm == "max":
        return max(terms)
    p = space.p
    m = max(terms)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(p * (t - m)) for t in terms)) / p


def seminorm(x: TruncatedVector, space: SpaceModel, j: int = 1) -> float:
    return math.exp(log_seminorm(x, space, j))


def orbit_table(
    x: TruncatedVector, w: WeightSequence, space: SpaceModel, j: int = 1, horizon: int = 32
) -> list[tuple[int, float]]:
    """[(n, p_j(B^n x)) for n = 0..horizon], iterating the shift one step at
    a time so the table is exactly the orbit of the truncation."""
    if horizon < 0:
        raise DomainError(f"horizon must be >= 0, got {horizon}")
    rows = [(0, seminorm(x, space, j))]
    cur = x
    for n in range(1, horizon + 1):
        cur = apply_shift(cur, w, 1)
        rows.append((n, seminorm(cur, space, j)))
    return rows


# ---------------------------------------------------------------------------
# polynomial action


@dataclass(frozen=True)
class PolyPower:
    """Exact n-fold convolution power of a polynomial's coefficients.

    ``coeffs[i]`` is the coefficient of t^i in P(t)^n, as an exact Fraction.
    ``K`` is the largest |coefficient| seen in any power P^k, k <= n — the
    growth constant that controls expanded-mode error budgets.
    """

    base: tuple[Fraction, ...]
    n: int
    coeffs: tuple[Fraction, ...]
    K: Fraction

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeffs_float(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    @property
    def K_float(self) -> float:
        return float(self.K)

    @property
    def log_K(self) -> float:
        return _log_abs_fraction(self.K) if self.K != 0 else -math.inf

    def as_dict(self) -> dict:
        return {
            "base": [str(c) for c in self.base],
            "n": self.n,
            "coeffs": self.coeffs_float(),
            "coeffs_exact": [str(c) for c in self.coeffs],
            "K": self.K_float,
        }


def _normalize_poly(P: Sequence[Coefficient]) -> tuple[Fraction, ...]:
    coeffs = [_to_fraction(c) for c in P]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise DomainError("polynomial must be non-constant (degree >= 1)")
    return tuple(coeffs)


def poly_power(P: Sequence[Coefficient], n: int) -> PolyPower:
    """P(t)^n by exact repeated convolution, with the K growth constant."""
    if n < 1:
        raise DomainError(f"power must be >= 1, got {n}")
    base = _normalize_poly(P)
    d = len(base) - 1
    if n * d > MAX_POLY_BUDGET:
        raise DomainError(
            f"polynomial power budget exceeded: n*degree = {n * d} > {MAX_POLY_BUDGET}; "
            "use a smaller power or a lower-degree polynomial"
        )
    cur = base
    K = max(abs(c) for c in base)
    for _ in range(n - 1):
        nxt = [Fraction(0)] * (len(cur) + d)
        for i, a in enumerate(cur):
            if a == 0:
                continue
            for j, b in enumerate(base):
                nxt[i + j] += a * b
        cur = tuple(nxt)
        K = max(K, max(abs(c) for c in cur))
    return PolyPower(base, n, cur, K)


def apply_poly(
    x: TruncatedVector,
    w: WeightSequence,
    P: Sequence[Coefficient],
    n: int,
    mode: str = "expanded",
) -> TruncatedVector:
    """P(B)^n x.  Expanded mode sums the exact convolution coefficients
    against successive shift powers of x; iterated mode applies P(B) n
    times.  The two agree up to floating accumulation order."""
    if mode not in ("expanded", "iterated"):
        raise DomainError(f"mode must be 'expanded' or 'iterated', got {mode!r}")
    if n < 0:
        raise DomainError(f"power must be >= 0, got {n}")
    if n == 0:
        return x
    if mode == "expanded":
        pp = poly_power(P, n)
        return _poly_combination(x, w, pp.coeffs)
    base = _normalize_poly(P)
    cur = x
    for _ in range(n):
        cur = _poly_combination(cur, w, base)
    return cur


def _poly_combination(
    x: TruncatedVector, w: WeightSequence, coeffs: Sequence[Fraction]
) -> TruncatedVector:
    acc = TruncatedVector.zero(x.index_base)
    power = x
    for i, c in enumerate(coeffs):
        if i > 0:
            power = apply_shift(power, w, 1)
        if power.is_zero():
            break
        if c != 0:
            acc = acc.add(power.scale(c))
    return acc


# ---------------------------------------------------------------------------
# orbit-visiting prefix


def build_hypercyclic_prefix(
    w: WeightSequence,
    space: SpaceModel,
    targets: Sequence[TruncatedVector],
    times: Sequence[int],
    j: int = 1,
) -> dict:
    """A finitely supported z whose orbit visits each target: block t is the
    exact right inverse of target t lifted by its visit time, so B^{time_t} z
    reproduces target t plus the (quantifiably small) shadows of later
    blocks.  Returns z, the exact per-visit errors p_j(B^{n_t} z - y_t), and
    p_j(z)."""
    if space.bilateral:
        raise DomainError("prefix construction needs the one-sided annihilation rule")
    if len(targets) != len(times):
        raise DomainError(f"{len(targets)} targets but {len(times)} visit times")
    if not targets:
        raise DomainError("need at least one target")
    base = space.index_base
    for t, y in enumerate(targets):
        if y.index_base != base:
            raise DomainError(f"target {t} indexed from {y.index_base}, space from {base}")
        if y.is_zero():
            raise DomainError(f"target {t} is the zero vector")
    for t in range(1, len(times)):
        if times[t] <= times[t - 1]:
            raise DomainError(f"visit times must be strictly increasing (times {t - 1}, {t})")
    if times[0] < 1:
        raise DomainError("visit times must be >= 1")
    # annihilation spacing: by visit time n_t every earlier block must have
    # been pushed below the first index
    for a in range(len(times)):
        for b in range(a + 1, len(times)):
            if targets[a].max_support() + times[a] >= times[b] + base:
                raise SpacingError(
                    f"insufficient spacing: block {a} (support up to "
                    f"{targets[a].max_support() + times[a]}) survives visit {b} at time "
                    f"{times[b]}; move visit {b} past "
                    f"{targets[a].max_support() + times[a] - base}"
                )
    blocks = [right_inverse(y, w, t) for y, t in zip(targets, times)]
    z = TruncatedVector.zero(base)
    for blk in blocks:
        z = z.add(blk)
    # at visit time n_t the earlier blocks have annihilated (spacing check)
    # and block t cancels the target exactly, so the visit error is the
    # image of the later blocks alone
    errors = []
    for t in range(len(blocks)):
        resid = TruncatedVector.zero(base)
        for blk in blocks[t + 1 :]:
            resid = resid.add(apply_shift(blk, w, times[t]))
        errors.append(seminorm(resid, space, j))
    return {
        "z": z,
        "errors": errors,
        "smallness": seminorm(z, space, j),
        "j": j,
        "times": list(times),
        "overflow": z.overflow_entries(),
    }


# ---------------------------------------------------------------------------
# divergence witness


def _stage_threshold(gcert: GrowthCertificate, target_log: float) -> int:
    """Smallest j >= 1 with the certified growth log C_j >= target_log."""
    if target_log <= -gcert.log_K:
        return 1
    q = math.ceil((target_log + gcert.log_K) / gcert.log_C - 1e-12)
    t = max(1, gcert.m * q)
    while gcert.log_C_n(t) < target_log - 1e-12:
        t += gcert.m
    return t


def build_divergence_witness(
    gcert: GrowthCertificate,
    w: WeightSequence,
    space: SpaceModel,
    stages: int,
    q: int = 1,
) -> dict:
    """One vector whose orbit outgrows every polynomial bound on a schedule.

    Stage n contributes a single basis vector scaled to p_q-size 1/n^2 and
    placed so that its whole orbit up to the stage's band stays inside the
    certificate's tail.  Stage supports are pairwise disjoint at every orbit
    step, so the seminorm of the sum dominates each stage with constant 1
    (a coordinate-subspace strengthening; the generic basic-sequence route
    would lose a factor 1/((1+eps)(2+eps)), recorded in the notes).  On band
    n — source offsets j with k_{n-1} < j <= k_n, where k_n is the minimal
    threshold with n^3 <= C_j beyond it — the orbit obeys q(B^j x) >= n.
    """
    if space.bilateral:
        raise DomainError("divergence witnesses are built on one-sided spaces")
    if stages < 1:
        raise DomainError(f"need at least one stage, got {stages}")
    if stages > MAX_WITNESS_STAGES:
        raise DomainError(f"stages capped at {MAX_WITNESS_STAGES}, got {stages}")
    space.check_j(q)
    if not space.equal_rows and not (q == gcert.J == gcert.row):
        raise DomainError(
            "witness seminorm must match the certificate rows "
            f"(q={q}, certificate rows {gcert.J}/{gcert.row}) unless all rows agree"
        )
    check = gcert.verify(w, space, n_check=min(64, max(8, stages)))
    if not check["ok"]:
        bad = [r for r in check["rows"] if not r["ok"]]
        raise CertificateError(
            f"growth certificate fails re-verification at power {bad[0]['n']}: "
            f"window inf {bad[0]['inf_log']:.6g} < bound {bad[0]['bound_log']:.6g}"
        )

    thresholds = [_stage_threshold(gcert, 3.0 * math.log(n)) for n in range(1, stages + 2)]
    k_prev = max(0, thresholds[0] - 1)
    k_start = k_prev
    schedule: list[int] = []
    bands: list[tuple[int, int, int]] = []
    positions: list[int] = []
    base = space.index_base
    x = TruncatedVector.zero(base)
    for n in range(1, stages + 1):
        k_n = max(k_prev + 1, thresholds[n] - 1)
        schedule.append(k_n)
        bands.append((k_prev + 1, k_n, n))
        s_n = gcert.N + k_n
        if base is not None and s_n < base:
            s_n = base  # tail starts below the first index only for N = 0
        positions.append(s_n)
        log_coeff = -2.0 * math.log(n) - space.log_a(q, s_n)
        x = x.add(TruncatedVector(((s_n, 1.0, log_coeff),), base))
        k_prev = k_n
    return {
        "x": x,
        "schedule": schedule,
        "bands": [list(b) for b in bands],
        "positions": positions,
        "q": q,
        "band_start": k_start,
        "notes": {
            "stage_scaling": "p_q(stage n) = 1/n^2",
            "disjoint_support_constant": 1.0,
            "generic_subspace_constant": "1/((1+eps)(2+eps))",
        },
        "overflow": x.overflow_entries(),
    }


def predicted_bound(bands: Sequence[Sequence[int]], j: int) -> float:
    """The witness's certified lower bound for q(B^j x): the band value n
    for the band containing j, 0 off the schedule."""
    for lo, hi, n in bands:
        if lo <= j <= hi:
            return float(n)
    return 0.0
