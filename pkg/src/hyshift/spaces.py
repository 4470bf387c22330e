"""Sequence-space models:lp / c0, weighted variants, and Köthe presets.

A space is described by a Köthe-style matrix a_{j,k} > 0, nondecreasing in
the seminorm index j, together with a norm form ("sum" with exponent p, or
"max").  The classical Banach presets use a single row (a == 1 or a = v_k);
the Fréchet presets use genuinely increasing rows:

    lp:<p>, c0            a_{j,k} = 1
    lpv:<p>:<w>, c0v:<w>  a_{j,k} = v_k^{1/p} (resp. v_k)
    entire                a_{j,k} = j^k   (k >= 0)  — entire functions
    rapid                 a_{j,k} = k^j   (k >= 1)  — rapidly decreasing seqs
    kothe:<path>          rows read from a small CSV, tagged or explicit
    bi-<spec>             bilateral index set (equal-row families only)

All criterion arithmetic uses log a.  The structural row tags are what the
certified tail decisions key on; nothing is inferred from samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .certify import TailShape
from .errors import DomainError, WeightSpecError
from .tolerances import (
    DEFAULT_J_MAX,
    DEFAULT_K_HORIZON,
    DEFAULT_M_MAX,
    DEFAULT_N_MAX,
)
from .weights import (
    BilateralWeights,
    ConstantWeights,
    GeomWeights,
    LinearWeights,
    PeriodicWeights,
    WeightSequence,
    parse_weight_spec,
    _fmt,
)


# ---------------------------------------------------------------------------
# Köthe matrices (row families)


class KotheMatrix:
    """Row family a_{j,k}; subclasses fix the structural tag."""

    tag = "abstract"
    k_min = 0  # smallest valid column index (unilateral)
    j_cap: Optional[int] = None  # None = rows for every j >= 1

    def log_row(self, j: int, ks: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def log_entry(self, j: int, k: int) -> float:
        return float(self.log_row(j, np.array([k], dtype=np.int64))[0])

    def rows_equal(self) -> bool:
        return False

    def monotone_in_k(self) -> Optional[bool]:
        """True/False when certified symbolically, None when unknown."""
        return None


@dataclass(frozen=True)
class OnesRows(KotheMatrix):
    tag = "constant-one"
    k_min = 0

    def log_row(self, j, ks):
        return np.zeros(len(ks))

    def rows_equal(self):
        return True

    def monotone_in_k(self):
        return True


@dataclass(frozen=True)
class PowerOfJRows(KotheMatrix):
    """a_{j,k} = j^k."""

    tag = "power-of-j"
    k_min = 0

    def log_row(self, j, ks):
        return ks.astype(np.float64) * math.log(j)

    def monotone_in_k(self):
        return True  # nondecreasing for every j >= 1


@dataclass(frozen=True)
class PowerOfKRows(KotheMatrix):
    """a_{j,k} = k^{alpha_j}; exponent_form picks alpha."""

    exponent_form: str = "j"  # "j" -> alpha_j = j ; "1-1/j" -> alpha_j = 1 - 1/j

    tag = "power-of-k"
    k_min = 1

    def alpha(self, j: int) -> float:
        if self.exponent_form == "j":
            return float(j)
        if self.exponent_form == "1-1/j":
            return 1.0 - 1.0 / j
        raise DomainError(f"unknown exponent form {self.exponent_form!r}")

    def alpha_sup(self) -> float:
        return math.inf if self.exponent_form == "j" else 1.0

    def alpha_least_geq(self, target: float) -> Optional[int]:
        """Least row index t with alpha_t >= target, None if unreachable."""
        if self.exponent_form == "j":
            return max(1, math.ceil(target - 1e-12))
        # alpha_t = 1 - 1/t < 1
        if target <= 0.0:
            return 1
        if target >= 1.0:
            return None
        return max(1, math.ceil(1.0 / (1.0 - target) - 1e-12))

    def log_row(self, j, ks):
        return self.alpha(j) * np.log(ks.astype(np.float64))

    def monotone_in_k(self):
        return True  # alpha_j >= 0


@dataclass(frozen=True)
class WeightVectorRows(KotheMatrix):
    """a_{j,k} = v_k^scale, identical for every j."""

    v: WeightSequence
    scale: float

    tag = "weight-vector"
    k_min = 1

    def log_row(self, j, ks):
        lo, hi = int(ks[0]), int(ks[-1])
        return self.scale * self.v.log_array(lo, hi)

    def log_entry(self, j, k):
        return self.scale * self.v.log_magnitude(k)

    def rows_equal(self):
        return True

    def monotone_in_k(self):
        if isinstance(self.v, (ConstantWeights, LinearWeights)):
            return True
        if isinstance(self.v, GeomWeights):
            return True if self.v.r >= 1.0 else False
        if isinstance(self.v, PeriodicWeights):
            vals = self.v.values
            return True if len(set(vals)) == 1 else False
        return None


@dataclass(frozen=True)
class CustomRows(KotheMatrix):
    """Explicit log a values loaded from a file; bounded in j and k."""

    log_values: tuple[tuple[float, ...], ...]  # [j-1][k - k_start]
    k_start: int = 1

    tag = "custom"

    def __post_init__(self):
        object.__setattr__(self, "k_min", self.k_start)
        object.__setattr__(self, "j_cap", len(self.log_values))

    @property
    def k_cap(self) -> int:
        return self.k_start + len(self.log_values[0]) - 1

    def log_row(self, j, ks):
        if j > len(self.log_values):
            raise DomainError(f"row {j} beyond table ({len(self.log_values)} rows)")
        row = self.log_values[j - 1]
        out = np.empty(len(ks))
        for i, k in enumerate(ks):
            idx = int(k) - self.k_start
            if idx < 0 or idx >= len(row):
                raise DomainError(f"column {int(k)} outside table range")
            out[i] = row[idx]
        return out

    def monotone_in_k(self):
        return None


# ---------------------------------------------------------------------------
# row-term descriptors handed to the criteria combiner


@dataclass(frozen=True)
class RowTerm:
    """Structured view of k -> log a_{J,k} - log a_{m,n+k} (n may be 0).

    shape certifies the tail behaviour; the numeric fields let the combiner
    run rate comparisons and separate the monotone part exactly.
    """

    shape: TailShape
    const_value: Optional[float] = None  # set when the term is constant
    log_coeff: float = 0.0  # coefficient of log k as k -> inf
    abs_log_coeff: float = 0.0  # bound for one-period step sizes
    period: int = 1
    drift: float = 0.0
    mono_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None


# ---------------------------------------------------------------------------
# the space model


@dataclass(frozen=True)
class SpaceModel:
    kind: str  # lp | c0 | lpv | c0v | entire | rapid | kothe
    norm: str  # "sum" | "max"
    p: Optional[float]
    matrix: KotheMatrix
    index_base: int
    bilateral: bool = False

    @property
    def equal_rows(self) -> bool:
        return self.matrix.rows_equal()

    @property
    def k_min(self) -> int:
        return self.matrix.k_min

    @property
    def k_cap(self) -> Optional[int]:
        return getattr(self.matrix, "k_cap", None)

    def check_j(self, j: int) -> None:
        if j < 1:
            raise DomainError(f"seminorm index must be >= 1, got {j}")
        cap = self.matrix.j_cap
        if cap is not None and j > cap:
            raise DomainError(f"seminorm index {j} beyond available rows ({cap})")

    def log_a(self, j: int, k: int) -> float:
        """log a_{j,k}."""
        self.check_j(j)
        if self.bilateral:
            return self._log_a_bilateral_scalar(j, k)
        if k < self.matrix.k_min:
            raise DomainError(f"column index {k} below matrix domain ({self.matrix.k_min})")
        cap = self.k_cap
        if cap is not None and k > cap:
            raise DomainError(f"column index {k} beyond table range ({cap})")
        return self.matrix.log_entry(j, k)

    def log_a_array(self, j: int, lo: int, hi: int) -> np.ndarray:
        self.check_j(j)
        if self.bilateral:
            return np.array([self._log_a_bilateral_scalar(j, k) for k in range(lo, hi + 1)])
        if lo < self.matrix.k_min:
            raise DomainError(f"column index {lo} below matrix domain ({self.matrix.k_min})")
        return self.matrix.log_row(j, np.arange(lo, hi + 1, dtype=np.int64))

    def _log_a_bilateral_scalar(self, j: int, k: int) -> float:
        m = self.matrix
        if isinstance(m, OnesRows):
            return 0.0
        if isinstance(m, WeightVectorRows):
            return m.scale * m.v.log_magnitude(k)
        raise DomainError("bilateral spaces require rows defined on all of Z")

    # -- structured row terms -------------------------------------------

    def row_term(self, J: int, m: int, n: int) -> RowTerm:
        """k -> log a_{J,k} - log a_{m,n+k} with a certified tail shape."""
        self.check_j(J)
        self.check_j(m)
        mat = self.matrix
        if isinstance(mat, OnesRows):
            return RowTerm(TailShape.evper(self.k_min, 1, 0.0), const_value=0.0)
        if isinstance(mat, PowerOfJRows):
            d = math.log(J) - math.log(m)
            cv = -n * math.log(m) if J == m else None
            return RowTerm(TailShape.evper(0, 1, d), const_value=cv, drift=d)
        if isinstance(mat, PowerOfKRows):
            aJ, am = mat.alpha(J), mat.alpha(m)

            def fn(ks, aJ=aJ, am=am, n=n):
                ks = ks.astype(np.float64)
                return aJ * np.log(ks) - am * np.log(ks + n)

            coeff = aJ - am
            if aJ >= am:
                limit = math.inf if coeff > 0 else 0.0
                shape = TailShape.mono_up(1, limit)
            else:
                # decreasing beyond aJ*n/(am-aJ)
                k0 = 1 if n == 0 else max(1, math.ceil(aJ * n / (am - aJ)))
                shape = TailShape.mono_down(k0, -math.inf)
            return RowTerm(shape, log_coeff=coeff, abs_log_coeff=aJ + am, mono_fn=fn)
        if isinstance(mat, WeightVectorRows):
            v = mat.v
            s = mat.scale
            if isinstance(v, ConstantWeights):
                return RowTerm(TailShape.evper(1, 1, 0.0), const_value=0.0)
            if isinstance(v, GeomWeights):
                cv = -s * n * math.log(v.r)
                return RowTerm(TailShape.evper(1, 1, 0.0), const_value=cv)
            if isinstance(v, LinearWeights):

                def fn(ks, s=s, n=n):
                    ks = ks.astype(np.float64)
                    return s * (np.log(ks) - np.log(ks + n))

                return RowTerm(
                    TailShape.mono_up(1, 0.0), log_coeff=0.0, abs_log_coeff=2 * abs(s), mono_fn=fn
                )
            info = v.period_info()
            if info is not None:
                P, q, _ = info
                # the term is exactly periodic once both k and k+n clear the prefix
                return RowTerm(TailShape.evper(P + 1, q, 0.0), period=q)
            return RowTerm(TailShape.unknown("unstructured weight-vector rows"))
        return RowTerm(TailShape.unknown("custom rows"))

    def row_ratio(self, J: int, m: int) -> RowTerm:
        """k -> log a_{J,k} - log a_{m,k} (the n = 0 row term)."""
        return self.row_term(J, m, 0)

    def row_step(self, m: int, r: int) -> RowTerm:
        """k -> log a_{m,k+r} - log a_{m,k}, for pumping-constant bounds."""
        self.check_j(m)
        mat = self.matrix
        if r == 0 or isinstance(mat, OnesRows):
            return RowTerm(TailShape.evper(self.k_min, 1, 0.0), const_value=0.0)
        if isinstance(mat, PowerOfJRows):
            return RowTerm(TailShape.evper(0, 1, 0.0), const_value=r * math.log(m))
        if isinstance(mat, PowerOfKRows):
            am = mat.alpha(m)

            def fn(ks, am=am, r=r):
                ks = ks.astype(np.float64)
                return am * (np.log(ks + r) - np.log(ks))

            return RowTerm(TailShape.mono_down(1, 0.0), abs_log_coeff=2 * am, mono_fn=fn)
        if isinstance(mat, WeightVectorRows):
            v = mat.v
            s = mat.scale
            if isinstance(v, ConstantWeights):
                return RowTerm(TailShape.evper(1, 1, 0.0), const_value=0.0)
            if isinstance(v, GeomWeights):
                return RowTerm(TailShape.evper(1, 1, 0.0), const_value=s * r * math.log(v.r))
            if isinstance(v, LinearWeights):

                def fn(ks, s=s, r=r):
                    ks = ks.astype(np.float64)
                    return s * (np.log(ks + r) - np.log(ks))

                if s >= 0:
                    return RowTerm(TailShape.mono_down(1, 0.0), abs_log_coeff=2 * abs(s), mono_fn=fn)
                return RowTerm(TailShape.mono_up(1, 0.0), abs_log_coeff=2 * abs(s), mono_fn=fn)
            info = v.period_info()
            if info is not None:
                P, q, _ = info
                return RowTerm(TailShape.evper(P + 1, q, 0.0), period=q)
        return RowTerm(TailShape.unknown("custom rows"))

    def row_n_delta(self, J: int, m: int, q: int) -> Optional[tuple[float, int]]:
        """(delta, n0) with rowterm(J,m,n+q)(k) = rowterm(J,m,n)(k) + delta
        for all k and n >= n0; None when no such exact law exists."""
        mat = self.matrix
        if isinstance(mat, OnesRows):
            return (0.0, 1)
        if isinstance(mat, PowerOfJRows):
            return (-q * math.log(m), 1)
        if isinstance(mat, WeightVectorRows):
            v = mat.v
            if isinstance(v, ConstantWeights):
                return (0.0, 1)
            if isinstance(v, GeomWeights):
                return (-mat.scale * q * math.log(v.r), 1)
            info = v.period_info()
            if info is not None:
                P, qv, _ = info
                if q % qv == 0:
                    return (0.0, max(1, P + 1))
            return None
        return None

    def row_growth(self, j: int) -> tuple:
        """Growth class of n -> log a_{j,n}: ("const",) | ("bounded",) |
        ("log", c) | ("linear", c) | ("unknown",)."""
        self.check_j(j)
        mat = self.matrix
        if isinstance(mat, OnesRows):
            return ("const",)
        if isinstance(mat, PowerOfJRows):
            return ("linear", math.log(j)) if j > 1 else ("const",)
        if isinstance(mat, PowerOfKRows):
            a = mat.alpha(j)
            return ("log", a) if a > 0 else ("const",)
        if isinstance(mat, WeightVectorRows):
            v = mat.v
            s = mat.scale
            if isinstance(v, ConstantWeights):
                return ("const",)
            if isinstance(v, GeomWeights):
                return ("linear", s * math.log(v.r)) if v.r != 1.0 else ("const",)
            if isinstance(v, LinearWeights):
                return ("log", s)
            if v.period_info() is not None:
                return ("bounded",)
        return ("unknown",)

    def render(self) -> str:
        prefix = "bi-" if self.bilateral else ""
        if self.kind == "lp":
            return f"{prefix}lp:{_fmt(self.p)}"
        if self.kind == "c0":
            return f"{prefix}c0"
        if self.kind == "lpv":
            return f"{prefix}lpv:{_fmt(self.p)}:{self.matrix.v.render()}"
        if self.kind == "c0v":
            return f"{prefix}c0v:{self.matrix.v.render()}"
        if self.kind in ("entire", "rapid"):
            return self.kind
        return f"kothe:{getattr(self, '_path', '?')}"

    def __repr__(self) -> str:
        return f"SpaceModel({self.render()!r})"


# ---------------------------------------------------------------------------
# parsing


def parse_space_spec(spec: str) -> SpaceModel:
    """Parse the space mini-language; raises WeightSpecError with a position."""
    if not isinstance(spec, str) or not spec.strip():
        raise WeightSpecError("empty space spec", spec or "", 0)
    s = spec.strip()
    bilateral = False
    if s.startswith("bi-"):
        bilateral = True
        s = s[3:]
    head, _, rest = s.partition(":")
    if head == "lp":
        p = _parse_exponent(rest, spec)
        return SpaceModel("lp", "sum", p, OnesRows(), 1, bilateral)
    if head == "c0":
        if rest:
            raise WeightSpecError("c0 takes no arguments", spec, len(spec) - len(rest))
        return SpaceModel("c0", "max", None, OnesRows(), 1, bilateral)
    if head == "lpv":
        pstr, _, wspec = rest.partition(":")
        p = _parse_exponent(pstr, spec)
        v = parse_weight_spec(wspec)
        _check_v_side(v, bilateral, spec)
        return SpaceModel("lpv", "sum", p, WeightVectorRows(v, 1.0 / p), 1, bilateral)
    if head == "c0v":
        v = parse_weight_spec(rest)
        _check_v_side(v, bilateral, spec)
        return SpaceModel("c0v", "max", None, WeightVectorRows(v, 1.0), 1, bilateral)
    if head == "entire":
        if bilateral:
            raise WeightSpecError("entire rows are not defined on a bilateral index set", spec, 0)
        return SpaceModel("entire", "sum", 2.0, PowerOfJRows(), 0, False)
    if head == "rapid":
        if bilateral:
            raise WeightSpecError("rapid rows are not defined on a bilateral index set", spec, 0)
        return SpaceModel("rapid", "sum", 2.0, PowerOfKRows("j"), 1, False)
    if head == "kothe":
        if bilateral:
            raise WeightSpecError("bilateral custom tables are not supported", spec, 0)
        return _load_kothe(rest, spec)
    raise WeightSpecError(f"unknown space kind {head!r}", spec, 0)


def _parse_exponent(text: str, spec: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise WeightSpecError(f"bad exponent {text!r}", spec, 0) from None
    if not (1.0 <= p < math.inf):
        raise WeightSpecError(f"exponent must satisfy 1 <= p < inf, got {p}", spec, 0)
    return p


def _check_v_side(v: WeightSequence, bilateral: bool, spec: str) -> None:
    if bilateral and not isinstance(v, BilateralWeights):
        raise WeightSpecError("bilateral weighted space needs a bilateral weight vector", spec, 0)
    if not bilateral and isinstance(v, BilateralWeights):
        raise WeightSpecError("unilateral weighted space needs a unilateral weight vector", spec, 0)


def _load_kothe(path: str, spec: str) -> SpaceModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise WeightSpecError(f"cannot read kothe table: {exc}", spec, 0) from None
    p: Optional[float] = 2.0
    norm = "sum"
    index_base = 1
    rows: list[tuple[float, ...]] = []
    generator: Optional[KotheMatrix] = None
    for ln in lines:
        body = ln.lstrip("#").strip()
        if body.startswith("kothe"):
            for part in body.split()[1:]:
                key, _, val = part.partition("=")
                if key == "p":
                    if val == "max":
                        p, norm = None, "max"
                    else:
                        p = _parse_exponent(val, spec)
                elif key == "kind":
                    norm = "max" if val == "c0" else "sum"
                    if val == "c0":
                        p = None
                elif key == "index_base":
                    index_base = int(val)
            continue
        if ln.startswith("#"):
            continue
        tag, _, payload = body.partition(";")
        tag = tag.strip()
        if tag == "ones":
            generator = OnesRows()
        elif tag == "powj":
            generator = PowerOfJRows()
            index_base = 0
        elif tag == "powk":
            form = payload.strip() or "j"
            generator = PowerOfKRows(form)
        elif tag == "weightvec":
            v = parse_weight_spec(payload.strip())
            scale = 1.0 / p if (norm == "sum" and p) else 1.0
            generator = WeightVectorRows(v, scale)
        elif tag == "values":
            try:
                rows.append(tuple(float(c) for c in payload.split(",") if c.strip()))
            except ValueError:
                raise WeightSpecError(f"bad values row in {path}", spec, 0) from None
        else:
            raise WeightSpecError(f"unknown kothe row tag {tag!r}", spec, 0)
    if generator is not None and rows:
        raise WeightSpecError("kothe table mixes a generator row with values rows", spec, 0)
    if generator is None:
        if not rows:
            raise WeightSpecError("kothe table defines no rows", spec, 0)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise WeightSpecError("kothe values rows have unequal lengths", spec, 0)
        for jj in range(1, len(rows)):
            if any(rows[jj][i] < rows[jj - 1][i] for i in range(width)):
                raise WeightSpecError(
                    f"kothe rows must be nondecreasing in j (violated between rows {jj} and {jj+1})",
                    spec,
                    0,
                )
        if any(c <= 0.0 for r in rows for c in r):
            raise WeightSpecError("kothe entries must be positive", spec, 0)
        log_rows = tuple(tuple(math.log(c) for c in r) for r in rows)
        generator = CustomRows(log_rows, k_start=index_base)
    model = SpaceModel("kothe", norm, p, generator, index_base, False)
    object.__setattr__(model, "_path", path)
    return model


def log_a(space: SpaceModel, j: int, k: int) -> float:
    """log a_{j,k} of the space's Köthe matrix."""
    return space.log_a(j, k)


# ---------------------------------------------------------------------------
# condition reports


@dataclass(frozen=True)
class ConditionReport:
    condition: str  # "B" | "B-sufficient" | "schwartz"
    holds: str  # "Holds" | "FailsAtWitness" | "UnknownAtHorizon"
    J: Optional[int]
    route: str
    witnesses: dict
    evidence: tuple
    params: dict

    def as_dict(self) -> dict:
        return {
            "condition": self.condition,
            "holds": self.holds,
            "J": self.J,
            "route": self.route,
            "witnesses": self.witnesses,
            "evidence": list(self.evidence),
            "params": self.params,
        }


def _ratio_sup_grid(
    space: SpaceModel, J: int, j: int, m: int, m_j: int, n_max: int, k_horizon: int
) -> float:
    """Empirical sup over n <= n_max of max over the tail half of
    [k_min, k_horizon] of the condition-(B) log ratio."""
    k_lo = max(space.k_min, 1)
    cap = space.k_cap
    k_hi = min(k_horizon, cap - n_max) if cap is not None else k_horizon
    if k_hi <= k_lo:
        return -math.inf
    tail_lo = k_lo + (k_hi - k_lo) // 2
    ks = np.arange(tail_lo, k_hi + 1, dtype=np.int64)
    row_j = space.matrix.log_row(j, ks)
    row_J = space.matrix.log_row(J, ks)
    best = -math.inf
    for n in range(0, n_max + 1):
        row_m = space.matrix.log_row(m, ks + n)
        row_mj = space.matrix.log_row(m_j, ks + n)
        val = float(np.max(row_j + row_m - row_J - row_mj))
        best = max(best, val)
    return best


def check_condition_B(
    space: SpaceModel,
    J: int = 1,
    j_max: int = DEFAULT_J_MAX,
    m_max: int = DEFAULT_M_MAX,
    n_max: int = DEFAULT_N_MAX,
    k_horizon: int = DEFAULT_K_HORIZON,
) -> ConditionReport:
    """Decide whether, for the given J, every pair (j, m) admits a dominating
    row m_j with sup_n limsup_k a_{j,k} a_{m,n+k} / (a_{J,k} a_{m_j,n+k})
    finite.  Structural row families are decided symbolically; custom tables
    only get horizon evidence.
    """
    space.check_j(J)
    params = {"J": J, "j_max": j_max, "m_max": m_max, "n_max": n_max, "k_horizon": k_horizon}
    mat = space.matrix
    grid = [(j, m) for j in range(1, j_max + 1) for m in range(1, m_max + 1)]

    if mat.rows_equal():
        evidence = tuple(
            {"j": j, "m": m, "m_j": j, "sup_log": 0.0, "status": "Exact"} for j, m in grid
        )
        return ConditionReport(
            "B",
            "Holds",
            J,
            "symbolic-equal-rows",
            {"m_j_formula": "m_j = j", "m_j": [{"j": j, "m": m, "m_j": j} for j, m in grid]},
            evidence,
            params,
        )

    if isinstance(mat, PowerOfJRows):
        # log ratio = k log(j m / (J m_j)) + n log(m / m_j); m_j = 2 j m makes
        # the k-coefficient log(1/(2J)) < 0, so each n-limit is -inf.
        evidence = []
        wit = []
        for j, m in grid:
            mj = 2 * j * m
            sup = _ratio_sup_grid(space, J, j, m, mj, n_max, k_horizon)
            evidence.append({"j": j, "m": m, "m_j": mj, "sup_log": sup, "status": "Exact"})
            wit.append({"j": j, "m": m, "m_j": mj})
        return ConditionReport(
            "B",
            "Holds",
            J,
            "symbolic-power-of-j",
            {"m_j_formula": "m_j = 2*j*m", "m_j": wit},
            tuple(evidence),
            params,
        )

    if isinstance(mat, PowerOfKRows):
        # log ratio -> (alpha_j + alpha_m - alpha_J - alpha_mj) log k; need a
        # row with alpha_mj >= alpha_j + alpha_m - alpha_J.
        evidence = []
        wit = []
        for j, m in grid:
            target = mat.alpha(j) + mat.alpha(m) - mat.alpha(J)
            mj = mat.alpha_least_geq(target)
            if mj is None:
                return ConditionReport(
                    "B",
                    "FailsAtWitness",
                    J,
                    "symbolic-power-of-k",
                    {
                        "j": j,
                        "m": m,
                        "reason": (
                            f"needs a row with exponent >= {target:.6g}, but the exponents "
                            f"are bounded by {mat.alpha_sup():.6g}"
                        ),
                    },
                    tuple(evidence),
                    params,
                )
            sup = _ratio_sup_grid(space, J, j, m, mj, n_max, k_horizon)
            evidence.append({"j": j, "m": m, "m_j": mj, "sup_log": sup, "status": "Exact"})
            wit.append({"j": j, "m": m, "m_j": mj})
        formula = "m_j = max(1, j + m - J)" if mat.exponent_form == "j" else "least admissible"
        return ConditionReport(
            "B", "Holds", J, "symbolic-power-of-k", {"m_j_formula": formula, "m_j": wit}, tuple(evidence), params
        )

    # custom tables: bounded search, horizon evidence only
    evidence = []
    wit = []
    cap = mat.j_cap or m_max
    for j, m in grid:
        if mat.j_cap is not None and (j > mat.j_cap or m > mat.j_cap):
            continue
        best_mj, best_sup = None, math.inf
        for mj in range(1, cap + 1):
            sup = _ratio_sup_grid(space, J, j, m, mj, n_max, k_horizon)
            if sup < best_sup:
                best_mj, best_sup = mj, sup
        evidence.append(
            {"j": j, "m": m, "m_j": best_mj, "sup_log": best_sup, "status": "HorizonOnly"}
        )
        wit.append({"j": j, "m": m, "m_j": best_mj})
    return ConditionReport(
        "B",
        "UnknownAtHorizon",
        J,
        "numeric",
        {"m_j": wit, "note": "custom rows: boundedness cannot be certified from a finite scan"},
        tuple(evidence),
        params,
    )


def _sufficient_mj(space: SpaceModel, j: int) -> Optional[tuple[int, str]]:
    """Least m_j with sup_k a_{j,k}^2 / a_{m_j,k} < inf, decided symbolically.

    Returns (m_j, reason) or None when no row works.
    """
    mat = space.matrix
    if isinstance(mat, OnesRows):
        return (1, "rows are constant one")
    if isinstance(mat, PowerOfJRows):
        return (max(1, j * j), "j^{2k} / (j^2)^k is bounded")
    if isinstance(mat, PowerOfKRows):
        t = mat.alpha_least_geq(2.0 * mat.alpha(j))
        if t is None:
            return None
        return (t, f"k^{{2 alpha_j}} needs exponent >= {2*mat.alpha(j):.6g}")
    if isinstance(mat, WeightVectorRows):
        if mat.v.log_sup() < math.inf:
            return (1, "bounded weight vector")
        return None
    return None


def check_condition_B_sufficient(
    space: SpaceModel,
    j_max: int = DEFAULT_J_MAX,
    k_horizon: int = DEFAULT_K_HORIZON,
) -> ConditionReport:
    """Faster sufficient route: rows nondecreasing in k plus, for each j, a
    row m_j with sup_k a_{j,k}^2 / a_{m_j,k} < inf.  Holds implies condition
    (B) holds (with J = 1).
    """
    params = {"j_max": j_max, "k_horizon": k_horizon}
    mono = space.matrix.monotone_in_k()
    if mono is False:
        return ConditionReport(
            "B-sufficient",
            "FailsAtWitness",
            1,
            "symbolic",
            {"reason": "rows are not nondecreasing in k"},
            (),
            params,
        )
    if mono is None:
        return ConditionReport(
            "B-sufficient",
            "UnknownAtHorizon",
            1,
            "numeric",
            {"note": "row monotonicity not certified"},
            (),
            params,
        )
    wit = []
    evidence = []
    for j in range(1, j_max + 1):
        got = _sufficient_mj(space, j)
        if got is None:
            return ConditionReport(
                "B-sufficient",
                "FailsAtWitness",
                1,
                "symbolic",
                {"j": j, "reason": "no row dominates the squared row"},
                tuple(evidence),
                params,
            )
        mj, why = got
        wit.append({"j": j, "m_j": mj, "reason": why})
        ks = np.arange(max(1, space.k_min), min(k_horizon, space.k_cap or k_horizon) + 1, dtype=np.int64)
        if space.matrix.j_cap is not None and mj > space.matrix.j_cap:
            sup = math.nan
        else:
            sup = float(np.max(2.0 * space.matrix.log_row(j, ks) - space.matrix.log_row(mj, ks)))
        evidence.append({"j": j, "m_j": mj, "sup_log": sup, "status": "Exact"})
    return ConditionReport(
        "B-sufficient", "Holds", 1, "symbolic", {"m_j": wit}, tuple(evidence), params
    )


def check_schwartz_condition(
    space: SpaceModel,
    J: int = 1,
    j_max: int = DEFAULT_J_MAX,
    m_max: int = DEFAULT_M_MAX,
    n_max: int = DEFAULT_N_MAX,
    k_horizon: int = DEFAULT_K_HORIZON,
) -> ConditionReport:
    """Strict variant of condition (B): the ratio must tend to 0 in k for
    every (j, m, n), for some m_j.

    Tries the sufficient route first (rows nondecreasing, squared-row
    domination, and lim_k a_{J,k} = inf), then the direct symbolic limit.
    """
    space.check_j(J)
    params = {"J": J, "j_max": j_max, "m_max": m_max, "n_max": n_max, "k_horizon": k_horizon}
    mat = space.matrix

    suff = check_condition_B_sufficient(space, j_max, k_horizon)
    if suff.holds == "Holds" and _row_J_diverges(space, J):
        return ConditionReport(
            "schwartz",
            "Holds",
            J,
            "sufficient",
            {
                "m_j": suff.witnesses.get("m_j"),
                "note": "rows nondecreasing, squared-row domination, and a_{J,k} -> inf",
            },
            suff.evidence,
            params,
        )

    grid = [(j, m) for j in range(1, j_max + 1) for m in range(1, m_max + 1)]
    if mat.rows_equal():
        return ConditionReport(
            "schwartz",
            "FailsAtWitness",
            J,
            "symbolic-equal-rows",
            {"j": 1, "m": 1, "reason": "all rows equal: the ratio is identically 1, never 0"},
            (),
            params,
        )
    if isinstance(mat, PowerOfJRows):
        wit = [{"j": j, "m": m, "m_j": 2 * j * m} for j, m in grid]
        evidence = tuple(
            {
                "j": j,
                "m": m,
                "m_j": 2 * j * m,
                "sup_log": _ratio_sup_grid(space, J, j, m, 2 * j * m, n_max, k_horizon),
                "status": "Exact",
            }
            for j, m in grid
        )
        return ConditionReport(
            "schwartz",
            "Holds",
            J,
            "symbolic-power-of-j",
            {"m_j_formula": "m_j = 2*j*m", "m_j": wit},
            evidence,
            params,
        )
    if isinstance(mat, PowerOfKRows):
        wit = []
        for j, m in grid:
            target = mat.alpha(j) + mat.alpha(m) - mat.alpha(J)
            mj = _alpha_least_gt(mat, target)
            if mj is None:
                return ConditionReport(
                    "schwartz",
                    "FailsAtWitness",
                    J,
                    "symbolic-power-of-k",
                    {"j": j, "m": m, "reason": "no row exponent strictly dominates"},
                    (),
                    params,
                )
            wit.append({"j": j, "m": m, "m_j": mj})
        return ConditionReport(
            "schwartz", "Holds", J, "symbolic-power-of-k", {"m_j": wit}, (), params
        )
    return ConditionReport(
        "schwartz",
        "UnknownAtHorizon",
        J,
        "numeric",
        {"note": "custom rows: limits cannot be certified from a finite scan"},
        (),
        params,
    )


def _alpha_least_gt(mat: PowerOfKRows, target: float) -> Optional[int]:
    """Least row index t with alpha_t strictly above target, None if none."""
    if math.isfinite(mat.alpha_sup()) and target >= mat.alpha_sup():
        return None
    t = mat.alpha_least_geq(target)
    if t is None:
        return None
    while mat.alpha(t) <= target + 1e-12:
        t += 1
    return t


def _row_J_diverges(space: SpaceModel, J: int) -> bool:
    """Certified lim_k a_{J,k} = inf."""
    mat = space.matrix
    if isinstance(mat, OnesRows):
        return False
    if isinstance(mat, PowerOfJRows):
        return J >= 2
    if isinstance(mat, PowerOfKRows):
        return mat.alpha(J) > 0
    if isinstance(mat, WeightVectorRows):
        v = mat.v
        if isinstance(v, LinearWeights):
            return mat.scale > 0
        if isinstance(v, GeomWeights):
            return (v.r > 1.0) == (mat.scale > 0) and v.r != 1.0
        return False
    return False
