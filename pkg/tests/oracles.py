"""Independent brute-force evaluators used to cross-check library results.

Everything here is written against the mathematical definitions with the
dumbest sound arithmetic available (``math.fsum`` over freshly computed
logs, ``lgamma`` closed forms, exact ``Fraction`` convolution) and never
calls the code paths under test: no cumulative-sum kernels, no shape
algebra, no log-magnitude vector representation.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple


# ---------------------------------------------------------------------------
# weight windows


def window_fsum(w, n: int, k: int) -> float:
    """log of the n-step product landing at offset k, one log per factor."""
    return math.fsum(w.log_magnitude(v) for v in range(k + 1, k + n + 1))


def window_const(c: float, n: int) -> float:
    return n * math.log(c)


def window_linear(n: int, k: int) -> float:
    """log((k+n)!/k!) through lgamma — no per-step accumulation at all."""
    return math.lgamma(k + n + 1) - math.lgamma(k + 1)


def window_geom(r: float, n: int, k: int) -> float:
    """log prod_{v=k+1..k+n} r^v = (sum of exponents) * log r."""
    return (n * k + n * (n + 1) / 2) * math.log(r)


def window_periodic(period: Sequence[float], n: int, k: int) -> float:
    """Direct phase walk over an index-1-based periodic table."""
    q = len(period)
    return math.fsum(math.log(period[(v - 1) % q]) for v in range(k + 1, k + n + 1))


# ---------------------------------------------------------------------------
# graded rows


def log_row_lp(j: int, k: int) -> float:
    return 0.0


def log_row_entire(j: int, k: int) -> float:
    """rows j^k on index base 0."""
    return k * math.log(j)


def log_row_rapid(j: int, k: int) -> float:
    """rows k^j on index base 1."""
    return j * math.log(k)


def integrand(w, space, J: int, m: int, n: int, k: int) -> float:
    """Window log-product plus the row correction, by definition."""
    return window_fsum(w, n, k) + space.log_a(J, k) - space.log_a(m, n + k)


def tail_min(w, space, J: int, m: int, n: int, N: int, hor: int) -> Tuple[float, int]:
    """(min, argmin) of the integrand over k in [N, hor]."""
    best = math.inf
    arg = N
    for k in range(N, hor + 1):
        v = integrand(w, space, J, m, n, k)
        if v < best:
            best, arg = v, k
    return best, arg


def window_max_then_min(
    w, space, J: int, m: int, n: int, N: int, hor: int
) -> Tuple[float, int]:
    """(min over k of max over window lengths 1..n, argmin).

    Scan starts where every window length lands inside the table:
    k >= max(N, floor + n) with floor = max(space.k_min, 0).
    """
    floor = max(space.k_min, 0)
    start = max(N, floor + n)
    best = math.inf
    arg = start
    for k in range(start, hor + 1):
        g = -math.inf
        for i in range(1, n + 1):
            v = window_fsum(w, i, k - i) + space.log_a(J, k - i) - space.log_a(m, k)
            g = max(g, v)
        if g < best:
            best, arg = g, k
    return best, arg


# ---------------------------------------------------------------------------
# vectors, shifts, seminorms — dict/Fraction representations


def vec_from_pairs(pairs: Sequence[Tuple[int, float]]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for i, c in pairs:
        out[int(i)] = Fraction(c)
    return out


def shift_exact(
    x: Dict[int, Fraction], weights: Dict[int, Fraction], steps: int, base: int
) -> Dict[int, Fraction]:
    """B^steps x with exact Fraction arithmetic: coefficient c at index i
    moves to i-1 multiplied by w_i, dropping anything below base."""
    cur = dict(x)
    for _ in range(steps):
        nxt: Dict[int, Fraction] = {}
        for i, c in cur.items():
            if i - 1 < base:
                continue
            nxt[i - 1] = nxt.get(i - 1, Fraction(0)) + c * weights[i]
        cur = nxt
    return cur


def poly_apply_exact(
    x: Dict[int, Fraction],
    weights: Dict[int, Fraction],
    coeffs: Sequence[Fraction],
    n: int,
    base: int,
) -> Dict[int, Fraction]:
    """P(B)^n x, exactly: n rounds of sum_d coeffs[d] * B^d x."""
    cur = dict(x)
    for _ in range(n):
        acc: Dict[int, Fraction] = {}
        term = dict(cur)
        for d, c in enumerate(coeffs):
            if d > 0:
                term = shift_exact(term, weights, 1, base)
            if c == 0:
                continue
            for i, v in term.items():
                acc[i] = acc.get(i, Fraction(0)) + c * v
        cur = {i: v for i, v in acc.items() if v != 0}
    return cur


def weight_table(w, lo: int, hi: int) -> Dict[int, Fraction]:
    """Exact snapshots of the weight values on [lo, hi] (sign times
    exp(log-magnitude), converted through Fraction(float))."""
    out: Dict[int, Fraction] = {}
    for i in range(lo, hi + 1):
        out[i] = Fraction(math.exp(w.log_magnitude(i)))
    return out


def seminorm_def(x: Dict[int, float], space, j: int) -> float:
    """p_j by definition: weighted p-sum or weighted sup in linear scale."""
    terms = [abs(c) * math.exp(space.log_a(j, i)) for i, c in x.items()]
    if not terms:
        return 0.0
    if space.norm == "max":
        return max(terms)
    p = space.p
    return math.fsum(t**p for t in terms) ** (1.0 / p)
