"""Tests for the criterion machinery: tail infima, the sup/inf threshold,
certificates, verdicts, and the polynomial hypothesis checks."""

import json
import math
import os
import random
import subprocess
import sys

import numpy as np
import pytest

from hyshift import (
    BlockCertificate,
    Horizons,
    blockcert_to_growthcert,
    condN_check,
    criterion_grid,
    find_block_certificate,
    hypercyclicity_test,
    integrand_array,
    parse_space_spec,
    parse_weight_spec,
    poly_hypothesis_check,
    subspace_verdict,
    tail_inf,
    theta,
    window_max_inf,
)
from hyshift.criteria import bilateral_verdict
from hyshift.dynamics import TruncatedVector, apply_shift, log_seminorm
from hyshift.errors import CertificateError, DomainError

import oracles

LOG2 = math.log(2.0)


def W(spec):
    return parse_weight_spec(spec)


def S(spec):
    return parse_space_spec(spec)


def _kothe_values_file(tmp_path, columns=200, seed=5):
    """A two-row table whose rows have no generator law, so every scan over it
    is horizon-limited.  Values are linear scale, j-monotone by construction."""
    rng = random.Random(seed)
    row1 = [math.exp(rng.uniform(-1.0, 1.0)) for _ in range(columns)]
    row2 = [a * (1.0 + rng.uniform(0.5, 2.0)) for a in row1]
    lines = ["# kothe p=2"]
    for row in (row1, row2):
        lines.append("values; " + ", ".join(repr(v) for v in row))
    path = tmp_path / "rough.txt"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


# ---------------------------------------------------------------------------
# window_max_inf: one basis vector, best window length


class TestWindowMaxInf:
    def test_doubling_weights_floor_is_full_window(self):
        cv = window_max_inf(W("const:2"), S("lp:2"), 1, 1, n=3, N=1)
        assert cv.status == "Exact"
        assert cv.log_value == pytest.approx(3 * LOG2, abs=1e-12)

    def test_periodic_floor_is_one_period_mean(self):
        cv = window_max_inf(W("periodic:[3,0.5]"), S("lp:1"), 1, 1, n=2, N=1)
        assert cv.status == "Exact"
        assert cv.log_value == pytest.approx(math.log(1.5), abs=1e-12)

    def test_unweighted_shift_floor_is_zero(self):
        cv = window_max_inf(W("const:1"), S("lp:2"), 1, 1, n=2, N=1)
        assert cv.status == "Exact"
        assert cv.log_value == 0.0

    def test_decaying_weights_collapse(self):
        cv = window_max_inf(W("geom:0.5"), S("lp:2"), 1, 1, n=2, N=1)
        assert cv.status == "Exact"
        assert cv.log_value == -math.inf

    def test_spike_weights_collapse_for_every_length(self):
        cv = window_max_inf(W("spikes"), S("lp:2"), 1, 1, n=2, N=1)
        assert cv.status == "Exact"
        assert cv.log_value == -math.inf
        assert cv.provenance["argmin_k"] is None

    def test_block_weights_keep_a_finite_floor(self):
        cv = window_max_inf(W("blocks"), S("lp:2"), 1, 1, n=2, N=1)
        assert cv.status == "Exact"
        assert cv.log_value == pytest.approx(-LOG2, abs=1e-12)

    def test_power_must_be_positive(self):
        with pytest.raises(DomainError, match="power"):
            window_max_inf(W("const:2"), S("lp:2"), 1, 1, n=0, N=1)

    def test_tail_start_below_domain(self):
        with pytest.raises(DomainError, match="offset domain"):
            window_max_inf(W("const:2"), S("lp:2"), 1, 1, n=2, N=-3)

    def test_rough_table_scan_matches_brute_force(self, tmp_path):
        sp = S(f"kothe:{_kothe_values_file(tmp_path)}")
        w = W("const:2")
        cv = window_max_inf(w, sp, 1, 2, n=3, N=1, k_horizon=64)
        assert cv.status == "HorizonOnly"
        ref, argmin = oracles.window_max_then_min(w, sp, 1, 2, 3, 1, 64)
        assert cv.log_value == pytest.approx(ref, abs=1e-9)
        assert cv.provenance["argmin_k"] == argmin

    @pytest.mark.parametrize(
        "wspec,sspec,n",
        [
            ("const:2", "lp:2", 1),
            ("const:2", "lp:2", 4),
            ("periodic:[3,0.5]", "lp:1", 3),
            ("linear", "entire", 2),
            ("geom:1.5", "rapid", 2),
            ("evper:[2]:[0.5,4]", "lpv:2:periodic:[1,2]", 2),
        ],
    )
    def test_certified_value_never_exceeds_scanned_minimum(self, wspec, sspec, n):
        w, sp = W(wspec), S(sspec)
        cv = window_max_inf(w, sp, 1, 1, n=n, N=max(sp.k_min, 0), k_horizon=512)
        ref, _ = oracles.window_max_then_min(w, sp, 1, 1, n, max(sp.k_min, 0), 512)
        if cv.status == "Exact":
            assert cv.log_value <= ref + 1e-9
        else:
            assert cv.log_value == pytest.approx(ref, abs=1e-9)


# ---------------------------------------------------------------------------
# tail_inf: one window length


class TestTailInf:
    def test_doubling_weights_grow_linearly_in_the_power(self):
        for n in (1, 2, 5):
            cv = tail_inf(W("const:2"), S("lp:2"), 1, 1, n=n, N=1)
            assert cv.status == "Exact"
            assert cv.log_value == pytest.approx(n * LOG2, abs=1e-12)
            assert cv.provenance["argmin_k"] == 1

    def test_spike_weights_collapse_with_structural_note(self):
        cv = tail_inf(W("spikes"), S("lp:2"), 1, 1, n=1, N=1)
        assert cv.status == "Exact"
        assert cv.log_value == -math.inf
        assert cv.provenance["argmin_k"] is None
        assert cv.provenance["note"] == "collapsing powers of two"

    def test_scan_minimum_matches_brute_force(self, tmp_path):
        sp = S(f"kothe:{_kothe_values_file(tmp_path)}")
        w = W("periodic:[3,0.5]")
        cv = tail_inf(w, sp, 1, 1, n=2, N=1, k_horizon=80)
        assert cv.status == "HorizonOnly"
        ref, argmin = oracles.tail_min(w, sp, 1, 1, 2, 1, 80)
        assert cv.log_value == pytest.approx(ref, abs=1e-9)
        assert cv.provenance["argmin_k"] == argmin

    def test_longer_scans_never_raise_the_minimum(self, tmp_path):
        sp = S(f"kothe:{_kothe_values_file(tmp_path)}")
        w = W("const:2")
        vals = [tail_inf(w, sp, 1, 1, n=1, N=1, k_horizon=h).log_value for h in (32, 64, 128)]
        assert vals[0] >= vals[1] >= vals[2]


# ---------------------------------------------------------------------------
# grids


class TestGrids:
    @pytest.mark.parametrize(
        "wspec,sspec,J,m",
        [
            ("const:2", "lp:2", 1, 1),
            ("periodic:[3,0.5]", "lp:1", 1, 1),
            ("linear", "entire", 1, 2),
            ("geom:1.5", "rapid", 1, 2),
        ],
    )
    def test_integrand_array_matches_pointwise_oracle(self, wspec, sspec, J, m):
        w, sp = W(wspec), S(sspec)
        lo = max(sp.k_min, 0)
        for n in (1, 3):
            arr = integrand_array(w, sp, J, m, n, lo, lo + 40)
            for i, k in enumerate(range(lo, lo + 41)):
                assert arr[i] == pytest.approx(
                    oracles.integrand(w, sp, J, m, n, k), abs=1e-9
                )

    def test_criterion_grid_rows_are_range_minima(self):
        w, sp = W("periodic:[3,1,0.25]"), S("lp:2")
        ns = [1, 2, 3, 4]
        mins, argmins = criterion_grid(w, sp, 1, 1, ns, 0, 60)
        for row, n in enumerate(ns):
            vals = [oracles.integrand(w, sp, 1, 1, n, k) for k in range(0, 61)]
            best = min(vals)
            assert mins[row] == pytest.approx(best, abs=1e-9)
            assert vals[int(argmins[row])] == pytest.approx(best, abs=1e-9)

    def test_empty_power_list_rejected(self):
        with pytest.raises(DomainError, match="powers"):
            criterion_grid(W("const:2"), S("lp:2"), 1, 1, [], 0, 10)

    def test_reversed_offset_range_rejected(self):
        with pytest.raises(DomainError, match="empty offset range"):
            criterion_grid(W("const:2"), S("lp:2"), 1, 1, [1], 10, 3)


# ---------------------------------------------------------------------------
# theta: the sup/inf threshold


class TestTheta:
    @pytest.mark.parametrize(
        "wspec,sspec,J,m,expected",
        [
            ("const:2", "lp:2", 1, 1, math.inf),
            ("const:1", "lp:2", 1, 1, 0.0),
            ("geom:0.5", "lp:2", 1, 1, -math.inf),
            ("periodic:[3,0.5]", "lp:1", 1, 1, math.inf),
            ("spikes", "lp:2", 1, 1, -math.inf),
            ("blocks", "lp:2", 1, 1, -LOG2),
            ("linear", "entire", 1, 1, math.inf),
            ("linear", "entire", 1, 2, -math.inf),
            ("evper:[2]:[0.5,4]", "lpv:2:periodic:[1,2]", 1, 1, math.inf),
        ],
    )
    def test_threshold_pins(self, wspec, sspec, J, m, expected):
        cv = theta(W(wspec), S(sspec), J, m)
        assert cv.status == "Exact"
        if math.isfinite(expected):
            assert cv.log_value == pytest.approx(expected, abs=1e-9)
        else:
            assert cv.log_value == expected

    def test_threshold_grows_with_more_powers(self, tmp_path):
        sp = S(f"kothe:{_kothe_values_file(tmp_path)}")
        w = W("const:2")
        vals = [
            theta(w, sp, horizons=Horizons(n_max=nm, k_horizon=128)).log_value
            for nm in (2, 4, 8)
        ]
        assert vals[0] <= vals[1] <= vals[2]

    def test_no_finite_positive_threshold_for_hypercyclic_shifts(self):
        """Randomized check of the value dichotomy: whenever the shift is
        hypercyclic and the threshold is certified, the threshold is either
        at most one (log <= 0) or fully divergent, never strictly between."""
        rng = random.Random(20260816)
        sp = S("lp:2")
        checked = 0
        for _ in range(500):
            kind = rng.randrange(3)
            if kind == 0:
                spec = f"const:{round(math.exp(rng.uniform(-1.5, 1.5)), 4)}"
            elif kind == 1:
                vals = [round(math.exp(rng.uniform(-1.5, 1.5)), 4) for _ in range(rng.randint(1, 6))]
                spec = "periodic:[" + ",".join(map(str, vals)) + "]"
            else:
                pre = [round(math.exp(rng.uniform(-1.5, 1.5)), 4) for _ in range(rng.randint(1, 4))]
                per = [round(math.exp(rng.uniform(-1.5, 1.5)), 4) for _ in range(rng.randint(1, 4))]
                spec = (
                    "evper:[" + ",".join(map(str, pre)) + "]:[" + ",".join(map(str, per)) + "]"
                )
            w = W(spec)
            hc = hypercyclicity_test(w, sp)
            t = theta(w, sp)
            if hc.outcome == "yes" and t.status == "Exact":
                checked += 1
                assert not (0.0 < t.log_value < math.inf), (spec, t.log_value)
        assert checked >= 100


# ---------------------------------------------------------------------------
# block certificates and their growth form


class TestCertificates:
    def test_doubling_weights_get_a_one_step_certificate(self):
        cert = find_block_certificate(W("const:2"), S("lp:2"))
        assert cert is not None
        assert cert.m == 1 and cert.N == 1
        assert cert.log_C == pytest.approx(LOG2, abs=1e-12)

    def test_periodic_weights_get_a_period_length_certificate(self):
        cert = find_block_certificate(W("periodic:[3,0.5]"), S("lp:1"))
        assert cert is not None
        assert cert.m == 2 and cert.N == 1
        assert cert.log_C == pytest.approx(math.log(1.5), abs=1e-12)

    @pytest.mark.parametrize("wspec", ["const:1", "geom:0.5", "spikes"])
    def test_non_growing_weights_get_no_certificate(self, wspec):
        assert find_block_certificate(W(wspec), S("lp:2")) is None

    def test_certificate_requires_positive_log_gain(self):
        with pytest.raises(CertificateError, match="log C"):
            BlockCertificate(log_C=0.0, m=1, N=1)

    def test_certificate_rejects_row_below_target(self):
        with pytest.raises(CertificateError, match="row"):
            BlockCertificate(log_C=1.0, m=1, N=1, J=2, row=1)

    def test_growth_form_bounds_every_power(self):
        w, sp = W("const:2"), S("lp:2")
        cert = find_block_certificate(w, sp)
        gcert = blockcert_to_growthcert(cert, w, sp)
        assert gcert.log_K == 0.0
        check = gcert.verify(w, sp, n_check=64)
        assert check["ok"] and all(row["ok"] for row in check["rows"])
        assert len(check["rows"]) == 64
        for n in (1, 7, 64):
            exact = tail_inf(w, sp, 1, 1, n=n, N=gcert.tail_start(n)).log_value
            assert exact >= gcert.log_C_n(n) - 1e-9

    def test_growth_form_bounds_periodic_powers(self):
        w, sp = W("periodic:[3,0.5]"), S("lp:1")
        gcert = blockcert_to_growthcert(find_block_certificate(w, sp), w, sp)
        check = gcert.verify(w, sp, n_check=64)
        assert check["ok"] and all(row["margin"] >= -1e-9 for row in check["rows"])


# ---------------------------------------------------------------------------
# hypercyclicity of the shift itself


class TestHypercyclicity:
    def test_doubling_weights_are_hypercyclic(self):
        rep = hypercyclicity_test(W("const:2"), S("lp:2"))
        assert rep.outcome == "yes" and rep.certified

    def test_unweighted_shift_is_not(self):
        rep = hypercyclicity_test(W("const:1"), S("lp:2"))
        assert rep.outcome == "no"

    def test_decaying_weights_are_not(self):
        rep = hypercyclicity_test(W("geom:0.5"), S("lp:2"))
        assert rep.outcome == "no"

    def test_periodic_growth_is_hypercyclic(self):
        rep = hypercyclicity_test(W("periodic:[3,0.5]"), S("lp:1"))
        assert rep.outcome == "yes"

    def test_spike_weights_are_hypercyclic(self):
        rep = hypercyclicity_test(W("spikes"), S("lp:2"))
        assert rep.outcome == "yes" and rep.certified

    def test_evidence_rows_carry_the_sup_per_row(self):
        rep = hypercyclicity_test(W("const:2"), S("lp:2"))
        assert rep.evidence
        for row in rep.evidence:
            assert set(row) >= {"j", "sup_log"}


# ---------------------------------------------------------------------------
# verdicts


class TestVerdicts:
    @pytest.mark.parametrize(
        "wspec,sspec,outcome",
        [
            ("const:2", "lp:2", "NoSubspace"),
            ("const:1", "lp:2", "NotHypercyclic"),
            ("geom:0.5", "lp:2", "NotHypercyclic"),
            ("periodic:[3,0.5]", "lp:1", "NoSubspace"),
            ("spikes", "lp:2", "HasSubspace"),
            ("blocks", "lp:2", "HasSubspace"),
            ("linear", "entire", "HasSubspace"),
            ("evper:[2]:[0.5,4]", "lpv:2:periodic:[1,2]", "NoSubspace"),
        ],
    )
    def test_outcomes(self, wspec, sspec, outcome):
        rep = subspace_verdict(W(wspec), S(sspec))
        assert rep.outcome == outcome

    def test_negative_verdict_carries_a_pumped_certificate(self):
        rep = subspace_verdict(W("const:2"), S("lp:2"))
        assert rep.certificate is not None
        d = rep.as_dict()
        assert d["schema"] == 1
        assert d["certificate"]["block"]["kind"] == "block"
        assert d["certificate"]["growth"]["kind"] == "growth"
        assert d["certificate"]["block"]["log_C"] == pytest.approx(LOG2, abs=1e-12)

    def test_unbounded_weights_on_lp_are_rejected(self):
        with pytest.raises(DomainError, match="bounded"):
            subspace_verdict(W("linear"), S("lp:2"))

    def test_report_is_json_serializable(self):
        d = subspace_verdict(W("blocks"), S("lp:2")).as_dict()
        json.dumps(d)  # must not raise


class TestBilateralVerdicts:
    def test_two_sided_doubling_has_a_subspace(self):
        rep = bilateral_verdict(W("bilateral:const:2:const:0.5"), S("bi-lp:2"))
        assert rep.outcome == "HasSubspace"
        assert rep.hypercyclic is None

    def test_flipped_drift_is_not_hypercyclic(self):
        rep = bilateral_verdict(W("bilateral:const:0.5:const:2"), S("bi-lp:2"))
        assert rep.outcome == "NotHypercyclic"

    def test_horizon_products_back_the_drift_claims(self):
        rep = bilateral_verdict(W("bilateral:const:2:const:0.5"), S("bi-lp:2"))
        hp = rep.evidence["horizon_products"]
        assert hp["n"] == 1000
        assert hp["forward_diverges"] and hp["backward_vanishes"]
        # weakest anchor crosses four halving weights before the growing side
        assert hp["forward_log_min"] == pytest.approx(992 * LOG2, abs=1e-9)
        assert hp["backward_log_max"] == pytest.approx(-992 * LOG2, abs=1e-9)

    def test_unilateral_weights_are_rejected(self):
        with pytest.raises(DomainError, match="bilateral"):
            bilateral_verdict(W("const:2"), S("bi-lp:2"))


# ---------------------------------------------------------------------------
# the two-sided condition check


class TestConditionN:
    def test_doubling_weights_hold_on_both_sides(self):
        rep = condN_check(W("const:2"), S("lp:2"), 1, 1)
        assert rep["agree"] is True
        assert rep["lhs"]["holds"] == "Holds"
        assert rep["lhs"]["witness_n"] == 1
        assert rep["lhs"]["value_log"] == pytest.approx(LOG2, abs=1e-12)
        assert rep["rhs"]["holds"] == "Holds"
        assert rep["rhs"]["theta_log"] == math.inf

    def test_unweighted_shift_fails_on_both_sides(self):
        rep = condN_check(W("const:1"), S("lp:2"), 1, 1)
        assert rep["agree"] is True
        assert rep["lhs"]["holds"] == "Fails"
        assert rep["rhs"]["holds"] == "Fails"


# ---------------------------------------------------------------------------
# the anchor identity: the integrand is a seminorm ratio


ANCHOR_PAIRS = [
    ("const:2", "lp:2"),
    ("periodic:[3,0.5]", "lp:1"),
    ("linear", "entire"),
    ("geom:1.5", "rapid"),
    ("evper:[2]:[0.5,4]", "lpv:2:periodic:[1,2]"),
]


class TestAnchorIdentity:
    @pytest.mark.parametrize("wspec,sspec", ANCHOR_PAIRS)
    def test_integrand_equals_seminorm_ratio(self, wspec, sspec):
        w, sp = W(wspec), S(sspec)
        J = 1
        m = 2 if not sp.equal_rows else 1
        k_lo = max(sp.k_min, sp.index_base, 0)
        for n in range(1, 9):
            arr = integrand_array(w, sp, J, m, n, k_lo, k_lo + 63)
            for i, k in enumerate(range(k_lo, k_lo + 64)):
                e = TruncatedVector.basis(n + k, sp.index_base)
                lhs = log_seminorm(apply_shift(e, w, n), sp, J) - log_seminorm(e, sp, m)
                assert arr[i] == pytest.approx(lhs, abs=1e-9), (n, k)


# ---------------------------------------------------------------------------
# polynomial hypotheses


class TestPolyHypotheses:
    def test_differentiation_type_poly_has_subspace(self):
        rep = poly_hypothesis_check(W("linear"), S("entire"), [1.0, 1.0, 1.0])
        assert rep["outcome"] == "HasSubspace"
        parts = rep["parts"]
        assert parts["condition_b"]["holds"] == "Holds"
        assert parts["inf_zero"]["holds"] and parts["inf_zero"]["witness_m"] == 2
        assert parts["constant_term"]["holds"] and parts["constant_term"]["within_disc"]

    def test_identity_plus_spike_shift_has_subspace(self):
        rep = poly_hypothesis_check(W("spikes"), S("lp:2"), [1.0, 1.0])
        assert rep["outcome"] == "HasSubspace"
        assert rep["premise"]["class"] == "verified"

    def test_degree_zero_rejected(self):
        with pytest.raises(DomainError, match="degree"):
            poly_hypothesis_check(W("const:2"), S("lp:2"), [5.0])

    def test_trailing_zeros_trimmed_before_degree_check(self):
        with pytest.raises(DomainError, match="degree"):
            poly_hypothesis_check(W("const:2"), S("lp:2"), [5.0, 0.0, 0.0])

    def test_growing_weights_stay_undecided(self):
        rep = poly_hypothesis_check(W("const:2"), S("lp:2"), [1.0, 1.0])
        assert rep["outcome"] == "UnknownAtHorizon"


# ---------------------------------------------------------------------------
# backend agreement


class TestBackendAgreement:
    def test_numpy_fallback_matches_in_process_values(self):
        probe = (
            "import json, math\n"
            "from hyshift import parse_weight_spec, parse_space_spec, theta, window_max_inf\n"
            "out = []\n"
            "for wspec, sspec in [('const:2','lp:2'), ('periodic:[3,1,0.25]','lp:2'), ('linear','entire')]:\n"
            "    w, sp = parse_weight_spec(wspec), parse_space_spec(sspec)\n"
            "    out.append(theta(w, sp, 1, 2 if not sp.equal_rows else 1).log_value)\n"
            "    out.append(window_max_inf(w, sp, 1, 1, n=3, N=max(sp.k_min, 1)).log_value)\n"
            "print(json.dumps(out))\n"
        )
        env = dict(os.environ, HYSHIFT_BACKEND="numpy")
        res = subprocess.run(
            [sys.executable, "-c", probe], capture_output=True, text=True, env=env
        )
        assert res.returncode == 0, res.stderr
        fallback = json.loads(res.stdout)

        here = []
        for wspec, sspec in [("const:2", "lp:2"), ("periodic:[3,1,0.25]", "lp:2"), ("linear", "entire")]:
            w, sp = W(wspec), S(sspec)
            here.append(theta(w, sp, 1, 2 if not sp.equal_rows else 1).log_value)
            here.append(window_max_inf(w, sp, 1, 1, n=3, N=max(sp.k_min, 1)).log_value)
        assert len(fallback) == len(here)
        for a, b in zip(fallback, here):
            if not math.isfinite(b):
                assert a == b
            else:
                assert a == pytest.approx(b, abs=1e-12)
