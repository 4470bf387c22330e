"""Weight families: parsing, windows, partial-sum sups."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyshift import (
    DomainError,
    WeightSpecError,
    cumulative_sup_log,
    parse_weight_spec,
    window_log,
)

import oracles

LOG2 = math.log(2.0)


# ---------------------------------------------------------------------------
# parsing


def test_parse_const():
    w = parse_weight_spec("const:2")
    assert all(w.log_magnitude(k) == LOG2 for k in (1, 2, 17, 1000))


def test_parse_linear():
    w = parse_weight_spec("linear")
    for k in (1, 2, 7, 500):
        assert w.log_magnitude(k) == pytest.approx(math.log(k), abs=0)


def test_parse_periodic_phase():
    w = parse_weight_spec("periodic:[3,0.5]")
    assert math.exp(w.log_magnitude(1)) == pytest.approx(3.0)
    assert math.exp(w.log_magnitude(2)) == pytest.approx(0.5)
    assert math.exp(w.log_magnitude(3)) == pytest.approx(3.0)


def test_parse_geom():
    w = parse_weight_spec("geom:0.5")
    for k in (1, 2, 9):
        assert w.log_magnitude(k) == pytest.approx(k * math.log(0.5), rel=1e-15)


def test_parse_evper():
    w = parse_weight_spec("evper:[2]:[0.5,4]")
    vals = [math.exp(w.log_magnitude(k)) for k in range(1, 6)]
    assert vals == pytest.approx([2.0, 0.5, 4.0, 0.5, 4.0])


def test_parse_spikes_and_blocks():
    s = parse_weight_spec("spikes")
    assert math.exp(s.log_magnitude(3)) == pytest.approx(2.0)
    for i in (1, 2, 3, 4):
        assert math.exp(s.log_magnitude(2**i)) == pytest.approx(2.0**-i)
    b = parse_weight_spec("blocks")
    assert math.exp(b.log_magnitude(1)) == pytest.approx(2.0)  # [2^0, 2^1)
    assert math.exp(b.log_magnitude(2)) == pytest.approx(0.5)  # [2^1, 2^2)
    assert math.exp(b.log_magnitude(4)) == pytest.approx(2.0)  # [2^2, 2^3)


def test_parse_bilateral():
    w = parse_weight_spec("bilateral:const:2:const:0.5")
    assert w.log_magnitude(1) == pytest.approx(LOG2)
    assert w.log_magnitude(5) == pytest.approx(LOG2)
    assert w.log_magnitude(0) == pytest.approx(-LOG2)
    assert w.log_magnitude(-3) == pytest.approx(-LOG2)


@pytest.mark.parametrize(
    "bad, token",
    [
        ("const:x", "x"),
        ("const:0", "0"),
        ("geom:0", "0"),
        ("periodic:[]", "[]"),
        ("nosuch:1", "nosuch"),
        ("periodic:[1,0,2]", "0"),
        ("evper:[1]", "evper"),
    ],
)
def test_parse_errors_name_token(bad, token):
    with pytest.raises(WeightSpecError) as exc:
        parse_weight_spec(bad)
    assert token in str(exc.value)


@pytest.mark.parametrize(
    "spec",
    [
        "const:2",
        "const:1",
        "linear",
        "geom:0.5",
        "geom:1.5",
        "periodic:[3,0.5]",
        "evper:[2]:[0.5,4]",
        "blocks",
        "spikes",
        "bilateral:const:2:const:0.5",
    ],
)
def test_render_round_trip(spec):
    w = parse_weight_spec(spec)
    again = parse_weight_spec(w.render())
    for k in range(1, 40):
        assert w.log_magnitude(k) == again.log_magnitude(k)


# ---------------------------------------------------------------------------
# window_log


def test_window_const2():
    w = parse_weight_spec("const:2")
    assert window_log(w, 3, 5) == pytest.approx(3 * LOG2, abs=1e-12)


def test_window_linear_log20():
    w = parse_weight_spec("linear")
    assert window_log(w, 2, 3) == pytest.approx(math.log(20.0), abs=1e-12)
    # lgamma closed form, fully independent of per-step logs
    assert window_log(w, 2, 3) == pytest.approx(oracles.window_linear(2, 3), abs=1e-9)


def test_window_const1_zero():
    w = parse_weight_spec("const:1")
    for n, k in [(1, 0), (5, 3), (64, 100)]:
        assert window_log(w, n, k) == 0.0


def test_window_matches_fsum_oracle():
    for spec in ("linear", "geom:1.5", "periodic:[3,0.5]", "evper:[2]:[0.5,4]", "spikes", "blocks"):
        w = parse_weight_spec(spec)
        for n, k in [(1, 0), (3, 2), (7, 11), (20, 5)]:
            assert window_log(w, n, k) == pytest.approx(
                oracles.window_fsum(w, n, k), abs=1e-9
            )


def test_window_geom_closed_form():
    w = parse_weight_spec("geom:1.5")
    for n, k in [(2, 0), (5, 7)]:
        assert window_log(w, n, k) == pytest.approx(
            oracles.window_geom(1.5, n, k), rel=1e-12
        )


def test_window_domain_errors():
    w = parse_weight_spec("linear")
    assert window_log(w, 0, 3) == 0.0  # empty product
    with pytest.raises(DomainError):
        window_log(w, -1, 3)
    with pytest.raises(DomainError):
        window_log(w, 2, -1)


@settings(max_examples=1000, deadline=None)
@given(
    n1=st.integers(min_value=1, max_value=40),
    n2=st.integers(min_value=1, max_value=40),
    k=st.integers(min_value=0, max_value=200),
    spec=st.sampled_from(
        ["const:2", "linear", "geom:0.5", "periodic:[3,0.5]", "evper:[2]:[0.5,4]", "spikes"]
    ),
)
def test_window_additivity(n1, n2, k, spec):
    w = parse_weight_spec(spec)
    lhs = window_log(w, n1 + n2, k)
    rhs = window_log(w, n1, k) + window_log(w, n2, k + n1)
    assert lhs == pytest.approx(rhs, abs=1e-12 * (n1 + n2))


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=30),
    k=st.integers(min_value=0, max_value=100),
)
def test_window_period_shift_invariance(n, k):
    w = parse_weight_spec("periodic:[3,0.5,2]")
    assert window_log(w, n, k) == pytest.approx(window_log(w, n, k + 3), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=64),
    k=st.integers(min_value=0, max_value=64),
    spec=st.sampled_from(["linear", "periodic:[3,0.5]", "spikes"]),
)
def test_window_left_to_right_vs_tree_sum(n, k, spec):
    w = parse_weight_spec(spec)
    left = 0.0
    for v in range(k + 1, k + n + 1):
        left += w.log_magnitude(v)
    assert window_log(w, n, k) == pytest.approx(left, abs=1e-9)
    assert window_log(w, n, k) == pytest.approx(oracles.window_fsum(w, n, k), abs=1e-9)


# ---------------------------------------------------------------------------
# cumulative_sup_log


def test_cumsup_const2():
    cv = cumulative_sup_log(parse_weight_spec("const:2"), 100)
    assert cv.log_value == math.inf
    assert cv.status.value == "Exact"
    assert cv.provenance["horizon_sup"] == pytest.approx(100 * LOG2, abs=1e-9)
    assert cv.provenance["argmax_n"] == 100
    assert cv.provenance["per_period_drift"] == pytest.approx(LOG2)


def test_cumsup_const1():
    cv = cumulative_sup_log(parse_weight_spec("const:1"), 100)
    assert cv.log_value == 0.0
    assert cv.status.value == "Exact"
    assert cv.provenance["horizon_sup"] == 0.0


def test_cumsup_periodic():
    cv = cumulative_sup_log(parse_weight_spec("periodic:[3,0.5]"), 100)
    assert cv.log_value == math.inf
    assert cv.status.value == "Exact"
    assert cv.provenance["argmax_n"] == 99
    assert cv.provenance["horizon_sup"] == pytest.approx(
        50 * math.log(3) + 49 * math.log(0.5), abs=1e-9
    )
    assert cv.provenance["per_period_drift"] == pytest.approx(math.log(1.5))


def test_cumsup_bilateral_rejected():
    with pytest.raises(DomainError):
        cumulative_sup_log(parse_weight_spec("bilateral:const:2:const:0.5"), 10)
