"""Space models: Köthe rows, seminorm data, structural matrix conditions."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyshift import DomainError, WeightSpecError, parse_space_spec
from hyshift.spaces import (
    check_condition_B,
    check_condition_B_sufficient,
    check_schwartz_condition,
    log_a,
)

LOG2 = math.log(2.0)


# ---------------------------------------------------------------------------
# log_a pins


def test_log_a_entire():
    sp = parse_space_spec("entire")
    assert log_a(sp, 2, 3) == pytest.approx(3 * LOG2, abs=1e-12)  # a_{2,3} = 2^3
    assert sp.index_base == 0
    assert log_a(sp, 1, 7) == 0.0  # 1^7


def test_log_a_rapid():
    sp = parse_space_spec("rapid")
    assert log_a(sp, 3, 2) == pytest.approx(3 * LOG2, abs=1e-12)  # a_{3,2} = 2^3
    assert sp.index_base == 1


def test_log_a_lp_all_zero():
    sp = parse_space_spec("lp:2")
    assert log_a(sp, 7, 11) == 0.0
    assert sp.p == 2.0 and sp.norm == "sum"


def test_log_a_weighted_lp():
    sp = parse_space_spec("lpv:2:periodic:[1,2]")
    # rows v_k^{1/p}: v = (1, 2, 1, 2, ...), p = 2
    assert log_a(sp, 1, 2) == pytest.approx(0.5 * LOG2, abs=1e-12)
    assert log_a(sp, 3, 1) == pytest.approx(0.0, abs=1e-12)


def test_log_a_domain_errors():
    sp = parse_space_spec("rapid")
    with pytest.raises(DomainError):
        log_a(sp, 0, 3)
    with pytest.raises(DomainError):
        log_a(sp, 1, 0)  # below k_min = 1 for powers of k


@pytest.mark.parametrize(
    "spec, base, bilateral",
    [
        ("lp:2", 1, False),
        ("lp:1", 1, False),
        ("c0", 1, False),
        ("entire", 0, False),
        ("rapid", 1, False),
        ("bi-lp:2", 1, True),
        ("bi-c0", 1, True),
    ],
)
def test_parse_space_basics(spec, base, bilateral):
    sp = parse_space_spec(spec)
    assert sp.index_base == base
    assert sp.bilateral is bilateral
    again = parse_space_spec(sp.render())
    assert again.kind == sp.kind and again.index_base == sp.index_base


@pytest.mark.parametrize(
    "bad, token",
    [
        ("lq:2", "lq"),
        ("lp:0.5", "0.5"),
        ("lp:x", "x"),
        ("bi-entire", "bi-entire"),
        ("bi-rapid", "bi-rapid"),
    ],
)
def test_parse_space_errors(bad, token):
    with pytest.raises(WeightSpecError) as exc:
        parse_space_spec(bad)
    assert token in str(exc.value)


@settings(max_examples=300, deadline=None)
@given(
    j=st.integers(min_value=1, max_value=7),
    k=st.integers(min_value=1, max_value=200),
    spec=st.sampled_from(["lp:2", "c0", "entire", "rapid", "lpv:2:periodic:[1,2]"]),
)
def test_rows_nondecreasing_in_j(j, k, spec):
    sp = parse_space_spec(spec)
    kk = max(k, max(sp.k_min, 0) + 1)
    assert log_a(sp, j, kk) <= log_a(sp, j + 1, kk) + 1e-12


# ---------------------------------------------------------------------------
# Köthe table files


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_kothe_values_rows_are_linear_scale(tmp_path):
    path = _write(tmp_path, "tab.txt", "# kothe p=2\nvalues; 1, 1, 1, 1\nvalues; 1, 2, 4, 8\n")
    sp = parse_space_spec(f"kothe:{path}")
    assert log_a(sp, 1, 3) == 0.0
    assert log_a(sp, 2, 3) == pytest.approx(math.log(4.0), abs=1e-12)
    assert log_a(sp, 2, 4) == pytest.approx(math.log(8.0), abs=1e-12)


def test_kothe_rejects_nonpositive_entries(tmp_path):
    path = _write(tmp_path, "bad.txt", "# kothe p=2\nvalues; 1, 0, 1\n")
    with pytest.raises(WeightSpecError) as exc:
        parse_space_spec(f"kothe:{path}")
    assert "positive" in str(exc.value)


def test_kothe_rejects_row_order_violation(tmp_path):
    path = _write(tmp_path, "mono.txt", "# kothe p=2\nvalues; 2, 2\nvalues; 1, 1\n")
    with pytest.raises(WeightSpecError):
        parse_space_spec(f"kothe:{path}")


def test_kothe_rejects_generator_value_mixing(tmp_path):
    path = _write(tmp_path, "mix.txt", "# kothe p=2\npowj\nvalues; 1, 2\n")
    with pytest.raises(WeightSpecError):
        parse_space_spec(f"kothe:{path}")


def test_kothe_powk_fractional_form(tmp_path):
    path = _write(tmp_path, "frac.txt", "# kothe p=2\npowk; 1-1/j\n")
    sp = parse_space_spec(f"kothe:{path}")
    assert log_a(sp, 2, 4) == pytest.approx(0.5 * math.log(4.0), abs=1e-12)
    assert log_a(sp, 1, 9) == 0.0  # exponent 1 - 1/1 = 0


# ---------------------------------------------------------------------------
# weight table files (lives here to reuse tmp_path plumbing)


def test_weight_table_file(tmp_path):
    from hyshift import parse_weight_spec

    path = _write(tmp_path, "w.csv", "tail=const:2\n3\n0.5\n1.5\n")
    w = parse_weight_spec(f"table:{path}")
    got = [math.exp(w.log_magnitude(k)) for k in range(1, 6)]
    assert got == pytest.approx([3.0, 0.5, 1.5, 2.0, 2.0])


def test_weight_table_requires_tail(tmp_path):
    from hyshift import parse_weight_spec

    path = _write(tmp_path, "w2.csv", "3\n0.5\n")
    with pytest.raises(WeightSpecError) as exc:
        parse_weight_spec(f"table:{path}")
    assert "tail=" in str(exc.value)


# ---------------------------------------------------------------------------
# condition (B), its sufficient form, and the strict-limit form


def test_condition_B_entire_canonical_witness():
    rep = check_condition_B(parse_space_spec("entire"), 1, 4, 4, 8, 64)
    assert rep.holds == "Holds"
    assert rep.witnesses["m_j_formula"] == "m_j = 2*j*m"
    for row in rep.witnesses["m_j"]:
        assert row["m_j"] == 2 * row["j"] * row["m"]


def test_condition_B_equal_rows_identity_witness():
    rep = check_condition_B(parse_space_spec("lp:2"), 1, 4, 4, 8, 64)
    assert rep.holds == "Holds"
    assert rep.witnesses["m_j_formula"] == "m_j = j"


def test_condition_B_fails_on_bounded_exponents(tmp_path):
    path = _write(tmp_path, "frac.txt", "# kothe p=2\npowk; 1-1/j\n")
    sp = parse_space_spec(f"kothe:{path}")
    rep = check_condition_B(sp, 1, 4, 4, 8, 256)
    assert rep.holds in ("FailsAtWitness", "UnknownAtHorizon")
    assert rep.holds == "FailsAtWitness"  # symbolic route decides


def test_condition_B_sufficient_rapid():
    rep = check_condition_B_sufficient(parse_space_spec("rapid"), 8, 64)
    assert rep.holds == "Holds"
    for row in rep.witnesses["m_j"]:
        assert row["m_j"] == 2 * row["j"]


def test_condition_B_sufficient_entire():
    rep = check_condition_B_sufficient(parse_space_spec("entire"), 8, 64)
    assert rep.holds == "Holds"
    for row in rep.witnesses["m_j"]:
        if row["j"] >= 2:
            assert row["m_j"] == row["j"] ** 2


def test_condition_B_sufficient_fails_on_bounded_exponents(tmp_path):
    path = _write(tmp_path, "frac.txt", "# kothe p=2\npowk; 1-1/j\n")
    rep = check_condition_B_sufficient(parse_space_spec(f"kothe:{path}"), 8, 256)
    assert rep.holds == "FailsAtWitness"


def test_schwartz_condition_trichotomy():
    assert check_schwartz_condition(parse_space_spec("entire"), 1, 4, 4, 8, 64).holds == "Holds"
    assert check_schwartz_condition(parse_space_spec("rapid"), 1, 4, 4, 8, 64).holds == "Holds"
    rep = check_schwartz_condition(parse_space_spec("lp:2"), 1, 4, 4, 8, 64)
    assert rep.holds == "FailsAtWitness"  # equal rows: ratio constant 1, limit 1
    rep = check_schwartz_condition(parse_space_spec("lpv:2:periodic:[1,2]"), 1, 4, 4, 8, 64)
    assert rep.holds == "FailsAtWitness"


def test_condition_reports_reproducible():
    a = check_condition_B(parse_space_spec("entire"), 1, 4, 4, 8, 64).as_dict()
    b = check_condition_B(parse_space_spec("entire"), 1, 4, 4, 8, 64).as_dict()
    assert a == b


def test_condition_report_stable_at_double_horizon():
    for spec in ("lp:2", "entire", "rapid"):
        sp = parse_space_spec(spec)
        one = check_condition_B(sp, 1, 4, 4, 8, 64)
        two = check_condition_B(sp, 1, 4, 4, 16, 128)
        assert one.holds == two.holds
