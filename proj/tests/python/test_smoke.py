import os
import sys

import pytest

try:
    import pstark as ps
except ImportError:
    import _pstark as ps


def test_cn_sequence():
    assert ps.cn(3, 4) == [-3, 3, 0, -9]
    assert ps.cn(5, 4) == [-5, 5, -5, 5]


def test_plan():
    plan = ps.plan(3, 24)
    assert plan["M"] == 63
    assert plan["W"] == 24
    assert plan["Wp"] == 54


def test_format_digits():
    assert ps.format_digits("5", 7, 3) == "0.500_7"
    assert ps.format_digits("10", 7, 2) == "0.31_7"
    assert ps.format_digits("10", 11, 1) == "0.A_11"


def test_fundamental_unit():
    a, b, norm = ps.fundamental_unit(37)
    # 6 + sqrt(37) = -31 + 2*omega
    assert (a, b, norm) == ("-31", "2", -1)


def test_trace_norm():
    tr, nm = ps.trace_norm(37, "-31", "2")
    assert (tr, nm) == ("12", "-1")


def test_fan():
    fan = ps.fan(37, f_rational=2)
    assert fan["L"] >= 1
    assert all(b >= 2 for b in fan["partial_quotients"])


def test_phi_small_prefix_of_table_value():
    # first digits of the published value for d=37, f=2O, p=7
    r = ps.compute_phi(37, 2, "", 7, 8)
    assert r["digits"][0] == "0.23203400_7"
    assert r["symmetric"] is True
    z = ps.zeta_padic_at_1(37, 2, "", 7, 8)
    assert z == "0.23203400_7"


def test_verify_example_1():
    data_dir = os.environ.get("PSTARK_DATA", "data/examples")
    path = os.path.join(data_dir, "ex01.json")
    if not os.path.exists(path):
        pytest.skip("example bundles not available")
    rep = ps.verify_example(path, True)
    assert rep["A"] == ["1/2", "-1/2", "-1/2"]
    assert rep["d_f"] == "2"
    assert rep["index_ZG_eta"] == "4"
    assert rep["residual_is_tiny"] is True
