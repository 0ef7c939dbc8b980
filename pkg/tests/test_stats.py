from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from schreier_dimers.errors import DegenerateVarianceError, UnsupportedContextError
from schreier_dimers.stats import (
    INV_SQRT3,
    SQRT3,
    LabelCountPoly,
    Root3,
    StatsContext,
    closed_stats,
    label_polynomial,
    mean_variance,
    mgf_normalized,
    mixture_law,
    oracle_label_polynomial,
    qr_identities,
    rotation_ab_report,
    skewness_report,
    stats_csv,
    stats_rows,
    type_value_table,
    verify_type_values,
)

counts = st.dictionaries(st.integers(0, 8), st.integers(1, 20), min_size=1)


@given(counts)
def test_mean_variance_matches_moments(d):
    p = LabelCountPoly.from_counts(d)
    s = mean_variance(p)
    assert s.mean == p.moment(1)
    assert s.variance == p.moment(2) - p.moment(1) ** 2
    assert s.variance >= 0


def test_from_multipoly_rejects_other_labels():
    from schreier_dimers.algebra import var

    with pytest.raises(ValueError):
        LabelCountPoly.from_multipoly(var("a") * var("c"), "c")


@pytest.mark.parametrize("cover_type", ["I", "II", "III", "IV"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_hanoi_polynomial_matches_oracle(cover_type, n):
    poly = label_polynomial("hanoi", n, "c", cover_type)
    assert poly.same_coefficients(oracle_label_polynomial("hanoi", n, "c", cover_type))


@pytest.mark.parametrize("labeling", ["schreier", "rotation"])
@pytest.mark.parametrize("label", ["a", "c"])
def test_gasket_polynomial_matches_oracle(labeling, label):
    poly = label_polynomial("gasket", 3, label, labeling=labeling)
    assert poly.same_coefficients(oracle_label_polynomial("gasket", 3, label, labeling=labeling))


def test_closed_stats_context_checks():
    with pytest.raises(UnsupportedContextError):
        closed_stats(StatsContext("gasket", 3, "a", "rotation"))
    with pytest.raises(UnsupportedContextError):
        label_polynomial("grigorchuk", 3)


def test_rotation_ab_values():
    assert rotation_ab_report(2, with_oracle=False).polynomial.variance == Fraction(15, 16)
    rep = rotation_ab_report(3)
    assert rep.polynomial == rep.oracle
    assert rep.polynomial.variance == Fraction(39, 16)
    assert rep.mean_agrees
    assert not rep.variance_agrees


def test_root3():
    assert str(SQRT3) == "sqrt(3)"
    assert str(Root3(Fraction(-1, 3))) == "-1/sqrt(3)"
    assert abs(float(INV_SQRT3) - 3 ** -0.5) < 1e-15


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mixture_is_standardized(n):
    law = mixture_law(StatsContext("gasket", n))
    assert law.total_probability() == 1
    assert law.mean().coef == 0
    assert law.variance() == 1


def test_mgf_against_mixture():
    p = label_polynomial("gasket", 4, "c")
    law = mixture_law(StatsContext("gasket", 4))
    assert mpmath.almosteq(mgf_normalized(p, 1), law.mgf(1), 1e-25)


def test_mgf_degenerate():
    with pytest.raises(DegenerateVarianceError):
        mgf_normalized(LabelCountPoly.from_counts({3: 5}), 1)


def test_type_tables():
    assert set(type_value_table(3)) == {"f", "h_ab", "h_ac", "h_bc"}
    assert set(type_value_table(2, "rotation")) == {"t", "g"}
    assert verify_type_values(2).passed


def test_qr_identities():
    for n in (2, 3):
        assert qr_identities(n).matches_identities()


def test_skewness_report_fields():
    rep = skewness_report("gasket", 3, "c")
    assert rep.variance == Fraction(3, 16)
    assert mpmath.almosteq(abs(rep.skewness), 2 / mpmath.sqrt(3))


def test_stats_csv():
    rows = stats_rows("gasket", 3, "c", sources=("polynomial", "closed"))
    lines = stats_csv(rows).splitlines()
    assert lines[0] == "family,labeling,n,label,type,mean,variance,source"
    assert lines[1] == "gasket,schreier,3,c,all,9/4,3/16,polynomial"
    assert lines[2] == "gasket,schreier,3,c,all,9/4,3/16,closed"
