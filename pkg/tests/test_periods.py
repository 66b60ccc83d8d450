
import mpmath
import pytest

from csperiod.numtheory import DiscriminantError
from csperiod.periods import character_log_gamma_sum, omega, span_values
from csperiod.precision import PrecisionContext, pi, sqrt

# mpmath, from both the log-gamma sum and the raw gamma product (70 digits)
OMEGA_GOLDEN = {
    -163: "0.04933568962439565771735565530642485091789472957579763849328185666699957",
    -148: "0.2349905526588995184681485855543185676030032466653708920825855636458519",
    -232: "0.0704935778429287679183307137537961840162709452213475494741424411485522",
    -267: "0.0759762163363547619637196686529489454365307045825272617727941590968128",
    -3: "4.143476416153977360422505978051379673567044944907443104631073652867951",
}


def test_omega_minus_4_gamma_quarter(ctx100):
    om = omega(-4, 1, ctx100)
    with mpmath.workdps(160):
        direct = mpmath.pi / 2 * mpmath.gamma(mpmath.mpf(1) / 4) / mpmath.gamma(mpmath.mpf(3) / 4)
        closed = mpmath.gamma(mpmath.mpf(1) / 4) ** 2 / (2 * mpmath.sqrt(2))
        assert abs(direct - closed) < mpmath.mpf(10) ** -150
        assert abs(om.value - closed) <= om.err
    assert mpmath.nstr(om.value, 21) == "4.64747600940096692263"


@pytest.mark.parametrize("D", sorted(OMEGA_GOLDEN))
def test_omega_golden(D, ctx100):
    om = omega(D, None, ctx100)
    with mpmath.workdps(120):
        assert abs(om.value - mpmath.mpf(OMEGA_GOLDEN[D])) <= om.err + mpmath.mpf(10) ** -68
    assert om.err <= ctx100.tolerance
    assert om.is_positive()


def test_omega_refinement():
    lo = omega(-163, 1, PrecisionContext(150))
    hi = omega(-163, 1, PrecisionContext(300))
    assert abs(lo.value - hi.value) <= lo.err + hi.err
    assert abs(lo.value - hi.value) < mpmath.mpf(10) ** -130


def test_omega_rejects_bad_discriminant(ctx100):
    with pytest.raises(DiscriminantError):
        omega(-9, 1, ctx100)


def test_omega_default_class_number(ctx100):
    a = omega(-148, None, ctx100)
    b = omega(-148, 2, ctx100)
    assert a.value == b.value


@pytest.mark.parametrize("D", [-148, -163])
def test_coprime_skip_changes_nothing(D, ctx100):
    a = character_log_gamma_sum(D, ctx100)
    b = character_log_gamma_sum(D, ctx100, coprime_only=False)
    assert abs(a.value - b.value) <= a.err + b.err


@pytest.mark.parametrize("D", [-232, -267])
def test_summation_order(D, ctx100):
    a = character_log_gamma_sum(D, ctx100)
    b = character_log_gamma_sum(D, ctx100, reverse=True)
    assert abs(a.value - b.value) <= a.err + b.err
    assert abs(a.value - b.value) < mpmath.mpf(10) ** -(ctx100.digits + 10)


def test_span_values_invariants(ctx100):
    pv = span_values(-163, 10005, ctx100)
    prod = pv.omega_over_pi * pv.pi_over_omega
    assert prod.contains(1)
    assert pv.span_entries[0].value == 1 and pv.span_entries[0].err == 0
    assert all(x.is_positive() for x in pv.span_entries)
    expected = pi(ctx100) * sqrt(10005, ctx100)
    assert abs(pv.pi_sqrt_d.value - expected.value) <= pv.pi_sqrt_d.err + expected.err


def test_rescaled_span(ctx100):
    pv = span_values(-232, 2, ctx100)
    resc = pv.rescaled_span(ctx100)
    p = pi(ctx100)
    for got, want in zip(resc, (p / sqrt(2, ctx100), pv.omega_over_pi, 1, pv.pi_over_omega)):
        diff = got - want
        assert abs(diff.value) <= diff.err


def test_span_values_rejects_d(ctx100):
    with pytest.raises(ValueError):
        span_values(-163, 0, ctx100)
