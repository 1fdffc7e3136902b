import pytest

from hgtr.field import QQ, FieldValue
from hgtr.bernoulli import bernoulli_number, bernoulli_polynomial
from hgtr.hbar import (
    HbarSeries,
    LogCombination,
    ResidualLogSymbol,
    expand_log,
    expand_power,
    log_of_series,
)


def test_bernoulli_numbers():
    assert bernoulli_number(0) == QQ(1)
    assert bernoulli_number(1) == QQ(-1, 2)
    assert bernoulli_number(2) == QQ(1, 6)
    assert bernoulli_number(4) == QQ(-1, 30)
    assert bernoulli_number(7) == 0
    assert all(bernoulli_number(2 * k + 1) == 0 for k in range(1, 10))
    assert bernoulli_number(12) == QQ(-691, 2730)


def test_bernoulli_polynomial_values():
    assert bernoulli_polynomial(1, FieldValue(0)) == FieldValue(QQ(-1, 2))
    assert bernoulli_polynomial(2, FieldValue(QQ(1, 2))) == FieldValue(QQ(-1, 12))
    assert bernoulli_polynomial(3, FieldValue(1)) == FieldValue(0)
    assert bernoulli_polynomial(4, FieldValue(QQ(1, 2))) == FieldValue(QQ(7, 240))
    # B_n(0) = B_n
    for n in range(10):
        assert bernoulli_polynomial(n, FieldValue(0)) == FieldValue(bernoulli_number(n))


def test_log_combination_zero_test():
    c = LogCombination([(QQ(2), QQ(6)), (QQ(-2), QQ(2)), (QQ(-2), QQ(3))])
    assert c.is_zero()  # 6^2 = 2^2 * 3^2
    assert not LogCombination([(QQ(1), QQ(2))]).is_zero()
    # sign tracking: 2 log(-1) = 0, log(-1) != 0
    assert LogCombination([(QQ(2), QQ(-1))]).is_zero()
    assert not LogCombination([(QQ(1), QQ(-1))]).is_zero()
    # rational exponents are cleared: (1/2) log 4 - log 2 = 0
    assert LogCombination([(QQ(1, 2), QQ(4)), (QQ(-1), QQ(2))]).is_zero()


def test_log_combination_completeness_random():
    import random

    rng = random.Random(3)
    primes = [2, 3, 5, 7]
    for _ in range(40):
        exps = {p: rng.randint(-3, 3) for p in primes}
        arg = QQ(1)
        for p, e in exps.items():
            arg *= QQ(p) ** e
        comb = LogCombination([(QQ(1), arg)] + [(QQ(-e), QQ(p)) for p, e in exps.items()])
        assert comb.is_zero()
        if arg != 1:
            assert not LogCombination([(QQ(1), arg)]).is_zero()


def test_expand_power_negative():
    s = expand_power(2, 1, -2, 5)
    assert s.coefficient(0)[0] == QQ(1, 4)
    assert s.coefficient(1)[0] == QQ(-1, 4)
    assert s.coefficient(2)[0] == QQ(3, 16)


def test_expand_log_and_inverse():
    s = expand_log(4, 1, 6)
    assert s.coefficient(1)[0] == QQ(1, 4)
    assert s.coefficient(0)[1] == LogCombination([(QQ(1), QQ(4))])
    u = HbarSeries({0: QQ(1), 1: QQ(1, 2)}, {}, 6)
    assert (u * u.inverse() - HbarSeries.constant(1, 6)).is_zero()
    assert (log_of_series(u) - expand_log(1, QQ(1, 2), 6)).is_zero()


def test_series_product_window_and_logs():
    a = HbarSeries({0: QQ(1), 1: QQ(2)}, {0: LogCombination([(QQ(1), QQ(3))])}, 5)
    b = HbarSeries({0: QQ(2)}, {}, 5)
    prod = a * b
    assert prod.coefficient(0)[0] == QQ(2)
    assert prod.coefficient(0)[1] == LogCombination([(QQ(2), QQ(3))])
    with pytest.raises(ResidualLogSymbol):
        a * a
