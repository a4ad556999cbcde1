import pytest

from vhess.sampling import DEFAULT_PRIME, PRIME_1MOD4, SampleConfig, failure_bound, stream


def test_primes():
    assert DEFAULT_PRIME == 2 ** 61 - 1
    assert PRIME_1MOD4 % 4 == 1
    SampleConfig(prime=PRIME_1MOD4)


@pytest.mark.parametrize("kw", [{"prime": 15}, {"prime": 2}, {"trials": 0}, {"seed": -1}])
def test_bad_configs(kw):
    with pytest.raises(ValueError):
        SampleConfig(**kw)


def test_streams_are_reproducible_and_independent():
    a = [stream(0, "x", 3).random() for _ in range(2)]
    assert a[0] == a[1]
    assert stream(0, "x", 3).random() != stream(0, "x", 4).random()
    assert stream(0, "x", 3).random() != stream(1, "x", 3).random()


def test_failure_bound():
    lg, s = failure_bound(10, 10 ** 6, 4)
    assert lg == pytest.approx(-20)
    assert s == "1.000e-20"
    assert failure_bound(0, 101, 5) == (float("-inf"), "0")
