import pytest

from listupdate.core import ListUpdateError
from listupdate.generators import (
    FAMILIES,
    FamilySpec,
    X,
    Y,
    gen_alpha,
    gen_beta2,
    gen_beta_l,
    gen_bitstring,
    gen_delta,
    gen_gamma,
    gen_random,
)

x, y = X, Y


def test_bitstring():
    assert gen_bitstring("0").requests == (y, y, y, x, x)
    assert gen_bitstring("011").requests == (y, y, y, x, x) + (y, x, x, x, x) * 2
    assert gen_bitstring("").n == 0
    assert gen_bitstring("0").initial_order == (x, y)


def test_bitstring_rounds():
    bits = "0110100111"
    q = gen_bitstring(bits).requests
    for r, b in enumerate(bits):
        assert q[5 * r:5 * r + 5] == ((y, y, y, x, x) if b == "0" else (y, x, x, x, x))


def test_bitstring_rejects_other_chars():
    with pytest.raises(ListUpdateError):
        gen_bitstring("012")


def test_alpha():
    assert gen_alpha(1).requests == (x, y, x, x, x, y, x, x, x)
    assert gen_alpha(0).requests == (x,)
    assert gen_alpha(3).n == 25


def test_beta2():
    assert gen_beta2(1).requests == (y, y, x, x)
    assert gen_beta2(0).n == 0
    assert gen_beta2(2).n == 8


def test_alpha_beta_concatenation():
    k = 4
    expected = (x,) + (y, x, x, x, y, x, x, x) * k + (y, y, x, x) * (2 * k)
    assert (gen_alpha(k) + gen_beta2(2 * k)).requests == expected


def test_beta_l():
    a1, a2 = 0, 1
    assert gen_beta_l(2, 1).requests == (a1, a2, a1, a1, a2, a2, a2, a1, a2, a2, a1, a1)
    assert gen_beta_l(5, 3).initial_order == (0, 1, 2, 3, 4)


def test_gamma_descending():
    assert gen_gamma(2, 1).requests == (1, 1, 1, 0, 0, 0) * 2
    assert gen_gamma(4, 1).requests[:12] == (3, 3, 3, 2, 2, 2, 1, 1, 1, 0, 0, 0)


def test_delta():
    assert gen_delta(2, 1).requests == (0, 1, 0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 1, 0, 0, 0)


def test_random():
    assert gen_random(3, 0, 1).n == 0
    assert gen_random(5, 40, 9) == gen_random(5, 40, 9)
    assert gen_random(3, 8, 7).requests == (1, 0, 1, 2, 0, 0, 2, 0)


@pytest.mark.parametrize("family,params", [
    ("bitstring", {"bits": "10110"}),
    ("alpha", {"k": 7}),
    ("beta2", {"k": 5}),
    ("beta", {"l": 6, "m": 3}),
    ("gamma", {"l": 5, "s": 4}),
    ("delta", {"l": 7, "m": 2}),
    ("random", {"l": 4, "n": 33, "seed": 2}),
])
def test_closed_form_lengths(family, params):
    spec = FamilySpec(family, params)
    assert spec.build().n == spec.expected_length()


def test_lengths_grid():
    for l in range(2, 7):
        for m in range(1, 4):
            assert gen_beta_l(l, m).n == 6 * l * m
            assert gen_gamma(l, m).n == 6 * l * m
            assert gen_delta(l, m).n == 8 * l * m


def test_families_listed():
    assert set(FAMILIES) == {"bitstring", "alpha", "beta2", "beta", "gamma", "delta", "random"}


@pytest.mark.parametrize("call", [
    lambda: gen_alpha(-1),
    lambda: gen_beta2(-1),
    lambda: gen_beta_l(1, 1),
    lambda: gen_gamma(3, 0),
    lambda: gen_delta(2, 0),
    lambda: gen_random(0, 3, 0),
    lambda: FamilySpec("zeta", {}).build(),
])
def test_bad_params(call):
    with pytest.raises(ListUpdateError):
        call()
