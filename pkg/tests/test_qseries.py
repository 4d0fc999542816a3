import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_product, partitions
from singop.qseries import (
    ZZ,
    CoefficientRing,
    SeriesError,
    TruncatedSeries,
    euler_factor,
    pochhammer,
    residue_ring,
    series_dilate,
    series_div,
    series_invert,
    series_mul,
    series_pow,
    write_csv,
)


def S(coeffs, P=None, ring=ZZ):
    return TruncatedSeries(coeffs, ring, P)


def direct_euler(b, P):
    return naive_product([{0: 1, b * n: -1} for n in range(1, P // b + 1)], P)


def test_mul_examples():
    P = 10
    assert series_mul(S([1, -1], P), S([1, 1], P)).tolist() == [1, 0, -1] + [0] * 8
    geo = S([1] * (P + 1))
    assert series_mul(S([1, -1], P), geo) == TruncatedSeries.one(P)


def test_mul_rejects_mismatch():
    with pytest.raises(SeriesError):
        series_mul(S([1], 3), S([1], 4))
    with pytest.raises(SeriesError):
        series_mul(S([1], 3), S([1], 3, residue_ring(5)))


def test_invert_examples():
    P = 12
    assert series_invert(S([1, -1], P)).tolist() == [1] * (P + 1)
    with pytest.raises(SeriesError):
        series_invert(S([2, 1], 5, residue_ring(4)))
    with pytest.raises(SeriesError):
        series_invert(S([2, 1], 5))


def test_invert_euler_gives_partition_numbers():
    P = 30
    want = [sum(1 for _ in partitions(n)) for n in range(P + 1)]
    assert series_invert(euler_factor(1, P)).tolist() == want
    assert want[:7] == [1, 1, 2, 3, 5, 7, 11]


def test_pentagonal_times_inverse_is_one():
    for ring in (ZZ, residue_ring(9)):
        e = euler_factor(1, 300, ring)
        assert series_mul(e, series_invert(e)) == TruncatedSeries.one(300, ring)


def test_pow_examples():
    a = S([1, 1], 4)
    assert series_pow(a, 2).tolist() == [1, 2, 1, 0, 0]
    assert series_pow(a, 0) == TruncatedSeries.one(4)
    assert series_pow(a, -1).tolist() == [1, -1, 1, -1, 1]


def test_pow_binomial_congruence_p2_k1():
    P, p, k = 500, 2, 1
    m = p ** (k + 1)
    ring = residue_ring(m)
    lhs = series_pow(euler_factor(1, P, ring), p ** (k + 1))
    rhs = series_pow(euler_factor(p, P, ring), p**k)
    assert lhs == rhs
    # oracle: both sides from naive products over Z, then reduced
    f1 = {e: c for e, c in enumerate(direct_euler(1, P)) if c}
    f2 = {e: c for e, c in enumerate(direct_euler(p, P)) if c}
    lhs_naive = naive_product([f1] * p ** (k + 1), P)
    rhs_naive = naive_product([f2] * p**k, P)
    assert [c % m for c in lhs_naive] == lhs.tolist()
    assert [c % m for c in rhs_naive] == rhs.tolist()


def test_dilate():
    assert series_dilate(S([1, 1], 30), 24).tolist() == [1] + [0] * 23 + [1] + [0] * 6
    a = S([3, 1, 4, 1, 5], 4)
    assert series_dilate(a, 1) == a
    assert series_dilate(a, 2).tolist() == [3, 0, 1, 0, 4]


def test_euler_factor_examples():
    want = [0] * 13
    for e, c in {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}.items():
        want[e] = c
    assert euler_factor(1, 12).tolist() == want
    assert euler_factor(13, 12) == TruncatedSeries.one(12)
    want2 = [0] * 13
    for e, c in {0: 1, 2: -1, 4: -1, 10: 1}.items():
        want2[e] = c
    assert euler_factor(2, 12).tolist() == want2


@pytest.mark.parametrize("b", range(1, 7))
def test_euler_factor_matches_direct_product(b):
    assert euler_factor(b, 200).tolist() == direct_euler(b, 200)


def test_euler_factor_is_sparse():
    assert euler_factor(1, 10**4).nnz() < 2 * 82 + 2


def test_pochhammer_examples():
    assert pochhammer(1, 3, 1, 5).tolist() == [1, 1, 0, 0, 1, 1]
    assert pochhammer(7, 3, 1, 5) == TruncatedSeries.one(5)
    for b in (1, 2, 5):
        assert pochhammer(b, b, -1, 60) == euler_factor(b, 60)


def test_residue_ring_bounds():
    with pytest.raises(ValueError):
        CoefficientRing(1)
    with pytest.raises(ValueError):
        CoefficientRing(2**31)


def test_series_is_immutable():
    s = S([1, 2, 3])
    with pytest.raises(AttributeError):
        s.ring = ZZ
    with pytest.raises(ValueError):
        s.coefficients[0] = 5


def random_series(rng, P, c0=1, density=0.5, lo=-50, hi=50):
    cs = [c0] + [rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(P)]
    return S(cs, P)


@pytest.mark.parametrize("M", [3, 4, 8, 9, 144])
def test_reduction_is_a_ring_homomorphism(M):
    rng = random.Random(M)
    ring = residue_ring(M)
    for _ in range(5):
        P = rng.randint(0, 200)
        a = random_series(rng, P)
        b = random_series(rng, P, c0=-1)
        assert series_mul(a, b).to_ring(ring) == series_mul(a.to_ring(ring), b.to_ring(ring))
        assert series_invert(a).to_ring(ring) == series_invert(a.to_ring(ring))
        assert series_div(a, b).to_ring(ring) == series_div(a.to_ring(ring), b.to_ring(ring))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 60), st.integers(0, 2**32))
def test_mul_associative_commutative(P, seed):
    rng = random.Random(seed)
    a, b, c = (random_series(rng, P, c0=rng.randint(-3, 3)) for _ in range(3))
    assert series_mul(a, b) == series_mul(b, a)
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 80), st.integers(0, 2**32), st.sampled_from([None, 7, 10, 144, 2**31 - 1]))
def test_double_inverse(P, seed, M):
    rng = random.Random(seed)
    ring = ZZ if M is None else residue_ring(M)
    a = random_series(rng, P).to_ring(ring)
    assert series_invert(series_invert(a)) == a


def test_large_modulus_no_overflow():
    M = 2**31 - 1
    ring = residue_ring(M)
    rng = random.Random(1)
    a = S([1] + [rng.randint(0, M - 1) for _ in range(100)], 100)
    b = S([-1] + [rng.randint(0, M - 1) for _ in range(100)], 100)
    assert series_mul(a, b).to_ring(ring) == series_mul(a.to_ring(ring), b.to_ring(ring))
    assert series_div(a, b).to_ring(ring) == series_div(a.to_ring(ring), b.to_ring(ring))


def test_write_csv(tmp_path):
    path = tmp_path / "s.csv"
    with open(path, "w") as fh:
        write_csv(S([1, -1, 0, 5]), fh)
    assert path.read_text() == "0,1\n1,-1\n2,0\n3,5\n"
