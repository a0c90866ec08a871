import numpy as np
import pytest

from sextic_pib.quadfield import QuadField, QuadInt, fundamental_unit, is_squarefree, unit_pow


def exhaustive_unit(m, box=1000):
    """Smallest unit > 1 among a + b*omega with |a|, |b| <= box, or None."""
    q = QuadField(m, eta=QuadInt(1, 0))
    a = np.arange(-box, box + 1, dtype=np.int64)
    b = np.arange(1, box + 1, dtype=np.int64)
    A, B = np.meshgrid(a, b, indexing="ij")
    if q.one_mod_four:
        N = A * A + A * B - B * B * ((m - 1) // 4)
        w = (1 + np.sqrt(m)) / 2
    else:
        N = A * A - m * B * B
        w = np.sqrt(m)
    val = A + B * w
    mask = (np.abs(N) == 1) & (val > 1 + 1e-9)
    if not mask.any():
        return None
    i = np.argmin(np.where(mask, val, np.inf))
    return QuadInt(int(A.flat[i]), int(B.flat[i]))


@pytest.mark.parametrize("m", [m for m in range(2, 51) if is_squarefree(m)])
def test_fundamental_unit_against_exhaustive_search(m):
    eta = fundamental_unit(m)
    q = QuadField(m)
    assert abs(q.norm(eta)) == 1
    brute = exhaustive_unit(m)
    if brute is None:
        # m = 31, 43, 46: fundamental unit lies outside the box
        assert max(abs(eta.a), abs(eta.b)) > 1000
    else:
        assert eta == brute


def test_known_units():
    assert fundamental_unit(2) == QuadInt(1, 1)
    assert fundamental_unit(5) == QuadInt(0, 1)
    assert fundamental_unit(3) == QuadInt(2, 1)
    assert fundamental_unit(94) == QuadInt(2143295, 221064)


def test_arithmetic_m2():
    q = QuadField(2)
    eta = q.eta
    assert q.mul(eta, q.conj(eta)) == QuadInt(-1, 0)
    assert q.pow(eta, 2) == QuadInt(3, 2)
    assert q.pow(eta, -2) == QuadInt(3, -2)
    assert q.mul(q.pow(eta, 7), q.pow(eta, -7)) == QuadInt(1, 0)
    assert unit_pow((1, 1), 3, 2) == QuadInt(7, 5)


def test_arithmetic_one_mod_four():
    q = QuadField(13)
    u = q.eta
    assert abs(q.norm(u)) == 1
    assert q.mul(u, q.inverse_unit(u)) == QuadInt(1, 0)
    assert q.trace(QuadInt(0, 1)) == 1


def test_rejects_bad_m():
    for m in (1, 4, 12, 0, -3):
        with pytest.raises(ValueError):
            QuadField(m)
    with pytest.raises(ValueError):
        QuadField(2, eta=QuadInt(2, 1))
