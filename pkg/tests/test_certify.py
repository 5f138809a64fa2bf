from fractions import Fraction

import pytest

from syncbound.automaton import Automaton, is_synchronizing
from syncbound.certify import (
    CUBIC_COEFFICIENT,
    bound_table,
    certify,
    corollary6_value,
    pin_frankl_budget,
)
from syncbound.corpus import cerny, random_automaton
from syncbound.errors import NotSynchronizingError
from syncbound.spectrum import profile_from_lambdas, rank_profile


def test_certify_c3(c3):
    rep = certify(c3)
    assert rep.rt_exact == 4 and rep.cerny_bound == 4
    assert rep.rt_exact == rep.cerny_bound
    assert rep.ok


def test_certify_c8():
    assert certify(cerny(8)).rt_exact == 49


def test_certify_without_exact(c3):
    rep = certify(c3, with_exact=False)
    assert rep.rt_exact is None and rep.rt_constructed == 4 and rep.ok


def test_certify_rejects_non_synchronizing():
    with pytest.raises(NotSynchronizingError):
        certify(Automaton([(1,), (0,)]))


def test_certify_random_n10():
    seed = 0
    done = 0
    while done < 10:
        A = random_automaton(10, 2, seed)
        seed += 1
        if not is_synchronizing(A):
            continue
        rep = certify(A)
        assert rep.rt_constructed <= rep.corollary6_value
        assert rep.ok
        done += 1


def test_pin_frankl_closed_form():
    for n in range(2, 60):
        assert pin_frankl_budget(n) == (n**3 - n) // 6
    assert pin_frankl_budget(100) == 166_650


def test_corollary6_formula_by_hand():
    # n = 6, lam = (0,1,2,4,7,20): gaps 1,1,2,3,13 -> rho = 4, s = (3, 1, 0)
    p = profile_from_lambdas([0, 1, 2, 4, 7, 20])
    assert p.rho == 4 and p.s == (3, 1, 0)
    # r = 4 exceeds n // 2 = 3, so the middle sum is empty
    assert corollary6_value(p) == Fraction(7 * 216, 48) + 3 * 36
    # n = 8, lam = (0,1,2,3,5,6,30,31): gaps 1,1,1,2,1,24 -> rho = 5, s = (5,0,0,0)
    q = profile_from_lambdas([0, 1, 2, 3, 5, 6, 30, 31])
    assert q.rho == 5 and q.s == (5, 0, 0, 0)
    assert corollary6_value(q) == Fraction(7 * 512, 48) + 3 * 64
    r = profile_from_lambdas([0, 1, 12, 13, 14, 15, 16, 17])
    # gaps 1, 11 > 8 -> rho = 1, s_1 = 1; sum over r = 1..4 of min(r^2/4, 1)
    assert r.rho == 1 and r.s == (1, 0, 0, 0)
    middle = Fraction(1, 4) + 1 + 1 + 1
    assert corollary6_value(r) == Fraction(7 * 512, 48) + 2 * middle + 3 * 64


def test_corollary6_depends_only_on_lambdas(c3):
    p = rank_profile(c3)
    q = profile_from_lambdas(p.lam)
    assert corollary6_value(p) == corollary6_value(q)


def test_bound_table():
    rows = bound_table([2, 100])
    assert rows[0]["cerny"] == 1
    assert rows[1]["pin_frankl"] == 166_650
    coef = rows[-1]
    assert coef["coefficient"] == Fraction(7, 48) + Fraction(31250, 1597536)
    assert coef["coefficient_decimal"] == "0.165395"
    assert abs(float(CUBIC_COEFFICIENT) - 0.165395) <= 5e-7
    with pytest.raises(ValueError):
        bound_table([1])
