import math
import random

import pytest

from gradeswitch.fields import GF
from gradeswitch.laguerre import (
    CheckReport, c_coefficients, c_coefficients_symbolic,
    check_all_identities, check_identity, check_lemma_forms,
    check_lemma_product_identity, in_prime_star, laguerre_alpha_coeffs,
    laguerre_at, laguerre_symbolic, lemma_binomial, lemma_eval,
    lemma_product, scalar_product_form, strade_operator_form_check,
    truncated_exp, zero_pair_closed_form)
from gradeswitch.polyring import NonInvertibleError


def test_laguerre_at_matches_binomial_formula():
    # independent recomputation with integer binomials
    for p in (3, 5, 7):
        F = GF(p)
        n = p - 1
        for a in range(p):
            poly = laguerre_at(p, F.scalar(a))
            for k in range(n + 1):
                want = math.comb(a + n, n - k) * (-1) ** k
                want = want * pow(math.factorial(k), -1, p)
                assert poly[k] == F.scalar(want)


def test_laguerre_symbolic_specializes():
    p = 5
    F = GF(p)
    sym = laguerre_symbolic(p)
    for a in range(p):
        for x in range(p):
            v = sym.evaluate({"alpha": F.scalar(a), "X": F.scalar(x)})
            assert v == laguerre_at(p, a).evaluate(F.scalar(x))


def test_truncated_exp_is_alpha_zero():
    for p in (2, 3, 5, 7):
        F = GF(p)
        assert truncated_exp(p) == laguerre_at(p, 0)
        e = truncated_exp(p)
        for k in range(p):
            assert e[k] == F.scalar(pow(math.factorial(k), -1, p))


def test_alpha_coeffs_consistent():
    p = 5
    F = GF(p, 2)
    C = laguerre_alpha_coeffs(p, F)
    rng = random.Random(6)
    for _ in range(20):
        a = F.random_element(rng)
        poly = laguerre_at(p, a)
        for k in range(p):
            assert C[k].evaluate(a) == poly[k]


def test_identity_suite_passes():
    for p in (2, 3, 5, 7):
        reports = check_all_identities(p)
        assert len(reports) == 7
        for rep in reports:
            assert isinstance(rep, CheckReport)
            assert rep.passed, rep


def test_identity_names_are_checked_individually():
    rep = check_identity("three_term", 5)
    assert rep.passed
    with pytest.raises(ValueError):
        check_identity("nonsense", 5)


def test_lemma_eval_frozen_p3():
    # L_2^(Z^3)(Z^3 - Z) = 1 + 2Z + 2Z^2 + Z^3 over F_3
    assert [int(c) for c in lemma_eval(3).coeffs] == [1, 2, 2, 1]


def test_lemma_three_forms_agree():
    for p in (2, 3, 5, 7):
        f = lemma_eval(p)
        assert f == lemma_product(p)
        assert f == lemma_binomial(p)
        assert f.degree() == p * (p - 1) // 2
        assert check_lemma_forms(p).passed


def test_lemma_product_identity():
    for p in (2, 3, 5):
        assert check_lemma_product_identity(p).passed


def test_scalar_product_form_vanishing():
    # vanishes exactly on F_p^*
    p = 5
    F = GF(p, 2)
    zeros = [x for x in F.elements() if not scalar_product_form(p, x)]
    expect = [x for x in F.elements() if in_prime_star(x)]
    assert sorted(map(int, zeros)) == sorted(map(int, expect))
    assert len(zeros) == p - 1


def test_scalar_product_form_is_laguerre_value():
    p = 7
    F = GF(p, 2)
    rng = random.Random(7)
    for _ in range(25):
        x = F.random_element(rng)
        lhs = laguerre_at(p, x ** p).evaluate(x ** p - x)
        assert lhs == scalar_product_form(p, x)


def test_zero_pair_closed_form_values():
    assert [int(c) for c in zero_pair_closed_form(5)] == [1, 4, 3, 3, 4]
    F = GF(3)
    assert zero_pair_closed_form(3) == (F.one, F.scalar(2), F.scalar(2))


def test_c_table_zero_pair():
    for p in (2, 3, 5, 7):
        F = GF(p)
        tab = c_coefficients(p, F.zero, F.zero)
        assert tab.values() == zero_pair_closed_form(p)
        assert tab.vanishing_violations() == []


def test_c_table_random_admissible():
    p = 3
    F = GF(p, 2)
    rng = random.Random(8)
    done = 0
    while done < 20:
        a, b = F.random_element(rng), F.random_element(rng)
        if in_prime_star(a + b):
            continue
        tab = c_coefficients(p, a, b)
        assert tab.vanishing_violations() == []
        assert len(tab.values()) == p
        assert tab.c0 == tab.table[0][0]
        done += 1


def test_c_table_rejects_excluded_locus():
    F = GF(3)
    with pytest.raises(NonInvertibleError):
        c_coefficients(3, F.one, F.zero)  # a + b = 1 lies in F_3^*
    # integers are accepted and coerced
    tab = c_coefficients(3, 0, 0)
    assert tab.values() == zero_pair_closed_form(3)


def test_c_table_symmetric_in_arguments():
    p = 5
    F = GF(p, 2)
    rng = random.Random(9)
    done = 0
    while done < 8:
        a, b = F.random_element(rng), F.random_element(rng)
        if in_prime_star(a + b):
            continue
        t1 = c_coefficients(p, a, b)
        t2 = c_coefficients(p, b, a)
        assert t1.c0 == t2.c0
        for i in range(1, p):
            assert t1.c(i) == t2.table[p - i][i]
        done += 1


def test_symbolic_tables():
    for p in (2, 3):
        rep = c_coefficients_symbolic(p)
        assert rep.passed
        for i in range(p):
            for j in range(p):
                if (i + j) % p:
                    assert rep.table[i][j].is_zero()


def test_strade_operator_form():
    for p in (2, 3, 5, 7):
        assert strade_operator_form_check(p).passed
