import itertools
import random

import pytest

from gradeswitch.fields import GF, embed
from gradeswitch.galg import (
    LinearMap, direct_sum, generalized_eigenspaces, is_grading,
    truncated_poly, truncated_poly_derivation, witt)
from gradeswitch.laguerre import (
    c_coefficients_symbolic, laguerre_at, scalar_product_form, truncated_exp)
from gradeswitch.switch import (
    HypothesisError, PPolynomial, Relation, VerificationError, build_LD,
    build_g, h_polynomial, p_power_relation, semisimple_exponent, special_LD,
    switch_grading, verify_product_rule)


def test_ppolynomial_is_additive():
    F = GF(3, 2)
    g = PPolynomial.make(F, [(0, F.scalar(2)), (1, F.gen)])
    rng = random.Random(20)
    for _ in range(20):
        x, y = F.random_element(rng), F.random_element(rng)
        assert g(x + y) == g(x) + g(y)
        assert g(x * 2) == g(x) * 2  # F_p-linearity
    assert PPolynomial.make(F, [(1, F.zero)]).is_zero()


def test_ppolynomial_eval_matrix():
    F = GF(3)
    M = LinearMap(F, [[F.one, F.one], [F.zero, F.one]])
    g = PPolynomial.make(F, [(0, F.scalar(2)), (1, F.one)])
    assert g.eval_matrix(M) == M * 2 + M.p_power(1)


def test_semisimple_exponent():
    F = GF(3)
    diag = LinearMap(F, [[F.one, F.zero], [F.zero, F.scalar(2)]])
    assert semisimple_exponent(diag) == 0
    nil = LinearMap(F, [[F.zero, F.one], [F.zero, F.zero]])
    assert semisimple_exponent(nil) == 1  # N^3 = 0 has minpoly T
    A = truncated_poly(3, 9, 3)
    D = truncated_poly_derivation(A, "ddx")
    assert semisimple_exponent(D) == 2


def test_p_power_relation_degenerate():
    W = witt(5)
    D = W.left_multiplication(W.basis_vector(0))  # ad e_{-1}, nilpotent
    rel = p_power_relation(D, 1)
    assert rel.degenerate and rel.r == 1
    assert rel.verify(D)


def test_p_power_relation_requires_semisimplicity():
    W = witt(5)
    D = W.left_multiplication(W.basis_vector(0))
    with pytest.raises(HypothesisError):
        p_power_relation(D, 0)  # ad(e_{-1}) itself is not semisimple


def test_p_power_relation_companion():
    # D^2 = D + 1 over F_3 forces the length-3 relation
    F3 = GF(3)
    D = LinearMap(F3, [[F3.zero, F3.one], [F3.one, F3.one]])
    assert semisimple_exponent(D) == 0
    rel = p_power_relation(D, 1)
    assert (rel.r, rel.n) == (1, 3)
    assert rel.coeffs == (F3.scalar(-1), F3.zero)
    assert rel.verify(D)


def test_build_g_companion_case():
    # relation D^27 - D^3 = 0 -> constraint 1 + T - T^9, g of two terms
    F3 = GF(3)
    D = LinearMap(F3, [[F3.zero, F3.one], [F3.one, F3.one]])
    rel = p_power_relation(D, 1)
    big, g, lam = build_g(rel, F3, D=D)
    assert big.n == 6
    assert lam ** 9 == 1 + lam
    assert g.terms == ((1, lam.pth_root()), (2, lam))
    gD = g.eval_matrix(D.embed_to(big))
    assert gD ** 3 - gD == D.embed_to(big).p_power(1)


def test_build_g_rejects_bad_lambda():
    F3 = GF(3)
    D = LinearMap(F3, [[F3.zero, F3.one], [F3.one, F3.one]])
    rel = p_power_relation(D, 1)
    big = GF(3, 6)
    with pytest.raises(HypothesisError):
        build_g(rel, F3, lam=big.scalar(2))  # 1 + 2 - 2^9 != 0


def test_build_g_accepts_each_constraint_root():
    from gradeswitch.fields import roots_in_splitting_field
    from gradeswitch.polyring import Polynomial
    F3 = GF(3)
    D = LinearMap(F3, [[F3.zero, F3.one], [F3.one, F3.one]])
    rel = p_power_relation(D, 1)
    t = Polynomial.variable(F3)
    big, roots = roots_in_splitting_field(1 + t - t ** 9)
    for lam, _ in roots[:3]:
        _, g, lam_out = build_g(rel, F3, D=D, lam=lam)
        assert lam_out == lam
        gD = g.eval_matrix(D.embed_to(big))
        assert gD ** 3 - gD == D.embed_to(big).p_power(1)


def test_h_polynomial_telescopes():
    # h(D)^p - h(D) = D^(p^r) - D^p for any D
    F = GF(3)
    rng = random.Random(21)
    M = LinearMap(F, [[F.random_element(rng) for _ in range(4)]
                      for _ in range(4)])
    for r in (1, 2, 3):
        h = h_polynomial(F, r)
        hm = h.eval_matrix(M)
        assert hm ** 3 - hm == M.p_power(r) - M.p_power(1)
    assert h_polynomial(F, 1).is_zero()


def test_witt_switch_is_truncated_exponential():
    for p in (5, 7):
        W = witt(p)
        D = W.left_multiplication(W.basis_vector(0))
        res = switch_grading(W, D)
        assert res.field_final is GF(p)
        assert res.r == 1 and res.relation.degenerate
        assert res.switch_map == truncated_exp(p).evaluate(D)
        assert res.grading_ok
        assert res.product_rule_pairs == p * p
        assert is_grading(res.algebra, res.new_parts)


def test_tpoly_ddx_r2_branch():
    for p in (3, 5):
        A = truncated_poly(p, p * p, p)
        D = truncated_poly_derivation(A, "ddx")
        res = switch_grading(A, D)
        assert res.r == 2 and res.relation.degenerate
        assert res.g.is_zero()
        # the inner correction is the single p-power h(T) = T^p
        h = h_polynomial(res.field_final, res.r)
        assert h.terms == ((1, res.field_final.one),)
        assert res.grading_ok
        assert res.product_rule_pairs == (p * p) ** 2


def test_xddx_special_matches_general():
    for p in (3, 5):
        A = truncated_poly(p, p, p)
        D = truncated_poly_derivation(A, "xddx")
        assert D.p_power(2) == D.p_power(1)
        spec = special_LD(A, D)
        gen = switch_grading(A, D)
        assert spec.field_final is gen.field_final
        assert spec.switch_map == gen.switch_map
        assert gen.grading_ok
        f2 = spec.field_final
        gamma = spec.lam
        assert gamma ** p - gamma == f2.one
        for rho, space in spec.decomposition:
            assert space.dim == 1
            expect = laguerre_at(p, rho * gamma).evaluate(rho)
            v = space.basis[0]
            assert spec.switch_map.apply(v) == tuple(expect * c for c in v)
            stored = dict((r2.coeffs, s) for r2, s in spec.block_scalars)
            assert stored[rho.coeffs] == expect ** p


def test_xddx_relation_and_g():
    for p in (3, 5):
        A = truncated_poly(p, p, p)
        D = truncated_poly_derivation(A, "xddx")
        res = build_LD(A, D)
        assert (res.relation.r, res.relation.n) == (1, 2)
        assert res.relation.coeffs == (GF(p).scalar(-1),)
        lam = res.lam
        assert 1 + lam - lam ** p == res.field_final.zero
        gD = res.g.eval_matrix(res.derivation)
        assert gD ** p - gD == res.derivation.p_power(1)


def test_special_LD_requires_the_relation():
    # D with D^2 = D + 1 over F_3 has D^9 != D^3
    F3 = GF(3)
    A = truncated_poly(3, 3, 3).change_field(F3)
    D = LinearMap(F3, [[F3.zero, F3.one, F3.zero],
                       [F3.one, F3.one, F3.zero],
                       [F3.zero, F3.zero, F3.one]])
    assert D.p_power(2) != D.p_power(1)
    with pytest.raises(HypothesisError):
        special_LD(A, D)


def test_special_LD_on_ad_e0():
    # ad e_0 on witt satisfies D^p = D, so D^(p^2) = D^p holds
    W = witt(5)
    D = W.left_multiplication(W.basis_vector(1))
    spec = special_LD(W, D)
    gen = build_LD(W, D)
    assert spec.switch_map == gen.switch_map
    assert spec.field_final is gen.field_final


def test_scalar_law_on_blocks():
    # (restriction of L to each eigenspace)^(p^r) is the predicted scalar
    cases = []
    for p in (3, 5):
        A = truncated_poly(p, p, p)
        cases.append((p, build_LD(A, truncated_poly_derivation(A, "xddx"))))
    W = witt(5)
    cases.append((5, build_LD(W, W.left_multiplication(W.basis_vector(0)))))
    for p, res in cases:
        g2 = res.g.embed_to(res.field_final)
        r_eff = max(res.r, 1)
        for rho, space in res.decomposition:
            block = res.switch_map.restrict_to(space)
            grho = g2(rho)
            scalar = laguerre_at(p, grho ** p).evaluate(grho ** p - grho)
            assert scalar == scalar_product_form(p, grho)
            assert scalar
            I = LinearMap.identity(res.field_final, space.dim)
            assert block.p_power(r_eff) == I * scalar


def test_switch_map_invertible():
    for p in (3, 5):
        A = truncated_poly(p, p, p)
        res = build_LD(A, truncated_poly_derivation(A, "xddx"))
        assert res.switch_map.rank() == A.dim
        inv = res.switch_map.inverse()
        assert res.switch_map * inv == \
            LinearMap.identity(res.field_final, A.dim)


def test_scaled_euler_over_f9():
    # theta * (x d/dx) over F_9: nondegenerate with a_1 = -theta^(1-p)
    p = 3
    F9 = GF(3, 2)
    theta = F9.gen
    A = truncated_poly(p, p, p).change_field(F9)
    D = truncated_poly_derivation(truncated_poly(p, p, p),
                                  "xddx").embed_to(F9) * theta
    rel = p_power_relation(D, 1)
    assert (rel.r, rel.n) == (1, 2)
    assert rel.coeffs == (-(theta ** (1 - p)),)
    res = switch_grading(A, D)
    assert res.grading_ok
    assert res.product_rule_pairs == p * p


def test_mixed_r2_multiple_eigenvalues():
    # d/dx on tpoly(3,9,3) plus theta * Euler on tpoly(3,3,3), over F_9:
    # r = 2 with a nondegenerate relation and three eigenvalues
    F9 = GF(3, 2)
    theta = F9.gen
    A1 = truncated_poly(3, 9, 3)
    A2 = truncated_poly(3, 3, 3)
    A = direct_sum(A1, A2).change_field(F9)
    D1 = truncated_poly_derivation(A1, "ddx").embed_to(F9)
    D2 = truncated_poly_derivation(A2, "xddx").embed_to(F9) * theta
    n = A.dim
    rows = [[F9.zero] * n for _ in range(n)]
    for i in range(9):
        for j in range(9):
            rows[i][j] = D1.rows[i][j]
    for i in range(3):
        for j in range(3):
            rows[9 + i][9 + j] = D2.rows[i][j]
    D = LinearMap(F9, rows)

    assert semisimple_exponent(D) == 2
    rel = p_power_relation(D, 2)
    assert rel.n == 3 and rel.coeffs == (-(theta ** 2),)
    res = build_LD(A, D)
    assert res.field_final is F9
    assert sorted(s.dim for _, s in res.decomposition) == [1, 1, 10]
    assert verify_product_rule(res) == n * n


def test_user_supplied_r_validated():
    A = truncated_poly(3, 9, 3)
    D = truncated_poly_derivation(A, "ddx")
    with pytest.raises(HypothesisError):
        build_LD(A, D, r=1)  # D^3 is not semisimple
    res = build_LD(A, D, r=3)  # r beyond the minimum is legal
    assert res.r == 3


def test_non_derivation_rejected():
    W = witt(5)
    F = W.field
    rows = [list(r) for r in LinearMap.identity(F, 5).rows]
    rows[0][1] = F.one
    with pytest.raises(HypothesisError):
        switch_grading(W, LinearMap(F, rows))


def test_grading_modulus_constraint():
    # switching requires m | p*d; tpoly(3, 9, 9) with ddx has
    # d = -1 mod 9 and p*d = 24, which 9 does not divide
    A = truncated_poly(3, 9, 9)
    D = truncated_poly_derivation(A, "ddx")
    with pytest.raises(HypothesisError):
        switch_grading(A, D)


def test_product_rule_tensor_vs_product_reading():
    """The coefficient operators act factor-wise (tensor reading).  The
    alternative reading - the same rational expressions acting on the
    product component - genuinely differs once r > 1, so this pins down
    the implemented semantics on the r = 2 case with a 9-dimensional
    0-eigenspace."""
    p = 3
    A = truncated_poly(p, p * p, p)
    D = truncated_poly_derivation(A, "ddx")
    res = build_LD(A, D)
    F = res.field_final
    L = res.switch_map
    n = A.dim

    rep = c_coefficients_symbolic(p)
    s_terms = [(e[0], e[1], c) for e, c in rep.clearing_factor.terms.items()]
    N_terms = [[(e[0], e[1], c) for e, c in rep.table[0][0].terms.items()]]
    for i in range(1, p):
        N_terms.append([(e[0], e[1], c)
                        for e, c in rep.table[i][p - i].terms.items()])

    a_op = LinearMap.zero(F, n) - D.p_power(1)  # alpha_0 = g(0) - h(D)

    def op_pow(e, v):
        for _ in range(e):
            v = a_op.apply(v)
        return v

    def d_pow(v, k):
        for _ in range(k):
            v = D.apply(v)
        return v

    def scale(v, c):
        return tuple(c * x for x in v)

    def vadd(u, v):
        return tuple(a + b for a, b in zip(u, v))

    zero_vec = (F.zero,) * n
    basis = [A.basis_vector(i) for i in range(n)]
    bad_tensor = bad_product = 0
    for x, y in itertools.product(basis, basis):
        lhs = zero_vec
        for ea, eb, c in s_terms:
            t = A.product(L.apply(op_pow(ea, x)), L.apply(op_pow(eb, y)))
            lhs = vadd(lhs, scale(t, c))
        inner = zero_vec
        for i in range(p):
            xi = x if i == 0 else d_pow(x, i)
            yi = y if i == 0 else d_pow(y, p - i)
            for ea, eb, c in N_terms[i]:
                inner = vadd(inner,
                             scale(A.product(op_pow(ea, xi), op_pow(eb, yi)),
                                   c))
        if tuple(L.apply(inner)) != lhs:
            bad_tensor += 1

        # product reading: the same cleared table acting after multiplying
        inner2 = zero_vec
        for i in range(p):
            xi = x if i == 0 else d_pow(x, i)
            yi = y if i == 0 else d_pow(y, p - i)
            base = A.product(xi, yi)
            for ea, eb, c in N_terms[i]:
                inner2 = vadd(inner2, scale(op_pow(ea + eb, base), c))
        lhs2 = zero_vec
        base2 = A.product(L.apply(x), L.apply(y))
        for ea, eb, c in s_terms:
            lhs2 = vadd(lhs2, scale(op_pow(ea + eb, base2), c))
        if tuple(L.apply(inner2)) != lhs2:
            bad_product += 1

    assert bad_tensor == 0
    assert bad_product > 0  # the readings are not interchangeable


def test_relation_serialization():
    F3 = GF(3)
    D = LinearMap(F3, [[F3.zero, F3.one], [F3.one, F3.one]])
    rel = p_power_relation(D, 1)
    obj = rel.to_json()
    assert obj["r"] == 1 and obj["n"] == 3
    res = build_LD(truncated_poly(3, 3, 3),
                   truncated_poly_derivation(truncated_poly(3, 3, 3),
                                             "xddx"))
    doc = res.to_json()
    assert doc["r"] == 1
    assert len(doc["eigenvalues"]) == len(doc["block_dims"])
    assert doc["g"] is not None


def test_eigenspace_tracking_matches_general_decomposition():
    A = truncated_poly(5, 5, 5)
    D = truncated_poly_derivation(A, "xddx")
    res = build_LD(A, D)
    big, dec = generalized_eigenspaces(D.embed_to(res.field_final))
    assert big is res.field_final
    assert [v.coeffs for v, _ in dec] == \
        [v.coeffs for v, _ in res.decomposition]
