import random

import pytest

from gradeswitch.fields import GF
from gradeswitch.polyring import (
    BiTruncSeries, MultiPoly, NonInvertibleError, Polynomial, QuotientRing,
    TruncSeries, _quotient_inverse_linear, _quotient_inverse_ppower,
    _solve_field_linear, poly_compose, quotient_inverse, quotient_mul)


def rand_poly(field, deg, rng):
    return Polynomial(field, [field.random_element(rng)
                              for _ in range(deg + 1)])


def test_polynomial_basic_ops():
    F = GF(5)
    t = Polynomial.variable(F)
    f = t ** 2 + 3 * t + 1
    g = t + 2
    assert (f * g).degree() == 3
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree() < g.degree()
    assert f.evaluate(F.scalar(2)) == F.scalar(4 + 6 + 1)
    assert f[2] == F.one and f[0] == F.one and f[7] == F.zero


def test_polynomial_division_properties():
    F = GF(7)
    rng = random.Random(3)
    for _ in range(60):
        f = rand_poly(F, rng.randrange(6), rng)
        g = rand_poly(F, rng.randrange(4), rng)
        if g.is_zero():
            continue
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.is_zero() or r.degree() < g.degree()
        assert (f * g) % g == Polynomial(F, [])


def test_polynomial_gcd_and_squarefree():
    F = GF(3)
    t = Polynomial.variable(F)
    f = (t + 1) ** 2 * (t + 2)
    g = (t + 1) * t
    d = f.gcd(g)
    assert d == (t + 1).monic()
    assert not f.squarefree_is()
    assert ((t + 1) * (t + 2) * t).squarefree_is()
    # T^p - T - 1 is squarefree even though its derivative is -1
    assert (t ** 3 - t - 1).squarefree_is()


def test_polynomial_pow_mod_and_compose():
    F = GF(5)
    t = Polynomial.variable(F)
    m = t ** 3 + t + 1
    f = t + 2
    assert f.pow_mod(26, m) == (f ** 26) % m
    fg = poly_compose(t ** 2 + 1, t + 3)
    assert fg == (t + 3) ** 2 + 1


def test_polynomial_derivative():
    F = GF(5)
    t = Polynomial.variable(F)
    f = t ** 5 + 2 * t ** 3 + t
    assert f.derivative() == 6 * t ** 2 + 1  # the T^5 term dies mod 5


def test_multipoly_substitute_and_evaluate():
    F = GF(7)
    x = MultiPoly.variable(F, ("x", "y"), "x")
    y = MultiPoly.variable(F, ("x", "y"), "y")
    f = x ** 2 * y + 3 * y + 1
    assert f.evaluate({"x": F.scalar(2), "y": F.scalar(3)}) == \
        F.scalar(4 * 3 + 9 + 1)
    g = f.substitute({"x": y, "y": x})
    assert g == y ** 2 * x + 3 * x + 1
    assert f.degree_in("x") == 2 and f.degree_in("y") == 1
    uni = (x ** 2 + x).to_polynomial("x")
    assert uni == Polynomial.variable(F, "x") ** 2 + Polynomial.variable(F, "x")


def test_trunc_series():
    F = GF(5)
    s = TruncSeries.shift(F, 4)  # U with U^4 = 0
    assert not s ** 4
    u = TruncSeries.constant(F, 4, F.one) + s
    inv = u.inverse()
    assert u * inv == TruncSeries.constant(F, 4, F.one)
    # geometric series: 1 - U + U^2 - U^3
    assert inv.coeffs == (F.one, -F.one, F.one, -F.one)
    with pytest.raises(NonInvertibleError):
        s.inverse()


def test_bitrunc_series_arithmetic():
    F = GF(3)
    u = BiTruncSeries.shift_u(F, 3, 2)
    v = BiTruncSeries.shift_v(F, 3, 2)
    assert not u ** 3
    assert not v ** 2
    w = (1 + u) * (1 + v)
    assert w.coeffs == ((F.one, F.one), (F.one, F.one), (F.zero, F.zero))
    assert (u + v) ** 2 == u ** 2 + 2 * u * v  # v^2 truncates away
    assert u * v == v * u


def test_bitrunc_series_inverse():
    F = GF(5)
    rng = random.Random(4)
    for _ in range(25):
        ua, ub = rng.randrange(1, 4), rng.randrange(1, 4)
        coeffs = [[F.random_element(rng) for _ in range(ub)]
                  for _ in range(ua)]
        s = BiTruncSeries(F, ua, ub, coeffs)
        if s.is_unit():
            inv = s.inverse()
            assert s * inv == BiTruncSeries.constant(F, ua, ub, F.one)
        else:
            with pytest.raises(NonInvertibleError):
                s.inverse()


def test_bitrunc_degenerate_orders():
    # order-1 truncation collapses the variable to zero
    F = GF(3)
    u = BiTruncSeries.shift_u(F, 1, 2)
    assert not u
    c = BiTruncSeries.constant(F, 1, 1, F.scalar(2))
    assert c * c == BiTruncSeries.constant(F, 1, 1, F.one)


def test_solve_field_linear():
    F = GF(5)
    s = F.scalar
    rows = [[s(1), s(2)], [s(3), s(4)]]
    sol = _solve_field_linear(rows, [s(1), s(2)], F)
    assert sol is not None
    assert [sol[0] + 2 * sol[1], 3 * sol[0] + 4 * sol[1]] == [s(1), s(2)]
    # inconsistent system
    rows = [[s(1), s(1)], [s(2), s(2)]]
    assert _solve_field_linear(rows, [s(1), s(3)], F) is None
    # underdetermined but consistent
    sol = _solve_field_linear([[s(1), s(1)]], [s(3)], F)
    assert sol is not None and sol[0] + sol[1] == s(3)


def quotient_ring_for(p, a, b):
    return QuotientRing(p, a ** p - a, b ** p - b)


def test_quotient_ring_reduction():
    # X^p folds back to the scalar a^p - a
    F = GF(3, 2)
    a, b = F.from_int(3), F.from_int(5)
    ring = quotient_ring_for(3, a, b)
    x = ring.monomial(1, 0, F.one)
    y = ring.monomial(0, 1, F.one)
    assert x ** 3 == ring.element(
        [[a ** 3 - a, F.zero, F.zero], [F.zero] * 3, [F.zero] * 3])
    assert (x * y) ** 3 == ring.one() * ((a ** 3 - a) * (b ** 3 - b))
    assert x * y == y * x


def test_quotient_inverse_dual_routes():
    """The linear-solve inverse and the p-power closed form must agree on
    every invertible element and reject the same non-invertible ones."""
    p = 3
    F = GF(3, 2)
    rng = random.Random(5)
    a, b = F.from_int(4), F.from_int(7)
    ring = quotient_ring_for(p, a, b)
    seen_invertible = seen_singular = 0
    for _ in range(40):
        entries = [[F.random_element(rng) for _ in range(p)]
                   for _ in range(p)]
        u = ring.element(entries)
        try:
            inv1 = _quotient_inverse_linear(u)
        except NonInvertibleError:
            seen_singular += 1
            with pytest.raises(NonInvertibleError):
                _quotient_inverse_ppower(u)
            continue
        seen_invertible += 1
        inv2 = _quotient_inverse_ppower(u)
        assert inv1 == inv2
        assert quotient_mul(u, inv1) == ring.one()
    assert seen_invertible > 0 and seen_singular > 0


def test_quotient_inverse_dispatch():
    F = GF(3)
    ring = quotient_ring_for(3, F.one, F.one)  # a = b = 1: X^3 = 0, Y^3 = 0
    u = ring.one() + ring.monomial(1, 0, F.one)
    inv = quotient_inverse(u)
    assert quotient_mul(u, inv) == ring.one()
    with pytest.raises(NonInvertibleError):
        quotient_inverse(ring.monomial(1, 0, F.one))  # nilpotent


def test_quotient_ring_with_series_entries():
    # the entry ring used by the factor-wise coefficient tables
    F = GF(3)
    one = BiTruncSeries.constant(F, 2, 2, F.one)
    du = BiTruncSeries.shift_u(F, 2, 2)
    alpha = one + du          # unit with nilpotent part
    ring = QuotientRing(3, alpha ** 3 - alpha, one * 0)
    x = ring.monomial(1, 0, one)
    assert x ** 3 == ring.one() * (alpha ** 3 - alpha)
    u = ring.one() + x
    inv = _quotient_inverse_ppower(u)
    assert u * inv == ring.one()
