import random

import pytest

from gradeswitch.fields import (
    GF, FqElement, artin_schreier_root, embed, embedding, is_prime,
    minimal_polynomial, roots_in_splitting_field)
from gradeswitch.polyring import Polynomial


def test_is_prime():
    assert [m for m in range(2, 30) if is_prime(m)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(0)


def test_prime_field_arithmetic():
    F = GF(7)
    a, b = F.scalar(3), F.scalar(5)
    assert a + b == F.scalar(1)
    assert a - b == F.scalar(5)
    assert a * b == F.scalar(1)
    assert -a == F.scalar(4)
    assert a / b == a * b.inverse()
    for x in F.elements():
        if x:
            assert x * x.inverse() == F.one
            assert x ** 6 == F.one  # Fermat


def test_gf_rejects_bad_arguments():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(3, 0)
    with pytest.raises(ValueError):
        GF(3, 2, (1, 1, 1))  # T^2 + T + 1 has the root 1 over F_3


def test_canonical_moduli():
    # smallest-encoding irreducible polynomials, frozen
    assert GF(2, 2).modulus == (1, 1, 1)
    assert GF(2, 3).modulus == (1, 1, 0, 1)
    assert GF(3, 2).modulus == (1, 0, 1)
    assert GF(3, 3).modulus == (1, 2, 0, 1)
    assert GF(5, 2).modulus == (2, 0, 1)
    assert GF(5, 3).modulus == (1, 1, 0, 1)


def test_field_objects_are_cached():
    assert GF(3, 2) is GF(3, 2)
    assert GF(3, 2) is not GF(3, 3)


def test_extension_arithmetic_f27():
    F = GF(3, 3)
    g = F.gen
    assert g ** 3 == g + 2  # T^3 + 2T + 1 = 0
    assert len(list(F.elements())) == 27
    for x in [F.from_int(k) for k in (1, 5, 11, 26)]:
        assert x * x.inverse() == F.one
        assert x ** 26 == F.one
    assert sum(1 for x in F.elements() if x.frobenius() == x) == 3


def test_from_int_roundtrip():
    F = GF(5, 2)
    for enc in range(25):
        assert int(F.from_int(enc)) == enc
    assert F.from_int(7).coeffs == (2, 1)


def test_frobenius_and_pth_root():
    F = GF(3, 3)
    rng = random.Random(1)
    for _ in range(40):
        x = F.random_element(rng)
        y = F.random_element(rng)
        assert (x + y).frobenius() == x.frobenius() + y.frobenius()
        assert (x * y).frobenius() == x.frobenius() * y.frobenius()
        assert x.frobenius() == x ** 3
        assert x.pth_root().frobenius() == x
        assert x.frobenius(3) == x


def test_scalar_coercion_in_arithmetic():
    F = GF(7)
    x = F.scalar(3)
    assert x + 4 == F.zero
    assert 4 + x == F.zero
    assert 2 - x == F.scalar(6)
    assert x * 5 == F.one
    assert 1 / x == x.inverse()
    assert x / 3 == F.one


def test_cross_field_operations_rejected():
    with pytest.raises(ValueError):
        GF(3).one + GF(5).one
    with pytest.raises(ValueError):
        GF(3, 2).one * GF(3, 3).one


def test_artin_schreier_prime_field():
    # y^2 + y = 1 has no root in F_2; the quadratic extension supplies one
    F2 = GF(2)
    fld, r = artin_schreier_root(F2, F2.one)
    assert fld is GF(2, 2)
    assert r == fld.gen
    assert r * r + r == embed(F2.one, fld)
    # y^3 - y = 1 over F_3 needs the cubic extension
    F3 = GF(3)
    fld3, r3 = artin_schreier_root(F3, F3.one)
    assert fld3 is GF(3, 3)
    assert r3.coeffs == (0, 2, 0)
    assert r3 ** 3 - r3 == embed(F3.one, fld3)
    # c = 0 is solved by 0 without leaving the field
    fld0, r0 = artin_schreier_root(F3, F3.zero)
    assert fld0 is F3 and not r0


def test_artin_schreier_smallest_root():
    # all p roots differ by F_p; the canonical pick has smallest encoding
    F = GF(3, 2)
    for enc in range(9):
        c = F.from_int(enc)
        fld, r = artin_schreier_root(F, c)
        roots = [embed(r, fld) + k for k in range(3)]
        assert min(int(x) for x in roots) == int(r)


def test_embedding_is_canonical_homomorphism():
    F3, F27 = GF(3), GF(3, 3)
    emb = embedding(F3, F27)
    assert emb(F3.scalar(2)) == F27.scalar(2)
    rng = random.Random(2)
    F9, F729 = GF(3, 2), GF(3, 6)
    em2 = embedding(F9, F729)
    for _ in range(30):
        x, y = F9.random_element(rng), F9.random_element(rng)
        assert em2(x + y) == em2(x) + em2(y)
        assert em2(x * y) == em2(x) * em2(y)
    # the generator goes to the smallest root of its modulus
    img = em2(F9.gen)
    assert img ** 2 + 1 == F729.zero
    others = [x for x in (img, -img)]
    assert int(img) == min(int(x) for x in others)


def test_embedding_requires_divisibility():
    with pytest.raises(ValueError):
        embedding(GF(3, 2), GF(3, 3))


def test_minimal_polynomial_of_element():
    F = GF(3, 3)
    g = F.gen
    mp = minimal_polynomial(g)
    assert mp.coeffs == (GF(3).one, GF(3).scalar(2), GF(3).zero, GF(3).one)
    assert minimal_polynomial(F.scalar(2)).degree() == 1


def test_roots_in_splitting_field_cubic():
    F3 = GF(3)
    f = Polynomial(F3, [-F3.one, -F3.one, F3.zero, F3.one])  # T^3 - T - 1
    big, roots = roots_in_splitting_field(f)
    assert big is GF(3, 3)
    assert [list(x.coeffs) for x, _ in roots] == \
        [[0, 2, 0], [1, 2, 0], [2, 2, 0]]
    assert all(m == 1 for _, m in roots)
    for x, _ in roots:
        assert x ** 3 - x - 1 == big.zero


def test_roots_in_splitting_field_p_polynomial():
    # 1 + T - T^9 over F_3: nine simple roots in GF(3^6)
    F3 = GF(3)
    coeffs = [F3.one, F3.one] + [F3.zero] * 7 + [-F3.one]
    big, roots = roots_in_splitting_field(Polynomial(F3, coeffs))
    assert big is GF(3, 6)
    assert len(roots) == 9
    assert all(m == 1 for _, m in roots)
    assert list(roots[0][0].coeffs) == [0, 2, 2, 1, 0, 0]
    # returned in increasing encoding, so [0] is the canonical choice
    encs = [int(x) for x, _ in roots]
    assert encs == sorted(encs)


def test_roots_multiplicity():
    F = GF(5)
    t = Polynomial.variable(F, "T")
    f = (t - 2) ** 3 * (t - 1)
    big, roots = roots_in_splitting_field(f)
    assert big is F
    assert sorted((int(x), m) for x, m in roots) == [(1, 1), (2, 3)]


def test_element_hash_and_pickle_roundtrip():
    import pickle
    F = GF(3, 2)
    x = F.from_int(5)
    y = pickle.loads(pickle.dumps(x))
    assert y == x and y.field is x.field
    assert len({F.from_int(5), x}) == 1
