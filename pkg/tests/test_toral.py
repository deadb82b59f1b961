import pytest

from gradeswitch.fields import GF
from gradeswitch.galg import Subspace, direct_sum, torus_line, truncated_poly, witt
from gradeswitch.laguerre import truncated_exp
from gradeswitch.switch import HypothesisError
from gradeswitch.toral import (
    RestrictedLie, Torus, compare_switch_to_toral, refine_grading,
    root_decomposition, strade_map, switch_torus)


def witt_lie(p):
    return RestrictedLie(witt(p))


def test_restricted_lie_validation():
    L = witt_lie(5)
    assert L.dim == 5
    assert L.center().dim == 0
    with pytest.raises(ValueError):
        RestrictedLie(truncated_poly(3, 3, 3))  # not a Lie bracket


def test_pth_power_rules():
    L = witt_lie(5)
    F = L.field
    e = [L.basis_vector(i) for i in range(5)]
    assert L.pth_power(e[1]) == e[1]       # e_0 is toral
    assert not any(L.pth_power(e[0]))      # e_{-1}^[p] = 0
    assert L.is_toral(e[1])
    assert not L.is_toral(e[0])
    # non-commuting support falls back to ad-recovery on a centerless algebra
    x = tuple(F.scalar(c) for c in (1, 1, 0, 0, 0))
    with pytest.raises(ValueError):
        L.pth_power(x)
    assert L.is_toral(x)  # e_0 + e_{-1} is toral: recovered through ad


def test_element_with_ad_roundtrip():
    L = witt_lie(5)
    F = L.field
    x = tuple(F.scalar(c) for c in (1, 2, 0, 3, 4))
    assert L.element_with_ad(L.ad(x)) == x
    # center obstruction: the torus line has trivial brackets
    T = RestrictedLie(torus_line(5, 5))
    with pytest.raises(ValueError):
        T.element_with_ad(T.ad(T.basis_vector(0)))


def test_torus_validation():
    L = witt_lie(5)
    e = [L.basis_vector(i) for i in range(5)]
    T = Torus(L, [e[1]])
    assert T.dim == 1
    with pytest.raises(HypothesisError):
        Torus(L, [e[0]])               # nilpotent adjoint
    with pytest.raises(HypothesisError):
        Torus(L, [e[1], e[2]])         # [e_0, e_1] != 0
    with pytest.raises(ValueError):
        Torus(L, [tuple(L.field.zero for _ in range(5))])


def test_root_of():
    L = witt_lie(5)
    F = L.field
    e = [L.basis_vector(i) for i in range(5)]
    T = Torus(L, [e[1]])
    assert T.root_of(e[0]) == (F.scalar(-1),)
    assert T.root_of(e[3]) == (F.scalar(2),)
    # a sum of eigenvectors for different roots is not a root vector
    mix = tuple(a + b for a, b in zip(e[0], e[2]))
    assert T.root_of(mix) is None


def test_root_decomposition_witt():
    L = witt_lie(5)
    F = L.field
    L1, T1, dec = root_decomposition(L, [L.basis_vector(1)])
    assert L1.field is F  # already split
    assert len(dec) == 5
    assert sorted(int(r[0]) for r, _ in dec) == [0, 1, 2, 3, 4]
    assert all(s.dim == 1 for _, s in dec)
    assert dec.find((F.zero,)).contains(L.basis_vector(1))
    # native grading of witt coincides with the e_0 root grading
    for root, space in dec:
        k = int(root[0])
        assert space.basis[0] == L.basis_vector((k + 1) % 5)


def test_switch_torus_witt5():
    L = witt_lie(5)
    F = L.field
    e0, em1 = L.basis_vector(1), L.basis_vector(0)
    L1, T1, _ = root_decomposition(L, [e0])
    Tx, beta, w = switch_torus(L1, T1, em1, 1)
    assert beta == (F.scalar(-1),)
    assert w == em1
    want = Subspace(F, 5, [tuple(a + b for a, b in zip(e0, em1))])
    assert Tx.subspace == want


def test_switch_torus_hypotheses():
    L = witt_lie(5)
    L1, T1, _ = root_decomposition(L, [L.basis_vector(1)])
    with pytest.raises(HypothesisError):
        switch_torus(L1, T1, L.basis_vector(1), 1)  # root 0


def test_compare_switch_to_toral_witt():
    for p in (5, 7):
        L = witt_lie(p)
        F = L.field
        out = compare_switch_to_toral(L, [L.basis_vector(1)],
                                      L.basis_vector(0))
        assert out.r == 1
        assert out.beta == (F.scalar(-1),)
        assert out.strade_agrees
        assert out.spaces_match
        assert out.torus_x_toral is True
        assert len(out.old_roots) == p and len(out.new_roots) == p
        # the degenerate switch is the truncated exponential of ad x
        D = L.ad(L.basis_vector(0))
        assert out.switch.switch_map == truncated_exp(p).evaluate(D)
        assert strade_map(out.switch) == out.switch.switch_map


def test_refine_grading_on_witt_sum():
    A2 = direct_sum(witt(5), witt(5))
    L2 = RestrictedLie(A2)
    F5 = L2.field
    t_a, t_b = L2.basis_vector(1), L2.basis_vector(6)
    x = L2.basis_vector(0)

    _, _, dec = root_decomposition(L2, [t_a, t_b])
    assert len(dec) == 9
    assert sorted(s.dim for _, s in dec) == [1] * 8 + [2]
    assert dec.find((F5.zero, F5.zero)).dim == 2

    ref = refine_grading(L2, [t_a, t_b], x)
    assert ref.beta == (F5.scalar(-1), F5.zero)
    assert ref.t1 == tuple(-c for c in t_a)
    assert ref.torus0_basis == (t_b,)
    assert ref.line_grading_ok
    assert ref.product_grading_ok
    assert ref.residual_fixed
    assert sorted(k for k, _ in ref.line_parts) == [0, 1, 2, 3, 4]
    assert sum(s.dim for _, s in ref.line_parts) == 10
    assert len(ref.residual_parts) == 5
    assert len(ref.product_parts) == 9


def test_refine_grading_single_witt():
    # with a one-dimensional torus T_0 is trivial: one residual part
    L = witt_lie(5)
    ref = refine_grading(L, [L.basis_vector(1)], L.basis_vector(0))
    assert ref.line_grading_ok and ref.product_grading_ok
    assert ref.residual_fixed
    assert len(ref.residual_parts) == 1
    assert ref.torus0_basis == ()
