from fractions import Fraction

import pytest

from qsu2.comod import (STAR_FIRST, STAR_SECOND, NonScalarError, VnComodule,
                        gram_order_report, intertwiner_space_dimension,
                        pairing, schur_scalar, solve_coinvariant_gram,
                        verify_comodule_axioms, weight_covectors)
from qsu2.ncalg import STD, star, tensor_elem
from qsu2.scalars import ONE, Q, ZERO, gauss_binomial, q_pow

G, B, M = STD.G, STD.B, STD.M


def test_coaction_of_x():
    V = VnComodule(1)
    # basis index is the x-exponent: e_1 = x
    got = V.coaction([ZERO, ONE])
    expect = (tensor_elem(V.MG, [M.gen("x"), G.gen("a")])
              + tensor_elem(V.MG, [M.gen("y"), G.gen("c")]))
    assert got == expect


def test_coaction_of_y_squared():
    V = VnComodule(2)
    got = V.coaction([ONE, ZERO, ZERO])  # y^2 = e_0
    MG = V.MG
    x2 = tensor_elem(MG, [M.gen("x", 2), G.gen("b", 2)])
    xy = tensor_elem(MG, [M.gen("x") * M.gen("y"),
                          G.gen("b") * G.gen("d")]) * (ONE + q_pow(-2))
    y2 = tensor_elem(MG, [M.gen("y", 2), G.gen("d", 2)])
    assert got == x2 + xy + y2


def test_coaction_trivial():
    V = VnComodule(0)
    assert V.coaction([ONE]) == V.MG.one()


def test_comodule_axioms():
    for n in range(6):
        assert verify_comodule_axioms(n)


def test_weight_covectors_span_yn():
    for n in range(1, 6):
        vs = weight_covectors(n, B.gen("lambda", -n))
        assert len(vs) == 1
        assert vs[0][0] == ONE  # the y^n coordinate
        assert all(x.is_zero() for x in vs[0][1:])


def test_weight_covector_mismatch_empty():
    assert weight_covectors(2, B.gen("lambda", -1)) == []


def test_gram_n0_n1():
    g0 = solve_coinvariant_gram(0)
    assert g0.diag == [ONE]
    g1 = solve_coinvariant_gram(1)
    assert g1.diag == [ONE, ONE]
    assert g1.order_convention == STAR_FIRST


def test_gram_inverse_binomial():
    for n in range(5):
        g = solve_coinvariant_gram(n)
        assert g.diag == [gauss_binomial(n, i, q_pow(-2)).inverse()
                          for i in range(n + 1)]


def test_gram_positive_at_half():
    for n in range(5):
        g = solve_coinvariant_gram(n)
        assert all(d.specialize(Fraction(1, 2)) > 0 for d in g.diag)


def test_gram_coinvariance_exact():
    # re-verify the identity sum <w0|z0> w1* z1 = <w|z> 1 independently
    for n in range(5):
        g = solve_coinvariant_gram(n)
        assert g.order_convention == STAR_FIRST
        t = VnComodule(n).coaction_matrix
        for k in range(n + 1):
            for l in range(n + 1):
                total = G.zero()
                for i in range(n + 1):
                    total = total + star(t[i][k]) * t[i][l] * g.diag[i]
                expect = G.scalar(g.diag[k]) if k == l else G.zero()
                assert total == expect


def test_printed_order_not_orthonormal():
    rep = gram_order_report(1)
    assert rep[STAR_SECOND]["diagonal"]
    assert rep[STAR_SECOND]["matches_inverse_binomial"] is False
    assert rep[STAR_FIRST]["matches_inverse_binomial"] is True


def test_pairing_examples():
    g1 = solve_coinvariant_gram(1)
    V = VnComodule(1)
    MG = V.MG
    y_d = tensor_elem(MG, [M.gen("y"), G.gen("d")])
    # <y (x) d | y> = g_0 d = d
    assert pairing(y_d, [ONE, ZERO], g1) == G.gen("d")
    x_u = tensor_elem(MG, [M.gen("x"), G.gen("a")])
    # orthogonality: <x (x) a | y> = 0
    assert pairing(x_u, [ONE, ZERO], g1).is_zero()
    both = x_u + tensor_elem(MG, [M.gen("y"), G.one()])
    # <x (x) a + y (x) 1 | x> = g_1 a
    assert pairing(both, [ZERO, ONE], g1) == G.gen("a") * g1.diag[1]


def test_schur_scalar():
    assert schur_scalar([[ONE, ZERO], [ZERO, ONE]], 1) == ONE
    assert schur_scalar([[Q, ZERO], [ZERO, Q]], 1) == Q
    with pytest.raises(NonScalarError) as exc:
        schur_scalar([[ONE, ZERO], [ZERO, Q]], 1)
    assert exc.value.entry == (1, 1)


def test_simplicity_probe():
    for n in range(4):
        assert intertwiner_space_dimension(n) == 1
