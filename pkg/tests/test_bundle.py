import random

import pytest

from qsu2.bundle import (Section, c_chi, cotensor_slice, glue_iso_check,
                         in_cotensor, kappa, kappa_bar, sections_space,
                         vn_left_comodule)
from qsu2.charts import chart, cover
from qsu2.ncalg import DomainError, normal_form_of_word, random_word


def test_cotensor_slice_n1():
    sl = cotensor_slice(1, 1)
    assert sl.dim == 2
    basis = {str(p) for p in sl.basis}
    assert basis == {"b", "d"}


def test_cotensor_slice_n2():
    sl = cotensor_slice(2, 2)
    assert {str(p) for p in sl.basis} == {"b^2", "b d", "d^2"}


def test_cotensor_slice_stable():
    assert cotensor_slice(1, 3).dim == 2


def test_sections_dims():
    assert len(sections_space(0, 2)) == 1
    assert len(sections_space(1, 3)) == 2
    assert len(sections_space(3, 5)) == 4


def test_section_gluing_enforced():
    cov = cover()
    with pytest.raises(DomainError):
        Section(cov.b.alg.one(), cov.d.coinv_gen, 1)


def test_kappa_on_coinvariant():
    # kappa(f (x) 1) = f gamma(chi) for coinvariant f
    for which in ("d", "b"):
        ch = chart(which)
        M = c_chi(2)
        f = ch.coinv_gen ** 2
        out = kappa(ch, [f], M)
        assert out == [f * ch.gamma_chi(2)]
        assert in_cotensor(ch, out, M)


def test_kappa_trivial_comodule():
    ch = chart("d")
    M = c_chi(0)  # chi = 1: gamma(eps part) = 1, kappa is the identity
    f = ch.alg.gen("c") * ch.alg.gen("d", -2)
    assert kappa(ch, [f], M) == [f]


def test_kappa_kappa_bar_inverse():
    rng = random.Random(1)
    for which in ("d", "b"):
        ch = chart(which)
        for M in (c_chi(2), vn_left_comodule(1)):
            for _ in range(25):
                F = [normal_form_of_word(ch.alg, random_word(ch.alg, rng, 3))
                     for _ in range(M.dim)]
                assert kappa(ch, kappa_bar(ch, F, M), M) == F
                assert kappa_bar(ch, kappa(ch, F, M), M) == F


@pytest.mark.parametrize("n", range(4))
def test_glue_iso(n):
    checks = glue_iso_check(n, max(n, 2), kappa_samples=20)
    assert all(c["status"] != "fail" for c in checks), \
        [c for c in checks if c["status"] == "fail"]


def test_dims_all_cutoffs():
    # dim(sections) = dim(cotensor) = n+1 for every cutoff in [n+1, 6]
    for n in range(5):
        for degree in range(n + 1, 7):
            assert cotensor_slice(n, degree).dim == n + 1
            assert len(sections_space(n, degree)) == n + 1
