from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motivic.errors import ModeMismatch, UnsupportedG
from motivic.exactalg import L, X, Y, EPoly, YLaurent, euler
from motivic.geometry import GeometrySpec, abelian_class, load_geometry, projective_space
from motivic.hilbert import WData, h2_series, hilb_series
from motivic.kummer import (
    RelativeTerm, chi_y_kummer_surface, chi_y_kummer_vir, chi_y_sym_ratio,
    chi_y_sym_ratio_direct, euler_kummer, hodge_property_check, kummer_class,
    kummer_pullback, kummer_vir_class, normalized_vir_class_direct,
    relative_expand, stable_hodge,
)
from motivic.partitions import count_d_partitions, divisors, solve_wk
from motivic.powerseries import power_exp

K3 = 1 + X ** 2 + Y ** 2 + 20 * L + L ** 2
SURFACES = [("point", 2), ("p1", 1), ("elliptic", 1), ("affine1", 1), ("affine2", 0), ("k3", 0)]
THREEFOLDS = [("k3", 1), ("point", 3), ("p1", 2), ("p2", 1), ("abelian:2", 1), ("affine2", 1),
              ("affine3", 0), ("p3", 0)]


def y(terms: dict) -> YLaurent:
    return YLaurent({2 * e: c for e, c in terms.items()})


def geom(name, g):
    return load_geometry(name, g)


# --- relative expansion and pullback --------------------------------------------

def test_relative_expand_examples():
    A2 = geom("point", 2)
    EX = A2.totalE
    terms = relative_expand(A2, WData.surface(), 2)
    assert terms == [RelativeTerm(L, ((2, ((1, EX),)),)), RelativeTerm(EPoly.const(1), ((1, ((2, EX),)),))]
    assert relative_expand(A2, WData.surface(), 0) == [RelativeTerm(EPoly.const(1))]
    k3e = geom("k3", 1)
    (only,) = relative_expand(k3e, WData.threefold_virtual(), 1)
    assert only == RelativeTerm(EPoly.lpow(Fraction(-3, 2)), ((1, ((1, k3e.totalE),)),))


def test_pullback_examples():
    A2 = geom("point", 2)
    EX = A2.totalE
    assert kummer_pullback([RelativeTerm(EPoly.const(1), ((2, ((1, EX),)),))], A2) == 16 * EX
    mixed = RelativeTerm(EPoly.const(1), ((1, ((1, EX),)), (2, ((1, EX),))))
    assert mixed.gcd() == 1
    assert kummer_pullback([mixed], A2) == EX * EX
    k3 = geom("k3", 0)
    assert kummer_pullback([RelativeTerm(EPoly.const(1), ((2, ((1, k3.totalE),)),))], k3) == K3


@given(st.integers(1, 4), st.integers(1, 3))
def test_gcd_scaling(k, g):
    base = geom("point", g).totalE
    term = RelativeTerm(EPoly.const(1), ((2, ((1, base),)), (4, ((1, base),))))
    scaled = term.scaled(k)
    assert scaled.gcd() == k * term.gcd()
    G = geom("point", g)
    assert kummer_pullback([scaled], G) == k ** (2 * g) * kummer_pullback([term], G)


# --- surface classes --------------------------------------------------------------

def test_kummer_k3():
    res = kummer_class(geom("point", 2), WData.surface(), 2)
    assert res.cls == K3
    assert res.euler == 24


@pytest.mark.parametrize("name,g", [s for s in SURFACES if s[1] >= 1])
def test_kummer_first_is_fiber(name, g):
    G = geom(name, g)
    assert kummer_class(G, WData.surface(), 1).cls == G.fiberE


def test_formal_g0_two_routes():
    G = GeometrySpec(0, 1 + L, 2)
    assert kummer_class(G, WData.surface(), 2).cls == power_exp(h2_series(2), 1 + L)[2]


def test_abelian_surface_euler_numbers():
    A2 = geom("point", 2)
    values = [kummer_class(A2, WData.surface(), n).euler for n in range(1, 7)]
    assert values == [n ** 3 * sum(divisors(n)) for n in range(1, 7)]
    assert values == [1, 24, 108, 448, 750, 2592]


@pytest.mark.parametrize("name,g", SURFACES)
def test_surface_checks(name, g):
    G = geom(name, g)
    hilb = hilb_series(load_geometry(name), WData.surface(), 5) if g == 0 else None
    for n in range(6):
        res = kummer_class(G, WData.surface(), n)  # NotDivisible would raise here
        if g >= 1:
            assert res.chi_y == chi_y_kummer_surface(G, n)
            if n >= 1:
                assert res.euler == euler_kummer(G, solve_wk(2, n), n)
        else:
            assert res.cls == hilb[n]


def test_surface_betti_stabilisation():
    A2 = geom("point", 2)
    classes = {n: kummer_class(A2, WData.surface(), n).cls for n in range(1, 7)}

    def betti(cls, i):
        return sum((-1) ** i * c for (p2, q2), c in cls.items() if p2 + q2 == 2 * i)

    for i in range(5):
        assert betti(classes[i + 1], i) == betti(classes[i + 2], i)


def test_euler_only_matches_full_surface_class():
    for name, g in [("point", 2), ("p1", 1)]:
        G = geom(name, g)
        for n in range(1, 5):
            assert (kummer_class(G, WData.euler_only(2, n), n).euler
                    == kummer_class(G, WData.surface(), n).euler)


def test_euler_only_threefold():
    G = geom("k3", 1)
    res = kummer_class(G, WData.euler_only(3, 4), 2)
    assert res.cls is None and res.euler == 240


# --- closed forms ----------------------------------------------------------------

def test_sym_ratio_examples():
    assert chi_y_sym_ratio(geom("point", 1), 3) == y({0: 1, 1: 1, 2: 1})
    assert chi_y_sym_ratio(geom("point", 2), 2) == y({0: 2, 1: 4, 2: 2})
    assert chi_y_sym_ratio(geom("k3", 1), 1) == y({0: 2, 1: 20, 2: 2})


@pytest.mark.parametrize("name,g", [("point", 1), ("point", 2), ("k3", 1), ("p1", 1), ("genus:2", 1)])
def test_sym_ratio_two_routes(name, g):
    G = geom(name, g)
    for n in range(1, 6):
        assert chi_y_sym_ratio(G, n) == chi_y_sym_ratio_direct(G, n)


def test_surface_closed_form_examples():
    A2 = geom("point", 2)
    assert chi_y_kummer_surface(A2, 2) == y({0: 2, 1: 20, 2: 2})
    assert chi_y_kummer_surface(A2, 3).at_one() == 108
    for n in range(1, 7):
        assert chi_y_kummer_surface(A2, n).at_one() == n ** 3 * sum(divisors(n))
    with pytest.raises(UnsupportedG):
        chi_y_kummer_surface(geom("k3", 0), 2)


def test_virtual_closed_form_examples():
    k3e = geom("k3", 1)
    assert chi_y_kummer_vir(k3e, 1) == y({-1: 2, 0: 20, 1: 2})
    assert chi_y_kummer_vir(k3e, 1).euler() == 24
    assert chi_y_kummer_vir(k3e, 2).euler() == -240


def test_euler_kummer_examples():
    assert euler_kummer(geom("point", 2), solve_wk(2, 4), 4) == 448
    assert euler_kummer(geom("k3", 1), solve_wk(3, 2), 2) == 240
    for name, g in [("k3", 1), ("p1", 1), ("point", 2)]:
        G = geom(name, g)
        assert euler_kummer(G, solve_wk(G.dim, 1), 1) == G.chi_fiber()


# --- virtual classes ---------------------------------------------------------------

def test_virtual_examples():
    k3e = geom("k3", 1)
    assert kummer_vir_class(k3e, 1).cls == L ** -1 * K3
    assert kummer_vir_class(k3e, 0).cls == EPoly.const(1)
    C3 = geom("affine3", 0)
    assert [kummer_vir_class(C3, n).euler for n in range(7)] == [(-1) ** n * count_d_partitions(3, n) for n in range(7)]
    with pytest.raises(ModeMismatch):
        kummer_vir_class(geom("k3", 0), 1)


@pytest.mark.parametrize("name,g", THREEFOLDS)
def test_virtual_suite(name, g):
    G = geom(name, g)
    w = solve_wk(3, 5)
    hilb = hilb_series(load_geometry(name), WData.threefold_virtual(), 5) if g == 0 else None
    for n in range(1, 6):
        res = kummer_vir_class(G, n)
        if g >= 1:
            assert res.chi_y == chi_y_kummer_vir(G, n)
            assert res.euler == (-1) ** (n - g) * euler_kummer(G, w, n)
        else:
            assert res.cls == hilb[n]
            assert res.euler == (-1) ** n * euler(hilb_series(load_geometry(name), WData.euler_only(3, 5), 5)[n])


@pytest.mark.parametrize("name,g", [s for s in THREEFOLDS if s[0] not in ("affine2", "affine3")])
def test_normalised_chi_y_palindromic(name, g):
    G = geom(name, g)
    for n in range(1, 5):
        res = kummer_vir_class(G, n, normalized=True)
        assert res.cls == normalized_vir_class_direct(G, n)
        assert res.chi_y.is_palindromic()


def test_hodge_checks():
    A3 = geom("point", 3)
    for n in range(4):
        report = hodge_property_check(kummer_vir_class(A3, n, normalized=True))
        assert report == {"diamond": True, "symmetry": True, "duality": True, "lefschetz": True}
    C3 = geom("affine3", 0)
    report = hodge_property_check(kummer_vir_class(C3, 2, normalized=True))
    assert report["diamond"] and report["symmetry"]
    assert report["duality"] is None and report["lefschetz"] is None


# --- stable Hodge numbers ---------------------------------------------------------------

def test_stable_hodge_examples():
    assert stable_hodge(geom("affine3", 0), 1, 1) == 0
    assert stable_hodge(geom("affine2", 1), 0, 0) == 0
    assert stable_hodge(geom("p3", 0), 0, 0) == 1
    assert stable_hodge(geom("k3", 1), 0, 0) == 1


@pytest.mark.parametrize("name,g", [("p3", 0), ("p1", 2), ("k3", 1)])
def test_stable_hodge_matches_class(name, g):
    G = geom(name, g)
    for p in range(3):
        for q in range(3):
            value = stable_hodge(G, p, q, verify=False)
            for n in (2 * max(p, q) + 1, 2 * max(p, q) + 2):
                assert kummer_vir_class(G, n, normalized=True).cls.coeff(p, q) == (-1) ** (p + q) * value
