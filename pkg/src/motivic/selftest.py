"""Quick invariant suite behind ``motivic selftest``."""
from __future__ import annotations

import random
from typing import Callable

from .exactalg import EPoly, L, X, Y, exact_div
from .geometry import load_geometry, projective_space
from .hilbert import WData, h2_series, hilb_series
from .kummer import (
    chi_y_kummer_surface,
    chi_y_kummer_vir,
    euler_kummer,
    hodge_property_check,
    kummer_class,
    kummer_vir_class,
    stable_hodge,
    verify_euler_identity,
)
from .partitions import count_d_partitions, partitions_of, solve_wk
from .powerseries import Series, pleth_exp, pleth_log, power_exp, sym_class, zeta_series
from .torsion import torsion_kummer_chi_y, torsion_kummer_chi_y_expanded


def _random_epoly(rng: random.Random, terms: int = 3, span: int = 2) -> EPoly:
    return EPoly({(rng.randint(-span, span), rng.randint(-span, span)): rng.randint(-3, 3)
                  for _ in range(terms)})


def _ring_laws() -> bool:
    rng = random.Random(7)
    for _ in range(20):
        a, b, c = (_random_epoly(rng) for _ in range(3))
        if (a + b) * c != a * c + b * c or (a * b) * c != a * (b * c):
            return False
        if b and exact_div(a * b, b) != a:
            return False
    return True


def _macdonald_two_routes() -> bool:
    rng = random.Random(11)
    for _ in range(5):
        c = _random_epoly(rng)
        z = zeta_series(c, 4)
        if any(z[n] != sym_class(c, n) for n in range(5)):
            return False
    return True


def _power_structure() -> bool:
    rng = random.Random(3)
    A = Series([EPoly.const(1)] + [_random_epoly(rng, 2, 1) for _ in range(4)])
    M, M2 = _random_epoly(rng, 2, 1), _random_epoly(rng, 2, 1)
    return (power_exp(A, M) == power_exp(A, M, "zeta")
            and power_exp(A, M + M2) == power_exp(A, M) * power_exp(A, M2)
            and power_exp(power_exp(A, M), M2) == power_exp(A, M * M2)
            and pleth_exp(pleth_log(A)) == A)


def _kummer_k3() -> bool:
    A2 = load_geometry("point", 2)
    k3 = 1 + X ** 2 + Y ** 2 + 20 * L + L ** 2
    euler = [kummer_class(A2, WData.surface(), n).euler for n in range(1, 5)]
    return kummer_class(A2, WData.surface(), 2).cls == k3 and euler == [1, 24, 108, 448]


def _surface_closed_form() -> bool:
    geom = load_geometry("p1", 1)
    return all(chi_y_kummer_surface(geom, n) == kummer_class(geom, WData.surface(), n).chi_y
               for n in range(1, 5))


def _virtual_closed_form() -> bool:
    geom = load_geometry("k3", 1)
    return all(chi_y_kummer_vir(geom, n) == kummer_vir_class(geom, n).chi_y for n in range(1, 4))


def _signed_counts() -> bool:
    C3 = load_geometry("affine3")
    return all(kummer_vir_class(C3, n).euler == (-1) ** n * count_d_partitions(3, n) for n in range(5))


def _g0_hilbert() -> bool:
    geom = load_geometry("k3")
    series = hilb_series(geom, WData.surface(), 3)
    return all(kummer_class(geom, WData.surface(), n).cls == series[n] for n in range(4))


def _euler_identity() -> bool:
    geom = load_geometry("k3", 1)
    return verify_euler_identity(geom, solve_wk(3, 5), [count_d_partitions(3, k) for k in range(6)], 5)


def _hodge_properties() -> bool:
    A3 = load_geometry("point", 3)
    for n in range(1, 3):
        report = hodge_property_check(kummer_vir_class(A3, n, normalized=True))
        if not all(report.values()):
            return False
    return True


def _stable() -> bool:
    return stable_hodge(load_geometry("p2", 1), 1, 1) == 3 and stable_hodge(load_geometry("affine3"), 1, 1) == 0


def _torsion() -> bool:
    cases = [("point", 1, "curve"), ("point", 2, "surface"), ("k3", 1, "threefold")]
    for fiber, g, kind in cases:
        geom = load_geometry(fiber, g)
        for n in range(1, 4):
            if torsion_kummer_chi_y(geom, n, kind) != torsion_kummer_chi_y_expanded(geom, n, kind):
                return False
    return True


def _partitions() -> bool:
    return (all(len(partitions_of(n)) == count_d_partitions(2, n) for n in range(8))
            and solve_wk(3, 5) == (1, 2, 3, 4, 5)
            and h2_series(5)[4] == 1 + L + 2 * L ** 2 + L ** 3
            and sym_class(projective_space(1), 3) == projective_space(3)
            and euler_kummer(load_geometry("k3", 1), solve_wk(3, 4), 4) == 2016)


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("ring laws and exact division", _ring_laws),
    ("Macdonald sum equals zeta product", _macdonald_two_routes),
    ("power structure: routes, additivity, composition", _power_structure),
    ("Kummer K3 and abelian-surface Euler numbers", _kummer_k3),
    ("surface chi_y closed form", _surface_closed_form),
    ("virtual 3-fold chi_y closed form", _virtual_closed_form),
    ("signed plane-partition counts at g = 0", _signed_counts),
    ("Hilbert series recovery at g = 0", _g0_hilbert),
    ("Euler series identity", _euler_identity),
    ("Hodge properties of normalised classes", _hodge_properties),
    ("stable Hodge numbers", _stable),
    ("torsion stack closed forms", _torsion),
    ("partition counts and w_k", _partitions),
]


def run_selftest(echo=print) -> bool:
    ok = True
    for name, check in CHECKS:
        try:
            passed = bool(check())
        except Exception as exc:  # a crash is reported as a failure of that check
            passed = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        echo(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok = ok and passed
    return ok
