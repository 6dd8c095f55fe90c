"""Fibrations X -> A over an abelian variety, described through E-polynomials."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import MalformedDiamond, UnknownPreset
from .exactalg import L, X, Y, EPoly


def abelian_class(g: int) -> EPoly:
    """E-polynomial ((1-x)(1-y))^g of a g-dimensional abelian variety."""
    return ((1 - X) * (1 - Y)) ** g


def projective_space(k: int) -> EPoly:
    """1 + L + ... + L^k; zero for k < 0."""
    return sum((L ** i for i in range(k + 1)), EPoly())


@dataclass(frozen=True)
class GeometrySpec:
    """A Zariski locally trivial fibration X -> A with fiber Y.

    ``fiberE`` is E(Y); ``r`` is dim Y and ``g`` is dim A.
    """

    g: int
    fiberE: EPoly
    r: int
    projective: bool = True
    connected: bool = True
    h00: int | None = None
    name: str = ""

    def __post_init__(self):
        if self.g < 0 or self.r < 0:
            raise ValueError("dimensions must be nonnegative")
        if isinstance(self.fiberE, int):
            object.__setattr__(self, "fiberE", EPoly.const(self.fiberE))
        if self.h00 is None:
            object.__setattr__(self, "h00", 1 if self.fiberE.coeff2(0, 0) else 0)
        if self.h00 not in (0, 1):
            raise ValueError("h00 must be 0 or 1")
        if self.projective and self.connected and self.h00 != 1:
            raise ValueError("a projective connected fiber has h^{0,0} = 1")

    @property
    def dim(self) -> int:
        return self.r + self.g

    @property
    def baseE(self) -> EPoly:
        return abelian_class(self.g)

    @property
    def totalE(self) -> EPoly:
        """E(X) = E(Y) E(A)."""
        return self.fiberE * self.baseE

    def chi_fiber(self) -> int:
        return self.fiberE.euler()

    def with_g(self, g: int) -> "GeometrySpec":
        return GeometrySpec(g, self.fiberE, self.r, self.projective, self.connected, self.h00, self.name)


def hodge_to_epoly(hodge) -> EPoly:
    """sum (-1)^(p+q) h^{p,q} x^p y^q."""
    terms = {}
    for p, row in enumerate(hodge):
        for q, h in enumerate(row):
            if h:
                terms[(2 * p, 2 * q)] = (-1) ** (p + q) * h
    return EPoly(terms)


K3_HODGE = [[1, 0, 1], [0, 20, 0], [1, 0, 1]]


def _preset(name: str) -> tuple[EPoly, int, bool]:
    """(E(Y), dim Y, projective) for a preset name."""
    key, _, arg = name.partition(":")
    if key == "point":
        return EPoly.const(1), 0, True
    if key == "affine1":
        return L, 1, False
    if key == "affine2":
        return L ** 2, 2, False
    if key == "affine3":
        return L ** 3, 3, False
    if key in ("p1", "p2", "p3"):
        k = int(key[1])
        return projective_space(k), k, True
    if key == "elliptic":
        return abelian_class(1), 1, True
    if key == "k3":
        return hodge_to_epoly(K3_HODGE), 2, True
    if key == "abelian":
        try:
            g = int(arg)
        except ValueError:
            raise UnknownPreset(f"abelian preset needs an integer dimension, got {name!r}") from None
        if g < 0:
            raise UnknownPreset(f"abelian:{g} has negative dimension")
        return abelian_class(g), g, True
    if key == "genus":
        try:
            h = int(arg)
        except ValueError:
            raise UnknownPreset(f"genus preset needs an integer genus, got {name!r}") from None
        if h < 0:
            raise UnknownPreset(f"genus:{h} is negative")
        return 1 - h * X - h * Y + L, 1, True
    raise UnknownPreset(f"unknown geometry preset {name!r}")


PRESETS = ("point", "affine1", "affine2", "affine3", "p1", "p2", "p3", "elliptic", "abelian:g", "k3", "genus:h")


def load_diamond(data: dict) -> tuple[EPoly, int, bool, bool, str]:
    try:
        dim = int(data["dim"])
        hodge = data["hodge"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDiamond(f"diamond needs integer 'dim' and 'hodge' grid: {exc}") from None
    if dim < 0 or not isinstance(hodge, list) or len(hodge) != dim + 1:
        raise MalformedDiamond(f"hodge grid must have dim+1 = {dim + 1} rows")
    for row in hodge:
        if not isinstance(row, list) or len(row) != dim + 1:
            raise MalformedDiamond("hodge grid must be square with dim+1 columns")
        for h in row:
            if not isinstance(h, int) or isinstance(h, bool) or h < 0:
                raise MalformedDiamond(f"hodge numbers must be nonnegative integers, got {h!r}")
    projective = bool(data.get("projective", True))
    connected = bool(data.get("connected", True))
    return hodge_to_epoly(hodge), dim, projective, connected, str(data.get("name", ""))


def load_geometry(source: str, g: int = 0) -> GeometrySpec:
    """Build a :class:`GeometrySpec` from a preset name or a Hodge-diamond JSON file."""
    path = Path(source)
    if source.endswith(".json") or path.is_file():
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            raise UnknownPreset(f"no such geometry file {source!r}") from None
        except json.JSONDecodeError as exc:
            raise MalformedDiamond(f"{source}: {exc}") from None
        if not isinstance(data, dict):
            raise MalformedDiamond(f"{source}: expected a JSON object")
        fiberE, dim, projective, connected, name = load_diamond(data)
        h00 = 1 if fiberE.coeff2(0, 0) else 0
        if projective and connected and h00 != 1:
            raise MalformedDiamond("a projective connected variety needs h^{0,0} = 1")
        return GeometrySpec(g, fiberE, dim, projective, connected, h00, name or path.stem)
    fiberE, dim, projective = _preset(source)
    h00 = 1 if fiberE.coeff2(0, 0) else 0
    return GeometrySpec(g, fiberE, dim, projective, True, h00, source)
