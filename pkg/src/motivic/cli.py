"""Command-line front end.

Exit status is 0 on success, 1 when a computed identity fails (a hard
failure such as a non-exact division) and 2 for usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .errors import HardFailure, LimitExceeded, ModeMismatch, UsageError
from .exactalg import EPoly, L
from .geometry import PRESETS, GeometrySpec, load_geometry
from .hilbert import WData, hilb_series, punctual_series
from .kummer import (
    chi_y_kummer_surface,
    chi_y_kummer_vir,
    euler_kummer,
    hodge_property_check,
    kummer_class,
    kummer_vir_class,
    normalized_vir_class_direct,
    stable_hodge,
)
from .partitions import MAX_D, count_d_partitions, solve_wk
from .powerseries import power_exp
from .selftest import run_selftest
from .torsion import KINDS, torsion_kummer_chi_y, torsion_kummer_chi_y_expanded, torsion_kummer_class

SUBCOMMANDS = ("hilbert", "kummer", "kummer-vir", "torsion", "euler-table", "stable-hodge", "selftest")
FORMATS = ("table", "json", "csv")
MAX_ORDER = 10


def max_n() -> int:
    return int(os.environ.get("MOTIVIC_MAX_N", "8"))


@dataclass
class Config:
    subcommand: str
    g: int = 0
    fiber: str = "point"
    n: int | None = None
    n_max: int | None = None
    order: int | None = None
    format: str = "table"
    virtual: bool = False
    normalized: bool = False
    euler_only: bool = False
    kind: str = "surface"
    d: int | None = None
    max_pq: int = 2

    def n_values(self) -> list[int]:
        """The requested n: ``--n`` alone, else 0..n_max (1..n_max where n = 0 is meaningless)."""
        if self.n is not None:
            return [self.n]
        top = self.n_max if self.n_max is not None else 4
        start = 1 if self.subcommand in ("torsion", "euler-table") else 0
        return list(range(start, top + 1))

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.g < 0:
            raise UsageError("--g must be nonnegative")
        cap = max_n()
        for label, value in (("--n", self.n), ("--n-max", self.n_max)):
            if value is not None and value < 0:
                raise UsageError(f"{label} must be nonnegative")
            if value is not None and value > cap:
                raise LimitExceeded(f"{label} = {value} exceeds the cap {cap} (set MOTIVIC_MAX_N to raise it)")
        if self.order is not None:
            if self.order > MAX_ORDER:
                raise LimitExceeded(f"--order {self.order} exceeds the cap {MAX_ORDER}")
            if self.order < max(self.n_values(), default=0):
                raise UsageError("--order must be at least the largest requested n")
        if self.d is not None and not 1 <= self.d <= MAX_D:
            raise LimitExceeded(f"--d must lie in 1..{MAX_D}")
        if self.kind not in KINDS:
            raise UsageError(f"unknown torsion kind {self.kind!r}")
        if self.max_pq < 0:
            raise UsageError("--max-pq must be nonnegative")


# ----------------------------------------------------------------------------
# record builders


def _record(n: int, cls: EPoly | None, euler, checks: dict, chi_y=None) -> dict:
    if chi_y is None and cls is not None:
        chi_y = cls.chi_y().to_records()
    return {
        "n": n,
        "class": None if cls is None else cls.to_records(),
        "chi_y": chi_y,
        "euler": euler,
        "checks": checks,
    }


def _absolute(geom: GeometrySpec) -> GeometrySpec:
    """X itself as a g = 0 geometry."""
    return GeometrySpec(0, geom.totalE, geom.dim, geom.projective, geom.connected, None, geom.name)


def _hilbert(cfg: Config, geom: GeometrySpec) -> list[dict]:
    X = _absolute(geom)
    ns = cfg.n_values()
    N = cfg.order if cfg.order is not None else max(ns)
    if cfg.euler_only:
        w = WData.euler_only(X.dim, max(N, 1))
    elif cfg.virtual:
        w = WData.threefold_virtual()
    else:
        w = WData.surface()
    if X.dim != w.d:
        raise ModeMismatch(f"{w.mode} Hilbert series needs dim X = {w.d}, got {X.dim}")
    series = hilb_series(X, w, N)
    records = []
    if cfg.euler_only:
        for n in ns:
            records.append(_record(n, None, series[n].euler(), {}))
        return records
    # second route: the zeta-factorisation form of the same power
    zeta_route = power_exp(punctual_series(w, N), X.totalE, method="zeta")
    for n in ns:
        cls = series[n]
        checks = {"zeta_route": zeta_route[n] == cls}
        records.append(_record(n, cls, cls.euler(), checks))
    return records


def _kummer(cfg: Config, geom: GeometrySpec) -> list[dict]:
    records = []
    if cfg.euler_only:
        ns = cfg.n_values()
        w = WData.euler_only(geom.dim, max(max(ns), 1))
        for n in ns:
            res = kummer_class(geom, w, n)
            checks = {}
            if geom.g >= 1 and n >= 1:
                checks["closed_form"] = res.euler == euler_kummer(geom, w.wk, n)
            records.append(_record(n, None, res.euler, checks))
        return records
    w = WData.surface()
    ns = cfg.n_values()
    series = hilb_series(_absolute(geom), w, max(ns)) if geom.g == 0 else None
    for n in ns:
        res = kummer_class(geom, w, n)
        checks = {}
        if geom.g >= 1:
            checks["chi_y_closed_form"] = res.chi_y == chi_y_kummer_surface(geom, n)
        else:
            checks["hilbert_series"] = res.cls == series[n]
        records.append(_record(n, res.cls, res.euler, checks))
    return records


def _kummer_vir(cfg: Config, geom: GeometrySpec) -> list[dict]:
    records = []
    for n in cfg.n_values():
        res = kummer_vir_class(geom, n, normalized=cfg.normalized)
        checks = {}
        if geom.g >= 1:
            plain = res if not cfg.normalized else kummer_vir_class(geom, n)
            checks["chi_y_closed_form"] = plain.chi_y == chi_y_kummer_vir(geom, n)
        if cfg.normalized:
            checks["direct_route"] = res.cls == normalized_vir_class_direct(geom, n)
            checks.update({k: v for k, v in hodge_property_check(res).items() if v is not None})
        if geom.g == 0 and geom.totalE == L ** 3:
            checks["signed_partition_count"] = res.euler == (-1) ** n * count_d_partitions(3, n)
        records.append(_record(n, res.cls, res.euler, checks))
    return records


def _torsion(cfg: Config, geom: GeometrySpec) -> list[dict]:
    records = []
    for n in cfg.n_values():
        if n < 1:
            raise UsageError("torsion records start at n = 1")
        cls = torsion_kummer_class(geom, n, cfg.kind)
        expanded = torsion_kummer_chi_y_expanded(geom, n, cfg.kind)
        checks = {}
        if geom.g >= 1:
            checks["chi_y_closed_form"] = expanded == torsion_kummer_chi_y(geom, n, cfg.kind)
        chi = expanded.to_json()
        record = {
            "n": n,
            "class": cls.num.to_records(),
            "den_lpow": str(cls.den_lpow),
            "den_factors": list(cls.den_factors),
            "chi_y": chi,
            "euler": None,
            "checks": checks,
        }
        records.append(record)
    return records


def _euler_table(cfg: Config, geom: GeometrySpec) -> list[dict]:
    d = cfg.d if cfg.d is not None else geom.dim
    if d != geom.dim:
        raise ModeMismatch(f"--d {d} does not match dim X = {geom.dim}")
    ns = cfg.n_values()
    top = max(max(ns), 1)
    wk = solve_wk(d, top)
    w = WData("euler_only", d, wk)
    records = []
    for n in ns:
        value = euler_kummer(geom, wk, n)
        checks = {"class_route": kummer_class(geom, w, n).euler == value}
        records.append(_record(n, None, value, checks))
    return records


def _stable_hodge(cfg: Config, geom: GeometrySpec) -> list[dict]:
    records = []
    for p in range(cfg.max_pq + 1):
        for q in range(cfg.max_pq + 1):
            value = stable_hodge(geom, p, q, verify=True)
            records.append({"p": p, "q": q, "h": value, "checks": {"consecutive_n": True}})
    return records


HANDLERS = {
    "hilbert": _hilbert,
    "kummer": _kummer,
    "kummer-vir": _kummer_vir,
    "torsion": _torsion,
    "euler-table": _euler_table,
    "stable-hodge": _stable_hodge,
}


# ----------------------------------------------------------------------------
# rendering


def _poly_text(records) -> str:
    if records is None:
        return "-"
    return str(EPoly.from_records(records)) if records else "0"


def _chi_text(chi) -> str:
    if chi is None:
        return "-"
    from .exactalg import YLaurent

    if isinstance(chi, dict):
        return f"({YLaurent.from_records(chi['num'])}) / ({YLaurent.from_records(chi['den'])})"
    return str(YLaurent.from_records(chi))


def _summary_row(rec: dict) -> list[str]:
    if "h" in rec:
        return [str(rec["p"]), str(rec["q"]), str(rec["h"]), _checks_text(rec["checks"])]
    cls = _poly_text(rec["class"])
    if "den_factors" in rec:
        den = "".join(f"(L^{s}-1)" for s in rec["den_factors"])
        if rec["den_lpow"] != "0":
            den = f"L^{rec['den_lpow']}" + den
        cls = f"({cls}) / ({den or '1'})"
    euler = "-" if rec["euler"] is None else str(rec["euler"])
    return [str(rec["n"]), cls, _chi_text(rec["chi_y"]), euler, _checks_text(rec["checks"])]


def _checks_text(checks: dict) -> str:
    if not checks:
        return "-"
    return ",".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items())


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return dumps(records)
    header = ["p", "q", "h", "checks"] if records and "h" in records[0] else ["n", "class", "chi_y", "euler", "checks"]
    rows = [_summary_row(r) for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return "\n".join("  ".join(row) for row in [header] + rows)


def dumps(obj) -> str:
    """Canonical JSON text; parsing and re-dumping reproduces it byte for byte."""
    return json.dumps(obj, indent=2)


def _all_checks_pass(records: list[dict]) -> bool:
    return all(v for rec in records for v in rec.get("checks", {}).values())


def run(cfg: Config) -> tuple[int, str]:
    """Execute one invocation; returns (exit status, report text)."""
    try:
        cfg.validate()
        if cfg.subcommand == "selftest":
            lines: list[str] = []
            ok = run_selftest(lines.append)
            return (0 if ok else 1), "\n".join(lines)
        geom = load_geometry(cfg.fiber, cfg.g)
        records = HANDLERS[cfg.subcommand](cfg, geom)
    except HardFailure as exc:
        return 1, f"error: {type(exc).__name__}: {exc}"
    except (UsageError, ValueError) as exc:
        return 2, f"error: {type(exc).__name__}: {exc}"
    report = render(records, cfg.format)
    return (0 if _all_checks_pass(records) else 1), report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motivic",
        description="E-polynomials, chi_y genera and Euler numbers of Hilbert schemes, "
                    "generalized Kummer schemes and torsion-sheaf stacks.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--g", type=int, default=0, help="dimension of the abelian base A")
        p.add_argument("--fiber", default="point",
                       help=f"fiber preset ({', '.join(PRESETS)}) or a Hodge-diamond JSON file")
        p.add_argument("--n", type=int, help="a single n")
        p.add_argument("--n-max", type=int, help="all n up to this bound")
        p.add_argument("--order", type=int, help="series truncation order")
        p.add_argument("--format", choices=FORMATS, default="table")

    for name in ("hilbert", "kummer", "kummer-vir", "torsion", "euler-table", "stable-hodge"):
        p = sub.add_parser(name)
        common(p)
        if name == "hilbert":
            p.add_argument("--virtual", action="store_true", help="virtual 3-fold series")
        if name in ("hilbert", "kummer"):
            p.add_argument("--euler-only", action="store_true", help="Euler numbers only (any d)")
        if name == "kummer-vir":
            p.add_argument("--normalized", action="store_true", help="multiply by L^((3n-g)/2)")
        if name == "torsion":
            p.add_argument("--kind", choices=tuple(KINDS), default="surface")
        if name == "euler-table":
            p.add_argument("--d", type=int, help="dimension of X (defaults to g + dim fiber)")
        if name == "stable-hodge":
            p.add_argument("--max-pq", type=int, default=2, help="tabulate p, q up to this value")
    sub.add_parser("selftest")
    return parser


def config_from_args(args: argparse.Namespace) -> Config:
    fields = {k: v for k, v in vars(args).items() if v is not None}
    return Config(**fields)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code, report = run(config_from_args(args))
    stream = sys.stdout if code == 0 or not report.startswith("error:") else sys.stderr
    print(report, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
